/*
 * Copyright 2026 The plureq authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "plureq/characterize_lazy.hpp"
#include "plureq/election.hpp"
#include "plureq/game.hpp"

namespace plureq {

/*
 * Solvers for elections with principled voters: bystanders with fixed
 * rankings who always vote their favourite and never deviate.  Their
 * ballots shift the score landscape the strategic voters play on.
 */

inline void validate_principled(const Election& e, const PrincipledProfile& p) {
  for (const PreferenceOrder& r : p) validate_ranking(e, r);
}

inline ScoreBoard combined_scores(const Election& e, const BallotVector& b,
                                  const PrincipledProfile& p) {
  validate_principled(e, p);
  return scores(e, b, p);
}

// Scores with only the principled ballots on the board.
inline ScoreBoard principled_scores(const Election& e, const PrincipledProfile& p) {
  std::vector<int> votes(e.candidates, 0);
  for (const PreferenceOrder& r : p) ++votes[r.front()];
  return board_from_votes(std::move(votes));
}

struct PrincipledLexReport {
  bool exists = false;
  std::vector<bool> winnable; // per candidate: wins some equilibrium
  std::vector<std::optional<BallotVector>> witness;
};

// Which candidates can win an equilibrium when lazy voters face a fixed
// principled crowd, under deterministic tie breaking.
//
// Let W and M be the winners and top score of the principled board alone,
// j the highest-priority member of W, and H+ the candidates one vote
// short of M with priority over j.  Then:
//
//   - c_j wins by everyone staying home, when staying home is stable;
//   - a lower-priority candidate k needs M+1-sc(k) supporters who rank
//     him over all of W and H+, and no lazy voter may prefer any member
//     of W with priority over k (such a voter could join that member and
//     snatch the win);
//   - a higher-priority candidate k needs only M-sc(k) such supporters,
//     since priority breaks the tie his way, but now no lazy voter may
//     prefer any member of W, nor any one-vote-short candidate with
//     priority over k.
//
// Witnesses use the minimal supporter count; a larger margin would let
// one supporter withdraw for the abstention bonus without changing the
// winner.
inline PrincipledLexReport lazy_lex_principled_solve(const Election& e,
                                                     const PrincipledProfile& p) {
  validate(e);
  validate_principled(e, p);
  const int n = e.voters();
  const int m = e.candidates;
  const ScoreBoard base = principled_scores(e, p);
  const CandidateId j = base.winners.front();
  const int top = base.votes[j];

  std::vector<CandidateId> hplus;
  for (CandidateId c : base.one_short)
    if (c < j) hplus.push_back(c);

  PrincipledLexReport rep;
  rep.winnable.assign(m, false);
  rep.witness.assign(m, std::nullopt);

  const GameSpec g{e, Setting::Lazy, TieRule::Lex, p, TrivialBallotPolicy::FullTie};
  const BallotVector trivial(n, kAbstain);
  if (is_pne(g, trivial).equilibrium) {
    rep.winnable[j] = true;
    rep.witness[j] = trivial;
  }

  for (CandidateId k = 0; k < m; ++k) {
    if (k == j) continue;
    const int need = top + (k > j ? 1 : 0) - base.votes[k];
    if (need > n) continue;

    bool guard = true;
    for (int i = 0; i < n && guard; ++i) {
      for (CandidateId w : base.winners)
        if ((k > j ? w < k : true) && e.utility[i][w] > e.utility[i][k]) {
          guard = false;
          break;
        }
      if (k < j)
        for (CandidateId h : hplus)
          if (h < k && e.utility[i][h] > e.utility[i][k]) {
            guard = false;
            break;
          }
    }
    if (!guard) continue;

    // Supporters must rank k over every rival he could hand the win to.
    std::vector<int> eligible;
    for (int i = 0; i < n; ++i) {
      bool ok = true;
      for (CandidateId w : base.winners)
        if (w != k && e.utility[i][w] > e.utility[i][k]) ok = false;
      for (CandidateId h : hplus)
        if (h != k && e.utility[i][h] > e.utility[i][k]) ok = false;
      if (ok) eligible.push_back(i);
    }
    if (static_cast<int>(eligible.size()) < need) continue;

    rep.winnable[k] = true;
    BallotVector b(n, kAbstain);
    for (int t = 0; t < need; ++t) b[eligible[t]] = k;
    rep.witness[k] = std::move(b);
  }

  rep.exists = std::find(rep.winnable.begin(), rep.winnable.end(), true) != rep.winnable.end();
  return rep;
}

struct PrincipledSingleReport {
  bool possible = false;
  std::optional<BallotVector> witness;
};

// Can `target` win alone in an equilibrium of the lazy game with random
// candidate tie breaking?  Two regimes, split on the principled board:
//
// If the principled votes already elect target outright, the lazy voters
// stay home; stability then requires each of them to rank target over
// every candidate one vote short, or she would force a coin flip.
//
// Otherwise enough lazy voters must push target past the board's leaders.
// Every lazy voter has to rank target over each current leader (anyone
// who didn't could join a leader and force a tie), and the supporters
// additionally need target to beat the lottery that appears if they
// divert their vote to a one-short candidate.
inline PrincipledSingleReport lazy_rc_principled_single(const Election& e,
                                                        const PrincipledProfile& p,
                                                        CandidateId target) {
  validate(e);
  validate_principled(e, p);
  if (target < 0 || target >= e.candidates)
    throw std::invalid_argument("target candidate out of range");
  const int n = e.voters();
  const ScoreBoard base = principled_scores(e, p);

  PrincipledSingleReport rep;
  if (base.winners.size() == 1 && base.winners.front() == target) {
    for (int i = 0; i < n; ++i)
      for (CandidateId h : base.one_short)
        if (e.utility[i][h] > e.utility[i][target]) return rep;
    rep.possible = true;
    rep.witness = BallotVector(n, kAbstain);
    return rep;
  }

  for (int i = 0; i < n; ++i)
    for (CandidateId w : base.winners)
      if (w != target && e.utility[i][w] > e.utility[i][target]) return rep;

  const int need = base.votes[base.winners.front()] + 1 - base.votes[target];
  if (need > n) return rep;
  const int wcount = static_cast<int>(base.winners.size());

  std::vector<int> supporters;
  for (int i = 0; i < n && static_cast<int>(supporters.size()) < need; ++i) {
    const auto& u = e.utility[i];
    Int leaders(0);
    for (CandidateId w : base.winners) leaders += u[w];
    bool ok = true;
    for (CandidateId h : base.one_short) {
      // Rerouting this supporter's vote to h would tie the leaders, h and
      // target; target must weakly beat that lottery, which works out to
      // the average of the leaders plus h alone.
      if (h != target && u[target] * (wcount + 1) < leaders + u[h]) {
        ok = false;
        break;
      }
    }
    if (ok) supporters.push_back(i);
  }
  if (static_cast<int>(supporters.size()) < need) return rep;

  rep.possible = true;
  BallotVector b(n, kAbstain);
  for (int t = 0; t < need; ++t) b[supporters[t]] = target;
  rep.witness = std::move(b);
  return rep;
}

struct PrincipledTieCertificate {
  std::vector<CandidateId> members; // the tied set, ascending
  std::vector<int> group;           // per lazy voter, favourite's index in members
  int quorum = 0;                   // combined score each member reaches
};

inline BallotVector prescribed_ballots(const PrincipledTieCertificate& cert) {
  BallotVector b(cert.group.size());
  for (size_t i = 0; i < cert.group.size(); ++i) b[i] = cert.members[cert.group[i]];
  return b;
}

struct PrincipledTieReport {
  bool exists = false;
  bool distinct_tops = false; // everyone, lazy and principled, tops a different candidate
  std::vector<PrincipledTieCertificate> certificates;
  std::vector<BallotVector> equilibria;
};

// Equilibria with two or more winners for lazy voters, random candidate
// tie breaking, and a principled crowd.  Two families again:
//
// Everyone votes her own favourite.  Needs all favourites distinct
// across lazy and principled voters alike, and every lazy voter must
// weakly prefer the grand lottery to any rival favourite winning alone.
//
// A tie set X where each member finishes at the same combined score q.
// Given X, q is forced: the lazy votes all land inside X, so q times
// |X| equals n plus the principled votes already inside.  Each member
// needs exactly q minus its principled score in lazy supporters, drawn
// from the voters whose favourite within X it is; candidates outside X
// must sit below q, and anyone at q-1 outside must be liked less than
// the voter's own favourite, or she would reroute her vote and swap the
// laggard into the tie.
inline PrincipledTieReport lazy_rc_principled_tie(const Election& e,
                                                  const PrincipledProfile& p,
                                                  long long budget = kDefaultBudget) {
  validate(e);
  validate_principled(e, p);
  const int n = e.voters();
  const int m = e.candidates;
  const int s = static_cast<int>(p.size());
  const ScoreBoard base = principled_scores(e, p);

  PrincipledTieReport rep;

  {
    std::vector<bool> taken(m, false);
    bool distinct = true;
    std::vector<CandidateId> tops;
    for (int i = 0; i < n; ++i) tops.push_back(top_choice(e.utility[i]));
    for (const PreferenceOrder& r : p) tops.push_back(r.front());
    for (CandidateId t : tops) {
      if (taken[t]) distinct = false;
      taken[t] = true;
    }
    if (distinct && n + s >= 2) {
      bool consent = true;
      for (int i = 0; i < n && consent; ++i) {
        const auto& u = e.utility[i];
        Rat mean(0);
        for (CandidateId t : tops) mean += Rat(u[t]);
        mean /= static_cast<int>(tops.size());
        const CandidateId mine = top_choice(u);
        for (CandidateId t : tops)
          if (t != mine && mean < Rat(u[t])) consent = false;
      }
      if (consent) {
        rep.distinct_tops = true;
        rep.equilibria.push_back(truthful_ballots(e));
      }
    }
  }

  const long long subsets = m >= 62 ? LLONG_MAX : (1LL << m);
  if (subsets > budget) throw BudgetExceeded(subsets);

  for (long long mask = 3; mask < subsets; ++mask) {
    const int k = __builtin_popcountll(static_cast<unsigned long long>(mask));
    if (k < 2) continue;
    std::vector<CandidateId> members;
    int inside = 0;
    for (int c = 0; c < m; ++c)
      if (mask >> c & 1) {
        members.push_back(c);
        inside += base.votes[c];
      }
    const int total = n + inside;
    if (total % k != 0) continue;
    const int q = total / k;
    if (q < 2) continue;

    bool ok = true;
    for (int c = 0; c < m && ok; ++c)
      if (!(mask >> c & 1) && base.votes[c] >= q) ok = false;
    for (CandidateId c : members)
      if (base.votes[c] > q) ok = false;
    if (!ok) continue;

    std::vector<int> group(n);
    std::vector<int> lazy_count(k, 0);
    for (int i = 0; i < n && ok; ++i) {
      const auto& u = e.utility[i];
      int best = 0;
      for (int g = 1; g < k; ++g)
        if (u[members[g]] > u[members[best]]) best = g;
      group[i] = best;
      if (++lazy_count[best] > q - base.votes[members[best]]) ok = false;
    }
    for (int g = 0; g < k && ok; ++g)
      if (lazy_count[g] != q - base.votes[members[g]]) ok = false;
    if (!ok) continue;

    for (int i = 0; i < n && ok; ++i) {
      const auto& u = e.utility[i];
      Rat mean(0);
      for (CandidateId c : members) mean += Rat(u[c]);
      mean /= k;
      const CandidateId fav = members[group[i]];
      for (CandidateId c : members)
        if (c != fav && mean < Rat(u[c])) ok = false;
      for (int c = 0; c < m && ok; ++c)
        if (!(mask >> c & 1) && base.votes[c] == q - 1 && u[c] > u[fav]) ok = false;
    }
    if (!ok) continue;

    PrincipledTieCertificate cert;
    cert.members = std::move(members);
    cert.group = std::move(group);
    cert.quorum = q;
    rep.equilibria.push_back(prescribed_ballots(cert));
    rep.certificates.push_back(std::move(cert));
  }

  std::sort(rep.certificates.begin(), rep.certificates.end(),
            [](const PrincipledTieCertificate& a, const PrincipledTieCertificate& b) {
              return a.members < b.members;
            });
  detail::sort_unique(rep.equilibria);
  rep.exists = !rep.equilibria.empty();
  return rep;
}

// Sincere-profile stability for truth-biased voters with a principled
// crowd, deterministic tie breaking.  Same two failure modes as without
// the crowd, on the combined board, except only strategic voters can
// defect.
inline bool truth_lex_principled_truthful(const Election& e, const PrincipledProfile& p) {
  validate(e);
  validate_principled(e, p);
  const int n = e.voters();
  const BallotVector a = truthful_ballots(e);
  const ScoreBoard sb = scores(e, a, p);
  const CandidateId j = sb.winners.front();

  if (sb.winners.size() > 1)
    for (CandidateId k : sb.winners)
      for (int i = 0; i < n; ++i)
        if (a[i] != k && e.utility[i][k] > e.utility[i][j]) return false;

  for (CandidateId k : sb.one_short) {
    if (k >= j) continue;
    for (int i = 0; i < n; ++i)
      if (a[i] != k && e.utility[i][k] > e.utility[i][j]) return false;
  }
  return true;
}

} // namespace plureq
