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
#include <climits>
#include <optional>
#include <vector>

#include "plureq/election.hpp"
#include "plureq/game.hpp"

namespace plureq {

/*
 * Closed-form equilibrium solvers for lazy voters.  Each solver returns
 * the complete equilibrium set of its game, so downstream code never has
 * to fall back to brute force for these cases.
 */

namespace detail {

// Ballot-vector order used by enumerate_pne: candidate 0 < ... < m-1 <
// abstain, first voter most significant.
inline bool ballot_less(const BallotVector& x, const BallotVector& y) {
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    const int dx = x[i] == kAbstain ? INT_MAX : x[i];
    const int dy = y[i] == kAbstain ? INT_MAX : y[i];
    if (dx != dy) return dx < dy;
  }
  return x.size() < y.size();
}

inline void sort_unique(std::vector<BallotVector>& v) {
  std::sort(v.begin(), v.end(), ballot_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace detail

struct LazyLexReport {
  bool exists = false;
  std::optional<CandidateId> winner;    // common winner of every equilibrium
  bool unanimous = false;               // everyone ranks candidate 0 first
  std::vector<BallotVector> equilibria; // complete, in ballot-vector order
};

// Lazy voters under deterministic tie breaking.  Equilibria come in two
// shapes only: the all-abstain vector when candidate 0 is everyone's
// favourite (he then wins the blanket tie on priority), or a lone
// supporter electing the unique candidate who has sincere support and
// beats every lower-priority candidate in every voter's eyes.
inline LazyLexReport lazy_lex_solve(const Election& e) {
  validate(e);
  const int n = e.voters();
  const BallotVector a = truthful_ballots(e);
  LazyLexReport rep;

  if (std::all_of(a.begin(), a.end(), [](Ballot t) { return t == 0; })) {
    rep.exists = true;
    rep.unanimous = true;
    rep.winner = 0;
    rep.equilibria.emplace_back(n, kAbstain);
    return rep;
  }

  for (CandidateId j = 1; j < e.candidates; ++j) {
    if (std::find(a.begin(), a.end(), j) == a.end()) continue;
    bool beats_lower = true;
    for (int i = 0; i < n && beats_lower; ++i)
      for (CandidateId k = 0; k < j && beats_lower; ++k)
        if (e.utility[i][k] > e.utility[i][j]) beats_lower = false;
    if (!beats_lower) continue;
    rep.exists = true;
    rep.winner = j;
    // One equilibrium per sincere supporter; any other voter's vote could
    // be withdrawn without changing the winner.
    for (int i = 0; i < n; ++i) {
      if (a[i] != j) continue;
      BallotVector b(n, kAbstain);
      b[i] = j;
      rep.equilibria.push_back(std::move(b));
    }
    detail::sort_unique(rep.equilibria);
    break; // a second qualifying candidate would contradict the first
  }
  return rep;
}

// The candidate everyone ranks first, if there is one.
inline std::optional<CandidateId> check_rand_unanimity(const Election& e) {
  const BallotVector a = truthful_ballots(e);
  for (Ballot t : a)
    if (t != a[0]) return std::nullopt;
  return a[0];
}

// Distinct favourites plus consent to the draw: every voter must weakly
// prefer the uniform lottery over all favourites to any other voter's
// favourite winning outright.  Vacuously true for a single voter.
inline bool check_rand_singleton_votes(const Election& e) {
  const int n = e.voters();
  const BallotVector a = truthful_ballots(e);
  std::vector<bool> taken(e.candidates, false);
  for (Ballot t : a) {
    if (taken[t]) return false;
    taken[t] = true;
  }
  for (int v = 0; v < n; ++v) {
    const auto& u = e.utility[v];
    Rat mean(0);
    for (Ballot t : a) mean += Rat(u[t]);
    mean /= n;
    for (int i = 0; i < n; ++i)
      if (i != v && mean < Rat(u[a[i]])) return false;
  }
  return true;
}

struct TieSetCertificate {
  std::vector<CandidateId> members; // the tied set X, ascending
  std::vector<int> group;           // per voter, index of her favourite in X
};

inline BallotVector prescribed_ballots(const TieSetCertificate& cert) {
  BallotVector b(cert.group.size());
  for (size_t i = 0; i < cert.group.size(); ++i) b[i] = cert.members[cert.group[i]];
  return b;
}

// Searches for candidate sets X that can sustain an equilibrium tie: |X|
// divides n, every member gathers exactly n/|X| voters when each voter is
// assigned to her favourite within X, and every voter weakly prefers the
// uniform lottery on X to her second-best member winning outright.
//
// The voter partition is never searched.  In any such tie each voter must
// vote for her favourite member, so the grouping is forced and the only
// degree of freedom is X itself.  That keeps the cost at 2^m subsets,
// which is what the budget meters.
inline std::vector<TieSetCertificate> find_tie_sets(const Election& e,
                                                    long long budget = kDefaultBudget) {
  validate(e);
  const int n = e.voters();
  const int m = e.candidates;
  const long long subsets = m >= 62 ? LLONG_MAX : (1LL << m);
  if (subsets > budget) throw BudgetExceeded(subsets);

  std::vector<TieSetCertificate> found;
  const int kmax = std::min(n / 2, m);
  for (long long mask = 3; mask < subsets; ++mask) {
    const int k = __builtin_popcountll(static_cast<unsigned long long>(mask));
    if (k < 2 || k > kmax || n % k != 0) continue;
    TieSetCertificate cert;
    for (int c = 0; c < m; ++c)
      if (mask >> c & 1) cert.members.push_back(c);

    cert.group.resize(n);
    std::vector<int> block(k, 0);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const auto& u = e.utility[i];
      int best = 0;
      for (int g = 1; g < k; ++g)
        if (u[cert.members[g]] > u[cert.members[best]]) best = g;
      cert.group[i] = best;
      if (++block[best] > n / k) ok = false; // blocks sum to n, so none may exceed n/k
    }
    for (int i = 0; i < n && ok; ++i) {
      const auto& u = e.utility[i];
      Rat mean(0);
      Int second(0);
      bool have_second = false;
      for (int g = 0; g < k; ++g) {
        mean += Rat(u[cert.members[g]]);
        if (g != cert.group[i] && (!have_second || u[cert.members[g]] > second)) {
          second = u[cert.members[g]];
          have_second = true;
        }
      }
      mean /= k;
      if (mean < Rat(second)) ok = false;
    }
    if (ok) found.push_back(std::move(cert));
  }
  std::sort(found.begin(), found.end(),
            [](const TieSetCertificate& a, const TieSetCertificate& b) {
              return a.members < b.members;
            });
  return found;
}

struct LazyRandReport {
  bool exists = false;
  std::optional<CandidateId> unanimous;
  bool singleton_votes = false;
  std::vector<TieSetCertificate> tie_sets;
  std::vector<BallotVector> equilibria; // complete, in ballot-vector order
};

// Lazy voters under a randomized tie rule.  Equilibria fall into three
// families: full consensus, everybody-votes-her-own-favourite, and the
// tie sets above.  The consensus witnesses differ between the two rules:
// with a random dictating voter the lone-supporter vectors collapse into
// the all-abstain vector, because a redundant supporter would rather stay
// home (the blanket tie still resolves to the consensus favourite).
//
// A single-candidate election short-circuits: no vote can matter, so the
// all-abstain vector is the one equilibrium.
inline LazyRandReport lazy_rand_solve(const Election& e, TieRule rule,
                                      long long budget = kDefaultBudget) {
  if (rule == TieRule::Lex)
    throw std::invalid_argument("lazy_rand_solve expects a randomized tie rule");
  validate(e);
  const int n = e.voters();
  LazyRandReport rep;
  rep.unanimous = check_rand_unanimity(e);

  if (e.candidates == 1) {
    rep.exists = true;
    rep.equilibria.emplace_back(n, kAbstain);
    return rep;
  }

  if (rep.unanimous) {
    if (rule == TieRule::RandCand) {
      for (int i = 0; i < n; ++i) {
        BallotVector b(n, kAbstain);
        b[i] = *rep.unanimous;
        rep.equilibria.push_back(std::move(b));
      }
    } else {
      rep.equilibria.emplace_back(n, kAbstain);
    }
  }

  rep.singleton_votes = check_rand_singleton_votes(e);
  // With one voter the sincere vector ties nobody and abstention rules it
  // out under the voter-based rule, so the witness needs company.
  if (rep.singleton_votes && (n >= 2 || rule == TieRule::RandCand))
    rep.equilibria.push_back(truthful_ballots(e));

  rep.tie_sets = find_tie_sets(e, budget);
  for (const TieSetCertificate& cert : rep.tie_sets)
    rep.equilibria.push_back(prescribed_ballots(cert));

  detail::sort_unique(rep.equilibria);
  rep.exists = !rep.equilibria.empty();
  return rep;
}

} // namespace plureq
