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
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "plureq/rational.hpp"

namespace plureq {

/*
 * Plurality elections with optional abstention.
 *
 * Candidates are indexed 0..m-1 and the index doubles as tie-break
 * priority: candidate 0 beats everyone in a deterministic tie.  Each voter
 * has a utility for every candidate; utilities are positive integers and
 * pairwise distinct per voter, so every voter has a strict preference
 * order and a unique favourite.  A ballot names one candidate or abstains.
 *
 * A ballot vector where nobody votes is scored with the convention that
 * all candidates tie at zero, so the winning set is the whole candidate
 * set.  Callers that want the stricter convention where such an election
 * is void handle that one level up, when utilities are assigned.
 *
 * Besides the strategic voters an election may face "principled" voters:
 * fixed participants who always vote for the top candidate of a declared
 * ranking.  They add to the scores and take part in voter-based tie
 * breaking, but they are not players.
 */

using CandidateId = int; // 0-based; lower id wins deterministic ties
using Ballot = int;      // a CandidateId, or kAbstain
inline constexpr Ballot kAbstain = -1;

using BallotVector = std::vector<Ballot>;
using PreferenceOrder = std::vector<CandidateId>;     // most preferred first
using PrincipledProfile = std::vector<PreferenceOrder>;

struct Election {
  int candidates = 0;
  std::vector<std::vector<Int>> utility; // [voter][candidate]

  int voters() const { return static_cast<int>(utility.size()); }
};

enum class TieRule {
  Lex,       // lowest-index member of the winning set
  RandCand,  // uniform over the winning set
  RandVoter, // a uniformly random voter picks her favourite winner
};

// Throws std::invalid_argument when the election is malformed: no voters,
// no candidates, ragged or non-positive utilities, or a voter with two
// equal utilities.
inline void validate(const Election& e) {
  if (e.candidates < 1) throw std::invalid_argument("election needs at least one candidate");
  if (e.voters() < 1) throw std::invalid_argument("election needs at least one voter");
  for (int i = 0; i < e.voters(); ++i) {
    const auto& u = e.utility[i];
    if (static_cast<int>(u.size()) != e.candidates)
      throw std::invalid_argument("voter " + std::to_string(i) + " has wrong utility count");
    for (const Int& x : u)
      if (x <= 0) throw std::invalid_argument("utilities must be positive");
    std::vector<Int> s(u.begin(), u.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("voter " + std::to_string(i) + " has duplicate utilities");
  }
}

inline void validate_ranking(const Election& e, const PreferenceOrder& r) {
  std::vector<bool> seen(e.candidates, false);
  if (static_cast<int>(r.size()) != e.candidates)
    throw std::invalid_argument("ranking must list every candidate");
  for (CandidateId c : r) {
    if (c < 0 || c >= e.candidates || seen[c])
      throw std::invalid_argument("ranking is not a permutation of the candidates");
    seen[c] = true;
  }
}

// Candidates ordered by one voter's utility, best first.
inline PreferenceOrder derive_preference(const std::vector<Int>& u) {
  PreferenceOrder order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](CandidateId a, CandidateId b) { return u[a] > u[b]; });
  for (size_t i = 1; i < order.size(); ++i)
    if (u[order[i - 1]] == u[order[i]])
      throw std::invalid_argument("duplicate utility, preference order is ambiguous");
  return order;
}

inline CandidateId top_choice(const std::vector<Int>& u) {
  return static_cast<CandidateId>(std::max_element(u.begin(), u.end()) - u.begin());
}

// Borda-style utilities from a ranking: the j-th ranked of m candidates
// gets m - j + 1, counting from one.
inline std::vector<Int> ranked_utilities(const PreferenceOrder& r) {
  std::vector<Int> u(r.size());
  for (size_t pos = 0; pos < r.size(); ++pos) u[r[pos]] = Int(r.size() - pos);
  return u;
}

// The sincere ballot vector: every voter names her favourite.
inline BallotVector truthful_ballots(const Election& e) {
  BallotVector a(e.voters());
  for (int i = 0; i < e.voters(); ++i) a[i] = top_choice(e.utility[i]);
  return a;
}

struct ScoreBoard {
  std::vector<int> votes;            // per candidate
  int top = 0;                       // highest count
  std::vector<CandidateId> winners;  // candidates at top, ascending
  std::vector<CandidateId> one_short; // candidates at top-1, ascending
  std::vector<CandidateId> two_short; // candidates at top-2, ascending
};

inline ScoreBoard board_from_votes(std::vector<int> votes) {
  ScoreBoard sb;
  sb.votes = std::move(votes);
  sb.top = *std::max_element(sb.votes.begin(), sb.votes.end());
  for (CandidateId c = 0; c < static_cast<int>(sb.votes.size()); ++c) {
    if (sb.votes[c] == sb.top) sb.winners.push_back(c);
    else if (sb.votes[c] == sb.top - 1) sb.one_short.push_back(c);
    else if (sb.votes[c] == sb.top - 2) sb.two_short.push_back(c);
  }
  return sb;
}

inline ScoreBoard scores(const Election& e, const BallotVector& b) {
  std::vector<int> votes(e.candidates, 0);
  for (Ballot v : b)
    if (v != kAbstain) ++votes[v];
  return board_from_votes(std::move(votes));
}

// Scores with the principled voters' fixed ballots added in.
inline ScoreBoard scores(const Election& e, const BallotVector& b,
                         const PrincipledProfile& principled) {
  std::vector<int> votes(e.candidates, 0);
  for (Ballot v : b)
    if (v != kAbstain) ++votes[v];
  for (const auto& r : principled) ++votes[r.front()];
  return board_from_votes(std::move(votes));
}

struct Lottery {
  std::vector<Rat> p; // per candidate, sums to 1
};

inline bool operator==(const Lottery& a, const Lottery& b) { return a.p == b.p; }

namespace detail {

inline CandidateId favourite_winner(const std::vector<Int>& u,
                                    const std::vector<CandidateId>& winners) {
  CandidateId best = winners.front();
  for (CandidateId c : winners)
    if (u[c] > u[best]) best = c;
  return best;
}

inline CandidateId favourite_winner(const PreferenceOrder& ranking,
                                    const std::vector<bool>& winner_mask) {
  for (CandidateId c : ranking)
    if (winner_mask[c]) return c;
  return ranking.front(); // unreachable on a valid board
}

} // namespace detail

// Outcome distribution of a ballot vector under the given tie rule.
//
// Under RandVoter every participant, strategic and principled alike, is
// drawn with equal probability and picks her own ballot if it is among
// the winners, otherwise her favourite winner (principled voters judge by
// their declared ranking).  Abstainers also pick their favourite winner.
inline Lottery lottery(const Election& e, const BallotVector& b, TieRule rule,
                       const PrincipledProfile& principled = {}) {
  const ScoreBoard sb = principled.empty() ? scores(e, b) : scores(e, b, principled);
  Lottery lot;
  lot.p.assign(e.candidates, Rat(0));
  switch (rule) {
    case TieRule::Lex:
      lot.p[sb.winners.front()] = 1;
      break;
    case TieRule::RandCand: {
      const Rat share(1, static_cast<int>(sb.winners.size()));
      for (CandidateId c : sb.winners) lot.p[c] = share;
      break;
    }
    case TieRule::RandVoter: {
      std::vector<bool> winner_mask(e.candidates, false);
      for (CandidateId c : sb.winners) winner_mask[c] = true;
      const int total = e.voters() + static_cast<int>(principled.size());
      const Rat share(1, total);
      for (int i = 0; i < e.voters(); ++i) {
        Ballot v = b[i];
        CandidateId pick = (v != kAbstain && winner_mask[v])
                               ? v
                               : detail::favourite_winner(e.utility[i], sb.winners);
        lot.p[pick] += share;
      }
      for (const auto& r : principled) {
        CandidateId v = r.front();
        CandidateId pick = winner_mask[v] ? v : detail::favourite_winner(r, winner_mask);
        lot.p[pick] += share;
      }
      break;
    }
  }
  return lot;
}

inline Rat expected_utility(const std::vector<Int>& u, const Lottery& lot) {
  Rat acc(0);
  for (size_t c = 0; c < u.size(); ++c)
    if (!lot.p[c].is_zero()) acc += Rat(u[c]) * lot.p[c];
  return acc;
}

} // namespace plureq
