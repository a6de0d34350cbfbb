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

#include <optional>
#include <stdexcept>
#include <vector>

#include "plureq/characterize_lazy.hpp"
#include "plureq/election.hpp"
#include "plureq/game.hpp"

namespace plureq {

// Decides whether the sincere profile is an equilibrium for truth-biased
// voters under deterministic tie breaking.  It fails in exactly two ways:
// some voter can steal the win for a better-liked co-winner, or can
// promote a better-liked trailing candidate that would then beat the
// current winner on priority.
inline bool truthful_pne_truth_lex(const Election& e) {
  validate(e);
  const int n = e.voters();
  const BallotVector a = truthful_ballots(e);
  const ScoreBoard sb = scores(e, a);
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

// Candidates a single extra vote would put ahead of the current winner:
// anyone of higher priority one point behind, or lower priority at equal
// score.  Every non-sincere equilibrium must leave at least one of these
// standing, with scores unchanged from the sincere profile; that is what
// makes the winner's supporters stick to their insincere ballots.
inline std::vector<CandidateId> threshold_set(const Election& e, const BallotVector& b) {
  const ScoreBoard sb = scores(e, b);
  const CandidateId j = sb.winners.front();
  std::vector<CandidateId> out;
  for (CandidateId c = 0; c < e.candidates; ++c) {
    if (c == j) continue;
    if (c < j ? sb.votes[c] == sb.votes[j] - 1 : sb.votes[c] == sb.votes[j]) out.push_back(c);
  }
  return out;
}

struct TruthTieReport {
  bool exists = false;
  bool singleton_votes = false;
  std::vector<TieSetCertificate> tie_sets;
  std::vector<BallotVector> equilibria; // all equilibria with 2+ winners
};

// Equilibria with tied winners for truth-biased voters under either
// randomized rule.  The qualifying profiles are the same two families as
// in the lazy setting; only the one-voter degenerate case drops out,
// since a lone voter would deviate to her favourite and break any tie.
inline TruthTieReport truth_rand_tie_solve(const Election& e, TieRule rule,
                                           long long budget = kDefaultBudget) {
  if (rule == TieRule::Lex)
    throw std::invalid_argument("truth_rand_tie_solve expects a randomized tie rule");
  validate(e);
  TruthTieReport rep;
  rep.singleton_votes = check_rand_singleton_votes(e);
  if (rep.singleton_votes && e.voters() >= 2)
    rep.equilibria.push_back(truthful_ballots(e));
  rep.tie_sets = find_tie_sets(e, budget);
  for (const TieSetCertificate& cert : rep.tie_sets)
    rep.equilibria.push_back(prescribed_ballots(cert));
  detail::sort_unique(rep.equilibria);
  rep.exists = !rep.equilibria.empty();
  return rep;
}

// Is the sincere profile an equilibrium with a sole winner under a
// randomized rule?  Returns nullopt when the sincere winner is not
// unique, in which case the question belongs to truth_rand_tie_solve.
// Otherwise the winner must beat, in every voter's eyes, every candidate
// one vote behind that the voter could push into a coin flip.
inline std::optional<bool> truth_rand_truthful_single(const Election& e, TieRule rule) {
  if (rule == TieRule::Lex)
    throw std::invalid_argument("truth_rand_truthful_single expects a randomized tie rule");
  validate(e);
  const int n = e.voters();
  const BallotVector a = truthful_ballots(e);
  const ScoreBoard sb = scores(e, a);
  if (sb.winners.size() != 1) return std::nullopt;
  const CandidateId j = sb.winners.front();
  for (CandidateId k : sb.one_short)
    for (int i = 0; i < n; ++i)
      if (a[i] != k && e.utility[i][k] > e.utility[i][j]) return false;
  return true;
}

struct SingleVerdict {
  enum class Status { Ok, WinnerNotSingleton, BallotTruthful };
  Status status = Status::Ok;
  bool equilibrium = false;
};

// Checks a candidate profile with a unique winner and at least one
// insincere ballot against the conditions that make it an equilibrium
// for truth-biased voters under a randomized rule:
//
//   1. every ballot is sincere or names the winner;
//   2. some candidate sits exactly one vote behind (otherwise an
//      insincere supporter would revert to her sincere ballot);
//   3. nobody prefers a one-behind candidate she could lift into a tie;
//   4. no insincere supporter gains, in expectation or in sincerity
//      bonus, by diverting her vote to a candidate two votes behind.
//
// Condition 4 is evaluated by actually playing the deviation and pricing
// the resulting lottery, which keeps the check identical under both
// randomized rules even though the lotteries differ.
inline SingleVerdict verify_truth_rand_single(const Election& e, TieRule rule,
                                              const BallotVector& b) {
  if (rule == TieRule::Lex)
    throw std::invalid_argument("verify_truth_rand_single expects a randomized tie rule");
  validate(e);
  const int n = e.voters();
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("ballot vector has the wrong number of voters");
  const BallotVector a = truthful_ballots(e);

  SingleVerdict v;
  const ScoreBoard sb = scores(e, b);
  if (sb.winners.size() != 1) {
    v.status = SingleVerdict::Status::WinnerNotSingleton;
    return v;
  }
  if (b == a) {
    v.status = SingleVerdict::Status::BallotTruthful;
    return v;
  }
  const CandidateId j = sb.winners.front();

  for (int i = 0; i < n; ++i)
    if (b[i] != a[i] && b[i] != j) return v;
  if (sb.one_short.empty()) return v;
  for (CandidateId k : sb.one_short)
    for (int i = 0; i < n; ++i)
      if (b[i] != k && e.utility[i][k] > e.utility[i][j]) return v;

  for (CandidateId l : sb.two_short) {
    for (int i = 0; i < n; ++i) {
      if (b[i] != j) continue;
      BallotVector d = b;
      d[i] = l;
      const Rat eu = expected_utility(e.utility[i], lottery(e, d, rule));
      const Rat stay(e.utility[i][j]);
      if (eu > stay || (eu == stay && l == a[i])) return v;
    }
  }
  v.equilibrium = true;
  return v;
}

} // namespace plureq
