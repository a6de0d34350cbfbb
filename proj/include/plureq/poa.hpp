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

#include <climits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "plureq/election.hpp"
#include "plureq/game.hpp"
#include "plureq/solve.hpp"

namespace plureq {

// Additive anarchy gap: how far the sincere score of an equilibrium
// winner can fall below the sincere score of the sincere winner.
struct PoAReport {
  bool defined = false; // false when the game has no equilibrium
  int truthful_winner_score = 0;
  int worst_pne_winner_truthful_score = 0;
  int gap = 0;
  std::optional<BallotVector> witness; // equilibrium attaining the worst score
};

// Evaluates the gap over the full equilibrium set.  The adversary picks
// both the equilibrium and, under a randomized rule, the winner from the
// lottery's support, so the score charged to an equilibrium is the worst
// sincere score across its support.
inline PoAReport poa_additive(const GameSpec& g, long long budget = kDefaultBudget) {
  const Election& e = g.election;
  PoAReport rep;
  const std::vector<BallotVector> equilibria = characterized_pne(g, budget);
  if (equilibria.empty()) return rep;

  const ScoreBoard sincere = scores(e, truthful_ballots(e));
  rep.defined = true;
  rep.truthful_winner_score = sincere.top;
  rep.worst_pne_winner_truthful_score = INT_MAX;
  for (const BallotVector& b : equilibria) {
    const Lottery lot = lottery(e, b, g.rule);
    int worst = INT_MAX;
    for (CandidateId c = 0; c < e.candidates; ++c)
      if (!lot.p[c].is_zero()) worst = std::min(worst, sincere.votes[c]);
    if (worst < rep.worst_pne_winner_truthful_score) {
      rep.worst_pne_winner_truthful_score = worst;
      rep.witness = b;
    }
  }
  rep.gap = rep.truthful_winner_score - rep.worst_pne_winner_truthful_score;
  return rep;
}

// Worst case for lazy voters under deterministic tie breaking: n voters,
// n candidates, gap n-2.  One voter puts candidate 1 first and candidate
// 2 last but one; everyone else backs candidate 2 with candidate 1 as
// runner-up.  The only equilibrium elects candidate 1 on a single vote
// while candidate 2 sits on n-1 sincere supporters.
inline Election gen_lazy_poa(int n) {
  if (n < 3) throw std::invalid_argument("gap construction needs at least 3 voters");
  Election e;
  e.candidates = n;

  PreferenceOrder loner;
  loner.push_back(1);
  for (CandidateId c = n - 1; c >= 2; --c) loner.push_back(c);
  loner.push_back(0);
  e.utility.push_back(ranked_utilities(loner));

  PreferenceOrder crowd{2, 1, 0};
  for (CandidateId c = n - 1; c >= 3; --c) crowd.push_back(c);
  for (int i = 1; i < n; ++i) e.utility.push_back(ranked_utilities(crowd));
  return e;
}

// Worst case for truth-biased voters under deterministic tie breaking:
// three candidates, gap 2n/3.  A third of the electorate loves candidate
// 0, the rest love candidate 2, and candidate 1 sits in the middle for
// everyone.  The sincere profile elects candidate 2 with 2n/3 votes, yet
// the slight majority block can also hold candidate 1 in office with
// zero sincere support: candidate 0 one point behind keeps them from
// reverting.
inline Election gen_truth_poa(int n) {
  if (n < 6 || n % 3 != 0)
    throw std::invalid_argument("gap construction needs n divisible by 3, at least 6");
  Election e;
  e.candidates = 3;
  for (int i = 0; i < n / 3; ++i) e.utility.push_back({Int(3), Int(2), Int(1)});
  for (int i = 0; i < 2 * n / 3; ++i) e.utility.push_back({Int(1), Int(2), Int(3)});
  return e;
}

// The deviating block in gen_truth_poa's worst equilibrium: the first
// n/3+1 of the voters whose sincere choice is candidate 2 vote for
// candidate 1 instead.
inline BallotVector gen_truth_poa_witness(int n) {
  BallotVector b(n, 2);
  for (int i = 0; i < n / 3; ++i) b[i] = 0;
  for (int i = n / 3; i < 2 * n / 3 + 1; ++i) b[i] = 1;
  return b;
}

// Four voters, three candidates; the settings disagree sharply on it.
// Lazy voters under deterministic tie breaking elect candidate 1 on a
// lone ballot, truth-biased voters elect candidate 2 sincerely, and lazy
// voters under random candidate tie breaking have no equilibrium at all.
inline Election gen_comparison_example() {
  Election e;
  e.candidates = 3;
  e.utility = {{Int(1), Int(3), Int(2)},
               {Int(1), Int(2), Int(3)},
               {Int(1), Int(2), Int(3)},
               {Int(1), Int(2), Int(3)}};
  return e;
}

struct RcVsRvExample {
  Election election;
  PrincipledProfile principled;
  BallotVector profile; // an equilibrium under both randomized rules
};

// Shows the two randomized rules producing different lotteries on the
// same equilibrium.  Four strategic voters split two against two over
// candidates 0 and 1; a principled bystander tops candidate 2.  With the
// profile (0,0,1,1) the winners tie at two votes each: a candidate draw
// gives 1/2-1/2, while a voter draw gives 3/5-2/5 because the bystander's
// wasted ballot falls back to her favourite winner, candidate 0.
inline RcVsRvExample gen_rc_vs_rv() {
  RcVsRvExample ex;
  ex.election.candidates = 3;
  ex.election.utility = {{Int(20), Int(4), Int(1)},
                         {Int(20), Int(4), Int(1)},
                         {Int(4), Int(20), Int(1)},
                         {Int(4), Int(20), Int(1)}};
  ex.principled = {{2, 0, 1}};
  ex.profile = {0, 0, 1, 1};
  return ex;
}

} // namespace plureq
