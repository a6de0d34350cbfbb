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
#include <stdexcept>
#include <vector>

#include "plureq/characterize_lazy.hpp"
#include "plureq/characterize_truth.hpp"
#include "plureq/election.hpp"
#include "plureq/game.hpp"

namespace plureq {

namespace detail {

// Size of the desertion family for candidate j: every way a nonempty set
// of voters can leave their sincere ballot for j.  Saturates at LLONG_MAX.
inline long long desertion_space(const BallotVector& a, CandidateId j) {
  int movers = 0;
  for (Ballot t : a)
    if (t != j) ++movers;
  return movers >= 62 ? LLONG_MAX : (1LL << movers);
}

inline long long insincere_support_space(const Election& e) {
  const BallotVector a = truthful_ballots(e);
  long long total = 1;
  for (CandidateId j = 0; j < e.candidates; ++j) {
    const long long block = desertion_space(a, j);
    if (block >= LLONG_MAX - total) return LLONG_MAX;
    total += block;
  }
  return total;
}

// Runs f on every profile where a nonempty set of voters deserts their
// sincere ballot for the common candidate j.  Caller meters the cost via
// desertion_space first.
template <typename F>
inline void for_each_desertion(const Election& e, const BallotVector& a, CandidateId j,
                               F&& f) {
  std::vector<int> movers;
  for (int i = 0; i < e.voters(); ++i)
    if (a[i] != j) movers.push_back(i);
  const int count = static_cast<int>(movers.size());
  BallotVector b = a;
  for (long long mask = 1; mask < (1LL << count); ++mask) {
    for (int t = 0; t < count; ++t) b[movers[t]] = (mask >> t & 1) ? j : a[movers[t]];
    f(b);
  }
}

} // namespace detail

// The complete equilibrium set, computed from the structural results
// rather than by sweeping all ballot vectors.  Lazy games come straight
// out of the closed-form solvers.  Truth-biased games combine the
// closed-form pieces with a restricted search: every insincere ballot in
// an equilibrium names the winner, so beyond the sincere profile it is
// enough to try, for each candidate, each set of voters deserting to
// him.  That is at most m * 2^n profiles instead of (m+1)^n, and each
// candidate profile is only accepted after a full stability check.
//
// Games with principled voters and lazy games under the invalid reading
// of the empty profile have no such structure to lean on; both are
// rejected here and belong to enumerate_pne.
inline std::vector<BallotVector> characterized_pne(const GameSpec& g,
                                                   long long budget = kDefaultBudget) {
  if (!g.principled.empty())
    throw std::invalid_argument("characterized_pne handles games without principled voters");
  const Election& e = g.election;
  validate(e);

  if (g.setting == Setting::Lazy) {
    if (g.trivial_policy == TrivialBallotPolicy::Invalid)
      throw std::invalid_argument(
          "characterized lazy solvers assume the full-tie reading of the empty profile");
    return g.rule == TieRule::Lex ? lazy_lex_solve(e).equilibria
                                  : lazy_rand_solve(e, g.rule, budget).equilibria;
  }

  const long long needed = detail::insincere_support_space(e);
  if (needed > budget || needed == LLONG_MAX) throw BudgetExceeded(needed);

  const BallotVector a = truthful_ballots(e);
  std::vector<BallotVector> out;

  if (g.rule == TieRule::Lex) {
    if (truthful_pne_truth_lex(e)) out.push_back(a);
    const ScoreBoard sincere = scores(e, a);
    for (CandidateId j = 0; j < e.candidates; ++j)
      detail::for_each_desertion(e, a, j, [&](const BallotVector& b) {
        const ScoreBoard sb = scores(e, b);
        if (sb.winners.front() != j) return;
        const std::vector<CandidateId> held = threshold_set(e, b);
        if (held.empty()) return;
        for (CandidateId c : held)
          if (sb.votes[c] != sincere.votes[c]) return;
        if (is_pne(g, b).equilibrium) out.push_back(b);
      });
  } else {
    out = truth_rand_tie_solve(e, g.rule, budget).equilibria;
    if (truth_rand_truthful_single(e, g.rule).value_or(false)) out.push_back(a);
    for (CandidateId j = 0; j < e.candidates; ++j)
      detail::for_each_desertion(e, a, j, [&](const BallotVector& b) {
        if (verify_truth_rand_single(e, g.rule, b).equilibrium) out.push_back(b);
      });
  }

  detail::sort_unique(out);
  return out;
}

} // namespace plureq
