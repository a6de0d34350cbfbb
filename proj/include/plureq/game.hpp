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
#include <string>
#include <vector>

#include "plureq/election.hpp"

namespace plureq {

/*
 * Voting games.  A game fixes the election, the voter temperament and the
 * tie rule.  Lazy voters get an infinitesimal bonus for abstaining, so
 * they vote only when the vote buys a strictly better outcome.  Truth
 * biased voters must vote (abstention counts as minus infinity for them)
 * and get the bonus for voting sincerely.
 *
 * The bonus is not a number added to the expected utility.  A voter
 * compares outcomes lexicographically, exact expected utility first and
 * the bonus only to break exact ties.  PerturbedValue captures that.
 */

enum class Setting { Lazy, TruthBiased };

// What to make of a ballot vector where nobody votes at all.  FullTie
// scores it as an m-way tie at zero.  Invalid declares the election void
// and every voter gets minus infinity, a convention some authors prefer.
enum class TrivialBallotPolicy { FullTie, Invalid };

struct GameSpec {
  Election election;
  Setting setting = Setting::Lazy;
  TieRule rule = TieRule::Lex;
  PrincipledProfile principled;
  TrivialBallotPolicy trivial_policy = TrivialBallotPolicy::FullTie;
};

struct PerturbedValue {
  bool finite = true;
  Rat base;           // ignored when finite is false
  bool bonus = false; // the epsilon term

  friend bool operator==(const PerturbedValue& a, const PerturbedValue& b) {
    if (!a.finite || !b.finite) return a.finite == b.finite;
    return a.base == b.base && a.bonus == b.bonus;
  }
  friend bool operator<(const PerturbedValue& a, const PerturbedValue& b) {
    if (!a.finite) return b.finite;
    if (!b.finite) return false;
    if (a.base != b.base) return a.base < b.base;
    return a.bonus < b.bonus;
  }
  friend bool operator>(const PerturbedValue& a, const PerturbedValue& b) { return b < a; }
  friend bool operator<=(const PerturbedValue& a, const PerturbedValue& b) { return !(b < a); }
  friend bool operator>=(const PerturbedValue& a, const PerturbedValue& b) { return !(a < b); }
  friend bool operator!=(const PerturbedValue& a, const PerturbedValue& b) { return !(a == b); }
};

inline PerturbedValue minus_infinity() { return PerturbedValue{false, Rat(0), false}; }

namespace detail {

inline bool strategically_trivial(const BallotVector& b) {
  for (Ballot v : b)
    if (v != kAbstain) return false;
  return true;
}

} // namespace detail

// Voter i's value for the ballot vector b, bonus included.
inline PerturbedValue perturbed_utility(const GameSpec& g, const BallotVector& b, int voter) {
  const Election& e = g.election;
  const Ballot v = b[voter];
  if (g.setting == Setting::TruthBiased && v == kAbstain) return minus_infinity();
  if (g.trivial_policy == TrivialBallotPolicy::Invalid && g.principled.empty() &&
      detail::strategically_trivial(b))
    return minus_infinity();
  const Lottery lot = lottery(e, b, g.rule, g.principled);
  PerturbedValue pv;
  pv.base = expected_utility(e.utility[voter], lot);
  pv.bonus = (g.setting == Setting::Lazy) ? (v == kAbstain)
                                          : (v == top_choice(e.utility[voter]));
  return pv;
}

struct Deviation {
  int voter = 0;
  Ballot to = kAbstain;
};

struct StabilityReport {
  bool equilibrium = false;
  std::optional<Deviation> objection; // first improving deviation found
};

// Checks b for pure Nash equilibrium by trying every unilateral deviation.
// Scan order is fixed: voters by index, target ballots by candidate index
// with abstention last, so the reported objection is deterministic.
inline StabilityReport is_pne(const GameSpec& g, const BallotVector& b) {
  const Election& e = g.election;
  if (static_cast<int>(b.size()) != e.voters())
    throw std::invalid_argument("ballot vector size does not match voter count");
  BallotVector work = b;
  for (int i = 0; i < e.voters(); ++i) {
    const PerturbedValue cur = perturbed_utility(g, b, i);
    for (Ballot alt = 0; alt <= e.candidates; ++alt) {
      const Ballot target = (alt == e.candidates) ? kAbstain : alt;
      if (target == b[i]) continue;
      work[i] = target;
      if (perturbed_utility(g, work, i) > cur) {
        work[i] = b[i];
        return StabilityReport{false, Deviation{i, target}};
      }
    }
    work[i] = b[i];
  }
  return StabilityReport{true, std::nullopt};
}

inline constexpr long long kDefaultBudget = 10'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(long long required)
      : std::runtime_error("search space needs " + std::to_string(required) +
                           " vectors, over the given budget"),
        required_(required) {}
  long long required() const { return required_; }

 private:
  long long required_;
};

namespace detail {

// (m+1)^n saturated at LLONG_MAX, for budget admission.
inline long long vector_space_size(int candidates, int voters) {
  long long size = 1;
  for (int i = 0; i < voters; ++i) {
    if (size > LLONG_MAX / (candidates + 1)) return LLONG_MAX;
    size *= candidates + 1;
  }
  return size;
}

} // namespace detail

// Every pure Nash equilibrium of the game, in lexicographic ballot-vector
// order (candidate 0 < ... < candidate m-1 < abstain, first voter most
// significant).  Throws BudgetExceeded when (m+1)^n is over budget; an
// empty result therefore always means "no equilibrium", never "gave up".
//
// The walk keeps running vote counts and discards most vectors with two
// cheap tests that any equilibrium provably passes.  Lazy: every cast
// vote names a current winner, and a vote with a safety margin of two or
// more over the runner-up could be withdrawn for the abstention bonus.
// Truth biased: nobody abstains and every ballot names the voter's
// favourite or a current winner.  Survivors get the full deviation scan.
inline std::vector<BallotVector> enumerate_pne(const GameSpec& g,
                                               long long budget = kDefaultBudget) {
  const Election& e = g.election;
  validate(e);
  const int n = e.voters();
  const int m = e.candidates;
  const long long needed = detail::vector_space_size(m, n);
  if (needed > budget) throw BudgetExceeded(needed);

  const bool truth = g.setting == Setting::TruthBiased;
  // Truth biased voters never abstain in equilibrium, so that digit is
  // skipped outright; the order of the survivors is unchanged.
  const int digits = truth ? m : m + 1;
  const BallotVector sincere = truthful_ballots(e);

  std::vector<int> digit(n, 0);
  std::vector<int> votes(m, 0);
  for (const auto& r : g.principled) ++votes[r.front()];
  auto ballot_of = [&](int d) { return d == m ? kAbstain : d; };
  // Everybody starts on candidate 0.
  votes[0] += n;

  std::vector<BallotVector> found;
  BallotVector current(n, 0);
  for (;;) {
    const int top = *std::max_element(votes.begin(), votes.end());
    int winner_count = 0;
    int runner_up = INT_MIN;
    for (int c = 0; c < m; ++c) {
      if (votes[c] == top) ++winner_count;
      else runner_up = std::max(runner_up, votes[c]);
    }
    if (winner_count > 1) runner_up = top;

    bool plausible = true;
    int active = 0;
    for (int i = 0; i < n && plausible; ++i) {
      const Ballot v = ballot_of(digit[i]);
      if (v != kAbstain) ++active;
      if (truth) {
        plausible = (v == sincere[i]) || votes[v] == top;
      } else if (v != kAbstain) {
        plausible = votes[v] == top;
      }
    }
    if (plausible && !truth) {
      // A winner two or more votes clear of the field keeps winning when
      // one supporter stays home, and staying home earns the bonus.  The
      // one exception: under the Invalid policy the last remaining vote
      // cannot be withdrawn for free.
      const bool withdrawal_safe =
          g.trivial_policy == TrivialBallotPolicy::FullTie || !g.principled.empty() ||
          active >= 2;
      if (withdrawal_safe) {
        for (int i = 0; i < n && plausible; ++i) {
          const Ballot v = ballot_of(digit[i]);
          if (v != kAbstain && votes[v] - 1 > runner_up) plausible = false;
        }
      }
    }
    if (plausible) {
      for (int i = 0; i < n; ++i) current[i] = ballot_of(digit[i]);
      if (is_pne(g, current).equilibrium) found.push_back(current);
    }

    int pos = n - 1;
    while (pos >= 0 && digit[pos] == digits - 1) --pos;
    if (pos < 0) break;
    {
      const Ballot old = ballot_of(digit[pos]);
      if (old != kAbstain) --votes[old];
    }
    ++digit[pos];
    {
      const Ballot fresh = ballot_of(digit[pos]);
      if (fresh != kAbstain) ++votes[fresh];
    }
    for (int i = pos + 1; i < n; ++i) {
      const Ballot old = ballot_of(digit[i]);
      if (old != kAbstain) --votes[old];
      digit[i] = 0;
      ++votes[0];
    }
  }
  return found;
}

struct Outcome {
  std::vector<CandidateId> winners;
  Lottery lot;
};

inline bool operator==(const Outcome& a, const Outcome& b) {
  return a.winners == b.winners && a.lot == b.lot;
}

// Distinct equilibrium outcomes, each a winning set with its lottery,
// sorted by winning set and then by lottery.
inline std::vector<Outcome> pne_outcomes(const GameSpec& g,
                                         long long budget = kDefaultBudget) {
  std::vector<Outcome> outs;
  for (const BallotVector& b : enumerate_pne(g, budget)) {
    Outcome o;
    o.winners = g.principled.empty() ? scores(g.election, b).winners
                                     : scores(g.election, b, g.principled).winners;
    o.lot = lottery(g.election, b, g.rule, g.principled);
    if (std::find(outs.begin(), outs.end(), o) == outs.end()) outs.push_back(std::move(o));
  }
  std::sort(outs.begin(), outs.end(), [](const Outcome& a, const Outcome& b) {
    if (a.winners != b.winners) return a.winners < b.winners;
    return std::lexicographical_compare(a.lot.p.begin(), a.lot.p.end(), b.lot.p.begin(),
                                        b.lot.p.end());
  });
  return outs;
}

} // namespace plureq
