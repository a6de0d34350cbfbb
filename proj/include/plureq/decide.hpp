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

#include "plureq/characterize_lazy.hpp"
#include "plureq/characterize_truth.hpp"
#include "plureq/election.hpp"
#include "plureq/game.hpp"
#include "plureq/solve.hpp"

namespace plureq {

enum class Problem {
  ExistNe,  // is there any equilibrium?
  TieNe,    // is there an equilibrium with two or more tied winners?
  SingleNe, // is there an equilibrium where `target` wins alone?
};

enum class Answer { Yes, No, Unknown };
enum class Method { Poly, Search };

struct DecisionQuery {
  Problem problem = Problem::ExistNe;
  Setting setting = Setting::Lazy;
  TieRule rule = TieRule::Lex;
  std::optional<CandidateId> target; // required for SingleNe
  TrivialBallotPolicy trivial_policy = TrivialBallotPolicy::FullTie;
};

struct DecisionResult {
  Answer answer = Answer::Unknown;
  std::optional<BallotVector> witness; // an equilibrium backing a Yes
  Method method = Method::Poly;
  bool search_completed = true; // false only when a budget stop forced Unknown
};

namespace detail {

inline bool outcome_matches(const Election& e, const BallotVector& b, Problem problem,
                            std::optional<CandidateId> target) {
  if (problem == Problem::ExistNe) return true;
  const ScoreBoard sb = scores(e, b);
  if (problem == Problem::TieNe) return sb.winners.size() >= 2;
  return sb.winners.size() == 1 && sb.winners.front() == *target;
}

} // namespace detail

// Answers one decision problem about the equilibria of an election.
//
// Every question under deterministic tie breaking, and every lazy
// question under a randomized rule, resolves through the closed-form
// characterizations; the only exponential work left is the tie-set scan
// in m and the desertion scans in n for truth-biased voters.  Answers
// are exact: No is returned only when the underlying search is complete,
// and a budget stop yields Unknown instead.
//
// Under the invalid reading of the empty profile the structural results
// do not apply, so the function falls back to full enumeration.
inline DecisionResult decide(const DecisionQuery& q, const Election& e,
                             long long budget = kDefaultBudget) {
  validate(e);
  if (q.problem == Problem::SingleNe) {
    if (!q.target) throw std::invalid_argument("SingleNe needs a target candidate");
    if (*q.target < 0 || *q.target >= e.candidates)
      throw std::invalid_argument("target candidate out of range");
  }
  const int n = e.voters();
  const int m = e.candidates;
  DecisionResult r;

  const auto yes = [&r](BallotVector w, Method how) {
    r.answer = Answer::Yes;
    r.witness = std::move(w);
    r.method = how;
    return r;
  };
  const auto no = [&r](Method how) {
    r.answer = Answer::No;
    r.method = how;
    return r;
  };
  const auto out_of_budget = [&r]() {
    r.answer = Answer::Unknown;
    r.method = Method::Search;
    r.search_completed = false;
    return r;
  };

  if (q.trivial_policy == TrivialBallotPolicy::Invalid) {
    const GameSpec g{e, q.setting, q.rule, {}, q.trivial_policy};
    try {
      for (const BallotVector& b : enumerate_pne(g, budget))
        if (detail::outcome_matches(e, b, q.problem, q.target)) return yes(b, Method::Search);
      return no(Method::Search);
    } catch (const BudgetExceeded&) {
      return out_of_budget();
    }
  }

  const BallotVector trivial(n, kAbstain);

  if (q.setting == Setting::Lazy && q.rule == TieRule::Lex) {
    const LazyLexReport rep = lazy_lex_solve(e);
    switch (q.problem) {
      case Problem::ExistNe:
        return rep.exists ? yes(rep.equilibria.front(), Method::Poly) : no(Method::Poly);
      case Problem::TieNe:
        return rep.unanimous && m >= 2 ? yes(trivial, Method::Poly) : no(Method::Poly);
      case Problem::SingleNe:
        if (rep.unanimous)
          return m == 1 && *q.target == 0 ? yes(trivial, Method::Poly) : no(Method::Poly);
        if (rep.exists && rep.winner == q.target)
          return yes(rep.equilibria.front(), Method::Poly);
        return no(Method::Poly);
    }
  }

  if (q.setting == Setting::Lazy) {
    const std::optional<CandidateId> common = check_rand_unanimity(e);
    const auto common_witness = [&]() {
      if (m == 1 || q.rule == TieRule::RandVoter) return trivial;
      BallotVector b(n, kAbstain);
      b[0] = *common;
      return b;
    };
    switch (q.problem) {
      case Problem::ExistNe: {
        if (common) return yes(common_witness(), Method::Poly);
        if (check_rand_singleton_votes(e) && (n >= 2 || q.rule == TieRule::RandCand))
          return yes(truthful_ballots(e), Method::Poly);
        try {
          const auto ts = find_tie_sets(e, budget);
          return ts.empty() ? no(Method::Search) : yes(prescribed_ballots(ts.front()), Method::Search);
        } catch (const BudgetExceeded&) {
          return out_of_budget();
        }
      }
      case Problem::TieNe: {
        if (m == 1) return no(Method::Poly);
        if (q.rule == TieRule::RandVoter && common) return yes(trivial, Method::Poly);
        if (n >= 2 && check_rand_singleton_votes(e))
          return yes(truthful_ballots(e), Method::Poly);
        try {
          const auto ts = find_tie_sets(e, budget);
          return ts.empty() ? no(Method::Search) : yes(prescribed_ballots(ts.front()), Method::Search);
        } catch (const BudgetExceeded&) {
          return out_of_budget();
        }
      }
      case Problem::SingleNe:
        if (q.rule == TieRule::RandVoter)
          return m == 1 && *q.target == 0 ? yes(trivial, Method::Poly) : no(Method::Poly);
        if (common && *common == *q.target) return yes(common_witness(), Method::Poly);
        return no(Method::Poly);
    }
  }

  // truth-biased settings
  const BallotVector a = truthful_ballots(e);
  const GameSpec g{e, q.setting, q.rule, {}, q.trivial_policy};

  if (q.rule == TieRule::Lex) {
    const bool sincere_stable = truthful_pne_truth_lex(e);
    const ScoreBoard sa = scores(e, a);
    switch (q.problem) {
      case Problem::ExistNe:
        if (sincere_stable) return yes(a, Method::Poly);
        break;
      case Problem::TieNe:
        if (sincere_stable && sa.winners.size() >= 2) return yes(a, Method::Poly);
        break;
      case Problem::SingleNe:
        if (sincere_stable && sa.winners.size() == 1 && sa.winners.front() == *q.target)
          return yes(a, Method::Poly);
        break;
    }

    // Insincere equilibria all have every deserter voting for the winner,
    // so scanning desertion families is exhaustive.
    const bool single_target = q.problem == Problem::SingleNe;
    const long long needed = single_target ? detail::desertion_space(a, *q.target)
                                           : detail::insincere_support_space(e);
    if (needed > budget || needed == LLONG_MAX) return out_of_budget();

    std::optional<BallotVector> found;
    for (CandidateId j = 0; j < m && !found; ++j) {
      if (single_target && j != *q.target) continue;
      detail::for_each_desertion(e, a, j, [&](const BallotVector& b) {
        if (found) return;
        const ScoreBoard sb = scores(e, b);
        if (sb.winners.front() != j) return;
        if (q.problem == Problem::TieNe && sb.winners.size() < 2) return;
        if (single_target && sb.winners.size() != 1) return;
        const std::vector<CandidateId> held = threshold_set(e, b);
        if (held.empty()) return;
        for (CandidateId c : held)
          if (sb.votes[c] != sa.votes[c]) return;
        if (is_pne(g, b).equilibrium) found = b;
      });
    }
    return found ? yes(*found, Method::Search) : no(Method::Search);
  }

  const std::optional<bool> sincere_single = truth_rand_truthful_single(e, q.rule);
  switch (q.problem) {
    case Problem::ExistNe:
      if (sincere_single.value_or(false)) return yes(a, Method::Poly);
      if (n >= 2 && check_rand_singleton_votes(e)) return yes(a, Method::Poly);
      break;
    case Problem::TieNe: {
      if (m == 1) return no(Method::Poly);
      if (n >= 2 && check_rand_singleton_votes(e)) return yes(a, Method::Poly);
      try {
        const auto ts = find_tie_sets(e, budget);
        return ts.empty() ? no(Method::Search) : yes(prescribed_ballots(ts.front()), Method::Search);
      } catch (const BudgetExceeded&) {
        return out_of_budget();
      }
    }
    case Problem::SingleNe:
      if (sincere_single.value_or(false) && scores(e, a).winners.front() == *q.target)
        return yes(a, Method::Poly);
      break;
  }

  if (q.problem == Problem::ExistNe) {
    try {
      const auto ts = find_tie_sets(e, budget);
      if (!ts.empty()) return yes(prescribed_ballots(ts.front()), Method::Search);
    } catch (const BudgetExceeded&) {
      return out_of_budget();
    }
  }

  const bool single_target = q.problem == Problem::SingleNe;
  const long long needed = single_target ? detail::desertion_space(a, *q.target)
                                         : detail::insincere_support_space(e);
  if (needed > budget || needed == LLONG_MAX) return out_of_budget();

  std::optional<BallotVector> found;
  for (CandidateId j = 0; j < m && !found; ++j) {
    if (single_target && j != *q.target) continue;
    detail::for_each_desertion(e, a, j, [&](const BallotVector& b) {
      if (found) return;
      if (verify_truth_rand_single(e, q.rule, b).equilibrium) found = b;
    });
  }
  return found ? yes(*found, Method::Search) : no(Method::Search);
}

} // namespace plureq
