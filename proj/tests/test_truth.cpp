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
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "plureq/characterize_truth.hpp"
#include "plureq/solve.hpp"

using namespace plureq;

namespace {

Election make(int m, std::vector<std::vector<int>> rows) {
  Election e;
  e.candidates = m;
  for (const auto& r : rows) {
    std::vector<Int> u(r.begin(), r.end());
    e.utility.push_back(std::move(u));
  }
  return e;
}

Election comparison_election() {
  return make(3, {{1, 3, 2}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
}

Election random_election(std::mt19937& rng, int n, int m) {
  std::vector<int> pool(100);
  std::iota(pool.begin(), pool.end(), 1);
  Election e;
  e.candidates = m;
  for (int i = 0; i < n; ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Int> u;
    for (int c = 0; c < m; ++c) u.emplace_back(pool[c]);
    e.utility.push_back(std::move(u));
  }
  return e;
}

std::vector<BallotVector> sorted(std::vector<BallotVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Reference version of the threshold set: candidates that one extra vote
// would put strictly ahead of the current winner under priority ties.
std::vector<CandidateId> threshold_by_simulation(const Election& e,
                                                 const BallotVector& b) {
  const ScoreBoard sb = scores(e, b);
  const CandidateId j = sb.winners.front();
  std::vector<CandidateId> out;
  for (CandidateId c = 0; c < e.candidates; ++c) {
    if (c == j) continue;
    const int lifted = sb.votes[c] + 1;
    if (lifted > sb.votes[j] || (lifted == sb.votes[j] && c < j)) out.push_back(c);
  }
  return out;
}

} // namespace

TEST_CASE("sincere stability under priority ties", "[truth][lex]") {
  // comparison election: candidate 2 wins 3-1-0 and nobody trails by one
  CHECK(truthful_pne_truth_lex(comparison_election()));
  // head-to-head tie: neither voter wants the other favourite promoted
  CHECK(truthful_pne_truth_lex(make(2, {{2, 1}, {1, 2}})));
  // comfortable margins are always stable
  CHECK(truthful_pne_truth_lex(
      make(2, {{2, 1}, {2, 1}, {2, 1}, {1, 2}})));
}

TEST_CASE("a preferred co-winner breaks sincere stability", "[truth][lex]") {
  // three-way tie; voter 2 prefers co-winner 1 to the priority winner 0
  // and can hand over the election by switching her vote
  const Election e = make(3, {{9, 8, 1}, {1, 9, 2}, {1, 8, 9}});
  CHECK_FALSE(truthful_pne_truth_lex(e));
  GameSpec g{e, Setting::TruthBiased, TieRule::Lex, {}, TrivialBallotPolicy::FullTie};
  CHECK_FALSE(is_pne(g, truthful_ballots(e)).equilibrium);
}

TEST_CASE("a liftable trailing candidate breaks sincere stability", "[truth][lex]") {
  // winner 2 at three votes, candidate 0 at two; voter 2 prefers 0 and
  // can promote him into a priority-winning tie
  const Election e = make(3, {{9, 5, 1},
                              {9, 1, 5},
                              {5, 9, 1},
                              {1, 5, 9},
                              {5, 1, 9},
                              {1, 5, 9}});
  CHECK_FALSE(truthful_pne_truth_lex(e));
  GameSpec g{e, Setting::TruthBiased, TieRule::Lex, {}, TrivialBallotPolicy::FullTie};
  const StabilityReport rep = is_pne(g, truthful_ballots(e));
  CHECK_FALSE(rep.equilibrium);
}

TEST_CASE("threshold set frozen cases", "[truth][lex]") {
  // 3-1 finish: nothing is one vote from toppling the winner
  CHECK(threshold_set(comparison_election(), {1, 2, 2, 2}).empty());

  // equal score, lower priority: candidate 1 only needs the tie broken
  const Election pair = make(2, {{2, 1}, {1, 2}});
  CHECK(threshold_set(pair, {0, 1}) == std::vector<CandidateId>{1});

  // higher priority, one vote behind
  const Election trio = make(2, {{2, 1}, {1, 2}, {1, 2}});
  CHECK(threshold_set(trio, {0, 1, 1}) == std::vector<CandidateId>{0});
}

TEST_CASE("threshold set matches one-vote simulation", "[truth][lex][property]") {
  std::mt19937 rng(7321);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 4);
    const Election e = random_election(rng, n, m);
    BallotVector b(n);
    for (int i = 0; i < n; ++i)
      b[i] = static_cast<int>(rng() % (m + 1)) - 1;
    REQUIRE(threshold_set(e, b) == threshold_by_simulation(e, b));
  }
}

TEST_CASE("tied equilibria for truth-biased voters", "[truth][rand]") {
  // the balanced 2-2 split stays an equilibrium when voters are sincere
  const Election split = make(2, {{9, 5}, {9, 5}, {5, 9}, {5, 9}});
  for (TieRule rule : {TieRule::RandCand, TieRule::RandVoter}) {
    const TruthTieReport rep = truth_rand_tie_solve(split, rule);
    CHECK(rep.exists);
    CHECK(rep.equilibria == std::vector<BallotVector>{{0, 0, 1, 1}});
  }

  // the comparison election supports no tie at all
  const TruthTieReport none = truth_rand_tie_solve(comparison_election(), TieRule::RandCand);
  CHECK_FALSE(none.exists);
  CHECK(none.equilibria.empty());

  // two voters with distinct tops and mutual consent tie sincerely
  const Election duo = make(3, {{9, 1, 2}, {1, 9, 2}});
  const TruthTieReport tied = truth_rand_tie_solve(duo, TieRule::RandVoter);
  CHECK(tied.singleton_votes);
  CHECK(tied.equilibria == std::vector<BallotVector>{{0, 1}});
  GameSpec g{duo, Setting::TruthBiased, TieRule::RandVoter, {}, TrivialBallotPolicy::FullTie};
  CHECK(is_pne(g, {0, 1}).equilibrium);
}

TEST_CASE("a lone voter never sustains a tie", "[truth][rand]") {
  const Election solo = make(3, {{9, 4, 1}});
  const TruthTieReport rep = truth_rand_tie_solve(solo, TieRule::RandCand);
  CHECK(rep.singleton_votes); // vacuously: no rival tops to collide with
  CHECK(rep.equilibria.empty());
  CHECK_FALSE(rep.exists);
}

TEST_CASE("sincere single-winner stability under randomized rules", "[truth][rand]") {
  // margin of three: vacuous, stable
  const Election runaway = make(2, {{2, 1}, {2, 1}, {2, 1}});
  CHECK(truth_rand_truthful_single(runaway, TieRule::RandCand) == true);

  // comparison election: winner at 3, best rival at 1, stable
  CHECK(truth_rand_truthful_single(comparison_election(), TieRule::RandCand) == true);
  CHECK(truth_rand_truthful_single(comparison_election(), TieRule::RandVoter) == true);
  for (TieRule rule : {TieRule::RandCand, TieRule::RandVoter}) {
    GameSpec g{comparison_election(), Setting::TruthBiased, rule, {}, TrivialBallotPolicy::FullTie};
    CHECK(is_pne(g, {1, 2, 2, 2}).equilibrium);
  }

  // 2-1-1 votes: the candidate-2 supporter prefers candidate 1 and can
  // lift him into a coin flip with the winner
  const Election shaky = make(3, {{9, 5, 1}, {9, 1, 5}, {1, 9, 5}, {1, 5, 9}});
  CHECK(truth_rand_truthful_single(shaky, TieRule::RandCand) == false);

  // tied sincere winners: not this function's question
  const Election tied = make(3, {{9, 1, 2}, {1, 9, 2}});
  CHECK_FALSE(truth_rand_truthful_single(tied, TieRule::RandCand).has_value());
}

TEST_CASE("insincere single-winner verdicts", "[truth][rand]") {
  // five voters; the candidate-2 supporter deserts to the leader,
  // leaving candidate 1 exactly one vote behind as the required threat
  const Election e = make(3, {{9, 5, 1},
                              {9, 1, 5},
                              {1, 9, 5},
                              {2, 9, 5},
                              {5, 1, 9}});
  const BallotVector b{0, 0, 1, 1, 0};
  for (TieRule rule : {TieRule::RandCand, TieRule::RandVoter}) {
    const SingleVerdict v = verify_truth_rand_single(e, rule, b);
    CHECK(v.status == SingleVerdict::Status::Ok);
    CHECK(v.equilibrium);
    GameSpec g{e, Setting::TruthBiased, rule, {}, TrivialBallotPolicy::FullTie};
    CHECK(is_pne(g, b).equilibrium);
  }

  // deserting into a three-vote cushion leaves no threat to hold the
  // deserter in place: she would simply revert
  const Election cushion = make(3, {{9, 5, 1}, {9, 1, 5}, {1, 9, 5}, {5, 1, 9}});
  const SingleVerdict loose =
      verify_truth_rand_single(cushion, TieRule::RandCand, {0, 0, 1, 0});
  CHECK(loose.status == SingleVerdict::Status::Ok);
  CHECK_FALSE(loose.equilibrium);

  // a sincere profile or a tied winner are precondition failures
  CHECK(verify_truth_rand_single(cushion, TieRule::RandCand, {0, 0, 1, 2}).status ==
        SingleVerdict::Status::BallotTruthful);
  CHECK(verify_truth_rand_single(make(3, {{9, 1, 2}, {1, 9, 2}}), TieRule::RandCand,
                                 {0, 1})
            .status == SingleVerdict::Status::WinnerNotSingleton);
}

TEST_CASE("a profitable two-behind diversion spoils the verdict", "[truth][rand]") {
  // votes 3-2-1 after voter 5 deserts candidate 2 for the leader; but
  // she rates the three-way tie she could force by reverting two votes
  // down at (2+1+9)/3 = 4, against 2 for staying put
  const Election e = make(3, {{9, 5, 1},
                              {9, 1, 5},
                              {1, 9, 5},
                              {2, 9, 5},
                              {5, 1, 9},
                              {2, 1, 9}});
  const BallotVector b{0, 0, 1, 1, 2, 0};
  const SingleVerdict v = verify_truth_rand_single(e, TieRule::RandCand, b);
  CHECK(v.status == SingleVerdict::Status::Ok);
  CHECK_FALSE(v.equilibrium);
  GameSpec g{e, Setting::TruthBiased, TieRule::RandCand, {}, TrivialBallotPolicy::FullTie};
  CHECK_FALSE(is_pne(g, b).equilibrium);
}

TEST_CASE("insincere verdicts agree with direct stability checks", "[truth][rand][property]") {
  std::mt19937 rng(55337);
  int applicable = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int m = 2 + static_cast<int>(rng() % 2);
    const Election e = random_election(rng, n, m);
    const BallotVector a = truthful_ballots(e);
    BallotVector b(n);
    for (int i = 0; i < n; ++i)
      b[i] = static_cast<int>(rng() % (m + 1)) - 1;
    if (b == a) continue;
    if (scores(e, b).winners.size() != 1) continue;
    ++applicable;
    for (TieRule rule : {TieRule::RandCand, TieRule::RandVoter}) {
      GameSpec g{e, Setting::TruthBiased, rule, {}, TrivialBallotPolicy::FullTie};
      const SingleVerdict v = verify_truth_rand_single(e, rule, b);
      REQUIRE(v.status == SingleVerdict::Status::Ok);
      if (v.equilibrium != is_pne(g, b).equilibrium) {
        CAPTURE(trial, n, m, static_cast<int>(rule));
        REQUIRE(v.equilibrium == is_pne(g, b).equilibrium);
      }
    }
  }
  // the filter must leave a meaningful sample
  CHECK(applicable > 100);
}

TEST_CASE("truth-biased solvers match exhaustive enumeration", "[truth][oracle]") {
  std::mt19937 rng(90210);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 4);
    const Election e = random_election(rng, n, m);

    for (TieRule rule : {TieRule::Lex, TieRule::RandCand, TieRule::RandVoter}) {
      GameSpec g{e, Setting::TruthBiased, rule, {}, TrivialBallotPolicy::FullTie};
      const auto expected = sorted(enumerate_pne(g));
      const auto got = sorted(characterized_pne(g));
      if (got != expected) {
        CAPTURE(trial, n, m, static_cast<int>(rule));
        REQUIRE(got == expected);
      }
    }
  }
}
