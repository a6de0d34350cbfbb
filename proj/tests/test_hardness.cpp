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

#include <random>
#include <vector>

#include "plureq/decide.hpp"
#include "plureq/hardness.hpp"

using namespace plureq;

namespace {

MsiInstance msi(int elements, std::vector<std::vector<int>> sets, int k, int q) {
  MsiInstance inst;
  inst.elements = elements;
  inst.sets = std::move(sets);
  inst.k = k;
  inst.q = q;
  return inst;
}

GameSpec reduced_game(const ReducedElection& red) {
  return GameSpec{red.election, Setting::TruthBiased, TieRule::Lex, {},
                  TrivialBallotPolicy::FullTie};
}

} // namespace

TEST_CASE("set intersection reference solver", "[hardness]") {
  // picking zero sets intersects to the whole ground set
  const MsiAnswer all = msi_brute(msi(3, {}, 0, 2));
  CHECK(all.yes);
  CHECK(all.chosen.empty());
  CHECK(all.common == std::vector<int>{0, 1, 2});

  CHECK_FALSE(msi_brute(msi(3, {}, 0, 4)).yes); // q exceeds the ground set
  CHECK_FALSE(msi_brute(msi(3, {{0}}, 2, 1)).yes); // k exceeds the set count

  const MsiAnswer yes = msi_brute(msi(4, {{0, 1, 2}, {1, 2, 3}, {0, 1, 2, 3}}, 2, 2));
  REQUIRE(yes.yes);
  CHECK(yes.chosen == std::vector<int>{0, 1});
  CHECK(yes.common == std::vector<int>{1, 2});

  CHECK_FALSE(msi_brute(msi(3, {{0}, {1}, {2}}, 2, 1)).yes);
}

TEST_CASE("set intersection input validation", "[hardness]") {
  CHECK_THROWS_AS(msi_brute(msi(-1, {}, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(msi_brute(msi(2, {{2}}, 1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(msi_brute(msi(2, {{0, 0}}, 1, 1)), std::invalid_argument);
}

TEST_CASE("balanced biclique reference solver", "[hardness]") {
  BcbsInstance inst;
  inst.left = 2;
  inst.right = 2;
  inst.edges = {{0, 0}, {0, 1}, {1, 1}};

  inst.k = 0;
  CHECK(bcbs_brute(inst).yes);

  inst.k = 1;
  const BcbsAnswer one = bcbs_brute(inst);
  REQUIRE(one.yes);
  CHECK(one.left_side == std::vector<int>{0});
  CHECK(one.right_side == std::vector<int>{0});

  inst.k = 2;
  CHECK_FALSE(bcbs_brute(inst).yes); // the missing edge (1,0) breaks it

  inst.edges.push_back({1, 0});
  const BcbsAnswer full = bcbs_brute(inst);
  REQUIRE(full.yes);
  CHECK(full.left_side == std::vector<int>{0, 1});
  CHECK(full.right_side == std::vector<int>{0, 1});

  inst.k = 3;
  CHECK_FALSE(bcbs_brute(inst).yes);

  inst.edges.push_back({2, 0});
  CHECK_THROWS_AS(bcbs_brute(inst), std::invalid_argument);
}

TEST_CASE("biclique reduces to set intersection by right neighbourhoods", "[hardness]") {
  BcbsInstance inst;
  inst.left = 3;
  inst.right = 2;
  inst.edges = {{0, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
  inst.k = 2;

  const MsiInstance out = bcbs_to_msi(inst);
  CHECK(out.elements == 3);
  REQUIRE(out.sets.size() == 2);
  CHECK(out.sets[0] == std::vector<int>{0, 2});
  CHECK(out.sets[1] == std::vector<int>{0, 1, 2});
  CHECK(out.k == 2);
  CHECK(out.q == 2);
  CHECK(msi_brute(out).yes == bcbs_brute(inst).yes);
}

TEST_CASE("biclique reduction agrees on every small graph", "[hardness][oracle]") {
  // all bipartite graphs on 3+3 vertices, every balanced size
  for (int mask = 0; mask < (1 << 9); ++mask) {
    BcbsInstance inst;
    inst.left = 3;
    inst.right = 3;
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v)
        if (mask & (1 << (3 * u + v))) inst.edges.push_back({u, v});
    for (int k = 0; k <= 3; ++k) {
      inst.k = k;
      CAPTURE(mask, k);
      REQUIRE(bcbs_brute(inst).yes == msi_brute(bcbs_to_msi(inst)).yes);
    }
  }
}

TEST_CASE("reduction argument validation", "[hardness]") {
  CHECK_THROWS_AS(msi_to_election(msi(2, {{0}}, 0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(msi_to_election(msi(2, {{0}}, 2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(msi_to_election(msi(2, {{0}}, 1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(msi_to_election(msi(2, {{0}}, 1, 3)), std::invalid_argument);
}

TEST_CASE("reduced election shape and sincere scores", "[hardness]") {
  const MsiInstance inst = msi(2, {{0, 1}, {0}}, 1, 1);
  const ReducedElection red = msi_to_election(inst);

  // padding grows the set list to elements + k + q + 1 with empty sets
  const int m = static_cast<int>(red.padded.sets.size());
  CHECK(m == 5);
  for (int i = 2; i < m; ++i) CHECK(red.padded.sets[i].empty());
  CHECK(red.s == m - inst.k + 3);
  CHECK(red.scale == 12 * (inst.elements + m));
  CHECK(red.election.candidates == inst.elements + 3);
  CHECK(red.target == inst.elements + 2);
  REQUIRE_NOTHROW(validate(red.election));

  // one voter per set, the two rival blocks, the element banks, the guard
  std::vector<int> count(6, 0);
  for (int tag : red.block) ++count[tag];
  const int s = red.s;
  CHECK(count[1] == m);
  CHECK(count[2] == s - 1);
  CHECK(count[3] == s - inst.k - (inst.elements - inst.q) - 1);
  CHECK(count[4] == inst.elements * (s - 2));
  CHECK(count[5] == 1);

  const ScoreBoard sincere = scores(red.election, truthful_ballots(red.election));
  const CandidateId w3 = inst.elements, w1 = inst.elements + 1, w2 = inst.elements + 2;
  CHECK(sincere.votes[w3] == m + 1);
  CHECK(sincere.votes[w1] == s - 1);
  CHECK(sincere.votes[w2] == s - inst.k - (inst.elements - inst.q) - 1);
  for (int el = 0; el < inst.elements; ++el) CHECK(sincere.votes[el] == s - 2);
  CHECK(sincere.winners.front() == w3);
}

TEST_CASE("padding never changes the set intersection answer", "[hardness]") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 3);
    MsiInstance inst;
    inst.elements = n;
    for (int i = 0; i < m; ++i) {
      std::vector<int> set;
      for (int e = 0; e < n; ++e)
        if (rng() % 2) set.push_back(e);
      inst.sets.push_back(std::move(set));
    }
    inst.k = 1 + static_cast<int>(rng() % m);
    inst.q = 1 + static_cast<int>(rng() % n);
    const ReducedElection red = msi_to_election(inst);
    CAPTURE(trial, n, m, inst.k, inst.q);
    REQUIRE(msi_brute(red.padded).yes == msi_brute(inst).yes);
  }
}

TEST_CASE("certificates decode to single-winner equilibria", "[hardness]") {
  const MsiInstance inst = msi(2, {{0, 1}, {0}}, 1, 1);
  const ReducedElection red = msi_to_election(inst);
  const MsiAnswer ans = msi_brute(inst);
  REQUIRE(ans.yes);

  const BallotVector b = certificate_to_ballots(red, ans.chosen, ans.common);
  const ScoreBoard sb = scores(red.election, b);
  CHECK(sb.winners == std::vector<CandidateId>{red.target});
  CHECK(sb.votes[red.target] == red.s);
  CHECK(is_pne(reduced_game(red), b).equilibrium);

  // exactly k + (n - q) + 1 voters left their sincere ballot
  const BallotVector truthful = truthful_ballots(red.election);
  int moved = 0;
  for (size_t v = 0; v < b.size(); ++v)
    if (b[v] != truthful[v]) {
      CHECK(b[v] == red.target);
      ++moved;
    }
  CHECK(moved == inst.k + (inst.elements - inst.q) + 1);
}

TEST_CASE("certificate decoding validates its inputs", "[hardness]") {
  const MsiInstance inst = msi(2, {{0, 1}, {0}}, 1, 1);
  const ReducedElection red = msi_to_election(inst);
  CHECK_THROWS_AS(certificate_to_ballots(red, {0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(certificate_to_ballots(red, {0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(certificate_to_ballots(red, {0}, {5}), std::invalid_argument);
  CHECK_THROWS_AS(certificate_to_ballots(red, {7}, {0}), std::invalid_argument);
  // element 1 is missing from the second set
  CHECK_THROWS_AS(certificate_to_ballots(red, {1}, {1}), std::invalid_argument);
}

TEST_CASE("specialized search matches the reference solver", "[hardness][oracle]") {
  const std::vector<MsiInstance> frozen = {
      msi(1, {{0}}, 1, 1),                        // yes
      msi(1, {{}, {0}}, 2, 1),                    // no
      msi(2, {{0, 1}, {0}}, 1, 1),                // yes
      msi(2, {{0}, {1}}, 2, 1),                   // no
      msi(3, {{0, 1, 2}, {0, 1}, {1, 2}}, 2, 2),  // yes: sets 0,1 share {0,1}
      msi(3, {{0, 1}, {1, 2}, {0, 2}}, 2, 2),     // no: pairs share 1 element
  };
  for (size_t i = 0; i < frozen.size(); ++i) {
    const MsiInstance& inst = frozen[i];
    const ReducedElection red = msi_to_election(inst);
    const SingleNeAnswer got = single_ne_specialized(red);
    CAPTURE(i);
    REQUIRE(got.yes == msi_brute(inst).yes);
    if (got.yes) {
      REQUIRE(got.witness.has_value());
      const ScoreBoard sb = scores(red.election, *got.witness);
      CHECK(sb.winners == std::vector<CandidateId>{red.target});
      CHECK(sb.votes[red.target] == red.s);
      CHECK(is_pne(reduced_game(red), *got.witness).equilibrium);
    }
  }
}

TEST_CASE("specialized search matches full dispatch on tiny instances", "[hardness][oracle]") {
  // small enough that the general desertion scan stays within budget
  for (const MsiInstance& inst : {msi(1, {{0}}, 1, 1), msi(1, {{}, {0}}, 2, 1)}) {
    const ReducedElection red = msi_to_election(inst);
    DecisionQuery q;
    q.problem = Problem::SingleNe;
    q.setting = Setting::TruthBiased;
    q.rule = TieRule::Lex;
    q.target = red.target;
    const DecisionResult r = decide(q, red.election);
    REQUIRE(r.answer != Answer::Unknown);
    CHECK((r.answer == Answer::Yes) == single_ne_specialized(red).yes);
  }
}

TEST_CASE("random instances round-trip through the reduction", "[hardness][oracle]") {
  std::mt19937 rng(424242);
  int yes_seen = 0, no_seen = 0;
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 3);
    MsiInstance inst;
    inst.elements = n;
    for (int i = 0; i < m; ++i) {
      std::vector<int> set;
      for (int e = 0; e < n; ++e)
        if (rng() % 2) set.push_back(e);
      inst.sets.push_back(std::move(set));
    }
    inst.k = 1 + static_cast<int>(rng() % std::min(m, 2));
    inst.q = 1 + static_cast<int>(rng() % n);

    const MsiAnswer ref = msi_brute(inst);
    const ReducedElection red = msi_to_election(inst);
    const SingleNeAnswer got = single_ne_specialized(red);
    CAPTURE(trial, n, m, inst.k, inst.q);
    REQUIRE(got.yes == ref.yes);
    (ref.yes ? yes_seen : no_seen) += 1;
    if (ref.yes) {
      const BallotVector b = certificate_to_ballots(red, ref.chosen, ref.common);
      REQUIRE(is_pne(reduced_game(red), b).equilibrium);
      CHECK(scores(red.election, b).winners == std::vector<CandidateId>{red.target});
    }
  }
  CHECK(yes_seen >= 3);
  CHECK(no_seen >= 3);
}

TEST_CASE("search budget is enforced", "[hardness]") {
  const ReducedElection red = msi_to_election(msi(2, {{0, 1}, {0}}, 1, 1));
  try {
    single_ne_specialized(red, 5);
    FAIL("expected a budget stop");
  } catch (const BudgetExceeded& ex) {
    CHECK(ex.required() == 560); // 16 choose 3 defection patterns
  }
}
