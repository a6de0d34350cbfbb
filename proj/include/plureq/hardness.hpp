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
#include <stdexcept>
#include <utility>
#include <vector>

#include "plureq/election.hpp"
#include "plureq/game.hpp"

namespace plureq {

// Maximum set intersection, decision form: among `sets` over the ground
// set {0..elements-1}, do some k of them share at least q common members?
struct MsiInstance {
  int elements = 0;
  std::vector<std::vector<int>> sets;
  int k = 0;
  int q = 0;
};

struct MsiAnswer {
  bool yes = false;
  std::vector<int> chosen;  // indices of the k selected sets
  std::vector<int> common;  // their full intersection
};

inline void validate_msi(const MsiInstance& inst) {
  if (inst.elements < 0 || inst.k < 0 || inst.q < 0)
    throw std::invalid_argument("instance sizes must be non-negative");
  for (const auto& set : inst.sets) {
    std::vector<char> seen(inst.elements, 0);
    for (int e : set) {
      if (e < 0 || e >= inst.elements) throw std::invalid_argument("set member out of range");
      if (seen[e]) throw std::invalid_argument("duplicate member in a set");
      seen[e] = 1;
    }
  }
}

// Exhaustive reference solver.  The intersection of zero sets is the
// whole ground set.
inline MsiAnswer msi_brute(const MsiInstance& inst) {
  validate_msi(inst);
  const int m = static_cast<int>(inst.sets.size());
  MsiAnswer ans;
  if (inst.k > m || inst.q > inst.elements) return ans;

  std::vector<std::vector<char>> member(m, std::vector<char>(inst.elements, 0));
  for (int i = 0; i < m; ++i)
    for (int e : inst.sets[i]) member[i][e] = 1;

  std::vector<int> pick(inst.k);
  for (int i = 0; i < inst.k; ++i) pick[i] = i;
  while (true) {
    std::vector<char> inter(inst.elements, 1);
    for (int i : pick)
      for (int e = 0; e < inst.elements; ++e) inter[e] &= member[i][e];
    std::vector<int> common;
    for (int e = 0; e < inst.elements; ++e)
      if (inter[e]) common.push_back(e);
    if (static_cast<int>(common.size()) >= inst.q) {
      ans.yes = true;
      ans.chosen = pick;
      ans.common = std::move(common);
      return ans;
    }
    // next k-combination of [0, m)
    int i = inst.k - 1;
    while (i >= 0 && pick[i] == m - inst.k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < inst.k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return ans;
}

// Balanced complete bipartite subgraph, decision form: does the graph
// contain K_{k,k} as a subgraph?
struct BcbsInstance {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> edges;
  int k = 0;
};

struct BcbsAnswer {
  bool yes = false;
  std::vector<int> left_side;
  std::vector<int> right_side;
};

inline void validate_bcbs(const BcbsInstance& inst) {
  if (inst.left < 0 || inst.right < 0 || inst.k < 0)
    throw std::invalid_argument("instance sizes must be non-negative");
  for (auto [u, v] : inst.edges)
    if (u < 0 || u >= inst.left || v < 0 || v >= inst.right)
      throw std::invalid_argument("edge endpoint out of range");
}

inline BcbsAnswer bcbs_brute(const BcbsInstance& inst) {
  validate_bcbs(inst);
  BcbsAnswer ans;
  if (inst.k > inst.left || inst.k > inst.right) return ans;
  if (inst.k == 0) {
    ans.yes = true;
    return ans;
  }

  std::vector<std::vector<char>> adj(inst.left, std::vector<char>(inst.right, 0));
  for (auto [u, v] : inst.edges) adj[u][v] = 1;

  std::vector<int> pick(inst.k);
  for (int i = 0; i < inst.k; ++i) pick[i] = i;
  while (true) {
    std::vector<int> left_side;
    for (int u = 0; u < inst.left; ++u) {
      bool all = true;
      for (int v : pick)
        if (!adj[u][v]) {
          all = false;
          break;
        }
      if (all) left_side.push_back(u);
    }
    if (static_cast<int>(left_side.size()) >= inst.k) {
      left_side.resize(inst.k);
      ans.yes = true;
      ans.left_side = std::move(left_side);
      ans.right_side = pick;
      return ans;
    }
    int i = inst.k - 1;
    while (i >= 0 && pick[i] == inst.right - inst.k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < inst.k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return ans;
}

// K_{k,k} exists iff k right vertices have k common neighbours, so the
// right-vertex neighbourhoods become the sets and both bounds become k.
inline MsiInstance bcbs_to_msi(const BcbsInstance& inst) {
  validate_bcbs(inst);
  MsiInstance out;
  out.elements = inst.left;
  out.sets.assign(inst.right, {});
  for (auto [u, v] : inst.edges) out.sets[v].push_back(u);
  for (auto& set : out.sets) std::sort(set.begin(), set.end());
  out.k = inst.k;
  out.q = inst.k;
  return out;
}

// An election whose single-winner equilibrium question encodes a set
// intersection instance.  Candidates 0..n-1 stand for the elements; the
// last three candidates are a guard (index n, strongest tie priority of
// the three) and two rivals (n+1 and n+2).  The question "is there an
// equilibrium electing exactly candidate `target`" is a yes iff the
// instance is a yes.
struct ReducedElection {
  Election election;
  CandidateId target = 0;       // the rival with the weakest tie priority
  MsiInstance padded;           // instance after empty-set padding
  int s = 0;                    // score the target reaches in equilibrium
  int scale = 0;                // top utility handed to every voter
  std::vector<int> block;              // construction block per voter, 1..5
  std::vector<int> block1_set;         // set index backing a block-1 voter, else -1
  std::vector<int> block4_element;     // element backing a block-4 voter, else -1
};

// Builds the reduced election.  Requires 1 <= k <= |sets| and
// 1 <= q <= elements; outside those bounds the answer is immediate and
// the construction is meaningless.  Empty sets are appended first: they
// are never worth selecting when q >= 1, and enough of them guarantee
// that every element is missing from some set, that the set count
// strictly exceeds elements + k + q, and that every block below has a
// non-negative voter count.
inline ReducedElection msi_to_election(const MsiInstance& inst) {
  validate_msi(inst);
  const int n = inst.elements;
  const int m_orig = static_cast<int>(inst.sets.size());
  if (inst.k < 1 || inst.k > m_orig)
    throw std::invalid_argument("reduction needs 1 <= k <= set count");
  if (inst.q < 1 || inst.q > n)
    throw std::invalid_argument("reduction needs 1 <= q <= element count");
  const int k = inst.k;
  const int q = inst.q;

  ReducedElection red;
  red.padded = inst;
  bool every_element_missed = true;
  for (int e = 0; e < n && every_element_missed; ++e) {
    bool missed = false;
    for (const auto& set : inst.sets)
      if (std::find(set.begin(), set.end(), e) == set.end()) {
        missed = true;
        break;
      }
    every_element_missed = missed;
  }
  int m = std::max({m_orig, n + k + q + 1, 2 * k + n - q - 2});
  if (!every_element_missed && m == m_orig) ++m;
  red.padded.sets.resize(m);

  const int s = m - k + 3;
  const int scale = 12 * (n + m);
  red.s = s;
  red.scale = scale;

  const CandidateId w3 = n, w1 = n + 1, w2 = n + 2;
  red.target = w2;
  Election& e = red.election;
  e.candidates = n + 3;

  auto add_voter = [&](const PreferenceOrder& order, int tag, int set_idx, int elem_idx) {
    std::vector<Int> u(e.candidates);
    for (size_t pos = 0; pos < order.size(); ++pos)
      u[order[pos]] = Int(scale - 2 * static_cast<int>(pos));
    e.utility.push_back(std::move(u));
    red.block.push_back(tag);
    red.block1_set.push_back(set_idx);
    red.block4_element.push_back(elem_idx);
  };

  // Block 1, one voter per set: guard first, elements outside the set,
  // the target, elements inside the set, the other rival last.  The two
  // element groups straddle the target in utility.
  for (int i = 0; i < m; ++i) {
    std::vector<char> inside(n, 0);
    for (int el : red.padded.sets[i]) inside[el] = 1;
    std::vector<Int> u(e.candidates);
    u[w3] = Int(scale);
    u[w2] = Int(6 * (n + m));
    u[w1] = Int(3 * (n + m));
    int out_rank = 0, in_rank = 0;
    for (int el = 0; el < n; ++el)
      if (inside[el])
        u[el] = Int(6 * (n + m) - 2 * ++in_rank);
      else
        u[el] = Int(scale - 2 * ++out_rank);
    e.utility.push_back(std::move(u));
    red.block.push_back(1);
    red.block1_set.push_back(i);
    red.block4_element.push_back(-1);
  }

  PreferenceOrder tail;
  for (int el = 0; el < n; ++el) tail.push_back(el);

  // Block 2: supporters of the stronger rival.
  {
    PreferenceOrder order{w1, w2, w3};
    order.insert(order.end(), tail.begin(), tail.end());
    for (int i = 0; i < s - 1; ++i) add_voter(order, 2, -1, -1);
  }
  // Block 3: sincere supporters of the target, deliberately short.
  {
    PreferenceOrder order{w2, w1, w3};
    order.insert(order.end(), tail.begin(), tail.end());
    for (int i = 0; i < s - k - (n - q) - 1; ++i) add_voter(order, 3, -1, -1);
  }
  // Block 4: per element, a bank of supporters keeping it near the lead.
  for (int el = 0; el < n; ++el) {
    PreferenceOrder order{el, w3, w2, w1};
    for (int other = 0; other < n; ++other)
      if (other != el) order.push_back(other);
    for (int i = 0; i < s - 2; ++i) add_voter(order, 4, -1, el);
  }
  // Block 5: a lone guard supporter who tolerates the target.
  {
    PreferenceOrder order{w3, w2};
    order.insert(order.end(), tail.begin(), tail.end());
    order.push_back(w1);
    add_voter(order, 5, -1, -1);
  }

  return red;
}

// Turns an intersection certificate into the equilibrium it promises:
// the block-1 voter of every chosen set, the block-5 voter, and one
// supporter of each element outside the q witnessed common elements all
// defect to the target.
inline BallotVector certificate_to_ballots(const ReducedElection& red,
                                           const std::vector<int>& chosen,
                                           const std::vector<int>& common) {
  const int n = red.padded.elements;
  const int k = red.padded.k;
  const int q = red.padded.q;
  if (static_cast<int>(chosen.size()) != k)
    throw std::invalid_argument("certificate must pick exactly k sets");
  if (static_cast<int>(common.size()) < q)
    throw std::invalid_argument("certificate must witness at least q elements");
  std::vector<char> kept(n, 0);
  for (int i = 0; i < q; ++i) {
    const int el = common[i];
    if (el < 0 || el >= n) throw std::invalid_argument("certificate element out of range");
    kept[el] = 1;
  }
  for (int idx : chosen) {
    if (idx < 0 || idx >= static_cast<int>(red.padded.sets.size()))
      throw std::invalid_argument("certificate set index out of range");
    const auto& set = red.padded.sets[idx];
    for (int el = 0; el < n; ++el)
      if (kept[el] && std::find(set.begin(), set.end(), el) == set.end())
        throw std::invalid_argument("certificate elements must lie in every chosen set");
  }

  BallotVector b = truthful_ballots(red.election);
  const int voters = static_cast<int>(b.size());
  std::vector<char> chosen_set(red.padded.sets.size(), 0);
  for (int idx : chosen) chosen_set[idx] = 1;
  std::vector<char> element_done(n, 0);
  for (int v = 0; v < voters; ++v) {
    switch (red.block[v]) {
      case 1:
        if (chosen_set[red.block1_set[v]]) b[v] = red.target;
        break;
      case 4: {
        const int el = red.block4_element[v];
        if (!kept[el] && !element_done[el]) {
          element_done[el] = 1;
          b[v] = red.target;
        }
        break;
      }
      case 5:
        b[v] = red.target;
        break;
      default:
        break;
    }
  }
  return b;
}

struct SingleNeAnswer {
  bool yes = false;
  std::optional<BallotVector> witness;
};

namespace detail {

inline long long binomial_capped(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long out = 1;
  for (int i = 1; i <= r; ++i) {
    if (out > LLONG_MAX / (n - r + i)) return LLONG_MAX;
    out = out * (n - r + i) / i;
  }
  return out;
}

} // namespace detail

// Decides whether the reduced election has an equilibrium electing
// exactly the target, by trying every candidate defection pattern: in
// such an equilibrium the rival blocks vote sincerely and exactly
// k + (n - q) + 1 voters from the remaining blocks move to the target.
inline SingleNeAnswer single_ne_specialized(const ReducedElection& red,
                                            long long budget = kDefaultBudget) {
  const int n = red.padded.elements;
  const int k = red.padded.k;
  const int q = red.padded.q;
  const Election& e = red.election;

  std::vector<int> pool;
  for (size_t v = 0; v < red.block.size(); ++v)
    if (red.block[v] == 1 || red.block[v] == 4 || red.block[v] == 5)
      pool.push_back(static_cast<int>(v));
  const int r = k + (n - q) + 1;

  SingleNeAnswer ans;
  if (r > static_cast<int>(pool.size())) return ans;
  const long long work = detail::binomial_capped(static_cast<int>(pool.size()), r);
  if (work > budget) throw BudgetExceeded(work);

  const GameSpec g{e, Setting::TruthBiased, TieRule::Lex, {}, TrivialBallotPolicy::FullTie};
  const BallotVector truthful = truthful_ballots(e);

  std::vector<int> pick(r);
  for (int i = 0; i < r; ++i) pick[i] = i;
  while (true) {
    BallotVector b = truthful;
    for (int i : pick) b[pool[i]] = red.target;
    const ScoreBoard sb = scores(e, b);
    if (sb.winners.size() == 1 && sb.winners[0] == red.target && is_pne(g, b).equilibrium) {
      ans.yes = true;
      ans.witness = std::move(b);
      return ans;
    }
    int i = r - 1;
    while (i >= 0 && pick[i] == static_cast<int>(pool.size()) - r + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return ans;
}

} // namespace plureq
