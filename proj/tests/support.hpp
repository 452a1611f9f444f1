// Copyright 2026 The fenhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-side helpers: a small independent instance generator and brute-force
// oracles used to freeze expected values. These deliberately avoid the
// library's own sampling and enumeration paths.

#include <cstdint>
#include <vector>

#include "fenhg/game.hpp"
#include "fenhg/random.hpp"

namespace fenhg::testing {

inline FenGame game_a() {
  // Friend path 1-2-3 with enemy edge (1,3), f = e = 1.
  return FenGame(3, 2, {1, 1},
                 {{1, 2, EdgeLabel::Friend}, {2, 3, EdgeLabel::Friend}, {1, 3, EdgeLabel::Enemy}});
}

/// Independent random game: direct edge proposals, no library generator.
inline FenGame random_game(Rng& rng, int n, int d, long long f = 1, long long e = 1,
                           int edge_attempts = -1) {
  std::vector<Edge> edges;
  std::vector<int> degree(n + 1, 0);
  auto present = [&](Player u, Player v) {
    for (const Edge& x : edges)
      if ((x.u == u && x.v == v) || (x.u == v && x.v == u)) return true;
    return false;
  };
  int attempts = edge_attempts < 0 ? n * d : edge_attempts;
  for (int t = 0; t < attempts; ++t) {
    auto u = static_cast<Player>(rng.uniform(1, n));
    auto v = static_cast<Player>(rng.uniform(1, n));
    if (u == v || present(u, v)) continue;
    if (degree[u] >= d || degree[v] >= d) continue;
    edges.push_back({std::min(u, v), std::max(u, v),
                     rng.chance(1, 2) ? EdgeLabel::Friend : EdgeLabel::Enemy});
    ++degree[u];
    ++degree[v];
  }
  return FenGame(n, d, {f, e}, edges);
}

/// Random partition built by sequential random assignment (independent of
/// the library's generator).
inline CoalitionStructure random_partition_indep(Rng& rng, int n, SizeBound c) {
  std::vector<std::vector<Player>> coalitions;
  for (Player i = 1; i <= n; ++i) {
    std::vector<int> open;
    for (int k = 0; k < static_cast<int>(coalitions.size()); ++k)
      if (c.admits(static_cast<long long>(coalitions[k].size()) + 1)) open.push_back(k);
    auto pick = rng.uniform(0, open.size());
    if (pick == open.size())
      coalitions.push_back({i});
    else
      coalitions[open[pick]].push_back(i);
  }
  return CoalitionStructure(n, coalitions, c);
}

/// All coalitions containing i, as sorted player lists (n <= 20).
inline std::vector<std::vector<Player>> coalitions_containing(int n, Player i) {
  std::vector<std::vector<Player>> out;
  std::vector<Player> others;
  for (Player p = 1; p <= n; ++p)
    if (p != i) others.push_back(p);
  auto m = static_cast<std::uint32_t>(others.size());
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<Player> c = {i};
    for (std::uint32_t b = 0; b < m; ++b)
      if (mask & (1u << b)) c.push_back(others[b]);
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

/// Brute-force maximum utility over coalitions containing i of admissible
/// size; the independent oracle behind max_utility's frozen values.
inline long long brute_max_utility(const FenGame& g, Player i, SizeBound c) {
  long long best = 0;
  for (const auto& coal : coalitions_containing(g.n(), i)) {
    if (!c.admits(static_cast<long long>(coal.size()))) continue;
    best = std::max(best, utility(g, i, coal));
  }
  return best;
}

}  // namespace fenhg::testing
