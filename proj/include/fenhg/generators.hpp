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

// Instance generators: random bounded-degree games and planted families
// whose stability or farness is certified by construction. Far families
// come with a counting argument recorded in the certificate: the instance
// is epsilon-far from the target property for every epsilon strictly below
// the stated threshold.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>

#include "fenhg/game.hpp"
#include "fenhg/random.hpp"
#include "fenhg/witness.hpp"

namespace fenhg {

enum class Family {
  RandomBoundedDegree,
  FriendClustersPerfect,
  EnemyPairsFar,
  FriendPathOversized,
  PlantedCoreBlocker,
};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::RandomBoundedDegree: return "random-bounded-degree";
    case Family::FriendClustersPerfect: return "friend-clusters-perfect";
    case Family::EnemyPairsFar: return "enemy-pairs-far";
    case Family::FriendPathOversized: return "friend-path-oversized";
    case Family::PlantedCoreBlocker: return "planted-core-blocker";
  }
  return "?";
}

inline std::optional<Family> family_parse(const std::string& s) {
  for (Family f : {Family::RandomBoundedDegree, Family::FriendClustersPerfect,
                   Family::EnemyPairsFar, Family::FriendPathOversized, Family::PlantedCoreBlocker})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

struct InstanceSpec {
  Family family = Family::RandomBoundedDegree;
  int n = 0;
  int d = 0;
  SizeBound c = SizeBound::unbounded();
  UtilityParams params{1, 1};
  std::string preset = "custom";  // friends-appreciation | enemies-aversion | custom
  std::uint64_t seed = 0;
  std::optional<long long> edge_target;  // random family only
};

struct FamilyCertificate {
  Family family = Family::RandomBoundedDegree;
  bool has_claims = false;
  bool stable_all_concepts = false;
  bool perfect_exists = false;
  std::optional<StabilityConcept> far_concept;
  long long witness_count = 0;
  long long distance_lower = 0;
  double epsilon_far_threshold = 0.0;  // epsilon-far for every epsilon < this
  std::string notes;
};

struct GeneratedInstance {
  FenGame game;
  std::optional<CoalitionStructure> partition;
  FamilyCertificate certificate;
};

inline UtilityParams resolved_params(const InstanceSpec& spec) {
  if (spec.preset == "friends-appreciation") return UtilityParams::friends_appreciation(spec.d);
  if (spec.preset == "enemies-aversion") return UtilityParams::enemies_aversion(spec.d);
  if (spec.preset == "custom") return spec.params;
  throw ValidationError("unknown utility preset: " + spec.preset);
}

/// Random partition with admissible part sizes: players join, in order, a
/// uniformly chosen coalition that still has room, or open a new one.
inline CoalitionStructure random_partition(int n, SizeBound c, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Player>> coalitions;
  std::vector<int> open;  // indices with room
  for (Player i = 1; i <= n; ++i) {
    open.clear();
    for (int k = 0; k < static_cast<int>(coalitions.size()); ++k)
      if (c.admits(static_cast<long long>(coalitions[k].size()) + 1)) open.push_back(k);
    auto pick = rng.uniform(0, open.size());
    if (pick == open.size())
      coalitions.push_back({i});
    else
      coalitions[open[pick]].push_back(i);
  }
  return CoalitionStructure(n, std::move(coalitions), c);
}

namespace detail {

inline GeneratedInstance gen_random(const InstanceSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw ValidationError("random family needs n >= 1 and d >= 1");
  Rng rng(spec.seed);
  long long max_edges = static_cast<long long>(spec.n) * spec.d / 2;
  long long target = spec.edge_target.value_or(static_cast<long long>(spec.n) * spec.d / 3);
  target = std::min({target, max_edges,
                     static_cast<long long>(spec.n) * (spec.n - 1) / 2});

  std::vector<int> degree(spec.n + 1, 0);
  std::unordered_set<std::uint64_t> used;
  std::vector<Edge> edges;
  long long attempts = 30 * target + 100;
  while (static_cast<long long>(edges.size()) < target && attempts-- > 0) {
    auto u = static_cast<Player>(rng.uniform(1, spec.n));
    auto v = static_cast<Player>(rng.uniform(1, spec.n));
    if (u == v) continue;
    if (degree[u] >= spec.d || degree[v] >= spec.d) continue;
    std::uint64_t id = (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                       static_cast<std::uint64_t>(std::max(u, v));
    if (!used.insert(id).second) continue;
    edges.push_back({std::min(u, v), std::max(u, v),
                     rng.chance(1, 2) ? EdgeLabel::Friend : EdgeLabel::Enemy});
    ++degree[u];
    ++degree[v];
  }

  GeneratedInstance out{FenGame(spec.n, spec.d, resolved_params(spec), edges), std::nullopt, {}};
  out.certificate.family = spec.family;
  out.certificate.notes = "no certified structure";
  return out;
}

// Friend cliques of size k = min(c, d+1), enemies only between clusters:
// every vertex of a full cluster is an enemy of the same-position vertex
// in the `span` clusters on either side of a ring, filling the degree
// budget evenly. The clusters form a perfect coalition structure.
inline GeneratedInstance gen_clusters(const InstanceSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw ValidationError("cluster family needs n >= 1 and d >= 1");
  long long k = std::min<long long>(spec.d + 1, spec.n);
  if (spec.c.is_bounded()) k = std::min(k, spec.c.value());

  std::vector<Edge> edges;
  std::vector<std::vector<Player>> clusters;
  for (long long base = 0; base < spec.n; base += k) {
    long long size = std::min<long long>(k, spec.n - base);
    std::vector<Player> cluster;
    for (long long a = 0; a < size; ++a) cluster.push_back(static_cast<Player>(base + a + 1));
    for (long long a = 0; a < size; ++a)
      for (long long b = a + 1; b < size; ++b)
        edges.push_back({cluster[a], cluster[b], EdgeLabel::Friend});
    clusters.push_back(std::move(cluster));
  }

  long long full = spec.n / k;
  long long span = std::min<long long>((spec.d - (k - 1)) / 2, full >= 3 ? (full - 1) / 2 : 0);
  for (long long t = 0; t < full; ++t)
    for (long long s = 1; s <= span; ++s) {
      long long t2 = (t + s) % full;
      for (long long j = 0; j < k; ++j) {
        Player u = clusters[t][j], v = clusters[t2][j];
        edges.push_back({std::min(u, v), std::max(u, v), EdgeLabel::Enemy});
      }
    }

  GeneratedInstance out{FenGame(spec.n, spec.d, resolved_params(spec), edges),
                        CoalitionStructure(spec.n, std::move(clusters), spec.c),
                        {}};
  out.certificate.family = spec.family;
  out.certificate.has_claims = true;
  out.certificate.stable_all_concepts = true;
  out.certificate.perfect_exists = true;
  out.certificate.notes =
      "clusters are friend cliques of size <= min(c, d+1) with enemies only between "
      "clusters; every player sits in a favourite coalition";
  return out;
}

inline GeneratedInstance gen_enemy_pairs(const InstanceSpec& spec) {
  if (spec.n < 2 || spec.d < 1) throw ValidationError("enemy-pairs family needs n >= 2 and d >= 1");
  if (spec.c.is_bounded() && spec.c.value() < 2)
    throw ValidationError("enemy-pairs family needs size bound c >= 2");
  long long m = spec.n / 2;
  std::vector<Edge> edges;
  std::vector<std::vector<Player>> coalitions;
  for (long long t = 0; t < m; ++t) {
    auto a = static_cast<Player>(2 * t + 1), b = static_cast<Player>(2 * t + 2);
    edges.push_back({a, b, EdgeLabel::Enemy});
    coalitions.push_back({a, b});
  }
  if (spec.n % 2 == 1) coalitions.push_back({static_cast<Player>(spec.n)});

  GeneratedInstance out{FenGame(spec.n, spec.d, resolved_params(spec), edges),
                        CoalitionStructure(spec.n, std::move(coalitions), spec.c),
                        {}};
  auto& cert = out.certificate;
  cert.family = spec.family;
  cert.has_claims = true;
  cert.far_concept = StabilityConcept::IndividuallyRational;
  cert.witness_count = 2 * m;
  cert.distance_lower = m;
  cert.epsilon_far_threshold =
      static_cast<double>(m) / (static_cast<double>(spec.d) * spec.n);
  cert.notes =
      "each pair shares one enemy edge and nothing else; both members sit below their "
      "singleton utility, and any fix must touch that pair's own edge, so the distance "
      "to individual rationality is exactly the number of pairs";
  return out;
}

inline GeneratedInstance gen_path_oversized(const InstanceSpec& spec) {
  if (!spec.c.is_bounded()) throw ValidationError("friend-path family needs a bounded c");
  long long len = spec.c.value() + 1;
  if (spec.d < 2) throw ValidationError("friend-path family needs d >= 2");
  if (spec.n < len) throw ValidationError("friend-path family needs n >= c + 1");
  long long tiles = spec.n / len;
  std::vector<Edge> edges;
  for (long long t = 0; t < tiles; ++t)
    for (long long a = 0; a < len - 1; ++a) {
      auto u = static_cast<Player>(t * len + a + 1);
      edges.push_back({u, static_cast<Player>(u + 1), EdgeLabel::Friend});
    }

  GeneratedInstance out{FenGame(spec.n, spec.d, resolved_params(spec), edges), std::nullopt, {}};
  auto& cert = out.certificate;
  cert.family = spec.family;
  cert.has_claims = true;
  cert.perfect_exists = false;
  cert.witness_count = tiles * len;  // vertices living in oversized friend components
  cert.distance_lower = tiles;
  cert.epsilon_far_threshold =
      static_cast<double>(tiles) / (static_cast<double>(spec.d) * spec.n);
  cert.notes =
      "disjoint friend paths on c+1 vertices; each needs at least one deletion before "
      "its component fits any coalition, so the game is epsilon-far from admitting a "
      "perfect structure for epsilon below the threshold";
  return out;
}

inline GeneratedInstance gen_core_blocker(const InstanceSpec& spec) {
  if (spec.n < 2 || spec.d < 1) throw ValidationError("core-blocker family needs n >= 2 and d >= 1");
  if (spec.c.is_bounded() && spec.c.value() < 2)
    throw ValidationError("core-blocker family needs size bound c >= 2");
  long long k = std::min<long long>(spec.d + 1, spec.n);
  if (spec.c.is_bounded()) k = std::min(k, spec.c.value());

  std::vector<Edge> edges;
  long long friend_edges = 0, witnesses = 0;
  for (long long base = 0; base < spec.n; base += k) {
    long long size = std::min<long long>(k, spec.n - base);
    if (size >= 2) witnesses += size;
    for (long long a = 0; a < size; ++a)
      for (long long b = a + 1; b < size; ++b) {
        edges.push_back({static_cast<Player>(base + a + 1), static_cast<Player>(base + b + 1),
                         EdgeLabel::Friend});
        ++friend_edges;
      }
  }

  GeneratedInstance out{FenGame(spec.n, spec.d, resolved_params(spec), edges),
                        CoalitionStructure::singletons(spec.n),
                        {}};
  auto& cert = out.certificate;
  cert.family = spec.family;
  cert.has_claims = true;
  cert.far_concept = StabilityConcept::CoreStable;
  cert.witness_count = witnesses;
  cert.distance_lower = friend_edges;
  cert.epsilon_far_threshold =
      static_cast<double>(friend_edges) / (static_cast<double>(spec.d) * spec.n);
  cert.notes =
      "friend cliques over a singleton partition: every friend pair blocks on its own, "
      "so each friend edge must be modified before the partition is core stable";
  return out;
}

}  // namespace detail

inline GeneratedInstance generate(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::RandomBoundedDegree: return detail::gen_random(spec);
    case Family::FriendClustersPerfect: return detail::gen_clusters(spec);
    case Family::EnemyPairsFar: return detail::gen_enemy_pairs(spec);
    case Family::FriendPathOversized: return detail::gen_path_oversized(spec);
    case Family::PlantedCoreBlocker: return detail::gen_core_blocker(spec);
  }
  throw ValidationError("unknown family");
}

}  // namespace fenhg
