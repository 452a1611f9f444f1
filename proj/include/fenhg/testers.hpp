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

// The two randomized testers. Both draw ceil((1/epsilon) * ln 3) players
// independently and uniformly with replacement, touch the input only
// through the oracles, and have one-sided error: an input satisfying the
// property is always accepted; an input epsilon-far from it is rejected
// with probability at least 2/3. A rejection always carries witnesses.

#include <cmath>
#include <cstdint>
#include <vector>

#include "fenhg/oracles.hpp"
#include "fenhg/random.hpp"
#include "fenhg/witness.hpp"

namespace fenhg {

struct TesterConfig {
  double epsilon = 0.1;
  StabilityConcept concept_ = StabilityConcept::Nash;
  SizeBound c = SizeBound::unbounded();
  std::uint64_t rng_seed = 0;
};

/// Ledger bound asserted by the acceptance suite: for the five individual
/// concepts a verification run consumes at most
/// kVerificationQueryBoundFactor * d * sample_size(epsilon) queries. Each
/// sampled player costs at most d neighbor, d+1 find, and d member
/// queries, so a factor of 40 leaves ample headroom.
inline constexpr long long kVerificationQueryBoundFactor = 40;

/// ceil((1/epsilon) * ln 3); rounding up preserves (1-eps)^s <= 1/3.
inline int sample_size(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw PreconditionError("epsilon must lie in (0, 1]");
  return static_cast<int>(std::ceil(std::log(3.0) / epsilon));
}

struct TesterVerdict {
  bool accept = true;
  std::vector<WitnessReport> witnesses;  // nonempty exactly on reject
  std::vector<Player> sample;            // players drawn, in order
  QueryLedger ledger;
  std::uint64_t seed = 0;
};

/// Samples players and rejects as soon as one is a witness for the
/// concept. Stable structures are never rejected.
inline TesterVerdict verification_tester(GraphOracle& graph, PartitionOracle& part,
                                         const TesterConfig& cfg) {
  if (graph.n() != part.n()) throw PreconditionError("oracles disagree on the player count");
  TesterVerdict verdict;
  verdict.seed = cfg.rng_seed;
  QueryLedger before = snapshot_ledger(graph, part);
  Rng rng(cfg.rng_seed);
  int s = sample_size(cfg.epsilon);
  for (int t = 0; t < s; ++t) {
    auto i = static_cast<Player>(rng.uniform(1, static_cast<std::uint64_t>(graph.n())));
    verdict.sample.push_back(i);
    WitnessReport r = phi(cfg.concept_, graph, part, i, cfg.c, graph.params());
    if (r.witness) {
      verdict.accept = false;
      verdict.witnesses.push_back(std::move(r));
      break;  // one witness settles the verdict
    }
  }
  verdict.ledger = snapshot_ledger(graph, part) - before;
  return verdict;
}

/// Tests whether the game admits a perfect coalition structure with parts
/// of size <= c. Per sampled vertex, a breadth-first search along friend
/// edges rejects when it sees more than c vertices or both endpoints of an
/// enemy edge; at most c*d neighbor queries per sample.
inline TesterVerdict perfect_existence_tester(GraphOracle& graph, double epsilon, SizeBound c,
                                              std::uint64_t seed) {
  if (!c.is_bounded())
    throw ValidationError("the existence tester requires a bounded coalition size");
  TesterVerdict verdict;
  verdict.seed = seed;
  QueryLedger before = snapshot_ledger(graph);
  Rng rng(seed);
  int s = sample_size(epsilon);
  long long cap = c.value();

  for (int t = 0; t < s && verdict.accept; ++t) {
    auto v0 = static_cast<Player>(rng.uniform(1, static_cast<std::uint64_t>(graph.n())));
    verdict.sample.push_back(v0);

    std::vector<Player> visited = {v0};
    auto is_visited = [&](Player w) {
      for (Player x : visited)
        if (x == w) return true;
      return false;
    };
    std::vector<Player> queue = {v0};
    std::size_t head = 0;
    Evidence reject_evidence;
    while (head < queue.size() && reject_evidence.kind == Evidence::Kind::None) {
      Player u = queue[head++];
      for (int k = 1; k <= graph.degree_bound(); ++k) {
        auto q = graph.neighbor(u, k);
        if (!q) break;
        auto [w, label] = *q;
        if (label == EdgeLabel::Enemy) {
          if (is_visited(w)) {
            reject_evidence.kind = Evidence::Kind::EnemyEdgeInComponent;
            reject_evidence.players = {std::min(u, w), std::max(u, w)};
            break;
          }
          continue;
        }
        if (is_visited(w)) continue;
        visited.push_back(w);
        queue.push_back(w);
        if (static_cast<long long>(visited.size()) > cap) {
          reject_evidence.kind = Evidence::Kind::OversizedComponent;
          reject_evidence.players = visited;
          break;
        }
      }
    }

    if (reject_evidence.kind != Evidence::Kind::None) {
      verdict.accept = false;
      WitnessReport r;
      r.player = v0;
      r.concept_ = StabilityConcept::Perfect;
      r.witness = true;
      r.evidence = std::move(reject_evidence);
      std::sort(r.evidence.players.begin(), r.evidence.players.end());
      verdict.witnesses.push_back(std::move(r));
    }
  }
  verdict.ledger = snapshot_ledger(graph) - before;
  return verdict;
}

}  // namespace fenhg
