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

// Per-player witness predicates for the six stability concepts, evaluated
// through the query oracles only, plus the local repair procedure that
// turns a player's coalition into a favourite one by edge deletions.
//
// phi(concept, ., i) decides whether player i certifies that the given
// coalition structure violates the concept. A structure is stable exactly
// when no player is a witness. Every positive verdict carries replayable
// evidence: the deviation target for the individual concepts, a blocking
// coalition for core stability.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fenhg/game.hpp"
#include "fenhg/oracles.hpp"

namespace fenhg {

enum class StabilityConcept {
  Perfect,
  IndividuallyRational,
  Nash,
  IndividuallyStable,
  ContractuallyIndividuallyStable,
  CoreStable,
};

inline constexpr std::array<StabilityConcept, 6> kAllConcepts = {
    StabilityConcept::Perfect,
    StabilityConcept::IndividuallyRational,
    StabilityConcept::Nash,
    StabilityConcept::IndividuallyStable,
    StabilityConcept::ContractuallyIndividuallyStable,
    StabilityConcept::CoreStable,
};

inline std::string concept_name(StabilityConcept c) {
  switch (c) {
    case StabilityConcept::Perfect: return "perfect";
    case StabilityConcept::IndividuallyRational: return "ir";
    case StabilityConcept::Nash: return "nash";
    case StabilityConcept::IndividuallyStable: return "is";
    case StabilityConcept::ContractuallyIndividuallyStable: return "cis";
    case StabilityConcept::CoreStable: return "core";
  }
  return "?";
}

inline std::optional<StabilityConcept> concept_parse(const std::string& s) {
  for (StabilityConcept c : kAllConcepts)
    if (concept_name(c) == s) return c;
  return std::nullopt;
}

struct Evidence {
  enum class Kind {
    None,
    SingletonDeviation,   // moving to {i} improves
    JoinCoalition,        // joining the coalition with `key` improves
    BetterCoalition,      // a strictly preferred coalition (perfection)
    BlockingCoalition,    // a coalition all of whose members strictly gain
    OversizedComponent,   // friend component larger than the size bound
    EnemyEdgeInComponent, // enemy edge inside a friend component
  };

  Kind kind = Kind::None;
  CoalitionKey key = -1;        // JoinCoalition only
  std::vector<Player> players;  // coalition / component / edge endpoints

  bool operator==(const Evidence&) const = default;
};

inline std::string evidence_kind_name(Evidence::Kind k) {
  switch (k) {
    case Evidence::Kind::None: return "none";
    case Evidence::Kind::SingletonDeviation: return "singleton-deviation";
    case Evidence::Kind::JoinCoalition: return "join-coalition";
    case Evidence::Kind::BetterCoalition: return "better-coalition";
    case Evidence::Kind::BlockingCoalition: return "blocking-coalition";
    case Evidence::Kind::OversizedComponent: return "oversized-component";
    case Evidence::Kind::EnemyEdgeInComponent: return "enemy-edge-in-component";
  }
  return "?";
}

struct WitnessReport {
  Player player = 0;
  StabilityConcept concept_ = StabilityConcept::Nash;
  bool witness = false;
  Evidence evidence;
  QueryLedger queries_used;
};

namespace detail {

// Scratch buffers reused across phi calls on the same thread; phi itself
// stays pure with respect to its arguments.
struct PhiScratch {
  std::vector<std::pair<Player, EdgeLabel>> nbrs;
  std::vector<CoalitionKey> nbr_keys;
  std::vector<CoalitionKey> cand_keys;

  // core enumeration state
  std::unordered_map<Player, std::vector<std::pair<Player, EdgeLabel>>> nbr_cache;
  std::unordered_map<Player, CoalitionKey> key_cache;
  std::unordered_map<Player, long long> ugamma_cache;
  std::vector<Player> ball;                                   // local index -> player
  std::unordered_map<Player, int> local_of;                   // player -> local index
  std::vector<std::vector<std::pair<int, EdgeLabel>>> ball_adj;

  void reset_individual() {
    nbrs.clear();
    nbr_keys.clear();
    cand_keys.clear();
  }
  void reset_core() {
    nbr_cache.clear();
    key_cache.clear();
    ugamma_cache.clear();
    ball.clear();
    local_of.clear();
    ball_adj.clear();
  }
};

inline PhiScratch& phi_scratch() {
  thread_local PhiScratch s;
  return s;
}

// Full labelled neighbor list of v; at most d queries (the terminal "no
// such neighbor" answer is only asked when the degree is below d).
inline void fetch_neighbors(GraphOracle& g, Player v,
                            std::vector<std::pair<Player, EdgeLabel>>& out) {
  out.clear();
  int d = g.degree_bound();
  for (int k = 1; k <= d; ++k) {
    auto q = g.neighbor(v, k);
    if (!q) break;
    out.push_back(*q);
  }
}

inline const std::vector<std::pair<Player, EdgeLabel>>& cached_neighbors(GraphOracle& g,
                                                                         PhiScratch& s, Player v) {
  auto it = s.nbr_cache.find(v);
  if (it != s.nbr_cache.end()) return it->second;
  auto& slot = s.nbr_cache[v];
  fetch_neighbors(g, v, slot);
  return slot;
}

inline CoalitionKey cached_key(PartitionOracle& p, PhiScratch& s, Player v) {
  auto it = s.key_cache.find(v);
  if (it != s.key_cache.end()) return it->second;
  CoalitionKey k = p.find(v);
  s.key_cache.emplace(v, k);
  return k;
}

// u_j(coalition containing j) from j's local view.
inline long long cached_ugamma(GraphOracle& g, PartitionOracle& p, PhiScratch& s, Player j) {
  auto it = s.ugamma_cache.find(j);
  if (it != s.ugamma_cache.end()) return it->second;
  CoalitionKey kj = cached_key(p, s, j);
  long long u = 0;
  const auto& params = g.params();
  for (const auto& [w, label] : cached_neighbors(g, s, j)) {
    if (cached_key(p, s, w) != kj) continue;
    u += label == EdgeLabel::Friend ? params.f : -params.e;
  }
  s.ugamma_cache.emplace(j, u);
  return u;
}

WitnessReport phi_core(GraphOracle& g, PartitionOracle& p, Player i, SizeBound c);

}  // namespace detail

/// Evaluates the witness predicate for one player through the oracles.
inline WitnessReport phi(StabilityConcept concept_, GraphOracle& graph, PartitionOracle& part,
                         Player i, SizeBound c, const UtilityParams& params) {
  QueryLedger before = snapshot_ledger(graph, part);

  if (concept_ == StabilityConcept::CoreStable) {
    WitnessReport r = detail::phi_core(graph, part, i, c);
    r.queries_used = snapshot_ledger(graph, part) - before;
    return r;
  }

  auto& s = detail::phi_scratch();
  s.reset_individual();

  WitnessReport report;
  report.player = i;
  report.concept_ = concept_;

  detail::fetch_neighbors(graph, i, s.nbrs);
  auto friend_count = static_cast<long long>(std::count_if(
      s.nbrs.begin(), s.nbrs.end(), [](const auto& e) { return e.second == EdgeLabel::Friend; }));

  // Current utility needs the coalition keys of i and of all neighbors.
  long long u_cur = 0;
  CoalitionKey my_key = -1;
  bool friend_in_own = false;
  if (!s.nbrs.empty()) {
    my_key = part.find(i);
    for (const auto& [j, label] : s.nbrs) {
      CoalitionKey kj = part.find(j);
      s.nbr_keys.push_back(kj);
      if (kj != my_key) continue;
      if (label == EdgeLabel::Friend) {
        u_cur += params.f;
        friend_in_own = true;
      } else {
        u_cur -= params.e;
      }
    }
  }

  switch (concept_) {
    case StabilityConcept::Perfect: {
      long long cap = c.is_bounded() ? std::min(c.value() - 1, friend_count) : friend_count;
      if (u_cur < params.f * cap) {
        report.witness = true;
        report.evidence.kind = Evidence::Kind::BetterCoalition;
        report.evidence.players.push_back(i);
        for (const auto& [j, label] : s.nbrs) {
          if (label != EdgeLabel::Friend) continue;
          if (static_cast<long long>(report.evidence.players.size()) > cap) break;
          report.evidence.players.push_back(j);
        }
        std::sort(report.evidence.players.begin(), report.evidence.players.end());
      }
      break;
    }

    case StabilityConcept::IndividuallyRational: {
      if (u_cur < 0) {
        report.witness = true;
        report.evidence.kind = Evidence::Kind::SingletonDeviation;
      }
      break;
    }

    case StabilityConcept::Nash:
    case StabilityConcept::IndividuallyStable:
    case StabilityConcept::ContractuallyIndividuallyStable: {
      // A player with friends in the own coalition contractually depends
      // on them: leaving would make those friends worse off.
      if (concept_ == StabilityConcept::ContractuallyIndividuallyStable && friend_in_own) break;

      // The empty coalition is always an available target.
      if (0 > u_cur) {
        report.witness = true;
        report.evidence.kind = Evidence::Kind::SingletonDeviation;
        break;
      }

      // Only coalitions holding at least one friend of i can beat the
      // singleton; there are at most d of them, one per friend.
      for (std::size_t a = 0; a < s.nbrs.size() && !report.witness; ++a) {
        if (s.nbrs[a].second != EdgeLabel::Friend) continue;
        CoalitionKey target = s.nbr_keys[a];
        if (target == my_key) continue;
        bool seen = false;
        for (CoalitionKey k : s.cand_keys) seen = seen || k == target;
        if (seen) continue;
        s.cand_keys.push_back(target);

        long long u_target = 0;
        bool has_enemy = false;
        for (std::size_t b = 0; b < s.nbrs.size(); ++b) {
          if (s.nbr_keys[b] != target) continue;
          if (s.nbrs[b].second == EdgeLabel::Friend)
            u_target += params.f;
          else {
            u_target -= params.e;
            has_enemy = true;
          }
        }
        if (u_target <= u_cur) continue;
        if (concept_ != StabilityConcept::Nash && has_enemy) continue;  // an enemy vetoes entry
        // One member probe at index c decides |target| < c; when c > n the
        // bound cannot bind and no probe is needed.
        if (c.is_bounded() && c.value() <= part.n() &&
            part.member(target, static_cast<int>(c.value())))
          continue;
        report.witness = true;
        report.evidence.kind = Evidence::Kind::JoinCoalition;
        report.evidence.key = target;
      }
      break;
    }

    case StabilityConcept::CoreStable:
      break;  // handled above
  }

  report.queries_used = snapshot_ledger(graph, part) - before;
  return report;
}

inline WitnessReport phi(StabilityConcept concept_, GraphOracle& graph, PartitionOracle& part,
                         Player i, SizeBound c) {
  return phi(concept_, graph, part, i, c, graph.params());
}

namespace detail {

// Connected-coalition enumeration for the core predicate. Candidate
// blocking coalitions containing i are connected in F ∪ E, so they live in
// the radius-(c-1) ball around i. Sets are generated exactly once by the
// usual branch-on-frontier-vertex scheme, no dedup storage needed.
inline WitnessReport phi_core(GraphOracle& g, PartitionOracle& p, Player i, SizeBound c) {
  auto& s = phi_scratch();
  s.reset_core();

  WitnessReport report;
  report.player = i;
  report.concept_ = StabilityConcept::CoreStable;

  const auto& params = g.params();
  long long u_cur = cached_ugamma(g, p, s, i);
  if (u_cur < 0) {
    report.witness = true;
    report.evidence.kind = Evidence::Kind::BlockingCoalition;
    report.evidence.players = {i};
    return report;
  }

  // Collect the ball around i and its induced labelled adjacency.
  s.ball.push_back(i);
  s.local_of.emplace(i, 0);
  std::size_t head = 0;
  std::vector<int> depth = {0};
  while (head < s.ball.size()) {
    Player v = s.ball[head];
    int dv = depth[head];
    ++head;
    if (c.is_bounded() && dv >= c.value() - 1) continue;
    for (const auto& [w, label] : cached_neighbors(g, s, v)) {
      if (s.local_of.count(w)) continue;
      s.local_of.emplace(w, static_cast<int>(s.ball.size()));
      s.ball.push_back(w);
      depth.push_back(dv + 1);
    }
  }
  int m = static_cast<int>(s.ball.size());
  s.ball_adj.assign(m, {});
  for (int a = 0; a < m; ++a) {
    for (const auto& [w, label] : cached_neighbors(g, s, s.ball[a])) {
      auto it = s.local_of.find(w);
      if (it != s.local_of.end()) s.ball_adj[a].push_back({it->second, label});
    }
  }

  long long cmax = c.is_bounded() ? std::min<long long>(c.value(), m) : m;

  // Blocking test for the current set of local indices.
  std::vector<long long> uset(m, 0);  // u_j(S) per local index, maintained incrementally
  std::vector<char> in_set(m, 0), forbidden(m, 0);
  std::vector<int> set_members;

  auto blocks = [&]() {
    for (int a : set_members)
      if (uset[a] <= cached_ugamma(g, p, s, s.ball[a])) return false;
    return true;
  };

  auto add_vertex = [&](int v) {
    for (const auto& [w, label] : s.ball_adj[v]) {
      if (!in_set[w]) continue;
      long long delta = label == EdgeLabel::Friend ? params.f : -params.e;
      uset[w] += delta;
      uset[v] += delta;
    }
    in_set[v] = 1;
    set_members.push_back(v);
  };
  auto remove_vertex = [&](int v) {
    in_set[v] = 0;
    set_members.pop_back();
    for (const auto& [w, label] : s.ball_adj[v]) {
      if (!in_set[w]) continue;
      long long delta = label == EdgeLabel::Friend ? params.f : -params.e;
      uset[w] -= delta;
    }
    uset[v] = 0;
  };

  // extend(S, EXT): test S, then for each frontier vertex branch into the
  // sets that contain it and forbid it for the remaining branches, so every
  // connected superset of {i} is generated exactly once.
  auto extend = [&](auto&& self, std::vector<int> ext) -> bool {
    if (set_members.size() >= 2 && blocks()) return true;
    if (static_cast<long long>(set_members.size()) >= cmax) return false;
    std::vector<int> forbidden_here;
    bool found = false;
    while (!ext.empty() && !found) {
      int v = ext.back();
      ext.pop_back();
      std::vector<int> child_ext = ext;
      for (const auto& [w, label] : s.ball_adj[v]) {
        if (in_set[w] || forbidden[w]) continue;
        bool dup = false;
        for (int x : child_ext) dup = dup || x == w;
        if (!dup) child_ext.push_back(w);
      }
      add_vertex(v);
      found = self(self, std::move(child_ext));
      if (found) break;  // keep set_members as the blocking set
      remove_vertex(v);
      forbidden[v] = 1;
      forbidden_here.push_back(v);
    }
    if (!found)
      for (int v : forbidden_here) forbidden[v] = 0;
    return found;
  };

  add_vertex(0);  // local index of i
  std::vector<int> ext0;
  for (const auto& [w, label] : s.ball_adj[0]) {
    bool dup = false;
    for (int x : ext0) dup = dup || x == w;
    if (!dup) ext0.push_back(w);
  }
  bool found = extend(extend, std::move(ext0));

  if (found) {
    report.witness = true;
    report.evidence.kind = Evidence::Kind::BlockingCoalition;
    for (int a : set_members) report.evidence.players.push_back(s.ball[a]);
    std::sort(report.evidence.players.begin(), report.evidence.players.end());
  }
  return report;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Repair
// ---------------------------------------------------------------------------

/// Edge deletions that turn Γ(i) into a favourite coalition of i: drop
/// enemies inside Γ(i) and friends outside it. At most deg(i) <= d steps;
/// empty when Γ(i) already contains all friends and no enemies.
inline EditScript repair_to_favourite(const FenGame& g, const CoalitionStructure& part, Player i) {
  EditScript script;
  CoalitionKey mine = part.key_of(i);
  for (Player j : g.enemies(i))
    if (part.key_of(j) == mine) script.push(EditOp::DeleteEnemy, i, j);
  for (Player j : g.friends(i))
    if (part.key_of(j) != mine) script.push(EditOp::DeleteFriend, i, j);
  return script;
}

/// Concatenated repairs for every witness of the concept, evaluated on the
/// original game. Deletions shared by two witnesses are emitted once, so
/// the script stays applicable and its length stays <= (#witnesses) * d.
inline EditScript repair_all_witnesses(const FenGame& g, const CoalitionStructure& part,
                                       StabilityConcept concept_, SizeBound c) {
  std::vector<Player> witnesses;
  {
    GraphOracle graph(g);
    PartitionOracle po(part);
    for (Player i = 1; i <= g.n(); ++i)
      if (phi(concept_, graph, po, i, c, g.params()).witness) witnesses.push_back(i);
  }
  EditScript combined;
  std::unordered_set<std::uint64_t> seen;
  auto edge_id = [](Player u, Player v) {
    auto lo = static_cast<std::uint64_t>(std::min(u, v));
    auto hi = static_cast<std::uint64_t>(std::max(u, v));
    return (hi << 32) | lo;
  };
  for (Player i : witnesses) {
    EditScript script = repair_to_favourite(g, part, i);
    for (const EditStep& st : script.steps())
      if (seen.insert(edge_id(st.u, st.v)).second) combined.push(st.op, st.u, st.v);
  }
  return combined;
}

// ---------------------------------------------------------------------------
// Evidence replay
// ---------------------------------------------------------------------------

/// Checks a positive report against the exact game: the recorded evidence
/// must certify the violated stability condition.
inline bool evidence_certifies(const FenGame& g, const CoalitionStructure& part,
                               const WitnessReport& report, SizeBound c) {
  if (!report.witness) return report.evidence.kind == Evidence::Kind::None;
  Player i = report.player;
  std::vector<Player> own(part.coalition_of(i).begin(), part.coalition_of(i).end());
  long long u_cur = utility(g, i, own);

  auto no_enemy_inside = [&](std::span<const Player> set) {
    for (Player j : g.enemies(i))
      if (detail::sorted_contains(set, j)) return false;
    return true;
  };
  auto no_friend_in_own = [&]() {
    for (Player j : g.friends(i))
      if (part.key_of(j) == part.key_of(i)) return false;
    return true;
  };

  switch (report.evidence.kind) {
    case Evidence::Kind::SingletonDeviation: {
      if (0 <= u_cur) return false;
      if (report.concept_ == StabilityConcept::ContractuallyIndividuallyStable &&
          !no_friend_in_own())
        return false;
      return true;
    }
    case Evidence::Kind::JoinCoalition: {
      auto target = part.coalition(report.evidence.key);
      if (report.evidence.key == part.key_of(i)) return false;
      if (c.is_bounded() && static_cast<long long>(target.size()) >= c.value()) return false;
      std::vector<Player> joined(target.begin(), target.end());
      detail::insert_sorted(joined, i);
      if (utility(g, i, joined) <= u_cur) return false;
      if (report.concept_ != StabilityConcept::Nash && !no_enemy_inside(target)) return false;
      if (report.concept_ == StabilityConcept::ContractuallyIndividuallyStable &&
          !no_friend_in_own())
        return false;
      return true;
    }
    case Evidence::Kind::BetterCoalition: {
      const auto& better = report.evidence.players;
      if (!detail::sorted_contains(better, i)) return false;
      if (!c.admits(static_cast<long long>(better.size()))) return false;
      return utility(g, i, better) > u_cur;
    }
    case Evidence::Kind::BlockingCoalition: {
      const auto& block = report.evidence.players;
      if (!detail::sorted_contains(block, i)) return false;
      if (!c.admits(static_cast<long long>(block.size()))) return false;
      for (Player j : block) {
        std::vector<Player> theirs(part.coalition_of(j).begin(), part.coalition_of(j).end());
        if (utility(g, j, block) <= utility(g, j, theirs)) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

}  // namespace fenhg
