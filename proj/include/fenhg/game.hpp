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

// Core model: FEN games on bounded-degree graphs, linear utilities,
// coalition structures, and atomic edit scripts between games.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fenhg {

using Player = int;            // players are 1..n
using CoalitionKey = int;      // index of a coalition inside a structure

enum class EdgeLabel { Friend, Enemy };

/// Invariant violations in games, partitions, or their serialized forms.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation precondition (e.g. i not in C).
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Utility parameters: every friend contributes +f, every enemy -e.
struct UtilityParams {
  long long f = 1;
  long long e = 1;

  static UtilityParams friends_appreciation(long long d) { return {d, 1}; }
  static UtilityParams enemies_aversion(long long d) { return {1, d}; }

  void validate() const {
    if (f < 1 || e < 1) throw ValidationError("utility params require f >= 1 and e >= 1");
  }
  bool operator==(const UtilityParams&) const = default;
};

/// Coalition-size bound: a positive integer or the unbounded sentinel.
class SizeBound {
 public:
  SizeBound() : value_(kUnbounded) {}

  static SizeBound bounded(long long c) {
    if (c < 1) throw ValidationError("size bound must be >= 1");
    SizeBound b;
    b.value_ = c;
    return b;
  }
  static SizeBound unbounded() { return SizeBound{}; }

  bool is_bounded() const { return value_ != kUnbounded; }
  long long value() const {
    if (!is_bounded()) throw PreconditionError("size bound is unbounded");
    return value_;
  }
  /// True when a coalition of the given size is admissible.
  bool admits(long long size) const { return !is_bounded() || size <= value_; }

  std::string str() const { return is_bounded() ? std::to_string(value_) : "unbounded"; }

  static SizeBound parse(const std::string& s) {
    if (s == "unbounded") return unbounded();
    try {
      size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return bounded(v);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse size bound: '" + s + "'");
    }
  }

  bool operator==(const SizeBound&) const = default;

 private:
  static constexpr long long kUnbounded = -1;
  long long value_;
};

struct Edge {
  Player u;
  Player v;
  EdgeLabel label;
};

namespace detail {

inline bool sorted_contains(std::span<const Player> xs, Player p) {
  return std::binary_search(xs.begin(), xs.end(), p);
}

inline void insert_sorted(std::vector<Player>& xs, Player p) {
  xs.insert(std::upper_bound(xs.begin(), xs.end(), p), p);
}

inline bool erase_sorted(std::vector<Player>& xs, Player p) {
  auto it = std::lower_bound(xs.begin(), xs.end(), p);
  if (it == xs.end() || *it != p) return false;
  xs.erase(it);
  return true;
}

}  // namespace detail

class EditScript;

/// An FEN game: labelled undirected graph with degree bound d and linear
/// utility parameters. Immutable after construction; adjacency is stored
/// redundantly at both endpoints, friends and enemies separately, each
/// sorted ascending.
class FenGame {
 public:
  FenGame(int n, int degree_bound, UtilityParams params, const std::vector<Edge>& edges)
      : n_(n), d_(degree_bound), params_(params), friends_(n + 1), enemies_(n + 1) {
    if (n_ < 1) throw ValidationError("game needs at least one player");
    if (d_ < 1) throw ValidationError("degree bound must be >= 1");
    params_.validate();
    for (const Edge& ed : edges) add_edge_checked(ed.u, ed.v, ed.label);
    for (Player v = 1; v <= n_; ++v) {
      std::sort(friends_[v].begin(), friends_[v].end());
      std::sort(enemies_[v].begin(), enemies_[v].end());
    }
  }

  int n() const { return n_; }
  int degree_bound() const { return d_; }
  const UtilityParams& params() const { return params_; }

  std::span<const Player> friends(Player v) const { return at(friends_, v); }
  std::span<const Player> enemies(Player v) const { return at(enemies_, v); }
  int degree(Player v) const {
    return static_cast<int>(friends(v).size() + enemies(v).size());
  }

  bool is_friend(Player u, Player v) const { return detail::sorted_contains(friends(u), v); }
  bool is_enemy(Player u, Player v) const { return detail::sorted_contains(enemies(u), v); }

  /// The k-th (1-based) entry of v's adjacency, friends first then enemies,
  /// each ascending. This fixed order is what the neighbor oracle exposes.
  std::optional<std::pair<Player, EdgeLabel>> neighbor_at(Player v, int k) const {
    auto fs = friends(v);
    auto es = enemies(v);
    if (k < 1) throw PreconditionError("neighbor index must be >= 1");
    if (k <= static_cast<int>(fs.size())) return std::pair{fs[k - 1], EdgeLabel::Friend};
    k -= static_cast<int>(fs.size());
    if (k <= static_cast<int>(es.size())) return std::pair{es[k - 1], EdgeLabel::Enemy};
    return std::nullopt;
  }

  /// All edges with u < v, sorted by (u, v).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Player u = 1; u <= n_; ++u) {
      for (Player v : friends(u))
        if (u < v) out.push_back({u, v, EdgeLabel::Friend});
      for (Player v : enemies(u))
        if (u < v) out.push_back({u, v, EdgeLabel::Enemy});
    }
    std::sort(out.begin(), out.end(),
              [](const Edge& a, const Edge& b) { return std::pair{a.u, a.v} < std::pair{b.u, b.v}; });
    return out;
  }

  FenGame apply(const EditScript& script) const;

  bool operator==(const FenGame& other) const {
    return n_ == other.n_ && d_ == other.d_ && params_ == other.params_ &&
           friends_ == other.friends_ && enemies_ == other.enemies_;
  }

 private:
  friend class EditScript;

  std::span<const Player> at(const std::vector<std::vector<Player>>& adj, Player v) const {
    if (v < 1 || v > n_) throw PreconditionError("player id out of range: " + std::to_string(v));
    return adj[v];
  }

  void add_edge_checked(Player u, Player v, EdgeLabel label) {
    if (u < 1 || u > n_ || v < 1 || v > n_) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-edges are not allowed");
    if (is_friend(u, v) || is_enemy(u, v))
      throw ValidationError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (degree(u) >= d_ || degree(v) >= d_)
      throw ValidationError("degree bound exceeded at edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ")");
    auto& adj = label == EdgeLabel::Friend ? friends_ : enemies_;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  int n_;
  int d_;
  UtilityParams params_;
  std::vector<std::vector<Player>> friends_;
  std::vector<std::vector<Player>> enemies_;
};

// ---------------------------------------------------------------------------
// Linear utilities and preference comparisons
// ---------------------------------------------------------------------------

/// u_i(C) = f * |C ∩ friends(i)| - e * |C ∩ enemies(i)|.
/// C must be sorted ascending and contain i.
inline long long utility(const FenGame& g, Player i, std::span<const Player> coalition) {
  if (!detail::sorted_contains(coalition, i))
    throw PreconditionError("utility: player " + std::to_string(i) + " not in coalition");
  long long nf = 0, ne = 0;
  for (Player j : g.friends(i))
    if (detail::sorted_contains(coalition, j)) ++nf;
  for (Player j : g.enemies(i))
    if (detail::sorted_contains(coalition, j)) ++ne;
  return g.params().f * nf - g.params().e * ne;
}

inline bool weakly_prefers(const FenGame& g, Player i, std::span<const Player> c,
                           std::span<const Player> d) {
  return utility(g, i, c) >= utility(g, i, d);
}

inline bool prefers(const FenGame& g, Player i, std::span<const Player> c,
                    std::span<const Player> d) {
  return utility(g, i, c) > utility(g, i, d);
}

inline bool indifferent(const FenGame& g, Player i, std::span<const Player> c,
                        std::span<const Player> d) {
  return utility(g, i, c) == utility(g, i, d);
}

/// Maximum of utility(i, .) over coalitions of admissible size containing i:
/// f * min(c - 1, |friends(i)|) when c is bounded, else f * |friends(i)|.
inline long long max_utility(const FenGame& g, Player i, SizeBound c) {
  auto nf = static_cast<long long>(g.friends(i).size());
  long long usable = c.is_bounded() ? std::min(c.value() - 1, nf) : nf;
  return g.params().f * usable;
}

inline bool is_favourite(const FenGame& g, Player i, std::span<const Player> coalition,
                         SizeBound c) {
  if (!c.admits(static_cast<long long>(coalition.size())))
    throw PreconditionError("is_favourite: coalition exceeds size bound");
  return utility(g, i, coalition) == max_utility(g, i, c);
}

// ---------------------------------------------------------------------------
// Coalition structures
// ---------------------------------------------------------------------------

/// A partition of 1..n. Coalitions are sorted ascending internally and
/// ordered by smallest member; the position in that order is the key used
/// by the partition oracle. Immutable after construction.
class CoalitionStructure {
 public:
  CoalitionStructure(int n, std::vector<std::vector<Player>> coalitions, SizeBound bound)
      : n_(n), bound_(bound), coalitions_(std::move(coalitions)), key_of_(n + 1, -1) {
    if (n_ < 1) throw ValidationError("partition needs at least one player");
    for (auto& c : coalitions_) {
      if (c.empty()) throw ValidationError("empty coalition");
      if (!std::is_sorted(c.begin(), c.end(), std::less_equal<>{}))
        throw ValidationError("coalition members must be strictly ascending");
      if (!bound_.admits(static_cast<long long>(c.size())))
        throw ValidationError("coalition of size " + std::to_string(c.size()) +
                              " violates bound " + bound_.str());
    }
    std::sort(coalitions_.begin(), coalitions_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    int covered = 0;
    for (CoalitionKey k = 0; k < static_cast<CoalitionKey>(coalitions_.size()); ++k) {
      for (Player p : coalitions_[k]) {
        if (p < 1 || p > n_) throw ValidationError("player id out of range in partition");
        if (key_of_[p] != -1) throw ValidationError("player " + std::to_string(p) + " in two coalitions");
        key_of_[p] = k;
        ++covered;
      }
    }
    if (covered != n_) throw ValidationError("partition does not cover all players");
  }

  static CoalitionStructure singletons(int n, SizeBound bound = SizeBound::unbounded()) {
    std::vector<std::vector<Player>> cs(n);
    for (int i = 1; i <= n; ++i) cs[i - 1] = {i};
    return CoalitionStructure(n, std::move(cs), bound);
  }

  int n() const { return n_; }
  SizeBound bound() const { return bound_; }
  int coalition_count() const { return static_cast<int>(coalitions_.size()); }

  std::span<const Player> coalition(CoalitionKey k) const {
    if (k < 0 || k >= coalition_count()) throw PreconditionError("unknown coalition key");
    return coalitions_[k];
  }

  CoalitionKey key_of(Player p) const {
    if (p < 1 || p > n_) throw PreconditionError("player id out of range");
    return key_of_[p];
  }

  std::span<const Player> coalition_of(Player p) const { return coalition(key_of(p)); }

  const std::vector<std::vector<Player>>& coalitions() const { return coalitions_; }

  bool operator==(const CoalitionStructure& other) const {
    return n_ == other.n_ && coalitions_ == other.coalitions_;
  }

 private:
  int n_;
  SizeBound bound_;
  std::vector<std::vector<Player>> coalitions_;
  std::vector<CoalitionKey> key_of_;
};

// ---------------------------------------------------------------------------
// Edit scripts
// ---------------------------------------------------------------------------

enum class EditOp { InsertFriend, DeleteFriend, InsertEnemy, DeleteEnemy };

inline std::string edit_op_name(EditOp op) {
  switch (op) {
    case EditOp::InsertFriend: return "insert-friend";
    case EditOp::DeleteFriend: return "delete-friend";
    case EditOp::InsertEnemy: return "insert-enemy";
    case EditOp::DeleteEnemy: return "delete-enemy";
  }
  return "?";
}

inline std::optional<EditOp> edit_op_parse(const std::string& s) {
  if (s == "insert-friend") return EditOp::InsertFriend;
  if (s == "delete-friend") return EditOp::DeleteFriend;
  if (s == "insert-enemy") return EditOp::InsertEnemy;
  if (s == "delete-enemy") return EditOp::DeleteEnemy;
  return std::nullopt;
}

struct EditStep {
  EditOp op;
  Player u;
  Player v;
  bool operator==(const EditStep&) const = default;
};

/// Step rejected while applying a script; carries the offending index.
struct EditError : std::runtime_error {
  EditError(std::size_t index, const std::string& what)
      : std::runtime_error("edit step " + std::to_string(index) + ": " + what), step(index) {}
  std::size_t step;
};

/// A sequence of atomic edge modifications. Cost is the number of entries;
/// a friend<->enemy conversion therefore costs two.
class EditScript {
 public:
  EditScript() = default;
  explicit EditScript(std::vector<EditStep> steps) : steps_(std::move(steps)) {}

  void push(EditOp op, Player u, Player v) { steps_.push_back({op, u, v}); }
  void append(const EditScript& other) {
    steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
  }

  std::size_t cost() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const std::vector<EditStep>& steps() const { return steps_; }

  /// Reversed script with inverted operations; applying script then
  /// inverse() restores the original game.
  EditScript inverse() const {
    EditScript inv;
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
      EditOp op;
      switch (it->op) {
        case EditOp::InsertFriend: op = EditOp::DeleteFriend; break;
        case EditOp::DeleteFriend: op = EditOp::InsertFriend; break;
        case EditOp::InsertEnemy: op = EditOp::DeleteEnemy; break;
        case EditOp::DeleteEnemy: op = EditOp::InsertEnemy; break;
        default: throw PreconditionError("bad edit op");
      }
      inv.push(op, it->u, it->v);
    }
    return inv;
  }

  bool operator==(const EditScript&) const = default;

 private:
  std::vector<EditStep> steps_;
};

inline FenGame FenGame::apply(const EditScript& script) const {
  FenGame out = *this;
  std::size_t idx = 0;
  for (const EditStep& st : script.steps()) {
    Player u = st.u, v = st.v;
    if (u < 1 || u > n_ || v < 1 || v > n_ || u == v)
      throw EditError(idx, "bad endpoints (" + std::to_string(u) + "," + std::to_string(v) + ")");
    switch (st.op) {
      case EditOp::InsertFriend:
      case EditOp::InsertEnemy: {
        if (out.is_friend(u, v) || out.is_enemy(u, v)) throw EditError(idx, "edge already present");
        if (out.degree(u) >= d_ || out.degree(v) >= d_) throw EditError(idx, "degree bound overflow");
        auto& adj = st.op == EditOp::InsertFriend ? out.friends_ : out.enemies_;
        detail::insert_sorted(adj[u], v);
        detail::insert_sorted(adj[v], u);
        break;
      }
      case EditOp::DeleteFriend: {
        if (!detail::erase_sorted(out.friends_[u], v)) throw EditError(idx, "friend edge not present");
        detail::erase_sorted(out.friends_[v], u);
        break;
      }
      case EditOp::DeleteEnemy: {
        if (!detail::erase_sorted(out.enemies_[u], v)) throw EditError(idx, "enemy edge not present");
        detail::erase_sorted(out.enemies_[v], u);
        break;
      }
    }
    ++idx;
  }
  return out;
}

}  // namespace fenhg
