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

// Query oracles. Testers and witness predicates see the game and the
// partition only through these interfaces; every query is counted, and an
// optional budget turns overuse into a hard error. The model parameters
// n, d, f, e are public knowledge and not charged as queries.

#include <cstdint>
#include <optional>
#include <utility>

#include "fenhg/game.hpp"

namespace fenhg {

/// Raised when a query would exceed the oracle's budget.
struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(const char* which)
      : std::runtime_error(std::string("oracle budget exhausted: ") + which) {}
};

/// Per-query-type counts. total() is always the sum of the parts.
struct QueryLedger {
  long long neighbor = 0;
  long long find = 0;
  long long member = 0;

  long long total() const { return neighbor + find + member; }

  QueryLedger operator-(const QueryLedger& rhs) const {
    return {neighbor - rhs.neighbor, find - rhs.find, member - rhs.member};
  }
  QueryLedger& operator+=(const QueryLedger& rhs) {
    neighbor += rhs.neighbor;
    find += rhs.find;
    member += rhs.member;
    return *this;
  }
  bool operator==(const QueryLedger&) const = default;
};

/// Adjacency-list access to a game, one labelled neighbor per query.
class GraphOracle {
 public:
  explicit GraphOracle(const FenGame& game,
                       std::optional<long long> budget = std::nullopt)
      : game_(&game), budget_(budget) {}

  int n() const { return game_->n(); }
  int degree_bound() const { return game_->degree_bound(); }
  const UtilityParams& params() const { return game_->params(); }

  /// The k-th neighbor (1-based) of v with its label, friends first then
  /// enemies, each ascending; nullopt past the end.
  std::optional<std::pair<Player, EdgeLabel>> neighbor(Player v, int k) {
    charge();
    return game_->neighbor_at(v, k);
  }

  long long neighbor_count() const { return count_; }

 private:
  void charge() {
    if (budget_ && count_ >= *budget_) throw BudgetExhausted("neighbor");
    ++count_;
  }

  const FenGame* game_;
  long long count_ = 0;
  std::optional<long long> budget_;
};

/// Find/member access to a coalition structure. The budget, when set,
/// limits find and member queries jointly.
class PartitionOracle {
 public:
  explicit PartitionOracle(const CoalitionStructure& part,
                           std::optional<long long> budget = std::nullopt)
      : part_(&part), budget_(budget) {}

  int n() const { return part_->n(); }

  /// Key of the coalition containing v; equal keys iff same coalition.
  CoalitionKey find(Player v) {
    charge(find_count_, "find");
    return part_->key_of(v);
  }

  /// i-th smallest member (1-based) of the coalition with key k, or
  /// nullopt when i exceeds the coalition size.
  std::optional<Player> member(CoalitionKey k, int i) {
    charge(member_count_, "member");
    auto c = part_->coalition(k);  // unknown key -> PreconditionError
    if (i < 1) throw PreconditionError("member index must be >= 1");
    if (i > static_cast<int>(c.size())) return std::nullopt;
    return c[i - 1];
  }

  long long find_count() const { return find_count_; }
  long long member_count() const { return member_count_; }

 private:
  void charge(long long& counter, const char* which) {
    if (budget_ && find_count_ + member_count_ >= *budget_) throw BudgetExhausted(which);
    ++counter;
  }

  const CoalitionStructure* part_;
  long long find_count_ = 0;
  long long member_count_ = 0;
  std::optional<long long> budget_;
};

inline QueryLedger snapshot_ledger(const GraphOracle& g, const PartitionOracle& p) {
  return {g.neighbor_count(), p.find_count(), p.member_count()};
}

inline QueryLedger snapshot_ledger(const GraphOracle& g) {
  return {g.neighbor_count(), 0, 0};
}

}  // namespace fenhg
