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

#include <gtest/gtest.h>

#include <thread>

#include "fenhg/exact.hpp"
#include "fenhg/json_io.hpp"
#include "fenhg/testers.hpp"
#include "support.hpp"

namespace fenhg {
namespace {

using testing::game_a;
using testing::random_game;

TEST(SampleSize, FrozenValues) {
  EXPECT_EQ(sample_size(1.0), 2);        // ceil(ln 3)
  EXPECT_EQ(sample_size(1.0 / 3.0), 4);  // ceil(3 ln 3)
  EXPECT_EQ(sample_size(0.1), 11);       // ceil(10 ln 3)
  EXPECT_EQ(sample_size(0.5), 3);
  EXPECT_EQ(sample_size(0.25), 5);
  EXPECT_EQ(sample_size(0.125), 9);
  EXPECT_THROW(sample_size(0.0), PreconditionError);
  EXPECT_THROW(sample_size(-0.2), PreconditionError);
  EXPECT_THROW(sample_size(1.5), PreconditionError);
}

TesterVerdict run_verification(const FenGame& g, const CoalitionStructure& part,
                               const TesterConfig& cfg) {
  GraphOracle graph(g);
  PartitionOracle po(part);
  return verification_tester(graph, po, cfg);
}

TEST(VerificationTester, StableInstancesAlwaysAccept) {
  // Game A under {{1,2},{3}} satisfies every concept except perfection
  // (player 3 is missing a friend); the enemy-free friend path under the
  // grand coalition is perfect.
  FenGame a = game_a();
  CoalitionStructure two_one(3, {{1, 2}, {3}}, SizeBound::unbounded());
  FenGame path(3, 2, {1, 1}, {{1, 2, EdgeLabel::Friend}, {2, 3, EdgeLabel::Friend}});
  CoalitionStructure grand(3, {{1, 2, 3}}, SizeBound::unbounded());

  for (StabilityConcept concept_ : kAllConcepts) {
    bool use_path = concept_ == StabilityConcept::Perfect;
    const FenGame& g = use_path ? path : a;
    const CoalitionStructure& part = use_path ? grand : two_one;
    ASSERT_TRUE(exact_verify(g, part, concept_, SizeBound::unbounded()).stable);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      TesterVerdict v = run_verification(g, part, {0.3, concept_, SizeBound::unbounded(), seed});
      EXPECT_TRUE(v.accept) << concept_name(concept_) << " seed " << seed;
      EXPECT_TRUE(v.witnesses.empty());
      EXPECT_EQ(v.sample.size(), static_cast<std::size_t>(sample_size(0.3)));
    }
  }
}

TEST(VerificationTester, CoreSingletonsOnGameAReject) {
  // All three players witness against core stability here, so every trial
  // rejects on its first sample.
  FenGame a = game_a();
  CoalitionStructure singles = CoalitionStructure::singletons(3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    TesterVerdict v = run_verification(
        a, singles, {1.0 / 3.0, StabilityConcept::CoreStable, SizeBound::bounded(3), seed});
    EXPECT_FALSE(v.accept);
    ASSERT_EQ(v.witnesses.size(), 1u);
    EXPECT_EQ(v.sample.size(), 1u);  // early exit on the first witness
    EXPECT_TRUE(evidence_certifies(a, singles, v.witnesses[0], SizeBound::bounded(3)));
  }
}

TEST(VerificationTester, SinglePlayerGameIsAlwaysStable) {
  FenGame one(1, 1, {1, 1}, {});
  CoalitionStructure part = CoalitionStructure::singletons(1);
  for (StabilityConcept concept_ : kAllConcepts) {
    TesterVerdict v = run_verification(one, part, {0.5, concept_, SizeBound::unbounded(), 42});
    EXPECT_TRUE(v.accept);
  }
}

TEST(VerificationTester, DeterministicPerSeed) {
  Rng rng(20260740);
  FenGame g = random_game(rng, 40, 4);
  CoalitionStructure part = testing::random_partition_indep(rng, 40, SizeBound::bounded(3));
  for (StabilityConcept concept_ : kAllConcepts) {
    TesterConfig cfg{0.2, concept_, SizeBound::bounded(3), 987654321};
    TesterVerdict v1 = run_verification(g, part, cfg);
    TesterVerdict v2 = run_verification(g, part, cfg);
    EXPECT_EQ(v1.accept, v2.accept);
    EXPECT_EQ(v1.sample, v2.sample);
    EXPECT_EQ(v1.ledger, v2.ledger);
  }
}

TEST(VerificationTester, RejectionFrequencyAtTheWitnessDensityThreshold) {
  // Witness density exactly 0.1 with epsilon = 0.1: the rejection
  // probability is 1 - 0.9^11 ~ 0.686, safely above the 2/3 - 0.05 mark.
  const int n = 1000;
  std::vector<Edge> edges;
  std::vector<std::vector<Player>> coalitions;
  for (int t = 0; t < 50; ++t) {
    auto a = static_cast<Player>(2 * t + 1), b = static_cast<Player>(2 * t + 2);
    edges.push_back({a, b, EdgeLabel::Enemy});
    coalitions.push_back({a, b});
  }
  for (Player p = 101; p <= n; ++p) coalitions.push_back({p});
  FenGame g(n, 4, {1, 1}, edges);
  CoalitionStructure part(n, coalitions, SizeBound::unbounded());

  int rejections = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    TesterVerdict v = run_verification(
        g, part,
        {0.1, StabilityConcept::IndividuallyRational, SizeBound::unbounded(),
         7130000 + static_cast<std::uint64_t>(t)});
    if (!v.accept) ++rejections;
  }
  double freq = static_cast<double>(rejections) / trials;
  EXPECT_GE(freq, 0.6167);
  EXPECT_LE(freq, 0.80);  // nowhere near certainty at this density
}

TEST(VerificationTester, WitnessDensityAtLeastEpsilonImpliesTheBound) {
  // The analysis bound: density >= eps gives rejection prob >= 2/3. Checked
  // at a few densities with deterministic seeds.
  for (double density : {0.2, 0.4}) {
    const int n = 500;
    int pairs = static_cast<int>(density * n / 2);
    std::vector<Edge> edges;
    std::vector<std::vector<Player>> coalitions;
    for (int t = 0; t < pairs; ++t) {
      auto a = static_cast<Player>(2 * t + 1), b = static_cast<Player>(2 * t + 2);
      edges.push_back({a, b, EdgeLabel::Enemy});
      coalitions.push_back({a, b});
    }
    for (Player p = static_cast<Player>(2 * pairs + 1); p <= n; ++p) coalitions.push_back({p});
    FenGame g(n, 4, {1, 1}, edges);
    CoalitionStructure part(n, coalitions, SizeBound::unbounded());
    int rejections = 0;
    for (int t = 0; t < 300; ++t) {
      TesterVerdict v = run_verification(g, part,
                                         {density, StabilityConcept::IndividuallyRational,
                                          SizeBound::unbounded(), 9000 + static_cast<std::uint64_t>(t)});
      if (!v.accept) ++rejections;
    }
    EXPECT_GE(rejections / 300.0, 0.6167) << "density " << density;
  }
}

TesterVerdict run_existence(const FenGame& g, double epsilon, SizeBound c, std::uint64_t seed) {
  GraphOracle graph(g);
  return perfect_existence_tester(graph, epsilon, c, seed);
}

TEST(ExistenceTester, RejectsTheThreePlayerCounterexample) {
  FenGame a = game_a();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    TesterVerdict v = run_existence(a, 0.9, SizeBound::bounded(3), seed);
    EXPECT_FALSE(v.accept);
    ASSERT_EQ(v.witnesses.size(), 1u);
    EXPECT_EQ(v.witnesses[0].evidence.kind, Evidence::Kind::EnemyEdgeInComponent);
    EXPECT_EQ(v.witnesses[0].evidence.players, (std::vector<Player>{1, 3}));
  }
}

TEST(ExistenceTester, FriendFreeGamesAlwaysAccept) {
  FenGame g(6, 3, {1, 1},
            {{1, 2, EdgeLabel::Enemy}, {2, 3, EdgeLabel::Enemy}, {4, 5, EdgeLabel::Enemy}});
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    EXPECT_TRUE(run_existence(g, 0.5, SizeBound::bounded(1), seed).accept);
}

TEST(ExistenceTester, OversizedFriendPathRejects) {
  // A friend path on c+1 vertices: BFS from any path vertex sees c+1 > c.
  const long long c = 3;
  FenGame g(4, 2, {1, 1},
            {{1, 2, EdgeLabel::Friend}, {2, 3, EdgeLabel::Friend}, {3, 4, EdgeLabel::Friend}});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    TesterVerdict v = run_existence(g, 0.9, SizeBound::bounded(c), seed);
    EXPECT_FALSE(v.accept);
    EXPECT_EQ(v.witnesses[0].evidence.kind, Evidence::Kind::OversizedComponent);
    EXPECT_EQ(v.witnesses[0].evidence.players.size(), static_cast<std::size_t>(c + 1));
  }
}

TEST(ExistenceTester, AcceptsWhenComponentsFitAndAreEnemyFree) {
  // Friend pairs plus enemies across pairs: the perfect structure is the
  // pairs themselves.
  FenGame g(6, 3, {1, 1},
            {{1, 2, EdgeLabel::Friend},
             {3, 4, EdgeLabel::Friend},
             {5, 6, EdgeLabel::Friend},
             {2, 3, EdgeLabel::Enemy},
             {4, 5, EdgeLabel::Enemy}});
  ASSERT_TRUE(exact_perfect_exists(g, SizeBound::bounded(2)).exists);
  for (std::uint64_t seed = 0; seed < 500; ++seed)
    EXPECT_TRUE(run_existence(g, 0.3, SizeBound::bounded(2), seed).accept);
}

TEST(ExistenceTester, OneSidedOnRandomSatisfyingGames) {
  // Random games filtered for admitting a perfect structure are never
  // rejected, whatever the seed.
  Rng rng(20260743);
  int satisfying = 0;
  while (satisfying < 60) {
    int n = static_cast<int>(rng.uniform(2, 30));
    FenGame g = random_game(rng, n, 3);
    SizeBound c = SizeBound::bounded(static_cast<long long>(rng.uniform(1, 4)));
    if (!exact_perfect_exists(g, c).exists) continue;
    ++satisfying;
    for (std::uint64_t seed = 0; seed < 30; ++seed)
      EXPECT_TRUE(run_existence(g, 0.4, c, seed).accept);
  }
}

TEST(VerificationTester, OneSidedOnRandomNashStableStructures) {
  Rng rng(20260744);
  for (int t = 0; t < 40; ++t) {
    int n = static_cast<int>(rng.uniform(2, 30));
    FenGame g = random_game(rng, n, 4);
    CoalitionStructure part = find_nash_stable(g, SizeBound::bounded(3));
    ASSERT_TRUE(exact_verify(g, part, StabilityConcept::Nash, SizeBound::bounded(3)).stable);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      TesterVerdict v =
          run_verification(g, part, {0.25, StabilityConcept::Nash, SizeBound::bounded(3), seed});
      EXPECT_TRUE(v.accept);
    }
  }
}

TEST(ExistenceTester, RequiresBoundedC) {
  FenGame a = game_a();
  EXPECT_THROW(run_existence(a, 0.5, SizeBound::unbounded(), 1), ValidationError);
}

TEST(ExistenceTester, QueryCountPerSampleStaysUnderCD) {
  Rng rng(20260741);
  FenGame g = random_game(rng, 300, 5);
  const long long c = 4;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    TesterVerdict v = run_existence(g, 0.4, SizeBound::bounded(c), seed);
    long long per_sample_cap = c * 5;
    EXPECT_LE(v.ledger.total(),
              static_cast<long long>(v.sample.size()) * per_sample_cap + per_sample_cap);
    EXPECT_EQ(v.ledger.find, 0);  // the existence tester never touches a partition
  }
}

TEST(ExistenceTester, DeterministicPerSeed) {
  Rng rng(20260742);
  FenGame g = random_game(rng, 100, 4);
  TesterVerdict v1 = run_existence(g, 0.25, SizeBound::bounded(3), 5150);
  TesterVerdict v2 = run_existence(g, 0.25, SizeBound::bounded(3), 5150);
  EXPECT_EQ(v1.accept, v2.accept);
  EXPECT_EQ(v1.sample, v2.sample);
  EXPECT_EQ(v1.ledger, v2.ledger);
}

TEST(Testers, VerdictJsonCarriesTheDocumentedFields) {
  FenGame a = game_a();
  CoalitionStructure singles = CoalitionStructure::singletons(3);
  TesterVerdict v = run_verification(
      a, singles, {0.5, StabilityConcept::CoreStable, SizeBound::bounded(3), 11});
  ASSERT_FALSE(v.accept);
  nlohmann::json j = verdict_json(v, "verify", "core", 0.5, SizeBound::bounded(3));
  for (const char* key :
       {"decision", "sample", "witnesses", "queries", "seed", "epsilon", "concept", "c", "mode"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["decision"], "reject");
  EXPECT_EQ(j["concept"], "core");
  for (const char* key : {"neighbor", "find", "member", "total"})
    EXPECT_TRUE(j["queries"].contains(key)) << key;

  nlohmann::json w = j["witnesses"][0];
  for (const char* key : {"player", "concept", "verdict", "evidence", "queries"})
    EXPECT_TRUE(w.contains(key)) << key;
  EXPECT_EQ(w["verdict"], 1);
  EXPECT_EQ(w["evidence"]["kind"], "blocking-coalition");
}

TEST(Testers, ParallelRunsOverSharedInstanceMatchSerialRuns) {
  // The game and partition are shared read-only; each run owns its oracle
  // pair. Seeded runs must agree with their serial counterparts.
  Rng rng(20260745);
  FenGame g = random_game(rng, 200, 5);
  CoalitionStructure part = testing::random_partition_indep(rng, 200, SizeBound::bounded(3));

  const int kRuns = 200;
  std::vector<TesterVerdict> serial(kRuns);
  for (int t = 0; t < kRuns; ++t)
    serial[t] = run_verification(
        g, part, {0.2, StabilityConcept::CoreStable, SizeBound::bounded(3),
                  static_cast<std::uint64_t>(t)});

  std::vector<TesterVerdict> parallel(kRuns);
  auto worker = [&](int begin, int end) {
    for (int t = begin; t < end; ++t)
      parallel[t] = run_verification(
          g, part, {0.2, StabilityConcept::CoreStable, SizeBound::bounded(3),
                    static_cast<std::uint64_t>(t)});
  };
  std::thread a(worker, 0, kRuns / 2), b(worker, kRuns / 2, kRuns);
  a.join();
  b.join();

  for (int t = 0; t < kRuns; ++t) {
    EXPECT_EQ(parallel[t].accept, serial[t].accept);
    EXPECT_EQ(parallel[t].sample, serial[t].sample);
    EXPECT_EQ(parallel[t].ledger, serial[t].ledger);
  }
}

TEST(Testers, BudgetErrorsPropagate) {
  FenGame a = game_a();
  CoalitionStructure singles = CoalitionStructure::singletons(3);
  GraphOracle graph(a, 0);
  PartitionOracle po(singles);
  EXPECT_THROW(
      verification_tester(graph, po, {0.5, StabilityConcept::Nash, SizeBound::unbounded(), 1}),
      BudgetExhausted);
}

}  // namespace
}  // namespace fenhg
