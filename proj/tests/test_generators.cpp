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

#include "fenhg/exact.hpp"
#include "fenhg/generators.hpp"
#include "fenhg/testers.hpp"

namespace fenhg {
namespace {

InstanceSpec spec_of(Family family, int n, int d, SizeBound c, std::uint64_t seed = 1) {
  InstanceSpec s;
  s.family = family;
  s.n = n;
  s.d = d;
  s.c = c;
  s.seed = seed;
  return s;
}

TEST(RandomFamily, ValidAndDeterministic) {
  InstanceSpec s = spec_of(Family::RandomBoundedDegree, 60, 4, SizeBound::unbounded(), 11);
  GeneratedInstance a = generate(s);
  GeneratedInstance b = generate(s);
  EXPECT_EQ(a.game, b.game);
  EXPECT_FALSE(a.partition.has_value());
  bool has_friend = false, has_enemy = false;
  for (const Edge& e : a.game.edges()) {
    has_friend = has_friend || e.label == EdgeLabel::Friend;
    has_enemy = has_enemy || e.label == EdgeLabel::Enemy;
  }
  EXPECT_TRUE(has_friend);
  EXPECT_TRUE(has_enemy);

  s.seed = 12;
  EXPECT_FALSE(generate(s).game == a.game);

  s.edge_target = 10;
  EXPECT_LE(generate(s).game.edges().size(), 10u);
}

TEST(RandomFamily, PresetsSetUtilityParams) {
  InstanceSpec s = spec_of(Family::RandomBoundedDegree, 10, 5, SizeBound::unbounded());
  s.preset = "friends-appreciation";
  EXPECT_EQ(generate(s).game.params(), (UtilityParams{5, 1}));
  s.preset = "enemies-aversion";
  EXPECT_EQ(generate(s).game.params(), (UtilityParams{1, 5}));
  s.preset = "bogus";
  EXPECT_THROW(generate(s), ValidationError);
}

TEST(ClusterFamily, CertificateReplaysOnAllSixConcepts) {
  GeneratedInstance inst =
      generate(spec_of(Family::FriendClustersPerfect, 30, 6, SizeBound::bounded(3)));
  ASSERT_TRUE(inst.partition.has_value());
  EXPECT_TRUE(inst.certificate.stable_all_concepts);
  for (StabilityConcept concept_ : kAllConcepts)
    EXPECT_TRUE(exact_verify(inst.game, *inst.partition, concept_, SizeBound::bounded(3)).stable)
        << concept_name(concept_);
  EXPECT_TRUE(exact_perfect_exists(inst.game, SizeBound::bounded(3)).exists);

  // every full-cluster vertex carries 2 friends and 4 enemies: degree = d
  EXPECT_EQ(inst.game.degree(1), 6);
  EXPECT_EQ(inst.game.friends(1).size(), 2u);
}

TEST(ClusterFamily, WorksAtTinySizesAndTightBounds) {
  for (int n : {1, 2, 3, 5, 8})
    for (long long c : {1LL, 2LL, 3LL}) {
      GeneratedInstance inst =
          generate(spec_of(Family::FriendClustersPerfect, n, 3, SizeBound::bounded(c)));
      for (StabilityConcept concept_ : kAllConcepts)
        EXPECT_TRUE(exact_verify(inst.game, *inst.partition, concept_, SizeBound::bounded(c)).stable)
            << "n=" << n << " c=" << c << " " << concept_name(concept_);
    }
}

TEST(EnemyPairsFamily, WitnessCountAndDistance) {
  GeneratedInstance inst = generate(spec_of(Family::EnemyPairsFar, 10, 3, SizeBound::bounded(2)));
  ASSERT_TRUE(inst.certificate.far_concept.has_value());
  EXPECT_EQ(*inst.certificate.far_concept, StabilityConcept::IndividuallyRational);
  EXPECT_EQ(inst.certificate.witness_count, 10);
  EXPECT_EQ(inst.certificate.distance_lower, 5);

  StabilityCertificate cert = exact_verify(inst.game, *inst.partition,
                                           StabilityConcept::IndividuallyRational, SizeBound::bounded(2));
  EXPECT_FALSE(cert.stable);
  EXPECT_EQ(static_cast<long long>(cert.witnesses.size()), inst.certificate.witness_count);

  FarDistanceBound far = certified_far_distance(inst.game, *inst.partition,
                                                StabilityConcept::IndividuallyRational,
                                                SizeBound::bounded(2));
  EXPECT_EQ(far.method, "enemy-pairs");
  EXPECT_EQ(far.lower, inst.certificate.distance_lower);
  EXPECT_EQ(far.upper, far.lower);  // one deletion per pair fixes both members
}

TEST(EnemyPairsFamily, FarThresholdMatchesTheCountingArgument) {
  // n=1000, d=4: distance 500, threshold 500/4000; epsilon=0.1 is below it.
  GeneratedInstance inst = generate(spec_of(Family::EnemyPairsFar, 1000, 4, SizeBound::bounded(2)));
  EXPECT_EQ(inst.certificate.distance_lower, 500);
  EXPECT_DOUBLE_EQ(inst.certificate.epsilon_far_threshold, 0.125);
  EXPECT_LT(0.1, inst.certificate.epsilon_far_threshold);

  // spot-check locality: both members of random pairs are IR witnesses
  Rng rng(5);
  GraphOracle graph(inst.game);
  PartitionOracle po(*inst.partition);
  for (int t = 0; t < 100; ++t) {
    auto pair_index = rng.uniform(0, 499);
    auto a = static_cast<Player>(2 * pair_index + 1);
    EXPECT_TRUE(phi(StabilityConcept::IndividuallyRational, graph, po, a, SizeBound::bounded(2),
                    inst.game.params())
                    .witness);
  }
  EXPECT_EQ(inst.certificate.witness_count, 1000);

  InstanceSpec bad = spec_of(Family::EnemyPairsFar, 10, 3, SizeBound::bounded(1));
  EXPECT_THROW(generate(bad), ValidationError);  // pairs cannot fit c = 1
}

TEST(PathFamily, NoPerfectStructureAndTiling) {
  GeneratedInstance one = generate(spec_of(Family::FriendPathOversized, 4, 2, SizeBound::bounded(3)));
  EXPECT_FALSE(exact_perfect_exists(one.game, SizeBound::bounded(3)).exists);
  EXPECT_FALSE(one.partition.has_value());
  EXPECT_EQ(one.certificate.distance_lower, 1);

  GeneratedInstance tiled =
      generate(spec_of(Family::FriendPathOversized, 13, 2, SizeBound::bounded(2)));
  EXPECT_EQ(tiled.certificate.distance_lower, 4);  // floor(13/3) disjoint paths
  EXPECT_EQ(tiled.certificate.witness_count, 12);
  EXPECT_FALSE(exact_perfect_exists(tiled.game, SizeBound::bounded(2)).exists);
  EXPECT_EQ(tiled.game.degree(13), 0);  // remainder vertex stays isolated

  EXPECT_THROW(generate(spec_of(Family::FriendPathOversized, 4, 2, SizeBound::unbounded())),
               ValidationError);
  EXPECT_THROW(generate(spec_of(Family::FriendPathOversized, 2, 2, SizeBound::bounded(3))),
               ValidationError);
  EXPECT_THROW(generate(spec_of(Family::FriendPathOversized, 4, 1, SizeBound::bounded(3))),
               ValidationError);  // paths need d >= 2
  EXPECT_THROW(generate(spec_of(Family::PlantedCoreBlocker, 10, 2, SizeBound::bounded(1))),
               ValidationError);  // pair blocks need c >= 2
}

TEST(PathFamily, DeletingOneEdgePerPathRestoresExistence) {
  GeneratedInstance tiled =
      generate(spec_of(Family::FriendPathOversized, 8, 2, SizeBound::bounded(3)));
  ASSERT_EQ(tiled.certificate.distance_lower, 2);
  EditScript fix;
  fix.push(EditOp::DeleteFriend, 2, 3);  // split first path 1-2-3-4
  fix.push(EditOp::DeleteFriend, 6, 7);  // split second path 5-6-7-8
  EXPECT_TRUE(exact_perfect_exists(tiled.game.apply(fix), SizeBound::bounded(3)).exists);
}

TEST(CoreBlockerFamily, EveryCliqueVertexIsAWitness) {
  GeneratedInstance inst = generate(spec_of(Family::PlantedCoreBlocker, 20, 2, SizeBound::bounded(3)));
  ASSERT_TRUE(inst.partition.has_value());
  EXPECT_EQ(inst.partition->coalition_count(), 20);  // singletons
  StabilityCertificate cert =
      exact_verify(inst.game, *inst.partition, StabilityConcept::CoreStable, SizeBound::bounded(3));
  EXPECT_FALSE(cert.stable);
  EXPECT_EQ(static_cast<long long>(cert.witnesses.size()), inst.certificate.witness_count);
  EXPECT_EQ(inst.certificate.witness_count, 20);

  // n=7 leaves a remainder singleton that cannot take part in any block
  GeneratedInstance rem = generate(spec_of(Family::PlantedCoreBlocker, 7, 2, SizeBound::bounded(3)));
  EXPECT_EQ(rem.certificate.witness_count, 6);
  StabilityCertificate c2 =
      exact_verify(rem.game, *rem.partition, StabilityConcept::CoreStable, SizeBound::bounded(3));
  EXPECT_EQ(c2.witnesses.size(), 6u);
  for (const auto& w : c2.witnesses) EXPECT_NE(w.player, 7);
}

TEST(RandomPartition, DeterministicAndBounded) {
  CoalitionStructure p1 = random_partition(50, SizeBound::bounded(3), 99);
  CoalitionStructure p2 = random_partition(50, SizeBound::bounded(3), 99);
  EXPECT_EQ(p1, p2);
  for (const auto& coal : p1.coalitions()) EXPECT_LE(coal.size(), 3u);

  CoalitionStructure singles = random_partition(6, SizeBound::bounded(1), 7);
  EXPECT_EQ(singles, CoalitionStructure::singletons(6, SizeBound::bounded(1)));

  EXPECT_FALSE(random_partition(50, SizeBound::bounded(3), 100) == p1);
}

TEST(Generators, FamilyNamesRoundTrip) {
  for (Family f : {Family::RandomBoundedDegree, Family::FriendClustersPerfect,
                   Family::EnemyPairsFar, Family::FriendPathOversized, Family::PlantedCoreBlocker})
    EXPECT_EQ(family_parse(family_name(f)), f);
  EXPECT_FALSE(family_parse("nope").has_value());
}

}  // namespace
}  // namespace fenhg
