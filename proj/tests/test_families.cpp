#include <gtest/gtest.h>

#include <algorithm>

#include "qrious/dfact.hpp"
#include "qrious/families.hpp"
#include "qrious/shape.hpp"

using namespace qrious;

TEST(Partition, ValidationAndText) {
  const Partition l{3, 2, 1};
  EXPECT_EQ(l.size(), 6);
  EXPECT_EQ(l.length(), 3u);
  EXPECT_EQ(to_string(l), "(3,2,1)");
  EXPECT_EQ(parse_partition("(4, 3,1)"), Partition({4, 3, 1}));
  EXPECT_THROW(Partition({1, 2}), DomainViolation);
  EXPECT_THROW(Partition({2, 0}), DomainViolation);
  EXPECT_THROW(parse_partition("(a)"), ParseError);
}

TEST(Generators, SpecShapes) {
  EXPECT_EQ(b_pair(4, 1), FactorialPair({8, 1}, {4, 3, 2}));
  EXPECT_EQ(b_pair(3, 0), FactorialPair({6}, {3, 3}));
  EXPECT_EQ(qbinom_pair(2, 2), FactorialPair({4}, {2, 2}));
  EXPECT_EQ(c_pair(1, 1), FactorialPair({2, 2}, {2, 1, 1}));
  EXPECT_EQ(sound_pair(5, 1), FactorialPair({30, 1}, {15, 10, 6}));
  EXPECT_EQ(b_lambda_pair(Partition{1}, 4, 1), b_pair(4, 1));
  EXPECT_THROW(b_pair(2, 3), DomainViolation);
  EXPECT_THROW(sound_pair(4, 1), DomainViolation);
  EXPECT_THROW(b_lambda_pair(Partition{2, 1}, 2, 1), DomainViolation);
  EXPECT_THROW(g2_pair(0, 1), DomainViolation);
}

TEST(Generators, MacdonaldMorrisPairsAreBalancedAndIntegral) {
  for (Entry m = 1; m <= 4; ++m)
    for (Entry n = 1; n <= 4; ++n) {
      EXPECT_TRUE(check_landau(g2_pair(m, n)).holds);
      EXPECT_TRUE(check_landau(f4_pair(m, n)).holds);
    }
  EXPECT_EQ(weight_gap(g2_pair(2, 3)), 0);
  EXPECT_EQ(weight_gap(f4_pair(2, 3)), 0);
}

TEST(Generators, FamiliesPassLandauOnTheirDomains) {
  for (Entry m = 0; m <= 15; ++m)
    for (Entry n = 0; n <= 15; ++n) {
      EXPECT_TRUE(check_landau(qbinom_pair(m, n)).holds);
      EXPECT_TRUE(check_landau(c_pair(m, n)).holds);
      if (m >= n) { EXPECT_TRUE(check_landau(b_pair(m, n)).holds); }
      if (n >= 1 && m >= 5 * n) { EXPECT_TRUE(check_landau(sound_pair(m, n)).holds); }
    }
}

TEST(Instances, InstantiateAndDomain) {
  const auto inst = instantiate(Family::b, 4, 1);
  EXPECT_EQ(inst.pair, b_pair(4, 1));
  EXPECT_EQ(*inst.params.m, 4);
  EXPECT_TRUE(in_domain(Family::b, 4, 4));
  EXPECT_FALSE(in_domain(Family::b, 3, 4));
  EXPECT_FALSE(in_domain(Family::b_lambda, 5, 1));
  EXPECT_TRUE(in_domain(Family::b_lambda, 6, 2, Partition{2, 1}));
  EXPECT_THROW(instantiate(Family::c_lambda, 1, 1), DomainViolation);
  EXPECT_THROW(instantiate(Family::sporadic, 1, 1), DomainViolation);
  EXPECT_EQ(parse_family("sound"), Family::sound);
  EXPECT_THROW(parse_family("nope"), UnknownFamily);
}

TEST(Partitions, CountsMatchPartitionNumbers) {
  const std::size_t p[] = {0, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56};
  for (Entry s = 1; s <= 11; ++s) EXPECT_EQ(partitions_of(s).size(), p[s]);
}

TEST(Partitions, PublishedListPassesGrid) {
  for (const auto& l : published_admissible_partitions()) EXPECT_TRUE(admissible_up_to(l, 12)) << to_string(l);
  EXPECT_EQ(published_admissible_partitions().size(), 14u);
}

TEST(Partitions, GridRejectsSomething) {
  // C_(2)(1,2) already violates Landau
  EXPECT_FALSE(admissible_up_to(Partition{2}, 12));
  const auto small = enumerate_admissible_partitions(4, 6);
  EXPECT_TRUE(std::find(small.begin(), small.end(), Partition{1}) != small.end());
  EXPECT_TRUE(std::find(small.begin(), small.end(), Partition{2}) == small.end());
}

TEST(Registry, DefaultsAndSample) {
  const auto def = load_sporadic_registry_text("[]");
  ASSERT_EQ(def.size(), 1u);
  EXPECT_EQ(def[0].params.label, "chebyshev");
  const auto reg = load_sporadic_registry_file(QRIOUS_SAMPLE_REGISTRY);
  EXPECT_EQ(reg.size(), 4u);
  EXPECT_EQ(reg[3].pair, FactorialPair({20, 3}, {10, 7, 6}));
  for (const auto& inst : reg) EXPECT_TRUE(check_positive(build(inst.pair)).holds);
}

TEST(Registry, Errors) {
  EXPECT_THROW(load_sporadic_registry_text("{"), SchemaError);
  EXPECT_THROW(load_sporadic_registry_text("{}"), SchemaError);
  EXPECT_THROW(load_sporadic_registry_text(R"([{"label":"x","a":[2],"b":[1,1]}])"), SchemaError);
  EXPECT_THROW(load_sporadic_registry_text(R"([{"id":1,"a":[2]}])"), SchemaError);
  EXPECT_THROW(load_sporadic_registry_text(R"([{"id":1,"a":[2],"b":[0,2]}])"), SchemaError);
  EXPECT_THROW(load_sporadic_registry_text(R"([{"id":1,"pair":"2//1"}])"), SchemaError);
  EXPECT_THROW(load_sporadic_registry_text(R"([{"id":1,"a":[1,1],"b":[2]}])"), LandauRejection);
  EXPECT_NO_THROW(load_sporadic_registry_text(R"([{"id":1,"a":[4],"b":[2,2]}])"));
  // multinomial of height two
  EXPECT_THROW(load_sporadic_registry_text(R"([{"id":1,"a":[6],"b":[2,2,2]}])"), LandauRejection);
  // chebyshev supplied explicitly is not duplicated
  EXPECT_EQ(load_sporadic_registry_text(R"([{"id":7,"pair":"30,1/15,10,6"}])").size(), 1u);
}
