#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdint>

#include "physinet/datagen.hpp"
#include "physinet/rng.hpp"

using physinet::Rng;

TEST(Rng, MatchesSplitMix64ReferenceStream) {
  // Published SplitMix64 outputs for seed 0.
  Rng rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

// Frozen golden values: any change here breaks every recorded experiment.
TEST(Rng, GoldenStreamSeed42) {
  constexpr std::array<std::uint64_t, 16> expected = {
      0xBDD732262FEB6E95ULL, 0x28EFE333B266F103ULL, 0x47526757130F9F52ULL, 0x581CE1FF0E4AE394ULL,
      0x09BC585A244823F2ULL, 0xDE4431FA3C80DB06ULL, 0x37E9671C45376D5DULL, 0xCCF635EE9E9E2FA4ULL,
      0x5705B8770B3D7DD5ULL, 0x9E54D738297F77AEULL, 0x3474724A775B19BFULL, 0x7E348A0E451650BEULL,
      0x836DED897F3E46E6ULL, 0x851F977347ED6DB7ULL, 0xAA47E31C02E78EDCULL, 0x341452C54D7C33F2ULL};
  Rng rng(42);
  for (auto word : expected) EXPECT_EQ(rng.next(), word);
}

TEST(Rng, GoldenCase1PairsSeed42) {
  constexpr std::array<std::array<double, 2>, 4> expected = {{{7.4156487877182329, 20.446426453310984},
                                                              {3.4419071652363753, 16.278848810468514},
                                                              {2.1840519371218434, 14.99619506209657},
                                                              {6.1848206635613483, 18.48693667068202}}};
  Rng rng(42);
  const auto batch = physinet::sample_case1({}, 4, rng);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(batch.inputs[i], expected[i][0]);
    // Targets pass through log/cos; allow for libm differences across platforms.
    EXPECT_NEAR(batch.targets[i], expected[i][1], 1e-12);
  }
}

TEST(Rng, UniformStaysInUnitInterval) {
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng rng(11);
  constexpr int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    ASSERT_TRUE(std::isfinite(z));
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.01);
}

TEST(Rng, BelowCoversRange) {
  Rng rng(5);
  std::array<int, 7> hits{};
  for (int i = 0; i < 7000; ++i) {
    const auto k = rng.below(7);
    ASSERT_LT(k, 7u);
    ++hits[k];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Rng, DerivedStreamsDiffer) {
  EXPECT_NE(Rng::derive(1, 0), Rng::derive(1, 1));
  EXPECT_NE(Rng::derive(1, 0), Rng::derive(2, 0));
  EXPECT_EQ(Rng::derive(9, 3), Rng::derive(9, 3));
}
