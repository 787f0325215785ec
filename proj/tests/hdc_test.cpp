#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "wavehdc/hdc.hpp"

using namespace wavehdc;

namespace {

Hypervector hv(std::initializer_list<int> vals) {
  std::vector<std::int8_t> c;
  for (int v : vals) c.push_back(static_cast<std::int8_t>(v));
  return Hypervector(std::move(c));
}

// All 16 bipolar vectors of dimension 4.
std::vector<Hypervector> all_n4() {
  std::vector<Hypervector> out;
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<std::int8_t> c(4);
    for (int i = 0; i < 4; ++i) c[i] = (bits >> i) & 1 ? 1 : -1;
    out.push_back(Hypervector(std::move(c)));
  }
  return out;
}

}  // namespace

TEST(RandomHypervector, DeterministicPerSeed) {
  EXPECT_EQ(random_hypervector(7, 4), random_hypervector(7, 4));
  EXPECT_NE(random_hypervector(7, 64), random_hypervector(8, 64));
}

TEST(RandomHypervector, RejectsTinyDimension) {
  EXPECT_THROW(random_hypervector(1, 1), InvalidArgument);
}

TEST(RandomHypervector, ComponentMeanNearZero) {
  const auto x = random_hypervector(123, 100000);
  double mean = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) mean += x[i];
  mean /= static_cast<double>(x.dim());
  EXPECT_LT(std::abs(mean), 0.02);
}

TEST(RandomHypervector, PairsQuasiOrthogonal) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto a = random_hypervector(2 * s, 1000);
    const auto b = random_hypervector(2 * s + 1, 1000);
    EXPECT_LE(std::abs(cosine_similarity(a, b)), 0.12) << "seed pair " << s;
  }
}

TEST(Bundle, SingleItemIdentity) {
  const auto x = random_hypervector(5, 128);
  std::vector<Hypervector> in{x};
  EXPECT_EQ(bundle_binarized(in), x);
}

TEST(Bundle, OppositePairTiesToPlusOne) {
  const auto x = random_hypervector(5, 128);
  auto neg = x;
  for (std::size_t i = 0; i < neg.dim(); ++i) neg[i] = -neg[i];
  std::vector<Hypervector> in{x, neg};
  EXPECT_EQ(bundle_binarized(in), Hypervector::filled(128, 1));
}

TEST(Bundle, MajorityVoteSimilarity) {
  // Expectation of cos(majority(a,b,c), a) is exactly 2*(3/4) - 1 = 0.5.
  double acc = 0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    const auto a = random_hypervector(100 + 3 * t, 1024);
    const auto b = random_hypervector(101 + 3 * t, 1024);
    const auto c = random_hypervector(102 + 3 * t, 1024);
    std::vector<Hypervector> in{a, b, c};
    acc += cosine_similarity(bundle_binarized(in), a);
  }
  EXPECT_NEAR(acc / trials, 0.5, 0.05);
}

TEST(Bundle, ErrorsOnBadInput) {
  std::vector<Hypervector> empty;
  EXPECT_THROW(bundle(empty), InvalidArgument);
  std::vector<Hypervector> mixed{random_hypervector(1, 8), random_hypervector(2, 16)};
  EXPECT_THROW(bundle(mixed), DimensionMismatch);
}

TEST(Bundle, UnbinarizedIsExactlyLinear) {
  const auto x = random_hypervector(11, 64);
  const auto y = random_hypervector(12, 64);
  const auto w = random_hypervector(13, 64);
  std::vector<Hypervector> xy{x, y}, ww{w}, xyw{x, y, w};
  const auto a = bundle(xy), b = bundle(ww), c = bundle(xyw);
  for (std::size_t i = 0; i < 64; ++i)
    EXPECT_EQ(a[i] + b[i], c[i]);
}

TEST(Bind, SelfInverseGivesAllOnes) {
  const auto x = random_hypervector(3, 256);
  EXPECT_EQ(bind(x, x), Hypervector::filled(256, 1));
}

TEST(Bind, HandComputedProduct) {
  const auto x = hv({+1, -1, +1, +1});
  const auto y = hv({-1, -1, +1, -1});
  EXPECT_EQ(bind(x, y), hv({-1, +1, +1, -1}));
}

TEST(Bind, CompositeQuasiOrthogonalToFactors) {
  const auto x = random_hypervector(21, 1000);
  const auto y = random_hypervector(22, 1000);
  const auto z = bind(x, y);
  EXPECT_LE(std::abs(cosine_similarity(z, x)), 0.12);
  EXPECT_LE(std::abs(cosine_similarity(z, y)), 0.12);
}

TEST(Bind, DimensionMismatchRejected) {
  EXPECT_THROW(bind(random_hypervector(1, 8), random_hypervector(1, 16)),
               DimensionMismatch);
}

TEST(Bind, CommutativeAssociativeExhaustiveN4) {
  const auto all = all_n4();
  for (const auto& x : all)
    for (const auto& y : all) {
      EXPECT_EQ(bind(x, y), bind(y, x));
      for (const auto& z : all)
        EXPECT_EQ(bind(bind(x, y), z), bind(x, bind(y, z)));
    }
}

TEST(Bind, CommutativeAssociativeRandomizedN1024) {
  for (int t = 0; t < 20; ++t) {
    const auto x = random_hypervector(300 + 3 * t, 1024);
    const auto y = random_hypervector(301 + 3 * t, 1024);
    const auto z = random_hypervector(302 + 3 * t, 1024);
    EXPECT_EQ(bind(x, y), bind(y, x));
    EXPECT_EQ(bind(bind(x, y), z), bind(x, bind(y, z)));
  }
}

TEST(Bind, UnbindingIdentityExact) {
  for (int t = 0; t < 20; ++t) {
    const auto x = random_hypervector(400 + 2 * t, 512);
    const auto y = random_hypervector(401 + 2 * t, 512);
    EXPECT_EQ(bind(bind(x, y), y), x);
  }
}

TEST(Permute, ZeroShiftIdentity) {
  const auto x = random_hypervector(1, 64);
  EXPECT_EQ(permute(x, 0), x);
}

TEST(Permute, InverseShiftRestores) {
  const auto x = random_hypervector(2, 100);
  for (std::int64_t k : {1, 7, 50, 99, -13}) {
    EXPECT_EQ(permute(permute(x, k), 100 - ((k % 100) + 100) % 100), x);
    EXPECT_EQ(permute(permute(x, k), -k), x);
  }
}

TEST(Permute, ShiftedVectorQuasiOrthogonal) {
  const auto x = random_hypervector(42, 1024);
  EXPECT_LE(std::abs(cosine_similarity(x, permute(x, 50))), 0.1);
}

TEST(Permute, PreservesMultisetAndNorm) {
  const auto x = random_hypervector(9, 257);
  const auto p = permute(x, 31);
  std::int64_t sum_x = 0, sum_p = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    sum_x += x[i];
    sum_p += p[i];
  }
  EXPECT_EQ(sum_x, sum_p);  // same +/-1 counts
  EXPECT_DOUBLE_EQ(dot(x, x), dot(p, p));
}

TEST(Permute, IndexConventionMatchesDefinition) {
  // out[n] = x[(n - k) mod N]
  const auto x = hv({+1, -1, -1, +1});
  const auto p = permute(x, 1);
  EXPECT_EQ(p[1], x[0]);
  EXPECT_EQ(p[2], x[1]);
  EXPECT_EQ(p[0], x[3]);
}

TEST(Cosine, SelfAndNegation) {
  const auto x = random_hypervector(77, 100);
  EXPECT_DOUBLE_EQ(cosine_similarity(x, x), 1.0);
  auto neg = x;
  for (std::size_t i = 0; i < neg.dim(); ++i) neg[i] = -neg[i];
  EXPECT_DOUBLE_EQ(cosine_similarity(x, neg), -1.0);
}

TEST(Cosine, MatchesCountOracleN8) {
  const auto a = random_hypervector(8, 8);
  const auto b = random_hypervector(9, 8);
  int matches = 0;
  for (std::size_t i = 0; i < 8; ++i)
    if (a[i] == b[i]) ++matches;
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), (matches - (8 - matches)) / 8.0);
}

TEST(Cosine, ZeroNormRejected) {
  DenseVector z;
  z.components.assign(8, 0.0);
  DenseVector v;
  v.components.assign(8, 1.0);
  EXPECT_THROW(cosine_similarity(z, v), InvalidArgument);
}

TEST(SignAccuracy, Extremes) {
  const auto x = random_hypervector(5, 200);
  EXPECT_DOUBLE_EQ(sign_accuracy(x, x), 100.0);
  auto neg = x;
  for (std::size_t i = 0; i < neg.dim(); ++i) neg[i] = -neg[i];
  EXPECT_DOUBLE_EQ(sign_accuracy(x, neg), 0.0);
}

TEST(SignAccuracy, EqualsAffineCosineForBipolar) {
  for (int t = 0; t < 10; ++t) {
    const auto a = random_hypervector(600 + 2 * t, 16);
    const auto b = random_hypervector(601 + 2 * t, 16);
    EXPECT_NEAR(sign_accuracy(a, b), 50.0 * (1.0 + cosine_similarity(a, b)), 1e-12);
  }
}

TEST(BitFlip, EndpointsExact) {
  const auto x = random_hypervector(10, 250);
  EXPECT_EQ(bit_flip(x, 0.0, 99), x);
  auto neg = x;
  for (std::size_t i = 0; i < neg.dim(); ++i) neg[i] = -neg[i];
  EXPECT_EQ(bit_flip(x, 1.0, 99), neg);
}

TEST(BitFlip, ExactCountRule) {
  const auto x = random_hypervector(10, 1000);
  const auto y = bit_flip(x, 0.1, 7);
  int flipped = 0;
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (x[i] != y[i]) ++flipped;
  EXPECT_EQ(flipped, 100);
  EXPECT_DOUBLE_EQ(cosine_similarity(x, y), 0.8);
}

TEST(BitFlip, RangeChecked) {
  const auto x = random_hypervector(10, 16);
  EXPECT_THROW(bit_flip(x, -0.1, 0), InvalidArgument);
  EXPECT_THROW(bit_flip(x, 1.1, 0), InvalidArgument);
}

TEST(BitFlip, DeterministicPerSeed) {
  const auto x = random_hypervector(10, 512);
  EXPECT_EQ(bit_flip(x, 0.25, 5), bit_flip(x, 0.25, 5));
  EXPECT_NE(bit_flip(x, 0.25, 5), bit_flip(x, 0.25, 6));
}
