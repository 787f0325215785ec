// Acceptance suite: every numbered criterion at its stated tolerance, one
// test per criterion, each printing its pass/fail line.

#include <gtest/gtest.h>

#include <iostream>

#include "wavehdc/experiments/acceptance.hpp"

using namespace wavehdc::experiments;

namespace {

void check(const CriterionResult& r) {
  std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << " ("
            << r.name << "): " << r.detail << " [" << r.seconds << " s]"
            << std::endl;
  EXPECT_TRUE(r.pass) << "criterion " << r.id << ": " << r.detail;
}

const ExperimentReport& noise_report() {
  static const ExperimentReport rep = run_experiment("noise-sweep", "");
  return rep;
}

}  // namespace

TEST(Acceptance, C01_Isometry) { check(criterion_isometry()); }
TEST(Acceptance, C02_PowerSimilarityBridge) { check(criterion_bridge()); }
TEST(Acceptance, C03_DiscreteBinding) { check(criterion_discrete_binding()); }
TEST(Acceptance, C04_FdtdBinding) { check(criterion_fdtd_binding()); }
TEST(Acceptance, C05_PermutationEquivalence) { check(criterion_permutation()); }
TEST(Acceptance, C06_AwgnRobustness) { check(criterion_awgn(noise_report())); }
TEST(Acceptance, C07_BitFlipRobustness) { check(criterion_bit_flip(noise_report())); }
TEST(Acceptance, C08_JitterTolerance) { check(criterion_jitter()); }
TEST(Acceptance, C09_JitterAttenuationLaw) { check(criterion_attenuation_law()); }
TEST(Acceptance, C10_CcrArithmetic) { check(criterion_ccr_arithmetic()); }
TEST(Acceptance, C11_IsolationSurrogate) { check(criterion_isolation_surrogate()); }
TEST(Acceptance, C12_EngineHealth) { check(criterion_engine_health()); }
