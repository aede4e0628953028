#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cpcert/convexity.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

using namespace cpcert;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Matrix random_unit(int dim, double p, std::uint64_t key) {
  StreamRng rng(key);
  Matrix a = ginibre(dim, rng);
  return a / schatten_norm(a, p);
}

std::vector<double> log_spaced_scales(double lo, double hi, int n) {
  std::vector<double> grid;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    grid.push_back(lo * std::pow(hi / lo, t));
  }
  return grid;
}

}  // namespace

TEST_CASE("certificate_status_follows_the_gap_thresholds") {
  CHECK(make_certificate("probe", 1.0, 2.0, 1e-9).status == CertStatus::Holds);
  CHECK(make_certificate("probe", 1.0, 1.0 - 5e-10, 1e-9).status ==
        CertStatus::Holds);
  CHECK(make_certificate("probe", 1.0, 1.0 - 5e-9, 1e-9).status ==
        CertStatus::ViolatedWithinTolerance);
  CHECK(make_certificate("probe", 1.0, 1.0 - 5e-8, 1e-9).status ==
        CertStatus::Violated);
  InequalityCertificate cert = make_certificate("probe", 0.25, 1.0, 1e-9);
  CHECK(cert.gap == 0.75);
  CHECK(cert.lhs == 0.25);
  CHECK(cert.rhs == 1.0);
}

TEST_CASE("certificate_handles_joint_infinities_as_saturation") {
  InequalityCertificate cert = make_certificate("probe", kInf, kInf, 1e-9);
  CHECK(cert.gap == 0.0);
  CHECK(cert.status == CertStatus::Holds);
  // an infinite upper bound over a finite lhs is an infinite gap
  InequalityCertificate loose = make_certificate("probe", 1.0, kInf, 1e-9);
  CHECK(std::isinf(loose.gap));
  CHECK(loose.status == CertStatus::Holds);
}

TEST_CASE("certificate_status_strings_are_stable") {
  CHECK(std::string(to_string(CertStatus::Holds)) == "holds");
  CHECK(std::string(to_string(CertStatus::ViolatedWithinTolerance)) ==
        "violated_within_tolerance");
  CHECK(std::string(to_string(CertStatus::Violated)) == "violated");
}

TEST_CASE("certificate_tolerance_widens_past_dimension_ten") {
  CHECK(certificate_tolerance(2) == 1e-9);
  CHECK(certificate_tolerance(10) == 1e-9);
  CHECK(std::abs(certificate_tolerance(20) - 2e-9) < 1e-24);
  CHECK(std::abs(certificate_tolerance(20, 1e-6) - 2e-6) < 1e-21);
}

TEST_CASE("with_tolerance_restamps_the_status_from_the_stored_gap") {
  InequalityCertificate cert = make_certificate("probe", 1.0, 1.0 - 5e-9, 1e-9);
  CHECK(cert.status == CertStatus::ViolatedWithinTolerance);
  CHECK(with_tolerance(cert, 1e-8).status == CertStatus::Holds);
  CHECK(with_tolerance(cert, 1e-10).status == CertStatus::Violated);
}

TEST_CASE("phase_align_matches_hand_computed_angles") {
  Matrix a = diag2(1.0, 0.0);
  CHECK(phase_align(a, diag2(0.0, 1.0)) == 0.0);  // vanishing trace
  CHECK(phase_align(a, diag2(2.0, 0.0)) == 0.0);  // already positive
  CHECK(std::abs(phase_align(a, diag2(-1.0, 0.0)) - M_PI) < 1e-15);
  Matrix ib = Matrix::Zero(2, 2);
  ib(0, 0) = Complex(0.0, 1.0);
  CHECK(std::abs(phase_align(a, ib) - 1.5 * M_PI) < 1e-15);
  // the aligned trace is real and non-negative
  StreamRng rng(711);
  Matrix x = ginibre(3, rng), y = ginibre(3, rng);
  const double theta = phase_align(x, y);
  const Complex aligned = std::polar(1.0, theta) * trace_inner(x, y);
  CHECK(std::abs(aligned.imag()) < 1e-12);
  CHECK(aligned.real() >= 0.0);
}

TEST_CASE("uniform_convexity_gap_matches_the_two_point_worked_example") {
  Matrix x = diag2(1.0, 0.0), y = diag2(0.0, 1.0);
  InequalityCertificate two = uniform_convexity_gap(x, y, 2.0);
  CHECK(std::abs(two.lhs - std::sqrt(0.5)) < 1e-14);
  CHECK(std::abs(two.rhs - 0.75) < 1e-14);
  CHECK(std::abs(two.gap - (0.75 - std::sqrt(0.5))) < 1e-12);
  CHECK(two.status == CertStatus::Holds);

  InequalityCertificate three = uniform_convexity_gap(x, y, 3.0);
  CHECK(std::abs(three.lhs - std::pow(0.25, 1.0 / 3.0)) < 1e-14);
  CHECK(std::abs(three.rhs - 11.0 / 12.0) < 1e-14);
  CHECK(three.gap > 0.0);
}

TEST_CASE("uniform_convexity_gap_vanishes_on_equal_inputs") {
  Matrix x = random_unit(3, 1.5, 721);
  InequalityCertificate cert = uniform_convexity_gap(x, x, 1.5);
  CHECK(std::abs(cert.lhs - 1.0) < 1e-12);
  CHECK(std::abs(cert.rhs - 1.0) < 1e-12);
  CHECK(std::abs(cert.gap) < 1e-12);
}

TEST_CASE("uniform_convexity_gap_holds_on_random_unit_pairs") {
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 4;
    for (double p : {1.1, 1.5, 2.0, 3.0, 6.0}) {
      Matrix x = random_unit(dim, p, stream_key(731, trial, 0));
      Matrix y = random_unit(dim, p, stream_key(731, trial, 1));
      InequalityCertificate cert = uniform_convexity_gap(x, y, p);
      CHECK(cert.status == CertStatus::Holds);
      CHECK(cert.rhs <= 1.0);
    }
  }
}

TEST_CASE("uniform_convexity_gap_validates_its_inputs") {
  Matrix x = diag2(1.0, 0.0), y = diag2(0.0, 1.0);
  CHECK_THROWS_AS(uniform_convexity_gap(x, y, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_convexity_gap(x, y, kInf), std::invalid_argument);
  CHECK_THROWS_AS(uniform_convexity_gap(diag2(2.0, 0.0), y, 2.0),
                  std::invalid_argument);
}

TEST_CASE("holder_remainders_match_the_orthogonal_support_example") {
  Matrix a = diag2(1.0, 0.0), b = diag2(0.0, 1.0);
  InequalityCertificate one = holder_remainder_1(a, b, 2.0);
  CHECK(one.lhs == 0.0);
  CHECK(std::abs(one.rhs - 0.5) < 1e-12);
  CHECK(std::abs(one.gap - 0.5) < 1e-12);
  InequalityCertificate two = holder_remainder_2(a, b, 2.0);
  CHECK(two.lhs == 0.0);
  CHECK(std::abs(two.rhs - 0.5) < 1e-12);
  CHECK(std::abs(two.gap - 0.5) < 1e-12);
}

TEST_CASE("holder_remainder_constants_coincide_at_p_two") {
  // (p-1)/4 and 1/(p' 2^{p'-1}) both equal 1/4 when p = p' = 2
  const double c1 = (2.0 - 1.0) / 4.0;
  const double q = conjugate_exponent(2.0);
  const double c2 = 1.0 / (q * std::pow(2.0, q - 1.0));
  CHECK(std::abs(c1 - c2) <= 1e-14);
  CHECK(c1 == 0.25);
}

TEST_CASE("holder_remainders_vanish_at_the_saturation_configuration") {
  for (double p : {1.1, 1.5, 2.0}) {
    const double q = conjugate_exponent(p);
    for (int trial = 0; trial < 10; ++trial) {
      Matrix b = random_unit(3, q, stream_key(741, trial, 0));
      StreamRng phase_rng(stream_key(741, trial, 1));
      const double theta = 2.0 * M_PI * phase_rng.uniform01();
      Matrix a = std::polar(1.0, -theta) * duality_map(b, q).matrix;
      InequalityCertificate one = holder_remainder_1(a, b, p);
      InequalityCertificate two = holder_remainder_2(a, b, p);
      CHECK(std::abs(one.gap) <= 1e-9);
      CHECK(std::abs(two.gap) <= 1e-9);
      CHECK(std::abs(one.lhs - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("holder_remainders_hold_on_random_unit_pairs") {
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 4;
    for (double p : {1.1, 1.25, 1.5, 1.75, 2.0}) {
      const double q = conjugate_exponent(p);
      Matrix a = random_unit(dim, p, stream_key(751, trial, 0));
      Matrix b = random_unit(dim, q, stream_key(751, trial, 1));
      InequalityCertificate one = holder_remainder_1(a, b, p);
      InequalityCertificate two = holder_remainder_2(a, b, p);
      CHECK(one.status == CertStatus::Holds);
      CHECK(two.status == CertStatus::Holds);
      CHECK(one.rhs <= 1.0);
      CHECK(two.rhs <= 1.0);
      CHECK(std::abs(one.lhs - two.lhs) < 1e-14);
    }
  }
}

TEST_CASE("aligned_sum_dominates_one_plus_the_pairing") {
  // 1 + |Tr[AB]| <= || D_p'(B) + e^{i theta} A ||_p on unit spheres
  for (int trial = 0; trial < 20; ++trial) {
    const double p = 1.0 + 0.1 + 0.09 * (trial % 10);
    const double q = conjugate_exponent(p);
    Matrix a = random_unit(3, p, stream_key(761, trial, 0));
    Matrix b = random_unit(3, q, stream_key(761, trial, 1));
    const double theta = phase_align(a, b);
    Matrix sum = duality_map(b, q).matrix + std::polar(1.0, theta) * a;
    const double lhs = 1.0 + std::abs(trace_inner(a, b));
    CHECK(lhs <= schatten_norm(sum, p) + 1e-9);
  }
}

TEST_CASE("holder_remainders_validate_their_inputs") {
  Matrix a = diag2(1.0, 0.0), b = diag2(0.0, 1.0);
  CHECK_THROWS_AS(holder_remainder_1(a, b, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(holder_remainder_1(a, b, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(holder_remainder_2(a, b, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(holder_remainder_1(diag2(2.0, 0.0), b, 1.5),
                  std::invalid_argument);
}

TEST_CASE("sharpness_scan_recovers_the_quadratic_remainder_exponent") {
  SlopeFit fit = sharpness_scan(2.0, SharpnessFamily::QuadraticRemainder,
                                log_spaced_scales(1e-4, 1e-1, 13));
  CHECK(std::abs(fit.exponent - 2.0) < 1e-3);
  CHECK(fit.exponent > 1.9);
  CHECK(fit.exponent < 2.1);
}

TEST_CASE("sharpness_scan_recovers_the_conjugate_power_exponent") {
  SlopeFit fit = sharpness_scan(1.5, SharpnessFamily::ConjugatePowerRemainder,
                                log_spaced_scales(1e-4, 1e-1, 13));
  // the conjugate exponent of 1.5 is 3
  CHECK(std::abs(fit.exponent - 3.0) < 0.01);
  CHECK(fit.exponent > 2.85);
  CHECK(fit.exponent < 3.15);
}

TEST_CASE("sharpness_scan_rejects_degenerate_grids") {
  CHECK_THROWS_AS(sharpness_scan(2.0, SharpnessFamily::QuadraticRemainder,
                                 {0.01, 0.01}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sharpness_scan(2.0, SharpnessFamily::QuadraticRemainder,
                                 {0.01}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sharpness_scan(2.0, SharpnessFamily::QuadraticRemainder,
                                 {0.01, -0.02}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sharpness_scan(2.5, SharpnessFamily::QuadraticRemainder,
                                 {0.01, 0.02}),
                  std::invalid_argument);
}
