#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bmv/accum.hpp"
#include "bmv/errors.hpp"
#include "bmv/instance_gen.hpp"
#include "bmv/laplace.hpp"
#include "bmv/trace.hpp"
#include "bmv/verify.hpp"
#include "test_helpers.hpp"

using namespace bmv;
using namespace bmv::core;
using namespace bmv::laplace;
using namespace bmv::measure;
using namespace bmv::test;

TEST_CASE("laplace_of_measure on a purely atomic measure") {
  const HermitianPair p = validate_pair(diag({1, 2}), diag({3, 4}));
  const BmvMeasure m = build_commuting(p);
  CHECK(laplace_of_measure(m, 1.0) == doctest::Approx(2.0 * std::exp(-2.0)));
  CHECK(laplace_of_measure(m, 0.0) ==
        doctest::Approx(std::exp(1.0) + std::exp(2.0)));
}

TEST_CASE("laplace of the worked-pencil measure matches the trace") {
  const HermitianPair p = worked_pencil();
  const BmvMeasure m = build_measure(p);
  for (double t : {0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double f = trace_exp_real(p, t);
    CHECK(std::abs(laplace_of_measure(m, t) - f) < 1e-6 * f);
    CHECK(f == doctest::Approx(worked_trace(t)).epsilon(1e-12));
  }
}

TEST_CASE("bromwich_oracle vanishes for a commuting distinct pair") {
  const HermitianPair p = validate_pair(diag({0.4, -0.3}), diag({1, 2}));
  for (double s : {1.2, 1.5, 1.8})
    CHECK(std::abs(bromwich_oracle(p, s)) < 1e-8);
}

TEST_CASE("bromwich_oracle matches the closed form and omega_at") {
  const HermitianPair p = worked_pencil();
  const auto cp = spectral::build_contour_table(p);
  for (double s : {1.25, 1.5, 1.75}) {
    const double oracle = bromwich_oracle(p, s);
    CHECK(std::abs(oracle - worked_omega(s)) < 1e-7);
    const double omega = omega_at(p, s, cp.contour, cp.table).value;
    CHECK(std::abs(omega - oracle) < 1e-4);
  }
}

TEST_CASE("bromwich_oracle refinement consistency near an atom") {
  const HermitianPair p = worked_pencil();
  OracleConfig coarse;
  OracleConfig fine;
  fine.m = 96;
  const double s = 1.0 + 0.01;
  const double v1 = bromwich_oracle(p, s, coarse);
  const double v2 = bromwich_oracle(p, s, fine);
  CHECK(std::abs(v1 - v2) < 1e-5 * (1.0 + std::abs(v2)));
  CHECK(v2 == doctest::Approx(worked_omega(s)).epsilon(1e-5));
}

TEST_CASE("proof identities on a commuting diagonal pair") {
  const HermitianPair p = validate_pair(diag({0.2, -0.4}), diag({1, 2}));
  const auto cp = spectral::build_contour_table(p, 1.5, 256, 4.0);
  const ProofIdentityResult r = proof_identity_check(p, 1.0, cp.contour, cp.table);
  CHECK(r.diamond <= 1e-10);
  for (double star : r.star) CHECK(star <= 1e-10);
}

TEST_CASE("proof identities on the worked pencil at R = 5") {
  const HermitianPair p = worked_pencil();
  const auto cp = spectral::build_contour_table(p, 1.5, 256, 5.0);
  for (double t : {0.7, 1.0, 1.3}) {
    const ProofIdentityResult r =
        proof_identity_check(p, t, cp.contour, cp.table);
    CHECK(r.diamond <= 1e-8);
    for (double star : r.star) CHECK(star <= 1e-6);
  }
}

TEST_CASE("n-th star summand equals the n-th diamond summand") {
  // b_j = b_n at j = n makes the two integrands coincide.
  const HermitianPair p = worked_pencil();
  const auto cp = spectral::build_contour_table(p, 1.5, 256, 5.0);
  const double t = 0.9;
  const int n = p.n();
  KahanComplex star_n, diamond_n;
  for (int k = 0; k < cp.contour.nodes; ++k) {
    const cx z = cp.contour.z[k];
    const cx kernel = std::exp(p.b().back() * (z - t)) / (z - t) * z /
                      double(cp.contour.nodes);
    diamond_n.add(std::exp(cp.table.values[k][n - 1]) * kernel);
    star_n.add(std::exp(cp.table.values[k][n - 1]) * kernel);
  }
  CHECK(std::abs(star_n.value() - diamond_n.value()) == 0.0);
}

TEST_CASE("proof identity guards the pole location") {
  const HermitianPair p = worked_pencil();
  const auto cp = spectral::build_contour_table(p, 1.5, 256, 5.0);
  CHECK_THROWS_AS(proof_identity_check(p, 4.8, cp.contour, cp.table),
                  PoleTooCloseToContour);
  CHECK_THROWS_AS(proof_identity_check(p, 7.0, cp.contour, cp.table),
                  PoleTooCloseToContour);
}

TEST_CASE("verify passes on a commuting pair") {
  const HermitianPair p = validate_pair(diag({1, 2}), diag({3, 4}));
  const BmvMeasure m = build_measure(p);
  const VerificationReport rep = verify(p, m);
  CHECK(rep.pass);
  CHECK(rep.checks.laplace);
  CHECK(rep.checks.mass);
  CHECK(rep.checks.monotone);
  CHECK(rep.oracle_gaps.empty());
}

TEST_CASE("verify passes on the worked pencil") {
  const HermitianPair p = worked_pencil();
  const BmvMeasure m = build_measure(p);
  const VerificationReport rep = verify(p, m);
  CHECK(rep.pass);
  CHECK(rep.checks.support);
  CHECK(rep.checks.oracle);
  CHECK(rep.checks.proof);
  CHECK(rep.checks.monodromy);
  CHECK(rep.support_leakage <= 1e-6);
  CHECK(rep.min_density >= -1e-6 * (1.0 + rep.max_density));
}

TEST_CASE("verify flags an injected negative density sample") {
  const HermitianPair p = worked_pencil();
  BmvMeasure m = build_measure(p);
  m.density[10].value = -std::abs(m.density[10].value) - 0.05;
  const VerificationReport rep = verify(p, m);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.checks.positivity);
  CHECK(rep.min_density < -1e-6);
}

TEST_CASE("default probe points are interior and deterministic") {
  const HermitianPair p = worked_pencil();
  const auto probes = default_probe_points(p);
  REQUIRE(probes.size() == 5);
  for (double s : probes) {
    CHECK(s > 1.0);
    CHECK(s < 2.0);
  }
  CHECK(probes == default_probe_points(p));
  CHECK(std::is_sorted(probes.begin(), probes.end()));
}

TEST_CASE("monotone decrease of the Laplace transform") {
  GenSpec spec;
  spec.n = 3;
  spec.seed = 23;
  spec.a_scale = 0.4;
  const Instance inst = gen_instance(spec);
  const HermitianPair p = validate_pair(inst.a, inst.b);
  const BmvMeasure m = build_measure(p);
  double prev = laplace_of_measure(m, 0.0);
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    const double cur = laplace_of_measure(m, t);
    CHECK(cur < prev);
    prev = cur;
  }
}
