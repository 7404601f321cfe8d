#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bmv/charpoly.hpp"
#include "bmv/errors.hpp"
#include "bmv/gauss.hpp"
#include "bmv/instance_gen.hpp"
#include "bmv/roots.hpp"
#include "bmv/trace.hpp"
#include "test_helpers.hpp"

using namespace bmv;
using namespace bmv::core;
using namespace bmv::test;

namespace {

std::vector<cx> sorted_roots(std::vector<cx> r) {
  std::sort(r.begin(), r.end(), [](cx a, cx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

} // namespace

TEST_CASE("validate_pair accepts the identity pair") {
  const HermitianPair p = validate_pair(CMat::identity(2), CMat::identity(2));
  CHECK(p.n() == 2);
  CHECK(p.b()[0] == doctest::Approx(1.0));
  CHECK(p.b()[1] == doctest::Approx(1.0));
  CHECK(p.a_diag()[0] == doctest::Approx(1.0));
  CHECK(p.a_diag()[1] == doctest::Approx(1.0));
  CHECK(p.flags().commuting);
  CHECK_FALSE(p.flags().distinct_b);
}

TEST_CASE("validate_pair rejects indefinite B") {
  CHECK_THROWS_AS(validate_pair(mat2(0, 1, 1, 0), diag({1, -1})),
                  NotPositiveSemidefinite);
  try {
    validate_pair(mat2(0, 1, 1, 0), diag({1, -1}));
  } catch (const NotPositiveSemidefinite& e) {
    CHECK(e.min_eigenvalue == doctest::Approx(-1.0));
  }
}

TEST_CASE("validate_pair rejects a non-Hermitian A") {
  const cx i(0, 1);
  CHECK_THROWS_AS(validate_pair(mat2(0, i, i, 0), CMat::identity(2)),
                  NotHermitian);
}

TEST_CASE("validate_pair rejects mismatched dimensions") {
  CHECK_THROWS_AS(validate_pair(CMat::identity(2), CMat::identity(3)),
                  DimensionMismatch);
}

TEST_CASE("validate_pair sorts b ascending and permutes A along") {
  // B = diag(2, 1) has to come out as b = (1, 2) with A's diagonal swapped.
  const HermitianPair p = validate_pair(diag({5, 7}), diag({2, 1}));
  CHECK(p.b()[0] == doctest::Approx(1.0));
  CHECK(p.b()[1] == doctest::Approx(2.0));
  CHECK(p.a_diag()[0] == doctest::Approx(7.0));
  CHECK(p.a_diag()[1] == doctest::Approx(5.0));
}

TEST_CASE("char_poly_at matches the diagonal determinant") {
  const HermitianPair p = validate_pair(diag({1, 2}), diag({3, 4}));
  const PolyCoeffs c = char_poly_at(p, cx(0.0));
  REQUIRE(c.degree() == 2);
  CHECK(c.c[0] == cx(2.0));
  CHECK(c.c[1] == cx(-3.0));
  CHECK(c.c[2] == cx(1.0));
}

TEST_CASE("char_poly_at of the worked pencil is lambda^2 + 3z lambda + 2z^2 - 1") {
  const HermitianPair p = worked_pencil();
  for (cx z : {cx(0.3, 0.0), cx(-1.2, 0.7), cx(0.0, 2.0)}) {
    const PolyCoeffs c = char_poly_at(p, z);
    CHECK(std::abs(c.c[1] - 3.0 * z) < 1e-13 * (1.0 + std::abs(z)));
    CHECK(std::abs(c.c[0] - (2.0 * z * z - 1.0)) < 1e-13 * (1.0 + std::norm(z)));
  }
}

TEST_CASE("char_poly_at real argument gives real coefficients") {
  DetRng rng(11);
  GenSpec spec;
  spec.n = 4;
  spec.seed = 11;
  const Instance inst = gen_instance(spec);
  const HermitianPair p = validate_pair(inst.a, inst.b);
  const PolyCoeffs c = char_poly_at(p, cx(0.7, 0.0));
  for (const cx& coeff : c.c) CHECK(coeff.imag() == 0.0);
}

TEST_CASE("char_poly conjugate symmetry in z") {
  GenSpec spec;
  spec.n = 3;
  spec.seed = 5;
  const Instance inst = gen_instance(spec);
  const HermitianPair p = validate_pair(inst.a, inst.b);
  const cx z(0.4, 1.3);
  const PolyCoeffs c = char_poly_at(p, z);
  const PolyCoeffs cc = char_poly_at(p, std::conj(z));
  for (int k = 0; k <= c.degree(); ++k)
    CHECK(std::abs(cc.c[k] - std::conj(c.c[k])) < 1e-12 * (1.0 + std::abs(c.c[k])));
}

TEST_CASE("poly_roots on factored quadratics and cubics") {
  PolyCoeffs quad;
  quad.c = {cx(2.0), cx(-3.0), cx(1.0)}; // (x-1)(x-2)
  auto r = sorted_roots(poly_roots(quad));
  CHECK(std::abs(r[0] - cx(1.0)) < 1e-12);
  CHECK(std::abs(r[1] - cx(2.0)) < 1e-12);

  PolyCoeffs cubic;
  cubic.c = {cx(-6.0), cx(11.0), cx(-6.0), cx(1.0)}; // (x-1)(x-2)(x-3)
  r = sorted_roots(poly_roots(cubic));
  CHECK(std::abs(r[0] - cx(1.0)) < 1e-11);
  CHECK(std::abs(r[1] - cx(2.0)) < 1e-11);
  CHECK(std::abs(r[2] - cx(3.0)) < 1e-11);
}

TEST_CASE("poly_roots handles the branch-point double root") {
  // Worked pencil at z = 2i: lambda^2 + 6i lambda - 9 = (lambda + 3i)^2.
  const HermitianPair p = worked_pencil();
  const auto roots = poly_roots(char_poly_at(p, cx(0.0, 2.0)));
  REQUIRE(roots.size() == 2);
  for (const cx& r : roots) CHECK(std::abs(r - cx(0.0, -3.0)) < 5e-5);
}

TEST_CASE("poly_roots residual contract on random characteristic polynomials") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    GenSpec spec;
    spec.n = 2 + static_cast<int>(seed % 3);
    spec.seed = seed;
    const Instance inst = gen_instance(spec);
    const HermitianPair p = validate_pair(inst.a, inst.b);
    DetRng rng(seed + 100);
    for (int k = 0; k < 8; ++k) {
      const cx z(rng.uniform(-5, 5), rng.uniform(-5, 5));
      const PolyCoeffs c = char_poly_at(p, z);
      for (const cx& root : poly_roots(c))
        CHECK(std::abs(poly_eval(c, root)) <=
              1e-10 * std::pow(1.0 + std::abs(root), c.degree()));
    }
  }
}

TEST_CASE("trace_exp on the commuting diagonal pair") {
  const HermitianPair p = validate_pair(diag({1, 2}), diag({3, 4}));
  CHECK(trace_exp_real(p, 1.0) == doctest::Approx(2.0 * std::exp(-2.0)));
}

TEST_CASE("trace_exp of the zero pair is n") {
  const HermitianPair p = validate_pair(CMat(3), CMat(3));
  CHECK(trace_exp(p, cx(1.7, 0.0)).real() == doctest::Approx(3.0));
  // At complex z the root-sum path meets a triple root; accuracy there is
  // limited by the root finder's multiple-root behavior.
  CHECK(std::abs(trace_exp(p, cx(0.9, -2.0)) - cx(3.0)) < 1e-3);
}

TEST_CASE("trace_exp matches the truncated series oracle") {
  for (std::uint64_t seed : {7, 8, 9}) {
    GenSpec spec;
    spec.n = 2 + static_cast<int>(seed % 2);
    spec.seed = seed;
    const Instance inst = gen_instance(spec);
    const HermitianPair p = validate_pair(inst.a, inst.b);
    for (cx z : {cx(0.7, 0.0), cx(0.2, 0.9), cx(-0.5, -0.3)}) {
      const cx lhs = trace_exp(p, z);
      const cx rhs = trace_exp_series(inst.a, inst.b, z);
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("trace_exp conjugate symmetry and positivity") {
  GenSpec spec;
  spec.n = 4;
  spec.seed = 21;
  const Instance inst = gen_instance(spec);
  const HermitianPair p = validate_pair(inst.a, inst.b);
  const cx z(0.8, 1.1);
  CHECK(std::abs(trace_exp(p, std::conj(z)) - std::conj(trace_exp(p, z))) <
        1e-11);
  for (double t : {0.0, 0.5, 2.0, 7.5}) CHECK(trace_exp_real(p, t) > 0.0);
}

TEST_CASE("trace_exp is invariant under a change of basis") {
  GenSpec spec;
  spec.n = 3;
  spec.seed = 33;
  const Instance inst = gen_instance(spec);
  // Unitary from an unrelated Hermitian eigenproblem.
  GenSpec other = spec;
  other.seed = 77;
  const CMat q =
      jacobi_hermitian(gen_instance(other).a, 1e-14).vectors;
  const CMat a2 = q * inst.a * q.dagger();
  const CMat b2 = q * inst.b * q.dagger();
  const HermitianPair p1 = validate_pair(inst.a, inst.b);
  const HermitianPair p2 = validate_pair(cx(0.5) * (a2 + a2.dagger()),
                                         cx(0.5) * (b2 + b2.dagger()));
  for (double t : {0.3, 1.0, 4.0}) {
    const double f1 = trace_exp_real(p1, t);
    const double f2 = trace_exp_real(p2, t);
    CHECK(std::abs(f1 - f2) < 1e-12 * f1);
  }
}

TEST_CASE("jacobi_hermitian reconstructs and stays unitary") {
  GenSpec spec;
  spec.n = 5;
  spec.seed = 42;
  spec.diag_b = false;
  const Instance inst = gen_instance(spec);
  const JacobiResult e = jacobi_hermitian(inst.b, 1e-13 * inst.b.frob_norm());

  CMat d(inst.b.n());
  for (int i = 0; i < d.n(); ++i) d(i, i) = e.eigenvalues[i];
  const CMat recon = e.vectors * d * e.vectors.dagger();
  CHECK((recon - inst.b).max_abs() < 1e-12 * (1.0 + inst.b.max_abs()));
  const CMat gram = e.vectors.dagger() * e.vectors;
  CHECK((gram - CMat::identity(d.n())).max_abs() < 1e-13);
  CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
}

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  const GaussRule rule = gauss_legendre(8);
  for (int power = 0; power <= 15; ++power) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * std::pow(rule.nodes[i], power);
    const double exact = (power % 2 == 0) ? 2.0 / (power + 1) : 0.0;
    CHECK(std::abs(acc - exact) < 1e-13);
  }
}
