#include <doctest.h>

#include <cmath>

#include "voa/norms.hpp"
#include "voa/smearing.hpp"

using namespace voa;

TEST_CASE("arc predicates are exact, including wraparound") {
  const Arc a(Rational(0), Rational(1, 2));
  const Arc b(Rational(1), Rational(3, 2));
  const Arc wrap(Rational(3, 2), Rational(1, 2));  // through angle 0
  CHECK(a.disjoint(b));
  CHECK(b.disjoint(a));
  CHECK_FALSE(a.disjoint(a));
  CHECK_FALSE(wrap.disjoint(a));  // they share (0, 1/2)
  CHECK(wrap.disjoint(Arc(Rational(1, 2), Rational(1))));
  // touching open arcs are disjoint
  CHECK(a.disjoint(Arc(Rational(1, 2), Rational(1))));

  const Arc big(Rational(0), Rational(1));
  CHECK(big.contains(a));
  CHECK_FALSE(a.contains(big));
  CHECK(big.contains(big));
  CHECK(wrap.contains(Arc(Rational(7, 4), Rational(1, 4))));

  CHECK(a.contains_point(Rational(1, 4)));
  CHECK_FALSE(a.contains_point(Rational(0)));     // open at the start
  CHECK_FALSE(a.contains_point(Rational(1, 2)));  // open at the end
  CHECK(wrap.contains_point(Rational(0)));

  CHECK_THROWS_AS(Arc(Rational(1, 3), Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(Arc(Rational(0), Rational(2)), std::invalid_argument);
}

TEST_CASE("fourier coefficients: constants, Euler identity, exactness") {
  const FourierTable one = fourier_coefficients(TestFunction::constant(Scalar(1)), 4);
  CHECK(one.exact);
  CHECK(one.exact_coefficients.at(0) == Scalar(1));
  CHECK(one.exact_coefficients.size() == 1);

  // 2 cos(theta) = e^{i theta} + e^{-i theta}
  const TestFunction cosf = TestFunction::trig_poly({{1, Scalar(1)}, {-1, Scalar(1)}});
  const FourierTable tc = fourier_coefficients(cosf, 4);
  CHECK(tc.exact_coefficients.at(1) == Scalar(1));
  CHECK(tc.exact_coefficients.at(-1) == Scalar(1));
  CHECK(tc.exact_coefficients.size() == 2);
  CHECK(cosf.eval(0.0) == doctest::Approx(2.0));
  CHECK(cosf.eval(M_PI) == doctest::Approx(-2.0));
}

TEST_CASE("bump functions: support, positivity, super-polynomial Fourier decay") {
  const Arc arc(Rational(0), Rational(1, 2));
  const TestFunction f = TestFunction::bump(arc, 1024);
  CHECK(f.eval(0.4) > 0.0);
  CHECK(f.eval(-0.1) == 0.0);
  CHECK(f.eval(M_PI) == 0.0);  // outside the arc

  // individual coefficients oscillate under a decaying envelope, so the
  // dyadic ratio test runs on band maxima around n = 8, 16, 32, 64
  const FourierTable t = fourier_coefficients(f, 66);
  auto band = [&](long n) {
    double best = 0.0;
    for (long k = n - 1; k <= n + 1; ++k) best = std::max(best, std::abs(t.value(k)));
    return best;
  };
  const double b8 = band(8), b16 = band(16), b32 = band(32), b64 = band(64);
  CHECK(b16 < b8);
  CHECK(b32 < b16);
  CHECK(b64 < b32);
  // the effective decay power grows from octave to octave (faster than any
  // fixed power across the tested range)
  const double p1 = std::log2(b8 / b16);
  const double p2 = std::log2(b16 / b32);
  const double p3 = std::log2(b32 / b64);
  CHECK(p1 > 2.0);
  CHECK(p2 > p1);
  CHECK(p3 > p2);

  CHECK_THROWS_AS(fourier_coefficients(TestFunction::bump(arc, 64), 32),
                  std::invalid_argument);
  CHECK_THROWS_AS(TestFunction::bump(arc, 100), std::invalid_argument);
}

TEST_CASE("smear: single-mode functions reproduce shifted modes exactly") {
  const Model h = Model::build(ModelSpec::heisenberg(6));
  const FieldCalculus calc(h);
  const GradedVector alpha = GradedVector::unit({1, 0});
  const WindowLayout layout = WindowLayout::of(h);

  for (long k : {-2L, 0L, 1L, 3L}) {
    const TestFunction f = TestFunction::trig_poly({{k, Scalar(1)}});
    const SmearedOperator sop = smear(calc, alpha, f, std::abs(k) + 2);
    REQUIRE(sop.exact);
    const GradedOperator expect = calc.mode_matrix(alpha, k);  // weight 1: a_k = a_{(k)}
    // compare through the embedding
    ExactMatrix full(static_cast<std::size_t>(layout.dim), static_cast<std::size_t>(layout.dim));
    for (const auto& [m, B] : expect.blocks()) {
      const int t = m + expect.shift();
      for (std::size_t r = 0; r < B.rows(); ++r)
        for (std::size_t cc = 0; cc < B.cols(); ++cc)
          full(static_cast<std::size_t>(layout.offset(t)) + r,
               static_cast<std::size_t>(layout.offset(m)) + cc) = B(r, cc);
    }
    CHECK(sop.exact_matrix == full);
  }
}

TEST_CASE("smear is linear in the test function (exact for trig polys)") {
  const Model h = Model::build(ModelSpec::heisenberg(5));
  const FieldCalculus calc(h);
  const GradedVector alpha = GradedVector::unit({1, 0});
  const TestFunction f = TestFunction::trig_poly({{0, Scalar(Rational(1, 2))}, {2, Scalar(3)}});
  const TestFunction g = TestFunction::trig_poly({{-1, Scalar(1)}, {2, Scalar(Rational(-1, 3))}});
  std::map<long, Scalar> sum_coeffs;
  for (const auto& [n, c] : f.trig_coefficients()) sum_coeffs[n] += c;
  for (const auto& [n, c] : g.trig_coefficients()) sum_coeffs[n] += c;
  const TestFunction fg = TestFunction::trig_poly(sum_coeffs);

  const ExactMatrix lhs = smear(calc, alpha, fg, 4).exact_matrix;
  const ExactMatrix rhs =
      smear(calc, alpha, f, 4).exact_matrix + smear(calc, alpha, g, 4).exact_matrix;
  CHECK(lhs == rhs);
}

TEST_CASE("disjoint-pairing trig pairs give exactly commuting smeared operators") {
  const Model h = Model::build(ModelSpec::heisenberg(6));
  const FieldCalculus calc(h);
  const GradedVector alpha = GradedVector::unit({1, 0});

  // annihilator-only pair: supported on modes {1} and {2}; the pairing
  // sum_m m f_m g_{-m} vanishes and no window projection interferes
  const SmearedOperator x =
      smear(calc, alpha, TestFunction::trig_poly({{1, Scalar(1)}}), 3);
  const SmearedOperator y =
      smear(calc, alpha, TestFunction::trig_poly({{2, Scalar(5)}}), 3);
  const ExactMatrix comm = x.exact_matrix * y.exact_matrix - y.exact_matrix * x.exact_matrix;
  CHECK(comm.is_zero());

  // mixed pair with vanishing pairing: exact commutator vanishes wherever the
  // applications stay inside the window
  const TestFunction f = TestFunction::trig_poly({{1, Scalar(1)}, {-1, Scalar(1)}});
  const TestFunction g = TestFunction::trig_poly({{2, Scalar(1)}, {-2, Scalar(1)}});
  auto apply_smeared = [&](const TestFunction& fn, const GradedVector& v) {
    GradedVector out;
    for (const auto& [n, c] : fn.trig_coefficients()) {
      GradedVector t = calc.apply_mode(alpha, n, v);  // weight 1: shifted = unshifted
      t *= c;
      out += t;
    }
    return out;
  };
  for (int lvl = 0; lvl <= 3; ++lvl) {
    for (int idx = 0; idx < h.dim(lvl); ++idx) {
      const GradedVector v = GradedVector::unit({lvl, idx});
      const GradedVector lhs = apply_smeared(f, apply_smeared(g, v));
      const GradedVector rhs = apply_smeared(g, apply_smeared(f, v));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("smear reports the achievable cutoff when modes leave the window") {
  // on the Virasoro model, composite-state modes fail near the top of the
  // window; the error names the achievable range
  const Model v = Model::build(ModelSpec::virasoro(Scalar(Rational(1, 2)), 4));
  const FieldCalculus calc(v);
  const GradedVector a = GradedVector::unit({4, v.index_of_leaf_partition(4, {2, 2})});
  std::map<long, Scalar> coeffs;
  for (long n = -3; n <= 3; ++n) coeffs[n] = Scalar(1);
  try {
    smear(calc, a, TestFunction::trig_poly(coeffs), 3);
    FAIL("expected SmearError");
  } catch (const SmearError& e) {
    CHECK(e.achievable_cutoff() < 3);
  }
}

TEST_CASE("f = 1 on the conformal vector reproduces L_0") {
  const Model h = Model::build(ModelSpec::heisenberg(6));
  const FieldCalculus calc(h);
  const GradedVector nu = calc.sugawara_vector();
  const SmearedOperator sop = smear(calc, nu, TestFunction::constant(Scalar(1)), 5);
  const WindowLayout layout = WindowLayout::of(h);
  for (int l = 0; l <= 6; ++l)
    for (int i = 0; i < h.dim(l); ++i) {
      const std::size_t p = static_cast<std::size_t>(layout.position({l, i}));
      CHECK(sop.exact_matrix(p, p) == Scalar(Rational(l)));
    }
}

TEST_CASE("energy bound estimates grow monotonically with the window") {
  const EnergyBoundReport rep = energy_bound_estimate(
      ModelSpec::heisenberg(4),
      [](const FieldCalculus& c) {
        return GradedVector::unit({1, 0});
      },
      1, 1, 8, {4, 6, 8});
  REQUIRE(rep.windows.size() == 3);
  CHECK(rep.windows[0].m_est <= rep.windows[1].m_est + 1e-12);
  CHECK(rep.windows[1].m_est <= rep.windows[2].m_est + 1e-12);
  for (const auto& w : rep.windows) {
    CHECK(w.m_est > 0.0);
    CHECK(w.skipped_blocks == 0);
  }
  // a = 0 gives M_est = 0
  const EnergyBoundReport zero = energy_bound_estimate(
      ModelSpec::heisenberg(4), [](const FieldCalculus&) { return GradedVector(); }, 1, 1, 4,
      {4});
  CHECK(zero.windows[0].m_est == 0.0);
}

TEST_CASE("commutator decay rejects overlapping or identical arcs") {
  const Model h = Model::build(ModelSpec::heisenberg(4));
  const FieldCalculus calc(h);
  const GradedVector alpha = GradedVector::unit({1, 0});
  const Arc a(Rational(0), Rational(1, 2));
  CHECK_THROWS_AS(commutator_decay(calc, alpha, alpha, a, a, 256, {8}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      commutator_decay(calc, alpha, alpha, a, Arc(Rational(1, 4), Rational(1)), 256, {8}),
      std::invalid_argument);
}

TEST_CASE("pairing scalar decays through cutoff doublings for an asymmetric disjoint pair") {
  // (0, pi/2) against (pi, 29pi/20): unequal widths break the antipodal
  // cancellation, so the partial sums are genuinely nonzero and shrink
  const Model h = Model::build(ModelSpec::heisenberg(4));
  const FieldCalculus calc(h);
  const GradedVector alpha = GradedVector::unit({1, 0});
  const DecayReport rep =
      commutator_decay(calc, alpha, alpha, Arc(Rational(0), Rational(1, 2)),
                       Arc(Rational(1), Rational(29, 20)), 1024, {8, 16, 32});
  REQUIRE(rep.rows.size() == 3);
  const double p8 = std::abs(rep.rows[0].pairing_scalar);
  const double p16 = std::abs(rep.rows[1].pairing_scalar);
  const double p32 = std::abs(rep.rows[2].pairing_scalar);
  CHECK(p8 > 1e-12);  // genuinely nonzero at low cutoff
  CHECK(p16 < p8);
  CHECK(p32 < p16);
}

TEST_CASE("antipodal equal-width pair: the pairing cancels identically at every cutoff") {
  // For supports (0, pi/2) and (pi, 3pi/2) the translate relation makes
  // g_m = (-1)^m f_m, so terms m and -m cancel exactly; the computed scalar
  // is pure floating-point noise
  const Model h = Model::build(ModelSpec::heisenberg(4));
  const FieldCalculus calc(h);
  const GradedVector alpha = GradedVector::unit({1, 0});
  const DecayReport rep =
      commutator_decay(calc, alpha, alpha, Arc(Rational(0), Rational(1, 2)),
                       Arc(Rational(1), Rational(3, 2)), 1024, {8, 16, 32});
  for (const auto& row : rep.rows) CHECK(std::abs(row.pairing_scalar) < 1e-14);
}
