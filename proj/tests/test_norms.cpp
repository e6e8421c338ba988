#include <catch2/catch_amalgamated.hpp>

#include "normlab/formulas.hpp"
#include "normlab/pnorm.hpp"
#include "normlab/realization.hpp"
#include "normlab/rng.hpp"
#include "normlab/scenario.hpp"

using namespace normlab;

namespace {

// matrix-side oracles, independent of the formula implementations
double max_abs_row_sum(const CMatrix& m) {
  double out = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) out = std::max(out, m.row(r).cwiseAbs().sum());
  return out;
}

double weighted_max_col_sum(const CMatrix& m, const std::vector<double>& w) {
  double out = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    double col = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) col += w[r] * std::abs(m(r, c));
    out = std::max(out, col / w[c]);
  }
  return out;
}

AlgebraElement random_d2_element(const SpacePtr& space, int support, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::map<int, CoefficientField> coeffs;
  for (int g = 0; g < support; ++g) {
    CoefficientField f;
    f.dim = 2;
    for (int x = 0; x < space->points; ++x) {
      CMatrix m(2, 2);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = rng.complex_in_square();
      f.at.push_back(std::move(m));
    }
    coeffs.emplace(g, std::move(f));
  }
  return make_element(space, 2, std::move(coeffs));
}

}  // namespace

TEST_CASE("realize: identity, running matrix, l1 isometry entries") {
  Scenario s = running_scenario();
  for (double p : {1.0, 2.0, 3.0, kInfinity}) {
    Realization R = realize(unit_monomial(s.space, 0), p);
    CHECK(max_abs(CMatrix(R.matrix - CMatrix::Identity(2, 2))) == 0.0);
  }

  for (double p : {1.0, 1.5, 2.0, kInfinity}) {
    Realization R = realize(s.element, p);
    CMatrix expect(2, 2);
    expect << Complex(1, 0), Complex(3, 0), Complex(1, 0), Complex(2, 0);
    CHECK(max_abs(CMatrix(R.matrix - expect)) == 0.0);  // rho == 1 uniformly
  }

  auto sp13 = make_space(build_group("cyclic:2"), {1.0, 3.0}, {{0, 1}, {1, 0}});
  Realization R = realize(unit_monomial(sp13, 1), 1.0);
  CHECK(R.matrix(0, 1).real() == 3.0);
  CHECK(R.matrix(1, 0).real() == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(R.matrix(0, 0) == Complex(0, 0));
  // weighted l1 isometry: both column functionals are exactly 1
  CHECK(weighted_max_col_sum(R.matrix, sp13->weights) == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("realized matrices respect the orbit block pattern on free actions") {
  SplitMix64 rng(5);
  Scenario s = random_scenario("cyclic:4", 8, 2, 3, rng.next());
  Realization R = realize(s.element, 2.0);
  const auto& sp = *s.space;
  for (int x = 0; x < sp.points; ++x)
    for (int y = 0; y < sp.points; ++y) {
      bool on_pattern = false;
      for (const auto& [g, a] : s.element.coeffs) on_pattern = on_pattern || sp.act_inv(g, x) == y;
      if (!on_pattern) CHECK(max_abs(CMatrix(R.block(x, y))) == 0.0);
    }
}

TEST_CASE("weighted_norm examples") {
  std::vector<double> w = {1.0, 1.0};
  CVector zero = CVector::Zero(2);
  CHECK(weighted_norm(zero, 1.5, w) == 0.0);

  std::vector<double> w2 = {0.7, 2.0, 1.1};
  CVector ind = CVector::Zero(3);
  ind(1) = 1.0;
  for (double p : {1.0, 2.0, 3.0}) CHECK(weighted_norm(ind, p, w2) == Catch::Approx(std::pow(2.0, 1.0 / p)));
  CHECK(weighted_norm(ind, kInfinity, w2) == 1.0);

  CVector ones = CVector::Ones(2);
  CHECK(weighted_norm(ones, 2.0, w) == Catch::Approx(std::sqrt(2.0)));
}

TEST_CASE("norm_sup_formula: running scenario gives 4, exactly the max row sum oracle") {
  Scenario s = running_scenario();
  NormBounds nb = norm_sup_formula(s.element);
  CHECK(nb.exact);
  CHECK(nb.upper == 4.0);
  CHECK(nb.upper == max_abs_row_sum(realize(s.element, kInfinity).matrix));
}

TEST_CASE("norm_sup_formula: single multiplication term") {
  auto sp = translation_scenario(build_group("cyclic:3"));
  auto a = monomial(sp, 0, CoefficientField::scalars({0.5, -2.5, 1.0}));
  NormBounds nb = norm_sup_formula(a);
  CHECK(nb.exact);
  CHECK(nb.upper == 2.5);
}

TEST_CASE("norm_sup_formula: d=2 sandwich brackets a dense sphere-sampling oracle") {
  auto sp = translation_scenario(build_group("cyclic:2"));
  auto b = random_d2_element(sp, 2, 123);
  AscentOptions opts;
  NormBounds nb = norm_sup_formula(b, opts);
  REQUIRE(nb.lower <= nb.upper);
  // oracle: random points on the product of unit spheres, all x
  SplitMix64 rng(99);
  double sampled = 0.0;
  for (int k = 0; k < 100000; ++k) {
    std::vector<CVector> f;
    for (size_t i = 0; i < b.coeffs.size(); ++i) {
      CVector v(2);
      v(0) = rng.complex_in_square();
      v(1) = rng.complex_in_square();
      if (v.norm() == 0.0) v(0) = 1.0;
      f.push_back(v / v.norm());
    }
    for (int x = 0; x < sp->points; ++x) {
      CVector r2 = CVector::Zero(2);
      int i = 0;
      for (const auto& [g, a] : b.coeffs) r2 += a.at[x] * f[i++];
      sampled = std::max(sampled, r2.norm());
    }
  }
  CHECK(nb.lower + 1e-6 >= sampled);
  CHECK(nb.upper + 1e-12 >= sampled);
}

TEST_CASE("norm_sup_formula downgrades without freedom") {
  Scenario c = counterexample_scenario();
  NormBounds nb = norm_sup_formula(c.element);
  CHECK_FALSE(nb.exact);
  CHECK(nb.upper == 2.0);  // the formula value, now only an upper bound
  CHECK(nb.lower == 0.0);
  // and indeed the true norm is 0 here
  CHECK(norm_p(realize(c.element, kInfinity)).upper == 0.0);
}

TEST_CASE("norm_l1_formula: running scenario gives 5 = weighted max column sum") {
  Scenario s = running_scenario();
  NormBounds nb = norm_l1_formula(s.element);
  CHECK(nb.exact);
  CHECK(nb.upper == 5.0);
  CHECK(nb.upper == weighted_max_col_sum(realize(s.element, 1.0).matrix, s.space->weights));

  for (int g = 0; g < 2; ++g) {
    NormBounds iso = norm_l1_formula(unit_monomial(s.space, g));
    CHECK(iso.exact);
    CHECK(iso.upper == 1.0);
  }

  Scenario s13 = running_scenario(1.0, 3.0);
  NormBounds nb13 = norm_l1_formula(s13.element);
  double oracle = weighted_max_col_sum(realize(s13.element, 1.0).matrix, s13.space->weights);
  CHECK(std::abs(nb13.upper - oracle) <= 1e-12);
}

TEST_CASE("norm_p: identity realization has norm one for every p") {
  auto sp = translation_scenario(build_group("cyclic:4"));
  auto one = unit_monomial(sp, 0);
  for (double p : {1.0, 1.5, 2.0, 4.0, kInfinity}) {
    NormBounds nb = norm_p(realize(one, p));
    CHECK(nb.upper >= 1.0 - 1e-12);
    CHECK(nb.lower >= 1.0 - 1e-12);
    CHECK(nb.upper <= 1.0 + 1e-12);
  }
}

TEST_CASE("norm_p at p=2: running scenario singular value, sandwiched by sqrt(20)") {
  Scenario s = running_scenario();
  NormBounds nb = norm_p(realize(s.element, 2.0));
  REQUIRE(nb.exact);
  // dense SVD oracle in closed form: largest eigenvalue of B^H B
  double sigma = std::sqrt((15.0 + std::sqrt(221.0)) / 2.0);
  CHECK(nb.upper == Catch::Approx(sigma).epsilon(1e-13));
  CHECK(nb.upper <= std::sqrt(20.0));
}

TEST_CASE("norm_p at p=4: ascent lower bound beats a 1e6-sample randomized search") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    Scenario s = random_scenario("cyclic:2", 2, 1, 2, rng.next());
    Realization R = realize(s.element, 4.0);
    NormBounds nb = norm_p(R);
    REQUIRE(nb.lower <= nb.upper + 1e-12);
    const auto& w = s.space->weights;
    SplitMix64 sampler(derive_seed(2024, trial));
    double oracle = 0.0;
    for (int k = 0; k < 1000000; ++k) {
      CVector f(2);
      f(0) = sampler.complex_in_square();
      f(1) = sampler.complex_in_square();
      double nf = weighted_norm(f, 4.0, w);
      if (nf == 0.0) continue;
      oracle = std::max(oracle, weighted_norm(CVector(R.matrix * f), 4.0, w) / nf);
    }
    CHECK(nb.lower + 1e-6 >= oracle);
  }
}

TEST_CASE("interpolation_upper: running scenario at p=2 is sqrt(20), isometries give 1") {
  Scenario s = running_scenario();
  CHECK(interpolation_upper(s.element, 2.0) == Catch::Approx(std::sqrt(20.0)).epsilon(1e-14));
  for (int g = 0; g < 2; ++g) CHECK(interpolation_upper(unit_monomial(s.space, g), 2.0) == 1.0);

  // endpoints and monotonicity of the exponent interpolation
  double u1 = norm_l1_formula(s.element).upper;
  double uinf = norm_sup_formula(s.element).upper;
  CHECK(interpolation_upper(s.element, 1.0) == u1);
  CHECK(interpolation_upper(s.element, kInfinity) == uinf);
  double prev = interpolation_upper(s.element, 1.0001);
  for (double p : {1.2, 1.5, 2.0, 3.0, 8.0, 40.0}) {
    double cur = interpolation_upper(s.element, p);
    CHECK(cur <= std::max(u1, uinf) + 1e-12);
    CHECK(cur >= std::min(u1, uinf) - 1e-12);
    // u1 = 5 > uinf = 4 here, so the bound decreases in p
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("pointwise_interpolation_upper examples") {
  Scenario s = running_scenario();
  CHECK(pointwise_interpolation_upper(s.element, 2.0) == Catch::Approx(std::sqrt(20.0)).epsilon(1e-14));

  auto sp = translation_scenario(build_group("cyclic:3"));
  auto single = monomial(sp, 0, CoefficientField::scalars({0.5, 2.0, 1.0}));
  CHECK(pointwise_interpolation_upper(single, 2.0) == Catch::Approx(interpolation_upper(single, 2.0)));

  CHECK(pointwise_interpolation_upper(zero_element(sp), 2.0) == 0.0);
}

TEST_CASE("pointwise interpolation never exceeds the global bound and dominates ascent") {
  SplitMix64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    Scenario s = random_scenario("cyclic:3", 6, 1, 2, rng.next());
    for (double p : {1.5, 2.0, 3.0}) {
      double pw = pointwise_interpolation_upper(s.element, p);
      double gl = interpolation_upper(s.element, p);
      NormBounds nb = norm_p(realize(s.element, p));
      CHECK(pw <= gl + 1e-12);
      CHECK(nb.lower <= pw + 1e-9);
    }
  }
}

TEST_CASE("trajectory_operator: unit at T_e, running matrix at x=0, multiplicativity") {
  Scenario s = running_scenario();
  Realization Te = trajectory_operator(unit_monomial(s.space, 0), 0, 2.0);
  CHECK(max_abs(CMatrix(Te.matrix - CMatrix::Identity(2, 2))) == 0.0);

  Realization T0 = trajectory_operator(s.element, 0, 2.0);
  CMatrix expect(2, 2);
  expect << Complex(1, 0), Complex(3, 0), Complex(1, 0), Complex(2, 0);
  CHECK(max_abs(CMatrix(T0.matrix - expect)) == 0.0);

  SplitMix64 rng(60);
  Scenario r = random_scenario("cyclic:3", 6, 1, 3, rng.next());
  Scenario r2 = random_scenario("cyclic:3", 6, 1, 2, rng.next());
  auto b2 = make_element(r.space, 1, r2.element.coeffs);
  auto prod = multiply(r.element, b2);
  for (int x = 0; x < 6; ++x) {
    CMatrix lhs = trajectory_operator(prod, x, 2.0).matrix;
    CMatrix rhs = trajectory_operator(r.element, x, 2.0).matrix * trajectory_operator(b2, x, 2.0).matrix;
    CHECK(max_abs(CMatrix(lhs - rhs)) <= 1e-12);
  }
}

TEST_CASE("trajectory_norm: reductions and equality with the realized norm") {
  // single-point space: the one trajectory matrix is the whole story
  auto pt = translation_scenario(build_group("cyclic:1"));
  auto a = monomial(pt, 0, CoefficientField::scalars({Complex(0, 2)}));
  NormBounds tn = trajectory_norm(a, 2.0);
  CHECK(tn.upper == 2.0);

  Scenario s = running_scenario();
  for (double p : {1.0, 2.0, kInfinity}) {
    NormBounds t = trajectory_norm(s.element, p);
    NormBounds n = norm_p(realize(s.element, p));
    CHECK(std::abs(t.upper - n.upper) <= 1e-12);
  }

  CHECK(trajectory_norm(zero_element(s.space), 2.0).upper == 0.0);
}

TEST_CASE("regular_representation: identity, trivial group, running 4x4 equality") {
  Scenario s = running_scenario();
  Realization Re = regular_representation(unit_monomial(s.space, 0), 2.0);
  CHECK(max_abs(CMatrix(Re.matrix - CMatrix::Identity(4, 4))) == 0.0);

  auto pt = translation_scenario(build_group("cyclic:1"));
  auto a = monomial(pt, 0, CoefficientField::scalars({Complex(1, 1)}));
  CHECK(max_abs(CMatrix(regular_representation(a, 2.0).matrix - realize(a, 2.0).matrix)) == 0.0);

  Realization RR = regular_representation(s.element, 2.0);
  REQUIRE(RR.matrix.rows() == 4);
  NormBounds rr = norm_p(RR);
  NormBounds nb = norm_p(realize(s.element, 2.0));
  CHECK(std::abs(rr.upper - nb.upper) <= 1e-9);
}

TEST_CASE("formal_adjoint_matrix examples") {
  // diagonal element: pointwise conjugate transpose
  auto sp = translation_scenario(build_group("cyclic:2"));
  CoefficientField f;
  f.dim = 2;
  CMatrix m0(2, 2), m1(2, 2);
  m0 << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(2, 2);
  m1 << Complex(0, 1), Complex(1, 1), Complex(-1, 0), Complex(4, -3);
  f.at = {m0, m1};
  auto diag = monomial(sp, 0, f);
  Realization S = formal_adjoint_matrix(diag);
  CHECK(max_abs(CMatrix(S.block(0, 0) - m0.adjoint())) == 0.0);
  CHECK(max_abs(CMatrix(S.block(1, 1) - m1.adjoint())) == 0.0);

  Scenario s = running_scenario();
  Realization Sb = formal_adjoint_matrix(s.element);
  CMatrix expect(2, 2);
  expect << Complex(1, 0), Complex(1, 0), Complex(3, 0), Complex(2, 0);
  CHECK(max_abs(CMatrix(Sb.matrix - expect)) == 0.0);
  // the transpose of the p=1 realization under uniform mu
  CHECK(max_abs(CMatrix(Sb.matrix - realize(s.element, 1.0).matrix.transpose())) == 0.0);

  // unit monomial: the permutation matrix of t_g
  Realization Sg = formal_adjoint_matrix(unit_monomial(s.space, 1));
  CMatrix perm = CMatrix::Zero(2, 2);
  perm(0, 1) = 1.0;
  perm(1, 0) = 1.0;
  CHECK(max_abs(CMatrix(Sg.matrix - perm)) == 0.0);
}

TEST_CASE("pairing examples and the adjoint pairing identity") {
  Scenario s = running_scenario(1.0, 3.0);
  const auto& w = s.space->weights;
  CVector zero = CVector::Zero(2);
  CVector ones = CVector::Ones(2);
  CHECK(std::abs(pairing(zero, ones, w)) == 0.0);

  CVector ind = CVector::Zero(2);
  ind(1) = 1.0;
  CHECK(pairing(ind, ones, w) == Complex(3.0, 0.0));  // mu(x0)

  Realization B1 = realize(s.element, 1.0);
  Realization S = formal_adjoint_matrix(s.element);
  SplitMix64 rng(77);
  for (int k = 0; k < 200; ++k) {
    CVector fv(2), xi(2);
    for (int i = 0; i < 2; ++i) {
      fv(i) = rng.complex_in_square();
      xi(i) = rng.complex_in_square();
    }
    Complex lhs = pairing(CVector(B1.matrix * fv), xi, w);
    Complex rhs = pairing(fv, CVector(S.matrix * xi), w);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
  CHECK_THROWS_AS(pairing(CVector::Zero(3), CVector::Zero(3), w), DimensionMismatchError);
}

TEST_CASE("exactness cross-check: formulas equal matrix oracles on seeded random scalar scenarios") {
  SplitMix64 rng(314159);
  const char* groups[] = {"cyclic:2", "cyclic:3", "cyclic:4", "product:[cyclic:2,cyclic:2]"};
  for (int trial = 0; trial < 100; ++trial) {
    const char* desc = groups[trial % 4];
    int order = static_cast<int>(build_group(desc)->order);
    int reps = 1 + static_cast<int>(rng.below(3));
    int support = 1 + static_cast<int>(rng.below(order));
    Scenario s = random_scenario(desc, order * reps, 1, support, rng.next());
    NormBounds nsup = norm_sup_formula(s.element);
    NormBounds nl1 = norm_l1_formula(s.element);
    REQUIRE(nsup.exact);
    REQUIRE(nl1.exact);
    CHECK(std::abs(nsup.upper - max_abs_row_sum(realize(s.element, kInfinity).matrix)) <= 1e-12);
    CHECK(std::abs(nl1.upper - weighted_max_col_sum(realize(s.element, 1.0).matrix, s.space->weights)) <= 1e-12);
  }
}

TEST_CASE("trajectory and regular representation norms agree with the realization on free scenarios") {
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 8; ++trial) {
    Scenario s = random_scenario(trial % 2 ? "cyclic:3" : "product:[cyclic:2,cyclic:2]",
                                 trial % 2 ? 6 : 8, 1, 2, rng.next());
    for (double p : {1.0, 2.0, kInfinity}) {
      NormBounds nb = norm_p(realize(s.element, p));
      NormBounds tn = trajectory_norm(s.element, p);
      NormBounds rr = norm_p(regular_representation(s.element, p));
      CHECK(std::abs(nb.upper - tn.upper) <= 1e-9);
      CHECK(std::abs(nb.upper - rr.upper) <= 1e-9);
    }
    // one-sided trajectory lower bound at a non-exact exponent
    NormBounds nb3 = norm_p(realize(s.element, 1.5));
    NormBounds tn3 = trajectory_norm(s.element, 1.5);
    CHECK(tn3.lower <= nb3.upper + 1e-9);
  }
}

TEST_CASE("duality norm equality on random scenarios") {
  SplitMix64 rng(161803);
  for (int trial = 0; trial < 20; ++trial) {
    Scenario s = random_scenario("cyclic:4", 8, 1, 3, rng.next());
    double n1 = norm_p(realize(s.element, 1.0)).upper;
    double ns = norm_p(formal_adjoint_matrix(s.element)).upper;
    CHECK(std::abs(n1 - ns) <= 1e-12);
  }
}
