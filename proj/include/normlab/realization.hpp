#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "normlab/element.hpp"
#include "normlab/errors.hpp"
#include "normlab/types.hpp"

namespace normlab {

// A concrete matrix acting on a weighted l^p space of fiber-valued functions
// over `sites` points: index layout is site-major, entry (x*dim+i, y*dim+j).
// The same container carries realizations over X, trajectory operators over
// G, and regular representations over G x X; only the site weights differ.
struct Realization {
  double p = 2.0;  // exponent in [1, inf]
  CMatrix matrix;
  std::vector<double> site_weights;
  int dim = 1;
  std::string kind;  // "realize", "trajectory", "regular", "formal-adjoint"

  int sites() const { return static_cast<int>(site_weights.size()); }
  Eigen::Block<const CMatrix> block(int x, int y) const {
    return matrix.block(x * dim, y * dim, dim, dim);
  }
};

// Certified two-sided estimate. exact => lower == upper.
struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_method;
  std::string upper_method;
  bool exact = false;

  double value() const { return upper; }  // the certified side
};

inline NormBounds exact_bounds(double v, const std::string& method) {
  return {v, v, method, method, true};
}

inline void check_p(double p) {
  if (!(p >= 1.0) && !is_inf(p)) throw UnsupportedPError("exponent p must lie in [1, inf]");
}

// ||f||_p = (sum_x mu(x) ||f(x)||^p)^(1/p), Euclidean norm on the fiber;
// max_x ||f(x)|| at p = inf (weights do not enter there).
inline double weighted_norm(const CVector& f, double p, const std::vector<double>& site_weights,
                            int dim = 1) {
  check_p(p);
  const int n = static_cast<int>(site_weights.size());
  if (f.size() != static_cast<Eigen::Index>(n) * dim)
    throw DimensionMismatchError("weighted_norm: vector length does not match sites*dim");
  if (is_inf(p)) {
    double m = 0.0;
    for (int x = 0; x < n; ++x) m = std::max(m, f.segment(x * dim, dim).norm());
    return m;
  }
  double acc = 0.0;
  for (int x = 0; x < n; ++x) acc += site_weights[x] * std::pow(f.segment(x * dim, dim).norm(), p);
  return std::pow(acc, 1.0 / p);
}

// <f, xi> = sum_x mu(x) <f(x), xi(x)>, fiber pairing <u, v> = sum u_i conj(v_i).
// With this pairing the formal adjoint below satisfies <b f, xi> = <f, b' xi>.
inline Complex pairing(const CVector& f, const CVector& xi, const std::vector<double>& site_weights,
                       int dim = 1) {
  const int n = static_cast<int>(site_weights.size());
  if (f.size() != static_cast<Eigen::Index>(n) * dim || xi.size() != f.size())
    throw DimensionMismatchError("pairing: vector lengths do not match sites*dim");
  Complex acc = 0.0;
  for (int x = 0; x < n; ++x) {
    // Eigen dot conjugates its first argument, so this is sum f_i conj(xi_i).
    acc += site_weights[x] * xi.segment(x * dim, dim).dot(f.segment(x * dim, dim));
  }
  return acc;
}

// Matrix of b on l^p_mu(X, C^d): block (x, t_g^{-1}(x)) += a_g(x) rho_g(x)^{1/p};
// the cocycle factor is 1 at p = inf. Blocks add, so non-free actions may
// stack several coefficients into one entry.
inline Realization realize(const AlgebraElement& b, double p) {
  check_p(p);
  const auto& sp = *b.space;
  const int n = sp.points;
  const int d = b.dim;
  Realization R;
  R.p = p;
  R.dim = d;
  R.site_weights = sp.weights;
  R.kind = "realize";
  R.matrix = CMatrix::Zero(n * d, n * d);
  for (const auto& [g, a] : b.coeffs) {
    for (int x = 0; x < n; ++x) {
      int y = sp.act_inv(g, x);
      double factor = 1.0;
      if (!is_inf(p)) factor = std::pow(sp.weight(y) / sp.weight(x), 1.0 / p);
      R.matrix.block(x * d, y * d, d, d) += a.at[x] * factor;
    }
  }
  return R;
}

// Trajectory operator b_x on l^p(G, C^d): block (g, g*g0) += a_{g0}(t_g^{-1}(x)).
// The matrix does not depend on p; the exponent only selects the norm.
inline Realization trajectory_operator(const AlgebraElement& b, int x, double p) {
  check_p(p);
  const auto& sp = *b.space;
  const int m = sp.group->order;
  const int d = b.dim;
  Realization R;
  R.p = p;
  R.dim = d;
  R.site_weights.assign(m, 1.0);
  R.kind = "trajectory";
  R.matrix = CMatrix::Zero(m * d, m * d);
  for (const auto& [g0, a] : b.coeffs)
    for (int g = 0; g < m; ++g) {
      int h = sp.group->mul(g, g0);
      R.matrix.block(g * d, h * d, d, d) += a.at[sp.act_inv(g, x)];
    }
  return R;
}

// Regular representation on l^p(G, l^p_mu(X, C^d)): sites are pairs (g, x)
// in G-major order with weight mu(x); block ((g,x), (g*g0,x)) += a_{g0}(t_g^{-1}(x)).
// One formula for every p.
inline Realization regular_representation(const AlgebraElement& b, double p) {
  check_p(p);
  const auto& sp = *b.space;
  const int m = sp.group->order;
  const int n = sp.points;
  const int d = b.dim;
  Realization R;
  R.p = p;
  R.dim = d;
  R.kind = "regular";
  R.site_weights.resize(m * n);
  for (int g = 0; g < m; ++g)
    for (int x = 0; x < n; ++x) R.site_weights[g * n + x] = sp.weight(x);
  R.matrix = CMatrix::Zero(m * n * d, m * n * d);
  for (const auto& [g0, a] : b.coeffs)
    for (int g = 0; g < m; ++g) {
      int h = sp.group->mul(g, g0);
      for (int x = 0; x < n; ++x)
        R.matrix.block((g * n + x) * d, (h * n + x) * d, d, d) += a.at[sp.act_inv(g, x)];
    }
  return R;
}

// Formal adjoint b' acting on the sup-normed dual side: block
// (x, t_g(x)) += [a_g(t_g(x))]^H. Generally not the true adjoint, but it
// pairs with b and carries the l^1 norm of b as its l^inf norm.
inline Realization formal_adjoint_matrix(const AlgebraElement& b) {
  const auto& sp = *b.space;
  const int n = sp.points;
  const int d = b.dim;
  Realization R;
  R.p = kInfinity;
  R.dim = d;
  R.site_weights = sp.weights;
  R.kind = "formal-adjoint";
  R.matrix = CMatrix::Zero(n * d, n * d);
  for (const auto& [g, a] : b.coeffs)
    for (int x = 0; x < n; ++x) {
      int y = sp.act(g, x);
      R.matrix.block(x * d, y * d, d, d) += a.at[y].adjoint();
    }
  return R;
}

}  // namespace normlab
