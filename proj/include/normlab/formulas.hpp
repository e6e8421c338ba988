#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "normlab/pnorm.hpp"
#include "normlab/realization.hpp"
#include "normlab/space.hpp"

namespace normlab {

// ||b||_inf = sup_x sup_{S_F(E)} || sum_g a_g(x) f_g ||. For scalar fibers
// the inner sup collapses to sum_g |a_g(x)| and the value is exact; for
// vector fibers we report an ascent/triangle sandwich. When the action is
// not free the formula only bounds the norm from above, so the result is
// downgraded to a one-sided bound.
inline NormBounds norm_sup_formula(const AlgebraElement& b, const AscentOptions& opts = {}) {
  const auto& sp = *b.space;
  const bool free = is_topologically_free(sp).free;
  if (b.dim == 1) {
    double v = 0.0;
    for (int x = 0; x < sp.points; ++x) {
      double s = 0.0;
      for (const auto& [g, a] : b.coeffs) s += std::abs(a.at[x](0, 0));
      v = std::max(v, s);
    }
    if (free) return exact_bounds(v, "sup-formula");
    return {0.0, v, "none(non-free)", "sup-formula(upper-only)", false};
  }
  double lower = 0.0, upper = 0.0;
  for (int x = 0; x < sp.points; ++x) {
    std::vector<CMatrix> blocks;
    double tri = 0.0;
    for (const auto& [g, a] : b.coeffs) {
      blocks.push_back(a.at[x]);
      tri += spectral_norm(a.at[x]);
    }
    lower = std::max(lower, sphere_sum_ascent(blocks, opts));
    upper = std::max(upper, tri);
  }
  if (!free) return {0.0, upper, "none(non-free)", "sup-formula-triangle(upper-only)", false};
  if (upper - lower <= 1e-9) return exact_bounds(upper, "sup-formula(met)");
  return {std::min(lower, upper), upper, "sup-formula-sphere-ascent", "sup-formula-triangle", false};
}

// ||b||_1 = sup_x sup_{S_F(E*)} || sum_g [a_g(t_g(x))]^H f_g ||; scalar case
// sup_x sum_g |a_g(t_g(x))|. Same freedom gating as above.
inline NormBounds norm_l1_formula(const AlgebraElement& b, const AscentOptions& opts = {}) {
  const auto& sp = *b.space;
  const bool free = is_topologically_free(sp).free;
  if (b.dim == 1) {
    double v = 0.0;
    for (int x = 0; x < sp.points; ++x) {
      double s = 0.0;
      for (const auto& [g, a] : b.coeffs) s += std::abs(a.at[sp.act(g, x)](0, 0));
      v = std::max(v, s);
    }
    if (free) return exact_bounds(v, "l1-formula");
    return {0.0, v, "none(non-free)", "l1-formula(upper-only)", false};
  }
  double lower = 0.0, upper = 0.0;
  for (int x = 0; x < sp.points; ++x) {
    std::vector<CMatrix> blocks;
    double tri = 0.0;
    for (const auto& [g, a] : b.coeffs) {
      blocks.push_back(a.at[sp.act(g, x)].adjoint());
      tri += spectral_norm(blocks.back());
    }
    lower = std::max(lower, sphere_sum_ascent(blocks, opts));
    upper = std::max(upper, tri);
  }
  if (!free) return {0.0, upper, "none(non-free)", "l1-formula-triangle(upper-only)", false};
  if (upper - lower <= 1e-9) return exact_bounds(upper, "l1-formula(met)");
  return {std::min(lower, upper), upper, "l1-formula-sphere-ascent", "l1-formula-triangle", false};
}

// ||b||_p <= ||b||_1^{1/p} ||b||_inf^{1-1/p}. Fed with upper bounds it stays
// a valid upper bound; with the exact scalar formulas it is the sharp
// interpolation estimate.
inline double interpolation_upper(const AlgebraElement& b, double p, const AscentOptions& opts = {}) {
  check_p(p);
  double alpha = is_inf(p) ? 0.0 : 1.0 / p;
  double u1 = norm_l1_formula(b, opts).upper;
  double uinf = norm_sup_formula(b, opts).upper;
  if (u1 == 0.0 || uinf == 0.0) return 0.0;
  return std::pow(u1, alpha) * std::pow(uinf, 1.0 - alpha);
}

namespace detail {

// Per-point trajectory endpoint norms from the closing sup formulas:
//   ||b_x||_1   = sup_h sum_g w(a_g(t_{g h^{-1}}(x)))
//   ||b_x||_inf = sup_h sum_g w(a_g(t_h^{-1}(x)))
// with w = |.| for scalars (exact) and w = sigma_max for vector fibers
// (upper bounds).
struct TrajectoryEndpoints {
  double l1;
  double linf;
};

inline TrajectoryEndpoints trajectory_endpoint_uppers(const AlgebraElement& b, int x,
                                                      const std::vector<std::vector<double>>& blocknorm) {
  const auto& sp = *b.space;
  const auto& G = *sp.group;
  double l1 = 0.0, linf = 0.0;
  for (int h = 0; h < G.order; ++h) {
    double s1 = 0.0, sinf = 0.0;
    int gi = 0;
    for (const auto& [g, a] : b.coeffs) {
      int hg = G.mul(g, G.inv(h));
      s1 += blocknorm[gi][sp.act(hg, x)];
      sinf += blocknorm[gi][sp.act_inv(h, x)];
      ++gi;
    }
    l1 = std::max(l1, s1);
    linf = std::max(linf, sinf);
  }
  return {l1, linf};
}

inline std::vector<std::vector<double>> coefficient_block_norms(const AlgebraElement& b) {
  std::vector<std::vector<double>> out;
  out.reserve(b.coeffs.size());
  for (const auto& [g, a] : b.coeffs) {
    std::vector<double> row(b.space->points);
    for (int x = 0; x < b.space->points; ++x)
      row[x] = b.dim == 1 ? std::abs(a.at[x](0, 0)) : spectral_norm(a.at[x]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

// sup_x ||b_x||_1^{1/p} ||b_x||_inf^{1-1/p}: the pointwise strengthening of
// the interpolation bound. Never exceeds interpolation_upper beyond rounding
// (Hoelder on sups) and dominates the true norm on free actions.
inline double pointwise_interpolation_upper(const AlgebraElement& b, double p) {
  check_p(p);
  const auto& sp = *b.space;
  double alpha = is_inf(p) ? 0.0 : 1.0 / p;
  auto blocknorm = detail::coefficient_block_norms(b);
  double out = 0.0;
  for (int x = 0; x < sp.points; ++x) {
    auto ends = detail::trajectory_endpoint_uppers(b, x, blocknorm);
    if (ends.l1 == 0.0 || ends.linf == 0.0) continue;
    out = std::max(out, std::pow(ends.l1, alpha) * std::pow(ends.linf, 1.0 - alpha));
  }
  return out;
}

// sup_x || b_x ||_p with conservative combination: max of lower bounds, max
// of upper bounds, exact only when every factor was.
inline NormBounds trajectory_norm(const AlgebraElement& b, double p, const AscentOptions& opts = {}) {
  check_p(p);
  NormBounds out{0.0, 0.0, "trajectory-sup", "trajectory-sup", true};
  for (int x = 0; x < b.space->points; ++x) {
    NormBounds nb = norm_p(trajectory_operator(b, x, p), opts);
    out.lower = std::max(out.lower, nb.lower);
    out.upper = std::max(out.upper, nb.upper);
    out.exact = out.exact && nb.exact;
    if (x == 0) {
      out.lower_method = "trajectory-sup[" + nb.lower_method + "]";
      out.upper_method = "trajectory-sup[" + nb.upper_method + "]";
    }
  }
  if (!out.exact) return out;
  return exact_bounds(out.upper, out.upper_method);
}

}  // namespace normlab
