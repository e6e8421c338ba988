#pragma once

#include <map>
#include <memory>
#include <vector>

#include "normlab/character.hpp"
#include "normlab/errors.hpp"
#include "normlab/space.hpp"
#include "normlab/types.hpp"

namespace normlab {

// One coefficient a_g: a d x d complex matrix at every point of the space.
struct CoefficientField {
  int dim = 1;
  std::vector<CMatrix> at;  // at[x] is dim x dim

  static CoefficientField zeros(int points, int dim) {
    CoefficientField f;
    f.dim = dim;
    f.at.assign(points, CMatrix::Zero(dim, dim));
    return f;
  }
  static CoefficientField identity(int points, int dim) {
    CoefficientField f;
    f.dim = dim;
    f.at.assign(points, CMatrix::Identity(dim, dim));
    return f;
  }
  static CoefficientField constant_scalar(int points, Complex c) {
    CoefficientField f;
    f.dim = 1;
    f.at.assign(points, CMatrix::Constant(1, 1, c));
    return f;
  }
  // scalar field from per-point values
  static CoefficientField scalars(const std::vector<Complex>& vals) {
    CoefficientField f;
    f.dim = 1;
    f.at.reserve(vals.size());
    for (Complex v : vals) f.at.push_back(CMatrix::Constant(1, 1, v));
    return f;
  }

  bool exactly_zero_field() const {
    for (const auto& m : at)
      if (!exactly_zero(m)) return false;
    return true;
  }
  double max_abs_entry() const {
    double m = 0.0;
    for (const auto& a : at) m = std::max(m, max_abs(a));
    return m;
  }
};

// b = sum over g in support of a_g T_g. Canonical form: exactly-zero
// coefficient fields are pruned from the support. The std::map keeps
// support iteration (and hence every emitted report) in element order.
struct AlgebraElement {
  SpacePtr space;
  int dim = 1;
  std::map<int, CoefficientField> coeffs;

  std::vector<int> support() const {
    std::vector<int> s;
    s.reserve(coeffs.size());
    for (const auto& [g, a] : coeffs) s.push_back(g);
    return s;
  }
  double max_abs_entry() const {
    double m = 0.0;
    for (const auto& [g, a] : coeffs) m = std::max(m, a.max_abs_entry());
    return m;
  }
};

inline AlgebraElement make_element(SpacePtr space, int dim,
                                   std::map<int, CoefficientField> coeffs) {
  if (!space) throw ValidationError("element: null space");
  AlgebraElement b;
  b.space = std::move(space);
  b.dim = dim;
  for (auto& [g, a] : coeffs) {
    if (g < 0 || g >= b.space->group->order)
      throw ValidationError("element: support entry " + std::to_string(g) + " is not a group element");
    if (a.dim != dim) throw DimensionMismatchError("element: coefficient at g=" + std::to_string(g) +
                                                   " has fiber dimension " + std::to_string(a.dim) +
                                                   ", element has " + std::to_string(dim));
    if (static_cast<int>(a.at.size()) != b.space->points)
      throw ValidationError("element: coefficient at g=" + std::to_string(g) + " not defined at every point");
    for (const auto& m : a.at)
      if (m.rows() != dim || m.cols() != dim)
        throw DimensionMismatchError("element: coefficient matrix shape mismatch at g=" + std::to_string(g));
    if (!a.exactly_zero_field()) b.coeffs.emplace(g, std::move(a));
  }
  return b;
}

inline AlgebraElement zero_element(SpacePtr space, int dim = 1) {
  return make_element(std::move(space), dim, {});
}

// a_g T_g for a single g
inline AlgebraElement monomial(SpacePtr space, int g, CoefficientField a) {
  const int dim = a.dim;
  std::map<int, CoefficientField> c;
  c.emplace(g, std::move(a));
  return make_element(std::move(space), dim, std::move(c));
}

// 1 * T_g
inline AlgebraElement unit_monomial(SpacePtr space, int g, int dim = 1) {
  auto id = CoefficientField::identity(space->points, dim);
  return monomial(std::move(space), g, std::move(id));
}

// N_g: stored-coefficient route (the other two routes are the character
// average below and matrix reconstruction in reconstruct.hpp).
inline CoefficientField coefficient(const AlgebraElement& b, int g) {
  auto it = b.coeffs.find(g);
  if (it != b.coeffs.end()) return it->second;
  return CoefficientField::zeros(b.space->points, b.dim);
}

namespace detail {

inline void check_compatible(const AlgebraElement& b1, const AlgebraElement& b2) {
  if (!same_space(*b1.space, *b2.space)) throw SpaceMismatchError("elements live on different spaces");
  if (b1.dim != b2.dim) throw DimensionMismatchError("elements have different fiber dimensions");
}

}  // namespace detail

inline AlgebraElement add(const AlgebraElement& b1, const AlgebraElement& b2) {
  detail::check_compatible(b1, b2);
  std::map<int, CoefficientField> out = b1.coeffs;
  for (const auto& [g, a] : b2.coeffs) {
    auto it = out.find(g);
    if (it == out.end()) {
      out.emplace(g, a);
    } else {
      for (int x = 0; x < b1.space->points; ++x) it->second.at[x] += a.at[x];
    }
  }
  return make_element(b1.space, b1.dim, std::move(out));
}

inline AlgebraElement scale(const AlgebraElement& b, Complex c) {
  std::map<int, CoefficientField> out = b.coeffs;
  for (auto& [g, a] : out)
    for (auto& m : a.at) m *= c;
  return make_element(b.space, b.dim, std::move(out));
}

// (a T_g)(a' T_h) = [a * (a' o t_g^{-1})] T_{gh}
inline AlgebraElement multiply(const AlgebraElement& b1, const AlgebraElement& b2) {
  detail::check_compatible(b1, b2);
  const auto& sp = *b1.space;
  std::map<int, CoefficientField> out;
  for (const auto& [g, a] : b1.coeffs)
    for (const auto& [h, ap] : b2.coeffs) {
      int gh = sp.group->mul(g, h);
      auto it = out.find(gh);
      if (it == out.end()) it = out.emplace(gh, CoefficientField::zeros(sp.points, b1.dim)).first;
      for (int x = 0; x < sp.points; ++x) it->second.at[x] += a.at[x] * ap.at[sp.act_inv(g, x)];
    }
  return make_element(b1.space, b1.dim, std::move(out));
}

// b(chi) = sum chi(g) a_g T_g
inline AlgebraElement twist(const AlgebraElement& b, const Character& chi) {
  if (!is_character_of(*b.space->group, chi))
    throw ValidationError("twist: chi is not a character of the acting group");
  std::map<int, CoefficientField> out = b.coeffs;
  for (auto& [g, a] : out)
    for (auto& m : a.at) m *= chi.value(g);
  return make_element(b.space, b.dim, std::move(out));
}

// Finite Haar average over the dual group:
//   (1/|G^|) sum_chi conj(chi(g0)) b(chi) = a_{g0} T_{g0}.
// Computed literally term by term; entries at g != g0 cancel to rounding
// noise and are pruned against a scale-relative threshold.
inline AlgebraElement character_average(const AlgebraElement& b, int g0) {
  const auto& G = *b.space->group;
  if (!is_abelian(G)) throw NonAbelianGroupError("character_average: acting group is not abelian");
  auto chars = characters(G);
  std::map<int, CoefficientField> acc;
  const double inv_n = 1.0 / static_cast<double>(chars.size());
  for (const auto& chi : chars) {
    Complex w = std::conj(chi.value(g0)) * inv_n;
    for (const auto& [g, a] : b.coeffs) {
      auto it = acc.find(g);
      if (it == acc.end()) it = acc.emplace(g, CoefficientField::zeros(b.space->points, b.dim)).first;
      Complex wg = w * chi.value(g);
      for (int x = 0; x < b.space->points; ++x) it->second.at[x] += wg * a.at[x];
    }
  }
  const double noise = 1e-13 * std::max(1.0, b.max_abs_entry());
  std::map<int, CoefficientField> out;
  for (auto& [g, a] : acc)
    if (a.max_abs_entry() > noise) out.emplace(g, std::move(a));
  return make_element(b.space, b.dim, std::move(out));
}

// Largest pointwise operator norm max_x ||a(x)||; for the multiplication
// operator this is its norm on every weighted l^p.
inline double field_sup_norm(const CoefficientField& a) {
  double m = 0.0;
  for (const auto& mat : a.at) m = std::max(m, spectral_norm(mat));
  return m;
}

// max over union of supports of entrywise differences; the coefficient-table
// distance used by round-trip and cross-route checks.
inline double element_distance(const AlgebraElement& b1, const AlgebraElement& b2) {
  detail::check_compatible(b1, b2);
  double m = 0.0;
  auto probe = [&](int g) {
    CoefficientField a1 = coefficient(b1, g);
    CoefficientField a2 = coefficient(b2, g);
    for (int x = 0; x < b1.space->points; ++x) m = std::max(m, max_abs(a1.at[x] - a2.at[x]));
  };
  for (const auto& [g, a] : b1.coeffs) probe(g);
  for (const auto& [g, a] : b2.coeffs)
    if (!b1.coeffs.count(g)) probe(g);
  return m;
}

}  // namespace normlab
