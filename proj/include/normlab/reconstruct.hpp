#pragma once

#include <cmath>
#include <string>

#include "normlab/element.hpp"
#include "normlab/realization.hpp"
#include "normlab/space.hpp"

namespace normlab {

// Recovers every coefficient of an element from its realized matrix. On a
// free action the source point t_g^{-1}(x) determines g, so block (x, y)
// belongs to at most one group element and a_g(x) = B(x, t_g^{-1}(x)) /
// rho_g(x)^{1/p}. Entries outside the orbit pattern beyond `pattern_tol`
// mean the matrix was not produced by any element over this space.
inline AlgebraElement reconstruct(SpacePtr space, const Realization& R,
                                  double pattern_tol = 1e-10) {
  const auto& sp = *space;
  auto freedom = is_topologically_free(sp);
  if (!freedom.free) {
    auto [g, x] = *freedom.witness;
    throw NotFreeActionError("reconstruct: block positions collide, t_g fixes a point (g=" +
                             std::to_string(g) + ", x=" + std::to_string(x) + ")");
  }
  const int n = sp.points;
  const int d = R.dim;
  if (R.sites() != n || R.matrix.rows() != n * d)
    throw ValidationError("reconstruct: realization shape does not match the space");
  if (R.site_weights != sp.weights)
    throw ValidationError("reconstruct: realization weights do not match the space");

  CMatrix residual = R.matrix;
  std::map<int, CoefficientField> coeffs;
  for (int g = 0; g < sp.group->order; ++g) {
    CoefficientField a = CoefficientField::zeros(n, d);
    bool nonzero = false;
    for (int x = 0; x < n; ++x) {
      int y = sp.act_inv(g, x);
      CMatrix block = R.block(x, y);
      double factor = 1.0;
      if (!is_inf(R.p)) factor = std::pow(sp.weight(y) / sp.weight(x), 1.0 / R.p);
      a.at[x] = block / factor;
      if (!exactly_zero(block)) nonzero = true;
      residual.block(x * d, y * d, d, d).setZero();
    }
    if (nonzero) coeffs.emplace(g, std::move(a));
  }
  double stray = max_abs(residual);
  if (stray > pattern_tol)
    throw PatternViolationError("reconstruct: entries of magnitude " + std::to_string(stray) +
                                " outside the orbit pattern");
  return make_element(std::move(space), d, std::move(coeffs));
}

}  // namespace normlab
