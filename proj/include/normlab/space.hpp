#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normlab/errors.hpp"
#include "normlab/group.hpp"
#include "normlab/rational.hpp"

namespace normlab {

// A finite set X with a strictly positive weight measure and a left action
// of a finite group by permutations: action[g][x] = t_g(x), t_e = id,
// t_g o t_h = t_{gh}. Weights keep an exact rational form when the scenario
// file provided one.
struct MeasuredGSpace {
  GroupPtr group;
  int points = 0;
  std::vector<double> weights;
  std::vector<std::optional<Rational>> weight_rationals;
  std::vector<std::vector<int>> action;

  int act(int g, int x) const { return action[g][x]; }
  int act_inv(int g, int x) const { return action[group->inv(g)][x]; }
  double weight(int x) const { return weights[x]; }
};

using SpacePtr = std::shared_ptr<const MeasuredGSpace>;

// Validates every type invariant; error messages name the violated law.
inline SpacePtr make_space(GroupPtr group, std::vector<double> weights,
                           std::vector<std::vector<int>> action,
                           std::vector<std::optional<Rational>> weight_rationals = {}) {
  if (!group) throw ValidationError("space: null group");
  const int n = static_cast<int>(weights.size());
  if (n == 0) throw ValidationError("space: needs at least one point");
  for (int x = 0; x < n; ++x)
    if (!(weights[x] > 0.0))
      throw ValidationError("space: weight at point " + std::to_string(x) + " is not strictly positive");
  if (static_cast<int>(action.size()) != group->order)
    throw ValidationError("space: action has " + std::to_string(action.size()) + " permutations, group order is " +
                          std::to_string(group->order));
  std::vector<char> seen(n);
  for (int g = 0; g < group->order; ++g) {
    if (static_cast<int>(action[g].size()) != n)
      throw ValidationError("space: permutation of element " + std::to_string(g) + " has wrong length");
    std::fill(seen.begin(), seen.end(), 0);
    for (int x = 0; x < n; ++x) {
      int y = action[g][x];
      if (y < 0 || y >= n || seen[y])
        throw ValidationError("space: action of element " + std::to_string(g) + " is not a permutation");
      seen[y] = 1;
    }
  }
  for (int x = 0; x < n; ++x)
    if (action[group->identity][x] != x)
      throw ValidationError("space: t_e is not the identity permutation");
  for (int g = 0; g < group->order; ++g)
    for (int h = 0; h < group->order; ++h) {
      int gh = group->mul(g, h);
      for (int x = 0; x < n; ++x)
        if (action[g][action[h][x]] != action[gh][x])
          throw ValidationError("space: action violates t_g o t_h = t_gh at (g=" + std::to_string(g) +
                                ", h=" + std::to_string(h) + ")");
    }
  if (!weight_rationals.empty() && static_cast<int>(weight_rationals.size()) != n)
    throw ValidationError("space: weight_rationals length mismatch");
  if (weight_rationals.empty()) weight_rationals.resize(n);

  auto sp = std::make_shared<MeasuredGSpace>();
  sp->group = std::move(group);
  sp->points = n;
  sp->weights = std::move(weights);
  sp->weight_rationals = std::move(weight_rationals);
  sp->action = std::move(action);
  return sp;
}

inline bool same_space(const MeasuredGSpace& a, const MeasuredGSpace& b) {
  if (&a == &b) return true;
  return a.points == b.points && a.weights == b.weights && a.action == b.action &&
         (a.group == b.group || a.group->table == b.group->table);
}

// X_g = { x : t_g(x) = x }
inline std::vector<int> fixed_set(const MeasuredGSpace& sp, int g) {
  std::vector<int> out;
  for (int x = 0; x < sp.points; ++x)
    if (sp.act(g, x) == x) out.push_back(x);
  return out;
}

struct FreedomResult {
  bool free = false;
  // (g, x) with g != e and t_g(x) = x, present iff !free
  std::optional<std::pair<int, int>> witness;
};

// On a finite discrete space every nonempty set has nonempty interior, so
// "every nontrivial fixed set has empty interior" degenerates to "every
// nontrivial fixed set is empty", i.e. the action is free.
inline FreedomResult is_topologically_free(const MeasuredGSpace& sp) {
  for (int g = 0; g < sp.group->order; ++g) {
    if (g == sp.group->identity) continue;
    for (int x = 0; x < sp.points; ++x)
      if (sp.act(g, x) == x) return {false, std::make_pair(g, x)};
  }
  return {true, std::nullopt};
}

// rho_g(x) = mu(t_g^{-1}(x)) / mu(x); the density that makes the weighted
// composition operator of g an isometry on every weighted l^p.
inline std::vector<double> rn_cocycle(const MeasuredGSpace& sp, int g) {
  std::vector<double> rho(sp.points);
  for (int x = 0; x < sp.points; ++x) rho[x] = sp.weight(sp.act_inv(g, x)) / sp.weight(x);
  return rho;
}

// X = G with uniform measure and t_g(x) = x * g^{-1}; conjugation by a
// character-valued multiplier then shifts coefficients by chi(g), which is
// what makes this scenario's norms character-invariant.
inline SpacePtr translation_scenario(GroupPtr group) {
  const int n = group->order;
  std::vector<std::vector<int>> action(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x) action[g][x] = group->mul(x, group->inv(g));
  return make_space(std::move(group), std::vector<double>(n, 1.0), std::move(action));
}

inline std::vector<int> orbit(const MeasuredGSpace& sp, int x) {
  std::vector<char> hit(sp.points, 0);
  std::vector<int> out;
  for (int g = 0; g < sp.group->order; ++g) {
    int y = sp.act(g, x);
    if (!hit[y]) {
      hit[y] = 1;
      out.push_back(y);
    }
  }
  return out;
}

}  // namespace normlab
