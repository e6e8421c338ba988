#pragma once

#include <cmath>
#include <vector>

#include "normlab/group.hpp"
#include "normlab/rational.hpp"
#include "normlab/types.hpp"

namespace normlab {

// exp(2*pi*i*q) for a rational phase q (in turns). Quadrant reduction keeps
// values of symmetric phases exactly negated/conjugated, and the snap makes
// the small exact values (0, +-1/2, +-1) bit-exact, so full root systems
// cancel cleanly in character sums.
inline Complex unit_root(Rational q) {
  q = mod1(q);
  auto snap = [](double v) {
    for (double t : {0.0, 0.5, -0.5, 1.0, -1.0})
      if (std::abs(v - t) < 4e-16) return t;
    return v;
  };
  auto cossin = [&](const Rational& r) {
    double th = 2.0 * M_PI * to_double(r);
    return std::pair<double, double>(snap(std::cos(th)), snap(std::sin(th)));
  };
  if (q < Rational(1, 4)) {
    auto [c, s] = cossin(q);
    return {c, s};
  }
  if (q < Rational(1, 2)) {
    auto [c, s] = cossin(Rational(1, 2) - q);
    return {-c, s};
  }
  if (q < Rational(3, 4)) {
    auto [c, s] = cossin(q - Rational(1, 2));
    return {-c, -s};
  }
  auto [c, s] = cossin(Rational(1) - q);
  return {c, -s};
}

// A character of a finite abelian group, stored as exact rational phases
// (chi(g) = exp(2*pi*i*phase[g])) with the complex values materialized.
struct Character {
  std::vector<Rational> phases;
  std::vector<Complex> values;

  const Complex& value(int g) const { return values[g]; }
  int size() const { return static_cast<int>(values.size()); }

  static Character from_phases(std::vector<Rational> ph) {
    Character c;
    c.values.reserve(ph.size());
    for (auto& q : ph) q = mod1(q);
    for (const auto& q : ph) c.values.push_back(unit_root(q));
    c.phases = std::move(ph);
    return c;
  }
};

// Multiplicativity / modulus-1 / identity check, used to validate foreign
// character data before twisting.
inline bool is_character_of(const FiniteGroup& G, const Character& chi, double tol = 1e-12) {
  if (chi.size() != G.order) return false;
  if (std::abs(chi.value(G.identity) - Complex(1.0, 0.0)) > tol) return false;
  for (int g = 0; g < G.order; ++g) {
    if (std::abs(std::abs(chi.value(g)) - 1.0) > tol) return false;
    for (int h = 0; h < G.order; ++h)
      if (std::abs(chi.value(G.mul(g, h)) - chi.value(g) * chi.value(h)) > tol) return false;
  }
  return true;
}

// All |G| characters of a finite abelian group G, built by extending
// characters along a chain of subgroups: if K <= G, g not in K, and m is
// minimal with g^m in K, every character chi of K extends in exactly m ways,
// one per solution theta of m*theta = phase(chi(g^m)) mod 1. Phases stay
// exact rationals throughout.
inline std::vector<Character> characters(const FiniteGroup& G) {
  if (!is_abelian(G)) throw NonAbelianGroupError("characters: group is not abelian");
  const int n = G.order;
  std::vector<int> member(n, 0);
  std::vector<int> elements = {G.identity};
  member[G.identity] = 1;
  // phase tables, defined on the current subgroup's elements
  std::vector<std::vector<Rational>> chars = {std::vector<Rational>(n, Rational(0))};

  while (static_cast<int>(elements.size()) < n) {
    int g = 0;
    while (member[g]) ++g;
    int m = 1;
    int p = g;
    while (!member[p]) {
      p = G.mul(p, g);
      ++m;
    }
    // p == g^m, the first power landing inside the subgroup
    std::vector<std::vector<Rational>> extended;
    extended.reserve(chars.size() * static_cast<size_t>(m));
    std::vector<int> new_elements;
    for (const auto& chi : chars) {
      Rational q0 = chi[p];
      for (int j = 0; j < m; ++j) {
        Rational theta = mod1((q0 + Rational(j)) / Rational(m));
        std::vector<Rational> ext(n, Rational(0));
        int gpow = G.identity;
        for (int e = 0; e < m; ++e) {
          for (int k : elements) {
            int el = G.mul(k, gpow);
            ext[el] = mod1(chi[k] + Rational(e) * theta);
            if (&chi == &chars.front() && j == 0 && !member[el]) new_elements.push_back(el);
          }
          gpow = G.mul(gpow, g);
        }
        extended.push_back(std::move(ext));
      }
    }
    for (int el : new_elements) {
      member[el] = 1;
      elements.push_back(el);
    }
    chars = std::move(extended);
  }

  std::vector<Character> out;
  out.reserve(chars.size());
  for (auto& ph : chars) out.push_back(Character::from_phases(std::move(ph)));
  return out;
}

inline Character conjugate(const Character& chi) {
  std::vector<Rational> ph;
  ph.reserve(chi.phases.size());
  for (const auto& q : chi.phases) ph.push_back(mod1(-q));
  return Character::from_phases(std::move(ph));
}

inline Character trivial_character(const FiniteGroup& G) {
  return Character::from_phases(std::vector<Rational>(G.order, Rational(0)));
}

}  // namespace normlab
