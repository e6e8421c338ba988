#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "normlab/element.hpp"
#include "normlab/errors.hpp"
#include "normlab/group.hpp"
#include "normlab/rng.hpp"
#include "normlab/space.hpp"

namespace normlab {

using json = nlohmann::json;

// One self-contained experiment: a group, a measured G-space, the element
// b = sum a_g T_g, a master seed and a label. All cross-references are
// validated at load time.
struct Scenario {
  std::string label;
  std::uint64_t seed = 0;
  GroupPtr group;
  SpacePtr space;
  AlgebraElement element;
};

namespace detail {

inline Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ValidationError("element: expected a number or [re, im] pair at " + where);
}

// weights: numbers, or "p/q" strings kept exact
inline void parse_weights(const json& j, std::vector<double>& weights,
                          std::vector<std::optional<Rational>>& rationals) {
  if (!j.is_array()) throw ValidationError("space.weights must be an array");
  for (const auto& w : j) {
    if (w.is_number()) {
      weights.push_back(w.get<double>());
      rationals.emplace_back(std::nullopt);
    } else if (w.is_string()) {
      Rational r = parse_rational(w.get<std::string>());
      weights.push_back(to_double(r));
      rationals.emplace_back(r);
    } else {
      throw ValidationError("space.weights entries must be numbers or \"p/q\" strings");
    }
  }
}

inline std::vector<int> parse_permutation(const json& j, int points, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != points)
    throw ValidationError("space.action: permutation at " + where + " must list all " +
                          std::to_string(points) + " points");
  std::vector<int> perm;
  perm.reserve(points);
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ValidationError("space.action: permutation entries must be integers");
    perm.push_back(v.get<int>());
  }
  return perm;
}

// Per-generator form: {"<element index>": [perm], ...}. The closure under
// the group law must reach every element and stay consistent; conflicts are
// reported with the offending (g, h) pair.
inline std::vector<std::vector<int>> close_generator_action(const FiniteGroup& G, int points,
                                                            const std::map<int, std::vector<int>>& gens) {
  std::vector<std::vector<int>> action(G.order);
  std::vector<int> id(points);
  std::iota(id.begin(), id.end(), 0);
  action[G.identity] = id;
  std::vector<int> known = {G.identity};
  for (const auto& [g, perm] : gens) {
    if (g < 0 || g >= G.order)
      throw ValidationError("space.action: generator index " + std::to_string(g) + " is not a group element");
    if (!action[g].empty() && action[g] != perm && g != G.identity)
      throw ValidationError("space.action: conflicting permutations for element " + std::to_string(g));
    if (g == G.identity && perm != id)
      throw ValidationError("space.action: t_e is not the identity permutation");
    if (action[g].empty()) {
      action[g] = perm;
      known.push_back(g);
    }
  }
  // close under multiplication until stable
  bool grew = true;
  while (grew) {
    grew = false;
    size_t count = known.size();
    for (size_t i = 0; i < count; ++i)
      for (size_t j = 0; j < count; ++j) {
        int g = known[i], h = known[j];
        int gh = G.mul(g, h);
        std::vector<int> comp(points);
        for (int x = 0; x < points; ++x) comp[x] = action[g][action[h][x]];
        if (action[gh].empty()) {
          action[gh] = std::move(comp);
          known.push_back(gh);
          grew = true;
        } else if (action[gh] != comp) {
          throw ValidationError("space: action violates t_g o t_h = t_gh at (g=" + std::to_string(g) +
                                ", h=" + std::to_string(h) + ")");
        }
      }
  }
  for (int g = 0; g < G.order; ++g)
    if (action[g].empty())
      throw ValidationError("space.action: the given generators do not generate the group (element " +
                            std::to_string(g) + " unreached)");
  return action;
}

}  // namespace detail

inline Scenario parse_scenario(const json& j) {
  Scenario s;
  if (!j.is_object()) throw ValidationError("scenario: top level must be an object");
  if (!j.contains("group") || !j["group"].is_string())
    throw ValidationError("scenario: \"group\" must be a descriptor string");
  s.group = build_group(j["group"].get<std::string>());

  if (!j.contains("space") || !j["space"].is_object())
    throw ValidationError("scenario: \"space\" must be an object");
  const json& sp = j["space"];
  if (!sp.contains("points") || !sp["points"].is_number_integer())
    throw ValidationError("space.points must be an integer");
  int points = sp["points"].get<int>();
  std::vector<double> weights;
  std::vector<std::optional<Rational>> rats;
  if (!sp.contains("weights")) throw ValidationError("space.weights missing");
  detail::parse_weights(sp["weights"], weights, rats);
  if (static_cast<int>(weights.size()) != points)
    throw ValidationError("space.weights length does not match space.points");

  if (!sp.contains("action")) throw ValidationError("space.action missing");
  std::vector<std::vector<int>> action;
  if (sp["action"].is_array()) {
    if (static_cast<int>(sp["action"].size()) != s.group->order)
      throw ValidationError("space.action: per-element form needs one permutation per group element");
    for (int g = 0; g < s.group->order; ++g)
      action.push_back(detail::parse_permutation(sp["action"][g], points, "element " + std::to_string(g)));
  } else if (sp["action"].is_object()) {
    std::map<int, std::vector<int>> gens;
    for (auto it = sp["action"].begin(); it != sp["action"].end(); ++it) {
      int g = 0;
      try {
        g = std::stoi(it.key());
      } catch (...) {
        throw ValidationError("space.action: generator keys must be element indices");
      }
      gens[g] = detail::parse_permutation(it.value(), points, "generator " + it.key());
    }
    action = detail::close_generator_action(*s.group, points, gens);
  } else {
    throw ValidationError("space.action must be an array of permutations or a generator map");
  }
  s.space = make_space(s.group, std::move(weights), std::move(action), std::move(rats));

  int dim = 1;
  std::map<int, CoefficientField> coeffs;
  if (j.contains("element")) {
    if (!j["element"].is_array()) throw ValidationError("element must be an array of {g, coeff}");
    bool first = true;
    for (const auto& entry : j["element"]) {
      if (!entry.is_object() || !entry.contains("g") || !entry.contains("coeff"))
        throw ValidationError("element entries must be objects with \"g\" and \"coeff\"");
      int g = entry["g"].get<int>();
      const json& co = entry["coeff"];
      if (!co.is_array() || static_cast<int>(co.size()) != points)
        throw ValidationError("element.coeff must list a matrix per point (g=" + std::to_string(g) + ")");
      // fiber dimension from the first point of the first coefficient
      auto matrix_of = [&](const json& pj, const std::string& where) {
        if (pj.is_number() || (pj.is_array() && pj.size() == 2 && pj[0].is_number())) {
          CMatrix m(1, 1);
          m(0, 0) = detail::parse_complex(pj, where);
          return m;
        }
        if (!pj.is_array() || pj.empty()) throw ValidationError("element: bad matrix at " + where);
        int d = static_cast<int>(pj.size());
        CMatrix m(d, d);
        for (int r = 0; r < d; ++r) {
          if (!pj[r].is_array() || static_cast<int>(pj[r].size()) != d)
            throw ValidationError("element: coefficient matrices must be square at " + where);
          for (int c = 0; c < d; ++c) m(r, c) = detail::parse_complex(pj[r][c], where);
        }
        return m;
      };
      CoefficientField f;
      for (int x = 0; x < points; ++x) {
        CMatrix m = matrix_of(co[x], "g=" + std::to_string(g) + ", x=" + std::to_string(x));
        if (x == 0) {
          f.dim = static_cast<int>(m.rows());
          if (first) {
            dim = f.dim;
            first = false;
          }
        }
        if (m.rows() != f.dim)
          throw ValidationError("element: fiber dimension varies across points at g=" + std::to_string(g));
        f.at.push_back(std::move(m));
      }
      if (f.dim != dim)
        throw DimensionMismatchError("element: coefficients disagree on fiber dimension");
      if (coeffs.count(g)) throw ValidationError("element: duplicate support entry g=" + std::to_string(g));
      coeffs.emplace(g, std::move(f));
    }
  }
  s.element = make_element(s.space, dim, std::move(coeffs));
  s.seed = j.value("seed", std::uint64_t{0});
  s.label = j.value("label", std::string{});
  return s;
}

inline json save_scenario(const Scenario& s) {
  json j;
  j["group"] = s.group->descriptor;
  json sp;
  sp["points"] = s.space->points;
  json w = json::array();
  for (int x = 0; x < s.space->points; ++x) {
    if (s.space->weight_rationals[x])
      w.push_back(to_string(*s.space->weight_rationals[x]));
    else
      w.push_back(s.space->weights[x]);
  }
  sp["weights"] = std::move(w);
  json act = json::array();
  for (const auto& perm : s.space->action) act.push_back(perm);
  sp["action"] = std::move(act);
  j["space"] = std::move(sp);
  json el = json::array();
  for (const auto& [g, a] : s.element.coeffs) {
    json entry;
    entry["g"] = g;
    json per_point = json::array();
    for (const auto& m : a.at) {
      json rows = json::array();
      for (int r = 0; r < a.dim; ++r) {
        json row = json::array();
        for (int c = 0; c < a.dim; ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
      }
      per_point.push_back(std::move(rows));
    }
    entry["coeff"] = std::move(per_point);
    el.push_back(std::move(entry));
  }
  j["element"] = std::move(el);
  j["seed"] = s.seed;
  j["label"] = s.label;
  return j;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  }
  return parse_scenario(j);
}

// Deterministic random scenario: a free action assembled from |G|-sized
// orbits, weights uniform in [0.5, 2], coefficient entries uniform in the
// complex square [-1,1]^2.
inline Scenario random_scenario(const std::string& group_descriptor, int points, int dim,
                                int support_size, std::uint64_t seed) {
  Scenario s;
  s.group = build_group(group_descriptor);
  const int m = s.group->order;
  if (points <= 0 || points % m != 0)
    throw InfeasibleFreeActionError("a free action on " + std::to_string(points) +
                                    " points needs the group order " + std::to_string(m) + " to divide it");
  if (support_size < 0 || support_size > m)
    throw ValidationError("support size must lie in [0, group order]");

  // orbit layout: a seeded shuffle assigns points to (orbit, group element) slots
  std::vector<int> slot(points);
  std::iota(slot.begin(), slot.end(), 0);
  SplitMix64 shuffle_rng(derive_seed(seed, 1));
  for (int i = points - 1; i > 0; --i)
    std::swap(slot[i], slot[shuffle_rng.below(static_cast<std::uint64_t>(i) + 1)]);
  std::vector<std::vector<int>> action(m, std::vector<int>(points));
  for (int g = 0; g < m; ++g)
    for (int o = 0; o < points / m; ++o)
      for (int h = 0; h < m; ++h) action[g][slot[o * m + h]] = slot[o * m + s.group->mul(g, h)];

  SplitMix64 weight_rng(derive_seed(seed, 2));
  std::vector<double> weights(points);
  for (auto& w : weights) w = weight_rng.range(0.5, 2.0);
  s.space = make_space(s.group, std::move(weights), std::move(action));

  SplitMix64 support_rng(derive_seed(seed, 3));
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = m - 1; i > 0; --i)
    std::swap(pool[i], pool[support_rng.below(static_cast<std::uint64_t>(i) + 1)]);
  std::vector<int> support(pool.begin(), pool.begin() + support_size);
  std::sort(support.begin(), support.end());

  SplitMix64 coeff_rng(derive_seed(seed, 4));
  std::map<int, CoefficientField> coeffs;
  for (int g : support) {
    CoefficientField f;
    f.dim = dim;
    for (int x = 0; x < points; ++x) {
      CMatrix mat(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) mat(r, c) = coeff_rng.complex_in_square();
      f.at.push_back(std::move(mat));
    }
    coeffs.emplace(g, std::move(f));
  }
  s.element = make_element(s.space, dim, std::move(coeffs));
  s.seed = seed;
  s.label = "random(" + group_descriptor + ",n=" + std::to_string(points) + ",d=" + std::to_string(dim) +
            ",k=" + std::to_string(support_size) + ",seed=" + std::to_string(seed) + ")";
  return s;
}

// The running two-point example: Z2 swapping {0,1}, scalar coefficients
// a_e = (1, 2), a_s = (3, 1). With uniform weights it realizes (at any p)
// to [[1,3],[1,2]].
inline Scenario running_scenario(double w0 = 1.0, double w1 = 1.0) {
  Scenario s;
  s.group = build_group("cyclic:2");
  s.space = make_space(s.group, {w0, w1}, {{0, 1}, {1, 0}});
  std::map<int, CoefficientField> coeffs;
  coeffs.emplace(0, CoefficientField::scalars({1.0, 2.0}));
  coeffs.emplace(1, CoefficientField::scalars({3.0, 1.0}));
  s.element = make_element(s.space, 1, std::move(coeffs));
  s.seed = 0;
  s.label = "running-z2";
  return s;
}

// Deliberately non-free: Z2 acting trivially, b = T_e - T_s. The element
// realizes to the zero matrix while its identity coefficient has norm 1, so
// property (*) fails, exhibiting why the freedom hypothesis is needed.
inline Scenario counterexample_scenario() {
  Scenario s;
  s.group = build_group("cyclic:2");
  s.space = make_space(s.group, {1.0, 1.0}, {{0, 1}, {0, 1}});
  std::map<int, CoefficientField> coeffs;
  coeffs.emplace(0, CoefficientField::scalars({1.0, 1.0}));
  coeffs.emplace(1, CoefficientField::scalars({-1.0, -1.0}));
  s.element = make_element(s.space, 1, std::move(coeffs));
  s.seed = 0;
  s.label = "counterexample-trivial-action";
  return s;
}

}  // namespace normlab
