#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "normlab/errors.hpp"
#include "normlab/rational.hpp"

namespace normlab {

// A finite group given by its full composition table. Immutable after
// construction; ops are index arithmetic on [0, order).
struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> table;  // table[g][h] = g*h
  int identity = 0;
  std::vector<int> inverses;
  std::string descriptor;  // the descriptor string the group was built from

  int mul(int g, int h) const { return table[g][h]; }
  int inv(int g) const { return inverses[g]; }

  int pow(int g, long long k) const {
    int r = identity;
    if (k < 0) {
      g = inv(g);
      k = -k;
    }
    for (long long i = 0; i < k; ++i) r = mul(r, g);
    return r;
  }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// ---------------------------------------------------------------------------
// Group descriptors: cyclic:n, symmetric:n, product:[d1,d2,...], table:[[...]]
// ---------------------------------------------------------------------------

struct GroupDescriptor {
  struct Cyclic {
    int n;
  };
  struct Symmetric {
    int n;
  };
  struct Product {
    std::vector<GroupDescriptor> factors;
  };
  struct Table {
    std::vector<std::vector<int>> entries;
  };
  std::variant<Cyclic, Symmetric, Product, Table> node;
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline GroupDescriptor parse_descriptor_at(const std::string& s, size_t& i);

inline int parse_int_at(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (start == i) throw ParseError("expected integer at position " + std::to_string(start) + " in group descriptor: " + s);
  return std::stoi(s.substr(start, i - start));
}

inline std::vector<std::vector<int>> parse_int_table_at(const std::string& s, size_t& i) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != '[') throw ParseError("expected '[' at position " + std::to_string(i) + " in group descriptor: " + s);
  ++i;
  std::vector<std::vector<int>> rows;
  skip_ws(s, i);
  while (i < s.size() && s[i] != ']') {
    if (s[i] != '[') throw ParseError("expected '[' at position " + std::to_string(i) + " in group descriptor: " + s);
    ++i;
    std::vector<int> row;
    skip_ws(s, i);
    while (i < s.size() && s[i] != ']') {
      row.push_back(parse_int_at(s, i));
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') {
        ++i;
        skip_ws(s, i);
      }
    }
    if (i >= s.size()) throw ParseError("unterminated row in group descriptor table: " + s);
    ++i;  // ']'
    rows.push_back(std::move(row));
    skip_ws(s, i);
    if (i < s.size() && s[i] == ',') {
      ++i;
      skip_ws(s, i);
    }
  }
  if (i >= s.size()) throw ParseError("unterminated table in group descriptor: " + s);
  ++i;  // ']'
  return rows;
}

inline GroupDescriptor parse_descriptor_at(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t start = i;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  std::string head = s.substr(start, i - start);
  skip_ws(s, i);
  if (i >= s.size() || s[i] != ':')
    throw ParseError("expected ':' after '" + head + "' in group descriptor: " + s);
  ++i;
  if (head == "cyclic") return {GroupDescriptor::Cyclic{parse_int_at(s, i)}};
  if (head == "symmetric") return {GroupDescriptor::Symmetric{parse_int_at(s, i)}};
  if (head == "table") return {GroupDescriptor::Table{parse_int_table_at(s, i)}};
  if (head == "product") {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != '[') throw ParseError("expected '[' after 'product:' in group descriptor: " + s);
    ++i;
    std::vector<GroupDescriptor> factors;
    skip_ws(s, i);
    while (i < s.size() && s[i] != ']') {
      factors.push_back(parse_descriptor_at(s, i));
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') {
        ++i;
        skip_ws(s, i);
      }
    }
    if (i >= s.size()) throw ParseError("unterminated product in group descriptor: " + s);
    ++i;  // ']'
    if (factors.empty()) throw ParseError("product descriptor needs at least one factor: " + s);
    return {GroupDescriptor::Product{std::move(factors)}};
  }
  throw ParseError("unknown group descriptor head '" + head + "' in: " + s);
}

}  // namespace detail

inline GroupDescriptor parse_group_descriptor(const std::string& text) {
  size_t i = 0;
  GroupDescriptor d = detail::parse_descriptor_at(text, i);
  detail::skip_ws(text, i);
  if (i != text.size())
    throw ParseError("trailing characters at position " + std::to_string(i) + " in group descriptor: " + text);
  return d;
}

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------

inline constexpr int kSymmetricCap = 5;    // order 120
inline constexpr int kGroupOrderCap = 4096;

// Full axiom check: closure, unique identity, inverses, associativity over
// all triples. Desk scale keeps the O(n^3) loop cheap.
inline void validate_group_table(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InvalidTableError("empty composition table");
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(table[g].size()) != n)
      throw InvalidTableError("row " + std::to_string(g) + " has wrong length");
    for (int h = 0; h < n; ++h)
      if (table[g][h] < 0 || table[g][h] >= n)
        throw InvalidTableError("entry (" + std::to_string(g) + "," + std::to_string(h) + ") out of range");
  }
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw InvalidTableError("no identity element");
  for (int g = 0; g < n; ++g) {
    bool has_inv = false;
    for (int h = 0; h < n; ++h)
      if (table[g][h] == identity && table[h][g] == identity) {
        has_inv = true;
        break;
      }
    if (!has_inv) throw InvalidTableError("element " + std::to_string(g) + " has no inverse");
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        if (table[table[g][h]][k] != table[g][table[h][k]])
          throw InvalidTableError("associativity fails at (" + std::to_string(g) + "," + std::to_string(h) +
                                  "," + std::to_string(k) + ")");
}

namespace detail {

inline FiniteGroup finish_group(std::vector<std::vector<int>> table, std::string descriptor) {
  validate_group_table(table);
  FiniteGroup G;
  G.order = static_cast<int>(table.size());
  G.table = std::move(table);
  G.descriptor = std::move(descriptor);
  for (int e = 0; e < G.order; ++e) {
    bool ok = true;
    for (int g = 0; g < G.order && ok; ++g) ok = G.table[e][g] == g && G.table[g][e] == g;
    if (ok) {
      G.identity = e;
      break;
    }
  }
  G.inverses.resize(G.order);
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h)
      if (G.table[g][h] == G.identity && G.table[h][g] == G.identity) {
        G.inverses[g] = h;
        break;
      }
  return G;
}

inline std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) t[g][h] = (g + h) % n;
  return t;
}

inline std::vector<std::vector<int>> symmetric_table(int n) {
  // Elements are the n! permutations of {0..n-1} in lexicographic order;
  // composition is (p*q)(i) = p(q(i)).
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  std::vector<int> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int m = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<int> comp(n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
      t[a][b] = index_of(comp);
    }
  return t;
}

inline std::vector<std::vector<int>> product_table(const std::vector<std::vector<int>>& ta,
                                                   const std::vector<std::vector<int>>& tb) {
  const int na = static_cast<int>(ta.size());
  const int nb = static_cast<int>(tb.size());
  // pair (a, b) -> a*nb + b
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          t[a1 * nb + b1][a2 * nb + b2] = ta[a1][a2] * nb + tb[b1][b2];
  return t;
}

inline std::vector<std::vector<int>> descriptor_table(const GroupDescriptor& d) {
  if (const auto* c = std::get_if<GroupDescriptor::Cyclic>(&d.node)) {
    if (c->n < 1) throw SizeLimitError("cyclic order must be >= 1");
    if (c->n > kGroupOrderCap) throw SizeLimitError("cyclic order exceeds cap " + std::to_string(kGroupOrderCap));
    return cyclic_table(c->n);
  }
  if (const auto* s = std::get_if<GroupDescriptor::Symmetric>(&d.node)) {
    if (s->n < 1) throw SizeLimitError("symmetric degree must be >= 1");
    if (s->n > kSymmetricCap)
      throw SizeLimitError("symmetric degree capped at " + std::to_string(kSymmetricCap));
    return symmetric_table(s->n);
  }
  if (const auto* p = std::get_if<GroupDescriptor::Product>(&d.node)) {
    std::vector<std::vector<int>> t = descriptor_table(p->factors.front());
    for (size_t i = 1; i < p->factors.size(); ++i) {
      auto next = descriptor_table(p->factors[i]);
      if (t.size() * next.size() > static_cast<size_t>(kGroupOrderCap))
        throw SizeLimitError("product order exceeds cap " + std::to_string(kGroupOrderCap));
      t = product_table(t, next);
    }
    return t;
  }
  const auto& tab = std::get<GroupDescriptor::Table>(d.node);
  if (tab.entries.size() > static_cast<size_t>(kGroupOrderCap))
    throw SizeLimitError("table order exceeds cap " + std::to_string(kGroupOrderCap));
  return tab.entries;
}

inline std::string descriptor_to_string(const GroupDescriptor& d) {
  if (const auto* c = std::get_if<GroupDescriptor::Cyclic>(&d.node)) return "cyclic:" + std::to_string(c->n);
  if (const auto* s = std::get_if<GroupDescriptor::Symmetric>(&d.node))
    return "symmetric:" + std::to_string(s->n);
  if (const auto* p = std::get_if<GroupDescriptor::Product>(&d.node)) {
    std::string out = "product:[";
    for (size_t i = 0; i < p->factors.size(); ++i) {
      if (i) out += ",";
      out += descriptor_to_string(p->factors[i]);
    }
    return out + "]";
  }
  const auto& tab = std::get<GroupDescriptor::Table>(d.node);
  std::string out = "table:[";
  for (size_t g = 0; g < tab.entries.size(); ++g) {
    if (g) out += ",";
    out += "[";
    for (size_t h = 0; h < tab.entries[g].size(); ++h) {
      if (h) out += ",";
      out += std::to_string(tab.entries[g][h]);
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace detail

// Explicit tables are validated, never trusted.
inline GroupPtr build_group(const GroupDescriptor& d) {
  return std::make_shared<const FiniteGroup>(
      detail::finish_group(detail::descriptor_table(d), detail::descriptor_to_string(d)));
}

inline GroupPtr build_group(const std::string& descriptor) {
  return build_group(parse_group_descriptor(descriptor));
}

inline bool is_abelian(const FiniteGroup& G) {
  for (int g = 0; g < G.order; ++g)
    for (int h = g + 1; h < G.order; ++h)
      if (G.table[g][h] != G.table[h][g]) return false;
  return true;
}

// Folner deficiency |(U*s) symdiff U| / |U| as an exact rational. Finite
// groups pass the Folner test with U = G; the quantity is exposed for
// experiments with smaller windows.
inline Rational folner_deficiency(const FiniteGroup& G, const std::vector<int>& U, int s) {
  if (U.empty()) throw EmptySubsetError("folner_deficiency: U must be nonempty");
  std::set<int> u(U.begin(), U.end());
  std::set<int> us;
  for (int g : u) us.insert(G.mul(g, s));
  long long sym = 0;
  for (int g : us)
    if (!u.count(g)) ++sym;
  for (int g : u)
    if (!us.count(g)) ++sym;
  return Rational(sym, static_cast<long long>(u.size()));
}

}  // namespace normlab
