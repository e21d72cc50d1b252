#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "nielsen/database.hpp"
#include "nielsen/fgab.hpp"

namespace testing_support {

using nielsen::FgAbGroup;
using nielsen::GroupElement;
using nielsen::Homomorphism;
using nielsen::IntMatrix;
using nielsen::Integer;

inline const nielsen::Database& shipped_db() {
  static const nielsen::Database db = nielsen::Database::load(NIELSEN_DEFAULT_DB);
  return db;
}

inline std::string shipped_text() {
  std::ifstream in(NIELSEN_DEFAULT_DB);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline GroupElement el(const FgAbGroup& g, std::vector<long long> c) {
  std::vector<Integer> v(c.begin(), c.end());
  return {g, std::move(v)};
}

/// Every element of a finite group, in lexicographic coordinate order.
inline std::vector<GroupElement> all_elements(const FgAbGroup& g) {
  std::vector<GroupElement> out;
  std::vector<Integer> c(g.rank());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == c.size()) {
      out.emplace_back(g, c);
      return;
    }
    for (Integer v = 0; v < g.modulus(i); ++v) {
      c[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// Elements with free coordinates in [-r, r] and all torsion residues.
inline std::vector<GroupElement> box_elements(const FgAbGroup& g, long r) {
  std::vector<GroupElement> out;
  std::vector<Integer> c(g.rank());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == c.size()) {
      out.emplace_back(g, c);
      return;
    }
    if (g.modulus(i) == 0) {
      for (long v = -r; v <= r; ++v) {
        c[i] = v;
        rec(i + 1);
      }
    } else {
      for (Integer v = 0; v < g.modulus(i); ++v) {
        c[i] = v;
        rec(i + 1);
      }
    }
  };
  rec(0);
  return out;
}

/// All finite groups of order <= max_order with at most max_factors
/// invariant factors (the trivial group included).
inline std::vector<FgAbGroup> finite_groups(long max_order, std::size_t max_factors) {
  std::vector<FgAbGroup> out{FgAbGroup{}};
  std::function<void(std::vector<Integer>&, long)> rec = [&](std::vector<Integer>& chain, long order) {
    if (chain.size() == max_factors) return;
    long last = chain.empty() ? 1 : chain.back().convert_to<long>();
    for (long d = std::max<long>(2, last); order * d <= max_order; d += last) {
      if (d % last != 0) continue;
      chain.push_back(d);
      out.emplace_back(0, chain);
      rec(chain, order * d);
      chain.pop_back();
    }
  };
  std::vector<Integer> chain;
  rec(chain, 1);
  return out;
}

/// A uniformly chosen well-defined homomorphism between finite groups.
inline Homomorphism random_hom(const FgAbGroup& s, const FgAbGroup& t, std::mt19937_64& rng) {
  IntMatrix m(t.rank(), s.rank());
  for (std::size_t j = 0; j < s.rank(); ++j) {
    const long d = s.modulus(j).convert_to<long>();
    for (std::size_t i = 0; i < t.rank(); ++i) {
      const long e = t.modulus(i).convert_to<long>();
      if (e == 0) {
        m(i, j) = d == 0 ? static_cast<long>(rng() % 11) - 5 : 0;
        continue;
      }
      // d * x == 0 mod e  iff  x is a multiple of e / gcd(d, e).
      const long step = d == 0 ? 1 : e / std::gcd(d, e);
      m(i, j) = step * static_cast<long>(rng() % static_cast<unsigned long>(e / step));
    }
  }
  return {s, t, std::move(m)};
}

/// Subgroup generated by `gens` in a finite group, by closure.
inline std::set<std::vector<Integer>> closure(const FgAbGroup& g, const std::vector<GroupElement>& gens) {
  std::set<std::vector<Integer>> seen{GroupElement::zero(g).coords()};
  std::vector<GroupElement> frontier{GroupElement::zero(g)};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        GroupElement y = x + s;
        if (seen.insert(y.coords()).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace testing_support
