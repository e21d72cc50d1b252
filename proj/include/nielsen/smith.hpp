#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nielsen/matrix.hpp"

namespace nielsen {

/// U * A * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank,
/// every d_i > 0, zeros after position `rank`.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

/// Position of the nonzero entry of least absolute value in D[t.., t..],
/// first occurrence in row-major order.
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& d,
                                                                           std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Integer& v = d(i, j);
      if (v == 0) continue;
      Integer a = v < 0 ? Integer(-v) : v;
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = std::move(a);
      }
    }
  return best;
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols()), 0};
  IntMatrix& d = s.D;
  const std::size_t limit = std::min(a.rows(), a.cols());

  std::size_t t = 0;
  for (; t < limit; ++t) {
    for (;;) {
      auto pivot = detail::smallest_entry(d, t);
      if (!pivot) return s;  // remaining block is zero
      auto [pi, pj] = *pivot;
      d.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
      d.swap_cols(t, pj);
      s.V.swap_cols(t, pj);

      bool clear = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (d(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (d(t, j) != 0) clear = false;
      }
      if (!clear) continue;

      // Row and column are clear; the pivot must divide the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row(t, i, 1);
            s.U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
    s.rank = t + 1;
  }
  return s;
}

}  // namespace nielsen
