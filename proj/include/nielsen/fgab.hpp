#pragma once

// Finitely generated abelian groups in invariant-factor form, their elements,
// homomorphisms between them, and the kernel/image/exactness queries built on
// Smith normal form.
//
// Coordinates of an element are ordered free part first, then one coordinate
// per invariant factor. Torsion coordinates are kept reduced to [0, d).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/errors.hpp"
#include "nielsen/matrix.hpp"
#include "nielsen/smith.hpp"

namespace nielsen {

class FgAbGroup {
public:
  /// The trivial group.
  FgAbGroup() = default;

  FgAbGroup(std::size_t free_rank, std::vector<Integer> torsion)
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    if (auto err = torsion_error(torsion_)) throw InvalidArgument(*err);
  }

  /// Reason a torsion list is not a valid invariant-factor chain, if any.
  static std::optional<std::string> torsion_error(const std::vector<Integer>& torsion) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] < 2)
        return "invariant factor " + torsion[i].str() + " is not >= 2";
      if (i > 0 && torsion[i] % torsion[i - 1] != 0)
        return "invariant factors break the divisibility chain: " + torsion[i - 1].str() +
               " does not divide " + torsion[i].str();
    }
    return std::nullopt;
  }

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, {}); }

  /// Z/d; d == 0 gives Z and d == 1 the trivial group.
  static FgAbGroup cyclic(const Integer& d) {
    if (d == 0) return free(1);
    if (d == 1 || d == -1) return {};
    return FgAbGroup(0, {d < 0 ? Integer(-d) : d});
  }

  struct Presented;
  /// Z^generators modulo the column span of `relations`, brought to canonical
  /// form. `to_canonical` sends original generator coordinates to canonical ones.
  static Presented from_relations(std::size_t generators, const IntMatrix& relations);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }
  /// Length of a coordinate vector.
  std::size_t rank() const noexcept { return free_rank_ + torsion_.size(); }

  /// Per-coordinate modulus: 0 for free coordinates, d_i for torsion ones.
  std::vector<Integer> moduli() const {
    std::vector<Integer> m(free_rank_, Integer(0));
    m.insert(m.end(), torsion_.begin(), torsion_.end());
    return m;
  }
  const Integer& modulus(std::size_t coord) const {
    static const Integer zero = 0;
    return coord < free_rank_ ? zero : torsion_[coord - free_rank_];
  }

  bool is_trivial() const noexcept { return rank() == 0; }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  std::optional<Integer> order() const {
    if (!is_finite()) return std::nullopt;
    Integer n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
  }

  /// Canonical reduction of a coordinate vector in place.
  void reduce(std::vector<Integer>& coords) const {
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      coords[free_rank_ + i] = mod_floor(coords[free_rank_ + i], torsion_[i]);
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    auto add = [&s](const std::string& part) {
      if (!s.empty()) s += " + ";
      s += part;
    };
    if (free_rank_ == 1) add("Z");
    else if (free_rank_ > 1) add("Z^" + std::to_string(free_rank_));
    for (const auto& d : torsion_) add("Z_" + d.str());
    return s;
  }

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

struct FgAbGroup::Presented {
  FgAbGroup group;
  IntMatrix to_canonical;
};

inline FgAbGroup::Presented FgAbGroup::from_relations(std::size_t generators,
                                                      const IntMatrix& relations) {
  if (relations.rows() != generators) throw ShapeMismatch("relation matrix row count must equal generator count");
  SmithForm s = smith_normal_form(relations);
  // Row i of U is the i-th SNF coordinate; keep free rows then the nontrivial cyclic ones.
  std::vector<std::size_t> free_rows, torsion_rows;
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < generators; ++i) {
    if (i >= s.rank) free_rows.push_back(i);
    else if (s.D(i, i) != 1) {
      torsion_rows.push_back(i);
      torsion.push_back(s.D(i, i));
    }
  }
  FgAbGroup g(free_rows.size(), torsion);
  IntMatrix p(g.rank(), generators);
  std::size_t r = 0;
  for (auto rows : {&free_rows, &torsion_rows})
    for (std::size_t i : *rows) {
      for (std::size_t j = 0; j < generators; ++j) p(r, j) = s.U(i, j);
      ++r;
    }
  for (std::size_t j = 0; j < generators; ++j) {
    for (std::size_t i = 0; i < g.torsion().size(); ++i) {
      auto& v = p(g.free_rank() + i, j);
      v = mod_floor(v, g.torsion()[i]);
    }
  }
  return {std::move(g), std::move(p)};
}

class GroupElement {
public:
  GroupElement(FgAbGroup parent, std::vector<Integer> coords)
      : parent_(std::move(parent)), coords_(std::move(coords)) {
    if (coords_.size() != parent_.rank())
      throw ShapeMismatch("element has " + std::to_string(coords_.size()) + " coordinates, group " +
                          parent_.to_string() + " needs " + std::to_string(parent_.rank()));
    parent_.reduce(coords_);
  }

  static GroupElement zero(const FgAbGroup& g) { return {g, std::vector<Integer>(g.rank())}; }
  static GroupElement generator(const FgAbGroup& g, std::size_t i) {
    std::vector<Integer> c(g.rank());
    c.at(i) = 1;
    return {g, std::move(c)};
  }

  const FgAbGroup& parent() const noexcept { return parent_; }
  const std::vector<Integer>& coords() const noexcept { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
  }

  GroupElement operator-() const {
    auto c = coords_;
    for (auto& v : c) v = -v;
    return {parent_, std::move(c)};
  }

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    a.require_same_parent(b);
    auto c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
    return {a.parent_, std::move(c)};
  }
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }
  friend GroupElement operator*(const Integer& k, const GroupElement& a) {
    auto c = a.coords_;
    for (auto& v : c) v *= k;
    return {a.parent_, std::move(c)};
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].str();
    }
    return s + ")";
  }

private:
  void require_same_parent(const GroupElement& other) const {
    if (parent_ != other.parent_)
      throw ShapeMismatch("elements of " + parent_.to_string() + " and " + other.parent_.to_string());
  }

  FgAbGroup parent_;
  std::vector<Integer> coords_;
};

class Homomorphism {
public:
  /// Column j of `matrix` holds the target coordinates of the image of source
  /// generator j. Throws ShapeMismatch on dimension errors and InvalidArgument
  /// if the matrix does not respect the source relations.
  Homomorphism(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (auto err = shape_error(source_, target_, matrix_)) throw ShapeMismatch(*err);
    if (auto err = well_definedness_error(source_, target_, matrix_)) throw InvalidArgument(*err);
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
      for (std::size_t i = target_.free_rank(); i < target_.rank(); ++i)
        matrix_(i, j) = mod_floor(matrix_(i, j), target_.modulus(i));
  }

  static std::optional<std::string> shape_error(const FgAbGroup& source, const FgAbGroup& target,
                                                const IntMatrix& m) {
    if (m.rows() != target.rank() || m.cols() != source.rank())
      return "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
             std::to_string(target.rank()) + "x" + std::to_string(source.rank()) + " for " +
             source.to_string() + " -> " + target.to_string();
    return std::nullopt;
  }

  /// d * (image of a generator of order d) must vanish in the target.
  static std::optional<std::string> well_definedness_error(const FgAbGroup& source,
                                                           const FgAbGroup& target,
                                                           const IntMatrix& m) {
    for (std::size_t j = source.free_rank(); j < source.rank(); ++j) {
      const Integer& d = source.modulus(j);
      for (std::size_t i = 0; i < target.rank(); ++i) {
        const Integer& e = target.modulus(i);
        Integer v = d * m(i, j);
        bool vanishes = e == 0 ? v == 0 : v % e == 0;
        if (!vanishes)
          return "generator " + std::to_string(j) + " has order " + d.str() + " but " + d.str() +
                 " times its image is nonzero in coordinate " + std::to_string(i);
      }
    }
    return std::nullopt;
  }

  static Homomorphism zero(const FgAbGroup& source, const FgAbGroup& target) {
    return {source, target, IntMatrix(target.rank(), source.rank())};
  }
  static Homomorphism identity(const FgAbGroup& g) { return {g, g, IntMatrix::identity(g.rank())}; }

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  GroupElement operator()(const GroupElement& x) const {
    if (x.parent() != source_)
      throw ShapeMismatch("element of " + x.parent().to_string() + " fed to homomorphism from " +
                          source_.to_string());
    return {target_, matrix_ * x.coords()};
  }

  GroupElement image_of_generator(std::size_t j) const { return {target_, matrix_.column(j)}; }

  bool is_zero() const { return matrix_.is_zero(); }

  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

inline GroupElement eval(const Homomorphism& h, const GroupElement& x) { return h(x); }

/// g after h.
inline Homomorphism compose(const Homomorphism& g, const Homomorphism& h) {
  if (h.target() != g.source())
    throw ShapeMismatch("compose: " + h.target().to_string() + " is not " + g.source().to_string());
  return {h.source(), g.target(), g.matrix() * h.matrix()};
}

class Subgroup {
public:
  Subgroup(FgAbGroup ambient, std::vector<GroupElement> generators)
      : ambient_(std::move(ambient)), generators_(std::move(generators)) {
    for (const auto& g : generators_)
      if (g.parent() != ambient_) throw ShapeMismatch("subgroup generator outside the ambient group");
  }

  const FgAbGroup& ambient() const& noexcept { return ambient_; }
  FgAbGroup ambient() && { return std::move(ambient_); }
  const std::vector<GroupElement>& generators() const& noexcept { return generators_; }
  std::vector<GroupElement> generators() && { return std::move(generators_); }

  /// Z^k -> ambient sending the i-th basis vector to the i-th generator.
  Homomorphism assembly() const {
    IntMatrix m(ambient_.rank(), generators_.size());
    for (std::size_t j = 0; j < generators_.size(); ++j)
      for (std::size_t i = 0; i < ambient_.rank(); ++i) m(i, j) = generators_[j].coords()[i];
    return {FgAbGroup::free(generators_.size()), ambient_, std::move(m)};
  }

  bool is_trivial() const {
    return std::all_of(generators_.begin(), generators_.end(), [](const auto& g) { return g.is_zero(); });
  }

  /// Isomorphism type, computed from the relations among the generators.
  FgAbGroup isomorphism_type() const;

private:
  FgAbGroup ambient_;
  std::vector<GroupElement> generators_;
};

namespace detail {

/// Integer solutions x of  M x == 0  modulo the per-row moduli (0 = exact).
/// Returned as the columns of a matrix with M.cols() rows.
inline IntMatrix kernel_lifts(const IntMatrix& m, const std::vector<Integer>& row_moduli) {
  std::vector<std::size_t> torsion_rows;
  for (std::size_t i = 0; i < row_moduli.size(); ++i)
    if (row_moduli[i] != 0) torsion_rows.push_back(i);
  IntMatrix rel(m.rows(), torsion_rows.size());
  for (std::size_t k = 0; k < torsion_rows.size(); ++k) rel(torsion_rows[k], k) = row_moduli[torsion_rows[k]];
  IntMatrix a = m.hcat(rel);
  SmithForm s = smith_normal_form(a);
  IntMatrix out(m.cols(), a.cols() - s.rank);
  for (std::size_t c = s.rank; c < a.cols(); ++c)
    for (std::size_t i = 0; i < m.cols(); ++i) out(i, c - s.rank) = s.V(i, c);
  return out;
}

inline std::vector<GroupElement> nonzero_distinct(const FgAbGroup& g, const IntMatrix& cols) {
  std::vector<GroupElement> out;
  for (std::size_t j = 0; j < cols.cols(); ++j) {
    GroupElement x(g, cols.column(j));
    if (x.is_zero() || std::find(out.begin(), out.end(), x) != out.end()) continue;
    out.push_back(std::move(x));
  }
  return out;
}

inline IntMatrix torsion_relations(const FgAbGroup& g) {
  IntMatrix rel(g.rank(), g.torsion().size());
  for (std::size_t k = 0; k < g.torsion().size(); ++k) rel(g.free_rank() + k, k) = g.torsion()[k];
  return rel;
}

}  // namespace detail

inline FgAbGroup Subgroup::isomorphism_type() const {
  const Homomorphism a = assembly();
  IntMatrix relations = detail::kernel_lifts(a.matrix(), ambient_.moduli());
  return FgAbGroup::from_relations(generators_.size(), relations).group;
}

inline Subgroup kernel(const Homomorphism& h) {
  IntMatrix lifts = detail::kernel_lifts(h.matrix(), h.target().moduli());
  return {h.source(), detail::nonzero_distinct(h.source(), lifts)};
}

inline Subgroup image(const Homomorphism& h) {
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < h.source().rank(); ++j) {
    GroupElement y = h.image_of_generator(j);
    if (!y.is_zero() && std::find(gens.begin(), gens.end(), y) == gens.end()) gens.push_back(std::move(y));
  }
  return {h.target(), std::move(gens)};
}

/// Precomputes one Smith form of [M | target relations] and then answers
/// preimage queries for many targets.
class ImageSolver {
public:
  explicit ImageSolver(Homomorphism h)
      : h_(std::move(h)), snf_(smith_normal_form(h_.matrix().hcat(detail::torsion_relations(h_.target())))) {}

  /// Some x with h(x) == y, or nullopt if y is not in the image.
  std::optional<GroupElement> preimage(const GroupElement& y) const {
    if (y.parent() != h_.target())
      throw ShapeMismatch("in_image: element of " + y.parent().to_string() + ", target is " +
                          h_.target().to_string());
    std::vector<Integer> u = snf_.U * y.coords();
    std::vector<Integer> w(snf_.V.rows());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i < snf_.rank) {
        if (u[i] % snf_.D(i, i) != 0) return std::nullopt;
        w[i] = u[i] / snf_.D(i, i);
      } else if (u[i] != 0) {
        return std::nullopt;
      }
    }
    std::vector<Integer> full = snf_.V * w;
    full.resize(h_.source().rank());
    return GroupElement(h_.source(), std::move(full));
  }

  const Homomorphism& homomorphism() const noexcept { return h_; }

private:
  Homomorphism h_;
  SmithForm snf_;
};

inline std::optional<GroupElement> in_image(const Homomorphism& h, const GroupElement& y) {
  return ImageSolver(h).preimage(y);
}

inline bool in_subgroup(const Subgroup& s, const GroupElement& y) {
  if (y.parent() != s.ambient()) throw ShapeMismatch("in_subgroup: element outside the ambient group");
  if (y.is_zero()) return true;
  if (s.generators().empty()) return false;
  return in_image(s.assembly(), y).has_value();
}

inline bool is_injective(const Homomorphism& h) { return kernel(h).is_trivial(); }

inline bool is_surjective(const Homomorphism& h) {
  ImageSolver solver(h);
  for (std::size_t i = 0; i < h.target().rank(); ++i)
    if (!solver.preimage(GroupElement::generator(h.target(), i))) return false;
  return true;
}

/// Injectivity of x -> (h1(x), h2(x)), i.e. ker h1 ∩ ker h2 == 0.
inline bool paired_injective(const Homomorphism& h1, const Homomorphism& h2) {
  if (h1.source() != h2.source()) throw ShapeMismatch("paired_injective: sources differ");
  IntMatrix stacked = h1.matrix().vcat(h2.matrix());
  std::vector<Integer> moduli = h1.target().moduli();
  auto m2 = h2.target().moduli();
  moduli.insert(moduli.end(), m2.begin(), m2.end());
  IntMatrix lifts = detail::kernel_lifts(stacked, moduli);
  return detail::nonzero_distinct(h1.source(), lifts).empty();
}

/// im(left) == ker(right).
inline bool exact_at(const Homomorphism& left, const Homomorphism& right) {
  if (left.target() != right.source())
    throw ShapeMismatch("exact_at: " + left.target().to_string() + " is not " + right.source().to_string());
  if (!compose(right, left).is_zero()) return false;
  ImageSolver solver(left);
  const Subgroup ker = kernel(right);
  for (const auto& k : ker.generators())
    if (!solver.preimage(k)) return false;
  return true;
}

}  // namespace nielsen
