#pragma once

// Nielsen and minimum coincidence numbers for pairs of maps out of spheres:
// into projective spaces KP(n') (seven-row classification), into spheres,
// and into spherical space forms S^n/G.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "nielsen/database.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/fgab.hpp"
#include "nielsen/space.hpp"

namespace nielsen {

/// A natural number or infinity.
struct ExtNat {
  std::uint64_t value = 0;
  bool infinite = false;

  static constexpr ExtNat inf() { return {0, true}; }

  friend constexpr bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.infinite || b.infinite) return a.infinite <=> b.infinite;
    return a.value <=> b.value;
  }

  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

/// What is known about a count: an interval [lo, hi] in N ∪ {inf}.
/// Exact answers have lo == hi.
struct Quantity {
  ExtNat lo;
  ExtNat hi;

  static constexpr Quantity exact(ExtNat v) { return {v, v}; }
  static constexpr Quantity exact(std::uint64_t v) { return exact(ExtNat{v}); }
  static constexpr Quantity between(ExtNat lo, ExtNat hi) { return {lo, hi}; }
  static constexpr Quantity unknown() { return {ExtNat{0}, ExtNat::inf()}; }

  constexpr bool is_exact() const { return lo == hi; }
  std::optional<ExtNat> value() const { return is_exact() ? std::optional(lo) : std::nullopt; }

  std::string to_string() const {
    if (is_exact()) return lo.to_string();
    return lo.to_string() + ".." + hi.to_string();
  }

  friend constexpr bool operator==(const Quantity&, const Quantity&) = default;
};

enum class Setting { Projective, Sphere, SpaceForm };

struct CoincidenceAnswer {
  Setting setting = Setting::Projective;
  std::optional<int> case_id;  // table row 1..7 for projective targets
  std::string case_label;      // symbolic case for other settings
  std::string condition;       // the condition that decided the case
  Quantity nielsen;
  Quantity mcc;
  Quantity mc;
  Quantity reidemeister;       // #pi_0 of the path space E(f1, f2)
  std::optional<bool> omega_sharp_zero;
  std::optional<bool> loose;
  std::optional<bool> loose_small;
  bool residue_present = false;
  std::vector<std::string> notes;

  friend bool operator==(const CoincidenceAnswer&, const CoincidenceAnswer&) = default;
};

/// Violations of N# <= MCC <= MC, MCC <= #pi_0(E) and (MC <= #pi_0(E) or
/// MC = inf), checked on the interval bounds.
inline std::vector<std::string> invariant_violations(const CoincidenceAnswer& a) {
  std::vector<std::string> out;
  for (auto [name, q] : {std::pair{"N#", a.nielsen}, {"MCC", a.mcc}, {"MC", a.mc}, {"#pi0(E)", a.reidemeister}})
    if (q.hi < q.lo) out.push_back(std::string(name) + " has an empty range");
  if (a.mcc.hi < a.nielsen.lo) out.push_back("N# > MCC");
  if (a.mc.hi < a.mcc.lo) out.push_back("MCC > MC");
  if (a.nielsen.is_exact() && a.mcc.is_exact() && a.mc.is_exact()) {
    if (!(a.nielsen.lo <= a.mcc.lo && a.mcc.lo <= a.mc.lo)) out.push_back("N# <= MCC <= MC fails");
  }
  if (a.reidemeister.is_exact()) {
    const ExtNat r = a.reidemeister.lo;
    if (a.mcc.lo > r) out.push_back("MCC > #pi0(E)");
    if (a.mc.is_exact() && !a.mc.lo.infinite && a.mc.lo > r) out.push_back("MC finite but > #pi0(E)");
  }
  return out;
}

namespace detail {
inline void enforce_invariants(const CoincidenceAnswer& a) {
  auto v = invariant_violations(a);
  if (!v.empty()) throw LogicFailure("answer violates the inequality chain: " + v.front());
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Projective targets

struct TableRow {
  int id;
  const char* condition;
  ExtNat nielsen;
  ExtNat mcc;
  ExtNat mc;
};

inline constexpr std::array<TableRow, 7> kProjectiveTable{{
    {1, "f'1 ~ f'2, [f~2] ∈ ker ∂_K", {0}, {0}, {0}},
    {2, "f'1 ~ f'2, [f~2] ∈ ker E∘∂_K − ker ∂_K", {0}, {1}, {1}},
    {3, "K = R, f'1 ~ f'2, f~2 ≁ A∘f~2", {1}, {1}, {1}},
    {4, "K = R, f'1 ≁ f'2, [f~1] − [f~2] ∈ E(π_{m−1}(S^{n−1}))", {2}, {2}, {2}},
    {5, "K = R, [f~1] − [f~2] ∉ E(π_{m−1}(S^{n−1}))", {2}, {2}, ExtNat::inf()},
    {6, "K = C or H, [f~1] = [f~2] ∉ ker E∘∂_K", {1}, {1}, {1}},
    {7, "K = C or H, [f~1] ≠ [f~2]", {1}, {1}, ExtNat::inf()},
}};

/// The database coordinates of one (K, m, n') slice, fetched on demand.
/// Missing entries raise InsufficientData naming the entry.
class ProjectiveSlice {
public:
  ProjectiveSlice(const Database& db, Field k, int m, int nprime) : db_(&db), k_(k), m_(m), nprime_(nprime) {
    if (m < 2 || nprime < 2)
      throw ConstraintViolation("maps S^m -> KP(n') are classified for m, n' >= 2 (got m=" + std::to_string(m) +
                                ", n'=" + std::to_string(nprime) + ")");
  }

  Field field() const noexcept { return k_; }
  int m() const noexcept { return m_; }
  int nprime() const noexcept { return nprime_; }
  int d() const noexcept { return real_dim(k_); }
  /// Real dimension n = d n' of KP(n').
  int n() const noexcept { return d() * nprime_; }

  GroupKey lift_key() const { return {SpaceId::sphere(n() + d() - 1), m_}; }
  GroupKey boundary_target_key() const { return {SpaceId::sphere(n() - 1), m_ - 1}; }
  GroupKey suspension_target_key() const { return {SpaceId::sphere(n()), m_}; }

  /// Residue group pi_{m-1}(S^{d-1}); trivial without lookup for K = R and for
  /// K = C with m > 2.
  std::optional<GroupKey> residue_key() const {
    if (k_ == Field::R || (k_ == Field::C && m_ > 2)) return std::nullopt;
    return GroupKey{SpaceId::sphere(d() - 1), m_ - 1};
  }

  const FgAbGroup& lift_group() const { return cached(lift_group_, [&] { return require_group(lift_key()); }); }

  FgAbGroup residue_group() const {
    auto key = residue_key();
    return key ? require_group(*key) : FgAbGroup{};
  }

  const Homomorphism& boundary() const {
    return cached(boundary_, [&] { return require_hom(HomName::boundary(k_), lift_key(), boundary_target_key()); });
  }
  const Homomorphism& suspension() const {
    return cached(suspension_, [&] {
      return require_hom(HomName::suspension(), boundary_target_key(), suspension_target_key());
    });
  }
  const Homomorphism& antipodal() const {
    return cached(antipodal_, [&] { return require_hom(HomName::antipodal(), lift_key(), lift_key()); });
  }
  /// E∘∂_K.
  const Homomorphism& suspended_boundary() const {
    return cached(suspended_boundary_, [&] { return compose(suspension(), boundary()); });
  }

  bool has_antipodal() const { return db_->hom_entry(HomName::antipodal(), lift_key(), lift_key()) != nullptr; }

  std::string describe() const {
    return std::string("S^") + std::to_string(m_) + " -> " + field_letter(k_) + "P^" + std::to_string(nprime_) +
           " (K=" + field_letter(k_) + ", m=" + std::to_string(m_) + ", n'=" + std::to_string(nprime_) + ")";
  }

  const Database& database() const noexcept { return *db_; }

private:
  template <class T, class F>
  static const T& cached(std::optional<T>& slot, F&& make) {
    if (!slot) slot.emplace(make());
    return *slot;
  }

  FgAbGroup require_group(const GroupKey& key) const {
    auto g = db_->group(key);
    if (!g) throw InsufficientData("group " + key.to_string());
    return *g;
  }
  Homomorphism require_hom(const HomName& name, const GroupKey& s, const GroupKey& t) const {
    auto h = db_->hom(name, s, t);
    if (!h) throw InsufficientData(name.to_string() + "@" + s.to_string() + "->" + t.to_string());
    return *h;
  }

  const Database* db_;
  Field k_;
  int m_;
  int nprime_;
  mutable std::optional<FgAbGroup> lift_group_;
  mutable std::optional<Homomorphism> boundary_;
  mutable std::optional<Homomorphism> suspension_;
  mutable std::optional<Homomorphism> antipodal_;
  mutable std::optional<Homomorphism> suspended_boundary_;
};

/// A class in pi_m(KP(n')) written as p_*(lift) plus a residue from the image
/// of pi_m(KP(n'-1)) ≅ pi_{m-1}(S^{d-1}).
struct ProjectiveClass {
  Field field = Field::R;
  int m = 2;
  int nprime = 2;
  GroupElement lift;
  std::optional<GroupElement> residue;
};

/// Builds a class from database coordinates, validating vector lengths.
inline ProjectiveClass make_projective_class(const Database& db, Field k, int m, int nprime,
                                             std::vector<Integer> lift,
                                             std::optional<std::vector<Integer>> residue = std::nullopt) {
  ProjectiveSlice slice(db, k, m, nprime);
  ProjectiveClass c{k, m, nprime, GroupElement(slice.lift_group(), std::move(lift)), std::nullopt};
  if (residue) c.residue = GroupElement(slice.residue_group(), std::move(*residue));
  return c;
}

/// Truth values of the seven table conditions, in table order.
/// For K = R the antipodal action and the suspension are always consulted;
/// the boundary only when f'1 ~ f'2. For K = C, H the boundary and suspension
/// are consulted only when the lifts agree.
inline std::array<bool, 7> table_conditions(const ProjectiveSlice& slice, const GroupElement& l1,
                                            const GroupElement& l2) {
  const bool real = slice.field() == Field::R;
  const bool free_homotopic = real ? (l1 == l2 || l1 == slice.antipodal()(l2)) : l1 == l2;
  auto in_ker_boundary = [&] { return slice.boundary()(l2).is_zero(); };
  auto in_ker_suspended = [&] { return slice.suspended_boundary()(l2).is_zero(); };

  std::array<bool, 7> c{};
  if (real) {
    const bool diff_suspended = in_image(slice.suspension(), l1 - l2).has_value();
    c[0] = free_homotopic && in_ker_boundary();
    c[1] = free_homotopic && in_ker_suspended() && !in_ker_boundary();
    c[2] = free_homotopic && l2 != slice.antipodal()(l2);
    c[3] = !free_homotopic && diff_suspended;
    c[4] = !diff_suspended;
  } else {
    c[0] = free_homotopic && in_ker_boundary();
    c[1] = free_homotopic && in_ker_suspended() && !in_ker_boundary();
    c[5] = l1 == l2 && !in_ker_suspended();
    c[6] = l1 != l2;
  }
  return c;
}

struct ClassifyOptions {
  /// Evaluate all seven conditions and fail unless exactly one holds.
  bool check_exclusive = false;
};

inline CoincidenceAnswer classify_projective(const Database& db, const ProjectiveClass& f1,
                                             const ProjectiveClass& f2, ClassifyOptions opts = {}) {
  if (f1.field != f2.field) throw ConstraintViolation("f1 and f2 map into projective spaces over different fields");
  if (f1.m != f2.m || f1.nprime != f2.nprime) throw ConstraintViolation("f1 and f2 have different (m, n')");
  ProjectiveSlice slice(db, f1.field, f1.m, f1.nprime);
  const FgAbGroup& g = slice.lift_group();
  for (const auto* f : {&f1, &f2})
    if (f->lift.parent() != g)
      throw ShapeMismatch("lift lives in " + f->lift.parent().to_string() + ", expected pi_" + std::to_string(slice.m()) +
                          "(S^" + std::to_string(slice.n() + slice.d() - 1) + ") = " + g.to_string());
  bool residue_present = false;
  if (f1.residue || f2.residue) {
    const FgAbGroup rg = slice.residue_group();
    for (const auto* f : {&f1, &f2}) {
      if (!f->residue) continue;
      if (f->residue->parent() != rg) throw ShapeMismatch("residue lives in the wrong group, expected " + rg.to_string());
      residue_present = residue_present || !f->residue->is_zero();
    }
  }

  const GroupElement& l1 = f1.lift;
  const GroupElement& l2 = f2.lift;
  const auto conditions = table_conditions(slice, l1, l2);
  int fired = 0;
  std::optional<std::size_t> row;
  for (std::size_t i = 0; i < conditions.size(); ++i)
    if (conditions[i]) {
      ++fired;
      if (!row) row = i;
      if (!opts.check_exclusive) break;
    }
  if (!row) throw LogicFailure("no table condition holds; the database slice " + slice.describe() + " is inconsistent");
  if (opts.check_exclusive && fired != 1)
    throw LogicFailure(std::to_string(fired) + " table conditions hold at once for " + slice.describe());

  const TableRow& t = kProjectiveTable[*row];
  CoincidenceAnswer a;
  a.setting = Setting::Projective;
  a.case_id = t.id;
  a.case_label = "row " + std::to_string(t.id);
  a.condition = t.condition;
  a.nielsen = Quantity::exact(t.nielsen);
  a.mcc = Quantity::exact(t.mcc);
  a.mc = Quantity::exact(t.mc);
  a.reidemeister = Quantity::exact(slice.field() == Field::R ? 2 : 1);

  // omega#(f1,f2) vanishes only for freely homotopic pairs, and then exactly
  // when E∘∂_K kills the lift; looseness needs ∂_K itself to kill it.
  const bool free_homotopic =
      slice.field() == Field::R ? (l1 == l2 || l1 == slice.antipodal()(l2)) : l1 == l2;
  a.omega_sharp_zero = free_homotopic && slice.suspended_boundary()(l2).is_zero();
  a.loose = free_homotopic && slice.boundary()(l2).is_zero();
  if (l1 == l2) a.loose_small = slice.boundary()(l2).is_zero();
  a.residue_present = residue_present;
  if (residue_present) a.notes.push_back("residue present, numbers unaffected");
  detail::enforce_invariants(a);
  return a;
}

// ---------------------------------------------------------------------------
// Sphere targets

/// Maps S^m -> S^n given by classes in pi_m(S^n). `antipodally_related`
/// overrides the database test class1 == A_*(class2) when supplied.
inline CoincidenceAnswer classify_sphere_target(const Database& db, int m, int n, const GroupElement& class1,
                                                const GroupElement& class2,
                                                std::optional<bool> antipodally_related = std::nullopt) {
  if (m < 1 || n < 1) throw ConstraintViolation("sphere dimensions must be >= 1");
  const GroupKey key{SpaceId::sphere(n), m};
  auto g = db.group(key);
  if (!g) throw InsufficientData("group " + key.to_string());
  for (const auto* c : {&class1, &class2})
    if (c->parent() != *g) throw ShapeMismatch("class lives in " + c->parent().to_string() + ", expected " + g->to_string());

  CoincidenceAnswer a;
  a.setting = Setting::Sphere;

  if (m == 1 && n == 1) {
    // The antipodal map of S^1 is a rotation, so f1 ~ A∘f2 iff the degrees agree.
    const Integer diff = class1.coords()[0] - class2.coords()[0];
    const Integer delta = diff < 0 ? Integer(-diff) : diff;
    if (antipodally_related && *antipodally_related != (delta == 0))
      throw ConstraintViolation("on S^1, f1 ~ A∘f2 exactly when the degrees agree");
    const auto count = delta.convert_to<std::uint64_t>();
    a.case_label = delta == 0 ? "f1 ~ A∘f2" : "circle";
    a.condition = "m = n = 1: coincidences of z^d1 and z^d2 number |d1 - d2|";
    a.nielsen = a.mcc = a.mc = Quantity::exact(count);
    a.reidemeister = delta == 0 ? Quantity::exact(ExtNat::inf()) : Quantity::exact(count);
    a.omega_sharp_zero = a.loose = delta == 0;
    detail::enforce_invariants(a);
    return a;
  }

  bool related;
  if (antipodally_related) {
    related = *antipodally_related;
  } else if (g->is_trivial()) {
    related = true;
  } else {
    auto antipodal = db.hom(HomName::antipodal(), key, key);
    if (!antipodal) throw InsufficientData("antipodal_A@" + key.to_string() + "->" + key.to_string());
    related = class1 == (*antipodal)(class2);
  }

  a.reidemeister = Quantity::exact(1);  // pi_1(S^n) = 0 for n >= 2; trivial groups otherwise
  if (related) {
    a.case_label = "f1 ~ A∘f2";
    a.condition = "f1 ~ A∘f2";
    a.nielsen = a.mcc = a.mc = Quantity::exact(0);
    a.omega_sharp_zero = a.loose = true;
    detail::enforce_invariants(a);
    return a;
  }

  a.case_label = "otherwise";
  a.condition = "f1 ≁ A∘f2";
  a.nielsen = a.mcc = Quantity::exact(1);
  a.omega_sharp_zero = a.loose = false;
  if (class1 == class2) {
    a.mc = Quantity::exact(1);
    a.notes.push_back("f1 ~ f2 on a sphere domain: MC = MCC");
  } else if (class1.is_zero() || class2.is_zero()) {
    // Root case: MC is finite exactly when the essential map is a suspension.
    const GroupElement& essential = class1.is_zero() ? class2 : class1;
    const GroupKey below{SpaceId::sphere(n - 1 >= 1 ? n - 1 : 1), m - 1};
    std::optional<Homomorphism> e;
    if (n >= 2 && m >= 2) e = db.hom(HomName::suspension(), below, key);
    if (!e) {
      a.mc = Quantity::between(ExtNat{1}, ExtNat::inf());
      a.notes.push_back("MC undetermined: needs suspension_E@" + below.to_string() + "->" + key.to_string());
    } else if (in_image(*e, essential)) {
      a.mc = Quantity::exact(1);
      a.notes.push_back("root pair with a suspended map: MC = 1");
    } else {
      a.mc = Quantity::exact(ExtNat::inf());
      a.notes.push_back("root pair with a non-suspended map: MC = inf");
    }
  } else {
    a.mc = Quantity::between(ExtNat{1}, ExtNat::inf());
    a.notes.push_back("MC undetermined for non-homotopic, non-root pairs");
  }
  detail::enforce_invariants(a);
  return a;
}

// ---------------------------------------------------------------------------
// Spherical space forms S^n / G

enum class DomainCase {
  Sphere,          // M = S^m, m >= 2
  SimplyConnected  // M simply connected, 2 <= m < 2n - 2
};

struct SpaceFormQuery {
  std::uint64_t group_order = 2;
  int n = 1;
  bool homotopic = false;
  DomainCase domain = DomainCase::Sphere;
  std::optional<int> m;  // domain dimension; required for SimplyConnected
};

/// N# and MCC for maps into S^n/G; MC only where it is forced.
inline CoincidenceAnswer classify_space_form(const SpaceFormQuery& q) {
  if (q.group_order < 2) throw ConstraintViolation("the acting group must be nontrivial (#G >= 2)");
  if (q.n < 1) throw ConstraintViolation("n must be >= 1");
  if (q.n % 2 == 0 && q.group_order != 2)
    throw ConstraintViolation("only groups of order 2 act freely on even-dimensional spheres");
  if (q.domain == DomainCase::Sphere) {
    if (q.m && *q.m < 2) throw ConstraintViolation("sphere domain needs m >= 2");
  } else {
    if (!q.m) throw ConstraintViolation("simply connected domain needs its dimension m");
    if (*q.m < 2 || *q.m >= 2 * q.n - 2)
      throw ConstraintViolation("simply connected domain needs 2 <= m < 2n - 2");
  }
  if (q.n == 1 && !q.homotopic)
    throw ConstraintViolation("maps from a simply connected domain into S^1/G are nulhomotopic");

  const std::uint64_t order = q.group_order;
  CoincidenceAnswer a;
  a.setting = Setting::SpaceForm;
  a.reidemeister = Quantity::exact(order);

  if (!q.homotopic) {
    a.nielsen = a.mcc = Quantity::exact(order);
    a.mc = Quantity::between(ExtNat{order}, ExtNat::inf());
    a.omega_sharp_zero = a.loose = false;
    a.notes.push_back("MC is either #G or inf");
    if (q.n % 2 == 1) {
      a.case_label = "n odd, f1 ≁ f2";
      a.condition = "n odd, f1 ≁ f2";
    } else {
      a.case_label = "n even, f1 ≁ f2";
      a.condition = "n even, f1 ≁ f2";
      a.notes.push_back("N# ∈ {0,…,#G}; if N# ≠ #G then f1 ~ f2, contradicting f1 ≁ f2; hence N# = #G and #G <= MCC <= #pi0(E) = #G");
    }
  } else if (q.n % 2 == 1) {
    a.case_label = "n odd, f1 ~ f2";
    a.condition = "n odd, f1 ~ f2";
    a.nielsen = a.mcc = a.mc = Quantity::exact(0);
    a.omega_sharp_zero = a.loose = true;
    a.notes.push_back("f1 can be pushed off itself along a nowhere vanishing vector field");
  } else {
    a.case_label = "n even, f1 ~ f2 (indeterminate)";
    a.condition = "n even, f1 ~ f2";
    a.nielsen = a.mcc = Quantity::between(ExtNat{0}, ExtNat{1});
    a.mc = q.domain == DomainCase::Sphere ? Quantity::between(ExtNat{0}, ExtNat{1}) : Quantity::unknown();
    a.notes.push_back("homotopic pairs have MCC <= 1; whether N# is 0 or 1 is not determined");
    if (q.domain == DomainCase::Sphere) a.notes.push_back("sphere domain: MC = MCC");
  }
  detail::enforce_invariants(a);
  return a;
}

// ---------------------------------------------------------------------------
// Covering-space counts

/// N# from the vanishing pattern of omega#(g∘f~1, f~2) over the deck group:
/// the number of deck elements whose class does not vanish. Accepts a range
/// of bools or of (deck element, bool) pairs.
template <std::ranges::input_range R>
std::size_t nielsen_via_liftings(const R& vanishing) {
  std::size_t total = 0;
  std::size_t nonvanishing = 0;
  for (const auto& entry : vanishing) {
    ++total;
    if constexpr (std::is_convertible_v<std::ranges::range_value_t<R>, bool>) {
      if (!static_cast<bool>(entry)) ++nonvanishing;
    } else {
      if (!static_cast<bool>(entry.second)) ++nonvanishing;
    }
  }
  if (total == 0) throw InvalidArgument("the deck group has at least the identity element");
  return nonvanishing;
}

/// #pi_0(E(f1, f2)) = #pi_1(KP(n')) for maps S^m -> KP(n').
inline std::uint64_t reidemeister_count(Field k, int m) {
  if (m < 2) throw ConstraintViolation("Reidemeister count of a sphere domain needs m >= 2");
  return k == Field::R ? 2 : 1;
}

/// #pi_0(E(f1, f2)) = #G for a simply connected domain and a covering with
/// deck group G acting transitively on fibers.
inline std::uint64_t reidemeister_count_deck(std::uint64_t deck_order) {
  if (deck_order == 0) throw InvalidArgument("deck group order must be >= 1");
  return deck_order;
}

}  // namespace nielsen
