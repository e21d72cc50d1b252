#pragma once

// Looseness of selfcoincidence pairs (f, f) for f: S^m -> KP(n').

#include <optional>
#include <string>

#include "nielsen/classifier.hpp"
#include "nielsen/database.hpp"
#include "nielsen/fgab.hpp"

namespace nielsen {

struct LoosenessVerdict {
  Field field = Field::R;
  int m = 2;
  int nprime = 2;
  GroupElement lift;

  bool small_deformation = false;      // ∂_K(lift) = 0
  bool loose = false;                  // (f, f) loose by any deformation
  bool coincidence_producing = false;
  bool omega_sharp_zero = false;       // E∘∂_K(lift) = 0
  std::optional<bool> lifted_pair_loose;  // (f~, f~) loose; unknown for C, H without A_*
  bool gap_witness = false;            // omega#(f,f) = 0 but (f,f) not loose

  friend bool operator==(const LoosenessVerdict&, const LoosenessVerdict&) = default;
};

inline LoosenessVerdict self_verdict(const Database& db, Field k, int m, int nprime, const GroupElement& lift) {
  ProjectiveSlice slice(db, k, m, nprime);
  if (lift.parent() != slice.lift_group())
    throw ShapeMismatch("lift lives in " + lift.parent().to_string() + ", expected " + slice.lift_group().to_string());

  LoosenessVerdict v{k, m, nprime, lift, false, false, false, false, std::nullopt, false};
  v.small_deformation = slice.boundary()(lift).is_zero();
  v.loose = v.small_deformation;
  v.coincidence_producing = !v.small_deformation;
  v.omega_sharp_zero = slice.suspended_boundary()(lift).is_zero();
  v.gap_witness = v.omega_sharp_zero && !v.small_deformation;

  if (k == Field::R || v.omega_sharp_zero) {
    v.lifted_pair_loose = v.omega_sharp_zero;
  } else if (slice.has_antipodal()) {
    // On a sphere target (f~, f~) is loose iff f~ ~ A∘f~.
    v.lifted_pair_loose = lift == slice.antipodal()(lift);
  }
  return v;
}

/// Violations of small ⇒ loose ⇒ (not coincidence producing ∧ omega# = 0)
/// and of the gap-witness definition.
inline std::vector<std::string> verdict_violations(const LoosenessVerdict& v) {
  std::vector<std::string> out;
  if (v.small_deformation && !v.loose) out.push_back("small deformation without looseness");
  if (v.loose && v.coincidence_producing) out.push_back("loose but coincidence producing");
  if (v.loose && !v.omega_sharp_zero) out.push_back("loose with omega# != 0");
  if (v.gap_witness != (v.omega_sharp_zero && !v.loose)) out.push_back("gap_witness inconsistent");
  if (v.loose != v.small_deformation || v.loose == v.coincidence_producing)
    out.push_back("looseness conditions (i)-(iii) disagree");
  if (v.field == Field::R && v.lifted_pair_loose != v.omega_sharp_zero)
    out.push_back("K=R: lifted pair looseness differs from omega# = 0");
  if (v.omega_sharp_zero && v.lifted_pair_loose == false) out.push_back("omega# = 0 but lifted pair not loose");
  return out;
}

/// Homomorphisms out of pi_{m-1}(S^{n-1}): j_* into the complement of a
/// point, incl_* into the unit tangent sphere bundle, and E.
struct StructuralCriterion {
  Homomorphism j_star;
  Homomorphism incl_star;
  Homomorphism suspension;
};

namespace detail {
inline void require_common_source(const Homomorphism& a, const Homomorphism& b) {
  if (a.source() != b.source())
    throw ShapeMismatch("criterion maps have different sources: " + a.source().to_string() + " and " +
                        b.source().to_string());
}
}  // namespace detail

/// Small-deformation looseness ⇔ not coincidence producing, for every class.
inline bool criteria_equivalence_iii(const Homomorphism& j_star, const Homomorphism& incl_star) {
  detail::require_common_source(j_star, incl_star);
  return paired_injective(j_star, incl_star);
}
inline bool criteria_equivalence_iii(const StructuralCriterion& c) {
  return criteria_equivalence_iii(c.j_star, c.incl_star);
}

/// Small-deformation looseness ⇔ omega#(f,f) = 0, for every class.
inline bool criteria_equivalence_iii_prime(const Homomorphism& suspension, const Homomorphism& incl_star) {
  detail::require_common_source(suspension, incl_star);
  return paired_injective(suspension, incl_star);
}
inline bool criteria_equivalence_iii_prime(const StructuralCriterion& c) {
  return criteria_equivalence_iii_prime(c.suspension, c.incl_star);
}

/// Reads j_star, fiber_incl and suspension_E on pi_{m-1}(S^{n-1}) for
/// N = KP(n') from the database.
inline StructuralCriterion structural_criterion(const Database& db, Field k, int m, int nprime) {
  ProjectiveSlice slice(db, k, m, nprime);
  const GroupKey src = slice.boundary_target_key();
  auto fetch = [&](const HomName& name, const GroupKey& tgt) {
    auto h = db.hom(name, src, tgt);
    if (!h) throw InsufficientData(name.to_string() + "@" + src.to_string() + "->" + tgt.to_string());
    return *h;
  };
  return {fetch(HomName::j_star(), {SpaceId::projective(k, nprime - 1), m - 1}),
          fetch(HomName::fiber_inclusion(), {SpaceId::stiefel(k, nprime), m - 1}),
          fetch(HomName::suspension(), slice.suspension_target_key())};
}

}  // namespace nielsen
