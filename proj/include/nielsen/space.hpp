#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "nielsen/errors.hpp"

namespace nielsen {

/// Real, complex or quaternionic scalars.
enum class Field { R, C, H };

/// Real dimension of the field: 1, 2 or 4.
constexpr int real_dim(Field k) noexcept {
  switch (k) {
    case Field::R: return 1;
    case Field::C: return 2;
    case Field::H: return 4;
  }
  return 0;
}

constexpr char field_letter(Field k) noexcept {
  switch (k) {
    case Field::R: return 'R';
    case Field::C: return 'C';
    case Field::H: return 'H';
  }
  return '?';
}

inline std::optional<Field> parse_field(std::string_view s) {
  if (s == "R") return Field::R;
  if (s == "C") return Field::C;
  if (s == "H") return Field::H;
  return std::nullopt;
}

enum class SpaceKind { Sphere, Stiefel, Projective };

/// S(n), V(K,n') = orthonormal 2-frames in K^{n'+1}, P(K,n') = lines in K^{n'+1}.
/// For Stiefel and Projective spaces `dim` holds n'; the real dimension
/// d*n' of the projective space is derived.
struct SpaceId {
  SpaceKind kind = SpaceKind::Sphere;
  Field field = Field::R;
  int dim = 1;

  static SpaceId sphere(int n) { return checked({SpaceKind::Sphere, Field::R, n}); }
  static SpaceId stiefel(Field k, int nprime) { return checked({SpaceKind::Stiefel, k, nprime}); }
  static SpaceId projective(Field k, int nprime) { return checked({SpaceKind::Projective, k, nprime}); }

  /// Real dimension of P(K,n'); the sphere dimension for spheres.
  int real_dimension() const noexcept { return kind == SpaceKind::Sphere ? dim : real_dim(field) * dim; }

  std::string to_string() const {
    switch (kind) {
      case SpaceKind::Sphere: return "S(" + std::to_string(dim) + ")";
      case SpaceKind::Stiefel: return std::string("V(") + field_letter(field) + "," + std::to_string(dim) + ")";
      case SpaceKind::Projective: return std::string("P(") + field_letter(field) + "," + std::to_string(dim) + ")";
    }
    return "?";
  }

  friend auto operator<=>(const SpaceId&, const SpaceId&) = default;

private:
  static SpaceId checked(SpaceId s) {
    if (s.dim < 1) throw InvalidArgument("space dimension must be >= 1: " + s.to_string());
    return s;
  }
};

/// Parses `S(n)`, `V(K,n')` or `P(K,n')`.
inline std::optional<SpaceId> parse_space(std::string_view s) {
  auto parse_int = [](std::string_view t) -> std::optional<int> {
    if (t.empty() || t.size() > 6) return std::nullopt;
    int v = 0;
    for (char c : t) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return v;
  };
  if (s.size() < 4 || s[1] != '(' || s.back() != ')') return std::nullopt;
  std::string_view inner = s.substr(2, s.size() - 3);
  if (s[0] == 'S') {
    auto n = parse_int(inner);
    if (!n || *n < 1) return std::nullopt;
    return SpaceId::sphere(*n);
  }
  if (s[0] != 'V' && s[0] != 'P') return std::nullopt;
  auto comma = inner.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto k = parse_field(inner.substr(0, comma));
  auto n = parse_int(inner.substr(comma + 1));
  if (!k || !n || *n < 1) return std::nullopt;
  return s[0] == 'V' ? SpaceId::stiefel(*k, *n) : SpaceId::projective(*k, *n);
}

/// The homotopy group pi_degree(space).
struct GroupKey {
  SpaceId space;
  int degree = 0;

  std::string to_string() const { return space.to_string() + "," + std::to_string(degree); }
  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

/// Parses `S(6),11` style references.
inline std::optional<GroupKey> parse_group_key(std::string_view s) {
  auto comma = s.rfind(',');
  if (comma == std::string_view::npos || comma + 1 >= s.size()) return std::nullopt;
  auto space = parse_space(s.substr(0, comma));
  if (!space) return std::nullopt;
  int m = 0;
  for (char c : s.substr(comma + 1)) {
    if (c < '0' || c > '9') return std::nullopt;
    m = m * 10 + (c - '0');
    if (m > 1000000) return std::nullopt;
  }
  if (m < 1) return std::nullopt;
  return GroupKey{*space, m};
}

}  // namespace nielsen
