#pragma once

// A curated store of homotopy groups and named homomorphisms between them.
//
// File format (line oriented, '#' starts a comment outside quotes):
//
//   nielsendb v1 [label]
//   group <space> <m> = <free_rank> [d1,d2,...] gens <labels...> src "<citation>"
//   hom <name> <space>,<m> -> <space>,<m> matrix [[..],[..]] src "<citation>"
//   assert_exact <homref> <homref>
//   assert_zero <homref>
//   assert_surjective <homref>
//
// A homref is `name@<space>,<m>` or, when the source alone is ambiguous,
// `name@<space>,<m>-><space>,<m>`. Matrix rows are target coordinates, so a
// map into the trivial group is `[]` and a map out of it is `[[],...]`.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "nielsen/errors.hpp"
#include "nielsen/fgab.hpp"
#include "nielsen/space.hpp"

namespace nielsen {

enum class HomKind { SuspensionE, Boundary, ProjP, HopfH, AntipodalA, FiberIncl, JStar };

/// `field` is meaningful only for Boundary and ProjP (boundary_R, proj_pC, ...).
struct HomName {
  HomKind kind = HomKind::SuspensionE;
  Field field = Field::R;

  static HomName suspension() { return {HomKind::SuspensionE}; }
  static HomName boundary(Field k) { return {HomKind::Boundary, k}; }
  static HomName projection(Field k) { return {HomKind::ProjP, k}; }
  static HomName hopf() { return {HomKind::HopfH}; }
  static HomName antipodal() { return {HomKind::AntipodalA}; }
  static HomName fiber_inclusion() { return {HomKind::FiberIncl}; }
  static HomName j_star() { return {HomKind::JStar}; }

  std::string to_string() const {
    switch (kind) {
      case HomKind::SuspensionE: return "suspension_E";
      case HomKind::Boundary: return std::string("boundary_") + field_letter(field);
      case HomKind::ProjP: return std::string("proj_p") + field_letter(field);
      case HomKind::HopfH: return "hopf_H";
      case HomKind::AntipodalA: return "antipodal_A";
      case HomKind::FiberIncl: return "fiber_incl";
      case HomKind::JStar: return "j_star";
    }
    return "?";
  }

  friend bool operator==(const HomName& a, const HomName& b) {
    bool fielded = a.kind == HomKind::Boundary || a.kind == HomKind::ProjP;
    return a.kind == b.kind && (!fielded || a.field == b.field);
  }
};

inline std::optional<HomName> parse_hom_name(std::string_view s) {
  if (s == "suspension_E") return HomName::suspension();
  if (s == "hopf_H") return HomName::hopf();
  if (s == "antipodal_A") return HomName::antipodal();
  if (s == "fiber_incl") return HomName::fiber_inclusion();
  if (s == "j_star") return HomName::j_star();
  auto suffixed = [&](std::string_view prefix, HomKind kind) -> std::optional<HomName> {
    if (s.size() != prefix.size() + 1 || s.substr(0, prefix.size()) != prefix) return std::nullopt;
    auto k = parse_field(s.substr(prefix.size()));
    if (!k) return std::nullopt;
    return HomName{kind, *k};
  };
  if (auto n = suffixed("boundary_", HomKind::Boundary)) return n;
  if (auto n = suffixed("proj_p", HomKind::ProjP)) return n;
  return std::nullopt;
}

struct GroupEntry {
  GroupKey key;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::vector<std::string> labels;
  std::string provenance;
  int line = 0;

  std::string id() const { return "group " + key.to_string(); }

  friend bool operator==(const GroupEntry& a, const GroupEntry& b) {
    return std::tie(a.key, a.free_rank, a.torsion, a.labels, a.provenance) ==
           std::tie(b.key, b.free_rank, b.torsion, b.labels, b.provenance);
  }
};

struct HomEntry {
  HomName name;
  GroupKey source;
  GroupKey target;
  std::vector<std::vector<Integer>> rows;  // one row per target coordinate
  std::string provenance;
  int line = 0;

  std::string ref() const { return name.to_string() + "@" + source.to_string() + "->" + target.to_string(); }
  std::string id() const { return "hom " + ref(); }

  IntMatrix matrix(std::size_t source_rank) const { return IntMatrix::from_rows(rows, source_rank); }

  friend bool operator==(const HomEntry& a, const HomEntry& b) {
    return std::tie(a.name, a.source, a.target, a.rows, a.provenance) ==
           std::tie(b.name, b.source, b.target, b.rows, b.provenance);
  }
};

struct HomRef {
  HomName name;
  GroupKey source;
  std::optional<GroupKey> target;

  std::string to_string() const {
    std::string s = name.to_string() + "@" + source.to_string();
    if (target) s += "->" + target->to_string();
    return s;
  }
  bool matches(const HomEntry& e) const {
    return e.name == name && e.source == source && (!target || e.target == *target);
  }
  friend bool operator==(const HomRef&, const HomRef&) = default;
};

inline std::optional<HomRef> parse_hom_ref(std::string_view s) {
  auto at = s.find('@');
  if (at == std::string_view::npos) return std::nullopt;
  auto name = parse_hom_name(s.substr(0, at));
  if (!name) return std::nullopt;
  std::string_view rest = s.substr(at + 1);
  std::optional<GroupKey> target;
  if (auto arrow = rest.find("->"); arrow != std::string_view::npos) {
    target = parse_group_key(rest.substr(arrow + 2));
    if (!target) return std::nullopt;
    rest = rest.substr(0, arrow);
  }
  auto source = parse_group_key(rest);
  if (!source) return std::nullopt;
  return HomRef{*name, *source, target};
}

enum class AssertionKind { Exact, Zero, Surjective };

struct Assertion {
  AssertionKind kind = AssertionKind::Zero;
  std::vector<HomRef> refs;  // two for Exact, one otherwise
  int line = 0;

  std::string to_string() const {
    std::string s = kind == AssertionKind::Exact ? "assert_exact" : kind == AssertionKind::Zero ? "assert_zero" : "assert_surjective";
    for (const auto& r : refs) s += " " + r.to_string();
    return s;
  }
  friend bool operator==(const Assertion& a, const Assertion& b) { return a.kind == b.kind && a.refs == b.refs; }
};

enum class ViolationKind {
  InvalidGroup,
  LabelCount,
  DuplicateEntry,
  DanglingReference,
  AmbiguousReference,
  NameShape,
  MatrixShape,
  IllDefined,
  NotAutomorphism,
  NotConsecutive,
  AssertionFailed,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::InvalidGroup: return "invalid-group";
    case ViolationKind::LabelCount: return "label-count";
    case ViolationKind::DuplicateEntry: return "duplicate-entry";
    case ViolationKind::DanglingReference: return "dangling-reference";
    case ViolationKind::AmbiguousReference: return "ambiguous-reference";
    case ViolationKind::NameShape: return "name-shape";
    case ViolationKind::MatrixShape: return "matrix-shape";
    case ViolationKind::IllDefined: return "ill-defined";
    case ViolationKind::NotAutomorphism: return "not-automorphism";
    case ViolationKind::NotConsecutive: return "not-consecutive";
    case ViolationKind::AssertionFailed: return "assertion-failed";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string entry;  // the offending line, e.g. "hom suspension_E@S(5),10->S(6),11"
  std::string message;
  int line = 0;

  std::string to_string() const {
    return "line " + std::to_string(line) + ": [" + nielsen::to_string(kind) + "] " + entry + ": " + message;
  }
};

/// Raised when a database file fails validation; it is rejected wholesale.
class DatabaseRejected : public Error {
public:
  explicit DatabaseRejected(std::vector<Violation> violations)
      : Error(summary(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
  static std::string summary(const std::vector<Violation>& v) {
    std::string s = "database rejected (" + std::to_string(v.size()) + " violation" + (v.size() == 1 ? "" : "s") + ")";
    for (const auto& x : v) s += "\n  " + x.to_string();
    return s;
  }
  std::vector<Violation> violations_;
};

class Database {
public:
  /// Syntax-level parse; no semantic validation. Throws ParseError.
  static Database parse(std::string_view text);
  /// Parse and validate; throws ParseError or DatabaseRejected.
  static Database load_text(std::string_view text);
  static Database load(const std::filesystem::path& path);

  std::string serialize() const;

  const std::string& version() const noexcept { return version_; }
  const std::vector<GroupEntry>& groups() const noexcept { return groups_; }
  const std::vector<HomEntry>& homs() const noexcept { return homs_; }
  const std::vector<Assertion>& assertions() const noexcept { return assertions_; }

  const GroupEntry* group_entry(const GroupKey& key) const {
    auto it = std::find_if(groups_.begin(), groups_.end(), [&](const auto& g) { return g.key == key; });
    return it == groups_.end() ? nullptr : &*it;
  }

  /// pi_m(space), or nullopt when the database does not know it.
  std::optional<FgAbGroup> group(const GroupKey& key) const {
    const GroupEntry* e = group_entry(key);
    if (!e) return std::nullopt;
    return FgAbGroup(e->free_rank, e->torsion);
  }

  const HomEntry* hom_entry(const HomName& name, const GroupKey& source, const GroupKey& target) const {
    auto it = std::find_if(homs_.begin(), homs_.end(), [&](const auto& h) {
      return h.name == name && h.source == source && h.target == target;
    });
    return it == homs_.end() ? nullptr : &*it;
  }

  std::optional<Homomorphism> hom(const HomName& name, const GroupKey& source, const GroupKey& target) const {
    const HomEntry* e = hom_entry(name, source, target);
    if (!e) return std::nullopt;
    auto s = group(source);
    auto t = group(target);
    if (!s || !t) return std::nullopt;
    return Homomorphism(*s, *t, e->matrix(s->rank()));
  }

  std::vector<const HomEntry*> resolve(const HomRef& ref) const {
    std::vector<const HomEntry*> out;
    for (const auto& h : homs_)
      if (ref.matches(h)) out.push_back(&h);
    return out;
  }

  friend bool operator==(const Database& a, const Database& b) {
    return a.version_ == b.version_ && a.groups_ == b.groups_ && a.homs_ == b.homs_ &&
           a.assertions_ == b.assertions_;
  }

  // Mutation is only for building databases programmatically before
  // validation; loaded databases are treated as immutable.
  std::vector<GroupEntry>& mutable_groups() noexcept { return groups_; }
  std::vector<HomEntry>& mutable_homs() noexcept { return homs_; }
  std::vector<Assertion>& mutable_assertions() noexcept { return assertions_; }

private:
  std::string version_;
  std::vector<GroupEntry> groups_;
  std::vector<HomEntry> homs_;
  std::vector<Assertion> assertions_;
};

namespace detail {

class LineScanner {
public:
  LineScanner(std::string_view text, int line) : s_(text), line_(line) {}

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  std::string word(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !is_ws(s_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return std::string(s_.substr(start, pos_ - start));
  }

  void keyword(std::string_view kw) {
    auto w = word(std::string(kw).c_str());
    if (w != kw) fail("expected '" + std::string(kw) + "', found '" + w + "'");
  }

  std::string quoted(const char* what) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '"') fail(std::string("expected quoted ") + what);
    auto end = s_.find('"', pos_ + 1);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string out(s_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return out;
  }

  /// A balanced [...] expression, returned without surrounding whitespace.
  std::string bracketed(const char* what) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '[') fail(std::string("expected '[' starting ") + what);
    std::size_t start = pos_;
    int depth = 0;
    for (; pos_ < s_.size(); ++pos_) {
      if (s_[pos_] == '[') ++depth;
      else if (s_[pos_] == ']' && --depth == 0) {
        ++pos_;
        return std::string(s_.substr(start, pos_ - start));
      }
    }
    fail(std::string("unbalanced brackets in ") + what);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }
  int line() const noexcept { return line_; }

private:
  static bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r'; }
  void skip_ws() {
    while (pos_ < s_.size() && is_ws(s_[pos_])) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

inline Integer parse_integer(std::string_view t, const LineScanner& sc) {
  std::string_view digits = t;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    sc.fail("not an integer: '" + std::string(t) + "'");
  Integer v{std::string(digits)};
  return t[0] == '-' ? Integer(-v) : v;
}

/// Parses `[a,b,...]` into integers.
inline std::vector<Integer> parse_int_list(std::string_view t, const LineScanner& sc) {
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') sc.fail("malformed list '" + std::string(t) + "'");
  std::vector<Integer> out;
  std::string_view inner = t.substr(1, t.size() - 2);
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(parse_integer(token, sc));
    token.clear();
  };
  bool any = false;
  for (char c : inner) {
    if (c == ',') {
      if (token.empty()) sc.fail("empty list element");
      flush();
    } else if (c != ' ' && c != '\t') {
      token += c;
      any = true;
    }
  }
  if (any && token.empty()) sc.fail("trailing comma in list");
  flush();
  return out;
}

/// Parses `[[..],[..]]`.
inline std::vector<std::vector<Integer>> parse_matrix(std::string_view t, const LineScanner& sc) {
  std::string compact;
  for (char c : t)
    if (c != ' ' && c != '\t') compact += c;
  if (compact.size() < 2 || compact.front() != '[' || compact.back() != ']') sc.fail("malformed matrix");
  std::string_view inner = std::string_view(compact).substr(1, compact.size() - 2);
  std::vector<std::vector<Integer>> rows;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    if (inner[pos] != '[') sc.fail("matrix rows must be bracketed");
    auto close = inner.find(']', pos);
    if (close == std::string_view::npos) sc.fail("unterminated matrix row");
    rows.push_back(parse_int_list(inner.substr(pos, close - pos + 1), sc));
    pos = close + 1;
    if (pos < inner.size()) {
      if (inner[pos] != ',') sc.fail("expected ',' between matrix rows");
      ++pos;
      if (pos == inner.size()) sc.fail("trailing comma in matrix");
    }
  }
  return rows;
}

inline std::string strip_comment(std::string_view line) {
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quotes = !in_quotes;
    else if (line[i] == '#' && !in_quotes) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

inline std::string format_list(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "]";
}

}  // namespace detail

inline Database Database::parse(std::string_view text) {
  Database db;
  bool have_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string line = detail::strip_comment(raw);
    detail::LineScanner sc(line, line_no);
    if (sc.at_end()) continue;
    std::string head = sc.word("directive");

    if (!have_header) {
      if (head != "nielsendb") sc.fail("missing 'nielsendb v1' header");
      std::string v = sc.word("format version");
      if (v != "v1") sc.fail("unsupported format version '" + v + "'");
      db.version_ = v;
      if (!sc.at_end()) db.version_ += " " + sc.word("label");
      if (!sc.at_end()) sc.fail("unexpected text after header");
      have_header = true;
      continue;
    }

    if (head == "group") {
      GroupEntry e;
      e.line = line_no;
      auto space = parse_space(sc.word("space"));
      if (!space) sc.fail("malformed space");
      Integer m = detail::parse_integer(sc.word("degree"), sc);
      if (m < 1 || m > 1000000) sc.fail("degree out of range");
      e.key = {*space, m.convert_to<int>()};
      sc.keyword("=");
      Integer r = detail::parse_integer(sc.word("free rank"), sc);
      if (r < 0 || r > 1000) sc.fail("free rank out of range");
      e.free_rank = r.convert_to<std::size_t>();
      e.torsion = detail::parse_int_list(sc.bracketed("torsion list"), sc);
      sc.keyword("gens");
      for (;;) {
        std::string w = sc.word("generator label or 'src'");
        if (w == "src") break;
        e.labels.push_back(std::move(w));
      }
      e.provenance = sc.quoted("citation");
      if (!sc.at_end()) sc.fail("unexpected text after citation");
      db.groups_.push_back(std::move(e));
    } else if (head == "hom") {
      HomEntry e;
      e.line = line_no;
      auto name = parse_hom_name(sc.word("homomorphism name"));
      if (!name) sc.fail("unknown homomorphism name");
      e.name = *name;
      auto src = parse_group_key(sc.word("source"));
      if (!src) sc.fail("malformed source (expected e.g. S(6),11)");
      sc.keyword("->");
      auto tgt = parse_group_key(sc.word("target"));
      if (!tgt) sc.fail("malformed target (expected e.g. S(5),10)");
      e.source = *src;
      e.target = *tgt;
      sc.keyword("matrix");
      e.rows = detail::parse_matrix(sc.bracketed("matrix"), sc);
      sc.keyword("src");
      e.provenance = sc.quoted("citation");
      if (!sc.at_end()) sc.fail("unexpected text after citation");
      db.homs_.push_back(std::move(e));
    } else if (head == "assert_exact" || head == "assert_zero" || head == "assert_surjective") {
      Assertion a;
      a.line = line_no;
      a.kind = head == "assert_exact" ? AssertionKind::Exact
               : head == "assert_zero" ? AssertionKind::Zero
                                       : AssertionKind::Surjective;
      const int arity = a.kind == AssertionKind::Exact ? 2 : 1;
      for (int i = 0; i < arity; ++i) {
        auto ref = parse_hom_ref(sc.word("homomorphism reference"));
        if (!ref) sc.fail("malformed homomorphism reference (expected name@S(n),m)");
        a.refs.push_back(*ref);
      }
      if (!sc.at_end()) sc.fail("unexpected text after assertion");
      db.assertions_.push_back(std::move(a));
    } else {
      sc.fail("unknown directive '" + head + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'nielsendb v1' header");
  return db;
}

inline std::string Database::serialize() const {
  std::ostringstream os;
  os << "nielsendb " << version_ << "\n";
  for (const auto& g : groups_) {
    os << "group " << g.key.space.to_string() << ' ' << g.key.degree << " = " << g.free_rank << ' '
       << detail::format_list(g.torsion) << " gens";
    for (const auto& l : g.labels) os << ' ' << l;
    os << " src \"" << g.provenance << "\"\n";
  }
  for (const auto& h : homs_) {
    os << "hom " << h.name.to_string() << ' ' << h.source.to_string() << " -> " << h.target.to_string()
       << " matrix [";
    for (std::size_t i = 0; i < h.rows.size(); ++i) os << (i ? "," : "") << detail::format_list(h.rows[i]);
    os << "] src \"" << h.provenance << "\"\n";
  }
  for (const auto& a : assertions_) os << a.to_string() << "\n";
  return os.str();
}

/// Expected (source, target) relationship for each homomorphism name.
/// Returns a description of the mismatch, if any.
inline std::optional<std::string> name_shape_error(const HomEntry& h) {
  const auto& s = h.source;
  const auto& t = h.target;
  auto sphere = [](const GroupKey& k) { return k.space.kind == SpaceKind::Sphere; };
  auto want = [](const std::string& what) -> std::optional<std::string> { return what; };
  const int d = real_dim(h.name.field);
  switch (h.name.kind) {
    case HomKind::SuspensionE:
      if (sphere(s) && sphere(t) && t.space.dim == s.space.dim + 1 && t.degree == s.degree + 1) return std::nullopt;
      return want("suspension_E must map pi_k(S(n)) to pi_{k+1}(S(n+1))");
    case HomKind::Boundary:
      if (sphere(s) && sphere(t) && t.degree + 1 == s.degree && s.space.dim == t.space.dim + d &&
          (t.space.dim + 1) % d == 0 && (t.space.dim + 1) / d >= 1)
        return std::nullopt;
      return want(h.name.to_string() + " must map pi_m(S(dn'+d-1)) to pi_{m-1}(S(dn'-1)), d = " + std::to_string(d));
    case HomKind::ProjP:
      if (s.space.kind == SpaceKind::Stiefel && s.space.field == h.name.field && sphere(t) &&
          t.degree == s.degree && t.space.dim == d * s.space.dim + d - 1)
        return std::nullopt;
      return want(h.name.to_string() + " must map pi_m(V(K,n')) to pi_m(S(dn'+d-1)) with matching K");
    case HomKind::HopfH:
      if (sphere(s) && sphere(t) && s.space.dim >= 2 && t.space.dim == 2 * s.space.dim - 1 && t.degree == s.degree)
        return std::nullopt;
      return want("hopf_H must map pi_m(S(n)) to pi_m(S(2n-1))");
    case HomKind::AntipodalA:
      if (sphere(s) && s == t) return std::nullopt;
      return want("antipodal_A must be an endomorphism of some pi_m(S(n))");
    case HomKind::FiberIncl: {
      if (!sphere(s) || t.space.kind != SpaceKind::Stiefel || s.degree != t.degree)
        return want("fiber_incl must map pi_k(S(dn'-1)) to pi_k(V(K,n'))");
      const int dt = real_dim(t.space.field);
      if (s.space.dim == dt * t.space.dim - 1) return std::nullopt;
      return want("fiber_incl source sphere must be S(dn'-1) for target " + t.space.to_string());
    }
    case HomKind::JStar: {
      if (!sphere(s) || t.space.kind != SpaceKind::Projective || s.degree != t.degree)
        return want("j_star must map pi_k(S(n-1)) to pi_k(P(K,n'-1))");
      const int dt = real_dim(t.space.field);
      if (s.space.dim == dt * (t.space.dim + 1) - 1) return std::nullopt;
      return want("j_star source sphere must be S(d(n'-1)+d-1) for target " + t.space.to_string());
    }
  }
  return std::nullopt;
}

/// Every violated invariant of `db`; empty iff the database is sound.
inline std::vector<Violation> validate(const Database& db) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind k, std::string entry, std::string msg, int line) {
    out.push_back({k, std::move(entry), std::move(msg), line});
  };

  // Groups.
  std::vector<GroupKey> seen;
  std::vector<GroupKey> valid_groups;
  for (const auto& g : db.groups()) {
    if (std::find(seen.begin(), seen.end(), g.key) != seen.end()) {
      report(ViolationKind::DuplicateEntry, g.id(), "second entry for the same (space, degree)", g.line);
      continue;
    }
    seen.push_back(g.key);
    if (auto err = FgAbGroup::torsion_error(g.torsion)) {
      report(ViolationKind::InvalidGroup, g.id(), *err, g.line);
      continue;
    }
    if (g.labels.size() != g.free_rank + g.torsion.size())
      report(ViolationKind::LabelCount, g.id(),
             "has " + std::to_string(g.labels.size()) + " generator labels, needs " +
                 std::to_string(g.free_rank + g.torsion.size()),
             g.line);
    valid_groups.push_back(g.key);
  }
  auto group_ok = [&](const GroupKey& k) {
    return std::find(valid_groups.begin(), valid_groups.end(), k) != valid_groups.end();
  };

  // Homomorphisms.
  std::vector<const HomEntry*> good_homs;
  for (std::size_t i = 0; i < db.homs().size(); ++i) {
    const HomEntry& h = db.homs()[i];
    bool dup = false;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& o = db.homs()[j];
      if (o.name == h.name && o.source == h.source && o.target == h.target) dup = true;
    }
    if (dup) {
      report(ViolationKind::DuplicateEntry, h.id(), "second entry for the same homomorphism", h.line);
      continue;
    }
    if (auto err = name_shape_error(h)) report(ViolationKind::NameShape, h.id(), *err, h.line);
    bool refs_ok = true;
    for (const GroupKey* k : {&h.source, &h.target}) {
      if (!db.group_entry(*k)) {
        report(ViolationKind::DanglingReference, h.id(), "no group entry for pi_" + std::to_string(k->degree) + "(" + k->space.to_string() + ")", h.line);
        refs_ok = false;
      } else if (!group_ok(*k)) {
        refs_ok = false;  // already reported on the group itself
      }
    }
    if (!refs_ok) continue;
    const FgAbGroup src = *db.group(h.source);
    const FgAbGroup tgt = *db.group(h.target);
    bool shape_ok = h.rows.size() == tgt.rank();
    for (const auto& row : h.rows) shape_ok = shape_ok && row.size() == src.rank();
    if (!shape_ok) {
      report(ViolationKind::MatrixShape, h.id(),
             "matrix must have " + std::to_string(tgt.rank()) + " rows of " + std::to_string(src.rank()) +
                 " entries for " + src.to_string() + " -> " + tgt.to_string(),
             h.line);
      continue;
    }
    IntMatrix m = h.matrix(src.rank());
    if (auto err = Homomorphism::well_definedness_error(src, tgt, m)) {
      report(ViolationKind::IllDefined, h.id(), *err, h.line);
      continue;
    }
    if (h.name.kind == HomKind::AntipodalA) {
      Homomorphism a(src, tgt, m);
      if (!is_injective(a) || !is_surjective(a))
        report(ViolationKind::NotAutomorphism, h.id(), "antipodal action must be an automorphism", h.line);
    }
    good_homs.push_back(&h);
  }

  // Assertions. Homs that failed the checks above are not evaluated again.
  for (const auto& a : db.assertions()) {
    const std::string id = a.to_string();
    std::vector<Homomorphism> maps;
    std::vector<const HomEntry*> entries;
    for (const auto& ref : a.refs) {
      auto found = db.resolve(ref);
      if (found.empty()) {
        report(ViolationKind::DanglingReference, id, "no homomorphism matches " + ref.to_string(), a.line);
        break;
      }
      if (found.size() > 1) {
        report(ViolationKind::AmbiguousReference, id, ref.to_string() + " matches " + std::to_string(found.size()) + " entries; add ->target", a.line);
        break;
      }
      if (std::find(good_homs.begin(), good_homs.end(), found.front()) == good_homs.end()) break;
      entries.push_back(found.front());
      maps.push_back(*db.hom(found.front()->name, found.front()->source, found.front()->target));
    }
    if (maps.size() != a.refs.size()) continue;

    switch (a.kind) {
      case AssertionKind::Exact:
        if (entries[0]->target != entries[1]->source) {
          report(ViolationKind::NotConsecutive, id, "target of the first map is not the source of the second", a.line);
        } else if (!exact_at(maps[0], maps[1])) {
          report(ViolationKind::AssertionFailed, id, "image of " + entries[0]->ref() + " differs from kernel of " + entries[1]->ref(), a.line);
        }
        break;
      case AssertionKind::Zero:
        if (!maps[0].is_zero()) report(ViolationKind::AssertionFailed, id, entries[0]->ref() + " is not the zero map", a.line);
        break;
      case AssertionKind::Surjective:
        if (!is_surjective(maps[0])) report(ViolationKind::AssertionFailed, id, entries[0]->ref() + " is not surjective", a.line);
        break;
    }
  }
  return out;
}

inline Database Database::load_text(std::string_view text) {
  Database db = parse(text);
  auto violations = validate(db);
  if (!violations.empty()) throw DatabaseRejected(std::move(violations));
  return db;
}

inline Database Database::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open database file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_text(buf.str());
}

}  // namespace nielsen
