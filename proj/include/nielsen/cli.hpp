#pragma once

// The `nielsen` command line: argument parsing, database resolution, exit codes.
//
//   0 success, 2 usage error, 3 insufficient data, 4 database rejected,
//   1 internal failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "nielsen/classifier.hpp"
#include "nielsen/database.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/render.hpp"
#include "nielsen/selfcoincidence.hpp"

#ifndef NIELSEN_DEFAULT_DB
#define NIELSEN_DEFAULT_DB "data/default.ndb"
#endif

namespace nielsen::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kInsufficient = 3, kDatabase = 4 };

/// Parses "1,-2,0" into coordinates; "" and "()" denote the empty vector.
inline std::vector<Integer> parse_coords(std::string_view s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '(' && c != ')' && c != '[' && c != ']') t += c;
  std::vector<Integer> out;
  if (t.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = t.find(',', start);
    std::string part = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t digits = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (part.size() == digits || part.find_first_not_of("0123456789", digits) != std::string::npos)
      throw InvalidArgument("bad coordinate '" + part + "' in '" + std::string(s) + "'");
    if (part[0] == '+') part.erase(0, 1);
    out.emplace_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw InvalidArgument("expected true or false, got '" + s + "'");
}

/// --db, then $NIELSEN_DB, then the shipped database.
inline std::filesystem::path resolve_db_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("NIELSEN_DB"); env && *env) return env;
  return NIELSEN_DEFAULT_DB;
}

namespace detail {

struct Options {
  std::string db;
  std::string output = "text";

  std::string field;
  int m = 0;
  int nprime = 0;
  int n = 0;
  std::string f1, f2, r1, r2, f;
  bool check_exclusive = false;
  std::string antipodal;

  std::uint64_t order = 0;
  std::string homotopic;
  std::string domain = "sphere";
};

inline Field require_field(const std::string& s) {
  auto k = parse_field(s);
  if (!k) throw InvalidArgument("--K must be R, C or H");
  return *k;
}

inline GroupElement element_in(const FgAbGroup& g, const std::string& text, const char* flag) {
  auto coords = parse_coords(text);
  if (coords.size() != g.rank())
    throw ShapeMismatch(std::string(flag) + " has " + std::to_string(coords.size()) + " coordinates, but " +
                        g.to_string() + " needs " + std::to_string(g.rank()));
  return {g, std::move(coords)};
}

inline std::vector<std::string> labels_of(const Database& db, const GroupKey& key) {
  const GroupEntry* e = db.group_entry(key);
  return e ? e->labels : std::vector<std::string>{};
}

inline Json coords_json(const GroupElement& x) {
  Json a = Json::array();
  for (const auto& c : x.coords()) a.push_back(nielsen::detail::integer_json(c));
  return a;
}

class Runner {
public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {
    if (o.output != "text" && o.output != "machine") throw InvalidArgument("--output must be text or machine");
    mode_ = o.output == "machine" ? OutputMode::Machine : OutputMode::Text;
  }

  void classify() {
    const Database db = load();
    const Field k = require_field(o_.field);
    ProjectiveSlice slice(db, k, o_.m, o_.nprime);
    const FgAbGroup& g = slice.lift_group();
    auto l1 = element_in(g, o_.f1, "--f1");
    auto l2 = element_in(g, o_.f2, "--f2");
    ProjectiveClass c1{k, o_.m, o_.nprime, l1, std::nullopt};
    ProjectiveClass c2{k, o_.m, o_.nprime, l2, std::nullopt};
    if (!o_.r1.empty() || !o_.r2.empty()) {
      const FgAbGroup rg = slice.residue_group();
      if (!o_.r1.empty()) c1.residue = element_in(rg, o_.r1, "--r1");
      if (!o_.r2.empty()) c2.residue = element_in(rg, o_.r2, "--r2");
    }
    auto answer = classify_projective(db, c1, c2, ClassifyOptions{o_.check_exclusive});

    const auto labels = labels_of(db, slice.lift_key());
    if (mode_ == OutputMode::Machine) {
      Json j = answer_json(answer, db.version());
      j["input"] = {{"K", std::string(1, field_letter(k))}, {"m", o_.m}, {"nprime", o_.nprime},
                    {"f1", coords_json(l1)}, {"f2", coords_json(l2)}};
      out_ << j.dump() << "\n";
      return;
    }
    out_ << slice.describe() << "\n";
    const std::string where = " in pi_" + std::to_string(o_.m) + "(" + slice.lift_key().space.to_string() +
                              ") = " + g.to_string();
    out_ << "f~1 = " << describe_element(l1, labels) << where << "\n";
    out_ << "f~2 = " << describe_element(l2, labels) << where << "\n";
    out_ << render(answer, mode_, db.version());
  }

  void self() {
    const Database db = load();
    const Field k = require_field(o_.field);
    ProjectiveSlice slice(db, k, o_.m, o_.nprime);
    auto lift = element_in(slice.lift_group(), o_.f, "--f");
    auto verdict = self_verdict(db, k, o_.m, o_.nprime, lift);
    if (mode_ == OutputMode::Text) {
      out_ << slice.describe() << "\n";
      out_ << "f~ = " << describe_element(lift, labels_of(db, slice.lift_key())) << "\n";
    }
    out_ << render(verdict, mode_, db.version());
  }

  void sphere() {
    const Database db = load();
    if (o_.m < 1 || o_.n < 1) throw ConstraintViolation("--m and --n must be >= 1");
    const GroupKey key{SpaceId::sphere(o_.n), o_.m};
    auto g = db.group(key);
    if (!g) throw InsufficientData("group " + key.to_string());
    auto c1 = element_in(*g, o_.f1, "--f1");
    auto c2 = element_in(*g, o_.f2, "--f2");
    std::optional<bool> related;
    if (!o_.antipodal.empty()) related = parse_bool(o_.antipodal);
    auto answer = classify_sphere_target(db, o_.m, o_.n, c1, c2, related);
    if (mode_ == OutputMode::Machine) {
      Json j = answer_json(answer, db.version());
      j["input"] = {{"m", o_.m}, {"n", o_.n}, {"f1", coords_json(c1)}, {"f2", coords_json(c2)}};
      out_ << j.dump() << "\n";
      return;
    }
    const auto labels = labels_of(db, key);
    out_ << "S^" << o_.m << " -> S^" << o_.n << "\n";
    out_ << "f1 = " << describe_element(c1, labels) << " in pi_" << o_.m << "(S(" << o_.n << ")) = " << g->to_string()
         << "\n";
    out_ << "f2 = " << describe_element(c2, labels) << "\n";
    out_ << render(answer, mode_, db.version());
  }

  void spaceform() {
    SpaceFormQuery q;
    q.group_order = o_.order;
    q.n = o_.n;
    q.homotopic = parse_bool(o_.homotopic);
    if (o_.domain == "sphere")
      q.domain = DomainCase::Sphere;
    else if (o_.domain == "simply-connected")
      q.domain = DomainCase::SimplyConnected;
    else
      throw InvalidArgument("--domain must be sphere or simply-connected");
    if (o_.m > 0) q.m = o_.m;
    out_ << render(classify_space_form(q), mode_);
  }

  int db_validate(std::ostream& err) {
    const auto path = resolve_db_path(o_.db);
    const Database db = Database::parse(read(path));
    const auto violations = validate(db);
    if (mode_ == OutputMode::Machine) {
      Json v = Json::array();
      for (const auto& x : violations)
        v.push_back({{"kind", to_string(x.kind)}, {"entry", x.entry}, {"line", x.line}, {"message", x.message}});
      Json j{{"kind", "validation"}, {"db_version", db.version()}, {"ok", violations.empty()}, {"violations", v}};
      (violations.empty() ? out_ : err) << j.dump() << "\n";
    } else if (violations.empty()) {
      out_ << "OK " << db.version() << ": " << db.groups().size() << " groups, " << db.homs().size()
           << " homomorphisms, " << db.assertions().size() << " assertions\n";
    } else {
      for (const auto& x : violations) err << x.to_string() << "\n";
    }
    return violations.empty() ? kOk : kDatabase;
  }

  void db_show() {
    const Database db = load();
    if (mode_ == OutputMode::Text) {
      out_ << db.serialize();
      return;
    }
    Json groups = Json::array();
    for (const auto& g : db.groups())
      groups.push_back({{"key", g.key.to_string()},
                        {"group", FgAbGroup(g.free_rank, g.torsion).to_string()},
                        {"generators", g.labels}});
    Json homs = Json::array();
    for (const auto& h : db.homs()) homs.push_back(h.ref());
    out_ << Json{{"kind", "database"}, {"db_version", db.version()}, {"groups", groups}, {"homs", homs}}.dump()
         << "\n";
  }

private:
  static std::string read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatabaseUnavailable(path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  Database load() const { return Database::load_text(read(resolve_db_path(o_.db))); }

  const Options& o_;
  std::ostream& out_;
  OutputMode mode_ = OutputMode::Text;

public:
  class DatabaseUnavailable : public Error {
  public:
    explicit DatabaseUnavailable(const std::string& path) : Error("cannot read database file " + path) {}
  };
};

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Nielsen and minimum coincidence numbers for maps out of spheres", "nielsen"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--db", o.db, "database file (default: $NIELSEN_DB, then the shipped database)");
  app.add_option("--output", o.output, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  auto* classify = app.add_subcommand("classify", "pair of maps S^m -> KP(n')");
  classify->add_option("--K", o.field, "R, C or H")->required();
  classify->add_option("--m", o.m)->required();
  classify->add_option("--nprime", o.nprime)->required();
  classify->add_option("--f1", o.f1, "lift of f1, comma-separated coordinates")->required();
  classify->add_option("--f2", o.f2, "lift of f2")->required();
  classify->add_option("--r1", o.r1, "residue of f1 in pi_{m-1}(S^{d-1})");
  classify->add_option("--r2", o.r2, "residue of f2");
  classify->add_flag("--check-exclusive", o.check_exclusive, "evaluate all seven conditions");

  auto* self = app.add_subcommand("self", "selfcoincidence pair (f, f) for f: S^m -> KP(n')");
  self->add_option("--K", o.field)->required();
  self->add_option("--m", o.m)->required();
  self->add_option("--nprime", o.nprime)->required();
  self->add_option("--f", o.f, "lift of f")->required();

  auto* sphere = app.add_subcommand("sphere", "pair of maps S^m -> S^n");
  sphere->add_option("--m", o.m)->required();
  sphere->add_option("--n", o.n)->required();
  sphere->add_option("--f1", o.f1)->required();
  sphere->add_option("--f2", o.f2)->required();
  sphere->add_option("--antipodal", o.antipodal, "true if f1 ~ A o f2 (otherwise read from the database)");

  auto* spaceform = app.add_subcommand("spaceform", "pair of maps into S^n/G");
  spaceform->add_option("--order", o.order, "#G")->required();
  spaceform->add_option("--n", o.n)->required();
  spaceform->add_option("--homotopic", o.homotopic, "true or false")->required();
  spaceform->add_option("--domain", o.domain, "sphere or simply-connected");
  spaceform->add_option("--m", o.m, "domain dimension");

  auto* db_validate = app.add_subcommand("db-validate", "validate a database file");
  auto* db_show = app.add_subcommand("db-show", "print the database");

  std::vector<const char*> argv{"nielsen"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    detail::Runner r(o, out);
    if (classify->parsed()) r.classify();
    else if (self->parsed()) r.self();
    else if (sphere->parsed()) r.sphere();
    else if (spaceform->parsed()) r.spaceform();
    else if (db_validate->parsed()) return r.db_validate(err);
    else if (db_show->parsed()) r.db_show();
    return kOk;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << "\n";
    return kInsufficient;
  } catch (const ParseError& e) {
    err << "error: database " << e.what() << "\n";
    return kDatabase;
  } catch (const DatabaseRejected& e) {
    err << "error: " << e.what() << "\n";
    return kDatabase;
  } catch (const detail::Runner::DatabaseUnavailable& e) {
    err << "error: " << e.what() << "\n";
    return kDatabase;
  } catch (const LogicFailure& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace nielsen::cli
