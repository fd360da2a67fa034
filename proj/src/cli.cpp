#include "tiling/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tiling/annihilator.hpp"
#include "tiling/cyclotomic.hpp"
#include "tiling/structure.hpp"

namespace tiling::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Schema helpers. Every error names the JSON pointer of the offending value.

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw InputError("schema error at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, "missing field \"" + key + "\"");
  return *it;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) schema_error(where, "unknown field \"" + it.key() + "\"");
  }
}

Int decode_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Int(std::to_string(j.get<uint64_t>())) : Int(j.get<int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    bool digits = s.size() > start;
    for (std::size_t i = start; i < s.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(s[i]));
    if (!digits) schema_error(where, "\"" + s + "\" is not an integer");
    return Int(s);
  }
  if (j.is_number_float()) schema_error(where, "non-integer coefficient " + j.dump());
  schema_error(where, "expected an integer, got " + std::string(j.type_name()));
}

int64_t decode_i64(const json& j, const std::string& where) {
  const Int v = decode_int(j, where);
  if (!v.fits_slong_p()) schema_error(where, "value out of 64-bit range");
  return v.get_si();
}

std::vector<int64_t> decode_i64_list(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  std::vector<int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_i64(j[i], where + "/" + std::to_string(i)));
  return out;
}

GroupSpec decode_group(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  reject_unknown_keys(j, {"free_rank", "torsion"}, where);
  const int64_t d = decode_i64(require(j, "free_rank", where), where + "/free_rank");
  if (d < 0 || d > 16) schema_error(where + "/free_rank", "free rank must lie in [0, 16]");
  std::vector<int64_t> torsion;
  if (j.contains("torsion")) torsion = decode_i64_list(j["torsion"], where + "/torsion");
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) schema_error(where + "/torsion/" + std::to_string(i), "torsion moduli must be >= 2");
  }
  return GroupSpec(static_cast<int>(d), std::move(torsion));
}

GroupElement decode_element(const GroupSpec& group, const json& j, const std::string& where) {
  const auto coords = decode_i64_list(j, where);
  if (coords.size() != group.rank()) {
    schema_error(where, "element has length " + std::to_string(coords.size()) + ", group rank is " +
                            std::to_string(group.rank()));
  }
  return group.element(coords);
}

FinMap decode_finmap(const GroupSpec& group, const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of {elem, coeff} entries");
  FinMap f(group);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    if (!j[i].is_object()) schema_error(at, "expected an object");
    reject_unknown_keys(j[i], {"elem", "coeff"}, at);
    const GroupElement x = decode_element(group, require(j[i], "elem", at), at + "/elem");
    f.add(x, decode_int(require(j[i], "coeff", at), at + "/coeff"));
  }
  return f;
}

// Flattens a nested grid of the given shape, or accepts a flat row-major list.
void flatten_grid(const json& j, const std::vector<int64_t>& shape, std::size_t depth, const std::string& where,
                  std::vector<Int>& out) {
  if (!j.is_array()) schema_error(where, "expected an array");
  if (static_cast<int64_t>(j.size()) != shape[depth]) {
    schema_error(where, "grid axis " + std::to_string(depth) + " has " + std::to_string(j.size()) +
                            " entries, declared shape needs " + std::to_string(shape[depth]));
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    if (depth + 1 == shape.size()) {
      out.push_back(decode_int(j[i], at));
    } else {
      flatten_grid(j[i], shape, depth + 1, at, out);
    }
  }
}

}  // namespace

PeriodicMap decode_periodic(const GroupSpec& group, const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object with period and values");
  reject_unknown_keys(j, {"period", "values"}, where);
  std::vector<int64_t> periods;
  if (j.contains("period")) {
    periods = decode_i64_list(j["period"], where + "/period");
  } else if (group.free_rank > 0) {
    schema_error(where, "missing field \"period\"");
  }
  if (periods.size() != static_cast<std::size_t>(group.free_rank)) {
    schema_error(where + "/period", "needs one period per free coordinate (" + std::to_string(group.free_rank) + ")");
  }
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (periods[i] < 1) schema_error(where + "/period/" + std::to_string(i), "periods must be positive");
  }
  std::vector<int64_t> shape = periods;
  shape.insert(shape.end(), group.torsion.begin(), group.torsion.end());
  int64_t cells = 1;
  for (int64_t s : shape) {
    cells *= s;
    if (cells > 50'000'000) schema_error(where, "fundamental domain too large");
  }

  const json& values = require(j, "values", where);
  const std::string vwhere = where + "/values";
  std::vector<Int> flat;
  if (shape.empty()) {
    // Trivial group: a single value, bare or wrapped in a list.
    if (values.is_array()) {
      if (values.size() != 1) schema_error(vwhere, "trivial group takes exactly one value");
      flat.push_back(decode_int(values[0], vwhere + "/0"));
    } else {
      flat.push_back(decode_int(values, vwhere));
    }
  } else if (values.is_array() && shape.size() > 1 && !values.empty() && values[0].is_array()) {
    flatten_grid(values, shape, 0, vwhere, flat);
  } else {
    if (!values.is_array()) schema_error(vwhere, "expected an array");
    if (static_cast<int64_t>(values.size()) != cells) {
      schema_error(vwhere, "flat values list has " + std::to_string(values.size()) + " entries, declared shape needs " +
                               std::to_string(cells));
    }
    for (std::size_t i = 0; i < values.size(); ++i) flat.push_back(decode_int(values[i], vwhere + "/" + std::to_string(i)));
  }
  return PeriodicMap(group, std::move(periods), std::move(flat));
}

ProblemFile parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error("", "top level must be an object");
  reject_unknown_keys(doc, {"group", "f", "g", "a", "phi", "budget"}, "");

  ProblemFile p;
  p.group = decode_group(require(doc, "group", ""), "/group");
  p.f = decode_finmap(p.group, require(doc, "f", ""), "/f");
  if (doc.contains("g")) p.g = decode_periodic(p.group, doc["g"], "/g");
  if (doc.contains("a")) p.a = decode_periodic(p.group, doc["a"], "/a");
  if (doc.contains("phi")) p.phi = decode_periodic(p.group, doc["phi"], "/phi");
  if (doc.contains("budget")) {
    const json& b = doc["budget"];
    if (!b.is_object()) schema_error("/budget", "expected an object");
    reject_unknown_keys(b, {"max_q", "max_box_radius", "max_nodes"}, "/budget");
    SearchBudget budget;
    if (b.contains("max_q")) budget.max_q = decode_i64(b["max_q"], "/budget/max_q");
    if (b.contains("max_box_radius")) budget.max_box_radius = decode_i64(b["max_box_radius"], "/budget/max_box_radius");
    if (b.contains("max_nodes")) {
      const int64_t n = decode_i64(b["max_nodes"], "/budget/max_nodes");
      if (n < 1) schema_error("/budget/max_nodes", "must be positive");
      budget.max_nodes = static_cast<uint64_t>(n);
    }
    if (budget.max_q < 1) schema_error("/budget/max_q", "must be positive");
    if (budget.max_box_radius < 0) schema_error("/budget/max_box_radius", "must be non-negative");
    p.budget = budget;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Encoders

json encode_int(const Int& v) {
  if (v.fits_slong_p()) return json(static_cast<int64_t>(v.get_si()));
  return json(v.get_str());
}

json encode_group(const GroupSpec& g) { return json{{"free_rank", g.free_rank}, {"torsion", g.torsion}}; }

namespace {

json encode_finmap(const FinMap& f) {
  json out = json::array();
  for (const auto& [x, c] : f.entries()) out.push_back(json{{"elem", x.coords}, {"coeff", encode_int(c)}});
  return out;
}

json encode_character(const CharacterVector& chi) {
  json etas = json::array();
  for (const auto& e : chi.etas()) etas.push_back(e.str());
  return json{{"etas", etas}, {"order", chi.order()}};
}

json encode_verdict(const AnnihilatorVerdict& v) {
  json out;
  out["answer"] = to_string(v.answer);
  json terms = json::array();
  for (const auto& t : v.expansion) terms.push_back(json{{"elem", t.point.coords}, {"sign", t.sign.is_zero() ? 1 : -1}});
  out["expansion"] = terms;
  out["stats"] = json{{"partitions", v.stats.partitions}, {"systems", v.stats.systems}};
  if (v.answer == Answer::Yes) {
    json trace = json::array();
    for (const auto& b : v.partition_trace) {
      json omega = json::array();
      for (const auto& w : b.omega) omega.push_back(w.str());
      trace.push_back(json{{"terms", b.terms}, {"omega", omega}, {"rotation", b.rotation.str()}});
    }
    out["certificate"] = json{{"kind", "annihilator"},
                              {"character", encode_character(*v.witness_character)},
                              {"witness", encode_periodic(*v.witness_map)},
                              {"partition", trace}};
  }
  return out;
}

json encode_report_slice(const SliceReport& r) {
  return json{{"coset", r.coset},
              {"slice", encode_finmap(r.slice)},
              {"convolution", encode_periodic(r.convolution)},
              {"period_lattice", json{{"a", r.lattice.a}, {"b", r.lattice.b}, {"c", r.lattice.c}}}};
}

}  // namespace

json encode_periodic(const PeriodicMap& m) {
  json values = json::array();
  for (const Int& v : m.values()) values.push_back(encode_int(v));
  return json{{"period", m.periods()}, {"values", values}};
}

json encode_torus(const TorusAssignment& t) {
  std::string bits;
  for (uint8_t b : t.bits) bits.push_back(b ? '1' : '0');
  return json{{"kind", "torus"}, {"q", t.q}, {"bits", bits}};
}

TorusAssignment decode_torus(const json& j) {
  if (!j.is_object()) schema_error("/certificate", "expected an object");
  const int64_t q = decode_i64(require(j, "q", "/certificate"), "/certificate/q");
  if (q < 1 || q > 4096) schema_error("/certificate/q", "torus side out of range");
  const json& bits = require(j, "bits", "/certificate");
  if (!bits.is_string()) schema_error("/certificate/bits", "expected a 0/1 string");
  const auto& s = bits.get_ref<const std::string&>();
  if (s.size() != static_cast<std::size_t>(q * q)) schema_error("/certificate/bits", "needs q^2 bits");
  TorusAssignment t{q, {}};
  for (char c : s) {
    if (c != '0' && c != '1') schema_error("/certificate/bits", "bits must be '0' or '1'");
    t.bits.push_back(c == '1' ? 1 : 0);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

struct Options {
  std::string problem_path;
  std::string cert_path;
  std::string json_out;
  bool render = false;
  int cap_n = kDefaultL1Cap;
  bool cap_set = false;
  std::optional<uint64_t> budget_nodes;
  std::optional<int64_t> max_q;
  std::optional<int64_t> max_box;
  int k = 2;
  int64_t q = 1;
  std::vector<int64_t> r_list;
  std::vector<int64_t> w;
  std::vector<int64_t> x;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code_of(Answer a) {
  switch (a) {
    case Answer::Yes:
      return kYes;
    case Answer::No:
      return kNo;
    case Answer::Unknown:
      return kUnknown;
  }
  return kUnknown;
}

SearchBudget effective_budget(const ProblemFile& p, const Options& o) {
  SearchBudget b = p.budget.value_or(SearchBudget{});
  if (o.budget_nodes) b.max_nodes = *o.budget_nodes;
  if (o.max_q) b.max_q = *o.max_q;
  if (o.max_box) b.max_box_radius = *o.max_box;
  return b;
}

json budget_json(const SearchBudget& b) {
  return json{{"max_q", b.max_q}, {"max_box_radius", b.max_box_radius}, {"max_nodes", b.max_nodes}};
}

const PeriodicMap& need(const std::optional<PeriodicMap>& m, const char* name) {
  if (!m) throw InputError(std::string("problem file lacks field \"") + name + "\"");
  return *m;
}

Vec2 vec2_of(const std::vector<int64_t>& v, const char* flag) {
  if (v.size() != 2) throw InputError(std::string(flag) + " takes two integers");
  return Vec2{v[0], v[1]};
}

int cmd_decide_zero(const ProblemFile& p, const Options& o, json& out) {
  const auto v = decide_zero_annihilator(p.group, p.f, o.cap_n);
  out.update(encode_verdict(v));
  return exit_code_of(v.answer);
}

int cmd_decide_levelshift(const ProblemFile& p, const Options& o, json& out) {
  const auto v = decide_level_shift(p.group, p.f, o.cap_n);
  out.update(encode_verdict(v.base));
  out["mass"] = encode_int(v.mass);
  if (v.level) {
    out["certificate"]["level"] = encode_int(*v.level);
    out["certificate"]["level_solution"] = encode_periodic(*v.level_solution);
  }
  return exit_code_of(v.base.answer);
}

int cmd_decide_multitile(const ProblemFile& p, const Options& o, json& out, std::ostream& err) {
  const PeriodicMap& g = need(p.g, "g");
  const SearchBudget budget = effective_budget(p, o);
  const auto v = decide_multitile(p.f, g, budget);
  out["answer"] = to_string(v.answer);
  out["budget"] = budget_json(budget);
  out["nodes_used"] = v.nodes_used;
  json attempts = json::array();
  for (const auto& a : v.attempts) {
    attempts.push_back(
        json{{"kind", a.kind}, {"parameter", a.parameter}, {"status", to_string(a.status)}, {"nodes", a.nodes}});
  }
  out["attempts"] = attempts;
  if (v.certificate) {
    out["certificate"] = encode_torus(*v.certificate);
    if (o.render) {
      for (const auto& row : v.certificate->render()) err << row << '\n';
    }
  } else if (v.refutation_radius) {
    out["certificate"] = json{{"kind", "box_refutation"}, {"radius", *v.refutation_radius}};
  } else {
    out["reason"] = v.unknown_reason;
  }
  return exit_code_of(v.answer);
}

bool all_equal(const PeriodicMap& m, const Int& level) {
  for (const Int& v : m.values()) {
    if (v != level) return false;
  }
  return true;
}

int cmd_verify(const ProblemFile& p, const Options& o, json& out) {
  if (o.cert_path.empty()) throw InputError("verify requires --cert");
  json cert;
  const std::string text = read_file(o.cert_path);
  try {
    cert = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("certificate JSON syntax error at byte " + std::to_string(e.byte));
  }
  if (!cert.is_object()) schema_error("", "certificate file must be an object");
  const json& cmd = require(cert, "command", "");
  const json& ans = require(cert, "answer", "");
  if (!cmd.is_string() || !ans.is_string()) schema_error("", "command and answer must be strings");
  const std::string command = cmd.get<std::string>();
  const std::string answer = ans.get<std::string>();
  out["verified_command"] = command;
  out["verified_answer"] = answer;

  bool ok = false;
  std::string method;
  if (answer == "UNKNOWN") {
    out["answer"] = "UNKNOWN";
    out["method"] = "nothing to verify";
    return kUnknown;
  }
  if (command == "decide-zero" || command == "decide-levelshift") {
    if (answer == "YES") {
      const json& c = require(cert, "certificate", "");
      const PeriodicMap a = decode_periodic(p.group, require(c, "witness", "/certificate"), "/certificate/witness");
      ok = verify_annihilator(p.f, a) && a.at(p.group.zero()) == 1;
      method = "convolution of f with the witness is identically zero";
      if (ok && command == "decide-levelshift") {
        const Int level = decode_int(require(c, "level", "/certificate"), "/certificate/level");
        const PeriodicMap s =
            decode_periodic(p.group, require(c, "level_solution", "/certificate"), "/certificate/level_solution");
        bool constant = true;
        for (const Int& v : s.values()) constant = constant && v == s.values().front();
        ok = !constant && all_equal(convolve_periodic(p.f, s), level);
        method += "; level solution is non-constant with f*a = level";
      }
    } else if (answer == "NO") {
      const auto v = decide_zero_annihilator(p.group, p.f, o.cap_n);
      ok = v.answer == Answer::No;
      method = "decider re-run";
    } else {
      schema_error("/answer", "unrecognized answer \"" + answer + "\"");
    }
  } else if (command == "decide-multitile") {
    const PeriodicMap& g = need(p.g, "g");
    const json& c = require(cert, "certificate", "");
    const json& kind = require(c, "kind", "/certificate");
    if (answer == "YES" && kind == "torus") {
      ok = verify_multitile(p.f, g, decode_torus(c));
      method = "exact check of f*1_A = g on every torus cell";
    } else if (answer == "NO" && kind == "box_refutation") {
      const int64_t radius = decode_i64(require(c, "radius", "/certificate"), "/certificate/radius");
      if (radius < 0) schema_error("/certificate/radius", "must be non-negative");
      const SearchBudget budget = effective_budget(p, o);
      const auto r = box_refute(p.f, g, radius, budget.max_nodes);
      if (r.status == SearchStatus::BudgetExceeded) {
        out["answer"] = "UNKNOWN";
        out["method"] = "box re-check exceeded the node budget";
        return kUnknown;
      }
      ok = r.refuted();
      method = "exhaustive re-check of the box";
    } else {
      schema_error("/certificate/kind", "does not match the answer");
    }
  } else {
    schema_error("/command", "cannot verify \"" + command + "\"");
  }
  out["answer"] = ok ? "YES" : "NO";
  out["method"] = method;
  return ok ? kYes : kNo;
}

int cmd_omega(const Options& o, json& out) {
  const int cap = o.cap_set ? o.cap_n : kDefaultOmegaCap;
  const auto tuples = enumerate_minimal_tuples(o.k, cap);
  json list = json::array();
  for (const auto& t : tuples) {
    json row = json::array();
    for (const auto& e : t.entries) row.push_back(e.str());
    list.push_back(row);
  }
  out["k"] = o.k;
  out["mann_bound"] = mann_bound(o.k);
  out["count"] = tuples.size();
  out["tuples"] = list;
  return kYes;
}

int cmd_dilate_check(const ProblemFile& p, const Options& o, json& out) {
  const PeriodicMap& a = need(p.a, "a");
  const PeriodicMap& g = need(p.g, "g");
  std::vector<int64_t> rs = o.r_list;
  if (rs.empty()) rs = {1 + o.q, 1 + 2 * o.q, 1 + 3 * o.q};
  const auto rep = dilation_check(p.f, a, g, o.q, rs);
  json results = json::array();
  for (const auto& r : rep.results) results.push_back(json{{"r", r.r}, {"pass", r.pass}});
  out["q"] = o.q;
  out["results"] = results;
  out["answer"] = rep.all_pass() ? "YES" : "NO";
  return rep.all_pass() ? kYes : kNo;
}

int cmd_slice(const ProblemFile& p, const Options& o, json& out) {
  const Vec2 w = vec2_of(o.w, "--w");
  out["w"] = o.w;
  if (!o.x.empty()) {
    const Vec2 x = vec2_of(o.x, "--x");
    const FinMap s = slice(p.f, x, w);
    out["coset"] = wedge(w, x);
    out["slice"] = encode_finmap(s);
    if (p.phi) {
      const PeriodicMap conv = convolve_periodic(s, *p.phi);
      const PeriodLattice lat = period_lattice(conv);
      out["convolution"] = encode_periodic(conv);
      out["period_lattice"] = json{{"a", lat.a}, {"b", lat.b}, {"c", lat.c}};
    }
    return kYes;
  }
  const PeriodicMap& phi = need(p.phi, "phi");
  json reports = json::array();
  for (const auto& r : slicing_periodicity_check(p.f, phi, w, o.q)) reports.push_back(encode_report_slice(r));
  out["q"] = o.q;
  out["complement"] = json{complement(w).x, complement(w).y};
  out["slices"] = reports;
  return kYes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact decision tools for translational tiling equations f*a = g"};
  app.require_subcommand(1);
  Options o;

  auto add_problem = [&](CLI::App* sub) { sub->add_option("problem", o.problem_path, "problem file (JSON)")->required(); };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json-out", o.json_out, "also write the verdict JSON to this path");
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option_function<int>(
        "--cap-n",
        [&](int v) {
          o.cap_n = v;
          o.cap_set = true;
        },
        "capacity cap (l1 norm of f, or k for omega)");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option_function<uint64_t>("--budget-nodes", [&](uint64_t v) { o.budget_nodes = v; }, "search node budget");
    sub->add_option_function<int64_t>("--max-q", [&](int64_t v) { o.max_q = v; }, "largest torus period tried");
    sub->add_option_function<int64_t>("--max-box", [&](int64_t v) { o.max_box = v; }, "largest refutation box radius");
  };

  auto* zero = app.add_subcommand("decide-zero", "does f*a = 0 have a non-zero bounded solution");
  add_problem(zero);
  add_cap(zero);
  add_common(zero);
  auto* shift = app.add_subcommand("decide-levelshift", "does f*a = k have a non-constant solution");
  add_problem(shift);
  add_cap(shift);
  add_common(shift);
  auto* multi = app.add_subcommand("decide-multitile", "does f*1_A = g have a solution on Z^2");
  add_problem(multi);
  add_budget(multi);
  multi->add_flag("--render", o.render, "draw the torus certificate on stderr");
  add_common(multi);
  auto* verify = app.add_subcommand("verify", "re-check a verdict produced by a decide-* command");
  add_problem(verify);
  verify->add_option("--cert", o.cert_path, "verdict JSON to check")->required();
  add_cap(verify);
  add_budget(verify);
  add_common(verify);
  auto* omega = app.add_subcommand("omega", "list the minimal vanishing k-tuples");
  omega->add_option("--k", o.k, "tuple length")->required();
  add_cap(omega);
  add_common(omega);
  auto* dil = app.add_subcommand("dilate-check", "check (tau_r f)*a = g for r = 1 mod q");
  add_problem(dil);
  dil->add_option("--q", o.q, "modulus")->required();
  dil->add_option("--r", o.r_list, "dilation factors (default 1+q, 1+2q, 1+3q)")->delimiter(',');
  add_common(dil);
  auto* sl = app.add_subcommand("slice", "slices of f along a primitive direction w");
  add_problem(sl);
  sl->add_option("--w", o.w, "direction, e.g. --w 1,0")->delimiter(',')->required()->expected(2);
  sl->add_option("--x", o.x, "single coset representative")->delimiter(',')->expected(2);
  sl->add_option("--q", o.q, "phi must be q*w periodic");
  add_common(sl);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  json verdict;
  int code = kInputError;
  try {
    CLI::App* sub = app.get_subcommands().front();
    verdict["command"] = sub->get_name();
    if (sub == omega) {
      code = cmd_omega(o, verdict);
    } else {
      const ProblemFile p = parse_problem(read_file(o.problem_path));
      verdict["group"] = encode_group(p.group);
      if (sub == zero) code = cmd_decide_zero(p, o, verdict);
      if (sub == shift) code = cmd_decide_levelshift(p, o, verdict);
      if (sub == multi) code = cmd_decide_multitile(p, o, verdict, err);
      if (sub == verify) code = cmd_verify(p, o, verdict);
      if (sub == dil) code = cmd_dilate_check(p, o, verdict);
      if (sub == sl) code = cmd_slice(p, o, verdict);
    }
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << '\n';
    verdict["error"] = json{{"kind", "capacity"}, {"message", e.what()}};
    code = kCapacityExceeded;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    verdict["error"] = json{{"kind", "input"}, {"message", e.what()}};
    code = kInputError;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    verdict["error"] = json{{"kind", "unsupported"}, {"message", e.what()}};
    code = kInputError;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  verdict["elapsed_ms"] = elapsed.count();
  verdict["exit_code"] = code;

  const std::string text = verdict.dump(2);
  out << text << '\n';
  if (!o.json_out.empty()) {
    std::ofstream f(o.json_out, std::ios::binary);
    if (!f) {
      err << "cannot write " << o.json_out << '\n';
      return kInputError;
    }
    f << text << '\n';
  }
  return code;
}

}  // namespace tiling::cli
