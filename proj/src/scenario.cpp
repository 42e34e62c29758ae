#include "ncm/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ncm/metric.hpp"

namespace ncm {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ScenarioError(where + ": expected an object");
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  require_object(j, where);
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ScenarioError(where + ": unknown key '" + item.key() + "'");
}

template <typename T>
T require(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ScenarioError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ScenarioError(where + ": bad value for '" + key + "': " + e.what());
  }
}

template <typename T>
T optional_value(const json& j, const std::string& key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ScenarioError(where + ": bad value for '" + key + "': " + e.what());
  }
}

FiniteGroup parse_group(const json& j) {
  check_keys(j, {"cyclic", "product_cyclic", "table"}, "instance.group");
  if (j.size() != 1) throw ScenarioError("instance.group: exactly one constructor expected");
  if (j.contains("cyclic")) return FiniteGroup::cyclic(require<int>(j, "cyclic", "instance.group"));
  if (j.contains("product_cyclic")) {
    auto qs = require<std::vector<int>>(j, "product_cyclic", "instance.group");
    if (qs.size() != 2) throw ScenarioError("instance.group.product_cyclic: expected two orders");
    return FiniteGroup::product(FiniteGroup::cyclic(qs[0]), FiniteGroup::cyclic(qs[1]));
  }
  auto table = require<std::vector<std::vector<int>>>(j, "table", "instance.group");
  return FiniteGroup::from_table(std::move(table));
}

LengthFunction parse_length(const json& j, const FiniteGroup& group) {
  check_keys(j, {"word", "values"}, "instance.length");
  if (j.size() != 1) throw ScenarioError("instance.length: exactly one constructor expected");
  if (j.contains("word"))
    return word_length(group, require<std::vector<int>>(j, "word", "instance.length"));
  auto values = require<std::vector<double>>(j, "values", "instance.length");
  if (!verify_length_function(group, values))
    throw ScenarioError("instance.length.values: not a valid length function");
  return LengthFunction{group, std::move(values)};
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ScenarioError(where + ": expected a nonempty array");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array()) throw ScenarioError(where + ": expected rows of [re, im] pairs");
    if (r == 0) m = Matrix::Zero(rows, static_cast<Eigen::Index>(row.size()));
    if (static_cast<Eigen::Index>(row.size()) != m.cols())
      throw ScenarioError(where + ": ragged rows");
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const json& entry = row.at(static_cast<std::size_t>(c));
      if (!entry.is_array() || entry.size() != 2)
        throw ScenarioError(where + ": entries must be [re, im]");
      m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

Instance parse_instance(const json& j) {
  std::string kind = require<std::string>(j, "kind", "instance");
  if (kind == "fuzzy_torus") {
    check_keys(j, {"kind", "q", "weights"}, "instance");
    int q = require<int>(j, "q", "instance");
    double w1 = 0.0, w2 = 0.0;
    if (j.contains("weights")) {
      auto w = require<std::vector<double>>(j, "weights", "instance");
      if (w.size() != 2) throw ScenarioError("instance.weights: expected two weights");
      w1 = w[0];
      w2 = w[1];
    }
    return fuzzy_torus(q, w1, w2);
  }
  if (kind == "fuzzy_sphere") {
    check_keys(j, {"kind", "n"}, "instance");
    return fuzzy_sphere(require<int>(j, "n", "instance"));
  }
  if (kind == "commutative") {
    check_keys(j, {"kind", "group", "length"}, "instance");
    FiniteGroup group = parse_group(j.at("group"));
    return commutative_instance(group, parse_length(j.at("length"), group));
  }
  if (kind == "custom") {
    check_keys(j, {"kind", "group", "matrices", "length", "cocycle_tolerant"}, "instance");
    FiniteGroup group = parse_group(j.at("group"));
    if (!j.contains("matrices")) throw ScenarioError("instance: missing key 'matrices'");
    const json& mats = j.at("matrices");
    if (!mats.is_array() || static_cast<int>(mats.size()) != group.order())
      throw ScenarioError("instance.matrices: one matrix per group element expected");
    std::vector<Matrix> impl;
    for (std::size_t i = 0; i < mats.size(); ++i)
      impl.push_back(parse_matrix(mats.at(i), "instance.matrices[" + std::to_string(i) + "]"));
    return custom_instance(group, std::move(impl), parse_length(j.at("length"), group),
                           optional_value<bool>(j, "cocycle_tolerant", false, "instance"));
  }
  throw ScenarioError("instance.kind: unknown kind '" + kind + "'");
}

void apply_seminorm_override(Instance& inst, const json& j) {
  check_keys(j, {"kind", "holder_exponent", "scale", "budget"}, "seminorm");
  std::string kind = optional_value<std::string>(j, "kind", std::string(), "seminorm");
  double r = optional_value<double>(j, "holder_exponent", 1.0, "seminorm");
  double scale = optional_value<double>(j, "scale", 1.0, "seminorm");
  int budget = optional_value<int>(j, "budget", 2048, "seminorm");

  if (!kind.empty() && kind != "length_lipschitz" && kind != "holder" && kind != "dirac" &&
      kind != "lie")
    throw ScenarioError("seminorm.kind: unknown kind '" + kind + "'");
  if (kind == "length_lipschitz" || kind == "holder" || j.contains("holder_exponent")) {
    if (!inst.action || !inst.ell)
      throw ScenarioError("seminorm: length-based kinds need a group-action instance");
    inst.seminorm = std::make_shared<LengthLipschitzSeminorm>(*inst.action, *inst.ell, r);
  } else if (kind == "dirac") {
    if (!inst.dirac) throw ScenarioError("seminorm: dirac kind needs a fuzzy_sphere instance");
    inst.seminorm = std::make_shared<DiracSeminorm>(*inst.dirac);
  } else if (kind == "lie") {
    if (!inst.dirac) throw ScenarioError("seminorm: lie kind needs a fuzzy_sphere instance");
    inst.seminorm = std::make_shared<LieSeminorm>(inst.dirac->gens, budget);
  }
  if (scale != 1.0) {
    if (!(scale > 0.0)) throw ScenarioError("seminorm.scale: must be positive");
    inst.seminorm = scale_seminorm(inst.seminorm, scale);
  }
}

void parse_states(Scenario& s, const json& j) {
  if (!j.is_array() || j.empty())
    throw ScenarioError("states: expected a nonempty array");
  for (const json& entry : j) {
    std::string kind = require<std::string>(entry, "kind", "states[]");
    if (kind == "pure") {
      check_keys(entry, {"kind", "index"}, "states[]");
      int index = require<int>(entry, "index", "states[]");
      s.states.push_back(pure_basis_state(s.instance.dim, index));
      s.state_names.push_back("pure" + std::to_string(index));
    } else if (kind == "mixed") {
      check_keys(entry, {"kind"}, "states[]");
      s.states.push_back(maximally_mixed(s.instance.dim));
      s.state_names.push_back("mixed");
    } else if (kind == "random") {
      check_keys(entry, {"kind", "seed", "count"}, "states[]");
      auto seed = require<std::uint64_t>(entry, "seed", "states[]");
      int count = optional_value<int>(entry, "count", 1, "states[]");
      if (count < 1) throw ScenarioError("states[].count: must be positive");
      for (int i = 0; i < count; ++i) {
        std::uint64_t si = seed + static_cast<std::uint64_t>(i);
        s.states.push_back(s.instance.kind == "commutative"
                               ? random_diagonal_state(s.instance.dim, si)
                               : random_state(s.instance.dim, si));
        s.state_names.push_back("random" + std::to_string(si));
      }
    } else {
      throw ScenarioError("states[].kind: unknown kind '" + kind + "'");
    }
  }
}

std::string significant(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  check_keys(doc,
             {"schema_version", "instance", "seminorm", "states", "tolerance", "max_iterations",
              "seed", "verify"},
             "scenario");
  int version = require<int>(doc, "schema_version", "scenario");
  if (version != kSchemaVersion)
    throw ScenarioError("scenario: unsupported schema_version " + std::to_string(version));
  if (!doc.contains("instance")) throw ScenarioError("scenario: missing key 'instance'");

  Scenario s{doc.dump(), parse_instance(doc.at("instance")), {}, {}, 1e-6, 500, 1, false};
  if (doc.contains("seminorm")) apply_seminorm_override(s.instance, doc.at("seminorm"));
  if (!doc.contains("states")) throw ScenarioError("scenario: missing key 'states'");
  parse_states(s, doc.at("states"));
  s.tolerance = optional_value<double>(doc, "tolerance", 1e-6, "scenario");
  if (!(s.tolerance > 0.0)) throw ScenarioError("scenario.tolerance: must be positive");
  s.max_iterations = optional_value<int>(doc, "max_iterations", 500, "scenario");
  if (s.max_iterations < 1) throw ScenarioError("scenario.max_iterations: must be positive");
  s.seed = optional_value<std::uint64_t>(doc, "seed", 1, "scenario");
  s.run_verify = optional_value<bool>(doc, "verify", false, "scenario");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario parse error: ") + e.what());
  }
  return parse_scenario(doc);
}

Report run_scenario(const Scenario& s) {
  auto mat = distance_matrix(s.instance.seminorm, s.states, s.instance.basis, s.tolerance,
                             s.max_iterations);

  Report r;
  r.state_names = s.state_names;
  r.matrix.assign(s.states.size(), std::vector<double>(s.states.size(), 0.0));
  json distances = json::array();
  for (std::size_t i = 0; i < s.states.size(); ++i) {
    for (std::size_t j = 0; j < s.states.size(); ++j) r.matrix[i][j] = mat[i][j].estimate();
    for (std::size_t j = i + 1; j < s.states.size(); ++j) {
      const DistanceResult& d = mat[i][j];
      distances.push_back(json{{"i", i},
                               {"j", j},
                               {"lo", d.lo},
                               {"hi", d.hi},
                               {"estimate", d.estimate()},
                               {"iterations", d.iterations},
                               {"certified", d.certified},
                               {"cuts_used", d.cuts_used}});
    }
  }

  json doc{{"schema_version", kSchemaVersion},
           {"scenario", json::parse(s.raw)},
           {"seed", s.seed},
           {"states", s.state_names},
           {"distances", std::move(distances)}};

  if (s.run_verify) {
    json verdicts = json::array();
    for (const Verdict& v : verify_suite(s.instance, s.tolerance, s.seed)) {
      verdicts.push_back(json{{"name", v.name}, {"pass", v.pass}, {"margin", v.margin}});
      r.verdicts_pass = r.verdicts_pass && v.pass;
    }
    doc["verdicts"] = std::move(verdicts);
  }
  r.json = doc.dump(2) + "\n";
  return r;
}

Report run_scenario_file(const std::string& path) { return run_scenario(load_scenario(path)); }

std::string report_csv(const Report& r) {
  std::ostringstream out;
  out << "state";
  for (const std::string& name : r.state_names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < r.state_names.size(); ++i) {
    out << r.state_names[i];
    for (std::size_t j = 0; j < r.state_names.size(); ++j) out << ',' << significant(r.matrix[i][j]);
    out << '\n';
  }
  return out.str();
}

void export_report(const Report& r, const std::string& path, const std::string& format) {
  if (format != "json" && format != "csv")
    throw ScenarioError("export: unknown format '" + format + "'");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("export: cannot write " + path);
  out << (format == "json" ? r.json : report_csv(r));
  if (!out) throw std::runtime_error("export: write failed for " + path);
}

}  // namespace ncm
