#include "rnkit/harness/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rnkit/errors.hpp"

namespace rnkit::harness {

using ojson = nlohmann::ordered_json;

namespace {

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

double number_from(const ojson& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

ojson matrix_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson element_json(const Element& x) {
  ojson blocks = ojson::array();
  for (const auto& b : x.blocks()) blocks.push_back(matrix_json(b));
  return blocks;
}

Matrix matrix_from(const ojson& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw InvalidArgument(where + ": expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(v.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ojson& row = v[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw InvalidArgument(where + ": rows must make a square block");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const ojson& c = row[static_cast<size_t>(j)];
      if (c.is_number()) {
        m(i, j) = c.get<double>();
      } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
        m(i, j) = Complex(c[0].get<double>(), c[1].get<double>());
      } else {
        throw InvalidArgument(where + ": entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

void strict(const ojson& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw InvalidArgument(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidArgument(where + ": unknown key '" + key + "'");
  }
}

ojson parse(const std::string& text, const char* what) {
  try {
    return ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string report_to_json(const Report& r) {
  ojson doc;
  doc["schema"] = "rnkit.report/1";
  doc["scenario"] = r.scenario;
  doc["environment"] = {{"version", r.version}, {"seed", r.seed}};
  ojson records = ojson::array();
  for (const auto& rec : r.records) {
    ojson j;
    j["id"] = rec.id;
    j["anchor"] = rec.anchor;
    j["grid"] = rec.grid;
    j["max_residual"] = number_or_null(rec.max_residual);
    j["tolerance"] = rec.tolerance;
    j["relation"] = to_string(rec.relation);
    j["expect"] = to_string(rec.expect);
    j["status"] = rec.status;
    j["note"] = rec.note;
    if (rec.counterexample) {
      j["counterexample"] = {{"point", rec.counterexample->point},
                             {"residual", number_or_null(rec.counterexample->residual)}};
    } else {
      j["counterexample"] = nullptr;
    }
    records.push_back(std::move(j));
  }
  doc["records"] = std::move(records);
  doc["verdict"] = r.verdict;
  return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  const ojson doc = parse(text, "report");
  strict(doc, "report", {"schema", "scenario", "environment", "records", "verdict"});
  if (doc.at("schema") != "rnkit.report/1") throw InvalidArgument("report: unsupported schema");
  Report r;
  r.scenario = doc.at("scenario").get<std::string>();
  const ojson& env = doc.at("environment");
  strict(env, "report/environment", {"version", "seed"});
  r.version = env.at("version").get<std::string>();
  r.seed = env.at("seed").get<std::uint64_t>();
  for (const auto& j : doc.at("records")) {
    strict(j, "report/records", {"id", "anchor", "grid", "max_residual", "tolerance", "relation", "expect", "status",
                                 "note", "counterexample"});
    Record rec;
    rec.id = j.at("id").get<std::string>();
    rec.anchor = j.at("anchor").get<std::string>();
    rec.grid = j.at("grid").get<std::string>();
    rec.max_residual = number_from(j.at("max_residual"));
    rec.tolerance = j.at("tolerance").get<double>();
    const std::string rel = j.at("relation").get<std::string>();
    if (rel != "le" && rel != "ge") throw InvalidArgument("report: bad relation '" + rel + "'");
    rec.relation = rel == "le" ? Relation::le : Relation::ge;
    const std::string ex = j.at("expect").get<std::string>();
    if (ex == "hold") {
      rec.expect = Expectation::hold;
    } else if (ex == "violate") {
      rec.expect = Expectation::violate;
    } else if (ex == "info") {
      rec.expect = Expectation::info;
    } else {
      throw InvalidArgument("report: bad expectation '" + ex + "'");
    }
    rec.status = j.at("status").get<std::string>();
    rec.note = j.at("note").get<std::string>();
    const ojson& ce = j.at("counterexample");
    if (!ce.is_null()) {
      strict(ce, "report/counterexample", {"point", "residual"});
      rec.counterexample = Counterexample{ce.at("point").get<std::string>(), number_from(ce.at("residual"))};
    }
    r.records.push_back(std::move(rec));
  }
  r.verdict = doc.at("verdict").get<std::string>();
  return r;
}

std::string report_to_text(const Report& r) {
  size_t width = 6;
  for (const auto& rec : r.records) width = std::max(width, rec.id.size());
  std::ostringstream os;
  os << "scenario " << r.scenario << "  (rnkit " << r.version << ", seed " << r.seed << ")\n\n";
  auto pad = [](const std::string& s, size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  os << "   " << pad("record", width) << "  " << pad("residual", 10) << "  " << pad("bound", 13) << "  expect\n";
  for (const auto& rec : r.records) {
    const char* mark = rec.status == "pass" ? "✓" : rec.status == "fail" ? "✗" : "·";
    const std::string bound = std::string(rec.relation == Relation::le ? "<= " : ">= ") + sci(rec.tolerance);
    os << " " << mark << " " << pad(rec.id, width) << "  " << pad(sci(rec.max_residual), 10) << "  "
       << pad(bound, 13) << "  " << to_string(rec.expect) << "\n";
    if (rec.counterexample) {
      os << "   " << pad("", width) << "  counterexample at " << rec.counterexample->point << ": "
         << sci(rec.counterexample->residual) << "\n";
    }
    if (!rec.note.empty() && rec.status != "pass") os << "   " << pad("", width) << "  note: " << rec.note << "\n";
  }
  os << "\nverdict: " << r.verdict << "\n";
  return os.str();
}

std::string path_to_json(const CocyclePath& u) {
  ojson doc;
  doc["schema"] = "rnkit.path/1";
  doc["blocks"] = u.block_dims();
  ojson nodes = ojson::array();
  for (size_t i = 0; i < u.grid().size(); ++i) {
    nodes.push_back({{"t", u.grid()[i]}, {"u", element_json(u.samples()[i])}});
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

CocyclePath path_from_json(const std::string& text) {
  const ojson doc = parse(text, "path file");
  strict(doc, "path file", {"schema", "blocks", "nodes"});
  if (!doc.contains("schema") || doc["schema"] != "rnkit.path/1") {
    throw InvalidArgument("path file: schema must be 'rnkit.path/1'");
  }
  const std::vector<int> dims = doc.at("blocks").get<std::vector<int>>();
  std::vector<double> t;
  std::vector<Element> u;
  size_t k = 0;
  for (const auto& node : doc.at("nodes")) {
    const std::string where = "path file: nodes/" + std::to_string(k++);
    strict(node, where, {"t", "u"});
    if (!node.at("t").is_number()) throw InvalidArgument(where + "/t: expected a number");
    t.push_back(node["t"].get<double>());
    std::vector<Matrix> blocks;
    const ojson& ub = node.at("u");
    if (!ub.is_array() || ub.size() != dims.size()) throw InvalidArgument(where + "/u: block count mismatch");
    for (size_t b = 0; b < ub.size(); ++b) {
      blocks.push_back(matrix_from(ub[b], where + "/u/" + std::to_string(b)));
      if (blocks.back().rows() != dims[b]) throw InvalidArgument(where + "/u: block size mismatch");
    }
    u.emplace_back(std::move(blocks));
  }
  return CocyclePath::from_samples(std::move(t), std::move(u));
}

std::string fit_to_json(const GeneratorFit& fit) {
  ojson doc;
  doc["schema"] = "rnkit.generators/1";
  doc["D"] = element_json(fit.D);
  doc["L"] = element_json(fit.L);
  doc["residual"] = fit.residual;
  doc["max_step_phase"] = fit.max_step_phase;
  return doc.dump(2) + "\n";
}

std::string sweep_to_json(const SweepTable& table) {
  ojson doc;
  doc["schema"] = "rnkit.sweep/1";
  doc["case"] = to_string(table.id);
  ojson rows = ojson::array();
  for (const auto& r : table.rows) {
    ojson j = {{"N", r.N}, {"L_box", r.L_box}, {"invariance", number_or_null(r.invariance)},
               {"cocycle", number_or_null(r.cocycle)}};
    if (r.scalar_r1) j["scalar_r1"] = number_or_null(*r.scalar_r1);
    if (r.scalar_r2) j["scalar_r2"] = number_or_null(*r.scalar_r2);
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  doc["invariance_monotone"] = table.invariance_monotone ? ojson(*table.invariance_monotone) : ojson(nullptr);
  doc["cocycle_monotone"] = table.cocycle_monotone ? ojson(*table.cocycle_monotone) : ojson(nullptr);
  return doc.dump(2) + "\n";
}

std::string sweep_to_text(const SweepTable& table) {
  std::ostringstream os;
  os << "case " << to_string(table.id) << "\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%6s %8s %12s %12s %12s %12s\n", "N", "L_box", "invariance", "cocycle", "scalar_r1",
                "scalar_r2");
  os << buf;
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%6d %8.3g %12s %12s %12s %12s\n", r.N, r.L_box, sci(r.invariance).c_str(),
                  sci(r.cocycle).c_str(), r.scalar_r1 ? sci(*r.scalar_r1).c_str() : "-",
                  r.scalar_r2 ? sci(*r.scalar_r2).c_str() : "-");
    os << buf;
  }
  if (table.invariance_monotone) {
    os << "invariance monotone in the sweep order: " << (*table.invariance_monotone ? "yes" : "no") << "\n";
    os << "cocycle monotone in the sweep order: " << (*table.cocycle_monotone ? "yes" : "no") << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace rnkit::harness
