#include "rnkit/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rnkit/random.hpp"

namespace rnkit::harness {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(where, "unknown key '" + key + "'");
    }
  }
}

const json& need(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing key '") + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "expected a finite number");
  return d;
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

Complex complex_value(const json& v, const std::string& where) {
  if (v.is_number()) return {number(v, where), 0.0};
  if (v.is_array() && v.size() == 2) return {number(v[0], where + "/0"), number(v[1], where + "/1")};
  fail(where, "expected a number or an [re, im] pair");
}

std::vector<RealVector> real_blocks(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array of per-block arrays");
  std::vector<RealVector> out;
  for (size_t k = 0; k < v.size(); ++k) {
    const std::string w = where + "/" + std::to_string(k);
    if (!v[k].is_array() || v[k].empty()) fail(w, "expected a non-empty array of numbers");
    RealVector r(static_cast<Eigen::Index>(v[k].size()));
    for (size_t i = 0; i < v[k].size(); ++i) r(static_cast<Eigen::Index>(i)) = number(v[k][i], w + "/" + std::to_string(i));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Matrix> matrix_blocks(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array of blocks");
  std::vector<Matrix> out;
  for (size_t k = 0; k < v.size(); ++k) {
    const std::string w = where + "/" + std::to_string(k);
    const json& b = v[k];
    if (!b.is_array() || b.empty()) fail(w, "expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(b.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& row = b[static_cast<size_t>(i)];
      const std::string wr = w + "/" + std::to_string(i);
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) fail(wr, "rows must make a square block");
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex_value(row[static_cast<size_t>(j)], wr + "/" + std::to_string(j));
    }
    out.push_back(std::move(m));
  }
  return out;
}

Mode parse_mode(const json& v, const std::string& where) {
  const std::string m = text(v, where);
  if (m == "exact") return Mode::exact;
  if (m == "approximate") return Mode::approximate;
  fail(where, "mode must be 'exact' or 'approximate'");
}

WeightSpec parse_weight(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object");
  WeightSpec w;
  w.kind = text(need(v, where, "kind"), where + "/kind");
  if (w.kind == "diag") {
    check_keys(v, where, {"kind", "values"});
    w.diag = real_blocks(need(v, where, "values"), where + "/values");
  } else if (w.kind == "matrix") {
    check_keys(v, where, {"kind", "blocks"});
    w.blocks = matrix_blocks(need(v, where, "blocks"), where + "/blocks");
  } else if (w.kind == "random") {
    check_keys(v, where, {"kind", "spread"});
    if (v.contains("spread")) w.spread = number(v["spread"], where + "/spread");
    if (!(w.spread >= 0.0)) fail(where + "/spread", "must be non-negative");
  } else if (w.kind == "exp-grid") {
    check_keys(v, where, {"kind", "lo", "hi", "random_basis"});
    w.lo = number(need(v, where, "lo"), where + "/lo");
    w.hi = number(need(v, where, "hi"), where + "/hi");
    if (v.contains("random_basis")) {
      if (!v["random_basis"].is_boolean()) fail(where + "/random_basis", "expected a boolean");
      w.random_basis = v["random_basis"].get<bool>();
    }
    if (w.hi < w.lo) fail(where, "hi must not be below lo");
  } else if (w.kind == "balanced") {
    check_keys(v, where, {"kind", "parts"});
    const json& parts = need(v, where, "parts");
    if (!parts.is_array() || parts.size() != 2) fail(where + "/parts", "expected exactly two weights");
    w.parts.push_back(parse_weight(parts[0], where + "/parts/0"));
    w.parts.push_back(parse_weight(parts[1], where + "/parts/1"));
  } else {
    fail(where + "/kind", "unknown weight constructor '" + w.kind + "' (diag, matrix, random, exp-grid, balanced)");
  }
  return w;
}

PairSpec parse_pair(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object");
  PairSpec p;
  p.kind = text(need(v, where, "kind"), where + "/kind");
  if (p.kind == "diag") {
    check_keys(v, where, {"kind", "delta", "lambda", "mode"});
    p.delta_diag = real_blocks(need(v, where, "delta"), where + "/delta");
    if (v.contains("lambda")) p.lambda_diag = real_blocks(v["lambda"], where + "/lambda");
  } else if (p.kind == "matrix") {
    check_keys(v, where, {"kind", "delta", "lambda", "mode"});
    p.delta_blocks = matrix_blocks(need(v, where, "delta"), where + "/delta");
    if (v.contains("lambda")) p.lambda_blocks = matrix_blocks(v["lambda"], where + "/lambda");
  } else if (p.kind == "commuting-random") {
    check_keys(v, where, {"kind", "spread", "mode"});
    if (v.contains("spread")) p.spread = number(v["spread"], where + "/spread");
  } else if (p.kind == "scalar") {
    check_keys(v, where, {"kind", "spread", "lambda", "mode"});
    if (v.contains("spread")) p.spread = number(v["spread"], where + "/spread");
    p.lambda = number(need(v, where, "lambda"), where + "/lambda");
    if (!(p.lambda > 0.0)) fail(where + "/lambda", "must be positive");
  } else {
    fail(where + "/kind", "unknown pair constructor '" + p.kind + "' (diag, matrix, commuting-random, scalar)");
  }
  if (!(p.spread >= 0.0)) fail(where + "/spread", "must be non-negative");
  if (v.contains("mode")) p.mode = parse_mode(v["mode"], where + "/mode");
  return p;
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void check_dims(const std::vector<int>& dims, size_t count, const std::string& where) {
  if (count != dims.size()) {
    fail(where, "has " + std::to_string(count) + " blocks but the algebra has " + std::to_string(dims.size()));
  }
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {
      "pt-exact",     "cocycle-algebra", "smearing",        "limit-formula",          "modular",
      "uniqueness",   "rn1",             "rn2",             "rn3",                    "rigidity",
      "smear-limit",  "weyl-invariance", "weyl-cocycle",    "weyl-scalar-invariance", "weyl-centrality"};
  return names;
}

Scenario parse_scenario_text(const std::string& source, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ScenarioError(origin + ": " + line_column(source, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  const std::string root = origin + ":";
  check_keys(doc, root, {"schema", "name", "seed", "algebra", "weight", "psi", "pair", "lambda0", "expect", "suites",
                         "tolerances"});
  const std::string schema = text(need(doc, root, "schema"), root + "/schema");
  if (schema != "rnkit.scenario/1") fail(root + "/schema", "unsupported schema '" + schema + "'");

  Scenario s;
  s.name = text(need(doc, root, "name"), root + "/name");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail(root + "/seed", "expected a non-negative integer");
    s.seed = doc["seed"].get<std::uint64_t>();
  }

  const json& alg = need(doc, root, "algebra");
  check_keys(alg, root + "/algebra", {"blocks", "testbed"});
  if (alg.contains("blocks") == alg.contains("testbed")) fail(root + "/algebra", "give exactly one of blocks, testbed");
  if (alg.contains("blocks")) {
    const json& b = alg["blocks"];
    if (!b.is_array() || b.empty()) fail(root + "/algebra/blocks", "expected a non-empty array");
    for (size_t k = 0; k < b.size(); ++k) {
      if (!b[k].is_number_integer() || b[k].get<int>() < 1) {
        fail(root + "/algebra/blocks/" + std::to_string(k), "expected a positive integer");
      }
      s.blocks.push_back(b[k].get<int>());
    }
  } else {
    const std::string w = root + "/algebra/testbed";
    const json& t = alg["testbed"];
    check_keys(t, w, {"case", "N", "L_box"});
    TestbedSpec tb;
    try {
      tb.id = testbed_case_from_string(text(need(t, w, "case"), w + "/case"));
    } catch (const ScenarioError&) {
      throw;
    } catch (const InvalidArgument& e) {
      fail(w + "/case", e.what());
    }
    if (t.contains("N")) {
      if (!t["N"].is_number_integer()) fail(w + "/N", "expected an integer");
      tb.N = t["N"].get<int>();
    }
    if (t.contains("L_box")) tb.L_box = number(t["L_box"], w + "/L_box");
    try {
      build_grid(tb.N, tb.L_box);
    } catch (const InvalidArgument& e) {
      fail(w, e.what());
    }
    s.testbed = tb;
  }

  if (doc.contains("weight")) s.weight = parse_weight(doc["weight"], root + "/weight");
  if (doc.contains("psi")) s.psi = parse_weight(doc["psi"], root + "/psi");
  if (doc.contains("pair")) s.pair = parse_pair(doc["pair"], root + "/pair");
  if (doc.contains("lambda0")) {
    s.lambda0 = number(doc["lambda0"], root + "/lambda0");
    if (!(*s.lambda0 > 0.0)) fail(root + "/lambda0", "must be positive");
  }
  if (doc.contains("expect")) {
    const std::string e = text(doc["expect"], root + "/expect");
    if (e == "hold") {
      s.expect = Expectation::hold;
    } else if (e == "violate") {
      s.expect = Expectation::violate;
    } else {
      fail(root + "/expect", "must be 'hold' or 'violate'");
    }
  }

  if (s.testbed) {
    if (s.weight || s.psi || s.pair) fail(root, "testbed scenarios take weight, psi and pair from the case");
  } else if (!s.weight) {
    fail(root, "missing key 'weight'");
  }

  const json& suites = need(doc, root, "suites");
  if (!suites.is_array() || suites.empty()) fail(root + "/suites", "expected a non-empty array of suite names");
  std::set<std::string> seen;
  for (size_t k = 0; k < suites.size(); ++k) {
    const std::string w = root + "/suites/" + std::to_string(k);
    const std::string name = text(suites[k], w);
    const auto& known = known_suites();
    if (std::find(known.begin(), known.end(), name) == known.end()) fail(w, "unknown suite '" + name + "'");
    if (!seen.insert(name).second) fail(w, "duplicate suite '" + name + "'");
    s.suites.push_back(name);
  }
  if (doc.contains("tolerances")) {
    const json& tol = doc["tolerances"];
    if (!tol.is_object()) fail(root + "/tolerances", "expected an object");
    for (const auto& [key, value] : tol.items()) {
      const std::string w = root + "/tolerances/" + key;
      if (!seen.count(key)) fail(w, "tolerance for a suite that is not selected");
      const double v = number(value, w);
      if (!(v > 0.0)) fail(w, "tolerances must be positive");
      s.tolerances[key] = v;
    }
  }

  // shape checks against the algebra
  if (!s.testbed) {
    auto check_weight = [&](const WeightSpec& w, const std::vector<int>& dims, const std::string& where,
                            auto&& self) -> void {
      if (w.kind == "diag") {
        check_dims(dims, w.diag.size(), where);
        for (size_t k = 0; k < dims.size(); ++k)
          if (w.diag[k].size() != dims[k]) fail(where + "/values/" + std::to_string(k), "size does not match the block");
        for (const auto& d : w.diag)
          if ((d.array() <= 0.0).any()) fail(where + "/values", "densities must be positive");
      } else if (w.kind == "matrix") {
        check_dims(dims, w.blocks.size(), where);
        for (size_t k = 0; k < dims.size(); ++k)
          if (w.blocks[k].rows() != dims[k]) fail(where + "/blocks/" + std::to_string(k), "size does not match the block");
      } else if (w.kind == "balanced") {
        std::vector<int> half;
        for (int n : dims) {
          if (n % 2 != 0) fail(where, "balanced weights need even block sizes");
          half.push_back(n / 2);
        }
        self(w.parts[0], half, where + "/parts/0", self);
        self(w.parts[1], half, where + "/parts/1", self);
      }
    };
    check_weight(*s.weight, s.blocks, root + "/weight", check_weight);
    if (s.psi) check_weight(*s.psi, s.blocks, root + "/psi", check_weight);
    if (s.pair) {
      const PairSpec& p = *s.pair;
      const std::string w = root + "/pair";
      if (p.kind == "diag") {
        check_dims(s.blocks, p.delta_diag.size(), w + "/delta");
        if (!p.lambda_diag.empty()) check_dims(s.blocks, p.lambda_diag.size(), w + "/lambda");
        for (size_t k = 0; k < s.blocks.size(); ++k) {
          if (p.delta_diag[k].size() != s.blocks[k] || (p.delta_diag[k].array() <= 0.0).any())
            fail(w + "/delta/" + std::to_string(k), "expected positive entries, one per row of the block");
          if (!p.lambda_diag.empty() &&
              (p.lambda_diag[k].size() != s.blocks[k] || (p.lambda_diag[k].array() <= 0.0).any()))
            fail(w + "/lambda/" + std::to_string(k), "expected positive entries, one per row of the block");
        }
      } else if (p.kind == "matrix") {
        check_dims(s.blocks, p.delta_blocks.size(), w + "/delta");
        if (!p.lambda_blocks.empty()) check_dims(s.blocks, p.lambda_blocks.size(), w + "/lambda");
        for (size_t k = 0; k < s.blocks.size(); ++k) {
          if (p.delta_blocks[k].rows() != s.blocks[k]) fail(w + "/delta/" + std::to_string(k), "size does not match");
          if (!p.lambda_blocks.empty() && p.lambda_blocks[k].rows() != s.blocks[k])
            fail(w + "/lambda/" + std::to_string(k), "size does not match");
        }
      }
    }
  }
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

PositiveElement build_density(const WeightSpec& spec, const std::vector<int>& dims, std::uint64_t seed) {
  if (spec.kind == "diag") {
    std::vector<Matrix> vectors;
    std::vector<RealVector> logs;
    for (const auto& d : spec.diag) {
      vectors.push_back(Matrix::Identity(d.size(), d.size()));
      logs.push_back(d.array().log().matrix());
    }
    return PositiveElement::from_spectral(std::move(vectors), std::move(logs));
  }
  if (spec.kind == "matrix") return PositiveElement::from_element(Element(spec.blocks));
  if (spec.kind == "random") {
    Rng rng(seed);
    return random_positive(rng, dims, spec.spread);
  }
  if (spec.kind == "exp-grid") {
    Rng rng(seed);
    std::vector<Matrix> vectors;
    std::vector<RealVector> logs;
    for (int n : dims) {
      RealVector l(n);
      for (int i = 0; i < n; ++i) l(i) = n == 1 ? spec.lo : spec.lo + (spec.hi - spec.lo) * i / (n - 1);
      vectors.push_back(spec.random_basis ? random_unitary(rng, n) : Matrix::Identity(n, n));
      logs.push_back(std::move(l));
    }
    return PositiveElement::from_spectral(std::move(vectors), std::move(logs));
  }
  if (spec.kind == "balanced") {
    std::vector<int> half;
    for (int n : dims) half.push_back(n / 2);
    return block_diagonal(build_density(spec.parts[0], half, seed), build_density(spec.parts[1], half, seed + 1));
  }
  throw ScenarioError("unknown weight constructor '" + spec.kind + "'");
}

}  // namespace rnkit::harness
