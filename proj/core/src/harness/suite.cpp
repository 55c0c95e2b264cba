#include "rnkit/harness/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "rnkit/cocycle.hpp"
#include "rnkit/construction.hpp"
#include "rnkit/modular.hpp"
#include "rnkit/random.hpp"
#include "rnkit/theorems.hpp"

namespace rnkit::harness {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Worst {
  double value = 0.0;
  std::string point;
  void update(double v, const std::string& where) {
    if (std::isnan(value)) return;
    if (std::isnan(v) || point.empty() || v > value) {
      value = v;
      point = where;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string at(const char* name, double v) { return std::string(name) + "=" + fmt(v); }

std::string describe(const char* name, const std::vector<double>& g) {
  std::string s = std::string(name) + " in {";
  for (size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + fmt(g[i]);
  return s + "}";
}

std::string range(const char* name, double lo, double hi, double step) {
  return std::string(name) + " in [" + fmt(lo) + ", " + fmt(hi) + "] step " + fmt(step);
}

struct Context {
  const Scenario* scenario = nullptr;
  Weight phi;
  std::optional<Weight> psi;
  std::optional<InvariancePair> pair;
  std::string pair_error;
  std::optional<TestbedCase> testbed;
  std::optional<ConstructedWeight> cw;
  std::string cw_error;
  const RunOptions* options = nullptr;

  const InvariancePair& need_pair() const {
    if (!pair) throw InvalidArgument(pair_error.empty() ? "scenario has no pair" : pair_error);
    return *pair;
  }
  const ConstructedWeight& need_cw() const {
    if (!cw) throw InvalidArgument(cw_error.empty() ? "scenario has no pair" : cw_error);
    return *cw;
  }
  const Weight& need_psi() const {
    if (psi) return *psi;
    return need_cw().weight();
  }
  const BlockVector* probe() const { return testbed ? &testbed->probe : nullptr; }
};

class Suite {
 public:
  Suite(const Context& ctx, std::string name, std::vector<Record>& out)
      : ctx_(ctx), name_(std::move(name)), out_(out) {
    auto it = ctx.scenario->tolerances.find(name_);
    if (it != ctx.scenario->tolerances.end()) override_ = it->second;
    if (ctx.options->tolerance) override_ = ctx.options->tolerance;
  }

  double tol(double fallback) const { return override_ ? *override_ : fallback; }

  void add(const std::string& id, const std::string& anchor, const std::string& grid, double tolerance,
           const std::function<Worst()>& body, Relation relation = Relation::le,
           Expectation expect = Expectation::hold) {
    Record r;
    r.id = name_ + ": " + id;
    r.anchor = anchor;
    r.grid = grid;
    r.tolerance = expect == Expectation::hold ? tol(tolerance) : tolerance;
    r.relation = relation;
    r.expect = expect;
    try {
      const Worst w = body();
      r.max_residual = w.value;
      if (!relation_holds(r) && !w.point.empty()) r.counterexample = Counterexample{w.point, w.value};
    } catch (const NumericalFailure& e) {
      r.max_residual = kNaN;
      r.note = std::string("numerical failure: ") + e.what();
    } catch (const InvalidArgument& e) {
      r.max_residual = kNaN;
      r.note = std::string("invalid argument: ") + e.what();
    } catch (const ModeViolation& e) {
      r.max_residual = kNaN;
      r.note = std::string("mode violation: ") + e.what();
    }
    settle(r);
    out_.push_back(std::move(r));
  }

  void not_applicable(const std::string& why) {
    Record r;
    r.id = name_;
    r.anchor = "not applicable";
    r.grid = "-";
    r.max_residual = 0.0;
    r.expect = Expectation::info;
    r.note = why;
    settle(r);
    out_.push_back(std::move(r));
  }

  void append(std::vector<Record> records) {
    for (auto& r : records) {
      r.id = name_ + ": " + r.id;
      out_.push_back(std::move(r));
    }
  }

 private:
  const Context& ctx_;
  std::string name_;
  std::vector<Record>& out_;
  std::optional<double> override_;
};

const std::vector<double> kCertGrid{-1.0, -0.5, 0.5, 1.0};

void run_pt_exact(const Context& c, Suite& s) {
  const auto grid = linear_grid(-2.0, 2.0, 0.25);
  s.add("[D phi_delta : D phi]_t = lambda^{it^2/2} delta^{it}", "Pedersen-Takesaki construction cocycle",
        range("t", -2, 2, 0.25), c.testbed ? 1e-3 : 1e-10, [&] {
          Worst w;
          if (c.testbed) {
            for (double t : grid) w.update(construction_cocycle_residual(c.need_cw(), t, *c.probe()), at("t", t));
          } else {
            for (double t : grid) w.update(construction_cocycle_residual(c.phi, c.need_pair(), t), at("t", t));
          }
          return w;
        });
}

void run_cocycle_algebra(const Context& c, Suite& s) {
  if (c.testbed) return s.not_applicable("finite scenarios only");
  const auto g = linear_grid(-3.0, 3.0, 0.5);
  const std::string grid = range("s, t", -3, 3, 0.5);
  s.add("chain rule u_{s+t} = u_s sigma_s(u_t)", "Connes cocycle chain rule", grid, 1e-10, [&] {
    Worst w;
    for (double a : g)
      for (double b : g) w.update(cocycle_chain_residual(c.need_psi(), c.phi, a, b), "s=" + fmt(a) + ", t=" + fmt(b));
    return w;
  });
  s.add("inverse rule u_{-t} = sigma_{-t}(u_t*)", "Connes cocycle inverse", range("t", -3, 3, 0.5), 1e-10, [&] {
    Worst w;
    for (double t : g) w.update(cocycle_inverse_residual(c.need_psi(), c.phi, t), at("t", t));
    return w;
  });
  s.add("intertwining sigma^psi_t = u_t sigma^phi_t(.) u_t*", "Connes cocycle intertwines the flows",
        range("t", -3, 3, 0.5), 1e-10, [&] {
          Worst w;
          for (double t : g) w.update(cocycle_intertwining_residual(c.need_psi(), c.phi, t), at("t", t));
          return w;
        });
  s.add("balanced weight corner equals the cocycle", "balanced weight construction", range("t", -3, 3, 0.5), 1e-12,
        [&] {
          Worst w;
          for (double t : g) w.update(balanced_corner_residual(c.need_psi(), c.phi, t), at("t", t));
          return w;
        });
}

void run_smearing(const Context& c, Suite& s) {
  if (c.testbed) return s.not_applicable("finite scenarios only; see smear-limit");
  const std::vector<int> ns{1, 2, 4, 8};
  const std::string ngrid = "n in {1, 2, 4, 8}";
  std::vector<SmearingElement> es;
  std::string smear_error;
  try {
    for (int n : ns) es.push_back(smear_element(c.need_pair(), n));
  } catch (const std::exception& e) {
    smear_error = e.what();
  }
  auto each = [&](const std::function<double(const SmearingElement&)>& f) {
    if (!smear_error.empty()) throw NumericalFailure(smear_error);
    Worst w;
    for (const auto& e : es) w.update(f(e), "n=" + std::to_string(e.n));
    return w;
  };
  s.add("e_n is Hermitian", "smearing element", ngrid, 1e-10,
        [&] { return each([](const SmearingElement& e) { return e.value.hermiticity_defect(); }); });
  s.add("||e_n|| - 1 <= 0", "smearing element is a contraction", ngrid, 1e-8,
        [&] { return each([](const SmearingElement& e) { return std::max(e.value.norm() - 1.0, 0.0); }); });
  s.add("quadrature error estimate", "smearing element quadrature", ngrid, 1e-8,
        [&] { return each([](const SmearingElement& e) { return e.meta.error_estimate; }); });
  if (c.pair && c.pair->delta().log_norm() <= 1e-12 && c.pair->lambda().log_norm() <= 1e-12) {
    s.add("||e_n - 1|| for delta = lambda = 1", "smearing normalization", ngrid, 1e-8, [&] {
      return each([](const SmearingElement& e) { return (e.value - algebra_of(e.value).identity()).norm(); });
    });
  }
  const std::vector<double> pts{-1.0, 0.0, 1.0};
  s.add("sigma_t(delta^x lambda^y sigma_z(e_n)) = delta^x lambda^{y+tx} sigma_{t+z}(e_n)",
        "analytic extension of the smearing element", "n=2; x, y, z, t in {-1, 0, 1}", 1e-9, [&] {
          Worst w;
          for (double x : pts)
            for (double y : pts)
              for (double z : pts)
                for (double t : pts)
                  w.update(smear_analytic_residual(c.need_pair(), c.phi, 2, x, y, z, t),
                           "x=" + fmt(x) + ", y=" + fmt(y) + ", z=" + fmt(z) + ", t=" + fmt(t));
          return w;
        });
}

void run_limit_formula(const Context& c, Suite& s) {
  if (c.testbed) return s.not_applicable("finite scenarios only");
  const std::vector<int> ns{1, 2, 4, 8};
  std::vector<double> r;
  std::string error;
  try {
    const Element one = c.phi.algebra().identity();
    for (int n : ns) r.push_back(limit_formula_residual(c.phi, c.need_pair(), one, n));
  } catch (const std::exception& e) {
    error = e.what();
  }
  auto guard = [&] {
    if (!error.empty()) throw NumericalFailure(error);
  };
  s.add("|phi(delta^{1/2} e_n x delta^{1/2} e_n) - phi_delta(x)| at n = 8", "limit formula for phi_delta",
        "x = 1, n = 8", 1e-6, [&] {
          guard();
          Worst w;
          w.update(r.back(), "n=8");
          return w;
        });
  s.add("limit residual decreasing in n", "limit formula for phi_delta", "x = 1, n in {1, 2, 4, 8}", 0.0, [&] {
    guard();
    Worst w;
    w.update(0.0, "monotone");
    for (size_t i = 1; i < r.size(); ++i) w.update(r[i] - r[i - 1], "n=" + std::to_string(ns[i]));
    return w;
  });
  s.add("limit residual table", "limit formula for phi_delta", "x = 1, n in {1, 2, 4, 8}", 0.0,
        [&] {
          guard();
          Worst w;
          for (size_t i = 0; i < r.size(); ++i) w.update(r[i], "n=" + std::to_string(ns[i]));
          return w;
        },
        Relation::le, Expectation::info);
}

void run_modular(const Context& c, Suite& s) {
  if (c.testbed) return s.not_applicable("finite scenarios only");
  auto gns_prime = [&] { return gns(c.need_cw().weight()); };
  s.add("Delta'^{is} from u_s equals the modular operator of phi_delta", "modular operator of phi_delta",
        describe("s", kCertGrid), 1e-10, [&] {
          const GnsRealization g = gns_prime();
          Worst w;
          for (double x : kCertGrid)
            w.update(basis_distance(u_superoperator(c.phi, c.need_pair(), x), g.delta_power(I * x)), at("s", x));
          return w;
        });
  s.add("closure formula Delta'^r at real r", "modular operator of phi_delta, closure formula", "r in {0.5, 1}",
        1e-10, [&] {
          const GnsRealization g = gns_prime();
          Worst w;
          for (double r : {0.5, 1.0})
            w.update(basis_distance(delta_prime_power(c.phi, c.need_pair(), r), g.delta_power(r)), at("r", r));
          return w;
        });
  s.add("S' Gamma(a) = Gamma(a*)", "modular conjugation of phi_delta", "matrix units", 1e-10, [&] {
    Worst w;
    int k = 0;
    for (const auto& e : c.phi.algebra().basis())
      w.update(s_prime_residual(c.phi, c.need_pair(), e), "basis element " + std::to_string(k++));
    return w;
  });
  s.add("J lambda^{-i/8} rho^{1/2} Lambda(x) = Gamma(x*)", "rho lemma", "matrix units", 1e-10, [&] {
    Worst w;
    int k = 0;
    for (const auto& e : c.phi.algebra().basis())
      w.update(rho_lemma_residual(c.phi, c.need_pair(), e), "basis element " + std::to_string(k++));
    return w;
  });
}

void run_uniqueness(const Context& c, Suite& s) {
  if (c.testbed) return s.not_applicable("finite scenarios only");
  const std::vector<double> ts{-1.0, -0.5, 0.5, 1.0};
  s.add("extracted lambda^{it} and delta^{it} match the pair", "uniqueness of the pair (lambda, delta)",
        describe("t", ts), 1e-10, [&] {
          const ConstructedWeight& cw = c.need_cw();
          const ExtractedPair ex = extract_pair(construction_cocycle_path(cw, extraction_nodes(ts)), ts);
          Worst w;
          for (size_t i = 0; i < ex.t.size(); ++i) {
            const double t = ex.t[i];
            w.update((ex.lambda_it[i] - cw.pair().lambda().power(I * t)).norm(), "lambda at t=" + fmt(t));
            w.update((ex.delta_it[i] - cw.pair().delta().power(I * t)).norm(), "delta at t=" + fmt(t));
          }
          return w;
        });
  s.add("fit_generators recovers log delta and log lambda", "uniqueness of the pair (lambda, delta)",
        range("t", 0, 1, 0.05), 1e-8, [&] {
          const ConstructedWeight& cw = c.need_cw();
          const GeneratorFit fit = fit_generators(construction_cocycle_path(cw, linear_grid(0.0, 1.0, 0.05)));
          Worst w;
          w.update((fit.D - cw.pair().delta().log()).frobenius_norm(), "D");
          w.update((fit.L - cw.pair().lambda().log()).frobenius_norm(), "L");
          return w;
        });
}

void run_theorem(const Context& c, Suite& s, TheoremKind kind) {
  const Scenario& sc = *c.scenario;
  TheoremInputs in;
  in.phi = c.phi;
  in.expect = sc.expect;
  in.tolerance = s.tol(c.testbed ? 1e-3 : 1e-10);
  std::vector<Record> records;
  try {
    if (kind == TheoremKind::rn1) {
      in.psi = c.need_psi();
      in.pair = c.need_pair();
    } else if (kind == TheoremKind::rn2) {
      if (c.testbed) return s.not_applicable("rn2 is verified on finite scenarios only");
      in.psi = c.need_psi();
    } else {
      if (c.testbed) {
        if (c.testbed->id != TestbedCaseId::scalar) return s.not_applicable("rn3 needs a scalar lambda");
        // scalar lambda = e^{-1}; rn3 with lambda0 = e runs on (phi_delta, phi)
        in.lambda0 = sc.lambda0.value_or(std::exp(1.0));
        in.phi = c.need_cw().weight();
        in.psi = c.phi;
        in.pair = InvariancePair::with_residual(c.need_pair().delta().inverse(),
                                                PositiveElement::scalar(c.phi.algebra(), in.lambda0), kNaN,
                                                "candidate delta^{-1}");
      } else {
        if (!sc.lambda0) throw InvalidArgument("rn3 needs lambda0");
        in.lambda0 = *sc.lambda0;
        in.psi = c.need_psi();
        if (c.pair) in.pair = c.pair;
      }
    }
    if (c.testbed) in.probe = *c.probe();
    records = verify_theorem(kind, in).records;
  } catch (const std::exception& e) {
    s.add(std::string(to_string(kind)) + " inputs", "Radon-Nikodym theorem", "-", in.tolerance,
          [&]() -> Worst { throw InvalidArgument(e.what()); });
    return;
  }
  s.append(std::move(records));
}

void run_rigidity(const Context& c, Suite& s) {
  if (c.testbed) return s.not_applicable("finite scenarios only");
  const std::vector<double> sg{0.25, 0.5, 1.0, 1.5, 2.0};
  const auto tg = linear_grid(0.0, 10.0, 0.05);
  bool nontrivial = false;
  try {
    nontrivial = c.need_pair().lambda().log_norm() >= 0.5;
  } catch (const std::exception&) {
  }
  s.add("rigidity witness: relative invariance fails for ||log lambda|| >= 0.5", "rigidity witness",
        describe("s", sg) + " x " + range("t", 0, 10, 0.05), 0.1,
        [&] {
          Worst w;
          for (double a : sg)
            for (double t : tg)
              w.update(relative_invariance_residual(c.phi, c.need_pair().delta(), c.need_pair().lambda(), a, t),
                       "s=" + fmt(a) + ", t=" + fmt(t));
          return w;
        },
        Relation::le, nontrivial ? Expectation::violate : Expectation::info);
}

void run_smear_limit(const Context& c, Suite& s) {
  const std::vector<int> ns{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<SmearDiagnostic> table;
  std::string error;
  try {
    table = c.testbed ? smear_limit_diagnostics(c.need_pair(), ns, *c.probe())
                      : smear_limit_diagnostics(c.need_pair(), ns);
  } catch (const std::exception& e) {
    error = e.what();
  }
  const std::string grid = "n in 1..8";
  s.add("e_n -> 1: final distance over initial", "smearing elements converge to 1", grid, 0.05, [&] {
    if (!error.empty()) throw NumericalFailure(error);
    Worst w;
    w.update(table.front().distance > 0 ? table.back().distance / table.front().distance : 0.0, "n=8 vs n=1");
    return w;
  });
  s.add("e_n -> 1: monotone up to 5%", "smearing elements converge to 1", grid, 0.05, [&] {
    if (!error.empty()) throw NumericalFailure(error);
    Worst w;
    w.update(0.0, "monotone");
    for (size_t i = 1; i < table.size(); ++i) {
      if (table[i - 1].distance > 0)
        w.update(table[i].distance / table[i - 1].distance - 1.0, "n=" + std::to_string(table[i].n));
    }
    return w;
  });
}

void run_weyl_invariance(const Context& c, Suite& s) {
  if (!c.testbed) return s.not_applicable("testbed scenarios only");
  const TestbedCase& tc = *c.testbed;
  s.add("(H^{it} K^{is} H^{-it} - lambda^{ist} K^{is}) probe", "Weyl relation, relative invariance",
        describe("s", kCertGrid) + " x " + describe("t", kCertGrid), 1e-5, [&] {
          Worst w;
          for (double a : kCertGrid)
            for (double t : kCertGrid)
              w.update(weyl_invariance_residual(tc, a, t, tc.probe), "s=" + fmt(a) + ", t=" + fmt(t));
          return w;
        });
  s.add("residual vanishes at s = 0 or t = 0", "Weyl relation, trivial slices", "s or t = 0, other in {-1, 1}",
        1e-12, [&] {
          Worst w;
          for (double a : {-1.0, 1.0}) {
            w.update(weyl_invariance_residual(tc, 0.0, a, tc.probe), "s=0, t=" + fmt(a));
            w.update(weyl_invariance_residual(tc, a, 0.0, tc.probe), "s=" + fmt(a) + ", t=0");
          }
          return w;
        });
}

void run_weyl_cocycle(const Context& c, Suite& s) {
  if (!c.testbed) return s.not_applicable("testbed scenarios only");
  const std::vector<double> ts{0.25, 0.5, 0.75, 1.0};
  s.add("[D phi_delta : D phi]_t probe = lambda^{it^2/2} delta^{it} probe", "construction cocycle on the testbed",
        describe("t", ts), 1e-3, [&] {
          Worst w;
          for (double t : ts) w.update(construction_cocycle_residual(c.need_cw(), t, *c.probe()), at("t", t));
          return w;
        });
}

void run_weyl_scalar_invariance(const Context& c, Suite& s) {
  if (!c.testbed || c.testbed->id != TestbedCaseId::scalar) return s.not_applicable("Weyl scalar case only");
  const std::vector<double> ts{0.25, 0.5, 0.75, 1.0};
  const double e = std::exp(1.0);
  auto run = [&](const std::string& label, const Weight& phi, const Weight& psi, double l0) {
    for (int which : {1, 2}) {
      s.add(label + (which == 1 ? " r1" : " r2"), "scalar Radon-Nikodym relations on the testbed",
            describe("t", ts), 1e-3, [&] {
              Worst w;
              for (double t : ts) {
                const ScalarInvarianceResidual r = scalar_invariance_residual(phi, psi, l0, t, *c.probe());
                w.update(which == 1 ? r.r1 : r.r2, at("t", t));
              }
              return w;
            });
    }
  };
  try {
    const Weight& phi_delta = c.need_cw().weight();
    run("(phi_delta, phi) with lambda0 = e", phi_delta, c.phi, e);
    run("(phi, phi_delta) with lambda0 = 1/e", c.phi, phi_delta, 1.0 / e);
  } catch (const std::exception& ex) {
    s.add("scalar invariance", "scalar Radon-Nikodym relations on the testbed", "-", 1e-3,
          [&]() -> Worst { throw InvalidArgument(ex.what()); });
  }
}

void run_weyl_centrality(const Context& c, Suite& s) {
  if (!c.testbed) return s.not_applicable("testbed scenarios only");
  const bool factor = c.testbed->id == TestbedCaseId::factor;
  s.add(factor ? "lambda is not central" : "lambda is central", "three-case taxonomy of lambda", "matrix units",
        factor ? 0.5 : 1e-12,
        [&] {
          Worst w;
          w.update(centrality_defect(c.need_pair().lambda().element()), "lambda");
          return w;
        },
        factor ? Relation::ge : Relation::le);
}

}  // namespace

namespace {

void build_pair(Materialized& c, const Scenario& s) {
  if (!s.pair) return;
  const PairSpec& p = *s.pair;
  try {
    PositiveElement delta;
    PositiveElement lambda;
    const BlockAlgebra algebra = c.phi.algebra();
    auto diag_positive = [](const std::vector<RealVector>& d) {
      std::vector<Matrix> vectors;
      std::vector<RealVector> logs;
      for (const auto& v : d) {
        vectors.push_back(Matrix::Identity(v.size(), v.size()));
        logs.push_back(v.array().log().matrix());
      }
      return PositiveElement::from_spectral(std::move(vectors), std::move(logs));
    };
    if (p.kind == "diag") {
      delta = diag_positive(p.delta_diag);
      lambda = p.lambda_diag.empty() ? PositiveElement::scalar(algebra, 1.0) : diag_positive(p.lambda_diag);
    } else if (p.kind == "matrix") {
      delta = PositiveElement::from_element(Element(p.delta_blocks));
      lambda = p.lambda_blocks.empty() ? PositiveElement::scalar(algebra, 1.0)
                                       : PositiveElement::from_element(Element(p.lambda_blocks));
    } else {
      Rng rng(s.seed + 2);
      delta = random_commuting_positive(rng, c.phi.density(), p.spread);
      lambda = PositiveElement::scalar(algebra, p.kind == "scalar" ? p.lambda : 1.0);
    }
    c.pair = InvariancePair::certify(c.phi, std::move(delta), std::move(lambda), p.mode);
  } catch (const std::exception& e) {
    c.pair_error = std::string("pair not admissible: ") + e.what();
  }
}

}  // namespace

Materialized materialize(const Scenario& s, std::uint64_t seed) {
  Materialized m;
  if (s.testbed) {
    m.testbed = case_scenario(s.testbed->id, build_grid(s.testbed->N, s.testbed->L_box));
    m.phi = m.testbed->phi;
    m.pair = m.testbed->pair;
  } else {
    Scenario seeded = s;
    seeded.seed = seed;
    m.phi = Weight(build_density(*s.weight, s.blocks, seed));
    if (s.psi) m.psi = Weight(build_density(*s.psi, s.blocks, seed + 1));
    build_pair(m, seeded);
  }
  return m;
}

double default_tolerance(const std::string& suite) {
  if (suite == "limit-formula") return 1e-6;
  if (suite == "weyl-invariance") return 1e-5;
  if (suite == "weyl-cocycle" || suite == "weyl-scalar-invariance") return 1e-3;
  if (suite == "rigidity") return 0.1;
  if (suite == "smear-limit") return 0.05;
  return 1e-10;
}

Report run_suite(const Scenario& s, const RunOptions& options) {
  Context c;
  c.scenario = &s;
  c.options = &options;
  const std::uint64_t seed = options.seed.value_or(s.seed);
  Scenario seeded = s;
  seeded.seed = seed;
  c.scenario = &seeded;

  Materialized m = materialize(s, seed);
  c.phi = std::move(m.phi);
  c.psi = std::move(m.psi);
  c.pair = std::move(m.pair);
  c.pair_error = std::move(m.pair_error);
  c.testbed = std::move(m.testbed);
  if (c.pair) {
    try {
      c.cw = construct_weight(c.phi, *c.pair, c.pair->mode());
    } catch (const std::exception& e) {
      c.cw_error = std::string("construction failed: ") + e.what();
    }
  } else {
    c.cw_error = c.pair_error;
  }

  Report report;
  report.scenario = s.name;
  report.version = RNKIT_VERSION;
  report.seed = seed;
  if (c.pair && c.pair->mode() == Mode::approximate && !c.testbed) {
    Record r;
    r.id = "pair: certification residual";
    r.anchor = "relative invariance of the pair";
    r.grid = c.pair->grid_description();
    r.max_residual = c.pair->invariance_residual();
    r.expect = Expectation::info;
    r.note = "approximate mode";
    settle(r);
    report.records.push_back(std::move(r));
  }
  if (!c.pair_error.empty()) {
    Record r;
    r.id = "pair: certification";
    r.anchor = "relative invariance of the pair";
    r.grid = CertificationGrid{}.describe();
    r.max_residual = kNaN;
    r.tolerance = 1e-10;
    r.note = c.pair_error;
    settle(r);
    report.records.push_back(std::move(r));
  }

  for (const auto& name : s.suites) {
    Suite suite(c, name, report.records);
    if (name == "pt-exact") {
      run_pt_exact(c, suite);
    } else if (name == "cocycle-algebra") {
      run_cocycle_algebra(c, suite);
    } else if (name == "smearing") {
      run_smearing(c, suite);
    } else if (name == "limit-formula") {
      run_limit_formula(c, suite);
    } else if (name == "modular") {
      run_modular(c, suite);
    } else if (name == "uniqueness") {
      run_uniqueness(c, suite);
    } else if (name == "rn1") {
      run_theorem(c, suite, TheoremKind::rn1);
    } else if (name == "rn2") {
      run_theorem(c, suite, TheoremKind::rn2);
    } else if (name == "rn3") {
      run_theorem(c, suite, TheoremKind::rn3);
    } else if (name == "rigidity") {
      run_rigidity(c, suite);
    } else if (name == "smear-limit") {
      run_smear_limit(c, suite);
    } else if (name == "weyl-invariance") {
      run_weyl_invariance(c, suite);
    } else if (name == "weyl-cocycle") {
      run_weyl_cocycle(c, suite);
    } else if (name == "weyl-scalar-invariance") {
      run_weyl_scalar_invariance(c, suite);
    } else if (name == "weyl-centrality") {
      run_weyl_centrality(c, suite);
    }
  }
  finalize(report);
  return report;
}

}  // namespace rnkit::harness
