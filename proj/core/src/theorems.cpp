#include "rnkit/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "rnkit/errors.hpp"

namespace rnkit {

namespace {

constexpr Complex I{0.0, 1.0};

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

std::string at(const char* name, double v) {
  std::ostringstream os;
  os << name << "=" << v;
  return os.str();
}

std::string at(double s, double t) {
  std::ostringstream os;
  os << "s=" << s << ", t=" << t;
  return os.str();
}

std::string describe(const char* name, const std::vector<double>& g) {
  std::ostringstream os;
  os << name << " in {";
  for (size_t i = 0; i < g.size(); ++i) os << (i ? ", " : "") << g[i];
  os << "}";
  return os.str();
}

// Runs one check; numerical failures become NaN residuals with a note.
Record check(const std::string& id, const std::string& anchor, const std::string& grid, double tol,
             Expectation expect, const std::function<Worst()>& body, Relation relation = Relation::le) {
  Record r;
  r.id = id;
  r.anchor = anchor;
  r.grid = grid;
  r.tolerance = tol;
  r.relation = relation;
  r.expect = expect;
  try {
    const Worst w = body();
    r.max_residual = w.value;
    if (!relation_holds(r)) r.counterexample = Counterexample{w.point, w.value};
  } catch (const NumericalFailure& e) {
    r.max_residual = std::numeric_limits<double>::quiet_NaN();
    r.note = std::string("numerical failure: ") + e.what();
  } catch (const InvalidArgument& e) {
    r.max_residual = std::numeric_limits<double>::quiet_NaN();
    r.note = std::string("invalid argument: ") + e.what();
  }
  settle(r);
  return r;
}

Expectation diagnostic(Expectation e) { return e == Expectation::hold ? Expectation::hold : Expectation::info; }

// Appends the implication-pattern record over the given condition records.
std::string add_pattern(TheoremResult& out, const std::string& kind, size_t first, size_t count) {
  int holding = 0;
  const Record* witness = nullptr;
  for (size_t i = first; i < first + count; ++i) {
    if (relation_holds(out.records[i])) {
      ++holding;
    } else if (!witness) {
      witness = &out.records[i];
    }
  }
  const bool mixed = holding != 0 && holding != static_cast<int>(count);
  Record r;
  r.id = kind + " implication pattern";
  r.anchor = "equivalent conditions hold or fail together";
  r.grid = "conditions " + std::to_string(count);
  r.max_residual = mixed ? 1.0 : 0.0;
  r.tolerance = 0.5;
  if (mixed && witness) {
    r.counterexample = Counterexample{witness->id + " at " +
                                          (witness->counterexample ? witness->counterexample->point : "n/a"),
                                      witness->max_residual};
  }
  r.note = "numerical evidence on finite grids, not a proof";
  settle(r);
  out.records.push_back(r);
  out.pattern = mixed ? "mixed" : (holding ? "all-pass" : "all-fail");
  return out.pattern;
}

double density_gap(const Weight& psi, const PositiveElement& delta, const Weight& phi,
                   const std::optional<BlockVector>& probe) {
  const PositiveElement target = congruence(delta, phi.density());
  if (probe) {
    const double a = psi.on_vector(*probe);
    const double b = Weight(target).on_vector(*probe);
    return std::abs(a - b) / a;
  }
  return (psi.density().element() - target.element()).norm() / psi.density().element().norm();
}

double cocycle_gap(const Weight& psi, const Weight& phi, const PositiveElement& delta, const PositiveElement& lambda,
                   double t, const std::optional<BlockVector>& probe) {
  if (probe) {
    const BlockVector lhs = psi.density().apply_power(I * t, phi.density().apply_power(-I * t, *probe));
    const BlockVector rhs = lambda.apply_power(I * (t * t / 2.0), delta.apply_power(I * t, *probe));
    return norm(lhs - rhs) / norm(*probe);
  }
  const Element target = lambda.power(I * (t * t / 2.0)) * delta.power(I * t);
  return (connes_cocycle(psi, phi, t) - target).norm();
}

double invariance_gap(const Weight& phi, const PositiveElement& delta, const PositiveElement& lambda, double s,
                      double t, const std::optional<BlockVector>& probe) {
  return probe ? relative_invariance_residual(phi, delta, lambda, s, t, *probe)
               : relative_invariance_residual(phi, delta, lambda, s, t);
}

TheoremResult verify_rn1(const TheoremInputs& in) {
  if (!in.pair) throw InvalidArgument("rn1 needs an invariance pair");
  const PositiveElement& delta = in.pair->delta();
  const PositiveElement& lambda = in.pair->lambda();
  TheoremResult out;
  const std::string tg = describe("t", in.t_grid);
  const std::string stg = describe("s", in.s_grid) + " x " + tg;
  out.records.push_back(check("rn1 (1) cocycle equals lambda^{it^2/2} delta^{it}",
                              "general Radon-Nikodym theorem, cocycle condition", tg, in.tolerance, in.expect, [&] {
                                Worst w;
                                for (double t : in.t_grid)
                                  w.update(cocycle_gap(in.psi, in.phi, delta, lambda, t, in.probe), at("t", t));
                                return w;
                              }));
  out.records.push_back(check("rn1 (2) relative invariance and psi = phi_delta",
                              "general Radon-Nikodym theorem, invariance condition", stg, in.tolerance, in.expect, [&] {
                                Worst w;
                                for (double s : in.s_grid)
                                  for (double t : in.t_grid)
                                    w.update(invariance_gap(in.phi, delta, lambda, s, t, in.probe), at(s, t));
                                w.update(density_gap(in.psi, delta, in.phi, in.probe), "density");
                                return w;
                              }));
  add_pattern(out, "rn1", 0, 2);
  return out;
}

// Unwrapped phase slope of the per-block mean of w(1, t) against t.
std::vector<double> central_log_slopes(const BicharacterTable& table) {
  const auto& row = table.w.front();
  const int blocks = row.front().block_count();
  std::vector<double> slopes;
  for (int k = 0; k < blocks; ++k) {
    std::vector<std::pair<double, double>> pts;
    for (size_t j = 0; j < table.t.size(); ++j) {
      const Matrix& b = row[j].block(k);
      pts.emplace_back(table.t[j], std::arg(b.trace() / static_cast<double>(b.rows())));
    }
    // unwrap outward from t = 0
    size_t zero = 0;
    for (size_t j = 0; j < pts.size(); ++j)
      if (std::abs(pts[j].first) < std::abs(pts[zero].first)) zero = j;
    auto unwrap = [](double prev, double cur) {
      while (cur - prev > std::numbers::pi) cur -= 2.0 * std::numbers::pi;
      while (cur - prev < -std::numbers::pi) cur += 2.0 * std::numbers::pi;
      return cur;
    };
    for (size_t j = zero + 1; j < pts.size(); ++j) pts[j].second = unwrap(pts[j - 1].second, pts[j].second);
    for (size_t j = zero; j-- > 0;) pts[j].second = unwrap(pts[j + 1].second, pts[j].second);
    double num = 0.0;
    double den = 0.0;
    for (const auto& [t, th] : pts) {
      num += t * th;
      den += t * t;
    }
    slopes.push_back(num / den);
  }
  return slopes;
}

PositiveElement central_element(const std::vector<int>& dims, const std::vector<double>& logs) {
  std::vector<Matrix> vectors;
  std::vector<RealVector> l;
  for (size_t k = 0; k < dims.size(); ++k) {
    vectors.emplace_back(Matrix::Identity(dims[k], dims[k]));
    l.emplace_back(RealVector::Constant(dims[k], logs[k]));
  }
  return PositiveElement::from_spectral(std::move(vectors), std::move(l));
}

TheoremResult verify_rn2(const TheoremInputs& in) {
  if (in.probe) throw InvalidArgument("rn2 is verified on finite scenarios only");
  const Weight& phi = in.phi;
  const Weight& psi = in.psi;
  const std::vector<int> dims = phi.density().block_dims();
  TheoremResult out;
  const Expectation diag = diagnostic(in.expect);
  const std::string stg = describe("s", in.s_grid) + " x " + describe("t", in.t_grid);

  out.records.push_back(check("rn2 (1) modular flows commute", "commuting-flows theorem, condition (1)", stg,
                              in.tolerance, in.expect, [&] {
                                Worst w;
                                for (double s : in.s_grid)
                                  for (double t : in.t_grid) w.update(flows_commute_residual(phi, psi, s, t), at(s, t));
                                return w;
                              }));

  const std::vector<double> path_grid = linear_grid(-3.0, 3.0, 0.05);
  const CocyclePath u = CocyclePath::sample(path_grid, [&](double t) { return connes_cocycle(psi, phi, t); });
  const std::vector<double> wg = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const BicharacterTable table = bicharacter(u, wg, wg);
  const BicharacterResiduals br = bicharacter_residuals(table);
  const std::string wgrid = describe("s", wg) + " x " + describe("t", wg);
  out.records.push_back(check("rn2 pipeline: w(s,t) centrality", "commuting-flows proof, w(s,t) lies in the centre",
                              wgrid, in.tolerance, diag, [&] { return Worst{br.centrality, "table"}; }));
  out.records.push_back(check("rn2 pipeline: w(s,t) multiplicativity",
                              "commuting-flows proof, w is multiplicative in s and t", wgrid, in.tolerance, diag,
                              [&] { return Worst{std::max(br.additivity_s, br.additivity_t), "table"}; }));

  const std::vector<double> eg = linear_grid(-1.0, 1.0, 0.05);
  const BicharacterTable at_one = bicharacter(u, {1.0}, eg);
  const std::vector<double> slopes = central_log_slopes(at_one);
  const PositiveElement lambda = central_element(dims, slopes);
  out.records.push_back(check("rn2 pipeline: lambda^{ist} = w(s,t) two-grid consistency",
                              "commuting-flows proof, lambda from w(1,t) checked at s = 1/2", describe("t", eg), 1e-8,
                              diag, [&] {
                                Worst w;
                                const BicharacterTable half = bicharacter(u, {0.5}, eg);
                                for (size_t j = 0; j < eg.size(); ++j) {
                                  w.update((half.w[0][j] - lambda.power(I * (eg[j] / 2.0))).norm(), at(0.5, eg[j]));
                                  w.update((at_one.w[0][j] - lambda.power(I * eg[j])).norm(), at(1.0, eg[j]));
                                }
                                return w;
                              }));
  out.records.push_back(check("rn2 pipeline: v_t = lambda^{-it^2/2} u_t group law",
                              "commuting-flows proof, v_t is a one-parameter group", wgrid, in.tolerance, diag, [&] {
                                Worst w;
                                auto v = [&](double t) { return lambda.power(-I * (t * t / 2.0)) * u.at(t); };
                                for (double s : wg)
                                  for (double t : wg) w.update((v(s + t) - v(s) * v(t)).norm(), at(s, t));
                                return w;
                              }));

  std::optional<PositiveElement> delta;
  std::string fit_error;
  double fit_residual = std::numeric_limits<double>::quiet_NaN();
  try {
    const CocyclePath fit_path =
        CocyclePath::sample(linear_grid(-1.0, 1.0, 0.05), [&](double t) { return u.at(t); });
    const GeneratorFit fit = fit_generators(fit_path);
    fit_residual = fit.residual;
    delta = PositiveElement::from_log(fit.D, 1e-8);
  } catch (const NumericalFailure& e) {
    fit_error = e.what();
  }
  Record fit_rec = check("rn2 pipeline: generator fit misfit", "model u_t = exp(i(t D + t^2/2 L))",
                         "t in [-1, 1] step 0.05", std::max(in.tolerance, 1e-8), diag,
                         [&]() -> Worst {
                           if (!delta) throw NumericalFailure(fit_error);
                           return Worst{fit_residual, "fit"};
                         });
  out.records.push_back(fit_rec);

  const size_t first = out.records.size();
  out.records.push_back(check("rn2 (2) central lambda, relative invariance and psi = phi_delta",
                              "commuting-flows theorem, condition (2)", stg, in.tolerance, in.expect, [&]() -> Worst {
                                if (!delta) throw NumericalFailure("no delta: " + fit_error);
                                Worst w;
                                for (double s : in.s_grid)
                                  for (double t : in.t_grid)
                                    w.update(relative_invariance_residual(phi, *delta, lambda, s, t), at(s, t));
                                w.update(density_gap(psi, *delta, phi, std::nullopt), "density");
                                return w;
                              }));
  out.records.push_back(check("rn2 (3) cocycle equals lambda^{it^2/2} delta^{it} with central lambda",
                              "commuting-flows theorem, condition (3)", describe("t", in.t_grid), in.tolerance,
                              in.expect, [&]() -> Worst {
                                if (!delta) throw NumericalFailure("no delta: " + fit_error);
                                Worst w;
                                for (double t : in.t_grid)
                                  w.update(cocycle_gap(psi, phi, *delta, lambda, t, std::nullopt), at("t", t));
                                return w;
                              }));
  // the pattern covers condition (1) and the two existence conditions
  std::swap(out.records[1], out.records[first]);
  std::swap(out.records[2], out.records[first + 1]);
  add_pattern(out, "rn2", 0, 3);
  return out;
}

TheoremResult verify_rn3(const TheoremInputs& in) {
  if (!(in.lambda0 > 0.0)) throw InvalidArgument("rn3 needs lambda0 > 0");
  const Weight& phi = in.phi;
  const Weight& psi = in.psi;
  const double l0 = in.lambda0;
  const PositiveElement lambda = PositiveElement::scalar(phi.algebra(), l0);
  TheoremResult out;
  const Expectation diag = diagnostic(in.expect);
  const std::string tg = describe("t", in.t_grid);
  const std::string stg = describe("s", in.s_grid) + " x " + tg;

  auto scalar = [&](double t) {
    return in.probe ? scalar_invariance_residual(phi, psi, l0, t, *in.probe) : scalar_invariance_residual(phi, psi, l0, t);
  };
  out.records.push_back(check("rn3 (1) phi o sigma^psi_t = lambda^t phi", "scalar Radon-Nikodym theorem, condition (1)",
                              tg, in.tolerance, in.expect, [&] {
                                Worst w;
                                for (double t : in.t_grid) w.update(scalar(t).r1, at("t", t));
                                return w;
                              }));
  out.records.push_back(check("rn3 (2) psi o sigma^phi_t = lambda^{-t} psi",
                              "scalar Radon-Nikodym theorem, condition (2)", tg, in.tolerance, in.expect, [&] {
                                Worst w;
                                for (double t : in.t_grid) w.update(scalar(t).r2, at("t", t));
                                return w;
                              }));

  std::optional<PositiveElement> delta;
  std::string delta_error;
  if (in.probe) {
    if (!in.pair) throw InvalidArgument("rn3 on a probe needs a candidate delta");
    delta = in.pair->delta();
    // delta^{it} from the path, v_t = lambda0^{-it^2/2} u_t, against the candidate
    out.records.push_back(check("rn3 pipeline: delta^{it} = lambda^{-it^2/2} u_t matches candidate",
                                "uniqueness of the pair (lambda, delta)", tg, in.tolerance, diag, [&] {
                                  Worst w;
                                  for (double t : in.t_grid) {
                                    const BlockVector& p = *in.probe;
                                    BlockVector v = psi.density().apply_power(I * t, phi.density().apply_power(-I * t, p));
                                    const Complex c = std::exp(-I * (t * t / 2.0) * std::log(l0));
                                    for (auto& b : v) b *= c;
                                    w.update(norm(v - delta->apply_power(I * t, p)) / norm(p), at("t", t));
                                  }
                                  return w;
                                }));
  } else {
    const CocyclePath u =
        CocyclePath::sample(linear_grid(-2.0, 2.0, 0.05), [&](double t) { return connes_cocycle(psi, phi, t); });
    out.records.push_back(check("rn3 pipeline: v_t = lambda^{-it^2/2} u_t group law",
                                "scalar theorem proof, v_t is a one-parameter group", "s, t in [-1, 1] step 0.5",
                                in.tolerance, diag, [&] {
                                  Worst w;
                                  auto v = [&](double t) { return std::exp(-I * (t * t / 2.0) * std::log(l0)) * u.at(t); };
                                  for (double s : linear_grid(-1.0, 1.0, 0.5))
                                    for (double t : linear_grid(-1.0, 1.0, 0.5))
                                      w.update((v(s + t) - v(s) * v(t)).norm(), at(s, t));
                                  return w;
                                }));
    try {
      const CocyclePath v = CocyclePath::sample(linear_grid(-1.0, 1.0, 0.05), [&](double t) {
        return std::exp(-I * (t * t / 2.0) * std::log(l0)) * u.at(t);
      });
      delta = PositiveElement::from_log(fit_generators(v).D, 1e-8);
    } catch (const NumericalFailure& e) {
      delta_error = e.what();
    }
  }

  out.records.push_back(check("rn3 (3) relative invariance with scalar lambda and psi = phi_delta",
                              "scalar Radon-Nikodym theorem, condition (3)", stg, in.tolerance, in.expect,
                              [&]() -> Worst {
                                if (!delta) throw NumericalFailure("no delta: " + delta_error);
                                Worst w;
                                for (double s : in.s_grid)
                                  for (double t : in.t_grid)
                                    w.update(invariance_gap(phi, *delta, lambda, s, t, in.probe), at(s, t));
                                w.update(density_gap(psi, *delta, phi, in.probe), "density");
                                return w;
                              }));
  out.records.push_back(check("rn3 (4) cocycle equals lambda^{it^2/2} delta^{it}",
                              "scalar Radon-Nikodym theorem, condition (4)", tg, in.tolerance, in.expect,
                              [&]() -> Worst {
                                if (!delta) throw NumericalFailure("no delta: " + delta_error);
                                Worst w;
                                for (double t : in.t_grid)
                                  w.update(cocycle_gap(psi, phi, *delta, lambda, t, in.probe), at("t", t));
                                return w;
                              }));
  // conditions are records 0, 1 and the last two
  std::swap(out.records[2], out.records[out.records.size() - 2]);
  std::swap(out.records[3], out.records[out.records.size() - 1]);
  add_pattern(out, "rn3", 0, 4);
  return out;
}

}  // namespace

const char* to_string(TheoremKind kind) {
  switch (kind) {
    case TheoremKind::rn1:
      return "rn1";
    case TheoremKind::rn2:
      return "rn2";
    case TheoremKind::rn3:
      return "rn3";
  }
  return "rn1";
}

TheoremKind theorem_kind_from_string(const std::string& s) {
  if (s == "rn1") return TheoremKind::rn1;
  if (s == "rn2") return TheoremKind::rn2;
  if (s == "rn3") return TheoremKind::rn3;
  throw InvalidArgument("unknown theorem kind '" + s + "' (expected rn1, rn2 or rn3)");
}

TheoremResult verify_theorem(TheoremKind kind, const TheoremInputs& inputs) {
  if (inputs.phi.density().block_dims() != inputs.psi.density().block_dims()) {
    throw InvalidArgument("verify_theorem: phi and psi live on different algebras");
  }
  switch (kind) {
    case TheoremKind::rn1:
      return verify_rn1(inputs);
    case TheoremKind::rn2:
      return verify_rn2(inputs);
    case TheoremKind::rn3:
      return verify_rn3(inputs);
  }
  throw InvalidArgument("verify_theorem: unknown kind");
}

}  // namespace rnkit
