#include "rnkit/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rnkit/errors.hpp"
#include "rnkit/modular.hpp"
#include "rnkit/spectral.hpp"

namespace rnkit {

namespace {

constexpr double node_tol = 1e-12;

int find_node(const std::vector<double>& grid, double t) {
  auto it = std::lower_bound(grid.begin(), grid.end(), t - node_tol);
  if (it != grid.end() && std::abs(*it - t) <= node_tol) return static_cast<int>(it - grid.begin());
  return -1;
}

Element exp_i_hermitian(const Element& x) {
  std::vector<Matrix> blocks;
  for (const auto& b : x.blocks()) {
    const HermitianSpectrum sp = hermitian_eig(b, 1e-10);
    const Eigen::VectorXcd f = (Complex(0, 1) * sp.values.cast<Complex>()).array().exp().matrix();
    blocks.emplace_back(sp.vectors * f.asDiagonal() * sp.vectors.adjoint());
  }
  return Element(std::move(blocks));
}

Element unitary_log_element(const Element& u, double& max_phase) {
  std::vector<Matrix> blocks;
  for (const auto& b : u.blocks()) {
    UnitaryLog lg = unitary_log(b);
    max_phase = std::max(max_phase, lg.max_phase);
    blocks.push_back(std::move(lg.generator));
  }
  return Element(std::move(blocks));
}

}  // namespace

CocyclePath CocyclePath::from_generators(Element D, Element L) {
  require_same_shape(D, L, "cocycle path generators");
  const double scale = (1.0 + D.norm()) * (1.0 + L.norm());
  if (D.hermiticity_defect() > 1e-12 * scale || L.hermiticity_defect() > 1e-12 * scale) {
    throw InvalidArgument("cocycle path: generators must be Hermitian");
  }
  if (commutation_defect(D, L) > 1e-12 * scale) {
    throw InvalidArgument("cocycle path: generators D and L do not commute");
  }
  CocyclePath p;
  p.generator_ = true;
  p.d_ = std::move(D);
  p.l_ = std::move(L);
  return p;
}

CocyclePath CocyclePath::from_samples(std::vector<double> t, std::vector<Element> u) {
  if (t.empty() || t.size() != u.size()) throw InvalidArgument("cocycle path: grid and samples differ in length");
  for (size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw InvalidArgument("cocycle path: grid must be strictly increasing");
  }
  if (find_node(t, 0.0) < 0) throw InvalidArgument("cocycle path: grid must contain t = 0");
  for (size_t i = 0; i < u.size(); ++i) {
    require_same_shape(u[0], u[i], "cocycle path samples");
    for (const auto& b : u[i].blocks()) {
      if (unitarity_defect(b) > 1e-10) {
        throw InvalidArgument("cocycle path: sample at t = " + std::to_string(t[i]) + " is not unitary");
      }
    }
  }
  CocyclePath p;
  p.t_ = std::move(t);
  p.u_ = std::move(u);
  return p;
}

CocyclePath CocyclePath::sample(std::vector<double> t, const std::function<Element(double)>& u) {
  std::vector<Element> values;
  values.reserve(t.size());
  for (double ti : t) values.push_back(u(ti));
  return from_samples(std::move(t), std::move(values));
}

std::vector<int> CocyclePath::block_dims() const { return generator_ ? d_.block_dims() : u_.front().block_dims(); }

bool CocyclePath::has_node(double t) const { return generator_ || find_node(t_, t) >= 0; }

Element CocyclePath::at(double t) const {
  if (generator_) return exp_i_hermitian(t * d_ + (t * t / 2.0) * l_);
  const int k = find_node(t_, t);
  if (k < 0) throw InvalidArgument("cocycle path: grid has no node at t = " + std::to_string(t));
  return u_[static_cast<size_t>(k)];
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw InvalidArgument("linear_grid: bad range");
  std::vector<double> g;
  const long n = std::lround((hi - lo) / step);
  for (long k = 0; k <= n; ++k) g.push_back(lo + static_cast<double>(k) * step);
  return g;
}

std::vector<double> merge_grids(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double v : a) {
    if (out.empty() || v - out.back() > node_tol) out.push_back(v);
  }
  return out;
}

CocyclePath synth_path(const Element& D, const Element& L, const std::vector<double>& t_grid) {
  const CocyclePath gen = CocyclePath::from_generators(D, L);
  return CocyclePath::sample(t_grid, [&](double t) { return gen.at(t); });
}

GeneratorFit fit_generators(const CocyclePath& u) {
  if (u.is_generator()) return {u.D(), u.L(), 0.0, 0.0};
  const auto& t = u.grid();
  const auto& s = u.samples();
  int nonzero = 0;
  for (double ti : t)
    if (std::abs(ti) > node_tol) ++nonzero;
  if (nonzero < 3) throw InvalidArgument("fit_generators: need at least three nonzero grid nodes");

  const int k0 = find_node(t, 0.0);
  const int n = static_cast<int>(t.size());
  std::vector<Element> x(static_cast<size_t>(n));
  double worst_phase = 0.0;
  x[static_cast<size_t>(k0)] = unitary_log_element(s[static_cast<size_t>(k0)], worst_phase);
  worst_phase = 0.0;
  auto step = [&](int from, int to) {
    double phase = 0.0;
    const Element inc = unitary_log_element(s[static_cast<size_t>(to)] * s[static_cast<size_t>(from)].adjoint(), phase);
    if (phase >= std::numbers::pi / 2.0) {
      throw NumericalFailure("fit_generators: increment between t = " + std::to_string(t[static_cast<size_t>(from)]) +
                             " and " + std::to_string(t[static_cast<size_t>(to)]) + " has eigenphase " +
                             std::to_string(phase) + " >= pi/2; refine the grid");
    }
    worst_phase = std::max(worst_phase, phase);
    x[static_cast<size_t>(to)] = x[static_cast<size_t>(from)] + inc;
  };
  for (int k = k0 + 1; k < n; ++k) step(k - 1, k);
  for (int k = k0 - 1; k >= 0; --k) step(k + 1, k);

  double a11 = 0, a12 = 0, a22 = 0;
  for (double ti : t) {
    a11 += ti * ti;
    a12 += ti * ti * ti / 2.0;
    a22 += ti * ti * ti * ti / 4.0;
  }
  const double det = a11 * a22 - a12 * a12;
  if (!(det > 1e-14 * a11 * a22)) throw InvalidArgument("fit_generators: rank-deficient design");
  Element b1 = algebra_of(s.front()).zero();
  Element b2 = b1;
  for (int k = 0; k < n; ++k) {
    const double ti = t[static_cast<size_t>(k)];
    b1 += ti * x[static_cast<size_t>(k)];
    b2 += (ti * ti / 2.0) * x[static_cast<size_t>(k)];
  }
  Element d = (a22 / det) * b1 - (a12 / det) * b2;
  Element l = (a11 / det) * b2 - (a12 / det) * b1;
  d = 0.5 * (d + d.adjoint());
  l = 0.5 * (l + l.adjoint());
  double misfit = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ti = t[static_cast<size_t>(k)];
    misfit = std::max(misfit, (x[static_cast<size_t>(k)] - ti * d - (ti * ti / 2.0) * l).frobenius_norm());
  }
  return {std::move(d), std::move(l), misfit, worst_phase};
}

std::vector<double> extraction_nodes(const std::vector<double>& t_values) {
  std::vector<double> nodes{0.0, 1.0};
  for (double t : t_values) {
    const double tau = -t * t / 2.0;
    nodes.insert(nodes.end(), {t, t + 1.0, tau, tau + 1.0});
  }
  return merge_grids(nodes, {});
}

ExtractedPair extract_pair(const CocyclePath& u, const std::vector<double>& t_values) {
  for (double node : extraction_nodes(t_values)) {
    if (!u.has_node(node)) {
      throw InvalidArgument("extract_pair: grid is missing node t = " + std::to_string(node));
    }
  }
  const Element u1_adj = u.at(1.0).adjoint();
  auto lambda_power = [&](double t) { return u.at(t).adjoint() * u1_adj * u.at(t + 1.0); };
  ExtractedPair out;
  for (double t : t_values) {
    out.t.push_back(t);
    out.lambda_it.push_back(lambda_power(t));
    out.delta_it.push_back(u.at(t) * lambda_power(-t * t / 2.0));
  }
  return out;
}

BicharacterTable bicharacter(const CocyclePath& u, const std::vector<double>& s_grid,
                             const std::vector<double>& t_grid) {
  for (double s : s_grid)
    for (double t : t_grid)
      if (!u.has_node(s) || !u.has_node(t) || !u.has_node(s + t)) {
        throw InvalidArgument("bicharacter: path grid is missing a node for (s, t) = (" + std::to_string(s) + ", " +
                              std::to_string(t) + ")");
      }
  BicharacterTable table{s_grid, t_grid, {}};
  for (double s : s_grid) {
    std::vector<Element> row;
    const Element us_adj = u.at(s).adjoint();
    for (double t : t_grid) row.push_back(u.at(t).adjoint() * us_adj * u.at(s + t));
    table.w.push_back(std::move(row));
  }
  return table;
}

BicharacterResiduals bicharacter_residuals(const BicharacterTable& table) {
  BicharacterResiduals r;
  const auto& s = table.s;
  const auto& t = table.t;
  auto index = [](const std::vector<double>& g, double v) {
    for (size_t i = 0; i < g.size(); ++i)
      if (std::abs(g[i] - v) <= node_tol) return static_cast<int>(i);
    return -1;
  };
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t k = 0; k < s.size(); ++k) {
      const int m = index(s, s[i] + s[k]);
      if (m < 0) continue;
      for (size_t j = 0; j < t.size(); ++j) {
        const Element gap = table.w[static_cast<size_t>(m)][j] - table.w[i][j] * table.w[k][j];
        r.additivity_s = std::max(r.additivity_s, gap.norm());
      }
    }
  for (size_t j = 0; j < t.size(); ++j)
    for (size_t k = 0; k < t.size(); ++k) {
      const int m = index(t, t[j] + t[k]);
      if (m < 0) continue;
      for (size_t i = 0; i < s.size(); ++i) {
        const Element gap = table.w[i][static_cast<size_t>(m)] - table.w[i][j] * table.w[i][k];
        r.additivity_t = std::max(r.additivity_t, gap.norm());
      }
    }
  for (const auto& row : table.w)
    for (const auto& w : row) r.centrality = std::max(r.centrality, centrality_defect(w));
  return r;
}

double flows_commute_residual(const Weight& phi, const Weight& psi, double s, double t) {
  const Element hs = phi.density().power(Complex(0, s));
  const Element kt = psi.density().power(Complex(0, t));
  return conjugation_gap(kt * hs, hs * kt);
}

EigenoperatorResidual eigenoperator_residual(const Weight& phi, const Element& a, double lambda0,
                                             const std::vector<double>& t_grid) {
  if (!(lambda0 > 0.0)) throw InvalidArgument("eigenoperator_residual: lambda0 must be positive");
  const Element& h = phi.density().element();
  require_same_shape(h, a, "eigenoperator_residual");
  EigenoperatorResidual r;
  // phi(a e_ij) = (h a)_ji and phi(e_ij a) = (a h)_ji
  const Element gap = h * a - lambda0 * (a * h);
  for (const auto& b : gap.blocks()) r.weight_side = std::max(r.weight_side, b.cwiseAbs().maxCoeff());
  for (double t : t_grid) {
    const Element rhs = std::pow(Complex(lambda0), Complex(0, t)) * a;
    r.flow_side = std::max(r.flow_side, (modular_flow(phi, t, a) - rhs).norm());
  }
  return r;
}

ScalarInvarianceResidual scalar_invariance_residual(const Weight& phi, const Weight& psi, double lambda0, double t) {
  if (!(lambda0 > 0.0)) throw InvalidArgument("scalar_invariance_residual: lambda0 must be positive");
  const PositiveElement& h = phi.density();
  const PositiveElement& k = psi.density();
  // phi(sigma_t^psi(e_ij)) = (k^{-it} h k^{it})_ji
  const Element g1 = k.power(Complex(0, -t)) * h.element() * k.power(Complex(0, t)) - std::pow(lambda0, t) * h.element();
  const Element g2 = h.power(Complex(0, -t)) * k.element() * h.power(Complex(0, t)) - std::pow(lambda0, -t) * k.element();
  ScalarInvarianceResidual r;
  for (const auto& b : g1.blocks()) r.r1 = std::max(r.r1, b.cwiseAbs().maxCoeff());
  for (const auto& b : g2.blocks()) r.r2 = std::max(r.r2, b.cwiseAbs().maxCoeff());
  return r;
}

ScalarInvarianceResidual scalar_invariance_residual(const Weight& phi, const Weight& psi, double lambda0, double t,
                                                    const BlockVector& probe) {
  if (!(lambda0 > 0.0)) throw InvalidArgument("scalar_invariance_residual: lambda0 must be positive");
  const double phi_p = phi.on_vector(probe);
  const double psi_p = psi.on_vector(probe);
  const double lhs1 = phi.on_vector(psi.density().apply_power(Complex(0, t), probe));
  const double lhs2 = psi.on_vector(phi.density().apply_power(Complex(0, t), probe));
  return {std::abs(lhs1 - std::pow(lambda0, t) * phi_p) / phi_p,
          std::abs(lhs2 - std::pow(lambda0, -t) * psi_p) / psi_p};
}

double rigidity_witness(const Weight& phi, const PositiveElement& delta, const PositiveElement& lambda,
                        const std::vector<double>& s_grid, const std::vector<double>& t_grid) {
  double worst = 0.0;
  for (double s : s_grid)
    for (double t : t_grid) worst = std::max(worst, relative_invariance_residual(phi, delta, lambda, s, t));
  return worst;
}

}  // namespace rnkit
