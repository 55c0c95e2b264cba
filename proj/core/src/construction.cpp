#include "rnkit/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rnkit/errors.hpp"
#include "rnkit/quadrature.hpp"

namespace rnkit {

namespace {

constexpr Complex I{0.0, 1.0};

std::vector<double> all_logs(const PositiveElement& p) {
  std::vector<double> out;
  for (int k = 0; k < p.block_count(); ++k)
    for (Eigen::Index i = 0; i < p.log_values(k).size(); ++i) out.push_back(p.log_values(k)(i));
  return out;
}

// ∫ exp(-n^2 x^2) cos(x l) dx with x = v / n; the sine part vanishes by symmetry.
double hermite_factor(const QuadratureRule& rule, int n, double l) {
  CompensatedSum s;
  for (size_t k = 0; k < rule.nodes.size(); ++k) s.add(rule.weights[k] * std::cos(rule.nodes[k] * l / n));
  return s.value() / n;
}

// ∫ exp(-n^4 y^4) cos(y l) dy with y = u / n, truncated to |u| <= radius.
double quartic_factor(const QuadratureRule& rule, int n, double l) {
  CompensatedSum s;
  for (size_t k = 0; k < rule.nodes.size(); ++k) {
    const double u = rule.nodes[k];
    s.add(rule.weights[k] * std::exp(-u * u * u * u) * std::cos(u * l / n));
  }
  return s.value() / n;
}

template <class Coarse, class Fine>
double max_gap(const std::vector<double>& logs, const Coarse& coarse, const Fine& fine) {
  double gap = 0.0;
  for (double l : logs) gap = std::max(gap, std::abs(coarse(l) - fine(l)));
  return gap;
}

}  // namespace

double smear_alpha(int n) {
  return 2.0 * n * n / (std::tgamma(0.5) * std::tgamma(0.25));
}

SmearingElement smear_element(const InvariancePair& pair, int n) {
  if (n < 1) throw InvalidArgument("smear_element: n must be positive");
  const double alpha = smear_alpha(n);
  const double f_bound = std::sqrt(std::numbers::pi) / n;  // sup |f|
  const double g_bound = std::tgamma(0.25) / (2.0 * n);    // sup |g|
  constexpr double radius = 4.0;
  constexpr double target = 1e-9;

  const std::vector<double> lambda_logs = all_logs(pair.lambda());
  const std::vector<double> delta_logs = all_logs(pair.delta());

  int hn = 64;
  QuadratureRule h_coarse = gauss_hermite(hn);
  QuadratureRule h_fine = gauss_hermite(2 * hn);
  double f_err = 0.0;
  for (;;) {
    f_err = max_gap(
        lambda_logs, [&](double l) { return hermite_factor(h_coarse, n, l); },
        [&](double l) { return hermite_factor(h_fine, n, l); });
    if (alpha * f_err * g_bound <= target / 2.0 || 2 * hn >= 512) break;
    hn *= 2;
    h_coarse = h_fine;
    h_fine = gauss_hermite(2 * hn);
  }

  int ln = 201;
  QuadratureRule l_coarse = gauss_legendre(ln, -radius, radius);
  QuadratureRule l_fine = gauss_legendre(2 * ln - 1, -radius, radius);
  double g_err = 0.0;
  for (;;) {
    g_err = max_gap(
        delta_logs, [&](double l) { return quartic_factor(l_coarse, n, l); },
        [&](double l) { return quartic_factor(l_fine, n, l); });
    if (alpha * g_err * f_bound <= target / 2.0 || 2 * ln - 1 >= 3201) break;
    ln = 2 * ln - 1;
    l_coarse = l_fine;
    l_fine = gauss_legendre(2 * ln - 1, -radius, radius);
  }

  QuadratureMeta meta;
  meta.hermite_nodes = static_cast<int>(h_fine.nodes.size());
  meta.legendre_nodes = static_cast<int>(l_fine.nodes.size());
  meta.y_radius = radius;
  meta.alpha = alpha;
  // truncation beyond |u| = 4 contributes below exp(-256) and is not counted
  meta.error_estimate = alpha * (f_err * g_bound + g_err * f_bound);
  if (meta.error_estimate > 1e-6) {
    throw NumericalFailure("smear_element: quadrature error estimate " + std::to_string(meta.error_estimate) +
                           " exceeds 1e-6 for n = " + std::to_string(n) + " (hermite " +
                           std::to_string(meta.hermite_nodes) + ", legendre " + std::to_string(meta.legendre_nodes) +
                           " nodes)");
  }

  const Element f = pair.lambda().log_function([&](double l) { return Complex(hermite_factor(h_fine, n, l)); });
  const Element g = pair.delta().log_function([&](double l) { return Complex(quartic_factor(l_fine, n, l)); });
  return {n, alpha * (f * g), meta};
}

double smear_analytic_residual(const InvariancePair& pair, const Weight& phi, int n, Complex x, Complex y, Complex z,
                               Complex t) {
  const double sh = phi.density().log_spread();
  const double sd = pair.delta().log_spread();
  const double sl = pair.lambda().log_spread();
  const double log_cond = (std::abs(t.imag()) + std::abs(z.imag()) + std::abs((t + z).imag())) * sh +
                          std::abs(x.real()) * sd + (std::abs(y.real()) + std::abs((y + t * x).real())) * sl;
  if (log_cond > std::log(1e12)) {
    throw NumericalFailure("smear_analytic_residual: condition factor exp(" + std::to_string(log_cond) +
                           ") exceeds 1e12");
  }
  const Element e = smear_element(pair, n).value;
  const Element dx = pair.delta().power(x);
  const Element lhs = modular_flow(phi, t, dx * pair.lambda().power(y) * modular_flow(phi, z, e));
  const Element rhs = dx * pair.lambda().power(y + t * x) * modular_flow(phi, t + z, e);
  return (lhs - rhs).norm();
}

std::vector<SmearDiagnostic> smear_limit_diagnostics(const InvariancePair& pair, const std::vector<int>& n_list) {
  std::vector<SmearDiagnostic> out;
  for (int n : n_list) {
    const Element e = smear_element(pair, n).value;
    out.push_back({n, (e - algebra_of(e).identity()).norm()});
  }
  return out;
}

std::vector<SmearDiagnostic> smear_limit_diagnostics(const InvariancePair& pair, const std::vector<int>& n_list,
                                                     const BlockVector& probe) {
  std::vector<SmearDiagnostic> out;
  for (int n : n_list) {
    const Element e = smear_element(pair, n).value;
    out.push_back({n, norm(e.apply(probe) - probe) / norm(probe)});
  }
  return out;
}

bool smear_table_converges(const std::vector<SmearDiagnostic>& table) {
  if (table.size() < 2) return true;
  for (size_t i = 1; i < table.size(); ++i) {
    if (table[i].distance > 1.05 * table[i - 1].distance) return false;
  }
  return table.back().distance <= 0.05 * table.front().distance;
}

ConstructedWeight::ConstructedWeight(Weight base, InvariancePair pair, Weight weight, Mode mode)
    : base_(std::move(base)), pair_(std::move(pair)), weight_(std::move(weight)), mode_(mode) {}

Element ConstructedWeight::lambda_prime_map(const Element& a) const { return a * density().power(0.5); }

Element ConstructedWeight::gamma_map(const Element& a) const {
  return a * pair_.delta().power(0.5) * base_.density().power(0.5);
}

ConstructedWeight construct_weight(const Weight& phi, const InvariancePair& pair, Mode mode) {
  const PositiveElement& h = phi.density();
  if (pair.delta().block_dims() != h.block_dims()) {
    throw InvalidArgument("construct_weight: pair and weight live on different algebras");
  }
  if (mode == Mode::exact) {
    const double l = pair.lambda().log_norm();
    if (l > 1e-8) {
      throw ModeViolation("construct_weight: exact mode needs lambda = 1, got ||log lambda|| = " + std::to_string(l) +
                          "; bounded conjugation orbits rule out lambda != 1 in a matrix algebra");
    }
    const double c = commutation_defect(h.element(), pair.delta().element());
    if (c > 1e-10 * h.element().norm() * pair.delta().element().norm()) {
      throw ModeViolation("construct_weight: exact mode needs [h, delta] = 0, defect " + std::to_string(c));
    }
  }
  return ConstructedWeight(phi, pair, Weight(congruence(pair.delta(), h)), mode);
}

double limit_formula_residual(const Weight& phi, const InvariancePair& pair, const Element& x, int n) {
  const Element a = pair.delta().power(0.5) * smear_element(pair, n).value;
  const Weight psi(congruence(pair.delta(), phi.density()));
  return std::abs(phi(a * x * a) - psi(x));
}

Superoperator delta_prime_power(const Weight& phi, const InvariancePair& pair, Complex z) {
  const PositiveElement& h = phi.density();
  const Complex w = I * z * z / 2.0;
  return Superoperator(pair.lambda().power(-w) * pair.delta().power(z) * h.power(z),
                       h.power(-z) * pair.delta().power(-z) * pair.lambda().power(w));
}

Superoperator u_superoperator(const Weight& phi, const InvariancePair& pair, double s) {
  const BlockAlgebra alg = phi.algebra();
  const Element a = pair.lambda().power(I * (s * s / 2.0)) * pair.delta().power(I * s);
  const Superoperator j = Superoperator::conjugation(alg);
  const Superoperator la = Superoperator::left_multiplication(a);
  return j * la * j * la * gns(phi).delta_power(I * s);
}

Superoperator j_prime(const Weight& phi, const InvariancePair& pair) {
  const Superoperator j = Superoperator::conjugation(phi.algebra());
  return j * Superoperator::left_multiplication(pair.lambda().power(-I / 8.0)) * j *
         Superoperator::left_multiplication(pair.lambda().power(I / 8.0)) * j;
}

Superoperator s_prime(const Weight& phi, const InvariancePair& pair) {
  return j_prime(phi, pair) * delta_prime_power(phi, pair, 0.5);
}

Superoperator rho_half(const Weight& phi, const InvariancePair& pair) {
  const PositiveElement& h = phi.density();
  return Superoperator(pair.lambda().power(-I / 8.0) * pair.delta().power(0.5) * h.power(0.5), h.power(-0.5));
}

Element sigma_prime_flow(const Weight& phi, const InvariancePair& pair, double s, const Element& x) {
  const Element a = pair.lambda().power(I * (s * s / 2.0)) * pair.delta().power(I * s);
  return a * modular_flow(phi, s, x) * a.adjoint();
}

double rho_lemma_residual(const Weight& phi, const InvariancePair& pair, const Element& x) {
  const Superoperator lhs = Superoperator::conjugation(phi.algebra()) *
                            Superoperator::left_multiplication(pair.lambda().power(-I / 8.0)) * rho_half(phi, pair);
  const Element xi = gns(phi).lambda_map(x);
  const Element target = x.adjoint() * pair.delta().power(0.5) * phi.density().power(0.5);
  return (lhs(xi) - target).frobenius_norm();
}

double s_prime_residual(const Weight& phi, const InvariancePair& pair, const Element& a) {
  const Element gamma = a * pair.delta().power(0.5) * phi.density().power(0.5);
  const Element target = a.adjoint() * pair.delta().power(0.5) * phi.density().power(0.5);
  return (s_prime(phi, pair)(gamma) - target).frobenius_norm();
}

double construction_cocycle_residual(const Weight& phi, const InvariancePair& pair, double t) {
  const Weight psi(congruence(pair.delta(), phi.density()));
  const Element target = pair.lambda().power(I * (t * t / 2.0)) * pair.delta().power(I * t);
  return (connes_cocycle(psi, phi, t) - target).norm();
}

double construction_cocycle_residual(const ConstructedWeight& cw, double t, const BlockVector& probe) {
  const BlockVector lhs = cw.density().apply_power(I * t, cw.base().density().apply_power(-I * t, probe));
  const BlockVector rhs =
      cw.pair().lambda().apply_power(I * (t * t / 2.0), cw.pair().delta().apply_power(I * t, probe));
  return norm(lhs - rhs) / norm(probe);
}

double lemma8_residual(const Weight& phi, const InvariancePair& pair, const Element& e_n, const Element& e_m,
                       Complex z) {
  const Superoperator dz = delta_prime_power(phi, pair, z);
  const Element left = modular_flow(phi, -I * z, e_m);
  const Element right = modular_flow(phi, I * std::conj(z), e_n).adjoint();
  double worst = 0.0;
  for (const auto& xi : phi.algebra().basis()) {
    const Element lhs = dz(e_m * xi * e_n.adjoint());
    const Element rhs = left * dz(xi) * right;
    worst = std::max(worst, (lhs - rhs).frobenius_norm());
  }
  return worst;
}

double lemma13_residual(const ConstructedWeight& cw, const Element& a, const Element& e_n, Complex z) {
  const PositiveElement& d = cw.pair().delta();
  const Element lhs = a * d.power(z) * e_n * cw.base().density().power(0.5);
  const Element rhs = cw.lambda_prime_map(a * d.power(z - 0.5) * e_n);
  return (lhs - rhs).frobenius_norm();
}

double sigma_fixed_point_residual(const Weight& phi, const InvariancePair& pair, const Element& e_n, double s,
                                  Complex x, Complex y, Complex z) {
  const Element v = pair.lambda().power(x) * pair.delta().power(y) * modular_flow(phi, z, e_n);
  return (modular_flow(phi, s, v) - sigma_prime_flow(phi, pair, s, v)).norm();
}

double sigma_prime_group_residual(const Weight& phi, const InvariancePair& pair, double s, double t,
                                  const Element& x) {
  const Element lhs = sigma_prime_flow(phi, pair, s, sigma_prime_flow(phi, pair, t, x));
  return (lhs - sigma_prime_flow(phi, pair, s + t, x)).norm();
}

CocyclePath construction_cocycle_path(const ConstructedWeight& cw, const std::vector<double>& grid) {
  return CocyclePath::sample(grid, [&](double t) { return connes_cocycle(cw.weight(), cw.base(), t); });
}

}  // namespace rnkit
