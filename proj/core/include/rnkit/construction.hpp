#pragma once

// The weight phi_delta built from (phi, delta, lambda): smeared elements
// e_n, modular data of phi_delta, the operator rho and the cocycle
// lambda^{it^2/2} delta^{it}.

#include <string>
#include <vector>

#include "rnkit/cocycle.hpp"
#include "rnkit/modular.hpp"
#include "rnkit/positive.hpp"

namespace rnkit {

struct QuadratureMeta {
  std::string rule = "gauss-hermite(x) x gauss-legendre(u = n y)";
  int hermite_nodes = 0;
  int legendre_nodes = 0;
  double y_radius = 4.0;  // |u| <= y_radius after u = n y
  double alpha = 0.0;     // 2 n^2 / (Gamma(1/2) Gamma(1/4))
  double error_estimate = 0.0;
};

struct SmearingElement {
  int n = 0;
  Element value;
  QuadratureMeta meta;
};

/// alpha_n = 2 n^2 / (Gamma(1/2) Gamma(1/4)).
double smear_alpha(int n);

/// e_n = alpha_n ∫∫ exp(-n^2 x^2 - n^4 y^4) lambda^{ix} delta^{iy} dx dy.
/// Rules are refined until the estimated error is below 1e-9 or the node
/// caps are reached; an estimate above 1e-6 throws NumericalFailure.
SmearingElement smear_element(const InvariancePair& pair, int n);

/// || sigma_t(delta^x lambda^y sigma_z(e_n)) - delta^x lambda^{y + t x} sigma_{t+z}(e_n) ||.
/// Throws NumericalFailure when the powers involved have condition number
/// above 1e12.
double smear_analytic_residual(const InvariancePair& pair, const Weight& phi, int n, Complex x, Complex y, Complex z,
                               Complex t);

struct SmearDiagnostic {
  int n = 0;
  double distance = 0.0;  // ||e_n - 1|| or ||(e_n - 1) p||
};

std::vector<SmearDiagnostic> smear_limit_diagnostics(const InvariancePair& pair, const std::vector<int>& n_list);
/// Strong version on a probe vector.
std::vector<SmearDiagnostic> smear_limit_diagnostics(const InvariancePair& pair, const std::vector<int>& n_list,
                                                     const BlockVector& probe);

/// Monotone up to 5% and final value at most 5% of the first.
bool smear_table_converges(const std::vector<SmearDiagnostic>& table);

class ConstructedWeight {
 public:
  ConstructedWeight(Weight base, InvariancePair pair, Weight weight, Mode mode);

  const Weight& base() const { return base_; }
  const InvariancePair& pair() const { return pair_; }
  /// phi_delta, density delta^{1/2} h delta^{1/2}.
  const Weight& weight() const { return weight_; }
  const PositiveElement& density() const { return weight_.density(); }
  Mode mode() const { return mode_; }

  /// Lambda'(a) = a density^{1/2}.
  Element lambda_prime_map(const Element& a) const;
  /// Gamma(a) = Lambda(a delta^{1/2}) = a delta^{1/2} h^{1/2}.
  Element gamma_map(const Element& a) const;

 private:
  Weight base_;
  InvariancePair pair_;
  Weight weight_;
  Mode mode_;
};

/// Exact mode requires ||log lambda|| <= 1e-8 and [h, delta] = 0 within
/// 1e-10 (ModeViolation otherwise).
ConstructedWeight construct_weight(const Weight& phi, const InvariancePair& pair, Mode mode);

/// |phi((delta^{1/2} e_n) x (delta^{1/2} e_n)) - phi_delta(x)|.
double limit_formula_residual(const Weight& phi, const InvariancePair& pair, const Element& x, int n);

/// Delta'^z: xi -> lambda^{-iz^2/2} delta^z h^z xi h^{-z} delta^{-z} lambda^{iz^2/2}.
Superoperator delta_prime_power(const Weight& phi, const InvariancePair& pair, Complex z);

/// u_s = J lambda^{is^2/2} delta^{is} J lambda^{is^2/2} delta^{is} Delta^{is}, assembled factor by factor.
Superoperator u_superoperator(const Weight& phi, const InvariancePair& pair, double s);

/// J' = J lambda^{-i/8} J lambda^{i/8} J.
Superoperator j_prime(const Weight& phi, const InvariancePair& pair);

/// S' = J' Delta'^{1/2}.
Superoperator s_prime(const Weight& phi, const InvariancePair& pair);

/// rho^{1/2}: xi -> lambda^{-i/8} delta^{1/2} h^{1/2} xi h^{-1/2}.
Superoperator rho_half(const Weight& phi, const InvariancePair& pair);

/// sigma'_s(x) = lambda^{is^2/2} delta^{is} sigma_s(x) delta^{-is} lambda^{-is^2/2}.
Element sigma_prime_flow(const Weight& phi, const InvariancePair& pair, double s, const Element& x);

/// ||J lambda^{-i/8} rho^{1/2} Lambda(x) - Gamma(x*)||.
double rho_lemma_residual(const Weight& phi, const InvariancePair& pair, const Element& x);

/// ||S' Gamma(a) - Gamma(a*)||.
double s_prime_residual(const Weight& phi, const InvariancePair& pair, const Element& a);

/// ||[D phi_delta : D phi]_t - lambda^{it^2/2} delta^{it}||.
double construction_cocycle_residual(const Weight& phi, const InvariancePair& pair, double t);
/// Same comparison applied to a probe vector, relative to ||probe||.
double construction_cocycle_residual(const ConstructedWeight& cw, double t, const BlockVector& probe);

/// max over matrix units xi of
/// ||Delta'^z(J e_n J e_m xi) - J sigma_{i conj z}(e_n) J sigma_{-iz}(e_m) Delta'^z xi||.
double lemma8_residual(const Weight& phi, const InvariancePair& pair, const Element& e_n, const Element& e_m,
                       Complex z);

/// ||Lambda(a delta^z e_n) - Lambda'(a delta^{z - 1/2} e_n)||.
double lemma13_residual(const ConstructedWeight& cw, const Element& a, const Element& e_n, Complex z);

/// ||sigma_s(y) - sigma'_s(y)|| for y = lambda^x delta^y sigma_z(e_n).
double sigma_fixed_point_residual(const Weight& phi, const InvariancePair& pair, const Element& e_n, double s,
                                  Complex x, Complex y, Complex z);

/// ||sigma'_s(sigma'_t(x)) - sigma'_{s+t}(x)||.
double sigma_prime_group_residual(const Weight& phi, const InvariancePair& pair, double s, double t,
                                  const Element& x);

/// The construction cocycle t -> [D phi_delta : D phi]_t sampled on a grid.
CocyclePath construction_cocycle_path(const ConstructedWeight& cw, const std::vector<double>& grid);

}  // namespace rnkit
