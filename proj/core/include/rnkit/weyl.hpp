#pragma once

// Periodic spectral discretization of the Weyl pair (P, Q) on L^2(R), with
// H = exp(P) and K1 = exp(Q), and the three invariance cases built on it.

#include <optional>
#include <string>
#include <vector>

#include "rnkit/construction.hpp"

namespace rnkit {

struct WeylGrid {
  int N = 0;
  double L_box = 0.0;
  double spacing = 0.0;
  RealVector gamma;  // (k - N/2) * spacing
  RealVector freq;   // 2 pi (j - N/2) / L_box
};

/// N a power of two, at least 16; L_box > 0.
WeylGrid build_grid(int N, double L_box);

/// Unitary DFT F(j, k) = exp(-i freq_j gamma_k) / sqrt(N); the phase is
/// reduced exactly through the integer product (j - N/2)(k - N/2) mod N.
Matrix unitary_dft(const WeylGrid& grid);

struct WeylOperators {
  Element P;
  Element Q;
  PositiveElement H;   // exp(P), spectral form (I, gamma)
  PositiveElement K1;  // exp(Q), spectral form (F*, freq)
};

/// Throws InvalidArgument when max |gamma| > 12 (exp(P) would lose the model).
WeylOperators weyl_operators(const WeylGrid& grid);

enum class TestbedCaseId { scalar, factor, central };

const char* to_string(TestbedCaseId id);
TestbedCaseId testbed_case_from_string(const std::string& s);

struct TestbedCase {
  TestbedCaseId id = TestbedCaseId::scalar;
  WeylGrid grid;
  BlockAlgebra algebra = BlockAlgebra::build({1});
  Weight phi;
  InvariancePair pair;
  BlockVector probe;  // normalized width-1 Gaussian, spread evenly over the corners
};

/// scalar: algebra {N}, phi = Tr_H, delta = K1, lambda = e^{-1}.
/// factor: algebra {2N}, phi = balanced weight theta(Tr_H, Tr_H), delta = diag(K1, K1^{-1}),
///         lambda = diag(e^{-1}, e) (not central).
/// central: algebra {N, N}, same data on the diagonal subalgebra (lambda central).
/// The pair's residual is measured on the probe over s, t in {-1, -1/2, 1/2, 1}.
TestbedCase case_scenario(TestbedCaseId id, const WeylGrid& grid);

/// Gaussian exp(-gamma^2/2), L2-normalized, laid out for the case's algebra.
BlockVector gaussian_probe(TestbedCaseId id, const WeylGrid& grid);

/// Fraction of ||p||^2 carried by nodes with |gamma| > L_box/4, per grid copy.
double exterior_mass(const WeylGrid& grid, const BlockVector& probe);

/// ||(H^{it} K^{is} H^{-it} - lambda^{ist} K^{is}) p|| / ||p||. With
/// check_interior, a probe with exterior mass above 1e-7 throws InvalidArgument.
double weyl_invariance_residual(const TestbedCase& c, double s, double t, const BlockVector& probe,
                                bool check_interior = true);

struct SweepRow {
  int N = 0;
  double L_box = 0.0;
  double invariance = 0.0;  // max over s, t in {-1, -1/2, 1/2, 1}
  double cocycle = 0.0;     // max over t in {1/4, 1/2, 3/4, 1}
  std::optional<double> scalar_r1;  // scalar case only, lambda0 = e^{-1}
  std::optional<double> scalar_r2;
};

struct SweepTable {
  TestbedCaseId id = TestbedCaseId::scalar;
  std::vector<SweepRow> rows;
  /// Non-increasing down the table (values under 1e-11 count as floor);
  /// absent for a single row.
  std::optional<bool> invariance_monotone;
  std::optional<bool> cocycle_monotone;
};

/// Rows in N-major order over N_list x L_list.
SweepTable convergence_sweep(TestbedCaseId id, const std::vector<int>& N_list, const std::vector<double>& L_list);

}  // namespace rnkit
