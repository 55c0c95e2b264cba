#pragma once

// Unitary cocycle paths and the algorithms used by the three
// Radon-Nikodym verifiers.

#include <functional>
#include <utility>
#include <vector>

#include "rnkit/positive.hpp"

namespace rnkit {

/// One-parameter unitary family, either in generator form
/// u_t = exp(i(t D + t^2/2 L)) with [D, L] = 0, or sampled on a grid.
class CocyclePath {
 public:
  /// Throws InvalidArgument on non-Hermitian or non-commuting generators.
  static CocyclePath from_generators(Element D, Element L);
  /// Grid strictly increasing and containing 0; samples unitary to 1e-10.
  static CocyclePath from_samples(std::vector<double> t, std::vector<Element> u);
  static CocyclePath sample(std::vector<double> t, const std::function<Element(double)>& u);

  bool is_generator() const { return generator_; }
  std::vector<int> block_dims() const;
  const Element& D() const { return d_; }
  const Element& L() const { return l_; }
  const std::vector<double>& grid() const { return t_; }
  const std::vector<Element>& samples() const { return u_; }

  bool has_node(double t) const;
  /// Generator form evaluates anywhere; sample form requires a grid node
  /// (within 1e-12) and throws InvalidArgument otherwise.
  Element at(double t) const;

 private:
  bool generator_ = false;
  Element d_;
  Element l_;
  std::vector<double> t_;
  std::vector<Element> u_;
};

/// Sorted grid of equally spaced nodes lo, lo+step, ..., hi (endpoints included).
std::vector<double> linear_grid(double lo, double hi, double step);
/// Sorted union with duplicates (within 1e-12) removed.
std::vector<double> merge_grids(std::vector<double> a, const std::vector<double>& b);

CocyclePath synth_path(const Element& D, const Element& L, const std::vector<double>& t_grid);

struct GeneratorFit {
  Element D;
  Element L;
  double residual = 0.0;        // max Frobenius misfit of the accumulated logarithms
  double max_step_phase = 0.0;  // largest eigenphase of an increment u_{t'} u_t*
};

/// Least-squares fit of -i Log u_t = t D + t^2/2 L with the logarithm
/// accumulated along the grid from t = 0. Every increment must have
/// eigenphases below pi/2 in modulus (NumericalFailure otherwise); fewer
/// than three nonzero nodes throws InvalidArgument.
GeneratorFit fit_generators(const CocyclePath& u);

struct ExtractedPair {
  std::vector<double> t;
  std::vector<Element> lambda_it;  // lambda^{it} = u_t* u_1* u_{t+1}
  std::vector<Element> delta_it;   // delta^{it} = u_t lambda^{-it^2/2}
};

/// Grid nodes needed by extract_pair for the requested times.
std::vector<double> extraction_nodes(const std::vector<double>& t_values);
ExtractedPair extract_pair(const CocyclePath& u, const std::vector<double>& t_values);

struct BicharacterTable {
  std::vector<double> s;
  std::vector<double> t;
  std::vector<std::vector<Element>> w;  // w[i][j] = w(s_i, t_j)
};

/// w(s, t) = u_t* u_s* u_{s+t}.
BicharacterTable bicharacter(const CocyclePath& u, const std::vector<double>& s_grid,
                             const std::vector<double>& t_grid);

struct BicharacterResiduals {
  double additivity_s = 0.0;
  double additivity_t = 0.0;
  double centrality = 0.0;
};

/// Multiplicativity in each variable over all grid sums that land on the
/// grid, and the largest centrality defect of a table entry.
BicharacterResiduals bicharacter_residuals(const BicharacterTable& table);

/// max over matrix units x of ||sigma_t^psi(sigma_s^phi(x)) - sigma_s^phi(sigma_t^psi(x))||.
double flows_commute_residual(const Weight& phi, const Weight& psi, double s, double t);

struct EigenoperatorResidual {
  double weight_side = 0.0;
  double flow_side = 0.0;
};

/// weight_side = max over matrix units x of |phi(a x) - lambda0 phi(x a)|;
/// flow_side = max over the t-grid of ||sigma_t(a) - lambda0^{it} a||.
EigenoperatorResidual eigenoperator_residual(const Weight& phi, const Element& a, double lambda0,
                                             const std::vector<double>& t_grid = linear_grid(-2.0, 2.0, 0.25));

struct ScalarInvarianceResidual {
  double r1 = 0.0;  // phi o sigma_t^psi vs lambda0^t phi
  double r2 = 0.0;  // psi o sigma_t^phi vs lambda0^{-t} psi
};

/// Both residuals as max over matrix units x.
ScalarInvarianceResidual scalar_invariance_residual(const Weight& phi, const Weight& psi, double lambda0, double t);

/// The same functionals evaluated on the rank-one positive element p p*,
/// relative to phi(p p*) and psi(p p*).
ScalarInvarianceResidual scalar_invariance_residual(const Weight& phi, const Weight& psi, double lambda0, double t,
                                                    const BlockVector& probe);

/// Largest ||sigma_t(delta^{is}) - lambda^{ist} delta^{is}|| over the grid,
/// for raw (uncertified) data. Used to witness finite-dimensional rigidity.
double rigidity_witness(const Weight& phi, const PositiveElement& delta, const PositiveElement& lambda,
                        const std::vector<double>& s_grid, const std::vector<double>& t_grid);

}  // namespace rnkit
