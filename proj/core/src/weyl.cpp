#include "rnkit/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rnkit/errors.hpp"

namespace rnkit {

namespace {

constexpr Complex I{0.0, 1.0};

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

RealVector concat(const RealVector& a, const RealVector& b) {
  RealVector v(a.size() + b.size());
  v << a, b;
  return v;
}

const std::vector<double> kInvarianceGrid{-1.0, -0.5, 0.5, 1.0};

}  // namespace

WeylGrid build_grid(int N, double L_box) {
  if (!power_of_two(N) || N < 16) throw InvalidArgument("build_grid: N must be a power of two >= 16");
  if (!(L_box > 0.0)) throw InvalidArgument("build_grid: L_box must be positive");
  WeylGrid g;
  g.N = N;
  g.L_box = L_box;
  g.spacing = L_box / N;
  g.gamma.resize(N);
  g.freq.resize(N);
  for (int k = 0; k < N; ++k) {
    g.gamma(k) = (k - N / 2) * g.spacing;
    g.freq(k) = 2.0 * std::numbers::pi * (k - N / 2) / L_box;
  }
  return g;
}

Matrix unitary_dft(const WeylGrid& grid) {
  const int n = grid.N;
  Matrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      long long m = static_cast<long long>(j - n / 2) * (k - n / 2);
      m %= n;
      if (m < 0) m += n;
      f(j, k) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(m) / n);
    }
  }
  return f;
}

WeylOperators weyl_operators(const WeylGrid& grid) {
  const double reach = grid.gamma.cwiseAbs().maxCoeff();
  if (reach > 12.0) {
    throw InvalidArgument("weyl_operators: max |gamma| = " + std::to_string(reach) +
                          " exceeds 12; use a smaller L_box");
  }
  const int n = grid.N;
  const Matrix f = unitary_dft(grid);
  WeylOperators ops;
  ops.P = Element({grid.gamma.cast<Complex>().asDiagonal().toDenseMatrix()});
  Matrix q = f.adjoint() * grid.freq.cast<Complex>().asDiagonal() * f;
  ops.Q = Element({(q + q.adjoint()) / 2.0});
  ops.H = PositiveElement::from_spectral({Matrix::Identity(n, n)}, {grid.gamma});
  ops.K1 = PositiveElement::from_spectral({f.adjoint()}, {grid.freq});
  return ops;
}

const char* to_string(TestbedCaseId id) {
  switch (id) {
    case TestbedCaseId::scalar:
      return "scalar";
    case TestbedCaseId::factor:
      return "factor";
    case TestbedCaseId::central:
      return "central";
  }
  return "scalar";
}

TestbedCaseId testbed_case_from_string(const std::string& s) {
  if (s == "scalar") return TestbedCaseId::scalar;
  if (s == "factor") return TestbedCaseId::factor;
  if (s == "central") return TestbedCaseId::central;
  throw InvalidArgument("unknown testbed case '" + s + "' (expected scalar, factor or central)");
}

BlockVector gaussian_probe(TestbedCaseId id, const WeylGrid& grid) {
  Vector p(grid.N);
  for (int k = 0; k < grid.N; ++k) p(k) = std::exp(-grid.gamma(k) * grid.gamma(k) / 2.0);
  p /= p.norm();
  switch (id) {
    case TestbedCaseId::scalar:
      return {p};
    case TestbedCaseId::factor: {
      Vector q(2 * grid.N);
      q << p, p;
      return {q / std::sqrt(2.0)};
    }
    case TestbedCaseId::central:
      return {p / std::sqrt(2.0), p / std::sqrt(2.0)};
  }
  return {p};
}

double exterior_mass(const WeylGrid& grid, const BlockVector& probe) {
  double outside = 0.0;
  double total = 0.0;
  for (const auto& b : probe) {
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      const double m = std::norm(b(i));
      total += m;
      if (std::abs(grid.gamma(i % grid.N)) > grid.L_box / 4.0) outside += m;
    }
  }
  return total > 0.0 ? outside / total : 1.0;
}

double weyl_invariance_residual(const TestbedCase& c, double s, double t, const BlockVector& probe,
                                bool check_interior) {
  if (check_interior) {
    const double m = exterior_mass(c.grid, probe);
    if (m > 1e-7) {
      throw InvalidArgument("weyl_invariance_residual: probe carries " + std::to_string(m) +
                            " of its mass outside the middle half of the box");
    }
  }
  return relative_invariance_residual(c.phi, c.pair.delta(), c.pair.lambda(), s, t, probe);
}

TestbedCase case_scenario(TestbedCaseId id, const WeylGrid& grid) {
  const WeylOperators ops = weyl_operators(grid);
  const int n = grid.N;
  TestbedCase c;
  c.id = id;
  c.grid = grid;
  PositiveElement delta;
  PositiveElement lambda;
  const Weight phi1(ops.H);
  switch (id) {
    case TestbedCaseId::scalar:
      c.algebra = BlockAlgebra::build({n});
      c.phi = phi1;
      delta = ops.K1;
      lambda = PositiveElement::scalar(c.algebra, std::exp(-1.0));
      break;
    case TestbedCaseId::factor: {
      c.algebra = BlockAlgebra::build({2 * n});
      c.phi = balanced_weight(phi1, phi1);
      const Matrix& v = ops.K1.vectors(0);
      delta = PositiveElement::from_spectral({direct_sum(v, v)}, {concat(grid.freq, -grid.freq)});
      lambda = PositiveElement::from_spectral({Matrix::Identity(2 * n, 2 * n)},
                                              {concat(RealVector::Constant(n, -1.0), RealVector::Constant(n, 1.0))});
      break;
    }
    case TestbedCaseId::central: {
      c.algebra = BlockAlgebra::build({n, n});
      const Matrix& v = ops.K1.vectors(0);
      c.phi = Weight(PositiveElement::from_spectral({Matrix::Identity(n, n), Matrix::Identity(n, n)},
                                                    {grid.gamma, grid.gamma}));
      delta = PositiveElement::from_spectral({v, v}, {grid.freq, -grid.freq});
      lambda = PositiveElement::from_spectral({Matrix::Identity(n, n), Matrix::Identity(n, n)},
                                              {RealVector::Constant(n, -1.0), RealVector::Constant(n, 1.0)});
      break;
    }
  }
  c.probe = gaussian_probe(id, grid);
  double worst = 0.0;
  for (double s : kInvarianceGrid)
    for (double t : kInvarianceGrid)
      worst = std::max(worst, relative_invariance_residual(c.phi, delta, lambda, s, t, c.probe));
  CertificationGrid g;
  g.s = kInvarianceGrid;
  g.t = kInvarianceGrid;
  c.pair = InvariancePair::with_residual(std::move(delta), std::move(lambda), worst,
                                         g.describe() + " on the Gaussian probe");
  return c;
}

SweepTable convergence_sweep(TestbedCaseId id, const std::vector<int>& N_list, const std::vector<double>& L_list) {
  if (N_list.empty() || L_list.empty()) throw InvalidArgument("convergence_sweep: empty parameter list");
  SweepTable table;
  table.id = id;
  for (int N : N_list) {
    for (double L : L_list) {
      const TestbedCase c = case_scenario(id, build_grid(N, L));
      SweepRow row;
      row.N = N;
      row.L_box = L;
      for (double s : kInvarianceGrid)
        for (double t : kInvarianceGrid)
          row.invariance = std::max(row.invariance, weyl_invariance_residual(c, s, t, c.probe, false));
      const ConstructedWeight cw = construct_weight(c.phi, c.pair, Mode::approximate);
      for (double t : {0.25, 0.5, 0.75, 1.0})
        row.cocycle = std::max(row.cocycle, construction_cocycle_residual(cw, t, c.probe));
      if (id == TestbedCaseId::scalar) {
        double r1 = 0.0;
        double r2 = 0.0;
        for (double t : {0.25, 0.5, 0.75, 1.0}) {
          const ScalarInvarianceResidual r = scalar_invariance_residual(c.phi, cw.weight(), std::exp(-1.0), t, c.probe);
          r1 = std::max(r1, r.r1);
          r2 = std::max(r2, r.r2);
        }
        row.scalar_r1 = r1;
        row.scalar_r2 = r2;
      }
      table.rows.push_back(row);
    }
  }
  if (table.rows.size() > 1) {
    auto monotone = [&](auto get) {
      for (size_t i = 1; i < table.rows.size(); ++i) {
        const double prev = get(table.rows[i - 1]);
        const double cur = get(table.rows[i]);
        if (cur > prev && cur > 1e-11) return false;
      }
      return true;
    };
    table.invariance_monotone = monotone([](const SweepRow& r) { return r.invariance; });
    table.cocycle_monotone = monotone([](const SweepRow& r) { return r.cocycle; });
  }
  return table;
}

}  // namespace rnkit
