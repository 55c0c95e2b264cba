#include "rnkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "rnkit/errors.hpp"

namespace rnkit {

HermitianSpectrum hermitian_eig(const Matrix& a, double tol_herm) {
  if (a.rows() != a.cols()) throw InvalidArgument("hermitian_eig: matrix is not square");
  const double scale = std::max(1.0, operator_norm(a));
  const double defect = operator_norm(a - a.adjoint());
  if (defect > tol_herm * scale) {
    throw InvalidArgument("hermitian_eig: Hermiticity defect " + std::to_string(defect) +
                          " exceeds tolerance");
  }
  const Matrix sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw NumericalFailure("hermitian_eig: eigensolver failed");
  return {es.eigenvectors(), es.eigenvalues()};
}

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[static_cast<size_t>(i)] != i) {
    parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
    i = parent[static_cast<size_t>(i)];
  }
  return i;
}

// Rotates column pairs of a until they are mutually orthogonal. Returns the
// number of sweeps used.
int hestenes(Matrix& a) {
  const Eigen::Index n = a.cols();
  constexpr int max_sweeps = 80;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double aa = a.col(p).squaredNorm();
        const double bb = a.col(q).squaredNorm();
        const Complex c = a.col(p).dot(a.col(q));
        const double ac = std::abs(c);
        if (ac == 0.0) continue;
        const double r = ac / std::sqrt(aa * bb);
        off = std::max(off, r);
        if (r < 1e-17) continue;
        const double zeta = (bb - aa) / (2.0 * ac);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        const Complex ph = c / ac;
        const Vector ap = a.col(p);
        const Vector aq = a.col(q);
        a.col(p) = cs * ap - sn * std::conj(ph) * aq;
        a.col(q) = sn * ph * ap + cs * aq;
      }
    }
    if (off < 1e-15) return sweep;
  }
  throw NumericalFailure("graded_left_svd: one-sided Jacobi did not converge in 80 sweeps");
}

}  // namespace

GradedSvd graded_left_svd(const Matrix& g) {
  const int rows = static_cast<int>(g.rows());
  const int cols = static_cast<int>(g.cols());
  std::vector<int> parent(static_cast<size_t>(rows));
  std::iota(parent.begin(), parent.end(), 0);
  for (int k = 0; k < cols; ++k) {
    int first = -1;
    for (int i = 0; i < rows; ++i) {
      if (g(i, k) == Complex(0.0)) continue;
      if (first < 0) {
        first = find_root(parent, i);
      } else {
        parent[static_cast<size_t>(find_root(parent, i))] = first;
        first = find_root(parent, first);
      }
    }
  }

  std::vector<std::vector<int>> comps;
  std::vector<int> comp_of(static_cast<size_t>(rows), -1);
  for (int i = 0; i < rows; ++i) {
    const int r = find_root(parent, i);
    if (comp_of[static_cast<size_t>(r)] < 0) {
      comp_of[static_cast<size_t>(r)] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<size_t>(comp_of[static_cast<size_t>(r)])].push_back(i);
  }

  GradedSvd out;
  out.left = Matrix::Zero(rows, rows);
  out.log_sigma = RealVector::Zero(rows);
  Eigen::Index next = 0;
  for (const auto& rset : comps) {
    std::vector<int> cset;
    for (int k = 0; k < cols; ++k) {
      for (int i : rset) {
        if (g(i, k) != Complex(0.0)) {
          cset.push_back(k);
          break;
        }
      }
    }
    const Eigen::Index m = static_cast<Eigen::Index>(rset.size());
    if (static_cast<Eigen::Index>(cset.size()) < m) {
      throw NumericalFailure("graded_left_svd: matrix is rank deficient");
    }
    // Rows of g(R, C)* sorted by decreasing max-norm: with column pivoting this
    // keeps Householder QR accurate on row-graded input. The row order only
    // affects the discarded Q factor.
    std::vector<double> row_size(cset.size(), 0.0);
    for (size_t b = 0; b < cset.size(); ++b)
      for (int i : rset) row_size[b] = std::max(row_size[b], std::abs(g(i, cset[b])));
    std::vector<size_t> order(cset.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return row_size[x] > row_size[y]; });
    Matrix sub(static_cast<Eigen::Index>(cset.size()), m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (size_t b = 0; b < cset.size(); ++b)
        sub(static_cast<Eigen::Index>(b), a) = std::conj(g(rset[static_cast<size_t>(a)], cset[order[b]]));

    Eigen::ColPivHouseholderQR<Matrix> qr(sub);
    Matrix a = Matrix(qr.matrixR().topRows(m).triangularView<Eigen::Upper>()).adjoint();
    out.sweeps = std::max(out.sweeps, hestenes(a));
    Matrix u(m, m);
    for (Eigen::Index c = 0; c < m; ++c) {
      const double sigma = a.col(c).norm();
      if (!(sigma > 0.0)) throw NumericalFailure("graded_left_svd: zero singular value");
      u.col(c) = a.col(c) / sigma;
      out.log_sigma(next + c) = std::log(sigma);
    }
    const Matrix pu = qr.colsPermutation() * u;
    for (Eigen::Index a2 = 0; a2 < m; ++a2)
      out.left.block(rset[static_cast<size_t>(a2)], next, 1, m) = pu.row(a2);
    next += m;
  }
  return out;
}

UnitaryLog unitary_log(const Matrix& u) {
  if (u.rows() != u.cols()) throw InvalidArgument("unitary_log: matrix is not square");
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) throw NumericalFailure("unitary_log: Schur decomposition failed");
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  RealVector theta(t.rows());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    theta(i) = std::arg(t(i, i));
    worst = std::max(worst, std::abs(theta(i)));
  }
  Matrix x = q * theta.cast<Complex>().asDiagonal() * q.adjoint();
  x = (x + x.adjoint()) / 2.0;
  return {x, worst};
}

double unitarity_defect(const Matrix& u) {
  return operator_norm(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

Eigen::Matrix2cd thin_r_factor(const Vector& a, const Vector& b) {
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
  const double na = a.norm();
  if (na == 0.0) {
    r(0, 1) = b.norm();
    return r;
  }
  // Gram-Schmidt with one reorthogonalization pass
  const Complex c = a.dot(b) / (na * na);
  Vector w = b - c * a;
  const Complex c2 = a.dot(w) / (na * na);
  w -= c2 * a;
  r(0, 0) = na;
  r(0, 1) = (c + c2) * na;
  r(1, 1) = w.norm();
  return r;
}

double rank2_norm(const Vector& x1, const Vector& y1, const Vector& x2, const Vector& y2) {
  // X = Q R, Y = P S gives X Y* = Q (R S*) P*. Forming the 2x2 core directly
  // keeps cancellation at eps; a Gram product would square it.
  return core_norm(thin_r_factor(x1, x2), thin_r_factor(y1, y2));
}

double core_norm(const Eigen::Matrix2cd& rx, const Eigen::Matrix2cd& ry) {
  return Eigen::JacobiSVD<Eigen::Matrix2cd>(rx * ry.adjoint()).singularValues()(0);
}

}  // namespace rnkit
