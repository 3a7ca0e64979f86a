#include "metastab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "metastab/error.hpp"

namespace metastab {

SymEig sym_eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvariantError("sym_eig needs a square matrix");
  SymEig out;
  if (m.rows() == 0) return out;
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw InvariantError("symmetric eigensolver did not converge");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();

  const double norm = std::max(out.values.cwiseAbs().maxCoeff(), 1e-300);
  const double residual =
      (sym * out.vectors - out.vectors * out.values.asDiagonal()).colwise().norm().maxCoeff();
  if (residual > 1e-12 * norm)
    throw InvariantError("eigen residual above contract");

  const Eigen::Index n = out.values.size();
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start + 1;
    while (end < n && out.values[end] - out.values[end - 1] <= 1e-9 * norm) ++end;
    if (end - start > 1) {
      const double mean = out.values.segment(start, end - start).mean();
      out.values.segment(start, end - start).setConstant(mean);
    }
    start = end;
  }
  return out;
}

std::vector<double> eigenvalues(const Eigen::MatrixXd& m) {
  const SymEig e = sym_eig(m);
  return {e.values.data(), e.values.data() + e.values.size()};
}

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  std::vector<double> v(s.data(), s.data() + s.size());
  std::sort(v.begin(), v.end());
  return v;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  const auto s = singular_values(m);
  if (s.empty() || s.back() == 0.0) return 0;
  return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double x) { return x > rel_tol * s.back(); }));
}

Eigen::MatrixXd householder_complement(const Eigen::VectorXd& u) {
  const Eigen::Index k = u.size();
  Eigen::VectorXd v = u;
  v[0] += 1.0;  // v = e1 + u, no cancellation for positive u
  const Eigen::MatrixXd reflect =
      Eigen::MatrixXd::Identity(k, k) - (2.0 / v.squaredNorm()) * v * v.transpose();
  return reflect.rightCols(k - 1);
}

}  // namespace metastab
