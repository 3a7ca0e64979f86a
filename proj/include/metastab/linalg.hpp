#pragma once

#include <vector>

#include <Eigen/Dense>

namespace metastab {

struct SymEig {
  Eigen::VectorXd values;  // ascending, near-equal values snapped to their cluster mean
  Eigen::MatrixXd vectors;
};

// Symmetric eigendecomposition. Residuals are checked against 1e-12 |M|;
// eigenvalues within 1e-9 (relative to the spectral radius) are reported as
// one cluster with multiplicity.
SymEig sym_eig(const Eigen::MatrixXd& m);

std::vector<double> eigenvalues(const Eigen::MatrixXd& m);

// Singular values, ascending.
std::vector<double> singular_values(const Eigen::MatrixXd& m);

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

// Columns 2..k of the Householder reflection exchanging e1 and -u, for a unit
// vector u with positive entries: an orthonormal basis of u's complement.
Eigen::MatrixXd householder_complement(const Eigen::VectorXd& u);

}  // namespace metastab
