#pragma once

#include <vector>

#include <Eigen/Dense>

#include "metastab/graded.hpp"
#include "metastab/landscape.hpp"
#include "metastab/topology.hpp"

namespace metastab {

// Hessian weight of a minimum from its set of equal-level companions.
double h_phi(const CriticalStructure& cs, const std::vector<int>& companions);
// |det Hess(s)|^{1/4}
double h_phi_saddle(const CriticalPoint& s);

// Index bookkeeping for one class.
struct ClassLayout {
  int alpha = -1;
  std::vector<int> domain;   // class members, ascending barrier then id
  std::vector<int> columns;  // domain, then the parent minimum for type II
  std::vector<int> rows;     // class saddles
  std::vector<double> weight;  // h_phi per column
  std::vector<HeightBlock> blocks;
  std::vector<int> type2_columns;  // columns of type-II members, then the parent
};

ClassLayout class_layout(const CriticalStructure& cs, const Topology& topo, int alpha);

// Leading interaction matrix, rows = saddles, columns = layout.columns.
Eigen::MatrixXd build_upsilon(const CriticalStructure& cs, const Topology& topo,
                              const ClassLayout& layout);

// Unit vector over layout.type2_columns, proportional to 1/h_phi.
Eigen::VectorXd build_theta0(const ClassLayout& layout);

// Orthonormal columns, rows = layout.columns, columns = layout.domain.
Eigen::MatrixXd build_T(const ClassLayout& layout);

GradedCore build_graded_core(const Eigen::MatrixXd& upsilon, const Eigen::MatrixXd& T,
                             const ClassLayout& layout);

struct ClassMatrices {
  ClassLayout layout;
  Eigen::MatrixXd upsilon;
  Eigen::MatrixXd T;
  Eigen::VectorXd theta0;  // empty for type-I classes
  GradedCore core;
};

ClassMatrices assemble_class(const CriticalStructure& cs, const Topology& topo, int alpha);

}  // namespace metastab
