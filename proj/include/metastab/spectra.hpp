#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metastab/graded.hpp"
#include "metastab/landscape.hpp"
#include "metastab/prefactors.hpp"
#include "metastab/topology.hpp"

namespace metastab {

// Leading block of the core (the whole core when p = 1).
Eigen::MatrixXd schur_J(const GradedCore& g);

// Schur complement of the leading block, one barrier level down.
// Throws InputError(kind "domain") when p = 1.
GradedCore schur_R(const GradedCore& g);

struct LevelSpectrum {
  double S = 0.0;
  Eigen::MatrixXd M0;
  std::vector<double> zeta2;     // ascending
  std::vector<double> pi_zeta2;  // pi * zeta2
};

// Level k pairs J(R^{k-1}(g)) with the k-th smallest barrier.
std::vector<LevelSpectrum> class_spectrum(const GradedCore& g);

struct ClassSpectrum {
  int alpha = 0;
  ClassType type = ClassType::root;
  std::vector<LevelSpectrum> levels;  // empty for the root class
};

struct Prediction {
  int alpha = 0;
  int level = 0;  // 1-based, 0 for the zero mode
  double S = 0.0;
  double zeta2 = 0.0;
  bool zero = false;
  double lambda = 0.0;      // h zeta2 exp(-2S/h), may underflow to 0
  double log_lambda = 0.0;  // -inf for the zero mode
};

struct SpectrumReport {
  std::vector<ClassSpectrum> classes;
  int n0 = 0;
  std::string pairing = "ascending-barrier";

  // One entry per predicted eigenvalue, ascending in lambda; size n0.
  std::vector<Prediction> evaluate(double h) const;
};

SpectrumReport full_spectrum(const Topology& topo, const std::vector<ClassMatrices>& mats);

// Weighted Laplacian Upsilon^T Upsilon over the class columns (members then
// parent). Requires a type-II class with a single barrier height.
Eigen::MatrixXd graph_laplacian(const CriticalStructure& cs, const Topology& topo, int alpha);

// Whole pipeline for one landscape. mats[alpha] is default constructed for
// the root class.
struct Analysis {
  CriticalStructure cs;
  Topology topo;
  std::vector<ClassMatrices> mats;
  SpectrumReport spectrum;
  GenericCheck generic;
};

Analysis analyze(const CriticalStructure& cs);

}  // namespace metastab
