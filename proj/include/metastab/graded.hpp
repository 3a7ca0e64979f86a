#pragma once

#include <vector>

#include <Eigen/Dense>

namespace metastab {

struct HeightBlock {
  int size = 0;
  double S = 0.0;  // barrier shared by the block
};

// tau-free symmetric positive definite matrix with block partition by
// ascending barrier: block 1 carries the smallest barrier.
struct GradedCore {
  Eigen::MatrixXd core;
  std::vector<HeightBlock> blocks;
  int class_id = -1;

  int p() const { return static_cast<int>(blocks.size()); }
};

// Throws InvariantError unless blocks cover the matrix, barriers increase and
// the matrix is symmetric positive definite.
void check_graded_core(const GradedCore& g);

}  // namespace metastab
