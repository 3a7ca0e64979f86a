#pragma once

#include <limits>
#include <string>
#include <vector>

#include "metastab/landscape.hpp"

namespace metastab {

// Level index standing for +infinity (the fictive top saddle value).
inline constexpr int kTopLevel = std::numeric_limits<int>::max();

// All critical values clustered into levels: consecutive sorted values closer
// than the structure's tolerance share a level. Every equality decision in the
// topology goes through these indices.
struct Levels {
  std::vector<int> of_minimum;
  std::vector<int> of_saddle;
  std::vector<double> value;  // representative (mean) value per level, ascending

  double at(int level) const;  // +inf for kTopLevel
};

Levels cluster_levels(const CriticalStructure& cs);

// Partition of the minima lying strictly below a threshold.
struct Partition {
  std::vector<int> component;  // per minimum, -1 when not below the threshold
  std::vector<std::vector<int>> members;  // sorted minimum indices per component

  int of(int minimum) const { return component[minimum]; }
};

// Components of {phi < level}, union-find over one ascending saddle sweep.
// A point counts as below when its level is strictly lower than `level_index`.
Partition components_below(const CriticalStructure& cs, const Levels& lv, int level_index);

// Same with a real threshold; values within the tolerance of `level` are not below it.
Partition sublevel_components(const CriticalStructure& cs, double level);

enum class MinimumType { root, I, II };

struct LabelledComponent {
  int i = 1;  // 1 for the fictive level, then 2, 3, ... down the saddle values
  int j = 1;
  int minimum = -1;
  std::vector<int> members;
};

struct Labelling {
  Levels levels;
  std::vector<int> ssv;  // separating saddle levels, descending
  int underline_m = -1;
  std::vector<int> sigma;  // label level per minimum, kTopLevel for the root
  std::vector<int> rank;   // i of m_{i,j}
  std::vector<double> S;   // barrier per minimum, +inf for the root
  std::vector<LabelledComponent> components;

  double sigma_value(int m) const { return levels.at(sigma[m]); }
  // Next saddle level above the label level of m (kTopLevel at the top).
  int level_above(int m) const;
};

Labelling label_minima(const CriticalStructure& cs);

struct DerivedMaps {
  std::vector<std::vector<int>> E;
  std::vector<std::vector<int>> E_minus;
  std::vector<std::vector<int>> E_hat;
  std::vector<std::vector<int>> H;
  std::vector<int> hat_m;  // -1 for the root
  std::vector<MinimumType> type;
};

DerivedMaps derive_maps(const CriticalStructure& cs, const Labelling& lab);

struct SaddleEnds {
  int saddle = -1;
  int m1 = -1;
  int m2 = -1;
  bool boundary = false;
};

enum class ClassType { root, I, II };

struct MinimumClass {
  std::vector<int> members;  // sorted by id
  int sigma = kTopLevel;
  int hat_m = -1;
  std::vector<int> E_hat;
  ClassType type = ClassType::root;
  std::vector<int> U_hat;                // members, then hat_m for type II
  std::vector<std::vector<int>> H_hat;   // parallel to U_hat
  std::vector<SaddleEnds> saddles;       // filled by partition_saddles
  std::vector<double> heights;           // distinct barriers, descending
  int p() const { return static_cast<int>(heights.size()); }
};

struct ClassDecomposition {
  std::vector<MinimumClass> classes;  // classes[0] is the root class
  std::vector<int> class_of;          // per minimum
  std::vector<int> class_of_saddle;   // per saddle, filled by partition_saddles
};

ClassDecomposition equivalence_classes(const CriticalStructure& cs, const Labelling& lab,
                                       const DerivedMaps& maps);

// Assigns every saddle to its class with ordered endpoints (m1, m2).
void partition_saddles(const CriticalStructure& cs, const Labelling& lab,
                       const DerivedMaps& maps, ClassDecomposition& cd);

struct GenericCheck {
  bool holds = true;
  std::string witness;
};

GenericCheck check_generic_assumption(const CriticalStructure& cs, const Labelling& lab,
                                      const DerivedMaps& maps);

// Everything above in one pass.
struct Topology {
  Labelling lab;
  DerivedMaps maps;
  ClassDecomposition cd;
};

Topology analyze_topology(const CriticalStructure& cs);

std::string to_string(MinimumType t);
std::string to_string(ClassType t);

}  // namespace metastab
