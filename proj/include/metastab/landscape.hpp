#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace metastab {

enum class PointKind { minimum, saddle };

struct CriticalPoint {
  std::string id;
  PointKind kind = PointKind::minimum;
  double value = 0.0;
  double det_hess = 1.0;  // |det Hess phi|
  double neg_eig = 0.0;   // |negative Hessian eigenvalue|, saddles only
  std::optional<double> x;  // position, known only for sampled input
};

// Minima, separating saddles and the pair of minima each saddle joins.
// joins[k] holds indices into `minima` of one representative of each of the
// two sublevel components that saddles[k] separates.
struct CriticalStructure {
  std::vector<CriticalPoint> minima;
  std::vector<CriticalPoint> saddles;
  std::vector<std::array<int, 2>> joins;
  double level_tolerance = 1e-9;

  int minimum_index(const std::string& id) const;  // -1 when absent
  int saddle_index(const std::string& id) const;
};

struct SampledPotential {
  std::vector<double> xs;
  std::vector<double> phis;
  bool boundary_growth = true;
};

inline constexpr double kDefaultLevelTolerance = 1e-9;

// Throws InputError on any violated structural invariant, including the
// separating-saddle condition checked by a sublevel sweep.
void validate_structure(const CriticalStructure& cs);

CriticalStructure load_structure(const std::string& json_text);
CriticalStructure load_structure_file(const std::string& path);
std::string dump_structure(const CriticalStructure& cs);

SampledPotential load_potential_csv(const std::string& path);
void validate_potential(const SampledPotential& p);

// Noise level of the samples estimated from third differences (MAD based).
double sample_noise(const SampledPotential& p);

// Strict interior extrema become minima / saddles, ids are m01, m02, ... and
// s01, s02, ... from left to right. When eps_level is empty the tolerance is
// 10x the sample noise, floored at 1e-9 times the value range.
CriticalStructure extract_critical_structure(const SampledPotential& p,
                                             std::optional<double> eps_level = {});

CriticalStructure shifted(const CriticalStructure& cs, double c);

}  // namespace metastab
