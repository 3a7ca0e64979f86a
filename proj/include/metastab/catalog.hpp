#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metastab/landscape.hpp"
#include "metastab/validator.hpp"

namespace metastab {

// A 1D landscape listed left to right: minimum, saddle, minimum, ...
// `curvature` is |phi''| at the point.
struct ChainPoint {
  std::string id;
  PointKind kind = PointKind::minimum;
  double value = 0.0;
  double curvature = 1.0;
};

struct Landscape1D {
  Potential phi;
  double a = 0.0, b = 0.0;  // default validation domain
};

// Structure with adjacent-minima joins. Positions are filled in when
// `positions` is given.
CriticalStructure structure_from_chain(const std::vector<ChainPoint>& chain,
                                       const std::vector<double>& positions = {});

// Smooth potential through the chain: quintic Hermite pieces between
// consecutive critical points with prescribed value, zero slope and
// curvature, and quartic walls beyond the outer minima. Segment lengths are
// chosen so each piece stays monotone. Returns the knot positions too.
struct ChainRealization {
  Landscape1D landscape;
  std::vector<double> positions;
};
ChainRealization realize_chain(const std::vector<ChainPoint>& chain);

struct Reference {
  std::string label;
  std::vector<double> values;
  std::string note;
};

struct Example {
  std::string name;
  std::string description;
  CriticalStructure cs;
  std::vector<Reference> reference;
  std::optional<Landscape1D> landscape;
};

std::vector<std::string> example_names();

// Throws InputError(kind "unknown-example") for unregistered names.
Example make_example(const std::string& name, int n = 4, double theta = 1.0);

// Individual builders, also used by the tests.
std::vector<ChainPoint> chain_four_wells();
std::vector<ChainPoint> chain_two_heights(double theta);
std::vector<ChainPoint> chain_nested();
std::vector<ChainPoint> chain_mixed_heights();
// 2N+1 minima, odd ones at beta, even ones at alpha, all saddles at sigma.
std::vector<ChainPoint> chain_alternating(int n, double alpha, double beta, double sigma);
CriticalStructure ring(int n);
// (x^2 - 1)^2
Example symmetric_double_well();
// x^4/4 - x^2/2 + eps x
Example asymmetric_double_well(double eps);

}  // namespace metastab
