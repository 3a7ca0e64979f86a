#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "metastab/landscape.hpp"
#include "metastab/spectra.hpp"

namespace metastab {

using Potential = std::function<double(double)>;

// fitted: exponentially fitted factorization Delta = D^T D with D a
//   bidiagonal discrete twisted gradient; e^{-phi/h} is an exact null vector
//   away from the walls and small eigenvalues come out with high relative
//   accuracy.
// central: textbook 3-point Laplacian plus |phi'|^2 - h phi'' with
//   central-difference derivatives.
enum class Scheme { fitted, central };

std::string to_string(Scheme s);

// Dirichlet problem on [a, b] with n interior nodes, dx = (b - a) / (n + 1).
struct DiscretizedWitten {
  double a = 0.0, b = 0.0, dx = 0.0, h = 0.0;
  Scheme scheme = Scheme::fitted;
  std::vector<double> xs;       // interior nodes
  std::vector<double> diag;     // symmetric tridiagonal form, size n
  std::vector<double> offdiag;  // size n - 1
  std::vector<double> bidiag;   // fitted only: up0, lw1, up1, ..., lw_n (size 2n)

  int size() const { return static_cast<int>(diag.size()); }
};

DiscretizedWitten discretize(const Potential& phi, double a, double b, double h, int n,
                             Scheme scheme = Scheme::fitted);

// Smooth interpolant through the samples (barycentric rational, order 3).
Potential interpolate(const SampledPotential& p);

DiscretizedWitten discretize(const SampledPotential& p, double h, int n,
                             Scheme scheme = Scheme::fitted);

// k smallest eigenvalues, ascending, by Sturm bisection.
std::vector<double> small_eigenvalues(const DiscretizedWitten& d, int k);

// Number of eigenvalues strictly below x.
int count_below(const DiscretizedWitten& d, double x);

double rayleigh_quotient(const DiscretizedWitten& d, const std::vector<double>& u);

// [min critical x - 1.5, max critical x + 1.5]; needs positions on every point.
std::pair<double, double> default_domain(const CriticalStructure& cs);
int default_grid(double a, double b, double h);

struct CompareOptions {
  Scheme scheme = Scheme::fitted;
  int grid = 0;  // 0 selects default_grid per h
  double c_tol = 3.0;
  double refine_tol = 0.05;
};

struct ValidationPoint {
  double h = 0.0;
  int n = 0;
  std::vector<double> numeric;          // n0 smallest, zero mode first
  std::vector<double> numeric_refined;  // same on 2n nodes
  double next_eigenvalue = 0.0;         // first eigenvalue above the small cluster
  std::vector<double> predicted;        // nonzero predictions, ascending
  std::vector<double> log_predicted;
  std::vector<double> ratio;            // numeric[i + 1] / predicted[i]
  std::vector<double> refinement_change;
};

struct EigenVerdict {
  int index = 0;  // position among the nonzero predictions
  double S = 0.0;
  std::string verdict;  // PASS, FAIL or INCONCLUSIVE
  std::vector<double> errors;  // |ratio - 1| per h
  double tolerance = 0.0;
};

struct ValidationReport {
  double a = 0.0, b = 0.0;
  Scheme scheme = Scheme::fitted;
  double c_tol = 3.0;
  std::vector<ValidationPoint> points;  // descending h
  std::vector<EigenVerdict> verdicts;
  std::string overall;
};

ValidationReport compare(const SpectrumReport& report, const Potential& phi, double a, double b,
                         std::vector<double> h_list, const CompareOptions& opt = {});

// Sampled input: domain is the default one clipped to the sample range.
ValidationReport compare(const SpectrumReport& report, const SampledPotential& p,
                         const CriticalStructure& cs, std::vector<double> h_list,
                         const CompareOptions& opt = {});

}  // namespace metastab
