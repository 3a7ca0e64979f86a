// Independent reference computations for the tests. Nothing here calls the
// library's algorithms; each routine takes the slow, obvious route.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metastab/landscape.hpp"

namespace oracle {

inline std::uint64_t seed() {
  if (const char* s = std::getenv("METASTAB_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240917ULL;
}

// Labels of the sublevel components below `level`: pairwise relabelling until
// nothing changes. -1 for minima not below the level.
inline std::vector<int> brute_components(const metastab::CriticalStructure& cs, double level) {
  const std::size_t n = cs.minima.size();
  std::vector<int> label(n, -1);
  for (std::size_t m = 0; m < n; ++m)
    if (cs.minima[m].value < level - cs.level_tolerance) label[m] = static_cast<int>(m);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
      if (!(cs.saddles[k].value < level - cs.level_tolerance)) continue;
      const int a = label[cs.joins[k][0]], b = label[cs.joins[k][1]];
      if (a == b) continue;
      const int lo = std::min(a, b), hi = std::max(a, b);
      for (auto& l : label)
        if (l == hi) l = lo;
      changed = true;
    }
  }
  return label;
}

// Sets of minimum ids per component, for comparisons that ignore numbering.
inline std::set<std::set<std::string>> component_sets(const metastab::CriticalStructure& cs,
                                                      const std::vector<int>& label) {
  std::vector<std::set<std::string>> by(cs.minima.size());
  for (std::size_t m = 0; m < label.size(); ++m)
    if (label[m] >= 0) by[label[m]].insert(cs.minima[m].id);
  std::set<std::set<std::string>> out;
  for (auto& s : by)
    if (!s.empty()) out.insert(s);
  return out;
}

// Orthonormal basis of u's complement by modified Gram-Schmidt on u, e1, ..., ek.
inline Eigen::MatrixXd gram_schmidt_complement(const Eigen::VectorXd& u) {
  const Eigen::Index k = u.size();
  std::vector<Eigen::VectorXd> basis{u.normalized()};
  for (Eigen::Index i = 0; i < k && static_cast<Eigen::Index>(basis.size()) < k; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(k, i);
    for (const auto& b : basis) v -= b.dot(v) * b;
    for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() > 1e-8) basis.push_back(v.normalized());
  }
  Eigen::MatrixXd out(k, k - 1);
  for (Eigen::Index j = 1; j < k; ++j) out.col(j - 1) = basis[j];
  return out;
}

// N - B J^{-1} B^T through an explicit inverse.
inline Eigen::MatrixXd dense_schur(const Eigen::MatrixXd& m, Eigen::Index r) {
  const Eigen::Index n = m.rows() - r;
  return m.bottomRightCorner(n, n) -
         m.bottomLeftCorner(n, r) * m.topLeftCorner(r, r).inverse() * m.topRightCorner(r, n);
}

// Cyclic two-sided Jacobi. Accurate in the relative sense for positive
// definite matrices that are well conditioned after diagonal scaling.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-18 * std::sqrt(std::abs(a(p, p) * a(q, q)))) continue;
        rotated = true;
        const double zeta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

struct Edge {
  int tail, head;  // tail positive, head negative; head = -1 for a boundary edge
  double weight;
};

// A^T A for the weighted oriented incidence matrix A (rows = edges).
inline Eigen::MatrixXd incidence_laplacian(int vertices, const std::vector<Edge>& edges) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(edges.size()), vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    a(e, edges[e].tail) += edges[e].weight;
    if (edges[e].head >= 0) a(e, edges[e].head) -= edges[e].weight;
  }
  return a.transpose() * a;
}

// Spectrum of -h^2 d^2 + c^2 x^2 - h c, the Witten Laplacian of c x^2 / 2:
// 2 h c k, k = 0, 1, ...
inline double harmonic_level(double h, double c, int k) { return 2.0 * h * c * k; }

inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n, double shift = 0.5) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::MatrixXd m = a.transpose() * a / n + shift * Eigen::MatrixXd::Identity(n, n);
  return 0.5 * (m + m.transpose());
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a(i, j) = g(rng);
  return a;
}

}  // namespace oracle
