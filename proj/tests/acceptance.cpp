// Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero when
// any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metastab/catalog.hpp"
#include "metastab/linalg.hpp"
#include "metastab/prefactors.hpp"
#include "metastab/spectra.hpp"
#include "metastab/validator.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace metastab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void run(int number, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = out.ok && dt < limit_s;
  if (!pass) ++failures;
  std::printf("%s criterion %d (%s): %s [%.3f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              out.detail.c_str(), dt, limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Criterion 1.
Outcome four_wells() {
  const CriticalStructure cs = structure_from_chain(chain_four_wells());
  const Analysis an = analyze(cs);
  const auto& cls = an.spectrum.classes;
  const int pair = an.topo.cd.class_of[cs.minimum_index("m21")];
  const int single = an.topo.cd.class_of[cs.minimum_index("m23")];
  const int root = an.topo.cd.class_of[cs.minimum_index("m11")];
  bool ok = an.topo.cd.class_of[cs.minimum_index("m22")] == pair && root == 0;
  const auto& z = cls[pair].levels.at(0).pi_zeta2;
  ok = ok && z.size() == 2 && close(z[0], 1.5 - std::sqrt(5.0) / 2, 1e-12) &&
       close(z[1], 1.5 + std::sqrt(5.0) / 2, 1e-12);
  const auto& w = cls[single].levels.at(0).pi_zeta2;
  ok = ok && w.size() == 1 && close(w[0], 1.0, 1e-12);
  const auto ev = an.spectrum.evaluate(0.1);
  ok = ok && ev[0].zero && ev[0].alpha == root && ev[0].lambda == 0.0 && cls[root].levels.empty();
  return {ok, fmt("pair {%.15f", z[0]) + fmt(", %.15f}", z[1]) + fmt(", single %.15f, root exact 0", w[0])};
}

// Criterion 2.
Outcome two_heights() {
  bool ok = true;
  double worst = 0.0;
  for (double theta : {0.5, 1.0, 2.0}) {
    const CriticalStructure cs = structure_from_chain(chain_two_heights(theta));
    const Topology t = analyze_topology(cs);
    const int alpha = t.cd.class_of[cs.minimum_index("m21")];
    const GradedCore core = assemble_class(cs, t, alpha).core;
    const double nu = 1.0 / (1.0 + theta * theta);
    Eigen::MatrixXd want(2, 2);
    want << 1, -1, -1, 2 - nu;
    want /= kPi;
    const GradedCore r = schur_R(core);
    const double err = (r.core - want).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    ok = ok && err <= 1e-12;
    const auto levels = class_spectrum(core);
    const double tr = 3.0 - nu, disc = std::sqrt(tr * tr - 4.0 * (1.0 - nu));
    const auto& z = levels.at(1).pi_zeta2;
    const double e2 = std::max(std::abs(z.at(0) - 0.5 * (tr - disc)), std::abs(z.at(1) - 0.5 * (tr + disc)));
    worst = std::max(worst, e2);
    ok = ok && e2 <= 1e-12;
  }
  return {ok, fmt("theta in {0.5, 1, 2}, max deviation %.2e", worst)};
}

// Criterion 3.
Outcome rings() {
  bool ok = true;
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n) {
    const Analysis an = analyze(ring(n));
    const auto& z = an.spectrum.classes.at(1).levels.at(0).pi_zeta2;
    std::vector<double> want;
    for (int k = 1; k < n; ++k) want.push_back(2.0 * (1.0 - std::cos(2.0 * kPi * k / n)));
    std::vector<double> sorted = want;
    std::sort(sorted.begin(), sorted.end());
    if (z.size() != sorted.size()) return {false, "wrong multiplicity"};
    for (std::size_t i = 0; i < z.size(); ++i) worst = std::max(worst, std::abs(z[i] - sorted[i]));
    // k and n - k must land on the identical computed value: sorted, the
    // pairs sit next to each other.
    int equal = 0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) equal += z[i] == z[i + 1];
    ok = ok && equal == (n - 1) / 2;
  }
  ok = ok && worst <= 1e-10;
  return {ok, fmt("N = 3..8, max deviation %.2e, pairs bitwise equal", worst)};
}

// Criterion 4: dense eigenvalues of Omega core Omega against the Schur levels.
Outcome graded() {
  std::mt19937_64 rng(oracle::seed());
  std::uniform_int_distribution<int> nblocks(2, 4), bsize(1, 3);
  const std::vector<double> taus{0.1, 0.05, 0.025};
  const double C = 20.0;
  int cases = 0, pairs = 0, good_pairs = 0;
  double worst_c = 0.0;
  bool bound_ok = true;
  while (cases < 200) {
    GradedCore g;
    int dim = 0;
    const int p = nblocks(rng);
    for (int k = 0; k < p; ++k) {
      const int s = bsize(rng);
      if (dim + s > 12) break;
      g.blocks.push_back({s, 1.0 + k});
      dim += s;
    }
    if (g.p() < 2) continue;
    g.core = oracle::random_spd(rng, dim);
    ++cases;
    const auto levels = class_spectrum(g);
    std::vector<double> err;
    for (double tau : taus) {
      std::vector<double> predicted;
      Eigen::VectorXd omega(dim);
      int off = 0;
      for (int k = 0; k < g.p(); ++k) {
        const double eps = std::pow(tau, k);
        omega.segment(off, g.blocks[k].size).setConstant(eps);
        off += g.blocks[k].size;
        for (double v : levels[k].zeta2) predicted.push_back(eps * eps * v);
      }
      const Eigen::MatrixXd m = omega.asDiagonal() * g.core * omega.asDiagonal();
      const auto dense = oracle::jacobi_eigenvalues(m);
      std::sort(predicted.begin(), predicted.end());
      double e = 0.0;
      for (int i = 0; i < dim; ++i) e = std::max(e, std::abs(dense[i] - predicted[i]) / dense[i]);
      err.push_back(e);
      worst_c = std::max(worst_c, e / (tau * tau));
      bound_ok = bound_ok && e <= C * tau * tau;
    }
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      ++pairs;
      const double r = err[i] / err[i + 1];
      if (r >= 3.0 && r <= 5.0) ++good_pairs;
    }
  }
  const double frac = static_cast<double>(good_pairs) / pairs;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d cores, max err/tau^2 = %.2f (C = %.0f), halving ratio in [3,5] for %.1f%% of %d steps",
                cases, worst_c, C, 100.0 * frac, pairs);
  return {bound_ok && frac >= 0.95, buf};
}

// Criterion 5.
Outcome kernels() {
  std::mt19937_64 rng(oracle::seed() + 5);
  std::uniform_int_distribution<int> size(3, 9);
  int type2 = 0, type1 = 0;
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 5000 && (type2 < 100 || type1 < 100); ++trial) {
    gen::TreeSpec spec;
    spec.minima = size(rng);
    spec.minimum_levels = {0.0, 0.5, 1.0};
    spec.saddle_levels = {2.0, 3.0};
    const CriticalStructure cs = gen::random_tree(rng, spec);
    const Topology t = analyze_topology(cs);
    for (std::size_t a = 1; a < t.cd.classes.size(); ++a) {
      const ClassMatrices cm = assemble_class(cs, t, static_cast<int>(a));
      const auto q = static_cast<int>(cm.layout.domain.size());
      if (t.cd.classes[a].type == ClassType::II) {
        if (type2 >= 100) continue;
        ++type2;
        // 1/h_phi on every column, type-I members and the parent included.
        Eigen::VectorXd v(cm.upsilon.cols());
        for (Eigen::Index c = 0; c < v.size(); ++c) v[c] = 1.0 / cm.layout.weight[c];
        const double r = (cm.upsilon * v).cwiseAbs().maxCoeff();
        worst = std::max(worst, r);
        ok = ok && r <= 1e-12 && numerical_rank(cm.upsilon * cm.T) == q;
      } else {
        if (type1 >= 100) continue;
        ++type1;
        ok = ok && numerical_rank(cm.upsilon) == q;
      }
    }
  }
  ok = ok && type2 >= 100 && type1 >= 100;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d type-II and %d type-I classes, max |Upsilon h^-1| = %.1e", type2, type1, worst);
  return {ok, buf};
}

// Criterion 6.
Outcome singletons() {
  std::mt19937_64 rng(oracle::seed() + 6);
  std::uniform_int_distribution<int> size(2, 10);
  int generic = 0;
  bool ok = true;
  while (generic < 100) {
    gen::TreeSpec spec;
    spec.minima = size(rng);
    const CriticalStructure cs = gen::random_tree(rng, spec);
    const Topology t = analyze_topology(cs);
    if (!check_generic_assumption(cs, t.lab, t.maps).holds) continue;
    ++generic;
    for (std::size_t a = 1; a < t.cd.classes.size(); ++a) ok = ok && t.cd.classes[a].members.size() == 1;
  }
  std::string detail = "100 generic trees " + std::string(ok ? "all singleton" : "NOT all singleton") + "; alternating family";
  for (int n = 1; n <= 4; ++n) {
    const CriticalStructure cs = structure_from_chain(chain_alternating(n, 0.0, 0.5, 1.0));
    const Topology t = analyze_topology(cs);
    const bool ga = check_generic_assumption(cs, t.lab, t.maps).holds;
    std::size_t largest = 0;
    for (const auto& c : t.cd.classes) largest = std::max(largest, c.members.size());
    const bool fine = !ga && largest == 1;
    ok = ok && fine;
    char buf[96];
    std::snprintf(buf, sizeof buf, " N=%d: GA=%s, largest class %zu%s", n, ga ? "true" : "false", largest,
                  fine ? "" : " (expected singletons)");
    detail += buf;
  }
  return {ok, detail};
}

// Criteria 7 and 8 share the protocol.
Outcome numeric(const Example& ex, const std::vector<double>& hs, double expected_zeta2, bool need_monotone) {
  const Analysis an = analyze(ex.cs);
  const auto pred = an.spectrum.evaluate(hs.front());
  if (pred.size() != 2 || std::abs(pred[1].zeta2 - expected_zeta2) > 1e-12 * expected_zeta2)
    return {false, fmt("prefactor %.15g disagrees with the closed form", pred.size() == 2 ? pred[1].zeta2 : 0.0)};
  const ValidationReport vr = compare(an.spectrum, ex.landscape->phi, ex.landscape->a, ex.landscape->b, hs);
  const auto& err = vr.verdicts.at(0).errors;
  bool monotone = true;
  for (std::size_t i = 1; i < err.size(); ++i) monotone = monotone && err[i] < err[i - 1];
  bool resolved = true;
  for (const auto& p : vr.points)
    for (double c : p.refinement_change) resolved = resolved && c <= 0.05;
  std::string detail = "|ratio-1| =";
  for (std::size_t i = 0; i < err.size(); ++i) detail += fmt(" %.4f", err[i]) + fmt(" (h=%.3g)", vr.points[i].h);
  if (!resolved) detail += ", grid not converged";
  return {(monotone || !need_monotone) && err.back() <= 0.25 && resolved, detail};
}

Outcome symmetric_numeric() {
  return numeric(symmetric_double_well(), {0.15, 0.10, 0.07}, 8.0 * std::sqrt(2.0) / kPi, true);
}

Outcome asymmetric_numeric() {
  // Critical points of x^4/4 - x^2/2 + eps x by Newton, independent of the catalog.
  const double eps = 0.1;
  const auto root = [&](double x) {
    for (int i = 0; i < 100; ++i) x -= (x * x * x - x + eps) / (3 * x * x - 1);
    return x;
  };
  const double xl = root(-1.0), xs = root(0.0), xr = root(1.0);
  const auto phi = [&](double x) { return x * x * x * x / 4 - x * x / 2 + eps * x; };
  const double xm = phi(xl) > phi(xr) ? xl : xr;
  const double mu = std::abs(3 * xs * xs - 1), hm = 3 * xm * xm - 1;
  const double b0 = mu / kPi * std::sqrt(hm / mu);
  return numeric(asymmetric_double_well(eps), {0.05, 0.035, 0.025}, b0, false);
}

// Criterion 9.
Outcome linear_algebra() {
  std::mt19937_64 rng(oracle::seed() + 9);
  std::uniform_int_distribution<int> dim(1, 6);
  const auto desc = [](const Eigen::MatrixXd& m) {
    auto s = singular_values(m);
    std::reverse(s.begin(), s.end());
    return s;
  };
  const auto norm2 = [&](const Eigen::MatrixXd& m) { return desc(m).front(); };
  bool fan = true, diag = true, schur = true, proj = true;

  // mu_n(AB) <= |B| mu_n(A) and <= |A| mu_n(B), on random pairs and on the
  // assembled products Upsilon T.
  const auto check_fan = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const auto ab = desc(a * b), sa = desc(a), sb = desc(b);
    const double na = norm2(a), nb = norm2(b);
    for (std::size_t n = 0; n < ab.size(); ++n) {
      const double bound_a = n < sa.size() ? nb * sa[n] : 0.0, bound_b = n < sb.size() ? na * sb[n] : 0.0;
      fan = fan && ab[n] <= bound_a + 1e-12 * (1 + na * nb) && ab[n] <= bound_b + 1e-12 * (1 + na * nb);
    }
  };
  for (int i = 0; i < 100; ++i) {
    const int r = dim(rng), k = dim(rng), c = dim(rng);
    check_fan(oracle::random_matrix(rng, r, k), oracle::random_matrix(rng, k, c));
  }

  // Singular values of a block-diagonal matrix are the union over blocks.
  for (int i = 0; i < 100; ++i) {
    const int nb = 2 + i % 3;
    std::vector<Eigen::MatrixXd> blocks;
    int rows = 0, cols = 0;
    for (int b = 0; b < nb; ++b) {
      blocks.push_back(oracle::random_matrix(rng, dim(rng), dim(rng)));
      rows += static_cast<int>(blocks.back().rows());
      cols += static_cast<int>(blocks.back().cols());
    }
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(rows, cols);
    std::vector<double> uni;
    int r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
      big.block(r0, c0, b.rows(), b.cols()) = b;
      r0 += static_cast<int>(b.rows());
      c0 += static_cast<int>(b.cols());
      // A block contributes min(r, c) values; the rest of A^T A's spectrum is zero.
      const auto s = singular_values(b);
      uni.insert(uni.end(), s.begin(), s.end());
      for (Eigen::Index z = b.rows(); z < b.cols(); ++z) uni.push_back(0.0);
    }
    std::vector<double> all = singular_values(big);
    // Compare the spectra of A^T A: pad both lists with zeros to cols.
    while (static_cast<int>(all.size()) < cols) all.push_back(0.0);
    while (static_cast<int>(uni.size()) < cols) uni.push_back(0.0);
    std::sort(all.begin(), all.end());
    std::sort(uni.begin(), uni.end());
    for (int j = 0; j < cols; ++j) diag = diag && std::abs(all[j] - uni[j]) <= 1e-12 * (1 + all.back());
  }

  // SPD is closed under the Schur step.
  for (int i = 0; i < 100; ++i) {
    GradedCore g;
    const int a = dim(rng), b = dim(rng);
    g.blocks = {{a, 1.0}, {b, 2.0}};
    g.core = oracle::random_spd(rng, a + b);
    const GradedCore r = schur_R(g);
    const double scale = 1 + g.core.norm();
    schur = schur && (r.core - oracle::dense_schur(g.core, a)).cwiseAbs().maxCoeff() <= 1e-12 * scale &&
            (r.core - r.core.transpose()).cwiseAbs().maxCoeff() == 0.0 &&
            Eigen::LLT<Eigen::MatrixXd>(r.core).info() == Eigen::Success && sym_eig(schur_J(g)).values.minCoeff() > 0;
  }

  // Singular values of Upsilon are {0} and those of Upsilon T on classes where
  // ker Upsilon is the theta0 line: all-type-II classes over one barrier.
  int projected = 0;
  std::uniform_int_distribution<int> size(3, 9);
  for (int trial = 0; trial < 5000 && projected < 100; ++trial) {
    gen::TreeSpec spec;
    spec.minima = size(rng);
    spec.minimum_levels = {0.0, 1.0};
    spec.saddle_levels = {2.0, 3.0};
    const CriticalStructure cs = gen::random_tree(rng, spec);
    const Topology t = analyze_topology(cs);
    for (std::size_t a = 1; a < t.cd.classes.size(); ++a) {
      const ClassMatrices cm = assemble_class(cs, t, static_cast<int>(a));
      check_fan(cm.upsilon, cm.T);
      if (t.cd.classes[a].type != ClassType::II) continue;
      if (cm.layout.type2_columns.size() != cm.layout.columns.size()) continue;
      ++projected;
      auto full = singular_values(cm.upsilon);
      while (full.size() < static_cast<std::size_t>(cm.upsilon.cols())) full.insert(full.begin(), 0.0);
      auto reduced = singular_values(cm.upsilon * cm.T);
      while (reduced.size() < static_cast<std::size_t>(cm.T.cols())) reduced.insert(reduced.begin(), 0.0);
      reduced.insert(reduced.begin(), 0.0);
      for (std::size_t j = 0; j < full.size(); ++j)
        proj = proj && std::abs(full[j] - reduced[j]) <= 1e-12 * (1 + full.back());
    }
  }
  proj = proj && projected >= 100;

  std::string detail = std::string("Fan ") + (fan ? "ok" : "violated") + ", block SV union " + (diag ? "ok" : "violated") +
                       ", Schur SPD " + (schur ? "ok" : "violated") + ", projection SV " + (proj ? "ok" : "violated") +
                       " on " + std::to_string(projected) + " classes";
  return {fan && diag && schur && proj, detail};
}

}  // namespace

int main() {
  std::printf("seed %llu\n", static_cast<unsigned long long>(oracle::seed()));
  run(1, "four-well example", 1, four_wells);
  run(2, "two-height Schur example", 1, two_heights);
  run(3, "ring spectra", 1, rings);
  run(4, "graded spectrum", 30, graded);
  run(5, "kernel and injectivity", 5, kernels);
  run(6, "generic landscapes give singleton classes", 5, singletons);
  run(7, "symmetric double well numerics", 60, symmetric_numeric);
  run(8, "asymmetric double well numerics", 60, asymmetric_numeric);
  run(9, "linear algebra lemmas", 5, linear_algebra);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
