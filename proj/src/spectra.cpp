#include "metastab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "metastab/error.hpp"
#include "metastab/linalg.hpp"

namespace metastab {

void check_graded_core(const GradedCore& g) {
  const Eigen::Index n = g.core.rows();
  if (g.core.cols() != n) throw InvariantError("graded core is not square");
  int total = 0;
  for (std::size_t j = 0; j < g.blocks.size(); ++j) {
    if (g.blocks[j].size <= 0) throw InvariantError("empty height block");
    if (j > 0 && !(g.blocks[j].S > g.blocks[j - 1].S))
      throw InvariantError("block barriers must increase");
    total += g.blocks[j].size;
  }
  if (total != n) throw InvariantError("height blocks do not cover the core");
  const double scale = std::max(g.core.cwiseAbs().maxCoeff(), 1e-300);
  if ((g.core - g.core.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvariantError("graded core is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g.core);
  if (llt.info() != Eigen::Success || sym_eig(g.core).values.minCoeff() <= 0.0)
    throw InvariantError("graded core is not positive definite");
}

Eigen::MatrixXd schur_J(const GradedCore& g) {
  const int r = g.blocks.empty() ? static_cast<int>(g.core.rows()) : g.blocks.front().size;
  return g.core.topLeftCorner(r, r);
}

GradedCore schur_R(const GradedCore& g) {
  if (g.p() < 2) throw InputError("domain", "Schur map needs at least two height blocks");
  const Eigen::Index r = g.blocks.front().size;
  const Eigen::Index rest = g.core.rows() - r;
  const Eigen::MatrixXd J = g.core.topLeftCorner(r, r);
  const Eigen::MatrixXd B = g.core.bottomLeftCorner(rest, r);
  const Eigen::MatrixXd N = g.core.bottomRightCorner(rest, rest);

  GradedCore out;
  out.core = N - B * Eigen::LLT<Eigen::MatrixXd>(J).solve(B.transpose());
  out.core = 0.5 * (out.core + out.core.transpose()).eval();
  out.blocks.assign(g.blocks.begin() + 1, g.blocks.end());
  out.class_id = g.class_id;
  return out;
}

std::vector<LevelSpectrum> class_spectrum(const GradedCore& g) {
  std::vector<LevelSpectrum> levels;
  GradedCore cur = g;
  while (true) {
    LevelSpectrum ls;
    ls.S = cur.blocks.front().S;
    ls.M0 = schur_J(cur);
    ls.zeta2 = eigenvalues(ls.M0);
    for (double z : ls.zeta2) {
      if (!(z > 0.0)) throw InvariantError("non-positive level eigenvalue");
      ls.pi_zeta2.push_back(std::numbers::pi * z);
    }
    levels.push_back(std::move(ls));
    if (cur.p() == 1) break;
    cur = schur_R(cur);
  }
  return levels;
}

std::vector<Prediction> SpectrumReport::evaluate(double h) const {
  if (!(h > 0.0)) throw InputError("domain", "h must be positive");
  std::vector<Prediction> out;
  for (const auto& cls : classes) {
    if (cls.type == ClassType::root) {
      Prediction p;
      p.alpha = cls.alpha;
      p.zero = true;
      p.S = std::numeric_limits<double>::infinity();
      p.log_lambda = -std::numeric_limits<double>::infinity();
      out.push_back(p);
      continue;
    }
    for (std::size_t k = 0; k < cls.levels.size(); ++k)
      for (double z : cls.levels[k].zeta2) {
        Prediction p;
        p.alpha = cls.alpha;
        p.level = static_cast<int>(k) + 1;
        p.S = cls.levels[k].S;
        p.zeta2 = z;
        p.log_lambda = std::log(h) + std::log(z) - 2.0 * p.S / h;
        p.lambda = std::exp(p.log_lambda);
        out.push_back(p);
      }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Prediction& a, const Prediction& b) { return a.log_lambda < b.log_lambda; });
  return out;
}

SpectrumReport full_spectrum(const Topology& topo, const std::vector<ClassMatrices>& mats) {
  SpectrumReport rep;
  rep.n0 = static_cast<int>(topo.cd.class_of.size());
  int count = 0;
  for (std::size_t a = 0; a < topo.cd.classes.size(); ++a) {
    ClassSpectrum cls;
    cls.alpha = static_cast<int>(a);
    cls.type = topo.cd.classes[a].type;
    if (cls.type == ClassType::root) {
      ++count;
    } else {
      cls.levels = class_spectrum(mats.at(a).core);
      for (const auto& l : cls.levels) count += static_cast<int>(l.zeta2.size());
    }
    rep.classes.push_back(std::move(cls));
  }
  if (count != rep.n0) throw InvariantError("predicted eigenvalue count differs from the number of minima");
  return rep;
}

Eigen::MatrixXd graph_laplacian(const CriticalStructure& cs, const Topology& topo, int alpha) {
  if (alpha <= 0 || alpha >= static_cast<int>(topo.cd.classes.size()))
    throw InputError("domain", "no such non-root class");
  const MinimumClass& cls = topo.cd.classes[alpha];
  if (cls.type != ClassType::II || cls.p() != 1)
    throw InputError("domain", "graph Laplacian needs a type-II class with one barrier height");
  const ClassLayout lay = class_layout(cs, topo, alpha);
  const Eigen::MatrixXd U = build_upsilon(cs, topo, lay);
  Eigen::MatrixXd L = U.transpose() * U;
  return 0.5 * (L + L.transpose());
}

Analysis analyze(const CriticalStructure& cs) {
  Analysis an;
  an.cs = cs;
  an.topo = analyze_topology(cs);
  an.mats.resize(an.topo.cd.classes.size());
  for (std::size_t a = 1; a < an.topo.cd.classes.size(); ++a)
    an.mats[a] = assemble_class(cs, an.topo, static_cast<int>(a));
  an.spectrum = full_spectrum(an.topo, an.mats);
  an.generic = check_generic_assumption(cs, an.topo.lab, an.topo.maps);
  if (an.generic.holds)
    for (const auto& cls : an.topo.cd.classes)
      if (cls.members.size() != 1)
        throw InvariantError("generic landscape with a non-singleton class");
  return an;
}

}  // namespace metastab
