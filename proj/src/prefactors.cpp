#include "metastab/prefactors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metastab/error.hpp"
#include "metastab/linalg.hpp"

namespace metastab {

double h_phi(const CriticalStructure& cs, const std::vector<int>& companions) {
  if (companions.empty()) throw InvariantError("empty companion set for h_phi");
  double sum = 0.0;
  for (int m : companions) sum += 1.0 / std::sqrt(cs.minima[m].det_hess);
  return 1.0 / std::sqrt(sum);
}

double h_phi_saddle(const CriticalPoint& s) { return std::pow(s.det_hess, 0.25); }

ClassLayout class_layout(const CriticalStructure& cs, const Topology& topo, int alpha) {
  const MinimumClass& cls = topo.cd.classes.at(alpha);
  if (cls.type == ClassType::root) throw InvariantError("the root class carries no matrices");
  const auto& lab = topo.lab;

  ClassLayout lay;
  lay.alpha = alpha;
  lay.domain = cls.members;
  std::stable_sort(lay.domain.begin(), lay.domain.end(), [&](int a, int b) {
    if (lab.S[a] != lab.S[b]) return lab.S[a] < lab.S[b];
    return cs.minima[a].id < cs.minima[b].id;
  });
  lay.columns = lay.domain;
  if (cls.type == ClassType::II) lay.columns.push_back(cls.hat_m);

  for (int m : lay.columns) {
    const auto it = std::find(cls.U_hat.begin(), cls.U_hat.end(), m);
    lay.weight.push_back(h_phi(cs, cls.H_hat[it - cls.U_hat.begin()]));
  }
  for (const auto& e : cls.saddles) lay.rows.push_back(e.saddle);
  std::sort(lay.rows.begin(), lay.rows.end());

  for (int m : lay.domain) {
    if (lay.blocks.empty() || lay.blocks.back().S != lab.S[m]) lay.blocks.push_back({0, lab.S[m]});
    ++lay.blocks.back().size;
  }
  if (cls.type == ClassType::II) {
    for (std::size_t c = 0; c < lay.domain.size(); ++c)
      if (topo.maps.type[lay.domain[c]] == MinimumType::II) lay.type2_columns.push_back(static_cast<int>(c));
    lay.type2_columns.push_back(static_cast<int>(lay.columns.size()) - 1);
  }
  return lay;
}

Eigen::MatrixXd build_upsilon(const CriticalStructure& cs, const Topology& topo,
                              const ClassLayout& lay) {
  const MinimumClass& cls = topo.cd.classes.at(lay.alpha);
  const auto column = [&](int m) {
    const auto it = std::find(lay.columns.begin(), lay.columns.end(), m);
    return it == lay.columns.end() ? -1 : static_cast<int>(it - lay.columns.begin());
  };
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(lay.rows.size()),
                                            static_cast<Eigen::Index>(lay.columns.size()));
  for (std::size_t r = 0; r < lay.rows.size(); ++r) {
    const int k = lay.rows[r];
    const auto ends = std::find_if(cls.saddles.begin(), cls.saddles.end(),
                                   [&](const SaddleEnds& e) { return e.saddle == k; });
    const CriticalPoint& s = cs.saddles[k];
    const double scale = std::sqrt(s.neg_eig) / (std::sqrt(std::numbers::pi) * h_phi_saddle(s));
    const int c1 = column(ends->m1), c2 = column(ends->m2);
    if (c1 < 0) throw InvariantError("saddle endpoint outside its class");
    U(r, c1) = scale * lay.weight[c1];
    if (c2 >= 0) U(r, c2) = -scale * lay.weight[c2];
  }
  return U;
}

Eigen::VectorXd build_theta0(const ClassLayout& lay) {
  Eigen::VectorXd theta(static_cast<Eigen::Index>(lay.type2_columns.size()));
  for (std::size_t i = 0; i < lay.type2_columns.size(); ++i) theta[i] = 1.0 / lay.weight[lay.type2_columns[i]];
  if (theta.size() > 0) theta.normalize();
  return theta;
}

Eigen::MatrixXd build_T(const ClassLayout& lay) {
  const auto q = static_cast<Eigen::Index>(lay.domain.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(lay.columns.size()), q);
  std::vector<char> type2(lay.columns.size(), 0);
  for (int c : lay.type2_columns) type2[c] = 1;
  for (Eigen::Index c = 0; c < q; ++c)
    if (!type2[c]) T(c, c) = 1.0;
  if (lay.type2_columns.empty()) return T;

  // Reflection frame: parent first, then the type-II members.
  const Eigen::VectorXd theta = build_theta0(lay);
  const Eigen::Index k = theta.size();
  std::vector<int> frame{lay.type2_columns.back()};
  frame.insert(frame.end(), lay.type2_columns.begin(), lay.type2_columns.end() - 1);
  Eigen::VectorXd u(k);
  u[0] = theta[k - 1];
  u.tail(k - 1) = theta.head(k - 1);
  const Eigen::MatrixXd comp = householder_complement(u);
  for (Eigen::Index j = 0; j + 1 < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i) T(frame[i], lay.type2_columns[j]) = comp(i, j);
  return T;
}

GradedCore build_graded_core(const Eigen::MatrixXd& upsilon, const Eigen::MatrixXd& T,
                             const ClassLayout& lay) {
  const Eigen::MatrixXd L = upsilon * T;
  GradedCore g;
  g.core = L.transpose() * L;
  g.core = 0.5 * (g.core + g.core.transpose()).eval();
  g.blocks = lay.blocks;
  g.class_id = lay.alpha;
  check_graded_core(g);
  return g;
}

ClassMatrices assemble_class(const CriticalStructure& cs, const Topology& topo, int alpha) {
  ClassMatrices cm;
  cm.layout = class_layout(cs, topo, alpha);
  cm.upsilon = build_upsilon(cs, topo, cm.layout);
  cm.theta0 = build_theta0(cm.layout);
  cm.T = build_T(cm.layout);
  cm.core = build_graded_core(cm.upsilon, cm.T, cm.layout);
  return cm;
}

}  // namespace metastab
