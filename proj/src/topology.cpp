#include "metastab/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "metastab/error.hpp"

namespace metastab {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

double Levels::at(int level) const {
  if (level == kTopLevel) return std::numeric_limits<double>::infinity();
  return value.at(level);
}

Levels cluster_levels(const CriticalStructure& cs) {
  struct Item {
    double v;
    bool saddle;
    int idx;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < cs.minima.size(); ++i)
    items.push_back({cs.minima[i].value, false, static_cast<int>(i)});
  for (std::size_t i = 0; i < cs.saddles.size(); ++i)
    items.push_back({cs.saddles[i].value, true, static_cast<int>(i)});
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.v < b.v; });

  Levels lv;
  lv.of_minimum.assign(cs.minima.size(), -1);
  lv.of_saddle.assign(cs.saddles.size(), -1);
  double sum = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0 && items[k].v - items[k - 1].v > cs.level_tolerance) {
      lv.value.push_back(sum / count);
      sum = 0.0;
      count = 0;
    }
    const int level = static_cast<int>(lv.value.size());
    (items[k].saddle ? lv.of_saddle : lv.of_minimum)[items[k].idx] = level;
    sum += items[k].v;
    ++count;
  }
  if (count > 0) lv.value.push_back(sum / count);
  return lv;
}

Partition components_below(const CriticalStructure& cs, const Levels& lv, int level_index) {
  const int n = static_cast<int>(cs.minima.size());
  DisjointSets dsu(n);
  std::vector<int> order(cs.saddles.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lv.of_saddle[a] < lv.of_saddle[b]; });
  for (int k : order) {
    if (lv.of_saddle[k] >= level_index) break;
    dsu.unite(cs.joins[k][0], cs.joins[k][1]);
  }
  Partition part;
  part.component.assign(n, -1);
  std::map<int, int> root_to_comp;
  for (int m = 0; m < n; ++m) {
    if (lv.of_minimum[m] >= level_index) continue;
    const int root = dsu.find(m);
    auto [it, fresh] = root_to_comp.emplace(root, static_cast<int>(part.members.size()));
    if (fresh) part.members.emplace_back();
    part.component[m] = it->second;
    part.members[it->second].push_back(m);
  }
  return part;
}

Partition sublevel_components(const CriticalStructure& cs, double level) {
  const Levels lv = cluster_levels(cs);
  int t = kTopLevel;
  if (!std::isinf(level) || level < 0) {
    t = 0;
    while (t < static_cast<int>(lv.value.size()) && lv.value[t] < level - cs.level_tolerance) ++t;
  }
  return components_below(cs, lv, t);
}

int Labelling::level_above(int m) const {
  const auto it = std::find(ssv.begin(), ssv.end(), sigma[m]);
  if (it == ssv.end() || it == ssv.begin()) return kTopLevel;
  return *(it - 1);
}

namespace {

// Lowest minimum of a set, ties broken by smallest id.
int lowest(const CriticalStructure& cs, const Levels& lv, const std::vector<int>& set) {
  int best = -1;
  for (int m : set) {
    if (best < 0 || lv.of_minimum[m] < lv.of_minimum[best] ||
        (lv.of_minimum[m] == lv.of_minimum[best] && cs.minima[m].id < cs.minima[best].id))
      best = m;
  }
  return best;
}

}  // namespace

Labelling label_minima(const CriticalStructure& cs) {
  Labelling lab;
  lab.levels = cluster_levels(cs);
  const auto& lv = lab.levels;
  const int n = static_cast<int>(cs.minima.size());

  std::set<int, std::greater<int>> ssv(lv.of_saddle.begin(), lv.of_saddle.end());
  lab.ssv.assign(ssv.begin(), ssv.end());

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  lab.underline_m = lowest(cs, lv, all);
  lab.sigma.assign(n, -1);
  lab.rank.assign(n, 0);
  lab.S.assign(n, std::numeric_limits<double>::infinity());
  lab.sigma[lab.underline_m] = kTopLevel;
  lab.rank[lab.underline_m] = 1;
  lab.components.push_back({1, 1, lab.underline_m, all});

  for (std::size_t k = 0; k < lab.ssv.size(); ++k) {
    const int level = lab.ssv[k];
    const int i = static_cast<int>(k) + 2;
    const Partition part = components_below(cs, lv, level);
    std::vector<LabelledComponent> fresh;
    for (const auto& comp : part.members) {
      const bool labelled = std::any_of(comp.begin(), comp.end(), [&](int m) { return lab.sigma[m] != -1; });
      if (labelled) continue;
      fresh.push_back({i, 0, lowest(cs, lv, comp), comp});
    }
    std::sort(fresh.begin(), fresh.end(), [&](const auto& a, const auto& b) {
      return cs.minima[a.minimum].id < cs.minima[b.minimum].id;
    });
    for (std::size_t j = 0; j < fresh.size(); ++j) {
      fresh[j].j = static_cast<int>(j) + 1;
      const int m = fresh[j].minimum;
      lab.sigma[m] = level;
      lab.rank[m] = i;
      lab.S[m] = lv.at(level) - lv.at(lv.of_minimum[m]);
      lab.components.push_back(fresh[j]);
    }
  }
  for (int m = 0; m < n; ++m)
    if (lab.sigma[m] == -1)
      throw InvariantError("labelling left minimum " + cs.minima[m].id + " unlabelled");
  return lab;
}

DerivedMaps derive_maps(const CriticalStructure& cs, const Labelling& lab) {
  const auto& lv = lab.levels;
  const int n = static_cast<int>(cs.minima.size());
  DerivedMaps maps;
  maps.E.resize(n);
  maps.E_minus.resize(n);
  maps.E_hat.resize(n);
  maps.H.resize(n);
  maps.hat_m.assign(n, -1);
  maps.type.assign(n, MinimumType::root);

  std::map<int, Partition> cache;
  const auto below = [&](int level) -> const Partition& {
    auto it = cache.find(level);
    if (it == cache.end()) it = cache.emplace(level, components_below(cs, lv, level)).first;
    return it->second;
  };

  for (int m = 0; m < n; ++m) {
    const Partition& at_sigma = below(lab.sigma[m]);
    maps.E[m] = at_sigma.members[at_sigma.of(m)];
    for (int q : maps.E[m])
      if (lv.of_minimum[q] == lv.of_minimum[m]) maps.H[m].push_back(q);
    if (m == lab.underline_m) continue;

    const Partition& above = below(lab.level_above(m));
    maps.E_minus[m] = above.members[above.of(m)];
    int parent = -1;
    for (int q : maps.E_minus[m]) {
      if (lab.sigma[q] > lab.sigma[m]) {
        if (parent >= 0)
          throw InvariantError("component above " + cs.minima[m].id + " holds two labelled minima");
        parent = q;
      }
    }
    if (parent < 0) throw InvariantError("no parent minimum for " + cs.minima[m].id);
    maps.hat_m[m] = parent;
    maps.E_hat[m] = at_sigma.members[at_sigma.of(parent)];
    maps.type[m] = lv.of_minimum[parent] == lv.of_minimum[m] ? MinimumType::II : MinimumType::I;
    if (lv.of_minimum[parent] > lv.of_minimum[m])
      throw InvariantError("parent of " + cs.minima[m].id + " lies above it");
  }
  return maps;
}

ClassDecomposition equivalence_classes(const CriticalStructure& cs, const Labelling& lab,
                                       const DerivedMaps& maps) {
  const auto& lv = lab.levels;
  const int n = static_cast<int>(cs.minima.size());
  ClassDecomposition cd;
  cd.class_of.assign(n, -1);
  cd.class_of_saddle.assign(cs.saddles.size(), -1);

  MinimumClass root;
  root.members = {lab.underline_m};
  root.U_hat = root.members;
  root.H_hat = {maps.H[lab.underline_m]};
  cd.classes.push_back(root);
  cd.class_of[lab.underline_m] = 0;

  for (int level : lab.ssv) {
    const Partition part = components_below(cs, lv, level);
    const int nc = static_cast<int>(part.members.size());
    std::vector<char> in_omega(nc, 0);
    std::vector<int> at_level;
    for (int m = 0; m < n; ++m) {
      if (lab.sigma[m] != level) continue;
      at_level.push_back(m);
      in_omega[part.of(m)] = 1;
      if (maps.type[m] == MinimumType::II) in_omega[part.of(maps.hat_m[m])] = 1;
    }
    // Closures of two level components meet exactly at a shared saddle of this level.
    DisjointSets chain(nc);
    for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
      if (lv.of_saddle[k] != level) continue;
      const int a = part.of(cs.joins[k][0]), b = part.of(cs.joins[k][1]);
      if (in_omega[a] && in_omega[b]) chain.unite(a, b);
    }
    std::map<int, std::vector<int>> groups;
    for (int m : at_level) groups[chain.find(part.of(m))].push_back(m);

    std::vector<MinimumClass> fresh;
    for (auto& [root_comp, members] : groups) {
      std::sort(members.begin(), members.end(),
                [&](int a, int b) { return cs.minima[a].id < cs.minima[b].id; });
      MinimumClass c;
      c.members = members;
      c.sigma = level;
      c.hat_m = maps.hat_m[members.front()];
      c.E_hat = maps.E_hat[members.front()];
      bool type2 = false;
      std::set<double, std::greater<double>> heights;
      for (int m : members) {
        if (maps.hat_m[m] != c.hat_m)
          throw InvariantError("parent minimum not constant on a class");
        type2 = type2 || maps.type[m] == MinimumType::II;
        heights.insert(lab.S[m]);
      }
      c.type = type2 ? ClassType::II : ClassType::I;
      c.heights.assign(heights.begin(), heights.end());
      c.U_hat = members;
      for (int m : members) c.H_hat.push_back(maps.H[m]);
      if (type2) {
        c.U_hat.push_back(c.hat_m);
        std::vector<int> hat_h;
        for (int q : c.E_hat)
          if (lv.of_minimum[q] == lv.of_minimum[c.hat_m]) hat_h.push_back(q);
        c.H_hat.push_back(hat_h);
      }
      fresh.push_back(std::move(c));
    }
    std::sort(fresh.begin(), fresh.end(), [&](const auto& a, const auto& b) {
      return cs.minima[a.members.front()].id < cs.minima[b.members.front()].id;
    });
    for (auto& c : fresh) {
      for (int m : c.members) cd.class_of[m] = static_cast<int>(cd.classes.size());
      cd.classes.push_back(std::move(c));
    }
  }
  return cd;
}

void partition_saddles(const CriticalStructure& cs, const Labelling& lab, const DerivedMaps& maps,
                       ClassDecomposition& cd) {
  (void)maps;
  const auto& lv = lab.levels;
  cd.class_of_saddle.assign(cs.saddles.size(), -1);
  for (auto& c : cd.classes) c.saddles.clear();

  std::map<int, Partition> cache;
  for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
    const int level = lv.of_saddle[k];
    auto it = cache.find(level);
    if (it == cache.end()) it = cache.emplace(level, components_below(cs, lv, level)).first;
    const Partition& part = it->second;

    // Each side's owner is its unique labelled minimum with label level >= this level.
    int owner[2];
    for (int t = 0; t < 2; ++t) {
      owner[t] = -1;
      for (int q : part.members[part.of(cs.joins[k][t])]) {
        if (lab.sigma[q] < level) continue;
        if (owner[t] >= 0) throw InvariantError("sublevel component with two labelled minima");
        owner[t] = q;
      }
    }
    if (owner[0] < 0 || owner[1] < 0)
      throw InvariantError("saddle " + cs.saddles[k].id + " touches an unlabelled component");
    const bool own0 = lab.sigma[owner[0]] == level, own1 = lab.sigma[owner[1]] == level;
    if (!own0 && !own1)
      throw InvariantError("saddle " + cs.saddles[k].id + " is assignable to no class");

    SaddleEnds ends;
    ends.saddle = static_cast<int>(k);
    if (own0 && own1) {
      int a = owner[0], b = owner[1];
      const bool swap = lv.of_minimum[a] < lv.of_minimum[b] ||
                        (lv.of_minimum[a] == lv.of_minimum[b] && cs.minima[b].id < cs.minima[a].id);
      if (swap) std::swap(a, b);
      ends.m1 = a;
      ends.m2 = b;
      if (cd.class_of[a] != cd.class_of[b])
        throw InvariantError("saddle " + cs.saddles[k].id + " joins two classes");
    } else {
      ends.m1 = own0 ? owner[0] : owner[1];
      ends.m2 = own0 ? owner[1] : owner[0];
      ends.boundary = true;
    }
    const int alpha = cd.class_of[ends.m1];
    if (ends.boundary && ends.m2 != cd.classes[alpha].hat_m)
      throw InvariantError("boundary saddle " + cs.saddles[k].id + " does not reach the parent minimum");
    cd.class_of_saddle[k] = alpha;
    cd.classes[alpha].saddles.push_back(ends);
  }
  for (std::size_t a = 1; a < cd.classes.size(); ++a) {
    const auto& c = cd.classes[a];
    if (std::none_of(c.saddles.begin(), c.saddles.end(), [](const SaddleEnds& e) { return e.boundary; }))
      throw InvariantError("class without boundary saddle");
  }
}

GenericCheck check_generic_assumption(const CriticalStructure& cs, const Labelling& lab,
                                      const DerivedMaps& maps) {
  const auto& lv = lab.levels;
  for (const auto& comp : lab.components) {
    const int m = comp.minimum;
    int count = 0;
    for (int q : maps.E[m]) count += lv.of_minimum[q] == lv.of_minimum[m];
    if (count > 1)
      return {false, "component of " + cs.minima[m].id + " has " + std::to_string(count) +
                         " global minima"};
  }
  std::vector<int> thresholds = lab.ssv;
  thresholds.insert(thresholds.begin(), kTopLevel);
  for (int t : thresholds) {
    const Partition part = components_below(cs, lv, t);
    std::vector<int> top(part.members.size(), -1), hits(part.members.size(), 0);
    std::vector<std::string> names(part.members.size());
    for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
      if (lv.of_saddle[k] >= t) continue;
      const int c = part.of(cs.joins[k][0]);
      if (lv.of_saddle[k] > top[c]) {
        top[c] = lv.of_saddle[k];
        hits[c] = 1;
        names[c] = cs.saddles[k].id;
      } else if (lv.of_saddle[k] == top[c]) {
        ++hits[c];
        names[c] += "," + cs.saddles[k].id;
      }
    }
    for (std::size_t c = 0; c < hits.size(); ++c)
      if (hits[c] > 1)
        return {false, "saddles " + names[c] + " share the highest level of one component"};
  }
  return {true, ""};
}

Topology analyze_topology(const CriticalStructure& cs) {
  Topology t;
  t.lab = label_minima(cs);
  t.maps = derive_maps(cs, t.lab);
  t.cd = equivalence_classes(cs, t.lab, t.maps);
  partition_saddles(cs, t.lab, t.maps, t.cd);
  return t;
}

std::string to_string(MinimumType t) {
  switch (t) {
    case MinimumType::root: return "root";
    case MinimumType::I: return "I";
    case MinimumType::II: return "II";
  }
  return "?";
}

std::string to_string(ClassType t) {
  switch (t) {
    case ClassType::root: return "root";
    case ClassType::I: return "I";
    case ClassType::II: return "II";
  }
  return "?";
}

}  // namespace metastab
