#include "metastab/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace metastab {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, depth + 1);
      }
      os << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << (indent > 0 ? ", " : ",");
          write(os, j[i], indent, depth + 1);
        }
        os << ']';
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',' << nl;
        os << pad;
        write(os, j[i], indent, depth + 1);
      }
      os << nl << close << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

Json ids(const CriticalStructure& cs, const std::vector<int>& minima) {
  Json a = Json::array();
  for (int m : minima) a.push_back(cs.minima[m].id);
  return a;
}

Json structure_json(const CriticalStructure& cs) {
  Json j;
  j["level_tolerance"] = cs.level_tolerance;
  j["minima"] = Json::array();
  for (const auto& m : cs.minima) {
    Json e{{"id", m.id}, {"phi", m.value}, {"det_hess", m.det_hess}};
    if (m.x) e["x"] = *m.x;
    j["minima"].push_back(e);
  }
  j["saddles"] = Json::array();
  for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
    const auto& s = cs.saddles[k];
    Json e{{"id", s.id}, {"phi", s.value}, {"neg_eig", s.neg_eig}, {"det_hess", s.det_hess},
           {"joins", {cs.minima[cs.joins[k][0]].id, cs.minima[cs.joins[k][1]].id}}};
    if (s.x) e["x"] = *s.x;
    j["saddles"].push_back(e);
  }
  return j;
}

Json labelling_json(const CriticalStructure& cs, const Topology& t) {
  const auto& lab = t.lab;
  const auto& maps = t.maps;
  Json j;
  j["underline_m"] = cs.minima[lab.underline_m].id;
  j["separating_values"] = Json::array();
  for (int l : lab.ssv) j["separating_values"].push_back(lab.levels.at(l));
  std::vector<int> col(cs.minima.size(), 0);
  for (const auto& c : lab.components) col[c.minimum] = c.j;
  j["minima"] = Json::array();
  for (std::size_t m = 0; m < cs.minima.size(); ++m) {
    Json e{{"id", cs.minima[m].id},
           {"i", lab.rank[m]},
           {"j", col[m]},
           {"sigma", number(lab.sigma_value(static_cast<int>(m)))},
           {"S", number(lab.S[m])},
           {"type", to_string(maps.type[m])},
           {"hat_m", maps.hat_m[m] < 0 ? Json(nullptr) : Json(cs.minima[maps.hat_m[m]].id)},
           {"E", ids(cs, maps.E[m])},
           {"E_minus", ids(cs, maps.E_minus[m])},
           {"E_hat", ids(cs, maps.E_hat[m])},
           {"H", ids(cs, maps.H[m])}};
    j["minima"].push_back(e);
  }
  return j;
}

Json classes_json(const CriticalStructure& cs, const Topology& t) {
  Json a = Json::array();
  for (std::size_t k = 0; k < t.cd.classes.size(); ++k) {
    const MinimumClass& c = t.cd.classes[k];
    Json e{{"alpha", k}, {"members", ids(cs, c.members)}, {"type", to_string(c.type)}};
    if (c.type != ClassType::root) {
      e["sigma"] = number(t.lab.levels.at(c.sigma));
      e["hat_m"] = cs.minima[c.hat_m].id;
      e["E_hat"] = ids(cs, c.E_hat);
      e["U_hat"] = ids(cs, c.U_hat);
      e["p"] = c.p();
      Json hs = Json::array();
      for (double s : c.heights) hs.push_back(number(s));
      e["heights"] = hs;
      Json sd = Json::array();
      for (const auto& s : c.saddles)
        sd.push_back({{"id", cs.saddles[s.saddle].id},
                      {"m1", cs.minima[s.m1].id},
                      {"m2", cs.minima[s.m2].id},
                      {"kind", s.boundary ? "boundary" : "interior"}});
      e["saddles"] = sd;
    }
    a.push_back(e);
  }
  return a;
}

Json blocks_json(const std::vector<HeightBlock>& blocks) {
  Json a = Json::array();
  for (const auto& b : blocks) a.push_back({{"size", b.size}, {"S", number(b.S)}});
  return a;
}

}  // namespace

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(row);
  }
  return a;
}

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  os << '\n';
  return os.str();
}

Json analysis_json(const Analysis& an, const std::vector<double>& h_list) {
  const auto& cs = an.cs;
  Json j;
  j["schema"] = kSchema;
  j["conventions"] = {
      {"pairing", an.spectrum.pairing},
      {"pairing_note",
       "level k of a class is J(R^(k-1)(core)) paired with the k-th smallest barrier of the class"},
      {"pi_factor", "zeta2 keeps pi^(-1/2) inside Upsilon; pi_zeta2 = pi * zeta2"},
      {"order", "leading order in h only"}};
  j["structure"] = structure_json(cs);
  j["labelling"] = labelling_json(cs, an.topo);
  j["classes"] = classes_json(cs, an.topo);

  Json mats = Json::array();
  Json levels = Json::array();
  for (std::size_t a = 1; a < an.mats.size(); ++a) {
    const ClassMatrices& m = an.mats[a];
    Json theta = Json::array();
    for (Eigen::Index i = 0; i < m.theta0.size(); ++i) theta.push_back(m.theta0[i]);
    Json rows = Json::array();
    for (int s : m.layout.rows) rows.push_back(cs.saddles[s].id);
    mats.push_back({{"alpha", a},
                    {"rows", rows},
                    {"cols", ids(cs, m.layout.columns)},
                    {"domain", ids(cs, m.layout.domain)},
                    {"upsilon", matrix_json(m.upsilon)},
                    {"T", matrix_json(m.T)},
                    {"theta0", theta},
                    {"core", matrix_json(m.core.core)},
                    {"blocks", blocks_json(m.core.blocks)}});
    Json ls = Json::array();
    const auto& spec = an.spectrum.classes[a];
    for (std::size_t k = 0; k < spec.levels.size(); ++k) {
      const auto& l = spec.levels[k];
      ls.push_back({{"level", k + 1}, {"S", l.S}, {"M0", matrix_json(l.M0)}, {"zeta2", l.zeta2},
                    {"pi_zeta2", l.pi_zeta2}});
    }
    levels.push_back({{"alpha", a}, {"members", ids(cs, an.topo.cd.classes[a].members)}, {"levels", ls}});
  }
  j["matrices"] = mats;
  j["levels"] = levels;

  Json evals = Json::array();
  for (double h : h_list) {
    Json es = Json::array();
    for (const auto& p : an.spectrum.evaluate(h))
      es.push_back({{"alpha", p.alpha}, {"level", p.level}, {"S", number(p.S)}, {"zeta2", p.zeta2},
                    {"lambda", p.lambda}, {"log_lambda", number(p.log_lambda)}});
    evals.push_back({{"h", h}, {"eigenvalues", es}});
  }
  j["spectrum"] = {{"n0", an.spectrum.n0}, {"pairing", an.spectrum.pairing}, {"evaluations", evals}};
  j["generic_assumption"] = {{"holds", an.generic.holds}, {"witness", an.generic.witness}};
  return j;
}

Json validation_json(const ValidationReport& vr) {
  Json j;
  j["schema"] = kSchema;
  j["domain"] = {vr.a, vr.b};
  j["scheme"] = to_string(vr.scheme);
  j["tolerance_rule"] = {{"C_tol", vr.c_tol}, {"note", "artifact choice: |ratio - 1| <= C_tol * h at the smallest h"}};
  Json pts = Json::array();
  for (const auto& p : vr.points)
    pts.push_back({{"h", p.h},
                   {"grid", p.n},
                   {"numeric", p.numeric},
                   {"numeric_refined", p.numeric_refined},
                   {"next_eigenvalue", p.next_eigenvalue},
                   {"predicted", p.predicted},
                   {"log_predicted", p.log_predicted},
                   {"ratio", p.ratio},
                   {"refinement_change", p.refinement_change}});
  j["points"] = pts;
  Json vs = Json::array();
  for (const auto& v : vr.verdicts)
    vs.push_back({{"index", v.index}, {"S", v.S}, {"verdict", v.verdict}, {"errors", v.errors},
                  {"tolerance", v.tolerance}});
  j["verdicts"] = vs;
  j["overall"] = vr.overall;
  return j;
}

Json example_json(const Example& ex, const Analysis& an, const std::vector<double>& h_list,
                  const std::optional<ValidationReport>& vr) {
  Json j;
  j["schema"] = kSchema;
  j["example"] = ex.name;
  j["description"] = ex.description;
  j["realization_note"] = "numeric values are one canonical realization of the ordinal data";
  Json ref = Json::array();
  for (const auto& r : ex.reference) ref.push_back({{"label", r.label}, {"values", r.values}, {"note", r.note}});
  j["reference"] = ref;
  Json rep = analysis_json(an, h_list);
  rep.erase("schema");
  j["analysis"] = rep;
  if (vr) {
    Json v = validation_json(*vr);
    v.erase("schema");
    j["validation"] = v;
  }
  return j;
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}};
}

std::string plots_csv(const ValidationReport& vr) {
  std::ostringstream os;
  os << "h,index,predicted,numeric\n";
  char buf[128];
  for (const auto& p : vr.points) {
    for (std::size_t i = 0; i < p.numeric.size(); ++i) {
      const double pred = i == 0 ? 0.0 : p.predicted[i - 1];
      std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g\n", p.h, i, pred, p.numeric[i]);
      os << buf;
    }
  }
  return os.str();
}

std::string samples_csv(const Landscape1D& l, double step) {
  std::ostringstream os;
  os << "x,phi\n";
  const int n = static_cast<int>(std::llround((l.b - l.a) / step));
  char buf[96];
  for (int i = 0; i <= n; ++i) {
    const double x = l.a + i * (l.b - l.a) / n;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, l.phi(x));
    os << buf;
  }
  return os.str();
}

}  // namespace metastab
