#include "metastab/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "metastab/error.hpp"
#include "metastab/topology.hpp"

namespace metastab {

using nlohmann::json;

int CriticalStructure::minimum_index(const std::string& id) const {
  for (std::size_t i = 0; i < minima.size(); ++i)
    if (minima[i].id == id) return static_cast<int>(i);
  return -1;
}

int CriticalStructure::saddle_index(const std::string& id) const {
  for (std::size_t i = 0; i < saddles.size(); ++i)
    if (saddles[i].id == id) return static_cast<int>(i);
  return -1;
}

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate_structure(const CriticalStructure& cs) {
  if (cs.minima.empty()) throw InputError("invalid-structure", "structure has no minimum");
  if (!std::isfinite(cs.level_tolerance) || cs.level_tolerance < 0.0)
    throw InputError("invalid-structure", "level_tolerance must be finite and nonnegative");
  if (cs.joins.size() != cs.saddles.size())
    throw InputError("invalid-structure", "every saddle needs exactly one joins pair");

  std::set<std::string> ids;
  for (const auto& m : cs.minima) {
    if (!ids.insert(m.id).second) throw InputError("duplicate-id", "duplicate id '" + m.id + "'");
    if (!std::isfinite(m.value)) throw InputError("invalid-structure", "non-finite phi at " + m.id);
    if (!positive_finite(m.det_hess))
      throw InputError("invalid-structure", "det_hess must be positive at " + m.id);
  }
  for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
    const auto& s = cs.saddles[k];
    if (!ids.insert(s.id).second) throw InputError("duplicate-id", "duplicate id '" + s.id + "'");
    if (!std::isfinite(s.value)) throw InputError("invalid-structure", "non-finite phi at " + s.id);
    if (!positive_finite(s.det_hess) || !positive_finite(s.neg_eig))
      throw InputError("invalid-structure", "det_hess and neg_eig must be positive at " + s.id);
    for (int r : cs.joins[k])
      if (r < 0 || r >= static_cast<int>(cs.minima.size()))
        throw InputError("unknown-minimum", "saddle " + s.id + " joins an unknown minimum");
    if (cs.joins[k][0] == cs.joins[k][1])
      throw InputError("invalid-structure", "saddle " + s.id + " joins the same minimum twice");
  }

  const Levels lv = cluster_levels(cs);
  for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
    const int ls = lv.of_saddle[k];
    for (int r : cs.joins[k])
      if (lv.of_minimum[r] >= ls)
        throw InputError("invalid-structure", "saddle " + cs.saddles[k].id +
                                                  " is not above joined minimum " + cs.minima[r].id);
    const Partition below = components_below(cs, lv, ls);
    if (below.of(cs.joins[k][0]) == below.of(cs.joins[k][1]))
      throw InputError("invalid-structure",
                       "saddle " + cs.saddles[k].id + " does not separate its joined minima");
  }
  if (components_below(cs, lv, kTopLevel).members.size() != 1)
    throw InputError("invalid-structure", "landscape is not connected through its saddles");
}

namespace {

double number_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw InputError("schema", std::string("missing numeric field '") + key + "' in " + where);
  return j.at(key).get<double>();
}

std::string id_field(const json& j, const std::string& where) {
  if (!j.contains("id") || !j.at("id").is_string())
    throw InputError("schema", "missing string field 'id' in " + where);
  return j.at("id").get<std::string>();
}

}  // namespace

CriticalStructure load_structure(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("parse", e.what());
  }
  if (!doc.is_object()) throw InputError("schema", "structure document must be an object");

  CriticalStructure cs;
  cs.level_tolerance = doc.contains("level_tolerance")
                           ? number_field(doc, "level_tolerance", "document")
                           : kDefaultLevelTolerance;
  if (!doc.contains("minima") || !doc.at("minima").is_array())
    throw InputError("schema", "field 'minima' must be an array");
  if (doc.contains("saddles") && !doc.at("saddles").is_array())
    throw InputError("schema", "field 'saddles' must be an array");

  for (const auto& m : doc.at("minima")) {
    if (!m.is_object()) throw InputError("schema", "minimum entries must be objects");
    CriticalPoint p;
    p.id = id_field(m, "minimum");
    p.kind = PointKind::minimum;
    p.value = number_field(m, "phi", p.id);
    p.det_hess = number_field(m, "det_hess", p.id);
    if (m.contains("x")) p.x = number_field(m, "x", p.id);
    cs.minima.push_back(p);
  }
  std::set<std::string> seen;
  for (const auto& m : cs.minima)
    if (!seen.insert(m.id).second) throw InputError("duplicate-id", "duplicate id '" + m.id + "'");

  if (doc.contains("saddles")) {
    for (const auto& s : doc.at("saddles")) {
      if (!s.is_object()) throw InputError("schema", "saddle entries must be objects");
      CriticalPoint p;
      p.id = id_field(s, "saddle");
      p.kind = PointKind::saddle;
      p.value = number_field(s, "phi", p.id);
      p.neg_eig = number_field(s, "neg_eig", p.id);
      p.det_hess = number_field(s, "det_hess", p.id);
      if (s.contains("x")) p.x = number_field(s, "x", p.id);
      if (!s.contains("joins") || !s.at("joins").is_array() || s.at("joins").size() != 2 ||
          !s.at("joins")[0].is_string() || !s.at("joins")[1].is_string())
        throw InputError("schema", "saddle " + p.id + " needs 'joins': [id, id]");
      std::array<int, 2> ends{};
      for (int t = 0; t < 2; ++t) {
        const auto ref = s.at("joins")[t].get<std::string>();
        ends[t] = cs.minimum_index(ref);
        if (ends[t] < 0)
          throw InputError("unknown-minimum", "saddle " + p.id + " joins unknown minimum '" + ref + "'");
      }
      cs.saddles.push_back(p);
      cs.joins.push_back(ends);
    }
  }
  validate_structure(cs);
  return cs;
}

CriticalStructure load_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_structure(ss.str());
}

std::string dump_structure(const CriticalStructure& cs) {
  json doc;
  doc["level_tolerance"] = cs.level_tolerance;
  doc["minima"] = json::array();
  for (const auto& m : cs.minima) {
    json e = {{"id", m.id}, {"phi", m.value}, {"det_hess", m.det_hess}};
    if (m.x) e["x"] = *m.x;
    doc["minima"].push_back(e);
  }
  doc["saddles"] = json::array();
  for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
    const auto& s = cs.saddles[k];
    json e = {{"id", s.id},
              {"phi", s.value},
              {"neg_eig", s.neg_eig},
              {"det_hess", s.det_hess},
              {"joins", {cs.minima[cs.joins[k][0]].id, cs.minima[cs.joins[k][1]].id}}};
    if (s.x) e["x"] = *s.x;
    doc["saddles"].push_back(e);
  }
  return doc.dump(2);
}

void validate_potential(const SampledPotential& p) {
  if (p.xs.size() != p.phis.size())
    throw InputError("invalid-potential", "x and phi columns differ in length");
  if (p.xs.size() < 5) throw InputError("invalid-potential", "need at least 5 samples");
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    if (!std::isfinite(p.xs[i]) || !std::isfinite(p.phis[i]))
      throw InputError("invalid-potential", "non-finite sample at row " + std::to_string(i));
    if (i > 0 && !(p.xs[i] > p.xs[i - 1]))
      throw InputError("invalid-potential", "x must be strictly increasing");
  }
}

SampledPotential load_potential_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io", "cannot open '" + path + "'");
  SampledPotential p;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw InputError("csv", "row " + std::to_string(row) + ": expected two columns");
    try {
      std::size_t used = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const double x = std::stod(a, &used);
      if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(a);
      const double v = std::stod(b, &used);
      if (b.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(b);
      p.xs.push_back(x);
      p.phis.push_back(v);
    } catch (const std::exception&) {
      if (p.xs.empty() && row == 1) continue;  // header
      throw InputError("csv", "row " + std::to_string(row) + ": not a pair of numbers");
    }
  }
  validate_potential(p);
  return p;
}

double sample_noise(const SampledPotential& p) {
  const auto& f = p.phis;
  if (f.size() < 5) return 0.0;
  std::vector<double> d4;
  d4.reserve(f.size() - 4);
  for (std::size_t i = 0; i + 4 < f.size(); ++i)
    d4.push_back(std::abs(f[i] - 4 * f[i + 1] + 6 * f[i + 2] - 4 * f[i + 3] + f[i + 4]));
  auto mid = d4.begin() + static_cast<std::ptrdiff_t>(d4.size() / 2);
  std::nth_element(d4.begin(), mid, d4.end());
  return 1.4826 * (*mid) / std::sqrt(70.0);
}

namespace {

struct Run {
  std::size_t first, last;  // inclusive sample range of equal values
};

// Second derivative at sample i: five-point stencil on locally uniform spacing,
// otherwise the three-point nonuniform formula.
double second_derivative(const SampledPotential& p, std::size_t i) {
  const auto& x = p.xs;
  const auto& f = p.phis;
  const std::size_t n = x.size();
  if (i >= 2 && i + 2 < n) {
    const double h = x[i + 1] - x[i];
    bool uniform = true;
    for (std::size_t k = i - 2; k < i + 2; ++k)
      uniform = uniform && std::abs((x[k + 1] - x[k]) - h) <= 1e-6 * h;
    if (uniform)
      return (-f[i - 2] + 16 * f[i - 1] - 30 * f[i] + 16 * f[i + 1] - f[i + 2]) / (12 * h * h);
  }
  const double hl = x[i] - x[i - 1], hr = x[i + 1] - x[i];
  return 2.0 * ((f[i + 1] - f[i]) / hr - (f[i] - f[i - 1]) / hl) / (hl + hr);
}

// Vertex of the parabola through samples i-1, i, i+1.
std::pair<double, double> parabola_vertex(const SampledPotential& p, std::size_t i) {
  const double x0 = p.xs[i - 1], x1 = p.xs[i], x2 = p.xs[i + 1];
  const double f0 = p.phis[i - 1], f1 = p.phis[i], f2 = p.phis[i + 1];
  const double d01 = (f1 - f0) / (x1 - x0), d12 = (f2 - f1) / (x2 - x1);
  const double a = (d12 - d01) / (x2 - x0);
  if (a == 0.0) return {x1, f1};
  const double xv = std::clamp(0.5 * (x0 + x1) - d01 / (2 * a), x0, x2);
  return {xv, f0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1)};
}

}  // namespace

CriticalStructure extract_critical_structure(const SampledPotential& p,
                                             std::optional<double> eps_level) {
  validate_potential(p);
  if (eps_level && !(*eps_level >= 0.0))
    throw InputError("invalid-argument", "eps_level must be nonnegative");

  std::vector<Run> runs;
  for (std::size_t i = 0; i < p.phis.size(); ++i) {
    if (!runs.empty() && p.phis[i] == p.phis[runs.back().last])
      runs.back().last = i;
    else
      runs.push_back({i, i});
  }
  if (runs.size() < 2) throw InputError("degenerate-landscape", "potential is constant");

  const auto val = [&](const Run& r) { return p.phis[r.first]; };
  if (val(runs[0]) < val(runs[1]) || val(runs.back()) < val(runs[runs.size() - 2]))
    throw InputError("non-confining", "potential decreases towards the sample boundary");
  if (!p.boundary_growth)
    throw InputError("non-confining", "boundary maximum without the confining-growth flag");

  CriticalStructure cs;
  for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
    const double v = val(runs[r]), lo = val(runs[r - 1]), hi = val(runs[r + 1]);
    const bool is_min = v < lo && v < hi;
    const bool is_max = v > lo && v > hi;
    if (!is_min && !is_max) continue;
    const std::size_t len = runs[r].last - runs[r].first + 1;
    if (len >= 3)
      throw InputError("degenerate-landscape",
                       "plateau of " + std::to_string(len) + " equal samples at an extremum near x=" +
                           std::to_string(p.xs[runs[r].first]));
    const std::size_t i = runs[r].first;
    const double d2 = second_derivative(p, i);
    if (d2 == 0.0 || (is_min && d2 < 0.0) || (is_max && d2 > 0.0))
      throw InputError("degenerate-landscape",
                       "non-Morse extremum near x=" + std::to_string(p.xs[i]));
    CriticalPoint c;
    c.kind = is_min ? PointKind::minimum : PointKind::saddle;
    const auto [xv, fv] = parabola_vertex(p, i);
    c.x = len == 2 ? 0.5 * (p.xs[i] + p.xs[i + 1]) : xv;
    c.value = len == 2 ? v : fv;
    c.det_hess = std::abs(d2);
    if (!is_min) c.neg_eig = std::abs(d2);
    (is_min ? cs.minima : cs.saddles).push_back(c);
  }
  if (cs.minima.size() != cs.saddles.size() + 1)
    throw InputError("invalid-structure", "extrema do not alternate minimum/saddle");

  const auto label = [](char prefix, std::size_t k, std::size_t total) {
    const int width = std::max<int>(2, static_cast<int>(std::to_string(total).size()));
    std::string digits = std::to_string(k + 1);
    return std::string(1, prefix) + std::string(width - digits.size(), '0') + digits;
  };
  for (std::size_t k = 0; k < cs.minima.size(); ++k) cs.minima[k].id = label('m', k, cs.minima.size());
  for (std::size_t k = 0; k < cs.saddles.size(); ++k) {
    cs.saddles[k].id = label('s', k, cs.saddles.size());
    cs.joins.push_back({static_cast<int>(k), static_cast<int>(k + 1)});
  }

  const auto [lo, hi] = std::minmax_element(p.phis.begin(), p.phis.end());
  const double floor = 1e-9 * std::max(1.0, *hi - *lo);
  cs.level_tolerance = eps_level ? *eps_level : std::max(10.0 * sample_noise(p), floor);
  validate_structure(cs);
  return cs;
}

CriticalStructure shifted(const CriticalStructure& cs, double c) {
  CriticalStructure out = cs;
  for (auto& m : out.minima) m.value += c;
  for (auto& s : out.saddles) s.value += c;
  return out;
}

}  // namespace metastab
