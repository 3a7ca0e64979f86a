#include "metastab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <boost/math/interpolators/quintic_hermite.hpp>

#include "metastab/error.hpp"

namespace metastab {

namespace {

ChainPoint mn(std::string id, double v, double c = 1.0) { return {std::move(id), PointKind::minimum, v, c}; }
ChainPoint sd(std::string id, double v, double c = 1.0) { return {std::move(id), PointKind::saddle, v, c}; }

std::string padded(char prefix, int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%02d", prefix, k);
  return buf;
}

void check_chain(const std::vector<ChainPoint>& chain) {
  if (chain.empty() || chain.size() % 2 == 0) throw InputError("chain", "chain must have odd length");
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const PointKind want = k % 2 == 0 ? PointKind::minimum : PointKind::saddle;
    if (chain[k].kind != want) throw InputError("chain", "chain kinds must alternate from a minimum");
    if (!(chain[k].curvature > 0.0)) throw InputError("chain", "curvature must be positive");
    if (k % 2 == 1 && !(chain[k].value > chain[k - 1].value && chain[k].value > chain[k + 1].value))
      throw InputError("chain", "saddle " + chain[k].id + " is not above its neighbours");
  }
}

}  // namespace

CriticalStructure structure_from_chain(const std::vector<ChainPoint>& chain,
                                       const std::vector<double>& positions) {
  check_chain(chain);
  CriticalStructure cs;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const ChainPoint& c = chain[k];
    CriticalPoint p{c.id, c.kind, c.value, c.curvature, 0.0, std::nullopt};
    if (!positions.empty()) p.x = positions.at(k);
    if (c.kind == PointKind::saddle) {
      p.neg_eig = c.curvature;
      cs.saddles.push_back(p);
      const int left = static_cast<int>(k / 2);
      cs.joins.push_back({left, left + 1});
    } else {
      cs.minima.push_back(p);
    }
  }
  validate_structure(cs);
  return cs;
}

ChainRealization realize_chain(const std::vector<ChainPoint>& chain) {
  check_chain(chain);
  const std::size_t n = chain.size();
  std::vector<double> x(n), y(n), dy(n, 0.0), d2y(n);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = chain[k].value;
    d2y[k] = chain[k].kind == PointKind::minimum ? chain[k].curvature : -chain[k].curvature;
    if (k > 0) {
      // Half period of the cosine with matching drop and mean curvature.
      const double drop = std::abs(y[k] - y[k - 1]);
      x[k] = x[k - 1] + std::numbers::pi * std::sqrt(drop / (chain[k].curvature + chain[k - 1].curvature));
    }
  }
  ChainRealization r;
  r.positions = x;
  const double x0 = x.front(), x1 = x.back();
  const double y0 = y.front(), y1 = y.back();
  const double c0 = d2y.front(), c1 = d2y.back();
  const auto wall = [](double v, double c, double t) { return v + 0.5 * c * t * t + t * t * t * t; };

  if (n == 1) {
    r.landscape.phi = [=](double t) { return wall(y0, c0, t - x0); };
  } else {
    auto spline = std::make_shared<boost::math::interpolators::quintic_hermite<std::vector<double>>>(
        std::move(x), std::move(y), std::move(dy), std::move(d2y));
    r.landscape.phi = [=](double t) {
      if (t <= x0) return wall(y0, c0, t - x0);
      if (t >= x1) return wall(y1, c1, t - x1);
      return (*spline)(t);
    };
  }
  r.landscape.a = x0 - 1.5;
  r.landscape.b = x1 + 1.5;
  return r;
}

std::vector<ChainPoint> chain_four_wells() {
  return {mn("m21", 1.0), sd("s1", 2.0), mn("m22", 1.0), sd("s2", 2.0),
          mn("m11", 0.0), sd("s3", 2.0), mn("m23", 0.5)};
}

std::vector<ChainPoint> chain_two_heights(double theta) {
  if (!(theta > 0.0)) throw InputError("domain", "theta must be positive");
  const double t4 = std::pow(theta, 4);
  return {mn("m21", 1.0), sd("s1", 3.0), mn("m22", 1.0), sd("s2", 3.0),
          mn("m23", 1.5), sd("s3", 3.0, t4), mn("m11", 0.0)};
}

std::vector<ChainPoint> chain_nested() {
  const double s2 = 3.0, s3 = 2.0, s4 = 1.0;
  return {mn("m21", 0.0),
          sd("s1", s2),
          mn("m31", 0.8), sd("s2", s3), mn("m41", 0.0), sd("s3", s4), mn("m11", 0.0),
          sd("s4", s3), mn("m32", 0.8),
          sd("s5", s2),
          mn("m22", 1.0),
          sd("s6", s2),
          mn("m33", 0.5), sd("s7", s3), mn("m23", 0.5), sd("s8", s3), mn("m34", 0.9)};
}

std::vector<ChainPoint> chain_mixed_heights() {
  return {mn("m21", 0.0), sd("s1", 1.0), mn("m11", 0.0), sd("s2", 1.0),
          mn("m22", 0.0), sd("s3", 1.0), mn("m23", 0.5)};
}

std::vector<ChainPoint> chain_alternating(int n, double alpha, double beta, double sigma) {
  if (n < 1) throw InputError("domain", "family index must be positive");
  if (!(alpha < beta && beta < sigma)) throw InputError("domain", "need alpha < beta < sigma");
  std::vector<ChainPoint> chain;
  for (int k = 1; k <= 2 * n + 1; ++k) {
    if (k > 1) chain.push_back(sd(padded('s', k - 1), sigma));
    chain.push_back(mn(padded('m', k), k % 2 == 1 ? beta : alpha));
  }
  return chain;
}

CriticalStructure ring(int n) {
  if (n < 3 || n > 9) throw InputError("domain", "ring size must lie in 3..9");
  CriticalStructure cs;
  for (int k = 1; k <= n; ++k) cs.minima.push_back({"m" + std::to_string(k), PointKind::minimum, 0.0, 1.0, 0.0, {}});
  for (int k = 1; k <= n; ++k) {
    cs.saddles.push_back({"s" + std::to_string(k), PointKind::saddle, 1.0, 1.0, 1.0, {}});
    cs.joins.push_back({k - 1, k % n});
  }
  validate_structure(cs);
  return cs;
}

Example symmetric_double_well() {
  Example ex;
  ex.name = "double-well";
  ex.description = "phi(x) = (x^2 - 1)^2, minima at -1 and 1, saddle at 0";
  ex.cs.minima = {{"m01", PointKind::minimum, 0.0, 8.0, 0.0, -1.0},
                  {"m02", PointKind::minimum, 0.0, 8.0, 0.0, 1.0}};
  ex.cs.saddles = {{"s01", PointKind::saddle, 1.0, 4.0, 4.0, 0.0}};
  ex.cs.joins = {{0, 1}};
  validate_structure(ex.cs);
  ex.reference.push_back({"zeta2", {8.0 * std::numbers::sqrt2 / std::numbers::pi},
                          "lambda = (8 sqrt2 / pi) h exp(-2/h)"});
  ex.landscape = Landscape1D{[](double x) { return (x * x - 1.0) * (x * x - 1.0); }, -2.5, 2.5};
  return ex;
}

Example asymmetric_double_well(double eps) {
  if (!(eps > 0.0 && eps < 0.3)) throw InputError("domain", "tilt must lie in (0, 0.3)");
  // Roots of x^3 - x + eps by the trigonometric formula.
  const double r = 2.0 / std::sqrt(3.0);
  const double base = std::acos(-1.5 * eps * std::sqrt(3.0)) / 3.0;
  double root[3];
  for (int k = 0; k < 3; ++k) root[k] = r * std::cos(base - 2.0 * std::numbers::pi * k / 3.0);
  std::sort(root, root + 3);
  const auto f = [eps](double x) { return 0.25 * x * x * x * x - 0.5 * x * x + eps * x; };
  const auto f2 = [](double x) { return std::abs(3.0 * x * x - 1.0); };

  Example ex;
  ex.name = "asym-double-well";
  ex.description = "phi(x) = x^4/4 - x^2/2 + eps x";
  ex.cs.minima = {{"m01", PointKind::minimum, f(root[0]), f2(root[0]), 0.0, root[0]},
                  {"m02", PointKind::minimum, f(root[2]), f2(root[2]), 0.0, root[2]}};
  ex.cs.saddles = {{"s01", PointKind::saddle, f(root[1]), f2(root[1]), f2(root[1]), root[1]}};
  ex.cs.joins = {{0, 1}};
  validate_structure(ex.cs);
  const double b0 = f2(root[1]) / std::numbers::pi * std::sqrt(f2(root[2]) / f2(root[1]));
  ex.reference.push_back({"zeta2", {b0}, "(|mu(s)| / pi) sqrt(det Hess(m) / |det Hess(s)|)"});
  ex.landscape = Landscape1D{f, root[0] - 1.5, root[2] + 1.5};
  return ex;
}

std::vector<std::string> example_names() {
  return {"four-wells", "two-heights", "ring", "nested", "mixed-heights", "double-well", "asym-double-well"};
}

Example make_example(const std::string& name, int n, double theta) {
  const auto from_chain = [&](const std::vector<ChainPoint>& chain, std::string description) {
    ChainRealization r = realize_chain(chain);
    Example ex;
    ex.name = name;
    ex.description = std::move(description);
    ex.cs = structure_from_chain(chain, r.positions);
    ex.landscape = std::move(r.landscape);
    return ex;
  };

  if (name == "four-wells") {
    Example ex = from_chain(chain_four_wells(), "four wells, two saddles sharing one level, unit Hessians");
    ex.reference.push_back({"pi*zeta2 class {m21,m22}", {1.5 - std::sqrt(5.0) / 2, 1.5 + std::sqrt(5.0) / 2}, ""});
    ex.reference.push_back({"pi*zeta2 class {m23}", {1.0}, ""});
    ex.reference.push_back({"class {m11}", {0.0}, "exact zero"});
    return ex;
  }
  if (name == "two-heights") {
    Example ex = from_chain(chain_two_heights(theta), "one class over two barrier heights; theta^4 = |phi''(s3)|");
    const double nu = 1.0 / (1.0 + theta * theta);
    const double tr = 3.0 - nu, disc = std::sqrt(tr * tr - 4.0 * (1.0 - nu));
    ex.reference.push_back({"nu", {nu}, "1 / (1 + theta^2)"});
    ex.reference.push_back({"pi*zeta2 level 1", {1.0 + theta * theta}, ""});
    ex.reference.push_back({"pi*zeta2 level 2", {0.5 * (tr - disc), 0.5 * (tr + disc)}, ""});
    return ex;
  }
  if (name == "ring") {
    Example ex;
    ex.name = name;
    ex.description = "ring of N equal wells joined by N equal saddles";
    ex.cs = ring(n);
    std::vector<double> vals;
    for (int k = 1; k < n; ++k) vals.push_back(2.0 * (1.0 - std::cos(2.0 * std::numbers::pi * k / n)));
    std::sort(vals.begin(), vals.end());
    ex.reference.push_back({"pi*zeta2", vals, "2 (1 - cos(2 pi k / N)), k = 1..N-1"});
    return ex;
  }
  if (name == "nested") {
    Example ex = from_chain(chain_nested(), "eleven wells over three separating levels");
    ex.reference.push_back({"types", {}, "m21 II, m22 I, m23 I, m33 II, m34 I, m41 II; parent of m21, m22, m23 is m11"});
    return ex;
  }
  if (name == "mixed-heights") {
    Example ex = from_chain(chain_mixed_heights(), "class {m21,m22,m23} mixing type II and type I members, p = 2");
    ex.reference.push_back({"types", {}, "m21 II, m22 II, m23 I; p = 2"});
    return ex;
  }
  if (name == "double-well") return symmetric_double_well();
  if (name == "asym-double-well") return asymmetric_double_well(0.1);
  throw InputError("unknown-example", "unknown example '" + name + "'");
}

}  // namespace metastab
