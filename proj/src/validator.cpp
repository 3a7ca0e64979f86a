#include "metastab/validator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/interpolators/barycentric_rational.hpp>

#include "metastab/error.hpp"

namespace metastab {

namespace {

constexpr double kPivotFloor = 1e-300;

// Eigenvalues of the symmetric tridiagonal (d, e) below x.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = d[i] - x - (i > 0 ? e[i - 1] * e[i - 1] / q : 0.0);
    if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
    count += q < 0.0;
  }
  return count;
}

// Singular values of the bidiagonal below x, via the zero-diagonal
// Golub-Kahan tridiagonal of size 2n + 1 whose spectrum is {±sigma, 0}.
int gk_count(const std::vector<double>& seq, double x) {
  int neg = 0;
  double q = -x;
  neg += q < 0.0;
  for (double e : seq) {
    q = -x - e * e / q;
    if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
    neg += q < 0.0;
  }
  const int n = static_cast<int>(seq.size() / 2);
  return neg - n - 1;
}

// k-th smallest (0-based) root of a monotone count, bracketed in [lo, hi].
// Geometric steps first so tiny values keep their relative accuracy.
template <class Count>
double bisect(const Count& count, int k, double lo, double hi) {
  if (count(lo) > k) return lo;
  for (int it = 0; it < 4000; ++it) {
    const bool geometric = lo > 0.0 && hi / lo > 2.0;
    const double mid = geometric ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (count(mid) > k ? hi : lo) = mid;
    if (!geometric && hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(hi)) break;
  }
  return 0.5 * (lo + hi);
}

double phi_at(const Potential& phi, double x) {
  const double v = phi(x);
  if (!std::isfinite(v)) throw InputError("domain", "potential is not finite on the grid");
  return v;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::fitted ? "fitted" : "central"; }

DiscretizedWitten discretize(const Potential& phi, double a, double b, double h, int n, Scheme scheme) {
  if (!(h > 0.0)) throw InputError("domain", "h must be positive");
  if (n < 100) throw InputError("domain", "grid needs at least 100 nodes");
  if (!(a < b)) throw InputError("domain", "empty interval");

  DiscretizedWitten d;
  d.a = a;
  d.b = b;
  d.h = h;
  d.scheme = scheme;
  d.dx = (b - a) / (n + 1);
  std::vector<double> f(n + 2);
  for (int i = 0; i < n + 2; ++i) f[i] = phi_at(phi, a + i * d.dx);
  d.xs.resize(n);
  for (int i = 0; i < n; ++i) d.xs[i] = a + (i + 1) * d.dx;
  d.diag.resize(n);
  d.offdiag.resize(n - 1);

  if (scheme == Scheme::fitted) {
    // Edge e joins nodes e and e + 1 and carries
    // (h/dx) (exp(delta/2h) u_{e+1} - exp(-delta/2h) u_e), delta = f_{e+1} - f_e.
    const double c = h / d.dx;
    std::vector<double> up(n + 1), lw(n + 1);
    for (int e = 0; e <= n; ++e) {
      const double delta = f[e + 1] - f[e];
      up[e] = c * std::exp(0.5 * delta / h);
      lw[e] = c * std::exp(-0.5 * delta / h);
    }
    d.bidiag.reserve(2 * n);
    for (int j = 0; j < n; ++j) {
      d.bidiag.push_back(up[j]);
      d.bidiag.push_back(lw[j + 1]);
      d.diag[j] = up[j] * up[j] + lw[j + 1] * lw[j + 1];
      if (j + 1 < n) d.offdiag[j] = -lw[j + 1] * up[j + 1];
    }
  } else {
    const double k = h * h / (d.dx * d.dx);
    for (int j = 0; j < n; ++j) {
      const double d1 = (f[j + 2] - f[j]) / (2.0 * d.dx);
      const double d2 = (f[j + 2] - 2.0 * f[j + 1] + f[j]) / (d.dx * d.dx);
      d.diag[j] = 2.0 * k + d1 * d1 - h * d2;
      if (j + 1 < n) d.offdiag[j] = -k;
    }
  }
  return d;
}

Potential interpolate(const SampledPotential& p) {
  validate_potential(p);
  auto xs = p.xs;
  auto ys = p.phis;
  auto br = std::make_shared<boost::math::barycentric_rational<double>>(std::move(xs), std::move(ys), 3);
  return [br](double x) { return (*br)(x); };
}

DiscretizedWitten discretize(const SampledPotential& p, double h, int n, Scheme scheme) {
  return discretize(interpolate(p), p.xs.front(), p.xs.back(), h, n, scheme);
}

std::vector<double> small_eigenvalues(const DiscretizedWitten& d, int k) {
  if (k < 0 || k > d.size()) throw InputError("domain", "more eigenvalues requested than grid nodes");
  std::vector<double> out;
  out.reserve(k);
  if (d.scheme == Scheme::fitted) {
    double scale = 0.0;
    for (double e : d.bidiag) scale = std::max(scale, std::abs(e));
    std::vector<double> seq(d.bidiag);
    for (double& e : seq) e /= scale;
    const auto count = [&](double x) { return gk_count(seq, x); };
    for (int i = 0; i < k; ++i) {
      const double s = bisect(count, i, kPivotFloor, 2.0) * scale;
      out.push_back(s * s);
    }
  } else {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < d.size(); ++i) {
      const double r = (i > 0 ? std::abs(d.offdiag[i - 1]) : 0.0) +
                       (i + 1 < d.size() ? std::abs(d.offdiag[i]) : 0.0);
      lo = std::min(lo, d.diag[i] - r);
      hi = std::max(hi, d.diag[i] + r);
    }
    const auto count = [&](double x) { return sturm_count(d.diag, d.offdiag, x); };
    for (int i = 0; i < k; ++i) out.push_back(bisect(count, i, lo, hi));
  }
  return out;
}

int count_below(const DiscretizedWitten& d, double x) {
  if (d.scheme == Scheme::fitted) {
    if (x <= 0.0) return 0;
    return gk_count(d.bidiag, std::sqrt(x));
  }
  return sturm_count(d.diag, d.offdiag, x);
}

double rayleigh_quotient(const DiscretizedWitten& d, const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != d.size()) throw InputError("domain", "vector size mismatch");
  double num = 0.0, den = 0.0;
  if (d.scheme == Scheme::fitted) {
    // |D u|^2 edge by edge; the tridiagonal product would cancel to roundoff.
    const int n = d.size();
    for (int e = 0; e <= n; ++e) {
      double du = 0.0;
      if (e < n) du += d.bidiag[2 * e] * u[e];
      if (e > 0) du -= d.bidiag[2 * e - 1] * u[e - 1];
      num += du * du;
    }
    for (double v : u) den += v * v;
    return num / den;
  }
  for (int i = 0; i < d.size(); ++i) {
    double au = d.diag[i] * u[i];
    if (i > 0) au += d.offdiag[i - 1] * u[i - 1];
    if (i + 1 < d.size()) au += d.offdiag[i] * u[i + 1];
    num += u[i] * au;
    den += u[i] * u[i];
  }
  return num / den;
}

std::pair<double, double> default_domain(const CriticalStructure& cs) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const auto visit = [&](const CriticalPoint& c) {
    if (!c.x) throw InputError("domain", "critical point " + c.id + " has no position");
    lo = std::min(lo, *c.x);
    hi = std::max(hi, *c.x);
  };
  for (const auto& m : cs.minima) visit(m);
  for (const auto& s : cs.saddles) visit(s);
  return {lo - 1.5, hi + 1.5};
}

int default_grid(double a, double b, double h) {
  return std::max(4000, static_cast<int>(std::ceil(40.0 * (b - a) / std::sqrt(h))));
}

ValidationReport compare(const SpectrumReport& report, const Potential& phi, double a, double b,
                         std::vector<double> h_list, const CompareOptions& opt) {
  if (h_list.empty()) throw InputError("domain", "empty h list");
  for (double h : h_list)
    if (!(h > 0.0)) throw InputError("domain", "h values must be positive");
  std::sort(h_list.begin(), h_list.end(), std::greater<>());

  ValidationReport vr;
  vr.a = a;
  vr.b = b;
  vr.scheme = opt.scheme;
  vr.c_tol = opt.c_tol;
  const int n0 = report.n0;
  const int nonzero = n0 - 1;
  std::vector<double> barriers;

  for (double h : h_list) {
    ValidationPoint pt;
    pt.h = h;
    pt.n = opt.grid > 0 ? opt.grid : default_grid(a, b, h);
    const auto coarse = small_eigenvalues(discretize(phi, a, b, h, pt.n, opt.scheme), n0 + 1);
    const auto fine = small_eigenvalues(discretize(phi, a, b, h, 2 * pt.n, opt.scheme), n0);
    pt.numeric.assign(coarse.begin(), coarse.begin() + n0);
    pt.next_eigenvalue = coarse.back();
    pt.numeric_refined = fine;

    barriers.clear();
    for (const auto& p : report.evaluate(h)) {
      if (p.zero) continue;
      pt.predicted.push_back(p.lambda);
      pt.log_predicted.push_back(p.log_lambda);
      barriers.push_back(p.S);
    }
    for (int i = 0; i < nonzero; ++i) {
      const double num = pt.numeric[i + 1];
      double r;
      if (pt.predicted[i] < 1e-280)
        r = num > 0.0 ? std::exp(std::log(num) - pt.log_predicted[i]) : 0.0;
      else
        r = num / pt.predicted[i];
      pt.ratio.push_back(r);
      const double ref = pt.numeric_refined[i + 1];
      pt.refinement_change.push_back(ref > 0.0 ? std::abs(num - ref) / ref
                                               : std::numeric_limits<double>::infinity());
    }
    vr.points.push_back(std::move(pt));
  }

  bool any_fail = false, any_inconclusive = false;
  for (int i = 0; i < nonzero; ++i) {
    EigenVerdict v;
    v.index = i;
    v.S = barriers[i];
    v.tolerance = opt.c_tol * h_list.back();
    bool coarse = false, decreasing = true;
    for (std::size_t t = 0; t < vr.points.size(); ++t) {
      v.errors.push_back(std::abs(vr.points[t].ratio[i] - 1.0));
      coarse = coarse || !(vr.points[t].refinement_change[i] <= opt.refine_tol);
      if (t > 0 && !(v.errors[t] < v.errors[t - 1])) decreasing = false;
    }
    if (coarse)
      v.verdict = "INCONCLUSIVE";
    else
      v.verdict = decreasing && v.errors.back() <= v.tolerance ? "PASS" : "FAIL";
    any_fail = any_fail || v.verdict == "FAIL";
    any_inconclusive = any_inconclusive || v.verdict == "INCONCLUSIVE";
    vr.verdicts.push_back(std::move(v));
  }
  vr.overall = any_fail ? "FAIL" : any_inconclusive ? "INCONCLUSIVE" : "PASS";
  return vr;
}

ValidationReport compare(const SpectrumReport& report, const SampledPotential& p,
                         const CriticalStructure& cs, std::vector<double> h_list,
                         const CompareOptions& opt) {
  auto [a, b] = default_domain(cs);
  a = std::max(a, p.xs.front());
  b = std::min(b, p.xs.back());
  return compare(report, interpolate(p), a, b, std::move(h_list), opt);
}

}  // namespace metastab
