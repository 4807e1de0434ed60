#include "wigmaj/real_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace wigmaj::real_poly {

double horner(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative(std::span<const double> coeffs) {
  if (coeffs.size() <= 1) return {};
  std::vector<double> d(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = coeffs[k] * static_cast<double>(k);
  return d;
}

std::vector<double> taylor_shift(std::span<const double> coeffs, double shift) {
  std::vector<double> q(coeffs.begin(), coeffs.end());
  if (shift == 0.0) return q;
  // Repeated synthetic division.
  const std::size_t n = q.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k-- > i;) q[k] += shift * q[k + 1];
  return q;
}

std::vector<double> trimmed(std::vector<double> coeffs, double eps) {
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  while (!coeffs.empty() && std::abs(coeffs.back()) <= eps * scale) coeffs.pop_back();
  return coeffs;
}

std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

double root_bound(std::span<const double> coeffs) {
  auto c = trimmed(std::vector<double>(coeffs.begin(), coeffs.end()));
  if (c.size() <= 1) return 0.0;
  const double lead = std::abs(c.back());
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, std::abs(c[k]) / lead);
  return 1.0 + m;
}

double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double f_lo,
                      double f_hi) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) {
    return std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max({1.0, std::abs(a), std::abs(b)});
  };
  auto r = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iters);
  return 0.5 * (r.first + r.second);
}

std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi) {
  auto c = trimmed(std::vector<double>(coeffs.begin(), coeffs.end()));
  std::vector<double> roots;
  if (c.size() <= 1 || !(hi > lo)) return roots;
  if (c.size() == 2) {
    const double r = -c[0] / c[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }
  std::vector<double> cuts{lo};
  for (double r : real_roots(derivative(c), lo, hi))
    if (r > cuts.back()) cuts.push_back(r);
  if (hi > cuts.back()) cuts.push_back(hi);
  auto p = [&c](double x) { return horner(c, x); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const double fa = p(a), fb = p(b);
    if (fa == 0.0) {
      if (roots.empty() || roots.back() != a) roots.push_back(a);
      continue;
    }
    if (fb == 0.0) continue;  // picked up as the left end of the next piece
    if ((fa < 0.0) != (fb < 0.0)) roots.push_back(bracketed_root(p, a, b, fa, fb));
  }
  if (!cuts.empty() && p(cuts.back()) == 0.0 && (roots.empty() || roots.back() != cuts.back()))
    roots.push_back(cuts.back());
  return roots;
}

}  // namespace wigmaj::real_poly
