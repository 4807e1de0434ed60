#pragma once

#include <functional>
#include <span>
#include <vector>

// Double-precision polynomial helpers. Coefficients are lowest degree first.
namespace wigmaj::real_poly {

double horner(std::span<const double> coeffs, double x);
std::vector<double> derivative(std::span<const double> coeffs);
// q(y) = p(y + shift)
std::vector<double> taylor_shift(std::span<const double> coeffs, double shift);
// Drops trailing coefficients with |c| <= eps * max|c|.
std::vector<double> trimmed(std::vector<double> coeffs, double eps = 0.0);
std::vector<double> multiply(std::span<const double> a, std::span<const double> b);
// Cauchy upper bound on the modulus of the roots.
double root_bound(std::span<const double> coeffs);

// Sign-changing roots of p in [lo, hi], ascending. Finds the monotone pieces
// through the roots of p' recursively and brackets each piece.
std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi);

// Root of a continuous function with f(lo), f(hi) of opposite sign.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      double f_lo, double f_hi);

}  // namespace wigmaj::real_poly
