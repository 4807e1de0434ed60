#include "wigmaj/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wigmaj/errors.hpp"
#include "wigmaj/real_poly.hpp"

namespace wigmaj {
namespace {

void check_degree(int n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": negative degree");
  if (n > kDegreeCap)
    throw CapacityError(std::string(what) + ": degree " + std::to_string(n) + " exceeds cap " +
                        std::to_string(kDegreeCap));
}

struct Tables {
  std::vector<Polynomial> hermite;
  std::vector<Polynomial> laguerre;
  std::vector<std::vector<double>> hermite_d;
  std::vector<std::vector<double>> laguerre_d;
  std::vector<double> wave_norm;  // pi^{-1/4} 2^{-n/2} (n!)^{-1/2}
};

const Tables& tables() {
  static const Tables t = [] {
    Tables out;
    const Polynomial x = Polynomial::monomial(1);
    out.hermite.push_back(Polynomial::constant(1));
    out.hermite.push_back(Polynomial::monomial(1, 2));
    out.laguerre.push_back(Polynomial::constant(1));
    out.laguerre.push_back(Polynomial({1, -1}));
    for (int n = 1; n < kDegreeCap; ++n) {
      out.hermite.push_back(Rational(2) * (x * out.hermite[n]) -
                            Rational(2 * n) * out.hermite[n - 1]);
      Polynomial next = Polynomial({Rational(2 * n + 1), Rational(-1)}) * out.laguerre[n] -
                        Rational(n) * out.laguerre[n - 1];
      out.laguerre.push_back(next * Rational(1, n + 1));
    }
    BigInt fact = 1;
    for (int n = 0; n <= kDegreeCap; ++n) {
      if (n > 0) fact *= n;
      out.hermite_d.push_back(out.hermite[n].to_doubles());
      out.laguerre_d.push_back(out.laguerre[n].to_doubles());
      const double nf = static_cast<double>(fact);
      out.wave_norm.push_back(std::pow(std::numbers::pi, -0.25) * std::pow(2.0, -0.5 * n) /
                              std::sqrt(nf));
    }
    return out;
  }();
  return t;
}

}  // namespace

Polynomial hermite(int n) {
  check_degree(n, "hermite");
  return tables().hermite[n];
}

Polynomial laguerre(int n) {
  check_degree(n, "laguerre");
  return tables().laguerre[n];
}

BigInt factorial(int n) {
  check_degree(n, "factorial");
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::span<const double> hermite_coefficients(int n) {
  check_degree(n, "hermite");
  return tables().hermite_d[n];
}

std::span<const double> laguerre_coefficients(int n) {
  check_degree(n, "laguerre");
  return tables().laguerre_d[n];
}

double fock_wavefunction(int n, double x) {
  check_degree(n, "fock_wavefunction");
  const auto& t = tables();
  return t.wave_norm[n] * real_poly::horner(t.hermite_d[n], x) * std::exp(-0.5 * x * x);
}

double fock_wigner(int n, double r2) {
  check_degree(n, "fock_wigner");
  if (r2 < 0.0) throw DomainError("fock_wigner: negative squared radius");
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  return sgn / std::numbers::pi * real_poly::horner(tables().laguerre_d[n], 2.0 * r2) *
         std::exp(-r2);
}

}  // namespace wigmaj
