#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wigmaj {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Univariate polynomial with exact rational coefficients, lowest degree first.
// Trailing zero coefficients are trimmed, so the leading coefficient is
// nonzero unless the polynomial is zero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(std::size_t degree, const Rational& c = 1);
  // Exact conversion: every finite double is a dyadic rational.
  static Polynomial from_doubles(const std::vector<double>& coefficients);

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t k) const;
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  // Horner in double precision on the rounded coefficients.
  double operator()(double x) const;
  std::vector<double> to_doubles() const;

  Polynomial derivative() const;
  // p(x) -> p(a * x)
  Polynomial rescaled(const Rational& a) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Euclidean division over the rationals; divisor must be nonzero.
  static void divide(const Polynomial& num, const Polynomial& den, Polynomial& quotient,
                     Polynomial& remainder);
  static Polynomial gcd(Polynomial a, Polynomial b);  // monic, or zero

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

int sign(const Rational& r);

// Number of distinct real roots in (0, +inf) of a squarefree polynomial that
// does not vanish at 0, via a Sturm sequence.
std::size_t count_positive_roots(const Polynomial& squarefree);

// Factors p = prod_i q_i^i (Yun). Entry i-1 holds q_i; entries may be constant 1.
std::vector<Polynomial> squarefree_decomposition(const Polynomial& p);

}  // namespace wigmaj
