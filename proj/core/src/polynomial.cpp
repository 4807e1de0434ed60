#include "wigmaj/polynomial.hpp"

#include <stdexcept>
#include <utility>

#include "wigmaj/errors.hpp"

namespace wigmaj {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(std::size_t degree, const Rational& c) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_doubles(const std::vector<double>& coefficients) {
  std::vector<Rational> v;
  v.reserve(coefficients.size());
  for (double c : coefficients) v.emplace_back(c);
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

const Rational& Polynomial::leading() const {
  static const Rational zero(0);
  return coeffs_.empty() ? zero : coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + static_cast<double>(*it);
  return acc;
}

std::vector<double> Polynomial::to_doubles() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(static_cast<double>(c));
  return out;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::rescaled(const Rational& a) const {
  std::vector<Rational> out(coeffs_.size());
  Rational power(1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out[k] = coeffs_[k] * power;
    power *= a;
  }
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

void Polynomial::divide(const Polynomial& num, const Polynomial& den, Polynomial& quotient,
                        Polynomial& remainder) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = num.coeffs_;
  const std::size_t dd = den.degree();
  if (rem.size() < den.coeffs_.size()) {
    quotient = {};
    remainder = num;
    return;
  }
  std::vector<Rational> quot(rem.size() - dd);
  const Rational& lead = den.leading();
  for (std::size_t k = rem.size(); k-- > dd;) {
    const Rational factor = rem[k] / lead;
    quot[k - dd] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= factor * den.coeffs_[j];
  }
  rem.resize(dd);
  quotient = Polynomial(std::move(quot));
  remainder = Polynomial(std::move(rem));
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial q, r;
    divide(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const Rational lead = a.leading();
  return a * (Rational(1) / lead);
}

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

namespace {

std::size_t variations(const std::vector<int>& signs) {
  std::size_t count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

std::size_t count_positive_roots(const Polynomial& squarefree) {
  if (squarefree.degree() == 0) return 0;
  if (squarefree(Rational(0)) == 0)
    throw ContractError("count_positive_roots: polynomial vanishes at the origin");
  std::vector<Polynomial> chain{squarefree, squarefree.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial q, r;
    Polynomial::divide(chain[chain.size() - 2], chain.back(), q, r);
    if (r.is_zero()) break;
    chain.push_back(r * Rational(-1));
  }
  std::vector<int> at_zero, at_inf;
  for (const auto& p : chain) {
    at_zero.push_back(sign(p.coefficient(0)));
    at_inf.push_back(sign(p.leading()));
  }
  return variations(at_zero) - variations(at_inf);
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& p) {
  std::vector<Polynomial> factors;
  if (p.degree() == 0) return factors;
  const Polynomial dp = p.derivative();
  const Polynomial a0 = Polynomial::gcd(p, dp);
  Polynomial b, c, rem;
  Polynomial::divide(p, a0, b, rem);
  Polynomial::divide(dp, a0, c, rem);
  Polynomial d = c - b.derivative();
  while (b.degree() > 0) {
    Polynomial a = Polynomial::gcd(b, d);
    factors.push_back(a);
    Polynomial nb, nc;
    Polynomial::divide(b, a, nb, rem);
    Polynomial::divide(d, a, nc, rem);
    b = std::move(nb);
    d = nc - b.derivative();
  }
  return factors;
}

}  // namespace wigmaj
