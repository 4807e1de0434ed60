#pragma once

#include <span>

#include "wigmaj/polynomial.hpp"

namespace wigmaj {

// Highest polynomial degree / Fock index the library tabulates.
inline constexpr int kDegreeCap = 64;

// Physicists' Hermite polynomial from H_{n+1} = 2x H_n - 2n H_{n-1}.
Polynomial hermite(int n);
// Laguerre polynomial from (n+1) L_{n+1} = (2n+1-u) L_n - n L_{n-1}.
Polynomial laguerre(int n);
BigInt factorial(int n);

// Rounded coefficient tables, built once and shared.
std::span<const double> hermite_coefficients(int n);
std::span<const double> laguerre_coefficients(int n);

// Harmonic-oscillator eigenfunction psi_n(x), hbar = 1.
double fock_wavefunction(int n, double x);
// Wigner function of |n> at squared phase-space radius r2 = x^2 + p^2.
double fock_wigner(int n, double r2);

}  // namespace wigmaj
