#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffpc/characters.hpp"
#include "ffpc/cyclotomic.hpp"

namespace ffpc {

/// Relative tolerance of the numeric Riemann Hypothesis check.
inline constexpr double kRhTolerance = 1e-9;

/**
 * L(u, chi) = sum over monic f of chi(f) u^{deg f} = 1 + c_1 u + ... + c_d u^d.
 *
 * For the trivial character the series is 1/(1 - qu); that case is flagged by
 * `trivial` and carries no coefficients beyond c_0 = 1.
 */
struct LPolynomial {
    FieldPtr field;
    std::size_t level = 0;
    bool trivial = false;
    std::vector<CyclotomicInt> coeffs;  // c_0 = 1, ..., c_d with c_d != 0

    std::size_t degree() const { return coeffs.size() - 1; }
    const CyclotomicInt& coeff(std::size_t j) const { return coeffs.at(j); }
    /// "1/(1-qu)" for the trivial character, else "1 + (c_1)*u + ...".
    std::string to_string() const;
};

/// Exact L-polynomial: c_d sums chi over the q^d classes (a_1..a_d, 0, ..., 0)
/// for d < ell; every longer degree covers each class equally and vanishes.
LPolynomial l_polynomial(const Character& chi);

/// s_0..s_N with s_n the n-th power sum of the inverse roots (s_0 = degree),
/// from Newton's identities. Throws for the trivial marker.
std::vector<CyclotomicInt> power_sums(const LPolynomial& L, std::size_t N);

/// Numeric inverse roots gamma_i (roots of z^d + c_1 z^{d-1} + ... + c_d).
std::vector<std::complex<double>> inverse_roots(const LPolynomial& L);

/// max_i ||gamma_i| - sqrt(q)| / sqrt(q); 0 for degree 0.
double rh_deviation(const LPolynomial& L);
/// Every inverse root has absolute value sqrt(q) up to the relative tolerance.
bool check_rh_numeric(const LPolynomial& L, double tolerance = kRhTolerance);

/// s_{N+j} = q^{N/2} s_j for j = 1..d, i.e. every gamma_i / sqrt(q) is an N-th
/// root of unity. N must be even; vacuously true in degree 0.
bool unity_order_dividing(const LPolynomial& L, std::uint64_t N);
/// Smallest even N <= maxN passing unity_order_dividing.
std::optional<std::uint64_t> minimal_unity_order(const LPolynomial& L, std::uint64_t maxN);
/// max_i |(gamma_i / sqrt(q))^N - 1|, the floating-point counterpart.
double numeric_unity_deviation(const LPolynomial& L, std::uint64_t N);

/// Outcome of the alpha^2 / beta identities for a primitive chi mod R_3, p = 2.
struct FomenkoCheck {
    Elem lambda = 0, mu = 0;
    int cubic_roots = 0;  // #{c : mu c^3 + lambda c^2 + 1 = 0}
    bool alpha_ok = false, beta_ok = false;
    bool ok() const { return alpha_ok && beta_ok; }
};

/// c_2 = q chi(lambda/mu, 0, 0) and
/// c_1^2 = q (chi(lambda/mu, 0, 0) + sum_{mu c^3 + lambda c^2 + 1 = 0} chi(c, 0, 0)).
FomenkoCheck verify_fomenko(const Character& chi);

/// Cubic normal form data for a primitive chi mod R_3 with p >= 5.
struct CubicNormalForm {
    Elem a = 0, b = 0;
    std::uint32_t c = 0;  // exponent of omega_p
    bool ok = false;
};

/// a = lambda_3/3, b = lambda_1 - lambda_2^2/(4 lambda_3),
/// c = Tr(lambda_1 lambda_2/(2 lambda_3) - lambda_2^3/(12 lambda_3^2)); checks
/// c_1 = omega_p^c sum_x chi_q(a x^3 + b x) and c_2 = q omega_p^{2c} exactly.
CubicNormalForm verify_cubic_normal_form(const Character& chi);

}  // namespace ffpc
