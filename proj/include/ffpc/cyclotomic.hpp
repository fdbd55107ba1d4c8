#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ffpc {

using BigInt = mpz_class;

/// Integer power b^e as a big integer.
BigInt big_pow(std::uint64_t b, std::uint64_t e);

/// Decimal string of a big integer.
std::string to_decimal(const BigInt& x);

/**
 * Element of Z[omega_m], omega_m = exp(2 pi i / m).
 *
 * Stored as integer coordinates in the power basis 1, w, ..., w^{phi(m)-1}
 * modulo the m-th cyclotomic polynomial, so equality is coefficientwise.
 * Binary operations on different orders embed both sides into the lcm.
 */
class CyclotomicInt {
public:
    /// Zero of order 1 (i.e. the integer 0).
    CyclotomicInt();
    /// The integer n in Z[omega_m].
    CyclotomicInt(std::uint32_t order, const BigInt& n);
    CyclotomicInt(std::uint32_t order, long n) : CyclotomicInt(order, BigInt(n)) {}

    /// omega_m^k.
    static CyclotomicInt root_of_unity(std::uint32_t order, std::int64_t k);
    /// sum_k counts[k] * omega_m^k, counts indexed 0..m-1.
    static CyclotomicInt from_exponent_counts(std::uint32_t order, const std::vector<std::int64_t>& counts);
    /// sum_k coeffs[k] * omega_m^k for arbitrary k (reduced).
    static CyclotomicInt from_power_coefficients(std::uint32_t order, const std::vector<BigInt>& coeffs);
    /// Coordinates given directly in the reduced basis (length phi(m)).
    static CyclotomicInt from_coordinates(std::uint32_t order, std::vector<BigInt> coords);

    std::uint32_t order() const { return order_; }
    const std::vector<BigInt>& coords() const { return coords_; }

    bool is_zero() const;
    /// True when the value lies in Z (all non-constant coordinates vanish).
    bool is_rational_integer() const;
    /// Constant coordinate; meaningful when is_rational_integer().
    const BigInt& constant() const { return coords_[0]; }

    /// Same value as an element of Z[omega_M]; requires order() | M.
    CyclotomicInt embed(std::uint32_t M) const;

    /// sigma_lambda: omega_m -> omega_m^lambda; requires gcd(lambda, m) = 1.
    CyclotomicInt galois(std::int64_t lambda) const;
    /// Complex conjugate (sigma_{-1}).
    CyclotomicInt conj() const { return galois(-1); }

    /// Multiplies by omega_m^k.
    CyclotomicInt times_root(std::int64_t k) const;

    std::complex<double> to_complex() const;

    CyclotomicInt& operator+=(const CyclotomicInt& o);
    CyclotomicInt& operator-=(const CyclotomicInt& o);
    CyclotomicInt& operator*=(const CyclotomicInt& o);
    CyclotomicInt& operator*=(const BigInt& n);

    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
    friend CyclotomicInt operator*(CyclotomicInt a, const CyclotomicInt& b) { return a *= b; }
    friend CyclotomicInt operator*(CyclotomicInt a, const BigInt& n) { return a *= n; }
    friend CyclotomicInt operator*(const BigInt& n, CyclotomicInt a) { return a *= n; }
    CyclotomicInt operator-() const;

    /// Compares values, embedding into a common order first.
    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);
    friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

    /// "2 + 1*w^1" style text (order not included).
    std::string to_string() const;

private:
    std::uint32_t order_;
    std::vector<BigInt> coords_;
};

/// Euler phi.
std::uint32_t euler_phi(std::uint32_t m);

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(std::uint32_t m);

/// Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}.
int legendre(std::int64_t a, std::uint32_t p);

/// Quadratic Gauss sum sum_a (a/p) omega_p^a in Z[omega_p]; throws for p = 2.
CyclotomicInt gauss_sum(std::uint32_t p);

}  // namespace ffpc
