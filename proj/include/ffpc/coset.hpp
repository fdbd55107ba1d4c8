#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ffpc/cyclotomic.hpp"
#include "ffpc/field.hpp"
#include "ffpc/poly.hpp"

namespace ffpc {

/// Class (a_1, ..., a_ell) of M_q / R_ell: the first ell next-to-leading coefficients.
struct CosetClass {
    FieldPtr field;
    std::vector<Elem> a;

    std::size_t level() const { return a.size(); }
    bool is_identity() const;
    /// "1,0,1" (integer encodings); empty string at level 0.
    std::string to_string() const;
    /// Inverse of to_string; the level is the number of entries.
    static CosetClass parse(const FieldPtr& field, std::string_view text);
    static CosetClass identity(const FieldPtr& field, std::size_t level);

    bool operator==(const CosetClass& o) const { return field == o.field && a == o.a; }
    bool operator<(const CosetClass& o) const { return a < o.a; }
};

/// Class of f at level ell, zero padded past deg f.
CosetClass coset_of(const MonicPoly& f, std::size_t ell);

/// Truncated product of 1 + a_1 u + ... and 1 + b_1 u + ..., u = 1/T.
CosetClass group_mul(const CosetClass& A, const CosetClass& B);
/// Square-and-multiply; negative k goes through the inverse.
CosetClass group_pow(const CosetClass& A, std::int64_t k);
CosetClass group_inverse(const CosetClass& A);

/// p^t with t minimal such that p^t >= ell + 1 (1 at level 0).
std::uint64_t group_exponent(std::uint32_t p, std::size_t ell);

/// Coefficients of u^1..u^ell in log(1 + a_1 u + ... + a_ell u^ell); needs p > ell.
std::vector<Elem> truncated_log(const CosetClass& A);
/// Inverse of truncated_log; needs p > ell.
CosetClass truncated_exp(const FieldPtr& field, const std::vector<Elem>& v);

/// binom(x, s) mod p for the p-integral rational x = num/den, from the base-p
/// digits of x mod p^e (e minimal with p^e > s) and Lucas' theorem.
std::uint32_t binom_padic(const BigInt& num, const BigInt& den, std::uint64_t s, std::uint32_t p);

/// num/den mod p after cancelling common factors; throws std::domain_error if
/// the reduced denominator is divisible by p.
std::uint32_t rational_mod_p(BigInt num, BigInt den, std::uint32_t p);

/// Coefficients of u^1..u^m in (1 + a_1 u + ... + a_m u^m)^{num/den}, summed over
/// partitions sum i c_i = j with p-adic binomials and multinomials.
std::vector<Elem> series_power(const Field& F, const std::vector<Elem>& a, const BigInt& num, const BigInt& den);

/// {B : B^d = A}: either empty, or b_1..b_j fixed with the remaining ell - j coordinates free.
struct PowerRoots {
    bool empty = true;
    std::vector<Elem> fixed;
    std::size_t free = 0;

    std::uint64_t size(std::uint32_t q) const;
    /// All solutions, free coordinates in lexicographic order.
    std::vector<CosetClass> enumerate(const FieldPtr& field) const;
};

/// Roots of B^d = A: with d = d'k (d' the p-part) the coordinates b_1..b_{floor(ell/d')}
/// are determined by a_{d'}, a_{2d'}, ... through the binomial series for exponent 1/k.
PowerRoots solve_power(const CosetClass& A, std::uint64_t d);

}  // namespace ffpc
