#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffpc/cyclotomic.hpp"
#include "ffpc/field.hpp"

namespace ffpc {

/// Dense polynomial over F_q, constant term first, no trailing zeros (empty = 0).
using Poly = std::vector<Elem>;

Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b);
Poly poly_mod(const Field& F, const Poly& a, const Poly& b);
/// Monic gcd (empty when both inputs are zero).
Poly poly_gcd(const Field& F, Poly a, Poly b);
Poly poly_derivative(const Field& F, const Poly& a);
Poly poly_pow(const Field& F, const Poly& a, std::uint64_t e);
Poly poly_powmod(const Field& F, const Poly& a, std::uint64_t e, const Poly& m);

/**
 * Monic polynomial T^n + a_1 T^{n-1} + ... + a_n over F_q, stored as (a_1, ..., a_n).
 * The j-th next-to-leading coefficient reads as 0 for j > n.
 */
class MonicPoly {
public:
    MonicPoly(FieldPtr field, std::vector<Elem> coeffs);
    static MonicPoly one(FieldPtr field) { return MonicPoly(std::move(field), {}); }
    /// From a dense monic polynomial; throws if the leading coefficient is not 1.
    static MonicPoly from_dense(FieldPtr field, const Poly& dense);

    const FieldPtr& field() const { return field_; }
    std::size_t degree() const { return coeffs_.size(); }
    const std::vector<Elem>& coeffs() const { return coeffs_; }
    Elem next_to_leading(std::size_t j) const { return j >= 1 && j <= coeffs_.size() ? coeffs_[j - 1] : 0; }

    Poly dense() const;
    /// "T^3+T+1"; coefficients other than 1 print as integer encodings ("2*T^2").
    std::string to_string() const;

    MonicPoly operator*(const MonicPoly& o) const;
    bool operator==(const MonicPoly& o) const { return field_ == o.field_ && coeffs_ == o.coeffs_; }

private:
    FieldPtr field_;
    std::vector<Elem> coeffs_;
};

/// Number of monic degree-n polynomials whose first ell next-to-leading
/// coefficients equal prefix (prefix.size() = ell).
std::uint64_t monic_count(const Field& F, std::size_t n, std::span<const Elem> prefix = {});

/// Calls fn on every monic polynomial of degree n whose leading next-to-leading
/// coefficients match prefix. Free coefficients run lexicographically, a_{ell+1}
/// slowest, a_n fastest, each by integer encoding. For n < ell the stream holds
/// the single polynomial (prefix_1..prefix_n) when the remaining prefix entries
/// vanish and is empty otherwise.
void enumerate_monic(const FieldPtr& field, std::size_t n, std::span<const Elem> prefix,
                     const std::function<void(const MonicPoly&)>& fn);

/// Rabin's test: f | x^{q^n} - x and gcd(f, x^{q^{n/s}} - x) = 1 for primes s | n.
/// Throws std::invalid_argument for constants.
bool is_irreducible(const MonicPoly& f);

/// deg P when f = P^k with P irreducible, 0 otherwise. Throws for constants.
std::uint32_t von_mangoldt(const MonicPoly& f);

/// q^n > limit triggers a BudgetExceeded unless force is set.
struct BruteBudget {
    std::uint64_t limit = std::uint64_t(1) << 26;
    bool force = false;

    /// Default budget, overridden by the FFPC_BUDGET environment variable.
    static BruteBudget from_env();
    void check(std::uint32_t q, std::size_t n) const;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Exact brute-force counts for all monic polynomials of degree n, bucketed by
 * class at every level ell <= max_level. Class index of (a_1, ..., a_ell) is
 * sum_i enc(a_i) q^{i-1}; level-ell tables have q^ell entries.
 */
struct BruteTable {
    FieldPtr field;
    std::size_t n = 0;
    std::size_t max_level = 0;
    std::vector<std::vector<std::uint64_t>> psi;  // psi[ell][class]
    std::vector<std::vector<std::uint64_t>> pi;   // pi[ell][class]
};

/// Builds the table by enumerating irreducibles P of degree d | n and charging
/// deg P to the class of P^{n/d}. Sharded over worker threads.
BruteTable brute_table(const FieldPtr& field, std::size_t n, std::size_t max_level,
                       const BruteBudget& budget = BruteBudget::from_env());

/// Index of a tuple of next-to-leading coefficients.
std::uint64_t class_index(const Field& F, std::span<const Elem> t);

/// sum of Lambda(f) over monic f of degree n in the class t (t.size() = level).
std::uint64_t brute_psi(const FieldPtr& field, std::size_t n, std::span<const Elem> t,
                        const BruteBudget& budget = BruteBudget::from_env());
/// Number of irreducible f of degree n in the class t.
std::uint64_t brute_pi(const FieldPtr& field, std::size_t n, std::span<const Elem> t,
                       const BruteBudget& budget = BruteBudget::from_env());

/// (1/n) sum_{d | n} mu(d) q^{n/d}.
BigInt gauss_count(std::uint32_t q, std::uint64_t n);

/// Coefficientwise sigma^i with sigma(b) = b^{|small|}, for A over the big field.
MonicPoly frobenius_poly(const FieldEmbedding& emb, const MonicPoly& A, std::int64_t i);

/// N(A) = prod_{i < r} sigma^i(A), returned over the small field.
MonicPoly norm_poly(const FieldEmbedding& emb, const MonicPoly& A);

}  // namespace ffpc
