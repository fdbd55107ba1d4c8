#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ffpc {

/// Element of F_q stored as its integer encoding a_0 + a_1 p + ... + a_{r-1} p^{r-1},
/// where (a_i) are the coordinates in the polynomial basis 1, alpha, ..., alpha^{r-1}.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Largest supported field size.
inline constexpr std::uint32_t kMaxFieldSize = 1u << 16;

/**
 * F_{p^r} = F_p[alpha]/(modulus) in the polynomial basis.
 *
 * Immutable after construction. Multiplication goes through discrete log tables
 * built from a primitive element; addition uses a table for small q and
 * digit-wise arithmetic otherwise.
 */
class Field {
public:
    /// Builds F_{p^r}. Without a modulus the lexicographically smallest monic
    /// irreducible of degree r is used (coefficients compared constant term first).
    /// Throws std::invalid_argument on a non-prime p, a bad degree, a reducible
    /// modulus or q > kMaxFieldSize.
    static FieldPtr make(std::uint32_t p, std::uint32_t r,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    /// Parses "p^r", a bare prime power "q", or "p^r:m", m being the integer encoding sum c_i p^i of the
    /// full monic modulus (leading term included), e.g. "2^2:7" for T^2+T+1.
    static FieldPtr parse(std::string_view spec);

    std::uint32_t p() const { return p_; }
    std::uint32_t r() const { return r_; }
    std::uint32_t q() const { return q_; }

    /// Modulus coefficients, constant term first, length r+1, last entry 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    std::uint64_t modulus_code() const;

    /// "p^r:m", always with the modulus.
    std::string spec() const;
    /// "p^r" only.
    std::string short_spec() const;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    /// Image of an integer under Z -> F_p -> F_q.
    Elem from_int(std::int64_t n) const;
    /// a * n for an integer n.
    Elem scale(Elem a, std::int64_t n) const { return mul(a, from_int(n)); }

    /// a^p.
    Elem frobenius(Elem a) const { return pow(a, p_); }

    /// Tr_{F_q/F_p}(a) as a residue in [0, p).
    std::uint32_t trace(Elem a) const { return trace_[a]; }

    /// k such that chi_q(a) = omega_p^k, with chi_q the canonical additive character.
    std::uint32_t additive_character_exponent(Elem a) const { return trace(a); }

    /// The i-th coordinate of a in the polynomial basis.
    std::uint32_t digit(Elem a, std::uint32_t i) const;
    /// Encoding of alpha^i for i < r (the F_p-basis of F_q).
    Elem basis(std::uint32_t i) const;

    Elem primitive_element() const { return generator_; }

    bool valid(Elem a) const { return a < q_; }

private:
    Field() = default;
    void build_tables();

    std::uint32_t p_ = 0, r_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    Elem generator_ = 0;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;       // length 2(q-1) so log sums need no reduction
    std::vector<Elem> neg_;
    std::vector<std::uint16_t> add_table_;  // q*q entries when q is small
    std::vector<std::uint8_t> trace_;
};

/// Value wrapper pairing an encoding with its field, for readable call sites and tests.
class FieldElement {
public:
    FieldElement(FieldPtr field, Elem value);

    const FieldPtr& field() const { return field_; }
    Elem value() const { return value_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;
    std::uint32_t trace() const { return field_->trace(value_); }

    bool operator==(const FieldElement& o) const {
        return field_ == o.field_ && value_ == o.value_;
    }

private:
    FieldPtr field_;
    Elem value_;
};

bool is_prime(std::uint64_t n);

/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Moebius function.
int moebius(std::uint64_t n);

/// Divisors in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Checks irreducibility of a monic polynomial over F_p (coefficients constant term
/// first) by gcd with x^{p^k} - x for k <= deg/2.
bool is_irreducible_over_prime_field(const std::vector<std::uint32_t>& poly, std::uint32_t p);

/**
 * F_q viewed as a subfield of F_{q^k}. Both fields share the characteristic; the
 * embedding sends the small field's alpha to a fixed root of its modulus in the big field.
 */
class FieldEmbedding {
public:
    FieldEmbedding(FieldPtr small, FieldPtr big);

    const FieldPtr& small() const { return small_; }
    const FieldPtr& big() const { return big_; }
    /// [big : small].
    std::uint32_t degree() const { return degree_; }

    Elem to_big(Elem a) const { return to_big_[a]; }
    /// Throws std::domain_error if b is outside the subfield.
    Elem to_small(Elem b) const;
    bool in_subfield(Elem b) const { return from_big_[b] >= 0; }

    /// sigma(b) = b^q with q = |small|.
    Elem frobenius(Elem b) const { return big_->pow(b, small_->q()); }

private:
    FieldPtr small_, big_;
    std::uint32_t degree_;
    std::vector<Elem> to_big_;
    std::vector<std::int32_t> from_big_;
};

}  // namespace ffpc
