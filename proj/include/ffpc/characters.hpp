#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ffpc/coset.hpp"
#include "ffpc/cyclotomic.hpp"
#include "ffpc/field.hpp"

namespace ffpc {

/// Default cap on q^ell for materialized groups and character lists.
inline constexpr std::uint64_t kCharacterBudget = std::uint64_t(1) << 16;

class CharacterGroup;
using CharacterGroupPtr = std::shared_ptr<const CharacterGroup>;

/**
 * M_q / R_ell split into cyclic factors <x_1> x ... x <x_g>, with a coordinate
 * table sending every class index to its exponents (k_1, ..., k_g), 0 <= k_i < o_i.
 *
 * The splitting is greedy: x_j has maximal order modulo <x_1, ..., x_{j-1}>
 * (smallest class index among ties), corrected by a product of earlier
 * generators so that its order does not drop in the quotient.
 */
class CharacterGroup {
public:
    static CharacterGroupPtr make(FieldPtr field, std::size_t level, std::uint64_t budget = kCharacterBudget);

    const FieldPtr& field() const { return field_; }
    std::size_t level() const { return level_; }
    std::uint64_t size() const { return size_; }
    /// Group exponent e; character values are powers of omega_e.
    std::uint64_t exponent() const { return exponent_; }

    std::size_t rank() const { return orders_.size(); }
    const std::vector<std::uint64_t>& orders() const { return orders_; }
    const std::vector<std::uint64_t>& generators() const { return generators_; }

    std::uint64_t index_of(const CosetClass& A) const;
    CosetClass element(std::uint64_t index) const;
    /// Exponent of generator i in the class with the given index.
    std::uint32_t coordinate(std::uint64_t index, std::size_t i) const { return coords_[index * rank() + i]; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;

private:
    CharacterGroup() = default;

    FieldPtr field_;
    std::size_t level_ = 0;
    std::uint64_t size_ = 1, exponent_ = 1;
    std::vector<std::uint64_t> orders_, generators_;
    std::vector<std::uint32_t> coords_;
};

/**
 * Character of M_q / R_ell: chi(x_i) = omega_{o_i}^{c_i}. Characters are indexed in
 * mixed radix c_1 + o_1 (c_2 + o_2 (...)), so index 0 is the trivial character.
 */
class Character {
public:
    Character(CharacterGroupPtr group, std::vector<std::uint64_t> c);

    static Character trivial(CharacterGroupPtr group);
    static Character from_index(CharacterGroupPtr group, std::uint64_t index);
    /// Builds the character with the prescribed exponents (mod e) on a set of
    /// classes, spreading values breadth-first over the subgroup they generate.
    /// Throws std::invalid_argument if the classes do not generate the group or
    /// the values are inconsistent.
    static Character from_generator_images(CharacterGroupPtr group,
                                           const std::vector<std::pair<CosetClass, std::uint64_t>>& images);
    /// From a full exponent table (mod e) indexed by class; throws if it is not a character.
    static Character from_table(CharacterGroupPtr group, const std::vector<std::uint32_t>& table);
    /// chi(A) = chi_q(sum_j lambda_j [u^j] log A); needs p > ell.
    static Character from_lambdas(CharacterGroupPtr group, const std::vector<Elem>& lambda);

    const CharacterGroupPtr& group() const { return group_; }
    const std::vector<std::uint64_t>& coefficients() const { return c_; }
    std::uint64_t index() const;
    bool is_trivial() const;
    const std::optional<std::vector<Elem>>& lambda() const { return lambda_; }

    /// k with chi(A) = omega_e^k for the class of the given index.
    std::uint32_t exponent_at(std::uint64_t class_index) const;
    std::uint32_t exponent_at(const CosetClass& A) const { return exponent_at(group_->index_of(A)); }
    CyclotomicInt evaluate(const CosetClass& A) const;

    Character conjugate() const;
    Character operator*(const Character& o) const;
    bool operator==(const Character& o) const { return group_ == o.group_ && c_ == o.c_; }

    /// chi is non-constant on the classes (0, ..., 0, a).
    bool is_primitive() const;
    /// Smallest k such that chi factors through M_q / R_k.
    std::size_t level_of() const;
    /// The same character read on a finer group (level >= ours, same field).
    Character inflate(CharacterGroupPtr finer) const;

private:
    CharacterGroupPtr group_;
    std::vector<std::uint64_t> c_;
    std::optional<std::vector<Elem>> lambda_;
};

/// All q^ell characters in index order; throws BudgetExceeded past the budget.
std::vector<Character> enumerate_characters(const CharacterGroupPtr& group, std::uint64_t budget = kCharacterBudget);

/// chi^{(r)}(A) = chi(N(A)) on the group over the big field of the embedding.
Character lift_character(const Character& chi, const FieldEmbedding& emb);

/// The lambda-vector of chi (the tag when present, otherwise recovered from its
/// values on exp(x u^j)); needs p > ell.
std::vector<Elem> character_lambdas(const Character& chi);

/// (lambda, mu) with chi(0, a, b) = (-1)^{Tr(lambda a + mu b)}; needs p = 2 and ell = 3.
std::pair<Elem, Elem> fomenko_epsilon(const Character& chi);

}  // namespace ffpc
