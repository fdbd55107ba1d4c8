#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffpc/characters.hpp"
#include "ffpc/coset.hpp"
#include "ffpc/lfunction.hpp"
#include "ffpc/poly.hpp"

namespace ffpc {

/// Named pass/fail entry of a verification run.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

bool all_pass(const std::vector<Check>& checks);

/**
 * Exact psi and pi through characters of M_q / R_ell.
 *
 * psi(n, A) = (q^n - R) / q^ell with R = sum over nontrivial chi of
 * conj(chi(A)) s_n(chi). Per level the engine keeps the characters, their
 * L-polynomials and power sums, extending the power sums on demand. R must be
 * a rational integer and q^n - R a multiple of q^ell; a violation throws
 * std::logic_error.
 */
class CountingEngine {
public:
    explicit CountingEngine(FieldPtr field, std::uint64_t budget = kCharacterBudget);

    const FieldPtr& field() const { return field_; }

    /// psi_q(n, t_1..t_ell), ell = t.level(); n >= 1.
    BigInt psi(std::size_t n, const CosetClass& t);
    /// Lambda-weighted counts of monic degree-n polynomials whose first ell
    /// next-to-leading coefficients match t (level 0 gives q^n).
    BigInt psi_index(std::size_t n, std::size_t ell, std::uint64_t class_index);

    /// (1/n) sum_{d | n} mu(d) sum_{B^d = A} psi(n/d, B), roots from solve_power.
    BigInt pi_mobius(std::size_t n, const CosetClass& t);
    /// Two-sum form: p not dividing d through t_{j,d}, p exactly dividing d through t~_{j,d}.
    BigInt pi_fullmobinv(std::size_t n, const CosetClass& t);
    /// Closed forms for ell = 3, split by p >= 5, p = 3, p = 2.
    BigInt pi_ell3_closed(std::size_t n, const CosetClass& t);

    /// Characters and L-data of one level (built on first use).
    struct Level {
        CharacterGroupPtr group;
        std::vector<Character> characters;
        std::vector<LPolynomial> lpolys;
        std::vector<std::vector<CyclotomicInt>> sums;  // sums[i][n] for character i
        std::size_t horizon = 0;
    };
    Level& level(std::size_t ell, std::size_t horizon = 0);

private:
    FieldPtr field_;
    std::uint64_t budget_;
    std::map<std::size_t, std::unique_ptr<Level>> levels_;
};

/// One-shot helpers over a fresh engine.
BigInt psi_exact(const FieldPtr& field, std::size_t n, const CosetClass& t);
BigInt pi_mobius(const FieldPtr& field, std::size_t n, const CosetClass& t);

/// All q^ell classes when q^ell <= full_limit, otherwise `samples` classes drawn
/// with mt19937_64(seed) (distinct, in draw order).
std::vector<CosetClass> class_grid(const FieldPtr& field, std::size_t ell, std::uint64_t full_limit,
                                   std::size_t samples, std::uint64_t seed);

/// q^ell (psi(n + P) - q^{n+P-ell}) = q^{P/2} q^ell (psi(n) - q^{n-ell}), cleared:
/// q^ell psi(n+P) - q^{n+P} = q^{P/2} (q^ell psi(n) - q^n) for n = 1..n_max.
/// One check per tuple. P must be even.
std::vector<Check> verify_periodicity(CountingEngine& engine, const std::vector<CosetClass>& tuples,
                                      std::size_t P, std::size_t n_max);

/// Rejects characteristics without a proven period at ell = 3: P = 24 for p = 2, 60 for p = 5.
std::optional<std::size_t> proven_period(const Field& F);

/// sigma_lambda(sqrt q) / sqrt q in {1, -1}, sigma_lambda the automorphism omega -> omega^lambda
/// of a cyclotomic field containing sqrt q (lambda odd and prime to p).
int galois_sign_sqrt_q(const Field& F, std::uint64_t lambda);

/// f(n, A) = f(lambda n, A^lambda) with A^lambda from group_pow, cleared:
/// q^{(lambda-1)n/2} (q^ell psi(n, A) - q^n) = q^ell psi(lambda n, A^lambda) - q^{lambda n}.
/// With `twisted` the left side carries galois_sign_sqrt_q(lambda)^n.
/// lambda must be prime to 2p, and to 3 when ell >= 3.
std::vector<Check> verify_symmetry(CountingEngine& engine, const std::vector<CosetClass>& tuples,
                                   std::uint64_t lambda, std::size_t n_max, bool twisted = false);

/// f(n, A) = f((n, P), A^d) for the smallest admissible d, cleared like verify_symmetry
/// (with the sign of d when `twisted`).
std::vector<Check> verify_reduction(CountingEngine& engine, const std::vector<CosetClass>& tuples,
                                    std::size_t P, std::size_t n_max, bool twisted = false);

/// The displayed p = 5 transformed tuple
/// (l t1, l t2 + C(l,2) t1^2, l t3 + l(l-1) t1 t2 + C(l,3) t1^3).
CosetClass printed_sym_tuple(const CosetClass& t, std::uint64_t lambda);

/// 4p when r is odd and p is not 1 mod 4, otherwise 2p.
std::uint64_t sym2_order(const Field& F);

/// For every chi in G(R_2) \ G(R_1): degree-1 L with c_1 = sum_a chi(T + a), the
/// exact o_q identity, the (o_q, 8) refinement when o_q = 4p, and |gamma_1| = sqrt(q).
std::vector<Check> verify_sym2(const FieldPtr& field);

/// q^{P-3} - q^{P/2-2} (2 q^2 [t = 0] - q [t1 = t2 = 0] - [t1 = 0]).
BigInt closed_form_period(const Field& F, const CosetClass& t, std::size_t P);

/// Non-periodicity witness and its certificates.
struct Witness {
    Character chi;
    LPolynomial L;
    /// Expected exact coefficients where a closed display exists ((2,4), (3,3), (5,4)).
    std::optional<std::vector<CyclotomicInt>> expected;
    bool coefficients_match = true;
    bool rh_numeric = true;                       // check_rh_numeric(L)
    std::optional<std::uint64_t> unity_order;     // minimal even N <= maxN, if any
    std::uint64_t max_n = 0;
};

/// Builds the witness character over F_p at level ell. Throws std::domain_error
/// where f_{q,ell} is periodic (ell <= 2, or ell = 3 with p in {2, 5}).
Witness witness_nonperiodicity(std::uint32_t p, std::size_t ell, std::uint64_t max_n = 240);

/// Sign pairs (1,1), (1,-1), (-1,1), (-1,-1): does some i in F_p have
/// ((i - j)/p, (i + j)/p) equal to the pair?
std::array<bool, 4> legendre_pair_exists(std::uint32_t p, std::uint32_t j);

/// sum_{k=1..ell} (k - 1)(q^k - q^{k-1}).
BigInt genus_formula_2g(std::uint32_t q, std::size_t ell);

/// (i) 2g against the summed L-degrees; (ii) for n <= n_max,
/// q^ell psi(n, 0..0) + 1 with psi from brute force equals q^n + 1 - sum_{chi != chi_0} s_n(chi).
std::vector<Check> genus_and_zeta_consistency(CountingEngine& engine, std::size_t ell, std::size_t n_max,
                                              const BruteBudget& budget = BruteBudget::from_env());

/// psi or pi query with formula, brute force or both.
struct CountReport {
    std::string field;
    std::size_t n = 0, ell = 0;
    std::string t;
    std::string quantity;  // "psi" or "pi"
    std::string method;    // "formula", "brute" or "both"
    BigInt value;
    std::vector<Check> checks;
};

enum class Method { Formula, Brute, Both };

CountReport count(CountingEngine& engine, const std::string& quantity, std::size_t n, const CosetClass& t,
                  Method method, const BruteBudget& budget = BruteBudget::from_env());

}  // namespace ffpc
