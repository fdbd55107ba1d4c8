#include "ffpc/counting.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "ffpc/parallel.hpp"

namespace ffpc {

namespace {

BigInt qpow(const Field& F, std::uint64_t e) { return big_pow(F.q(), e); }

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    if (num % den != 0) throw std::logic_error(std::string(what) + ": division is not exact");
    return num / den;
}

std::int64_t binom_small(std::int64_t n, std::int64_t k) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

Elem rational_in(const Field& F, const BigInt& num, const BigInt& den) {
    return F.from_int(static_cast<std::int64_t>(rational_mod_p(num, den, F.p())));
}

// Cleared f-identity sign q^shift (q^ell psi(n1, A) - q^n1) == q^ell psi(n2, B) - q^n2.
bool cleared_equal(CountingEngine& engine, std::size_t n1, const CosetClass& A, std::size_t n2, const CosetClass& B,
                   std::uint64_t shift, int sign = 1) {
    const Field& F = *engine.field();
    const BigInt ql = qpow(F, A.level());
    const BigInt left = sign * qpow(F, shift) * (ql * engine.psi(n1, A) - qpow(F, n1));
    const BigInt right = ql * engine.psi(n2, B) - qpow(F, n2);
    return left == right;
}

std::uint64_t symmetry_modulus(const Field& F, std::size_t ell) {
    std::uint64_t m = 2 * F.p();
    if (ell >= 3) m *= 3;
    return m;
}

}  // namespace

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

CountingEngine::CountingEngine(FieldPtr field, std::uint64_t budget) : field_(std::move(field)), budget_(budget) {}

CountingEngine::Level& CountingEngine::level(std::size_t ell, std::size_t horizon) {
    auto& slot = levels_[ell];
    if (!slot) {
        slot = std::make_unique<Level>();
        slot->group = CharacterGroup::make(field_, ell, budget_);
        slot->characters = enumerate_characters(slot->group, budget_);
        const std::size_t count = slot->characters.size();
        slot->lpolys.resize(count);
        slot->sums.resize(count);
        parallel_shards(count, [&](unsigned, std::uint64_t b, std::uint64_t e) {
            for (std::uint64_t i = b; i < e; ++i) slot->lpolys[i] = l_polynomial(slot->characters[i]);
        });
    }
    Level& lv = *slot;
    if (horizon > lv.horizon) {
        const std::size_t target = std::max(horizon, 2 * lv.horizon);
        parallel_shards(lv.characters.size(), [&](unsigned, std::uint64_t b, std::uint64_t e) {
            for (std::uint64_t i = b; i < e; ++i)
                if (!lv.lpolys[i].trivial) lv.sums[i] = power_sums(lv.lpolys[i], target);
        });
        lv.horizon = target;
    }
    return lv;
}

BigInt CountingEngine::psi_index(std::size_t n, std::size_t ell, std::uint64_t class_index) {
    if (n == 0) throw std::invalid_argument("psi needs n >= 1");
    const Field& F = *field_;
    Level& lv = level(ell, n);
    const auto e = static_cast<std::uint32_t>(lv.group->exponent());
    std::vector<CyclotomicInt> buckets(e, CyclotomicInt(e, 0L));
    for (std::size_t i = 0; i < lv.characters.size(); ++i) {
        if (lv.lpolys[i].trivial) continue;
        buckets[lv.characters[i].exponent_at(class_index)] += lv.sums[i][n];
    }
    CyclotomicInt R(e, 0L);
    for (std::uint32_t k = 0; k < e; ++k)
        if (!buckets[k].is_zero()) R += buckets[k].times_root(-static_cast<std::int64_t>(k));
    if (!R.is_rational_integer()) throw std::logic_error("character sum is not a rational integer");
    return exact_div(qpow(F, n) - R.constant(), qpow(F, ell), "psi");
}

BigInt CountingEngine::psi(std::size_t n, const CosetClass& t) {
    if (t.field != field_) throw std::invalid_argument("class over a different field");
    return psi_index(n, t.level(), class_index(*field_, t.a));
}

BigInt CountingEngine::pi_mobius(std::size_t n, const CosetClass& t) {
    if (n == 0) throw std::invalid_argument("pi needs n >= 1");
    BigInt total = 0;
    for (auto d : divisors(n)) {
        const int mu = moebius(d);
        if (mu == 0) continue;
        const PowerRoots roots = solve_power(t, d);
        if (roots.empty) continue;
        total += mu * psi(n / d, CosetClass{field_, roots.fixed});
    }
    return exact_div(total, BigInt(static_cast<unsigned long>(n)), "pi_mobius");
}

BigInt CountingEngine::pi_fullmobinv(std::size_t n, const CosetClass& t) {
    if (n == 0) throw std::invalid_argument("pi needs n >= 1");
    const Field& F = *field_;
    const std::uint32_t p = F.p();
    const std::size_t ell = t.level();
    bool indicator = true;
    for (std::size_t i = 1; i <= ell; ++i)
        if (i % p != 0 && t.a[i - 1] != 0) indicator = false;
    std::vector<Elem> tilde_in(ell / p);
    for (std::size_t i = 1; i <= ell / p; ++i) tilde_in[i - 1] = F.pow(t.a[i * p - 1], F.q() / p);

    BigInt total = 0;
    for (auto d : divisors(n)) {
        const int mu = moebius(d);
        if (mu == 0) continue;
        const BigInt D(static_cast<unsigned long>(d));
        if (d % p != 0) {
            total += mu * psi(n / d, CosetClass{field_, series_power(F, t.a, BigInt(1), D)});
        } else if (indicator) {
            total += mu * psi(n / d, CosetClass{field_, series_power(F, tilde_in, BigInt(1), BigInt(static_cast<unsigned long>(d / p)))});
        }
    }
    return exact_div(total, BigInt(static_cast<unsigned long>(n)), "pi_fullmobinv");
}

BigInt CountingEngine::pi_ell3_closed(std::size_t n, const CosetClass& t) {
    if (t.level() != 3) throw std::invalid_argument("closed form needs ell = 3");
    if (n == 0) throw std::invalid_argument("pi needs n >= 1");
    const Field& F = *field_;
    const std::uint32_t p = F.p();
    const Elem t1 = t.a[0], t2 = t.a[1], t3 = t.a[2];
    BigInt total = 0;
    for (auto d : divisors(n)) {
        const int mu = moebius(d);
        if (mu == 0) continue;
        const auto m = n / d;
        if (d % p != 0) {
            CosetClass B{field_, {t1, t2, t3}};
            if (p == 2) {
                if (d % 4 == 3) B.a = {t1, F.add(t2, F.mul(t1, t1)), F.add(t3, F.mul(F.mul(t1, t1), t1))};
            } else {
                const BigInt D(static_cast<unsigned long>(d));
                const Elem inv_d = rational_in(F, 1, D);
                const Elem k2 = rational_in(F, 1 - D, 2 * D * D);
                const Elem k12 = rational_in(F, 1 - D, D * D);
                const Elem k111 = rational_in(F, (2 * D - 1) * (D - 1), 6 * D * D * D);
                const Elem t11 = F.mul(t1, t1);
                B.a = {F.mul(inv_d, t1), F.add(F.mul(inv_d, t2), F.mul(k2, t11)),
                       F.add(F.add(F.mul(inv_d, t3), F.mul(k12, F.mul(t1, t2))), F.mul(k111, F.mul(t11, t1)))};
            }
            total += mu * psi(m, B);
        } else {
            const bool indicator = p >= 5 ? (t1 == 0 && t2 == 0 && t3 == 0) : p == 3 ? (t1 == 0 && t2 == 0) : (t1 == 0 && t3 == 0);
            if (indicator) total += mu * (p >= 5 ? qpow(F, m) : qpow(F, m - 1));
        }
    }
    return exact_div(total, BigInt(static_cast<unsigned long>(n)), "pi_ell3_closed");
}

BigInt psi_exact(const FieldPtr& field, std::size_t n, const CosetClass& t) {
    CountingEngine engine(field);
    return engine.psi(n, t);
}

BigInt pi_mobius(const FieldPtr& field, std::size_t n, const CosetClass& t) {
    CountingEngine engine(field);
    return engine.pi_mobius(n, t);
}

std::vector<CosetClass> class_grid(const FieldPtr& field, std::size_t ell, std::uint64_t full_limit,
                                   std::size_t samples, std::uint64_t seed) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < ell; ++i) size *= field->q();
    auto element = [&](std::uint64_t idx) {
        CosetClass c{field, std::vector<Elem>(ell, 0)};
        for (std::size_t i = 0; i < ell; ++i) {
            c.a[i] = static_cast<Elem>(idx % field->q());
            idx /= field->q();
        }
        return c;
    };
    std::vector<CosetClass> out;
    if (size <= full_limit || size <= samples) {
        for (std::uint64_t i = 0; i < size; ++i) out.push_back(element(i));
        return out;
    }
    std::mt19937_64 rng(seed);
    std::set<std::uint64_t> seen;
    while (out.size() < samples) {
        const std::uint64_t idx = rng() % size;
        if (seen.insert(idx).second) out.push_back(element(idx));
    }
    return out;
}

std::vector<Check> verify_periodicity(CountingEngine& engine, const std::vector<CosetClass>& tuples, std::size_t P,
                                      std::size_t n_max) {
    if (P % 2 != 0) throw std::invalid_argument("period must be even");
    const Field& F = *engine.field();
    std::vector<Check> out;
    for (const auto& t : tuples) {
        const BigInt ql = qpow(F, t.level());
        Check c{"period" + std::to_string(P) + " t=" + t.to_string(), true, ""};
        for (std::size_t n = 1; n <= n_max && c.pass; ++n) {
            const BigInt left = ql * engine.psi(n + P, t) - qpow(F, n + P);
            const BigInt right = qpow(F, P / 2) * (ql * engine.psi(n, t) - qpow(F, n));
            if (left != right) {
                c.pass = false;
                c.detail = "fails at n=" + std::to_string(n);
            }
        }
        if (c.pass) c.detail = "n=1.." + std::to_string(n_max);
        out.push_back(std::move(c));
    }
    return out;
}

std::optional<std::size_t> proven_period(const Field& F) {
    if (F.p() == 2) return 24;
    if (F.p() == 5) return 60;
    return std::nullopt;
}

int galois_sign_sqrt_q(const Field& F, std::uint64_t lambda) {
    const std::uint32_t p = F.p();
    if (lambda % 2 == 0 || lambda % p == 0) throw std::invalid_argument("lambda must be prime to 2p");
    if (F.r() % 2 == 0) return 1;
    // sqrt p inside Z[omega_8] (p = 2) or Z[omega_{4p}] via the quadratic Gauss sum
    CyclotomicInt root;
    if (p == 2) {
        root = CyclotomicInt::root_of_unity(8, 1) + CyclotomicInt::root_of_unity(8, -1);
    } else if (p % 4 == 1) {
        root = gauss_sum(p);
    } else {
        root = gauss_sum(p).embed(4 * p).times_root(-static_cast<std::int64_t>(p));  // g_p / i
    }
    if (root * root != CyclotomicInt(1, static_cast<long>(p))) throw std::logic_error("square root of p is wrong");
    const CyclotomicInt image = root.galois(static_cast<std::int64_t>(lambda));
    if (image == root) return 1;
    if (image == -root) return -1;
    throw std::logic_error("Galois image of sqrt p is not +-sqrt p");
}

std::vector<Check> verify_symmetry(CountingEngine& engine, const std::vector<CosetClass>& tuples, std::uint64_t lambda,
                                   std::size_t n_max, bool twisted) {
    const Field& F = *engine.field();
    std::vector<Check> out;
    for (const auto& t : tuples) {
        if (lambda == 0 || std::gcd(lambda, symmetry_modulus(F, t.level())) != 1)
            throw std::invalid_argument("lambda must be prime to " + std::to_string(symmetry_modulus(F, t.level())));
        const int eps = twisted ? galois_sign_sqrt_q(F, lambda) : 1;
        const CosetClass B = group_pow(t, static_cast<std::int64_t>(lambda));
        Check c{std::string(twisted ? "twisted " : "") + "symmetry lambda=" + std::to_string(lambda) + " t=" + t.to_string(),
                true, "A^lambda=" + B.to_string()};
        for (std::size_t n = 1; n <= n_max && c.pass; ++n) {
            if (!cleared_equal(engine, n, t, lambda * n, B, (lambda - 1) * n / 2, n % 2 ? eps : 1)) {
                c.pass = false;
                c.detail += ", fails at n=" + std::to_string(n);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Check> verify_reduction(CountingEngine& engine, const std::vector<CosetClass>& tuples, std::size_t P,
                                    std::size_t n_max, bool twisted) {
    const Field& F = *engine.field();
    std::vector<Check> out;
    for (const auto& t : tuples) {
        const std::uint64_t guard = symmetry_modulus(F, t.level());
        Check c{std::string(twisted ? "twisted " : "") + "reduction P=" + std::to_string(P) + " t=" + t.to_string(), true, ""};
        for (std::size_t n = 1; n <= n_max && c.pass; ++n) {
            const std::size_t g = std::gcd(n, P), m = n / g, M = P / g;
            std::uint64_t d = 1;
            while (std::gcd(d, guard) != 1 || (d * m) % M != 1 % M) ++d;
            const CosetClass B = group_pow(t, static_cast<std::int64_t>(d));
            // f(n, A) = f(g, A^d): q^{(n-g)/2} (q^ell psi(g, A^d) - q^g) = q^ell psi(n, A) - q^n
            const int eps = twisted && n % 2 ? galois_sign_sqrt_q(F, d) : 1;
            if (!cleared_equal(engine, g, B, n, t, (n - g) / 2, eps)) {
                c.pass = false;
                c.detail = "fails at n=" + std::to_string(n) + " with d=" + std::to_string(d);
            }
        }
        if (c.pass) c.detail = "n=1.." + std::to_string(n_max);
        out.push_back(std::move(c));
    }
    return out;
}

CosetClass printed_sym_tuple(const CosetClass& t, std::uint64_t lambda) {
    if (t.level() != 3) throw std::invalid_argument("printed tuple is defined for ell = 3");
    const Field& F = *t.field;
    const auto l = static_cast<std::int64_t>(lambda);
    const Elem t1 = t.a[0], t2 = t.a[1], t3 = t.a[2];
    const Elem L = F.from_int(l), C2 = F.from_int(binom_small(l, 2)), C3 = F.from_int(binom_small(l, 3));
    const Elem LL = F.from_int(l * (l - 1));
    const Elem t11 = F.mul(t1, t1);
    return CosetClass{t.field,
                      {F.mul(L, t1), F.add(F.mul(L, t2), F.mul(C2, t11)),
                       F.add(F.add(F.mul(L, t3), F.mul(LL, F.mul(t1, t2))), F.mul(C3, F.mul(t11, t1)))}};
}

std::uint64_t sym2_order(const Field& F) {
    return (F.r() % 2 == 1 && F.p() % 4 != 1) ? 4ull * F.p() : 2ull * F.p();
}

std::vector<Check> verify_sym2(const FieldPtr& field) {
    const Field& F = *field;
    CountingEngine engine(field);
    auto& lv = engine.level(2);
    const std::uint64_t o = sym2_order(F);
    const bool refine = o == 4ull * F.p();
    const std::uint64_t need = std::gcd(o, std::uint64_t(8));
    std::size_t total = 0, linear = 0, order = 0, refined = 0, rh = 0;
    for (std::size_t i = 0; i < lv.characters.size(); ++i) {
        const Character& chi = lv.characters[i];
        if (chi.level_of() != 2) continue;
        ++total;
        const LPolynomial& L = lv.lpolys[i];
        CyclotomicInt direct(static_cast<std::uint32_t>(lv.group->exponent()), 0L);
        for (Elem a = 0; a < F.q(); ++a) direct += chi.evaluate(coset_of(MonicPoly(field, {a}), 2));
        if (L.degree() == 1 && L.coeff(1) == direct) ++linear;
        if (L.degree() >= 1 && unity_order_dividing(L, o)) ++order;
        if (refine) {
            const auto m = minimal_unity_order(L, o);
            if (m && *m % need == 0) ++refined;
        }
        if (check_rh_numeric(L)) ++rh;
    }
    auto tally = [&](std::size_t k) { return std::to_string(k) + "/" + std::to_string(total); };
    const std::string tag = " q=" + std::to_string(F.q());
    std::vector<Check> out;
    out.push_back({"sym2 degree one, gamma1 = -sum chi(T+a)" + tag, linear == total, tally(linear)});
    out.push_back({"sym2 order divides o_q=" + std::to_string(o) + tag, order == total, tally(order)});
    if (refine)
        out.push_back({"sym2 order divisible by " + std::to_string(need) + tag, refined == total, tally(refined)});
    else
        out.push_back({"sym2 refinement" + tag, true, "not applicable (o_q = 2p)"});
    out.push_back({"sym2 |gamma1| = sqrt(q)" + tag, rh == total, tally(rh)});
    return out;
}

BigInt closed_form_period(const Field& F, const CosetClass& t, std::size_t P) {
    if (t.level() != 3) throw std::invalid_argument("closed form needs ell = 3");
    const auto pp = proven_period(F);
    if (!pp || *pp != P) throw std::invalid_argument("closed form needs P = 24 for p = 2 or P = 60 for p = 5");
    const BigInt q(F.q());
    const bool t1 = t.a[0] == 0, t12 = t1 && t.a[1] == 0, t123 = t12 && t.a[2] == 0;
    const BigInt bracket = BigInt(2) * q * q * (t123 ? 1 : 0) - q * (t12 ? 1 : 0) - (t1 ? 1 : 0);
    return qpow(F, P - 3) - qpow(F, P / 2 - 2) * bracket;
}

Witness witness_nonperiodicity(std::uint32_t p, std::size_t ell, std::uint64_t max_n) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (ell <= 2 || (ell == 3 && (p == 2 || p == 5)))
        throw std::domain_error("f_{q,ell} is periodic for these parameters; no witness exists");
    auto F = Field::make(p, 1);
    const std::size_t base = (p == 2 || p == 5) ? 4 : 3;
    auto G = CharacterGroup::make(F, base);
    std::optional<Character> chi;
    std::optional<std::vector<CyclotomicInt>> expected;
    if (p == 2) {
        chi = Character::from_generator_images(G, {{CosetClass{F, {1, 0, 0, 0}}, G->exponent() / 8},
                                                   {CosetClass{F, {0, 0, 1, 0}}, 0}});
        const auto w = CyclotomicInt::root_of_unity(8, 1);
        const auto one = CyclotomicInt(8, 1L);
        const auto sqrt2 = w + CyclotomicInt::root_of_unity(8, -1);
        expected = std::vector<CyclotomicInt>{one, one + w, sqrt2 * (one + w), sqrt2 * w * BigInt(2)};
    } else if (p == 3) {
        chi = Character::from_generator_images(G, {{CosetClass{F, {1, 0, 0}}, G->exponent() / 9},
                                                   {CosetClass{F, {0, 1, 0}}, 0}});
        const auto one = CyclotomicInt(9, 1L);
        expected = std::vector<CyclotomicInt>{one, one + CyclotomicInt::root_of_unity(9, 1) + CyclotomicInt::root_of_unity(9, 8),
                                              CyclotomicInt(9, 3L)};
    } else if (p == 5) {
        chi = Character::from_lambdas(G, {0, 0, 0, 1});
        const auto g5 = gauss_sum(5);
        const auto one = CyclotomicInt(5, 1L);
        const auto w = CyclotomicInt::root_of_unity(5, 1), w4 = CyclotomicInt::root_of_unity(5, 4);
        expected = std::vector<CyclotomicInt>{one, one + w * BigInt(4), -(g5 * (one + w4 * BigInt(4))), -(g5 * BigInt(5))};
    } else {
        // p = 1 mod 3: any primitive character; p = 2 mod 3: keep b = lambda_1 - lambda_2^2/(4 lambda_3) nonzero
        chi = Character::from_lambdas(G, p % 3 == 1 ? std::vector<Elem>{0, 0, 1} : std::vector<Elem>{1, 0, 1});
    }
    if (ell > base) chi = chi->inflate(CharacterGroup::make(F, ell));
    Witness w{*chi, l_polynomial(*chi), expected, true, true, std::nullopt, 0};
    if (expected) {
        // inflation leaves the L-polynomial unchanged
        w.coefficients_match = w.L.coeffs.size() == expected->size();
        for (std::size_t j = 0; w.coefficients_match && j < expected->size(); ++j)
            w.coefficients_match = w.L.coeff(j) == (*expected)[j];
    }
    w.rh_numeric = check_rh_numeric(w.L);
    w.unity_order = minimal_unity_order(w.L, max_n);
    w.max_n = max_n;
    return w;
}

std::array<bool, 4> legendre_pair_exists(std::uint32_t p, std::uint32_t j) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("p must be a prime >= 5");
    if (j % p == 0) throw std::invalid_argument("j must be nonzero mod p");
    std::array<bool, 4> found{};
    for (std::uint32_t i = 0; i < p; ++i) {
        const int a = legendre(static_cast<std::int64_t>(i) - j, p), b = legendre(static_cast<std::int64_t>(i) + j, p);
        if (a == 0 || b == 0) continue;
        found[(a == 1 ? 0 : 2) + (b == 1 ? 0 : 1)] = true;
    }
    return found;
}

BigInt genus_formula_2g(std::uint32_t q, std::size_t ell) {
    BigInt total = 0;
    for (std::size_t k = 1; k <= ell; ++k) total += BigInt(static_cast<unsigned long>(k - 1)) * (big_pow(q, k) - big_pow(q, k - 1));
    return total;
}

std::vector<Check> genus_and_zeta_consistency(CountingEngine& engine, std::size_t ell, std::size_t n_max,
                                              const BruteBudget& budget) {
    const FieldPtr& field = engine.field();
    const Field& F = *field;
    auto& lv = engine.level(ell, n_max);
    std::vector<Check> out;
    BigInt degrees = 0;
    for (const auto& L : lv.lpolys)
        if (!L.trivial) degrees += static_cast<unsigned long>(L.degree());
    const BigInt g2 = genus_formula_2g(F.q(), ell);
    const std::string tag = " q=" + std::to_string(F.q()) + " ell=" + std::to_string(ell);
    out.push_back({"genus" + tag, g2 == degrees, "2g=" + to_decimal(g2) + " summed degrees=" + to_decimal(degrees)});
    Check zeta{"zeta point counts" + tag, true, "n=1.." + std::to_string(n_max)};
    const std::vector<Elem> zeros(ell, 0);
    const auto e = static_cast<std::uint32_t>(lv.group->exponent());
    for (std::size_t n = 1; n <= n_max && zeta.pass; ++n) {
        const BigInt lhs = qpow(F, ell) * BigInt(static_cast<unsigned long>(brute_psi(field, n, zeros, budget))) + 1;
        CyclotomicInt s(e, 0L);
        for (std::size_t i = 0; i < lv.characters.size(); ++i)
            if (!lv.lpolys[i].trivial) s += lv.sums[i][n];
        if (!s.is_rational_integer() || lhs != qpow(F, n) + 1 - s.constant()) {
            zeta.pass = false;
            zeta.detail = "fails at n=" + std::to_string(n);
        }
    }
    out.push_back(std::move(zeta));
    return out;
}

CountReport count(CountingEngine& engine, const std::string& quantity, std::size_t n, const CosetClass& t, Method method,
                  const BruteBudget& budget) {
    if (quantity != "psi" && quantity != "pi") throw std::invalid_argument("quantity must be psi or pi");
    const FieldPtr& field = engine.field();
    CountReport r;
    r.field = field->short_spec();
    r.n = n;
    r.ell = t.level();
    r.t = t.to_string();
    r.quantity = quantity;
    r.method = method == Method::Formula ? "formula" : method == Method::Brute ? "brute" : "both";
    std::optional<BigInt> formula, brute;
    if (method != Method::Brute) formula = quantity == "psi" ? engine.psi(n, t) : engine.pi_mobius(n, t);
    if (method != Method::Formula) {
        const std::uint64_t v = quantity == "psi" ? brute_psi(field, n, t.a, budget) : brute_pi(field, n, t.a, budget);
        brute = BigInt(static_cast<unsigned long>(v));
    }
    r.value = formula ? *formula : *brute;
    if (formula && brute)
        r.checks.push_back({"formula_equals_brute", *formula == *brute,
                            "formula=" + to_decimal(*formula) + " brute=" + to_decimal(*brute)});
    return r;
}

}  // namespace ffpc
