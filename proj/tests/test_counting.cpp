#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffpc/counting.hpp"

using namespace ffpc;

namespace {

CosetClass cls(const FieldPtr& F, std::vector<Elem> a) { return CosetClass{F, std::move(a)}; }

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

}  // namespace

TEST_CASE("baselines") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto F = Field::parse(std::to_string(q));
        CountingEngine engine(F);
        for (std::size_t n = 1; n <= 7; ++n) {
            CHECK(engine.psi(n, cls(F, {})) == big_pow(q, n));
            for (Elem t = 0; t < q; ++t) CHECK(engine.psi(n, cls(F, {t})) == big_pow(q, n - 1));
        }
    }
    auto F2 = Field::make(2, 1);
    CountingEngine e2(F2);
    CHECK(e2.psi(24, cls(F2, {0, 0, 0})) == 2092032);
    CHECK(e2.pi_mobius(10, cls(F2, {})) == 99);
    CHECK(e2.pi_mobius(4, cls(F2, {})) == 3);
    CHECK(e2.pi_mobius(1, cls(F2, {0, 1, 0})) == 0);
    CHECK(e2.pi_mobius(4, cls(F2, {0, 0, 0})) == big(brute_pi(F2, 4, std::vector<Elem>{0, 0, 0})));
}

TEST_CASE("formulas against brute force") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto F = Field::parse(std::to_string(q));
        CountingEngine engine(F);
        for (std::size_t n = 1; n <= 6 && big_pow(q, n) <= 20000; ++n) {
            const auto table = brute_table(F, n, 3);
            for (std::size_t ell = 0; ell <= 3; ++ell)
                for (const auto& t : class_grid(F, ell, 512, 32, 0)) {
                    const auto idx = class_index(*F, t.a);
                    CHECK(engine.psi(n, t) == big(table.psi[ell][idx]));
                    const BigInt pi = big(table.pi[ell][idx]);
                    CHECK(engine.pi_mobius(n, t) == pi);
                    CHECK(engine.pi_fullmobinv(n, t) == pi);
                    if (ell == 3) CHECK(engine.pi_ell3_closed(n, t) == pi);
                }
        }
    }
    auto F7 = Field::make(7, 1);
    CountingEngine e7(F7);
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto table = brute_table(F7, n, 3);
        for (const auto& t : class_grid(F7, 3, 0, 24, 1))
            CHECK(e7.pi_ell3_closed(n, t) == big(table.pi[3][class_index(*F7, t.a)]));
    }
}

TEST_CASE("pi implementations agree") {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        auto F = Field::make(q, 1);
        CountingEngine engine(F);
        for (std::size_t ell = 0; ell <= 3; ++ell)
            for (const auto& t : class_grid(F, ell, 512, 64, 0))
                for (std::size_t n = 1; n <= 8; ++n) {
                    const auto a = engine.pi_mobius(n, t);
                    CHECK(engine.pi_fullmobinv(n, t) == a);
                    if (ell == 3) CHECK(engine.pi_ell3_closed(n, t) == a);
                }
    }
    auto F5 = Field::make(5, 1);
    CountingEngine e5(F5);
    CHECK(e5.pi_fullmobinv(5, cls(F5, {0, 0, 0})) == big(brute_pi(F5, 5, std::vector<Elem>{0, 0, 0})));
}

TEST_CASE("psi recovered from pi") {
    for (std::uint32_t q : {2u, 3u}) {
        auto F = Field::make(q, 1);
        for (std::size_t n = 1; n <= 6; ++n) {
            std::vector<BruteTable> tables;
            for (std::size_t m = 0; m <= n; ++m) tables.push_back(m == 0 ? BruteTable{} : brute_table(F, m, 3));
            for (std::size_t ell = 1; ell <= 3; ++ell)
                for (const auto& A : class_grid(F, ell, 512, 0, 0)) {
                    std::uint64_t total = 0;
                    for (auto d : divisors(n))
                        for (const auto& B : solve_power(A, d).enumerate(F))
                            total += (n / d) * tables[n / d].pi[ell][class_index(*F, B.a)];
                    CHECK(total == tables[n].psi[ell][class_index(*F, A.a)]);
                }
        }
    }
}

TEST_CASE("periodicity") {
    auto F2 = Field::make(2, 1);
    CountingEngine e2(F2);
    const auto all8 = class_grid(F2, 3, 512, 0, 0);
    CHECK(all_pass(verify_periodicity(e2, all8, 24, 30)));
    CHECK_FALSE(all_pass(verify_periodicity(e2, all8, 12, 30)));
    CHECK_FALSE(all_pass(verify_reduction(e2, all8, 24, 30)));
    for (const auto& c : verify_reduction(e2, all8, 24, 30, true)) CHECK_MESSAGE(c.pass, c.name << " " << c.detail);
    auto F4 = Field::make(2, 2);
    CountingEngine e4(F4);
    CHECK(all_pass(verify_periodicity(e4, class_grid(F4, 3, 512, 0, 0), 24, 8)));
    auto F5 = Field::make(5, 1);
    CountingEngine e5(F5);
    CHECK(all_pass(verify_periodicity(e5, class_grid(F5, 3, 0, 6, 0), 60, 10)));
    CHECK(proven_period(*F2) == 24u);
    CHECK(proven_period(*F5) == 60u);
    CHECK_FALSE(proven_period(*Field::make(7, 1)));
    // ell = 2 has period o_q
    CHECK(all_pass(verify_periodicity(e2, class_grid(F2, 2, 512, 0, 0), 8, 20)));
}

TEST_CASE("symmetry") {
    auto F2 = Field::make(2, 1);
    CountingEngine e2(F2);
    const auto all8 = class_grid(F2, 3, 512, 0, 0);
    CHECK(all_pass(verify_symmetry(e2, all8, 1, 6)));
    CHECK_THROWS(verify_symmetry(e2, all8, 3, 2));
    // sigma_lambda fixes sqrt 2 iff lambda = +-1 mod 8; sqrt 5 iff lambda is a square mod 5
    CHECK(galois_sign_sqrt_q(*F2, 7) == 1);
    CHECK(galois_sign_sqrt_q(*F2, 5) == -1);
    CHECK(galois_sign_sqrt_q(*F2, 11) == -1);
    auto F5 = Field::make(5, 1);
    CHECK(galois_sign_sqrt_q(*F5, 11) == 1);
    CHECK(galois_sign_sqrt_q(*F5, 7) == -1);
    CHECK(galois_sign_sqrt_q(*Field::make(3, 1), 5) == -1);
    CHECK(galois_sign_sqrt_q(*Field::make(3, 1), 13) == 1);
    CHECK(galois_sign_sqrt_q(*Field::make(2, 2), 5) == 1);
    for (std::uint64_t lambda : {5u, 7u, 11u}) {
        const bool fixed = galois_sign_sqrt_q(*F2, lambda) == 1;
        CHECK(all_pass(verify_symmetry(e2, all8, lambda, 6)) == fixed);
        CHECK(all_pass(verify_symmetry(e2, all8, lambda, 6, true)));
    }
    CountingEngine e5(F5);
    const auto some = class_grid(F5, 3, 0, 4, 0);
    CHECK(all_pass(verify_symmetry(e5, some, 11, 3)));
    CHECK_FALSE(all_pass(verify_symmetry(e5, some, 7, 3)));
    CHECK(all_pass(verify_symmetry(e5, some, 7, 3, true)));
    // even n never sees the sign
    for (const auto& c : verify_symmetry(e5, some, 7, 3)) CHECK(c.detail.find("n=1") != std::string::npos);
    auto F4 = Field::make(2, 2);
    CountingEngine e4(F4);
    CHECK(all_pass(verify_symmetry(e4, class_grid(F4, 3, 0, 8, 0), 5, 3)));
    for (std::uint64_t lambda : {7u, 11u, 13u})
        for (const auto& t : class_grid(F5, 3, 512, 0, 0))
            CHECK(printed_sym_tuple(t, lambda) == group_pow(t, static_cast<std::int64_t>(lambda)));
}

TEST_CASE("closed forms at the period") {
    auto F2 = Field::make(2, 1);
    CountingEngine e2(F2);
    CHECK(closed_form_period(*F2, cls(F2, {0, 0, 0}), 24) == 2092032);
    CHECK(closed_form_period(*F2, cls(F2, {1, 0, 0}), 24) == big_pow(2, 21));
    for (const auto& t : class_grid(F2, 3, 512, 0, 0)) CHECK(closed_form_period(*F2, t, 24) == e2.psi(24, t));
    auto F5 = Field::make(5, 1);
    CountingEngine e5(F5);
    CHECK(closed_form_period(*F5, cls(F5, {0, 0, 0}), 60) == big_pow(5, 57) - big_pow(5, 28) * 44);
    for (const auto& t : class_grid(F5, 3, 0, 4, 3)) CHECK(closed_form_period(*F5, t, 60) == e5.psi(60, t));
    CHECK_THROWS(closed_form_period(*F5, cls(F5, {0, 0, 0}), 24));
}

TEST_CASE("sym2") {
    CHECK(sym2_order(*Field::make(2, 1)) == 8);
    CHECK(sym2_order(*Field::make(2, 2)) == 4);
    CHECK(sym2_order(*Field::make(5, 1)) == 10);
    CHECK(sym2_order(*Field::make(3, 1)) == 12);
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 9u}) {
        const auto checks = verify_sym2(Field::parse(std::to_string(q)));
        for (const auto& c : checks) CHECK_MESSAGE(c.pass, c.name << " " << c.detail);
    }
}

TEST_CASE("non-periodicity witnesses") {
    for (auto [p, ell] : std::vector<std::pair<std::uint32_t, std::size_t>>{{2, 4}, {3, 3}, {5, 4}}) {
        const auto w = witness_nonperiodicity(p, ell);
        CHECK(w.expected);
        CHECK(w.coefficients_match);
        CHECK_FALSE(w.unity_order);
        CHECK(w.chi.is_primitive());
    }
    for (std::uint32_t p : {7u, 11u, 13u}) {
        const auto w = witness_nonperiodicity(p, 3);
        CHECK_FALSE(w.expected);
        CHECK_FALSE(w.unity_order);
        CHECK(w.chi.is_primitive());
    }
    const auto up = witness_nonperiodicity(3, 4);
    CHECK(up.coefficients_match);
    CHECK_FALSE(up.unity_order);
    CHECK_THROWS_AS(witness_nonperiodicity(2, 3), std::domain_error);
    CHECK_THROWS_AS(witness_nonperiodicity(5, 3), std::domain_error);
    CHECK_THROWS_AS(witness_nonperiodicity(7, 2), std::domain_error);
}

TEST_CASE("Legendre sign pairs") {
    for (std::uint32_t p : {7u, 11u, 13u})
        for (std::uint32_t j = 1; j < p; ++j)
            for (bool b : legendre_pair_exists(p, j)) CHECK(b);
    const auto five = legendre_pair_exists(5, 2);
    CHECK_FALSE(five[0]);
}

TEST_CASE("genus and zeta") {
    CHECK(genus_formula_2g(7, 1) == 0);
    CHECK(genus_formula_2g(2, 3) == 10);
    for (std::uint32_t q : {2u, 3u, 5u}) {
        CountingEngine engine(Field::make(q, 1));
        for (std::size_t ell = 1; ell <= 3; ++ell) {
            const std::size_t n_max = q == 2 ? 10 : 4;
            for (const auto& c : genus_and_zeta_consistency(engine, ell, n_max)) CHECK_MESSAGE(c.pass, c.name << " " << c.detail);
        }
    }
}

TEST_CASE("count reports") {
    auto F = Field::make(2, 1);
    CountingEngine engine(F);
    const auto r = count(engine, "psi", 8, cls(F, {0, 1, 0}), Method::Both);
    CHECK(r.checks.size() == 1);
    CHECK(r.checks[0].pass);
    CHECK(r.method == "both");
    CHECK(r.t == "0,1,0");
    const auto p = count(engine, "pi", 10, cls(F, {}), Method::Formula);
    CHECK(p.value == 99);
    BruteBudget tiny{16, false};
    CHECK_THROWS_AS(count(engine, "psi", 8, cls(F, {}), Method::Brute, tiny), BudgetExceeded);
}
