// Acceptance checks 1-13. One line per criterion:
//   criterion N [PASS|FAIL] title: detail
// `acceptance --criterion N` runs one; without it all of them run.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ffpc/cli.hpp"
#include "ffpc/counting.hpp"

using namespace ffpc;

namespace {

// Pinned tolerances.
constexpr double kRhTol = kRhTolerance;  // relative, |gamma| against sqrt(q)
constexpr double kUnityTol = 1e-6;       // |(gamma/sqrt q)^N - 1|

constexpr std::uint64_t kFullGrid = 512;  // full t-grid up to q^ell = 512
constexpr std::size_t kSamples = 64;
constexpr std::uint64_t kSeed = 0;

struct Result {
    bool pass = true;
    std::string detail;
};

std::string frac(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

const std::vector<std::uint32_t> kGridQ{2, 3, 4, 5, 7, 8, 9};

FieldPtr field_q(std::uint32_t q) { return Field::parse(std::to_string(q)); }

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

// ---------------------------------------------------------------------------

Result oracle_equivalence() {
    std::size_t psi_ok = 0, pi_ok = 0, total = 0;
    std::string first_bad;
    for (auto q : kGridQ) {
        auto F = field_q(q);
        CountingEngine engine(F);
        for (std::size_t n = 1; n <= 8 && ipow(q, n) <= (1u << 20); ++n) {
            const BruteTable table = brute_table(F, n, 3);
            for (std::size_t ell = 0; ell <= 3; ++ell) {
                for (const auto& t : class_grid(F, ell, kFullGrid, kSamples, kSeed)) {
                    const std::uint64_t idx = class_index(*F, t.a);
                    const bool a = engine.psi(n, t) == big(table.psi[ell][idx]);
                    const bool b = engine.pi_mobius(n, t) == big(table.pi[ell][idx]);
                    psi_ok += a;
                    pi_ok += b;
                    ++total;
                    if ((!a || !b) && first_bad.empty())
                        first_bad = " first mismatch q=" + std::to_string(q) + " n=" + std::to_string(n) + " t=" + t.to_string();
                }
            }
        }
    }
    return {psi_ok == total && pi_ok == total, "psi " + frac(psi_ok, total) + ", pi " + frac(pi_ok, total) + first_bad};
}

Result baselines() {
    std::size_t ok = 0, total = 0;
    for (auto q : kGridQ) {
        auto F = field_q(q);
        CountingEngine engine(F);
        for (std::size_t n = 1; n <= 8 && ipow(q, n) <= (1u << 20); ++n) {
            const BruteTable table = brute_table(F, n, 1);
            ++total;
            ok += engine.psi(n, CosetClass::identity(F, 0)) == big_pow(q, n) && table.psi[0][0] == ipow(q, n);
            for (Elem t = 0; t < q; ++t) {
                ++total;
                ok += engine.psi(n, CosetClass{F, {t}}) == big_pow(q, n - 1) && table.psi[1][t] == ipow(q, n - 1);
            }
        }
    }
    auto F2 = Field::make(2, 1);
    const bool p10 = gauss_count(2, 10) == 99 && brute_pi(F2, 10, {}) == 99;
    const bool p4 = gauss_count(2, 4) == 3 && brute_pi(F2, 4, {}) == 3;
    return {ok == total && p10 && p4, "psi(n)=q^n and psi(n,t1)=q^(n-1): " + frac(ok, total) +
                                          "; pi_2(10)=99 " + (p10 ? "ok" : "wrong") + "; pi_2(4)=3 " + (p4 ? "ok" : "wrong")};
}

Result roots24() {
    std::size_t ok = 0, total = 0;
    for (std::uint32_t q : {2u, 4u, 8u}) {
        auto G = CharacterGroup::make(field_q(q), 3);
        const BigInt scale = big_pow(q, 12);
        for (const auto& chi : enumerate_characters(G)) {
            if (!chi.is_primitive()) continue;
            ++total;
            const LPolynomial L = l_polynomial(chi);
            const auto s = power_sums(L, 26);
            ok += L.coeffs[0].order() % 4 == 0 && s[25] == s[1] * scale && s[26] == s[2] * scale;
        }
    }
    return {ok == total && total > 0, "s_25 = q^12 s_1 and s_26 = q^12 s_2 for primitive chi over F_2, F_4, F_8: " + frac(ok, total)};
}

Result roots60() {
    std::size_t ok = 0, total = 0, numeric = 0;
    auto check = [&](const Character& chi) {
        const LPolynomial L = l_polynomial(chi);
        ++total;
        const bool exact = unity_order_dividing(L, 60);
        ok += exact;
        numeric += exact == (L.degree() == 0 || numeric_unity_deviation(L, 60) <= kUnityTol);
    };
    auto G5 = CharacterGroup::make(field_q(5), 3);
    for (const auto& chi : enumerate_characters(G5))
        if (!chi.is_trivial()) check(chi);
    const std::size_t over5 = total;
    auto G25 = CharacterGroup::make(field_q(25), 3);
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<std::uint64_t> pick(1, G25->size() - 1);
    std::set<std::uint64_t> chosen;
    while (chosen.size() < kSamples) chosen.insert(pick(rng));
    for (auto i : chosen) check(Character::from_index(G25, i));
    return {ok == total && over5 == 124 && numeric == total,
            "s_{60+j} = q^30 s_j: " + frac(ok, total) + " (" + std::to_string(over5) + " over F_5, " +
                std::to_string(total - over5) + " sampled over F_25); numeric agreement " + frac(numeric, total)};
}

Result period() {
    std::size_t ok = 0, total = 0;
    for (std::uint32_t q : {2u, 4u}) {
        auto F = field_q(q);
        CountingEngine engine(F);
        const auto checks = verify_periodicity(engine, class_grid(F, 3, ~std::uint64_t(0), 0, kSeed), 24, 30);
        total += checks.size();
        ok += std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    auto F5 = field_q(5);
    CountingEngine e5(F5);
    const auto c5 = verify_periodicity(e5, class_grid(F5, 3, 0, kSamples, kSeed), 60, 70);
    const std::size_t ok5 = std::count_if(c5.begin(), c5.end(), [](const Check& c) { return c.pass; });
    return {ok == total && ok5 == c5.size(),
            "P=24, q in {2,4}, all tuples, n=1..30: " + frac(ok, total) + "; P=60, q=5, " +
                std::to_string(c5.size()) + " sampled tuples, n=1..70: " + frac(ok5, c5.size())};
}

Result corollary_brute() {
    auto F2 = field_q(2);
    const BruteTable table = brute_table(F2, 24, 3);
    std::size_t ok = 0;
    bool anchor = false;
    for (const auto& t : class_grid(F2, 3, ~std::uint64_t(0), 0, kSeed)) {
        const std::uint64_t v = table.psi[3][class_index(*F2, t.a)];
        ok += big(v) == closed_form_period(*F2, t, 24);
        if (t.is_identity()) anchor = v == 2092032;
    }
    auto F5 = field_q(5);
    CountingEngine e5(F5);
    std::size_t ok5 = 0;
    const auto tuples = class_grid(F5, 3, 0, kSamples, kSeed);
    for (const auto& t : tuples) ok5 += e5.psi(60, t) == closed_form_period(*F5, t, 60);
    return {ok == 8 && anchor && ok5 == tuples.size(),
            "brute psi(24,t) over F_2 equals the closed form for " + frac(ok, 8) + " tuples, t=0,0,0 gives " +
                (anchor ? "2092032" : "a wrong value") + "; q=5, n=60: formula equals closed form for " +
                frac(ok5, tuples.size()) + " sampled tuples (brute force over 5^60 polynomials is infeasible, not attempted)"};
}

Result symmetry() {
    std::size_t ok = 0, total = 0, twisted_ok = 0;
    std::string failing;
    auto run = [&](std::uint32_t q, const std::vector<std::uint64_t>& lambdas) {
        auto F = field_q(q);
        CountingEngine engine(F);
        const auto tuples = class_grid(F, 3, kFullGrid, kSamples, kSeed);
        for (auto lambda : lambdas) {
            const auto plain = verify_symmetry(engine, tuples, lambda, 6);
            const auto signed_ = verify_symmetry(engine, tuples, lambda, 6, true);
            std::size_t bad = 0;
            for (const auto& c : plain) bad += !c.pass;
            total += plain.size();
            ok += plain.size() - bad;
            twisted_ok += std::count_if(signed_.begin(), signed_.end(), [](const Check& c) { return c.pass; });
            if (bad)
                failing += " q=" + std::to_string(q) + ",lambda=" + std::to_string(lambda) + ":" + std::to_string(bad) +
                           " tuples";
        }
    };
    run(2, {5, 7, 11});
    run(5, {7, 11, 13});
    auto F5 = field_q(5);
    std::size_t printed = 0, printed_total = 0;
    for (auto lambda : {7, 11, 13, 17, 19, 23, 29})
        for (const auto& t : class_grid(F5, 3, kFullGrid, kSamples, kSeed)) {
            ++printed_total;
            printed += printed_sym_tuple(t, lambda) == group_pow(t, lambda);
        }
    std::string detail = "cleared identity holds for " + frac(ok, total) + " (tuple, lambda) pairs, n<=6";
    if (!failing.empty())
        detail += "; fails at odd n for" + failing +
                  " (sigma_lambda maps sqrt q to -sqrt q there); with the sign (sigma_lambda(sqrt q)/sqrt q)^n it holds for " +
                  frac(twisted_ok, total);
    detail += "; printed p=5 tuple equals group_pow " + frac(printed, printed_total);
    return {ok == total && printed == printed_total, detail};
}

Result sym2() {
    std::size_t ok = 0, total = 0;
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 9u})
        for (const auto& c : verify_sym2(field_q(q))) {
            ++total;
            ok += c.pass;
        }
    return {ok == total, "order, refinement, linear coefficient and |gamma_1| checks over q in {2,3,4,5,7,9}: " + frac(ok, total)};
}

Result witnesses() {
    std::size_t coeff = 0, explicit_cases = 0, flagged = 0, no_unity = 0;
    std::ostringstream dev;
    const std::vector<std::pair<std::uint32_t, std::size_t>> cases{{2, 4}, {3, 3}, {5, 4}, {7, 3}};
    for (auto [p, ell] : cases) {
        const Witness w = witness_nonperiodicity(p, ell, 240);
        if (w.expected) {
            ++explicit_cases;
            coeff += w.coefficients_match;
            flagged += !check_rh_numeric(w.L, kRhTol);
            dev << " " << p << "," << ell << ":" << std::scientific << std::setprecision(1) << rh_deviation(w.L);
        }
        no_unity += !w.unity_order;
    }
    return {coeff == explicit_cases && flagged == explicit_cases && no_unity == cases.size(),
            "coefficients match " + frac(coeff, explicit_cases) + "; flagged RH-violating " + frac(flagged, explicit_cases) +
                " (max ||gamma|-sqrt q|/sqrt q:" + dev.str() + ", tolerance 1e-9); no unity order N<=240 " +
                frac(no_unity, cases.size())};
}

Result fomenko_cubic() {
    std::size_t fo = 0, fo_total = 0, cu = 0, cu_total = 0;
    for (std::uint32_t q : {2u, 4u}) {
        auto G = CharacterGroup::make(field_q(q), 3);
        for (const auto& chi : enumerate_characters(G))
            if (chi.is_primitive()) {
                ++fo_total;
                fo += verify_fomenko(chi).ok();
            }
    }
    for (std::uint32_t q : {5u, 7u}) {
        auto G = CharacterGroup::make(field_q(q), 3);
        for (const auto& chi : enumerate_characters(G))
            if (chi.is_primitive()) {
                ++cu_total;
                cu += verify_cubic_normal_form(chi).ok;
            }
    }
    return {fo == fo_total && cu == cu_total && fo_total > 0 && cu_total > 0,
            "Fomenko identities over F_2, F_4: " + frac(fo, fo_total) + "; cubic normal form over F_5, F_7: " + frac(cu, cu_total)};
}

Result appendix() {
    // solve_power against exhaustive d-th powers
    std::size_t sp_ok = 0, sp_total = 0;
    for (auto q : kGridQ) {
        auto F = field_q(q);
        for (std::size_t ell = 1; ipow(q, ell) <= 4096; ++ell) {
            const auto classes = class_grid(F, ell, ~std::uint64_t(0), 0, kSeed);
            for (std::int64_t d = 1; d <= 12; ++d) {
                std::map<std::vector<Elem>, std::vector<CosetClass>> by_power;
                for (const auto& B : classes) by_power[group_pow(B, d).a].push_back(B);
                for (const auto& A : classes) {
                    auto expect = by_power[A.a];
                    auto got = solve_power(A, static_cast<std::uint64_t>(d)).enumerate(F);
                    std::sort(expect.begin(), expect.end());
                    std::sort(got.begin(), got.end());
                    ++sp_total;
                    sp_ok += got == expect;
                }
            }
        }
    }
    // three pi implementations
    std::size_t pi_ok = 0, pi_total = 0;
    for (auto q : kGridQ) {
        auto F = field_q(q);
        CountingEngine engine(F);
        for (std::size_t n = 1; n <= 8 && ipow(q, n) <= (1u << 20); ++n)
            for (std::size_t ell = 0; ell <= 3; ++ell)
                for (const auto& t : class_grid(F, ell, kFullGrid, kSamples, kSeed)) {
                    const BigInt a = engine.pi_mobius(n, t);
                    bool same = a == engine.pi_fullmobinv(n, t);
                    if (ell == 3) same = same && a == engine.pi_ell3_closed(n, t);
                    ++pi_total;
                    pi_ok += same;
                }
    }
    // sign pairs
    std::size_t leg_ok = 0, leg_total = 0;
    for (std::uint32_t p : {7u, 11u, 13u})
        for (std::uint32_t j = 1; j < p; ++j) {
            const auto found = legendre_pair_exists(p, j);
            ++leg_total;
            leg_ok += std::all_of(found.begin(), found.end(), [](bool b) { return b; });
        }
    const auto five = legendre_pair_exists(5, 2);
    const bool counterexample = !std::all_of(five.begin(), five.end(), [](bool b) { return b; });
    return {sp_ok == sp_total && pi_ok == pi_total && leg_ok == leg_total && counterexample,
            "solve_power vs exhaustive (q^ell<=4096, d<=12): " + frac(sp_ok, sp_total) + "; three pi forms agree: " +
                frac(pi_ok, pi_total) + "; all sign pairs for p in {7,11,13}: " + frac(leg_ok, leg_total) +
                "; p=5, j=2 misses a pair: " + (counterexample ? "yes" : "no")};
}

Result genus_zeta() {
    std::size_t ok = 0, total = 0;
    for (std::uint32_t q : {2u, 3u, 5u}) {
        CountingEngine engine(field_q(q));
        for (std::size_t ell = 1; ell <= 3; ++ell)
            for (const auto& c : genus_and_zeta_consistency(engine, ell, q == 2 ? 10 : 1)) {
                if (q != 2 && c.name.rfind("zeta", 0) == 0) continue;
                ++total;
                ok += c.pass;
            }
    }
    return {ok == total, "genus formula for q in {2,3,5}, ell<=3 and point counts for q=2, n<=10: " + frac(ok, total)};
}

Result determinism() {
    const std::vector<std::vector<std::string>> jobs{
        {"verify", "period", "--field", "2^2"},
        {"verify", "roots60", "--field", "25"},
        {"verify", "sym2", "--field", "9"},
        {"verify", "symmetry", "--field", "5", "--twisted"},
        {"psi", "--field", "9", "--ell", "3", "--n", "1..4", "--t", "sample:16", "--method", "both"},
        {"table", "--field", "8", "--ell", "2", "--n", "1..5"},
        {"witness", "--p", "3", "--ell", "3"},
        {"lfunc", "--field", "4", "--index", "37"},
    };
    std::size_t same = 0;
    for (const auto& args : jobs) {
        std::ostringstream a, b, ea, eb;
        const int ca = run_cli(args, a, ea), cb = run_cli(args, b, eb);
        same += ca == cb && a.str() == b.str() && !a.str().empty();
    }
    // counts under a change of modulus, tuples moved by the isomorphism
    const std::vector<std::vector<std::string>> moduli{{"2^2", "2^2:7"}, {"2^3:11", "2^3:13"}, {"3^2:10", "3^2:14", "3^2:17"}};
    std::size_t inv_ok = 0, inv_total = 0;
    for (const auto& group : moduli) {
        auto F = Field::parse(group[0]);
        CountingEngine base(F);
        for (std::size_t k = 1; k < group.size(); ++k) {
            auto G = Field::parse(group[k]);
            FieldEmbedding iso(F, G);
            CountingEngine other(G);
            for (std::size_t ell = 1; ell <= 3; ++ell)
                for (const auto& t : class_grid(F, ell, kFullGrid, kSamples, kSeed)) {
                    CosetClass u{G, {}};
                    for (Elem x : t.a) u.a.push_back(iso.to_big(x));
                    for (std::size_t n = 1; n <= 4; ++n) {
                        ++inv_total;
                        inv_ok += base.psi(n, t) == other.psi(n, u) && base.pi_mobius(n, t) == other.pi_mobius(n, u);
                    }
                }
            for (std::size_t n = 1; n <= 3; ++n) {
                const auto tf = brute_table(F, n, 2), tg = brute_table(G, n, 2);
                for (const auto& t : class_grid(F, 2, kFullGrid, kSamples, kSeed)) {
                    std::vector<Elem> u;
                    for (Elem x : t.a) u.push_back(iso.to_big(x));
                    ++inv_total;
                    inv_ok += tf.psi[2][class_index(*F, t.a)] == tg.psi[2][class_index(*G, u)] &&
                              tf.pi[2][class_index(*F, t.a)] == tg.pi[2][class_index(*G, u)];
                }
            }
        }
    }
    return {same == jobs.size() && inv_ok == inv_total,
            "byte-identical reports " + frac(same, jobs.size()) + "; counts equal across F_4/F_8/F_9 moduli " +
                frac(inv_ok, inv_total) + " (F_4 has a single irreducible quadratic)"};
}

struct Criterion {
    int id;
    const char* title;
    std::function<Result()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "oracle equivalence", oracle_equivalence},
        {2, "Carlitz and Gauss baselines", baselines},
        {3, "order-24 roots", roots24},
        {4, "order-60 roots", roots60},
        {5, "period 24 and 60 identities", period},
        {6, "n=24 closed form by brute force", corollary_brute},
        {7, "symmetry identities", symmetry},
        {8, "degree-one L over R_2", sym2},
        {9, "non-periodicity witnesses", witnesses},
        {10, "Fomenko identities and cubic normal form", fomenko_cubic},
        {11, "solve_power, pi forms, sign pairs", appendix},
        {12, "genus and zeta point counts", genus_zeta},
        {13, "determinism and modulus invariance", determinism},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-13)")->check(CLI::Range(1, 13));
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (const auto& c : criteria()) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && r.pass;
        std::cout << "criterion " << c.id << " [" << (r.pass ? "PASS" : "FAIL") << "] " << c.title << ": " << r.detail
                  << " (" << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
    }
    return all ? 0 : 1;
}
