#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ffpc/cyclotomic.hpp"

using namespace ffpc;
using C = CyclotomicInt;

namespace {

C random_element(std::uint32_t m, std::mt19937_64& rng) {
    std::vector<BigInt> c(euler_phi(m));
    for (auto& x : c) x = static_cast<long>(rng() % 21) - 10;
    return C::from_coordinates(m, c);
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
    CHECK(cyclotomic_polynomial(9) == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
    CHECK(euler_phi(60) == 16);
}

TEST_CASE("ring basics") {
    CHECK(C::root_of_unity(4, 1) * C::root_of_unity(4, 1) == C(4, -1L));
    CHECK(C::root_of_unity(3, 1) + C::root_of_unity(3, 2) == C(3, -1L));
    const C w8 = C::root_of_unity(8, 1);
    const C lhs = (C(8, 1L) + w8) * (C(8, 1L) + C::root_of_unity(8, 7));
    CHECK(lhs == C(8, 2L) + w8 + C::root_of_unity(8, -1));
    CHECK(std::abs(lhs.to_complex() - std::complex<double>(2 + std::sqrt(2.0), 0)) < 1e-12);
    for (std::uint32_t m : {2u, 3u, 4u, 5u, 8u, 9u, 12u, 60u}) {
        C s(m, 0L);
        for (std::uint32_t k = 0; k < m; ++k) s += C::root_of_unity(m, k);
        CHECK(s.is_zero());
        CHECK(C::root_of_unity(m, m) == C(m, 1L));
    }
}

TEST_CASE("embedding") {
    CHECK(C::root_of_unity(4, 1).embed(8) == C::root_of_unity(8, 2));
    CHECK(C(3, 7L).embed(60) == C(60, 7L));
    const C a = (C::root_of_unity(3, 1) + C(3, 1L)).embed(12) * C::root_of_unity(4, 1).embed(12);
    const auto expect = (std::polar(1.0, 2 * M_PI / 3) + 1.0) * std::complex<double>(0, 1);
    CHECK(std::abs(a.to_complex() - expect) < 1e-12);
    CHECK_THROWS(C(3, 1L).embed(8));
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        C x = random_element(4, rng), y = random_element(6, rng);
        CHECK((x * y).embed(24) == x.embed(24) * y.embed(24));
        CHECK((x + y) == x.embed(12) + y.embed(12));
    }
}

TEST_CASE("Galois action") {
    std::mt19937_64 rng(11);
    for (std::uint32_t m : {5u, 8u, 9u, 12u}) {
        for (int it = 0; it < 30; ++it) {
            C x = random_element(m, rng), y = random_element(m, rng);
            CHECK(x.galois(1) == x);
            for (std::int64_t l = 1; l < m; ++l) {
                if (std::gcd<std::int64_t>(l, m) != 1) continue;
                CHECK((x * y).galois(l) == x.galois(l) * y.galois(l));
                CHECK((x + y).galois(l) == x.galois(l) + y.galois(l));
                for (std::int64_t mu : {1, 5, 7})
                    if (std::gcd<std::int64_t>(mu, m) == 1) CHECK(x.galois(l).galois(mu) == x.galois(l * mu % m));
            }
            CHECK(std::abs(x.conj().to_complex() - std::conj(x.to_complex())) < 1e-9);
        }
    }
    CHECK(C::root_of_unity(5, 1).galois(2) == C::root_of_unity(5, 2));
    CHECK_THROWS(C::root_of_unity(8, 1).galois(2));
}

TEST_CASE("Gauss sums") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        const C g = gauss_sum(p);
        const long sign = (p % 4 == 1) ? 1 : -1;
        CHECK(g * g == C(p, sign * static_cast<long>(p)));
    }
    CHECK(std::abs(gauss_sum(5).to_complex() - std::sqrt(5.0)) < 1e-9);
    CHECK(std::abs(gauss_sum(3).to_complex() - std::complex<double>(0, std::sqrt(3.0))) < 1e-9);
    CHECK_THROWS(gauss_sum(2));
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(14, 7) == 0);
}

TEST_CASE("numeric embedding is multiplicative") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        C x = random_element(60, rng), y = random_element(60, rng);
        const auto lhs = (x * y).to_complex(), rhs = x.to_complex() * y.to_complex();
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + std::abs(x.to_complex()) * std::abs(y.to_complex())));
    }
}

TEST_CASE("text form") {
    CHECK(C(4, 0L).to_string() == "0");
    CHECK((C(4, 2L) + C::root_of_unity(4, 1)).to_string() == "2 + 1*w^1");
    CHECK((C(4, 2L) - C::root_of_unity(4, 1)).to_string() == "2 - 1*w^1");
    CHECK(to_decimal(big_pow(5, 30)) == "931322574615478515625");
}
