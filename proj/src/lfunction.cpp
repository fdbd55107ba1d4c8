#include "ffpc/lfunction.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ffpc {

namespace {

using Complex = std::complex<double>;
using LongComplex = std::complex<long double>;

void require_polynomial(const LPolynomial& L) {
    if (L.trivial) throw std::invalid_argument("the trivial character has L = 1/(1-qu), not a polynomial");
}

// Newton steps on z^d + c_1 z^{d-1} + ... + c_d.
Complex polish(const std::vector<LongComplex>& c, Complex z0) {
    LongComplex z(z0.real(), z0.imag());
    for (int it = 0; it < 8; ++it) {
        LongComplex f = 1, df = 0;
        for (std::size_t j = 1; j < c.size(); ++j) {
            df = df * z + f;
            f = f * z + c[j];
        }
        if (std::abs(df) == 0) break;
        const LongComplex step = f / df;
        z -= step;
        if (std::abs(step) <= 1e-18L * std::abs(z)) break;
    }
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

std::string LPolynomial::to_string() const {
    if (trivial) return "1/(1-qu)";
    std::ostringstream os;
    os << "1";
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
        os << " + (" << coeffs[j].to_string() << ")*u";
        if (j > 1) os << "^" << j;
    }
    return os.str();
}

LPolynomial l_polynomial(const Character& chi) {
    const auto& group = chi.group();
    LPolynomial L;
    L.field = group->field();
    L.level = group->level();
    const auto e = static_cast<std::uint32_t>(group->exponent());
    L.coeffs.emplace_back(e, 1L);
    if (chi.is_trivial()) {
        L.trivial = true;
        return L;
    }
    const std::uint64_t q = L.field->q();
    std::vector<std::int64_t> counts(e, 0);
    std::uint64_t done = 1;  // classes with index < q^d have a_{d+1} = ... = 0
    counts[0] = 1;
    for (std::size_t d = 1; d < L.level; ++d) {
        const std::uint64_t limit = done * q;
        for (std::uint64_t idx = done; idx < limit; ++idx) counts[chi.exponent_at(idx)]++;
        done = limit;
        L.coeffs.push_back(CyclotomicInt::from_exponent_counts(e, counts));
    }
    while (L.coeffs.size() > 1 && L.coeffs.back().is_zero()) L.coeffs.pop_back();
    return L;
}

std::vector<CyclotomicInt> power_sums(const LPolynomial& L, std::size_t N) {
    require_polynomial(L);
    const std::size_t d = L.degree();
    const std::uint32_t e = L.coeffs[0].order();
    std::vector<CyclotomicInt> s(N + 1);
    s[0] = CyclotomicInt(e, static_cast<long>(d));
    for (std::size_t n = 1; n <= N; ++n) {
        CyclotomicInt acc(e, 0L);
        if (n <= d) acc -= L.coeffs[n] * BigInt(static_cast<unsigned long>(n));
        for (std::size_t j = 1; j <= std::min(n - 1, d); ++j) acc -= L.coeffs[j] * s[n - j];
        s[n] = std::move(acc);
    }
    return s;
}

std::vector<std::complex<double>> inverse_roots(const LPolynomial& L) {
    require_polynomial(L);
    const std::size_t d = L.degree();
    std::vector<Complex> roots;
    if (d == 0) return roots;
    if (d == 1) return {L.coeffs[1].to_complex() * -1.0};
    if (d == 2) {
        // exact discriminant keeps double roots exact
        const CyclotomicInt disc = L.coeffs[1] * L.coeffs[1] - L.coeffs[2] * BigInt(4);
        const Complex sq = std::sqrt(disc.to_complex()), b = L.coeffs[1].to_complex();
        return {(-b + sq) / 2.0, (-b - sq) / 2.0};
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t j = 1; j <= d; ++j)
        companion(static_cast<Eigen::Index>(d - j), static_cast<Eigen::Index>(d - 1)) = -L.coeffs[j].to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<LongComplex> c;
    for (const auto& x : L.coeffs) {
        const Complex v = x.to_complex();
        c.emplace_back(v.real(), v.imag());
    }
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(polish(c, solver.eigenvalues()(i)));
    return roots;
}

double rh_deviation(const LPolynomial& L) {
    const double sq = std::sqrt(static_cast<double>(L.field->q()));
    double worst = 0;
    for (const auto& g : inverse_roots(L)) worst = std::max(worst, std::abs(std::abs(g) - sq) / sq);
    return worst;
}

bool check_rh_numeric(const LPolynomial& L, double tolerance) { return rh_deviation(L) <= tolerance; }

bool unity_order_dividing(const LPolynomial& L, std::uint64_t N) {
    if (N % 2 != 0) throw std::invalid_argument("unity order test needs an even N");
    const std::size_t d = L.degree();
    require_polynomial(L);
    if (d == 0) return true;
    const auto s = power_sums(L, N + d);
    const BigInt scale = big_pow(L.field->q(), N / 2);
    for (std::size_t j = 1; j <= d; ++j)
        if (s[N + j] != s[j] * scale) return false;
    return true;
}

std::optional<std::uint64_t> minimal_unity_order(const LPolynomial& L, std::uint64_t maxN) {
    if (maxN % 2 != 0) throw std::invalid_argument("maxN must be even");
    require_polynomial(L);
    const std::size_t d = L.degree();
    if (d == 0) return maxN >= 2 ? std::optional<std::uint64_t>(2) : std::nullopt;
    const auto s = power_sums(L, maxN + d);
    BigInt scale = 1;
    const BigInt q(L.field->q());
    for (std::uint64_t N = 2; N <= maxN; N += 2) {
        scale *= q;
        bool ok = true;
        for (std::size_t j = 1; j <= d && ok; ++j) ok = s[N + j] == s[j] * scale;
        if (ok) return N;
    }
    return std::nullopt;
}

double numeric_unity_deviation(const LPolynomial& L, std::uint64_t N) {
    const double sq = std::sqrt(static_cast<double>(L.field->q()));
    double worst = 0;
    for (const auto& g : inverse_roots(L)) {
        const Complex z = g / sq;
        const double arg = std::arg(z) * static_cast<double>(N);
        const double mag = std::pow(std::abs(z), static_cast<double>(N));
        worst = std::max(worst, std::abs(std::polar(mag, arg) - 1.0));
    }
    return worst;
}

FomenkoCheck verify_fomenko(const Character& chi) {
    const auto& group = chi.group();
    const FieldPtr& field = group->field();
    const Field& F = *field;
    if (F.p() != 2 || group->level() != 3) throw std::invalid_argument("Fomenko identities need p = 2 and ell = 3");
    if (!chi.is_primitive()) throw std::invalid_argument("Fomenko identities need a primitive character");
    FomenkoCheck out;
    std::tie(out.lambda, out.mu) = fomenko_epsilon(chi);
    const LPolynomial L = l_polynomial(chi);
    if (L.degree() != 2) return out;
    auto at = [&](Elem x) { return chi.evaluate(CosetClass{field, {x, 0, 0}}); };
    const CyclotomicInt beta = at(F.div(out.lambda, out.mu));
    CyclotomicInt rhs = beta;
    for (Elem c = 0; c < F.q(); ++c) {
        const Elem c2 = F.mul(c, c);
        if (F.add(F.add(F.mul(out.mu, F.mul(c2, c)), F.mul(out.lambda, c2)), 1) == 0) {
            rhs += at(c);
            ++out.cubic_roots;
        }
    }
    const BigInt q(F.q());
    out.beta_ok = L.coeffs[2] == beta * q;
    out.alpha_ok = L.coeffs[1] * L.coeffs[1] == rhs * q;
    return out;
}

CubicNormalForm verify_cubic_normal_form(const Character& chi) {
    const auto& group = chi.group();
    const Field& F = *group->field();
    if (F.p() < 5 || group->level() != 3) throw std::invalid_argument("cubic normal form needs p >= 5 and ell = 3");
    if (!chi.is_primitive()) throw std::invalid_argument("cubic normal form needs a primitive character");
    const auto lam = character_lambdas(chi);
    const Elem l1 = lam[0], l2 = lam[1], l3 = lam[2];
    CubicNormalForm out;
    out.a = F.div(l3, F.from_int(3));
    out.b = F.sub(l1, F.div(F.mul(l2, l2), F.mul(F.from_int(4), l3)));
    const Elem shift = F.sub(F.div(F.mul(l1, l2), F.mul(F.from_int(2), l3)),
                             F.div(F.mul(F.mul(l2, l2), l2), F.mul(F.from_int(12), F.mul(l3, l3))));
    out.c = F.trace(shift);

    const std::uint32_t p = F.p();
    std::vector<std::int64_t> counts(p, 0);
    for (Elem x = 0; x < F.q(); ++x) {
        const Elem x3 = F.mul(F.mul(x, x), x);
        counts[F.trace(F.add(F.mul(out.a, x3), F.mul(out.b, x)))]++;
    }
    const CyclotomicInt S = CyclotomicInt::from_exponent_counts(p, counts);
    const LPolynomial L = l_polynomial(chi);
    if (L.degree() != 2) return out;
    const bool linear = L.coeffs[1] == S.times_root(out.c);
    const bool quadratic = L.coeffs[2] == CyclotomicInt::root_of_unity(p, 2 * out.c) * BigInt(F.q());
    out.ok = linear && quadratic;
    return out;
}

}  // namespace ffpc
