#include "ffpc/coset.hpp"

#include <charconv>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ffpc {

namespace {

void require_same(const CosetClass& A, const CosetClass& B) {
    if (A.field != B.field) throw std::invalid_argument("classes over different fields");
    if (A.level() != B.level()) throw std::invalid_argument("classes at different levels");
}

// Truncated series product of (0, y_1, ..., y_m) and (0, z_1, ..., z_m), zero constant terms.
std::vector<Elem> series_mul0(const Field& F, const std::vector<Elem>& y, const std::vector<Elem>& z) {
    const std::size_t m = y.size();
    std::vector<Elem> out(m, 0);
    for (std::size_t i = 1; i <= m; ++i) {
        if (y[i - 1] == 0) continue;
        for (std::size_t j = 1; i + j <= m; ++j) out[i + j - 1] = F.add(out[i + j - 1], F.mul(y[i - 1], z[j - 1]));
    }
    return out;
}

void require_large_characteristic(const Field& F, std::size_t ell) {
    if (F.p() <= ell) throw std::invalid_argument("truncated log/exp need p > ell");
}

std::uint32_t small_binom_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    if (k > n) return 0;
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t j = 0; j < k; ++j) {
        num = num * ((n - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    BigInt inv, d(static_cast<unsigned long>(den)), mod(p);
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
    return static_cast<std::uint32_t>((num * inv.get_ui()) % p);
}

}  // namespace

bool CosetClass::is_identity() const {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

std::string CosetClass::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    return os.str();
}

CosetClass CosetClass::parse(const FieldPtr& field, std::string_view text) {
    CosetClass c{field, {}};
    if (text.empty()) return c;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size() || item.empty() || !field->valid(v))
            throw std::invalid_argument("malformed class tuple: " + std::string(text));
        c.a.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return c;
}

CosetClass CosetClass::identity(const FieldPtr& field, std::size_t level) {
    return CosetClass{field, std::vector<Elem>(level, 0)};
}

CosetClass coset_of(const MonicPoly& f, std::size_t ell) {
    CosetClass c{f.field(), std::vector<Elem>(ell, 0)};
    for (std::size_t j = 1; j <= ell; ++j) c.a[j - 1] = f.next_to_leading(j);
    return c;
}

CosetClass group_mul(const CosetClass& A, const CosetClass& B) {
    require_same(A, B);
    const Field& F = *A.field;
    auto prod = series_mul0(F, A.a, B.a);
    for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = F.add(prod[j], F.add(A.a[j], B.a[j]));
    return CosetClass{A.field, std::move(prod)};
}

CosetClass group_inverse(const CosetClass& A) {
    // b_j = -(a_j + sum_{i<j} a_i b_{j-i})
    const Field& F = *A.field;
    std::vector<Elem> b(A.level(), 0);
    for (std::size_t j = 1; j <= b.size(); ++j) {
        Elem s = A.a[j - 1];
        for (std::size_t i = 1; i < j; ++i) s = F.add(s, F.mul(A.a[i - 1], b[j - i - 1]));
        b[j - 1] = F.neg(s);
    }
    return CosetClass{A.field, std::move(b)};
}

std::uint64_t group_exponent(std::uint32_t p, std::size_t ell) {
    std::uint64_t e = 1;
    while (e < ell + 1) e *= p;
    return e;
}

CosetClass group_pow(const CosetClass& A, std::int64_t k) {
    const std::int64_t e = static_cast<std::int64_t>(group_exponent(A.field->p(), A.level()));
    std::int64_t m = k % e;
    if (m < 0) m += e;
    CosetClass result = CosetClass::identity(A.field, A.level()), base = A;
    while (m) {
        if (m & 1) result = group_mul(result, base);
        m >>= 1;
        if (m) base = group_mul(base, base);
    }
    return result;
}

std::vector<Elem> truncated_log(const CosetClass& A) {
    const Field& F = *A.field;
    const std::size_t ell = A.level();
    require_large_characteristic(F, ell);
    std::vector<Elem> out(ell, 0), power = A.a;
    for (std::size_t k = 1; k <= ell; ++k) {
        const Elem coeff = F.div(F.from_int(k % 2 ? 1 : -1), F.from_int(static_cast<std::int64_t>(k)));
        for (std::size_t j = 0; j < ell; ++j) out[j] = F.add(out[j], F.mul(coeff, power[j]));
        power = series_mul0(F, power, A.a);
    }
    return out;
}

CosetClass truncated_exp(const FieldPtr& field, const std::vector<Elem>& v) {
    const Field& F = *field;
    const std::size_t ell = v.size();
    require_large_characteristic(F, ell);
    std::vector<Elem> out(ell, 0), power = v;
    Elem fact = 1;
    for (std::size_t k = 1; k <= ell; ++k) {
        fact = F.mul(fact, F.from_int(static_cast<std::int64_t>(k)));
        const Elem coeff = F.inv(fact);
        for (std::size_t j = 0; j < ell; ++j) out[j] = F.add(out[j], F.mul(coeff, power[j]));
        power = series_mul0(F, power, v);
    }
    return CosetClass{field, std::move(out)};
}

std::uint32_t binom_padic(const BigInt& num, const BigInt& den, std::uint64_t s, std::uint32_t p) {
    const BigInt P(p);
    if (den % P == 0) throw std::domain_error("binom_padic: denominator divisible by p");
    if (s == 0) return 1;
    BigInt M = 1;
    while (M <= BigInt(static_cast<unsigned long>(s))) M *= P;
    BigInt inv;
    BigInt dm = den % M;
    if (dm < 0) dm += M;
    mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), M.get_mpz_t());
    BigInt x = (num * inv) % M;
    if (x < 0) x += M;
    std::uint64_t xs = x.get_ui(), rest = s;
    std::uint64_t result = 1;
    while (rest) {
        result = result * small_binom_mod(xs % p, rest % p, p) % p;
        xs /= p;
        rest /= p;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t rational_mod_p(BigInt num, BigInt den, std::uint32_t p) {
    if (den == 0) throw std::domain_error("rational_mod_p: zero denominator");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 0) {
        num /= g;
        den /= g;
    }
    const BigInt P(p);
    if (den % P == 0) throw std::domain_error("rational_mod_p: value is not p-integral");
    BigInt dm = den % P;
    if (dm < 0) dm += P;
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), P.get_mpz_t());
    BigInt r = (num * inv) % P;
    if (r < 0) r += P;
    return static_cast<std::uint32_t>(r.get_ui());
}

std::vector<Elem> series_power(const Field& F, const std::vector<Elem>& a, const BigInt& num, const BigInt& den) {
    const std::size_t m = a.size();
    const std::uint32_t p = F.p();
    std::vector<Elem> out(m, 0);
    std::vector<std::uint64_t> c(m + 1, 0);
    for (std::size_t j = 1; j <= m; ++j) {
        // all (c_1..c_m) with sum i c_i = j, generated from the largest part down
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t remaining) {
            if (i == 0) {
                if (remaining != 0) return;
                std::uint64_t s = 0;
                Elem term = 1;
                for (std::size_t t = 1; t <= m; ++t) {
                    s += c[t];
                    if (c[t]) term = F.mul(term, F.pow(a[t - 1], c[t]));
                }
                if (term == 0) return;
                BigInt multinomial;
                mpz_fac_ui(multinomial.get_mpz_t(), s);
                for (std::size_t t = 1; t <= m; ++t) {
                    BigInt f;
                    mpz_fac_ui(f.get_mpz_t(), c[t]);
                    multinomial /= f;
                }
                const std::uint64_t mult = BigInt(multinomial % p).get_ui();
                const std::uint64_t coeff = mult * binom_padic(num, den, s, p) % p;
                out[j - 1] = F.add(out[j - 1], F.mul(term, F.from_int(static_cast<std::int64_t>(coeff))));
                return;
            }
            for (std::size_t k = 0; k * i <= remaining; ++k) {
                c[i] = k;
                rec(i - 1, remaining - k * i);
            }
            c[i] = 0;
        };
        rec(j, j);
    }
    return out;
}

std::uint64_t PowerRoots::size(std::uint32_t q) const {
    if (empty) return 0;
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < free; ++i) s *= q;
    return s;
}

std::vector<CosetClass> PowerRoots::enumerate(const FieldPtr& field) const {
    std::vector<CosetClass> out;
    if (empty) return out;
    std::vector<Elem> b = fixed;
    b.resize(fixed.size() + free, 0);
    const std::size_t ell = b.size();
    while (true) {
        out.push_back(CosetClass{field, b});
        std::size_t j = ell;
        while (j > fixed.size()) {
            if (++b[j - 1] < field->q()) break;
            b[j - 1] = 0;
            --j;
        }
        if (j == fixed.size()) break;
    }
    return out;
}

PowerRoots solve_power(const CosetClass& A, std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("solve_power: d must be positive");
    const Field& F = *A.field;
    const std::uint32_t p = F.p();
    std::uint64_t dp = 1, k = d;
    while (k % p == 0) {
        k /= p;
        dp *= p;
    }
    const std::size_t ell = A.level();
    PowerRoots roots;
    for (std::size_t i = 1; i <= ell; ++i)
        if (i % dp != 0 && A.a[i - 1] != 0) return roots;
    const std::size_t m = ell / dp;
    // q^e >= d' with e minimal; a^{q^e/d'} is the d'-th root of a
    std::uint64_t qe = 1;
    while (qe < dp) qe *= F.q();
    const std::uint64_t root_exp = qe / dp;
    std::vector<Elem> tilde(m);
    for (std::size_t i = 1; i <= m; ++i) tilde[i - 1] = F.pow(A.a[i * dp - 1], root_exp);
    roots.empty = false;
    roots.fixed = series_power(F, tilde, BigInt(1), BigInt(static_cast<unsigned long>(k)));
    roots.free = ell - m;
    return roots;
}

}  // namespace ffpc
