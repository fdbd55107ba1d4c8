#include "ffpc/poly.hpp"

#include <array>
#include <bit>
#include <cstdlib>
#include <sstream>

#include "ffpc/parallel.hpp"

namespace ffpc {

namespace {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > (std::uint64_t(1) << 62) / b) throw std::overflow_error("power overflows 64 bits");
        r *= b;
    }
    return r;
}

}  // namespace

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(c);
    return c;
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(c);
    return c;
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
    trim(c);
    return c;
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Poly r = a;
    trim(r);
    const std::size_t db = b.size() - 1;
    if (r.size() <= db) return {{}, r};
    Poly q(r.size() - db, 0);
    const Elem lead_inv = F.inv(b.back());
    for (std::size_t i = r.size(); i-- > db;) {
        const Elem c = F.mul(r[i], lead_inv);
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]));
    }
    r.resize(db);
    trim(r);
    trim(q);
    return {q, r};
}

Poly poly_mod(const Field& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

Poly poly_gcd(const Field& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = poly_mod(F, a, b);
        std::swap(a, b);
    }
    if (!a.empty()) {
        const Elem inv = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, inv);
    }
    return a;
}

Poly poly_derivative(const Field& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = F.scale(a[i], static_cast<std::int64_t>(i));
    trim(d);
    return d;
}

Poly poly_pow(const Field& F, const Poly& a, std::uint64_t e) {
    Poly result{1}, base = a;
    while (e) {
        if (e & 1) result = poly_mul(F, result, base);
        e >>= 1;
        if (e) base = poly_mul(F, base, base);
    }
    return result;
}

Poly poly_powmod(const Field& F, const Poly& a, std::uint64_t e, const Poly& m) {
    Poly result = poly_mod(F, Poly{1}, m), base = poly_mod(F, a, m);
    while (e) {
        if (e & 1) result = poly_mod(F, poly_mul(F, result, base), m);
        e >>= 1;
        if (e) base = poly_mod(F, poly_mul(F, base, base), m);
    }
    return result;
}

MonicPoly::MonicPoly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (auto c : coeffs_)
        if (!field_->valid(c)) throw std::invalid_argument("coefficient outside the field");
}

MonicPoly MonicPoly::from_dense(FieldPtr field, const Poly& dense) {
    if (dense.empty() || dense.back() != 1) throw std::invalid_argument("polynomial is not monic");
    std::vector<Elem> c(dense.size() - 1);
    for (std::size_t j = 1; j < dense.size(); ++j) c[j - 1] = dense[dense.size() - 1 - j];
    return MonicPoly(std::move(field), std::move(c));
}

Poly MonicPoly::dense() const {
    const std::size_t n = coeffs_.size();
    Poly d(n + 1);
    d[n] = 1;
    for (std::size_t j = 1; j <= n; ++j) d[n - j] = coeffs_[j - 1];
    return d;
}

std::string MonicPoly::to_string() const {
    const std::size_t n = coeffs_.size();
    std::ostringstream os;
    auto term = [&](Elem c, std::size_t k) {
        if (c != 1 || k == 0) os << c;
        if (c != 1 && k > 0) os << '*';
        if (k >= 1) os << 'T';
        if (k >= 2) os << '^' << k;
    };
    term(1, n);
    for (std::size_t j = 1; j <= n; ++j) {
        if (coeffs_[j - 1] == 0) continue;
        os << '+';
        term(coeffs_[j - 1], n - j);
    }
    return os.str();
}

MonicPoly MonicPoly::operator*(const MonicPoly& o) const {
    if (field_ != o.field_) throw std::invalid_argument("polynomials over different fields");
    return from_dense(field_, poly_mul(*field_, dense(), o.dense()));
}

std::uint64_t monic_count(const Field& F, std::size_t n, std::span<const Elem> prefix) {
    const std::size_t ell = prefix.size();
    if (n < ell) {
        for (std::size_t j = n; j < ell; ++j)
            if (prefix[j] != 0) return 0;
        return 1;
    }
    return checked_pow(F.q(), n - ell);
}

void enumerate_monic(const FieldPtr& field, std::size_t n, std::span<const Elem> prefix,
                     const std::function<void(const MonicPoly&)>& fn) {
    const std::size_t ell = prefix.size();
    if (n < ell) {
        if (monic_count(*field, n, prefix) == 1) fn(MonicPoly(field, std::vector<Elem>(prefix.begin(), prefix.begin() + n)));
        return;
    }
    std::vector<Elem> c(n, 0);
    std::copy(prefix.begin(), prefix.end(), c.begin());
    const Elem q = field->q();
    while (true) {
        fn(MonicPoly(field, c));
        std::size_t j = n;
        while (j > ell) {
            if (++c[j - 1] < q) break;
            c[j - 1] = 0;
            --j;
        }
        if (j == ell) return;
    }
}

bool is_irreducible(const MonicPoly& f) {
    const std::size_t n = f.degree();
    if (n == 0) throw std::invalid_argument("irreducibility of a constant polynomial");
    if (n == 1) return true;
    const Field& F = *f.field();
    const Poly m = f.dense();
    const Poly x{0, 1};
    // xq[k] = x^{q^k} mod f
    std::vector<Poly> xq(n + 1);
    xq[0] = poly_mod(F, x, m);
    for (std::size_t k = 1; k <= n; ++k) xq[k] = poly_powmod(F, xq[k - 1], F.q(), m);
    if (!poly_sub(F, xq[n], poly_mod(F, x, m)).empty()) return false;
    for (auto s : prime_factors(n)) {
        const Poly h = poly_sub(F, xq[n / s], x);
        if (poly_gcd(F, m, h).size() > 1) return false;
    }
    return true;
}

std::uint32_t von_mangoldt(const MonicPoly& f) {
    if (f.degree() == 0) throw std::invalid_argument("von Mangoldt of a constant polynomial");
    const Field& F = *f.field();
    Poly g = f.dense();
    while (true) {
        const Poly d = poly_derivative(F, g);
        if (!d.empty()) break;
        // g = h^p with h_i = g_{ip}^{q/p}
        Poly h(g.size() / F.p() + 1, 0);
        for (std::size_t i = 0; i * F.p() < g.size(); ++i) h[i] = F.pow(g[i * F.p()], F.q() / F.p());
        trim(h);
        g = std::move(h);
    }
    const Poly rad = poly_divmod(F, g, poly_gcd(F, g, poly_derivative(F, g))).first;
    const std::size_t dr = rad.size() - 1, dg = g.size() - 1;
    if (dg % dr != 0) return 0;
    if (!is_irreducible(MonicPoly::from_dense(f.field(), rad))) return 0;
    if (poly_pow(F, rad, dg / dr) != g) return 0;
    return static_cast<std::uint32_t>(dr);
}

BruteBudget BruteBudget::from_env() {
    BruteBudget b;
    if (const char* env = std::getenv("FFPC_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) b.limit = v;
    }
    return b;
}

void BruteBudget::check(std::uint32_t q, std::size_t n) const {
    if (force) return;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= q;
        if (total > limit)
            throw BudgetExceeded("brute force over " + std::to_string(q) + "^" + std::to_string(n) +
                                 " polynomials exceeds the budget of " + std::to_string(limit) + " (use --force)");
    }
}

std::uint64_t class_index(const Field& F, std::span<const Elem> t) {
    std::uint64_t idx = 0;
    for (std::size_t i = t.size(); i-- > 0;) idx = idx * F.q() + t[i];
    return idx;
}

namespace {

// ---- generic F_q path on fixed-size buffers ----

constexpr int kMaxGenericDegree = 40;

struct SmallPoly {
    std::array<Elem, 2 * kMaxGenericDegree + 2> c{};
    int deg = -1;

    void normalize() {
        while (deg >= 0 && c[deg] == 0) --deg;
    }
};

// a <- a mod f, f monic of degree m >= 1
void reduce_monic(const Field& F, SmallPoly& a, const SmallPoly& f) {
    const int m = f.deg;
    for (int i = a.deg; i >= m; --i) {
        const Elem c = a.c[i];
        if (c == 0) continue;
        for (int j = 0; j < m; ++j)
            if (f.c[j]) a.c[i - m + j] = F.sub(a.c[i - m + j], F.mul(c, f.c[j]));
        a.c[i] = 0;
    }
    if (a.deg >= m) a.deg = m - 1;
    a.normalize();
}

void mulmod(const Field& F, const SmallPoly& a, const SmallPoly& b, const SmallPoly& f, SmallPoly& out) {
    SmallPoly r;
    if (a.deg >= 0 && b.deg >= 0) {
        r.deg = a.deg + b.deg;
        for (int i = 0; i <= a.deg; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; j <= b.deg; ++j) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
        }
        r.normalize();
        reduce_monic(F, r, f);
    }
    out = r;
}

// general remainder (b nonzero, not necessarily monic)
void rem(const Field& F, SmallPoly& a, const SmallPoly& b) {
    const Elem inv = F.inv(b.c[b.deg]);
    for (int i = a.deg; i >= b.deg; --i) {
        const Elem c = F.mul(a.c[i], inv);
        if (c == 0) continue;
        for (int j = 0; j <= b.deg; ++j) a.c[i - b.deg + j] = F.sub(a.c[i - b.deg + j], F.mul(c, b.c[j]));
    }
    if (a.deg >= b.deg) a.deg = b.deg - 1;
    a.normalize();
}

int gcd_degree(const Field& F, SmallPoly a, SmallPoly b) {
    while (b.deg >= 0) {
        rem(F, a, b);
        std::swap(a, b);
    }
    return a.deg;
}

// Ben-Or: no factor of degree <= m/2, checked through gcd(f, x^{q^i} - x).
bool irreducible_generic(const Field& F, const SmallPoly& f) {
    const int m = f.deg;
    if (m == 1) return true;
    if (f.c[0] == 0) return false;
    SmallPoly h;
    h.c[1] = 1;
    h.deg = 1;
    const std::uint32_t q = F.q();
    for (int i = 1; i <= m / 2; ++i) {
        SmallPoly base = h, acc;
        acc.c[0] = 1;
        acc.deg = 0;
        for (std::uint32_t e = q; e; e >>= 1) {
            if (e & 1) mulmod(F, acc, base, f, acc);
            if (e > 1) mulmod(F, base, base, f, base);
        }
        h = acc;
        SmallPoly g = h;
        if (g.deg < 1) g.deg = 1;
        g.c[1] = F.sub(g.c[1], 1);
        g.normalize();
        if (g.deg < 0) return false;
        if (gcd_degree(F, f, g) > 0) return false;
    }
    return true;
}

// ---- F_2 path on bit masks: bit i is the coefficient of x^i ----

using u128 = unsigned __int128;

const std::array<std::uint16_t, 256>& spread_table() {
    static const auto table = [] {
        std::array<std::uint16_t, 256> t{};
        for (unsigned v = 0; v < 256; ++v) {
            std::uint16_t s = 0;
            for (unsigned b = 0; b < 8; ++b)
                if (v >> b & 1) s |= std::uint16_t(1u << (2 * b));
            t[v] = s;
        }
        return t;
    }();
    return table;
}

inline u128 gf2_square(std::uint64_t a) {
    const auto& t = spread_table();
    u128 r = 0;
    for (int byte = 0; byte < 8 && a; ++byte, a >>= 8) r |= u128(t[a & 0xff]) << (16 * byte);
    return r;
}

inline int deg128(u128 x) {
    const std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
    if (hi) return 127 - std::countl_zero(hi);
    const std::uint64_t lo = static_cast<std::uint64_t>(x);
    return lo ? 63 - std::countl_zero(lo) : -1;
}

inline std::uint64_t gf2_mod(u128 x, std::uint64_t f, int m) {
    for (int d = deg128(x); d >= m; d = deg128(x)) x ^= u128(f) << (d - m);
    return static_cast<std::uint64_t>(x);
}

inline int deg64(std::uint64_t x) { return x ? 63 - std::countl_zero(x) : -1; }

inline std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        const int db = deg64(b);
        for (int d = deg64(a); d >= db; d = deg64(a)) a ^= b << (d - db);
        std::swap(a, b);
    }
    return a;
}

inline std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    for (; b; b &= b - 1) r ^= a << std::countr_zero(b);
    return r;
}

bool irreducible_gf2(std::uint64_t f, int m) {
    if (m == 1) return true;
    if ((f & 1) == 0) return false;                 // divisible by x
    if (std::popcount(f) % 2 == 0) return false;    // divisible by x + 1
    std::uint64_t h = 2;
    for (int i = 1; i <= m / 2; ++i) {
        h = gf2_mod(gf2_square(h), f, m);
        const std::uint64_t g = h ^ 2;
        if (g == 0) return false;
        if (gf2_gcd(f, g) != 1) return false;
    }
    return true;
}

struct Accum {
    std::vector<std::uint64_t> psi, pi;
};

}  // namespace

BruteTable brute_table(const FieldPtr& field, std::size_t n, std::size_t max_level, const BruteBudget& budget) {
    if (n == 0) throw std::invalid_argument("degree must be positive");
    const Field& F = *field;
    const std::uint32_t q = F.q();
    budget.check(q, n);
    const std::uint64_t top = checked_pow(q, max_level);
    const bool gf2 = (q == 2 && n <= 62);
    if (!gf2 && n > static_cast<std::size_t>(kMaxGenericDegree))
        throw std::invalid_argument("degree too large for brute force");

    const unsigned workers = worker_count();
    std::vector<Accum> acc(workers, Accum{std::vector<std::uint64_t>(top, 0), std::vector<std::uint64_t>(top, 0)});

    for (auto d64 : divisors(n)) {
        const std::size_t d = d64, k = n / d;
        const std::uint64_t count = checked_pow(q, d);
        parallel_shards(count, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
            auto& local = acc[w];
            if (gf2) {
                for (std::uint64_t low = begin; low < end; ++low) {
                    const std::uint64_t g = (std::uint64_t(1) << d) | low;
                    if (!irreducible_gf2(g, static_cast<int>(d))) continue;
                    std::uint64_t power = g;
                    for (std::size_t i = 1; i < k; ++i) power = gf2_mul(power, g);
                    std::uint64_t idx = 0;
                    for (std::size_t j = 1; j <= std::min(max_level, n); ++j)
                        if (power >> (n - j) & 1) idx |= std::uint64_t(1) << (j - 1);
                    local.psi[idx] += d;
                    if (k == 1) local.pi[idx] += 1;
                }
                return;
            }
            // digits[j-1] = a_j; the enumeration index is sum a_j q^{j-1}
            std::vector<Elem> digits(d, 0);
            std::uint64_t rest = begin;
            for (std::size_t j = 0; j < d; ++j) {
                digits[j] = static_cast<Elem>(rest % q);
                rest /= q;
            }
            SmallPoly g;
            g.deg = static_cast<int>(d);
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                g.c[d] = 1;
                for (std::size_t j = 1; j <= d; ++j) g.c[d - j] = digits[j - 1];
                if (irreducible_generic(F, g)) {
                    std::uint64_t cls = 0;
                    if (k == 1) {
                        cls = idx % top;
                    } else {
                        Poly gd(g.c.begin(), g.c.begin() + d + 1);
                        const Poly pw = poly_pow(F, gd, k);
                        for (std::size_t j = std::min(max_level, n); j >= 1; --j) cls = cls * q + pw[n - j];
                    }
                    local.psi[cls] += d;
                    if (k == 1) local.pi[cls] += 1;
                }
                for (std::size_t j = 0; j < d; ++j) {
                    if (++digits[j] < q) break;
                    digits[j] = 0;
                }
            }
        }, workers);
    }

    BruteTable table;
    table.field = field;
    table.n = n;
    table.max_level = max_level;
    table.psi.resize(max_level + 1);
    table.pi.resize(max_level + 1);
    for (std::size_t ell = 0; ell <= max_level; ++ell) {
        const std::uint64_t size = checked_pow(q, ell);
        table.psi[ell].assign(size, 0);
        table.pi[ell].assign(size, 0);
        for (const auto& a : acc)
            for (std::uint64_t idx = 0; idx < top; ++idx) {
                table.psi[ell][idx % size] += a.psi[idx];
                table.pi[ell][idx % size] += a.pi[idx];
            }
    }
    return table;
}

std::uint64_t brute_psi(const FieldPtr& field, std::size_t n, std::span<const Elem> t, const BruteBudget& budget) {
    const auto table = brute_table(field, n, t.size(), budget);
    return table.psi[t.size()][class_index(*field, t)];
}

std::uint64_t brute_pi(const FieldPtr& field, std::size_t n, std::span<const Elem> t, const BruteBudget& budget) {
    const auto table = brute_table(field, n, t.size(), budget);
    return table.pi[t.size()][class_index(*field, t)];
}

BigInt gauss_count(std::uint32_t q, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("degree must be positive");
    BigInt sum = 0;
    for (auto d : divisors(n)) {
        const int mu = moebius(d);
        if (mu) sum += mu * big_pow(q, n / d);
    }
    if (sum % n != 0) throw std::logic_error("Gauss count not divisible by n");
    return sum / BigInt(static_cast<unsigned long>(n));
}

MonicPoly frobenius_poly(const FieldEmbedding& emb, const MonicPoly& A, std::int64_t i) {
    if (A.field() != emb.big()) throw std::invalid_argument("polynomial is not over the big field");
    const std::int64_t r = emb.degree();
    const std::int64_t steps = ((i % r) + r) % r;
    std::vector<Elem> c = A.coeffs();
    for (std::int64_t s = 0; s < steps; ++s)
        for (auto& x : c) x = emb.frobenius(x);
    return MonicPoly(A.field(), std::move(c));
}

MonicPoly norm_poly(const FieldEmbedding& emb, const MonicPoly& A) {
    MonicPoly acc = MonicPoly::one(emb.big());
    for (std::uint32_t i = 0; i < emb.degree(); ++i) acc = acc * frobenius_poly(emb, A, i);
    std::vector<Elem> c(acc.degree());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = emb.to_small(acc.coeffs()[j]);
    return MonicPoly(emb.small(), std::move(c));
}

}  // namespace ffpc
