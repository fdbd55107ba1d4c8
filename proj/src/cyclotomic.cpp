#include "ffpc/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ffpc {

BigInt big_pow(std::uint64_t b, std::uint64_t e) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), b, e);
    return out;
}

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

std::uint32_t euler_phi(std::uint32_t m) {
    std::uint32_t result = m;
    for (std::uint32_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            while (m % d == 0) m /= d;
            result -= result / d;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

struct OrderContext {
    std::uint32_t m = 1;
    std::uint32_t phi = 1;
    std::vector<long> cyclo;                  // Phi_m, constant term first
    std::vector<std::vector<long>> reduce;   // omega^k in the power basis, k in [0, m)
};

std::vector<long> compute_cyclotomic(std::uint32_t m);

const OrderContext& context(std::uint32_t m) {
    static std::mutex mutex;
    static std::map<std::uint32_t, std::unique_ptr<OrderContext>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[m];
    if (!slot) {
        auto ctx = std::make_unique<OrderContext>();
        ctx->m = m;
        ctx->phi = euler_phi(m);
        ctx->cyclo = compute_cyclotomic(m);
        const std::uint32_t phi = ctx->phi;
        ctx->reduce.assign(m, std::vector<long>(phi, 0));
        std::vector<long> cur(phi, 0);
        cur[0] = 1;
        for (std::uint32_t k = 0; k < m; ++k) {
            ctx->reduce[k] = cur;
            // multiply by x, folding x^phi = -sum_{i<phi} Phi_i x^i
            const long top = cur[phi - 1];
            for (std::uint32_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1] - top * ctx->cyclo[i];
            cur[0] = -top * ctx->cyclo[0];
        }
        slot = std::move(ctx);
    }
    return *slot;
}

std::vector<long> compute_cyclotomic(std::uint32_t m) {
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<long> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (std::uint32_t d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const auto& den = cyclotomic_polynomial(d);
        const std::size_t dd = den.size() - 1;
        std::vector<long> quot(num.size() - dd, 0);
        for (std::size_t i = num.size(); i-- > dd;) {
            const long c = num[i];  // den is monic
            quot[i - dd] = c;
            for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        num = std::move(quot);
    }
    return num;
}

std::uint32_t lcm_u32(std::uint32_t a, std::uint32_t b) { return a / std::gcd(a, b) * b; }

std::uint32_t mod_index(std::int64_t k, std::uint32_t m) {
    std::int64_t r = k % static_cast<std::int64_t>(m);
    if (r < 0) r += m;
    return static_cast<std::uint32_t>(r);
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(std::uint32_t m) {
    if (m == 0) throw std::invalid_argument("cyclotomic order must be positive");
    static std::mutex mutex;
    static std::map<std::uint32_t, std::unique_ptr<std::vector<long>>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(m); it != cache.end()) return *it->second;
    }
    auto poly = std::make_unique<std::vector<long>>(compute_cyclotomic(m));
    std::lock_guard lock(mutex);
    auto& slot = cache[m];
    if (!slot) slot = std::move(poly);
    return *slot;
}

CyclotomicInt::CyclotomicInt() : order_(1), coords_(1, BigInt(0)) {}

CyclotomicInt::CyclotomicInt(std::uint32_t order, const BigInt& n) : order_(order) {
    if (order == 0) throw std::invalid_argument("cyclotomic order must be positive");
    coords_.assign(euler_phi(order), BigInt(0));
    coords_[0] = n;
}

CyclotomicInt CyclotomicInt::root_of_unity(std::uint32_t order, std::int64_t k) {
    const auto& ctx = context(order);
    const auto& red = ctx.reduce[mod_index(k, order)];
    std::vector<BigInt> c(red.begin(), red.end());
    return from_coordinates(order, std::move(c));
}

CyclotomicInt CyclotomicInt::from_exponent_counts(std::uint32_t order, const std::vector<std::int64_t>& counts) {
    const auto& ctx = context(order);
    std::vector<long long> acc(ctx.phi, 0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) continue;
        const auto& red = ctx.reduce[mod_index(static_cast<std::int64_t>(k), order)];
        for (std::uint32_t i = 0; i < ctx.phi; ++i) acc[i] += static_cast<long long>(counts[k]) * red[i];
    }
    std::vector<BigInt> c(ctx.phi);
    for (std::uint32_t i = 0; i < ctx.phi; ++i) c[i] = BigInt(static_cast<long>(acc[i]));
    return from_coordinates(order, std::move(c));
}

CyclotomicInt CyclotomicInt::from_power_coefficients(std::uint32_t order, const std::vector<BigInt>& coeffs) {
    const auto& ctx = context(order);
    std::vector<BigInt> c(ctx.phi, BigInt(0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        if (k < ctx.phi) {
            c[k] += coeffs[k];
            continue;
        }
        const auto& red = ctx.reduce[k % order];
        for (std::uint32_t i = 0; i < ctx.phi; ++i)
            if (red[i] != 0) c[i] += coeffs[k] * red[i];
    }
    return from_coordinates(order, std::move(c));
}

CyclotomicInt CyclotomicInt::from_coordinates(std::uint32_t order, std::vector<BigInt> coords) {
    if (coords.size() != euler_phi(order)) throw std::invalid_argument("coordinate vector has wrong length");
    CyclotomicInt x;
    x.order_ = order;
    x.coords_ = std::move(coords);
    return x;
}

bool CyclotomicInt::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicInt::is_rational_integer() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

CyclotomicInt CyclotomicInt::embed(std::uint32_t M) const {
    if (M == 0 || M % order_ != 0) throw std::invalid_argument("embedding order must be a multiple of the source order");
    if (M == order_) return *this;
    const std::uint32_t step = M / order_;
    std::vector<BigInt> pc(std::size_t(coords_.size() - 1) * step + 1, BigInt(0));
    for (std::size_t i = 0; i < coords_.size(); ++i) pc[i * step] = coords_[i];
    return from_power_coefficients(M, pc);
}

CyclotomicInt CyclotomicInt::galois(std::int64_t lambda) const {
    const std::uint32_t l = mod_index(lambda, order_);
    if (std::gcd(l, order_) != 1 && order_ > 1) throw std::invalid_argument("Galois exponent not coprime to the order");
    std::vector<BigInt> pc(order_, BigInt(0));
    for (std::size_t i = 0; i < coords_.size(); ++i)
        pc[(std::uint64_t(i) * l) % order_] += coords_[i];
    return from_power_coefficients(order_, pc);
}

CyclotomicInt CyclotomicInt::times_root(std::int64_t k) const {
    std::vector<BigInt> pc(order_, BigInt(0));
    const std::uint32_t s = mod_index(k, order_);
    for (std::size_t i = 0; i < coords_.size(); ++i) pc[(i + s) % order_] += coords_[i];
    return from_power_coefficients(order_, pc);
}

std::complex<double> CyclotomicInt::to_complex() const {
    std::complex<double> acc = 0;
    const double step = 2.0 * M_PI / order_;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        acc += coords_[i].get_d() * std::polar(1.0, step * static_cast<double>(i));
    }
    return acc;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
    if (o.order_ != order_) {
        const auto m = lcm_u32(order_, o.order_);
        *this = embed(m);
        return *this += o.embed(m);
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
    if (o.order_ != order_) {
        const auto m = lcm_u32(order_, o.order_);
        *this = embed(m);
        return *this -= o.embed(m);
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const CyclotomicInt& o) {
    if (o.order_ != order_) {
        const auto m = lcm_u32(order_, o.order_);
        *this = embed(m);
        return *this *= o.embed(m);
    }
    const std::size_t n = coords_.size();
    std::vector<BigInt> prod(2 * n - 1, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (o.coords_[j] != 0) prod[i + j] += coords_[i] * o.coords_[j];
    }
    *this = from_power_coefficients(order_, prod);
    return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const BigInt& n) {
    for (auto& c : coords_) c *= n;
    return *this;
}

CyclotomicInt CyclotomicInt::operator-() const {
    CyclotomicInt x = *this;
    for (auto& c : x.coords_) c = -c;
    return x;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.order_ == b.order_) return a.coords_ == b.coords_;
    const auto m = lcm_u32(a.order_, b.order_);
    return a.embed(m).coords_ == b.embed(m).coords_;
}

std::string CyclotomicInt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        BigInt c = coords_[i];
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        if (i == 0)
            os << c.get_str();
        else
            os << c.get_str() << "*w^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

int legendre(std::int64_t a, std::uint32_t p) {
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    if (r == 0) return 0;
    std::uint64_t result = 1, base = static_cast<std::uint64_t>(r), e = (p - 1) / 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result == 1 ? 1 : -1;
}

CyclotomicInt gauss_sum(std::uint32_t p) {
    if (p == 2) throw std::invalid_argument("quadratic Gauss sum needs an odd prime");
    std::vector<std::int64_t> counts(p, 0);
    for (std::uint32_t a = 1; a < p; ++a) counts[a] = legendre(a, p);
    return CyclotomicInt::from_exponent_counts(p, counts);
}

}  // namespace ffpc
