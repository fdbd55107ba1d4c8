#include "ffpc/field.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ffpc {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

int moebius(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

namespace {

// Dense polynomials over F_p, constant term first, trimmed.
using PPoly = std::vector<std::uint32_t>;

void trim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t result = 1, base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

PPoly pmod(PPoly a, const PPoly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
        trim(a);
    }
    return a;
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    return pmod(std::move(c), m, p);
}

PPoly ppowmod(PPoly base, std::uint64_t e, const PPoly& m, std::uint32_t p) {
    PPoly result{1};
    base = pmod(std::move(base), m, p);
    while (e) {
        if (e & 1) result = pmulmod(result, base, m, p);
        base = pmulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

PPoly pgcd(PPoly a, PPoly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = pmod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

std::vector<std::uint32_t> decode(std::uint32_t code, std::uint32_t p, std::uint32_t r) {
    std::vector<std::uint32_t> d(r);
    for (std::uint32_t i = 0; i < r; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

std::uint32_t encode(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    std::uint32_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
    return code;
}

}  // namespace

bool is_irreducible_over_prime_field(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    PPoly f = poly;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t n = f.size() - 1;
    if (n == 1) return true;
    PPoly xpow{0, 1};
    for (std::size_t k = 1; k <= n / 2; ++k) {
        xpow = ppowmod(xpow, p, f, p);
        PPoly diff = xpow;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;  // f divides x^{p^k} - x
        if (pgcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t r,
                     std::optional<std::vector<std::uint32_t>> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic is not prime: " + std::to_string(p));
    if (r == 0) throw std::invalid_argument("field degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > kMaxFieldSize) throw std::invalid_argument("field size exceeds 2^16");
    }

    std::vector<std::uint32_t> m;
    if (modulus) {
        m = *modulus;
        if (m.size() != r + 1 || m.back() != 1)
            throw std::invalid_argument("modulus must be monic of degree " + std::to_string(r));
        for (auto c : m)
            if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
        if (!is_irreducible_over_prime_field(m, p))
            throw std::invalid_argument("modulus is reducible over F_" + std::to_string(p));
    } else {
        // Constant term is the most significant position of the search order.
        for (std::uint64_t code = 0; code < q; ++code) {
            m.assign(r + 1, 0);
            std::uint64_t c = code;
            for (std::uint32_t i = r; i-- > 0;) {
                m[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            m[r] = 1;
            if (is_irreducible_over_prime_field(m, p)) break;
        }
    }

    auto field = std::shared_ptr<Field>(new Field());
    field->p_ = p;
    field->r_ = r;
    field->q_ = static_cast<std::uint32_t>(q);
    field->modulus_ = std::move(m);
    field->build_tables();
    return field;
}

FieldPtr Field::parse(std::string_view spec) {
    auto parse_uint = [&](std::string_view s) -> std::uint64_t {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw std::invalid_argument("malformed field spec: " + std::string(spec));
        return v;
    };
    std::string_view head = spec;
    std::optional<std::uint64_t> mcode;
    if (auto colon = spec.find(':'); colon != std::string_view::npos) {
        head = spec.substr(0, colon);
        mcode = parse_uint(spec.substr(colon + 1));
    }
    std::uint64_t p = 0, r = 1;
    if (auto caret = head.find('^'); caret != std::string_view::npos) {
        p = parse_uint(head.substr(0, caret));
        r = parse_uint(head.substr(caret + 1));
    } else {
        // bare prime power q
        const std::uint64_t q = parse_uint(head);
        const auto f = prime_factors(q);
        if (f.size() != 1) throw std::invalid_argument("not a prime power: " + std::string(spec));
        p = f[0];
        r = 0;
        for (std::uint64_t x = q; x > 1; x /= p) ++r;
    }
    if (p > kMaxFieldSize || r > 16) throw std::invalid_argument("field too large: " + std::string(spec));
    std::optional<std::vector<std::uint32_t>> modulus;
    if (mcode) {
        std::vector<std::uint32_t> m;
        std::uint64_t c = *mcode;
        while (c) {
            m.push_back(static_cast<std::uint32_t>(c % p));
            c /= p;
        }
        modulus = std::move(m);
    }
    return make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r), modulus);
}

std::uint64_t Field::modulus_code() const {
    std::uint64_t code = 0;
    for (std::size_t i = modulus_.size(); i-- > 0;) code = code * p_ + modulus_[i];
    return code;
}

std::string Field::spec() const { return short_spec() + ":" + std::to_string(modulus_code()); }

std::string Field::short_spec() const { return std::to_string(p_) + "^" + std::to_string(r_); }

void Field::build_tables() {
    const PPoly m(modulus_.begin(), modulus_.end());
    auto naive_mul = [&](std::uint32_t a, std::uint32_t b) {
        PPoly x = decode(a, p_, r_), y = decode(b, p_, r_);
        trim(x);
        trim(y);
        PPoly z = pmulmod(x, y, m, p_);
        z.resize(r_, 0);
        return encode(z, p_);
    };

    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        auto d = decode(a, p_, r_);
        for (auto& x : d) x = (p_ - x) % p_;
        neg_[a] = encode(d, p_);
    }
    if (p_ != 2 && r_ > 1 && q_ <= 256) {
        add_table_.resize(std::size_t(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            auto da = decode(a, p_, r_);
            for (std::uint32_t b = 0; b < q_; ++b) {
                auto db = decode(b, p_, r_);
                for (std::uint32_t i = 0; i < r_; ++i) db[i] = (db[i] + da[i]) % p_;
                add_table_[std::size_t(a) * q_ + b] = static_cast<std::uint16_t>(encode(db, p_));
            }
        }
    }

    // Primitive element: smallest encoding whose order is q-1.
    const std::uint32_t n = q_ - 1;
    const auto factors = prime_factors(n);
    auto naive_pow = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t result = 1, base = a;
        while (e) {
            if (e & 1) result = naive_mul(result, base);
            base = naive_mul(base, base);
            e >>= 1;
        }
        return result;
    };
    generator_ = 1;
    if (q_ > 2) {
        for (std::uint32_t g = 2; g < q_; ++g) {
            bool ok = true;
            for (auto s : factors)
                if (naive_pow(g, n / s) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                generator_ = g;
                break;
            }
        }
    }

    log_.assign(q_, 0);
    exp_.assign(2 * std::size_t(n), 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = x;
        exp_[i + n] = x;
        log_[x] = i;
        x = naive_mul(x, generator_);
    }
    if (x != 1) throw std::logic_error("primitive element search failed");

    // Tr(a) = a + a^p + ... + a^{p^{r-1}} lies in the prime field, so only digit 0 survives.
    trace_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        Elem s = 0, y = a;
        for (std::uint32_t i = 0; i < r_; ++i) {
            s = add(s, y);
            y = frobenius(y);
        }
        if (s >= p_) throw std::logic_error("trace left the prime field");
        trace_[a] = static_cast<std::uint8_t>(s);
    }
}

Elem Field::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (r_ == 1) {
        const std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
    Elem out = 0, place = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        out += ((a % p_ + b % p_) % p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return out;
}

Elem Field::neg(Elem a) const { return neg_[a]; }

Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_q");
    const std::uint32_t n = q_ - 1;
    return exp_[(n - log_[a]) % n];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t n = q_ - 1;
    return exp_[(std::uint64_t(log_[a]) * (e % n)) % n];
}

Elem Field::from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += p_;
    return static_cast<Elem>(m);
}

std::uint32_t Field::digit(Elem a, std::uint32_t i) const {
    for (std::uint32_t k = 0; k < i; ++k) a /= p_;
    return a % p_;
}

Elem Field::basis(std::uint32_t i) const {
    Elem b = 1;
    for (std::uint32_t k = 0; k < i; ++k) b *= p_;
    return b;
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
    if (!field_ || !field_->valid(value_)) throw std::invalid_argument("field element out of range");
}

FieldElement FieldElement::operator+(const FieldElement& o) const { return {field_, field_->add(value_, o.value_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const { return {field_, field_->sub(value_, o.value_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { return {field_, field_->mul(value_, o.value_)}; }
FieldElement FieldElement::operator/(const FieldElement& o) const { return {field_, field_->div(value_, o.value_)}; }
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inverse() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }

FieldEmbedding::FieldEmbedding(FieldPtr small, FieldPtr big)
    : small_(std::move(small)), big_(std::move(big)) {
    if (small_->p() != big_->p() || big_->r() % small_->r() != 0)
        throw std::invalid_argument("no embedding of F_" + small_->short_spec() + " into F_" + big_->short_spec());
    degree_ = big_->r() / small_->r();

    // A root of the small modulus inside the big field.
    const auto& m = small_->modulus();
    Elem theta = 0;
    bool found = false;
    for (Elem x = 0; x < big_->q() && !found; ++x) {
        Elem acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) acc = big_->add(big_->mul(acc, x), big_->from_int(m[i]));
        if (acc == 0) {
            theta = x;
            found = true;
        }
    }
    if (!found) throw std::logic_error("small modulus has no root in the big field");

    to_big_.resize(small_->q());
    from_big_.assign(big_->q(), -1);
    for (Elem a = 0; a < small_->q(); ++a) {
        Elem acc = 0, power = 1;
        for (std::uint32_t i = 0; i < small_->r(); ++i) {
            acc = big_->add(acc, big_->mul(big_->from_int(small_->digit(a, i)), power));
            power = big_->mul(power, theta);
        }
        to_big_[a] = acc;
        from_big_[acc] = static_cast<std::int32_t>(a);
    }
}

Elem FieldEmbedding::to_small(Elem b) const {
    if (from_big_[b] < 0) throw std::domain_error("element is not in the subfield");
    return static_cast<Elem>(from_big_[b]);
}

}  // namespace ffpc
