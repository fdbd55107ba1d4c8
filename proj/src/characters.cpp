#include "ffpc/characters.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>

#include "ffpc/poly.hpp"

namespace ffpc {

// Groups are shared per (field, level) so characters built independently compare equal.
CharacterGroupPtr CharacterGroup::make(FieldPtr field, std::size_t level, std::uint64_t budget) {
    const std::uint32_t q = field->q(), p = field->p();
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < level; ++i) {
        size *= q;
        if (size > budget)
            throw BudgetExceeded("q^ell = " + std::to_string(q) + "^" + std::to_string(level) +
                                 " exceeds the character budget of " + std::to_string(budget));
    }
    static std::mutex cache_mutex;
    static std::map<std::pair<const Field*, std::size_t>, std::weak_ptr<const CharacterGroup>> cache;
    std::lock_guard lock(cache_mutex);
    const auto key = std::make_pair(field.get(), level);
    if (auto it = cache.find(key); it != cache.end())
        if (auto hit = it->second.lock(); hit && hit->field_ == field) return hit;

    auto g = std::shared_ptr<CharacterGroup>(new CharacterGroup());
    g->field_ = field;
    g->level_ = level;
    g->size_ = size;
    g->exponent_ = group_exponent(p, level);

    const std::uint64_t N = size;
    std::vector<std::uint64_t> pth(N);
    for (std::uint64_t i = 0; i < N; ++i) pth[i] = g->index_of(group_pow(g->element(i), p));

    // coordinates of the members of H = <x_1, ..., x_j>
    std::vector<std::vector<std::uint32_t>> coords(N);
    std::vector<char> in_h(N, 0);
    std::vector<std::uint64_t> members{0};
    in_h[0] = 1;

    while (members.size() < N) {
        std::uint64_t best = 0;
        int best_k = 0;
        for (std::uint64_t y = 0; y < N; ++y) {
            if (in_h[y]) continue;
            int k = 0;
            for (std::uint64_t z = y; !in_h[z]; z = pth[z]) ++k;
            if (k > best_k) {
                best_k = k;
                best = y;
            }
        }
        std::uint64_t order = 1;
        std::uint64_t z = best;
        for (int i = 0; i < best_k; ++i) {
            order *= p;
            z = pth[z];
        }
        // y^{p^k} = prod x_i^{a_i}; every a_i is divisible by p^k for a maximal-order y
        CosetClass x = g->element(best);
        const auto& a = coords[z];
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] % order != 0) throw std::logic_error("cyclic decomposition failed");
            if (a[i] == 0) continue;
            const auto gi = g->element(g->generators_[i]);
            x = group_mul(x, group_pow(gi, -static_cast<std::int64_t>(a[i] / order)));
        }
        const std::uint64_t xi = g->index_of(x);

        const std::size_t old_count = members.size();
        for (auto m : members) coords[m].push_back(0);
        std::uint64_t xt = 0;
        for (std::uint64_t t = 1; t < order; ++t) {
            xt = g->mul(xt, xi);
            for (std::size_t h = 0; h < old_count; ++h) {
                const std::uint64_t e = g->mul(members[h], xt);
                if (in_h[e]) throw std::logic_error("generator is not independent");
                in_h[e] = 1;
                coords[e] = coords[members[h]];
                coords[e].back() = static_cast<std::uint32_t>(t);
                members.push_back(e);
            }
        }
        g->generators_.push_back(xi);
        g->orders_.push_back(order);
    }

    const std::size_t rank = g->orders_.size();
    g->coords_.assign(N * rank, 0);
    for (std::uint64_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < rank; ++j) g->coords_[i * rank + j] = coords[i][j];
    cache[key] = g;
    return g;
}

std::uint64_t CharacterGroup::index_of(const CosetClass& A) const {
    if (A.level() != level_) throw std::invalid_argument("class level does not match the group");
    return class_index(*field_, A.a);
}

CosetClass CharacterGroup::element(std::uint64_t index) const {
    CosetClass c{field_, std::vector<Elem>(level_, 0)};
    for (std::size_t i = 0; i < level_; ++i) {
        c.a[i] = static_cast<Elem>(index % field_->q());
        index /= field_->q();
    }
    return c;
}

std::uint64_t CharacterGroup::mul(std::uint64_t a, std::uint64_t b) const {
    return index_of(group_mul(element(a), element(b)));
}

Character::Character(CharacterGroupPtr group, std::vector<std::uint64_t> c) : group_(std::move(group)), c_(std::move(c)) {
    if (c_.size() != group_->rank()) throw std::invalid_argument("character coefficient count does not match the group rank");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] %= group_->orders()[i];
}

Character Character::trivial(CharacterGroupPtr group) {
    const auto rank = group->rank();
    return Character(std::move(group), std::vector<std::uint64_t>(rank, 0));
}

Character Character::from_index(CharacterGroupPtr group, std::uint64_t index) {
    if (index >= group->size()) throw std::out_of_range("character index out of range");
    std::vector<std::uint64_t> c(group->rank());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = index % group->orders()[i];
        index /= group->orders()[i];
    }
    return Character(std::move(group), std::move(c));
}

std::uint64_t Character::index() const {
    std::uint64_t idx = 0;
    for (std::size_t i = c_.size(); i-- > 0;) idx = idx * group_->orders()[i] + c_[i];
    return idx;
}

bool Character::is_trivial() const {
    for (auto x : c_)
        if (x) return false;
    return true;
}

std::uint32_t Character::exponent_at(std::uint64_t class_index) const {
    const std::uint64_t e = group_->exponent();
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        k += c_[i] * group_->coordinate(class_index, i) * (e / group_->orders()[i]);
    }
    return static_cast<std::uint32_t>(k % e);
}

CyclotomicInt Character::evaluate(const CosetClass& A) const {
    return CyclotomicInt::root_of_unity(static_cast<std::uint32_t>(group_->exponent()), exponent_at(A));
}

Character Character::from_table(CharacterGroupPtr group, const std::vector<std::uint32_t>& table) {
    if (table.size() != group->size()) throw std::invalid_argument("character table has the wrong size");
    const std::uint64_t e = group->exponent();
    std::vector<std::uint64_t> c(group->rank());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::uint64_t step = e / group->orders()[i];
        const std::uint32_t v = table[group->generators()[i]];
        if (v % step != 0) throw std::invalid_argument("table value has the wrong order on a generator");
        c[i] = v / step;
    }
    Character chi(group, std::move(c));
    for (std::uint64_t idx = 0; idx < group->size(); ++idx)
        if (chi.exponent_at(idx) != table[idx] % e) throw std::invalid_argument("table is not a character");
    return chi;
}

Character Character::from_generator_images(CharacterGroupPtr group,
                                           const std::vector<std::pair<CosetClass, std::uint64_t>>& images) {
    const std::uint64_t N = group->size(), e = group->exponent();
    std::vector<std::int64_t> table(N, -1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> gens;
    for (const auto& [cls, k] : images) gens.emplace_back(group->index_of(cls), k % e);
    table[0] = 0;
    std::deque<std::uint64_t> queue{0};
    while (!queue.empty()) {
        const std::uint64_t x = queue.front();
        queue.pop_front();
        for (const auto& [g, k] : gens) {
            const std::uint64_t y = group->mul(x, g);
            const std::int64_t v = static_cast<std::int64_t>((table[x] + k) % e);
            if (table[y] < 0) {
                table[y] = v;
                queue.push_back(y);
            } else if (table[y] != v) {
                throw std::invalid_argument("prescribed character values are inconsistent");
            }
        }
    }
    std::vector<std::uint32_t> out(N);
    for (std::uint64_t i = 0; i < N; ++i) {
        if (table[i] < 0) throw std::invalid_argument("prescribed classes do not generate the group");
        out[i] = static_cast<std::uint32_t>(table[i]);
    }
    return from_table(std::move(group), out);
}

Character Character::from_lambdas(CharacterGroupPtr group, const std::vector<Elem>& lambda) {
    const Field& F = *group->field();
    if (lambda.size() != group->level()) throw std::invalid_argument("lambda vector length must equal the level");
    if (F.p() <= group->level()) throw std::invalid_argument("lambda parametrization needs p > ell");
    // p > ell makes the exponent p, so chi_q values are already powers of omega_e
    std::vector<std::uint32_t> table(group->size());
    for (std::uint64_t idx = 0; idx < group->size(); ++idx) {
        const auto v = truncated_log(group->element(idx));
        Elem s = 0;
        for (std::size_t j = 0; j < v.size(); ++j) s = F.add(s, F.mul(lambda[j], v[j]));
        table[idx] = F.additive_character_exponent(s);
    }
    Character chi = from_table(std::move(group), table);
    chi.lambda_ = lambda;
    return chi;
}

std::vector<Elem> character_lambdas(const Character& chi) {
    if (chi.lambda()) return *chi.lambda();
    const auto& group = chi.group();
    const FieldPtr& field = group->field();
    const Field& F = *field;
    const std::size_t ell = group->level();
    if (F.p() <= ell) throw std::invalid_argument("lambda parametrization needs p > ell");
    std::vector<Elem> lambda(ell, 0);
    for (std::size_t j = 0; j < ell; ++j) {
        // chi(exp(x u^j)) = chi_q(lambda_j x); testing x on an F_p-basis pins lambda_j
        std::vector<std::uint32_t> target(F.r());
        for (std::uint32_t i = 0; i < F.r(); ++i) {
            std::vector<Elem> v(ell, 0);
            v[j] = F.basis(i);
            target[i] = chi.exponent_at(truncated_exp(field, v));
        }
        bool found = false;
        for (Elem l = 0; l < F.q() && !found; ++l) {
            bool match = true;
            for (std::uint32_t i = 0; i < F.r() && match; ++i) match = F.trace(F.mul(l, F.basis(i))) == target[i];
            if (match) {
                lambda[j] = l;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no lambda matches the character");
    }
    if (!(Character::from_lambdas(group, lambda) == chi)) throw std::logic_error("recovered lambda does not reproduce the character");
    return lambda;
}

Character Character::conjugate() const {
    std::vector<std::uint64_t> c(c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (group_->orders()[i] - c_[i]) % group_->orders()[i];
    return Character(group_, std::move(c));
}

Character Character::operator*(const Character& o) const {
    if (group_ != o.group_) throw std::invalid_argument("characters of different groups");
    std::vector<std::uint64_t> c(c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] + o.c_[i];
    return Character(group_, std::move(c));
}

bool Character::is_primitive() const {
    const std::size_t ell = group_->level();
    if (ell == 0) return false;
    std::uint64_t step = 1;
    for (std::size_t i = 1; i < ell; ++i) step *= group_->field()->q();
    for (std::uint64_t a = 1; a < group_->field()->q(); ++a)
        if (exponent_at(a * step) != 0) return true;
    return false;
}

std::size_t Character::level_of() const {
    const std::size_t ell = group_->level();
    std::uint64_t step = 1;
    for (std::size_t k = 0; k <= ell; ++k) {
        bool trivial_on_kernel = true;
        for (std::uint64_t idx = 0; idx < group_->size() && trivial_on_kernel; idx += step)
            if (exponent_at(idx) != 0) trivial_on_kernel = false;
        if (trivial_on_kernel) return k;
        step *= group_->field()->q();
    }
    return ell;
}

Character Character::inflate(CharacterGroupPtr finer) const {
    if (finer->field() != group_->field() || finer->level() < group_->level())
        throw std::invalid_argument("inflation needs the same field and a level at least as large");
    const std::uint64_t scale = finer->exponent() / group_->exponent();
    std::vector<std::uint32_t> table(finer->size());
    for (std::uint64_t idx = 0; idx < finer->size(); ++idx)
        table[idx] = static_cast<std::uint32_t>(exponent_at(idx % group_->size()) * scale);
    return from_table(std::move(finer), table);
}

std::vector<Character> enumerate_characters(const CharacterGroupPtr& group, std::uint64_t budget) {
    if (group->size() > budget)
        throw BudgetExceeded("character list of size " + std::to_string(group->size()) + " exceeds the budget");
    std::vector<Character> out;
    out.reserve(group->size());
    for (std::uint64_t i = 0; i < group->size(); ++i) out.push_back(Character::from_index(group, i));
    return out;
}

Character lift_character(const Character& chi, const FieldEmbedding& emb) {
    if (chi.group()->field() != emb.small()) throw std::invalid_argument("character is not over the small field");
    const std::size_t ell = chi.group()->level();
    auto big = CharacterGroup::make(emb.big(), ell);
    const std::uint64_t scale = big->exponent() / chi.group()->exponent();
    std::vector<std::uint32_t> table(big->size());
    for (std::uint64_t idx = 0; idx < big->size(); ++idx) {
        const MonicPoly rep(emb.big(), big->element(idx).a);
        table[idx] = static_cast<std::uint32_t>(chi.exponent_at(coset_of(norm_poly(emb, rep), ell)) * scale);
    }
    return Character::from_table(big, table);
}

std::pair<Elem, Elem> fomenko_epsilon(const Character& chi) {
    const auto& G = *chi.group();
    const Field& F = *G.field();
    if (F.p() != 2 || G.level() != 3) throw std::invalid_argument("the epsilon map is defined for p = 2 and ell = 3");
    const std::uint64_t q = F.q();
    auto idx = [&](Elem a, Elem b) { return std::uint64_t(a) * q + std::uint64_t(b) * q * q; };
    auto find = [&](bool second) -> Elem {
        for (Elem cand = 0; cand < q; ++cand) {
            bool ok = true;
            for (Elem x = 0; x < q && ok; ++x) {
                const std::uint32_t want = 2 * F.trace(F.mul(cand, x));
                ok = chi.exponent_at(second ? idx(0, x) : idx(x, 0)) == want;
            }
            if (ok) return cand;
        }
        throw std::logic_error("character is not additive on the classes (0, a, b)");
    };
    const Elem lambda = find(false), mu = find(true);
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            if (chi.exponent_at(idx(a, b)) != 2 * F.trace(F.add(F.mul(lambda, a), F.mul(mu, b))))
                throw std::logic_error("epsilon map check failed");
    return {lambda, mu};
}

}  // namespace ffpc
