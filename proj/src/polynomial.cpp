#include "kr/polynomial.hpp"

#include <utility>

namespace kr {

Polynomial Polynomial::constant(const VarTablePtr& table, const Rational& c) {
    Polynomial p(table);
    if (c != 0) p.terms_.emplace(Monomial(table->size()), c);
    return p;
}

Polynomial Polynomial::variable(const VarTablePtr& table, std::size_t v) {
    if (v >= table->size()) throw DomainError("variable index out of range");
    Monomial m(table->size());
    m.set(v, 1);
    Polynomial p(table);
    p.terms_.emplace(m, Rational(1));
    return p;
}

Polynomial Polynomial::variable(const VarTablePtr& table, const std::string& name) {
    return variable(table, table->require(name));
}

Polynomial Polynomial::monomial(const VarTablePtr& table, const Monomial& m, const Rational& c) {
    if (m.nvars() != table->size()) throw DomainError("monomial width does not match table");
    Polynomial p(table);
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

Rational Polynomial::constant_term() const {
    auto it = terms_.find(Monomial(table_->size()));
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree_in(std::size_t v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, unsigned(m[v]));
    return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    if (m.nvars() != table_->size()) throw DomainError("monomial width does not match table");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same_table(table_, o.table_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same_table(table_, o.table_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(table_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_table(table_, o.table_);
    Polynomial r(table_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(table_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Polynomial& Polynomial::operator*=(const Rational& c) { return *this = *this * c; }

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc = constant(table_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) acc *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
    check_same_table(table_, o.table_);
    return terms_ == o.terms_;
}

Polynomial Polynomial::pdiff(std::size_t v) const {
    if (v >= table_->size()) throw DomainError("variable index out of range");
    Polynomial r(table_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m[v];
        if (e == 0) continue;
        Monomial n = m;
        n.set(v, uint16_t(e - 1));
        r.terms_.emplace(n, c * Rational(long(e)));
    }
    return r;
}

Polynomial Polynomial::integrate(std::size_t v) const {
    if (v >= table_->size()) throw DomainError("variable index out of range");
    Polynomial r(table_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m[v];
        Monomial n = m;
        n.set(v, uint16_t(e + 1));
        r.terms_.emplace(n, c / Rational(long(e) + 1));
    }
    return r;
}

Polynomial Polynomial::substitute(const std::map<std::size_t, Polynomial>& bindings) const {
    for (const auto& b : bindings) {
        if (b.first >= table_->size()) throw DomainError("substitution variable out of range");
        check_same_table(table_, b.second.table());
    }
    // powers[v][e] caches img_v^e across terms.
    std::map<std::size_t, std::vector<Polynomial>> powers;
    auto cached_pow = [&](std::size_t v, unsigned e) -> const Polynomial& {
        auto& vec = powers[v];
        if (vec.empty()) vec.push_back(constant(table_, 1));
        while (vec.size() <= e) vec.push_back(vec.back() * bindings.at(v));
        return vec[e];
    };
    Polynomial result(table_);
    for (const auto& [m, c] : terms_) {
        Monomial residual = m;
        Polynomial acc = Polynomial::constant(table_, c);
        bool acc_zero = false;
        for (const auto& b : bindings) {
            unsigned e = m[b.first];
            if (e == 0) continue;
            residual.set(b.first, 0);
            acc *= cached_pow(b.first, e);
            if (acc.is_zero()) {
                acc_zero = true;
                break;
            }
        }
        if (acc_zero) continue;
        if (!residual.is_one()) acc *= Polynomial::monomial(table_, residual, Rational(1));
        result += acc;
    }
    return result;
}

Polynomial Polynomial::substitute_reduced(
    const std::map<std::size_t, Polynomial>& bindings,
    const std::function<Polynomial(const Polynomial&)>& reduce) const {
    if (bindings.empty()) return reduce(*this);
    const auto first = bindings.begin();
    const std::size_t v = first->first;
    if (v >= table_->size()) throw DomainError("substitution variable out of range");
    check_same_table(table_, first->second.table());
    const Polynomial val = reduce(first->second);
    const std::map<std::size_t, Polynomial> rest(std::next(first), bindings.end());

    std::map<unsigned, Polynomial> by = collect(v);
    if (by.empty()) return Polynomial(table_);
    const unsigned top = by.rbegin()->first;
    Polynomial acc(table_);
    for (unsigned i = top + 1; i-- > 0;) {
        if (i != top) acc = reduce(acc * val);
        auto it = by.find(i);
        if (it != by.end()) acc += it->second.substitute_reduced(rest, reduce);
    }
    return acc;
}

Rational Polynomial::evaluate(const std::map<std::size_t, Rational>& point) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (std::size_t v = 0; v < table_->size(); ++v) {
            unsigned e = m[v];
            if (e == 0) continue;
            auto it = point.find(v);
            if (it == point.end())
                throw DomainError("evaluate: unbound variable " + table_->name(v));
            term *= rational_pow(it->second, e);
        }
        total += term;
    }
    return total;
}

Polynomial Polynomial::coeff_of(std::size_t v, unsigned e) const {
    if (v >= table_->size()) throw DomainError("variable index out of range");
    Polynomial r(table_);
    for (const auto& [m, c] : terms_) {
        if (m[v] != e) continue;
        Monomial n = m;
        n.set(v, 0);
        r.terms_.emplace(n, c);
    }
    return r;
}

std::map<unsigned, Polynomial> Polynomial::collect(std::size_t v) const {
    if (v >= table_->size()) throw DomainError("variable index out of range");
    std::map<unsigned, Polynomial> out;
    for (const auto& [m, c] : terms_) {
        unsigned e = m[v];
        auto it = out.try_emplace(e, table_).first;
        Monomial n = m;
        n.set(v, 0);
        it->second.terms_.emplace(n, c);
    }
    return out;
}

Polynomial Polynomial::truncate_at(std::size_t v, unsigned bound) const {
    if (v >= table_->size()) throw DomainError("variable index out of range");
    Polynomial r(table_);
    for (const auto& [m, c] : terms_)
        if (m[v] < bound) r.terms_.emplace(m, c);
    return r;
}

DivisionResult divide_by_monic(const Polynomial& p, const Polynomial& q, std::size_t v) {
    check_same_table(p.table(), q.table());
    if (q.is_zero()) throw DomainError("division by zero polynomial");
    unsigned m = q.degree_in(v);
    if (m == 0) {
        if (!q.is_constant()) throw DomainError("divisor must be monic in the given variable");
        Rational c = q.constant_term();
        return {p * (Rational(1) / c), Polynomial(p.table())};
    }
    Polynomial lead = q.coeff_of(v, m);
    if (!lead.is_constant() || lead.constant_term() != 1)
        throw DomainError("divisor must be monic in the given variable");
    Polynomial quotient(p.table());
    Polynomial rem = p;
    while (!rem.is_zero()) {
        unsigned d = rem.degree_in(v);
        if (d < m) break;
        Polynomial c = rem.coeff_of(v, d);
        Polynomial qt = c * Polynomial::variable(p.table(), v).pow(d - m);
        quotient += qt;
        rem -= qt * q;
    }
    return {quotient, rem};
}

Polynomial exact_div(const Polynomial& p, const Polynomial& q, std::size_t v) {
    DivisionResult r = divide_by_monic(p, q, v);
    if (!r.remainder.is_zero()) throw DomainError("exact_div: division leaves a remainder");
    return r.quotient;
}

} // namespace kr
