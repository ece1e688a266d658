#include "vflab/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

namespace vflab {

VarSet::VarSet(std::vector<std::string> names)
    : names_(std::make_shared<std::vector<std::string>>(std::move(names))) {
    std::set<std::string> seen;
    for (const auto& n : *names_) {
        if (n.empty()) throw std::invalid_argument("VarSet: empty variable name");
        if (!seen.insert(n).second)
            throw std::invalid_argument("VarSet: duplicate variable '" + n + "'");
    }
}

std::optional<std::size_t> VarSet::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
    return std::nullopt;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (unsigned e : e_) d += e;
    return d;
}

bool Monomial::divides(const Monomial& m) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > m.e_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += m.e_[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= m.e_[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    return r;
}

bool Monomial::coprime_with(const Monomial& m) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > 0 && m.e_[i] > 0) return false;
    return true;
}

Rational Monomial::weighted_degree(const std::vector<Rational>& w) const {
    if (w.size() != e_.size())
        throw std::invalid_argument("weighted_degree: weight vector length mismatch");
    Rational d;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (w[i].sign() <= 0)
            throw std::invalid_argument("weighted_degree: weights must be positive");
        if (e_[i] != 0) d += w[i] * Rational(static_cast<long>(e_[i]));
    }
    return d;
}

Polynomial::Polynomial(VarSet vars, TermMap terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.nvars() != vars_.size())
            throw std::invalid_argument("Polynomial: monomial arity mismatch");
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
}

Polynomial Polynomial::constant(VarSet vars, const Rational& c) {
    Polynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(Monomial(p.vars_.size()), c);
    return p;
}

Polynomial Polynomial::variable(VarSet vars, std::size_t i, unsigned power) {
    Polynomial p(std::move(vars));
    Monomial m(p.vars_.size());
    m[i] = power;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

Polynomial Polynomial::term(VarSet vars, Monomial m, const Rational& c) {
    Polynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational() : it->second;
}

void Polynomial::check_same_vars(const Polynomial& o) const {
    if (vars_ != o.vars_)
        throw std::invalid_argument("Polynomial: VarSet mismatch");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r(a.vars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r = constant(vars_, Rational(1));
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= vars_.size()) throw std::invalid_argument("derivative: unknown variable");
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial mm(m);
        const long e = mm[var];
        mm[var] -= 1;
        r.add_term(mm, c * Rational(e));
    }
    return r;
}

Polynomial Polynomial::derivative(const std::string& var) const {
    auto idx = vars_.index_of(var);
    if (!idx) throw std::invalid_argument("derivative: unknown variable '" + var + "'");
    return derivative(*idx);
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& value) const {
    if (var >= vars_.size()) throw std::invalid_argument("substitute: unknown variable");
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
        Rational cc = c;
        for (unsigned k = 0; k < m[var]; ++k) cc *= value;
        Monomial mm(m);
        mm[var] = 0;
        r.add_term(mm, cc);
    }
    return r;
}

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
    check_same_vars(d);
    if (d.is_zero()) return std::nullopt;
    // Long division by the (storage-order) leading term of d; exact iff the
    // remainder vanishes.  Storage order is a total order refining nothing in
    // particular, but any fixed term order works for exactness checks.
    const auto lead = std::prev(d.terms_.end());
    Polynomial q(vars_), rem = *this;
    while (!rem.is_zero()) {
        const auto rl = std::prev(rem.terms_.end());
        if (!lead->first.divides(rl->first)) return std::nullopt;
        Monomial m = rl->first / lead->first;
        Rational c = rl->second / lead->second;
        q.add_term(m, c);
        rem -= d * Polynomial::term(vars_, m, c);
    }
    return q;
}

Polynomial Polynomial::lift(const VarSet& target, const std::vector<std::size_t>& map) const {
    Polynomial r(target);
    for (const auto& [m, c] : terms_) {
        Monomial mm(target.size());
        for (std::size_t i = 0; i < m.nvars(); ++i) mm[map[i]] = m[i];
        r.terms_.emplace(std::move(mm), c);
    }
    return r;
}

std::optional<Rational> Polynomial::homogeneous_weighted_degree(
    const std::vector<Rational>& w, std::pair<Monomial, Monomial>* conflict) const {
    std::optional<Rational> deg;
    const Monomial* first = nullptr;
    for (const auto& [m, c] : terms_) {
        Rational d = m.weighted_degree(w);
        if (!deg) {
            deg = d;
            first = &m;
        } else if (d != *deg) {
            if (conflict) *conflict = {*first, m};
            return std::nullopt;
        }
    }
    return deg;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

namespace {

void print_monomial(std::ostream& os, const Monomial& m, const VarSet& vars, bool lead_coeff_one) {
    bool first = lead_coeff_one;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << vars.name(i);
        if (m[i] > 1) os << "^" << m[i];
    }
}

}  // namespace

std::string Polynomial::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    // Highest term first under the storage order.
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        if (m.is_one()) {
            os << a.str();
        } else {
            bool coeff_one = a.is_one();
            if (!coeff_one) os << a.str();
            print_monomial(os, m, p.vars(), coeff_one);
        }
    }
    return os;
}

}  // namespace vflab
