#include "vflab/bf_module.hpp"

#include <sstream>

namespace vflab {

BfElement::BfElement(Polynomial f, Components comps) : f_(std::move(f)), comps_(std::move(comps)) {
    if (f_.is_zero()) throw std::invalid_argument("BfElement: zero base polynomial");
    for (auto it = comps_.begin(); it != comps_.end();) {
        if (it->second.vars() != f_.vars())
            throw std::invalid_argument("BfElement: component VarSet mismatch");
        it = it->second.is_zero() ? comps_.erase(it) : std::next(it);
    }
}

BfElement BfElement::monomial_term(const Polynomial& f, unsigned j, Polynomial u) {
    BfElement e(f);
    if (!u.is_zero()) e.comps_.emplace(j, std::move(u));
    return e;
}

BfElement BfElement::delta(const Polynomial& f) {
    return monomial_term(f, 0, Polynomial::constant(f.vars(), Rational(1)));
}

unsigned BfElement::max_degree() const {
    unsigned d = 0;
    for (const auto& [j, u] : comps_) d = std::max(d, u.total_degree());
    return d;
}

Polynomial BfElement::component(unsigned j) const {
    auto it = comps_.find(j);
    return it == comps_.end() ? Polynomial(f_.vars()) : it->second;
}

void BfElement::add_component(unsigned j, const Polynomial& u) {
    if (u.is_zero()) return;
    auto [it, inserted] = comps_.emplace(j, u);
    if (!inserted) {
        it->second += u;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

BfElement BfElement::operator-() const {
    BfElement r(f_);
    for (const auto& [j, u] : comps_) r.comps_.emplace(j, -u);
    return r;
}

BfElement& BfElement::operator+=(const BfElement& o) {
    if (f_ != o.f_) throw std::invalid_argument("BfElement: mixing different modules");
    for (const auto& [j, u] : o.comps_) add_component(j, u);
    return *this;
}

BfElement& BfElement::operator-=(const BfElement& o) { return *this += -o; }

BfElement BfElement::operator*(const Polynomial& h) const {
    BfElement r(f_);
    for (const auto& [j, u] : comps_) r.add_component(j, u * h);
    return r;
}

BfElement BfElement::operator*(const Rational& c) const {
    BfElement r(f_);
    if (c.is_zero()) return r;
    for (const auto& [j, u] : comps_) r.comps_.emplace(j, u * c);
    return r;
}

BfElement act_t(const BfElement& e) {
    BfElement r(e.f());
    for (const auto& [j, u] : e.components()) {
        r.add_component(j, u * e.f());
        if (j > 0) r.add_component(j - 1, u * Rational(-(long)j));
    }
    return r;
}

BfElement act_derivation(std::size_t var, const BfElement& e) {
    const Polynomial df = e.f().derivative(var);
    BfElement r(e.f());
    for (const auto& [j, u] : e.components()) {
        r.add_component(j, u.derivative(var));
        r.add_component(j + 1, -(u * df));
    }
    return r;
}

BfElement act_dt(const BfElement& e) {
    BfElement r(e.f());
    for (const auto& [j, u] : e.components()) r.add_component(j + 1, u);
    return r;
}

BfElement act_s(const BfElement& e) { return -act_dt(act_t(e)); }

BfElement tau(const std::vector<Rational>& p_coeffs, const Polynomial& u, const Polynomial& f) {
    if (u.vars() != f.vars()) throw std::invalid_argument("tau: VarSet mismatch");
    // Horner evaluation of P at the operator s = -dt t.
    BfElement acc(f);
    BfElement base = BfElement::monomial_term(f, 0, u);
    for (std::size_t i = p_coeffs.size(); i-- > 0;) {
        acc = act_s(acc);
        acc += base * p_coeffs[i];
    }
    return acc;
}

std::string BfElement::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, u] : comps_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << u << ")";
        if (j > 0) {
            os << "*dt";
            if (j > 1) os << "^" << j;
        }
        os << "*delta";
    }
    return os.str();
}

}  // namespace vflab
