#pragma once

#include <map>

#include "vflab/polynomial.hpp"

namespace vflab {

/// Element sum_j u_j dt^j delta of the graph-embedding module of f, with
/// finite support and polynomial components over the coordinates of f.
class BfElement {
public:
    using Components = std::map<unsigned, Polynomial>;

    explicit BfElement(Polynomial f) : f_(std::move(f)) {
        if (f_.is_zero()) throw std::invalid_argument("BfElement: zero base polynomial");
    }
    BfElement(Polynomial f, Components comps);

    /// u * dt^j delta.
    static BfElement monomial_term(const Polynomial& f, unsigned j, Polynomial u);
    /// delta itself.
    static BfElement delta(const Polynomial& f);

    const Polynomial& f() const { return f_; }
    const Components& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }
    /// Largest dt order present (0 for the zero element).
    unsigned dt_order() const { return comps_.empty() ? 0 : comps_.rbegin()->first; }
    /// Largest component total degree (0 for the zero element).
    unsigned max_degree() const;
    Polynomial component(unsigned j) const;

    BfElement operator-() const;
    BfElement& operator+=(const BfElement& o);
    BfElement& operator-=(const BfElement& o);
    friend BfElement operator+(BfElement a, const BfElement& b) { return a += b; }
    friend BfElement operator-(BfElement a, const BfElement& b) { return a -= b; }
    BfElement operator*(const Polynomial& h) const;
    BfElement operator*(const Rational& c) const;

    friend bool operator==(const BfElement& a, const BfElement& b) {
        return a.f_ == b.f_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const BfElement& a, const BfElement& b) { return !(a == b); }

    std::string str() const;

    void add_component(unsigned j, const Polynomial& u);

private:
    Polynomial f_;
    Components comps_;
};

/// t . (h dt^j delta) = h f dt^j delta - j h dt^(j-1) delta.
BfElement act_t(const BfElement& e);

/// d_i . (h dt^j delta) = (d_i h) dt^j delta - h (d_i f) dt^(j+1) delta.
BfElement act_derivation(std::size_t var, const BfElement& e);

/// dt . (h dt^j delta) = h dt^(j+1) delta.
BfElement act_dt(const BfElement& e);

/// s = -dt t as an action on the module.
BfElement act_s(const BfElement& e);

/// The isomorphism P(s) u f^s |-> P(-dt t)(u delta) evaluated on polynomial
/// data: `p_coeffs` are the coefficients of P (low to high).
BfElement tau(const std::vector<Rational>& p_coeffs, const Polynomial& u, const Polynomial& f);

}  // namespace vflab
