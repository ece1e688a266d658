#pragma once

#include <vector>

#include "vflab/monomial_order.hpp"
#include "vflab/polynomial.hpp"

namespace vflab {

/// Ideal given by a finite generating set over a common VarSet.
/// Zero generators are dropped on construction; empty list = zero ideal.
class Ideal {
public:
    Ideal(VarSet vars, std::vector<Polynomial> gens);

    const VarSet& vars() const { return vars_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    bool is_zero() const { return gens_.empty(); }

private:
    VarSet vars_;
    std::vector<Polynomial> gens_;
};

/// Leading monomial/coefficient with respect to an order.
const Monomial& leading_monomial(const Polynomial& p, const MonomialOrder& ord);
Rational leading_coefficient(const Polynomial& p, const MonomialOrder& ord);

/// Normal form of g modulo the list of divisors (multivariate division).
Polynomial normal_form(const Polynomial& g, const std::vector<Polynomial>& divisors,
                       const MonomialOrder& ord);

/// Reduced Groebner basis (Buchberger, normal pair selection,
/// Gebauer-Moller pair elimination, monic output).
std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& ord);

bool ideal_membership(const Polynomial& g, const Ideal& ideal, const MonomialOrder& ord);

/// Monomials not divisible by any leading monomial of the reduced basis.
struct QuotientBasis {
    std::vector<Monomial> monomials;  // sorted ascending by exponent vector
    bool finite = false;
};

/// Enumerates the standard monomials of R/I.  The quotient is finite iff
/// every variable appears as a pure power among the leading monomials of
/// the reduced basis; when it does not, the result carries finite=false
/// and no monomial list.  Exceeding `cap` during enumeration throws
/// std::runtime_error("possibly infinite quotient").
QuotientBasis standard_monomials(const Ideal& ideal, const MonomialOrder& ord,
                                 std::size_t cap = 10000);

}  // namespace vflab
