#pragma once

#include <stdexcept>
#include <vector>

#include "vflab/polynomial.hpp"

namespace vflab {

/// Total order on monomials compatible with multiplication.
class MonomialOrder {
public:
    enum class Kind { Lex, Grevlex, Weighted };

    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
    static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, {}); }
    /// Weighted order with grevlex tie-break; weights must be positive.
    static MonomialOrder weighted(std::vector<Rational> w) {
        for (const auto& wi : w)
            if (wi.sign() <= 0)
                throw std::invalid_argument("MonomialOrder: weights must be positive");
        return MonomialOrder(Kind::Weighted, std::move(w));
    }

    Kind kind() const { return kind_; }

    /// a < b in this order.
    bool less(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return less(b, a); }

private:
    MonomialOrder(Kind k, std::vector<Rational> w) : kind_(k), weights_(std::move(w)) {}

    Kind kind_;
    std::vector<Rational> weights_;
};

}  // namespace vflab
