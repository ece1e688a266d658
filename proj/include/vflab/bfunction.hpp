#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vflab/rational.hpp"

namespace vflab {

/// Monic univariate rational polynomial in s, stored in factored form as
/// (root, multiplicity) pairs with distinct roots.  The empty product is 1.
class BFunction {
public:
    BFunction() = default;

    static BFunction one() { return BFunction(); }
    static BFunction from_roots(const std::vector<std::pair<Rational, unsigned>>& roots);

    void add_root(const Rational& root, unsigned multiplicity = 1);

    bool is_one() const { return factors_.empty(); }
    unsigned degree() const;
    const std::map<Rational, unsigned>& factors() const { return factors_; }
    bool has_root(const Rational& r) const { return factors_.count(r) > 0; }
    unsigned multiplicity(const Rational& r) const;
    std::optional<Rational> largest_root() const;

    Rational evaluate(const Rational& s) const;
    /// Expanded monic coefficients, low to high; size degree()+1.
    std::vector<Rational> coefficients() const;

    /// Strips one factor (s+1); throws std::domain_error when -1 is not a
    /// root ("not a b-function of a nonempty hypersurface").
    BFunction reduced() const;

    friend bool operator==(const BFunction& a, const BFunction& b) {
        return a.factors_ == b.factors_;
    }
    friend bool operator!=(const BFunction& a, const BFunction& b) { return !(a == b); }

    /// "(s+1)(s+5/6)(s+7/6)"; the (s+1) factor, when present, is printed
    /// first, the rest by descending root.  "1" for the empty product.
    std::string str() const;

private:
    std::map<Rational, unsigned> factors_;
};

/// (s+1) * btilde(s - q): every root r of btilde moves to r + q, with the
/// extra root at -1 merged in.
BFunction shifted_bfunction(const BFunction& b_tilde, unsigned q);

/// Negative of the largest root of the reduced b-function; nullopt (read:
/// infinity) when the reduced b-function is 1.
std::optional<Rational> minimal_exponent(const BFunction& b);

/// Negative of the largest root; equals min(minimal exponent, 1).
Rational lct_from_bfunction(const BFunction& b);

}  // namespace vflab
