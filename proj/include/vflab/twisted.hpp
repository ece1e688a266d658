#pragma once

#include "vflab/weyl.hpp"

namespace vflab {

/// Element (numerator / f^N) f^s of the localized twisted module, with the
/// numerator a polynomial in the coordinates and the central parameter s.
/// Canonical form keeps the numerator not divisible by f while N > 0.
class TwistedElement {
public:
    /// `ctx` must have central parameter "s"; `f` is a polynomial over
    /// ctx.coeff_vars() not involving s.
    TwistedElement(WeylContext ctx, Polynomial numerator, unsigned f_power, Polynomial f);

    /// g * f^s.
    static TwistedElement times_fs(const WeylContext& ctx, Polynomial g, Polynomial f);
    /// f^(s+k) = f^k * f^s.
    static TwistedElement fs_shifted(const WeylContext& ctx, const Polynomial& f, unsigned k);

    const WeylContext& context() const { return ctx_; }
    const Polynomial& numerator() const { return num_; }
    unsigned f_power() const { return fpow_; }
    const Polynomial& f() const { return f_; }
    bool is_zero() const { return num_.is_zero(); }

    TwistedElement operator-() const;
    TwistedElement& operator+=(const TwistedElement& o);
    TwistedElement& operator-=(const TwistedElement& o);
    friend TwistedElement operator+(TwistedElement a, const TwistedElement& b) { return a += b; }
    friend TwistedElement operator-(TwistedElement a, const TwistedElement& b) { return a -= b; }
    TwistedElement operator*(const Polynomial& h) const;
    TwistedElement operator*(const Rational& c) const;

    /// Action of the i-th coordinate derivative:
    /// num/f^N f^s |-> ((d_i num) f + (s-N) num (d_i f)) / f^(N+1) f^s.
    TwistedElement apply_derivative(std::size_t var) const;

    friend bool operator==(const TwistedElement& a, const TwistedElement& b);
    friend bool operator!=(const TwistedElement& a, const TwistedElement& b) { return !(a == b); }

    std::string str() const;

private:
    void reduce();

    WeylContext ctx_;
    Polynomial num_;
    unsigned fpow_ = 0;
    Polynomial f_;
};

/// D_X[s]-action on the twisted module; P must contain no t-variable.
TwistedElement act_on_twisted(const WeylOperator& P, const TwistedElement& e);

/// Result of specializing s to an integer m: value * f^(-residual_fpower),
/// with residual_fpower = 0 exactly when the result clears to a polynomial.
struct SpecializeResult {
    Polynomial value;
    unsigned residual_fpower = 0;
};

SpecializeResult specialize_s(const TwistedElement& e, long m);

}  // namespace vflab
