#pragma once

#include <map>
#include <string>
#include <vector>

#include "vflab/polynomial.hpp"

namespace vflab {

/// Commuting coordinates plus central parameters.  Every variable has a
/// partner derivative; central parameters commute with everything and
/// have none.
class WeylContext {
public:
    WeylContext() = default;
    WeylContext(VarSet vars, std::vector<std::string> central_params = {});

    const VarSet& vars() const { return vars_; }
    const std::vector<std::string>& central_params() const { return params_; }
    /// Variables followed by central parameters: the coefficient ring.
    const VarSet& coeff_vars() const { return coeff_vars_; }
    std::size_t nvars() const { return vars_.size(); }

    friend bool operator==(const WeylContext& a, const WeylContext& b) {
        return a.vars_ == b.vars_ && a.params_ == b.params_;
    }
    friend bool operator!=(const WeylContext& a, const WeylContext& b) { return !(a == b); }

private:
    VarSet vars_;
    std::vector<std::string> params_;
    VarSet coeff_vars_;
};

/// Normally ordered element of the Weyl algebra: coefficients on the left,
/// derivatives on the right.  The map sends each derivative exponent
/// vector to its polynomial coefficient; the zero operator is the empty map.
class WeylOperator {
public:
    using DMap = std::map<Monomial, Polynomial>;

    WeylOperator() = default;
    explicit WeylOperator(WeylContext ctx) : ctx_(std::move(ctx)) {}

    static WeylOperator zero(const WeylContext& ctx) { return WeylOperator(ctx); }
    static WeylOperator one(const WeylContext& ctx);
    static WeylOperator coefficient(const WeylContext& ctx, Polynomial h);
    /// The operator x_i (multiplication by the i-th variable).
    static WeylOperator variable(const WeylContext& ctx, std::size_t i);
    /// The partial derivative with respect to the i-th variable.
    static WeylOperator derivative(const WeylContext& ctx, std::size_t i);
    static WeylOperator term(const WeylContext& ctx, Polynomial h, Monomial dexp);

    const WeylContext& context() const { return ctx_; }
    const DMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Order as a differential operator (max total derivative degree).
    unsigned order() const;

    WeylOperator operator-() const;
    WeylOperator& operator+=(const WeylOperator& o);
    WeylOperator& operator-=(const WeylOperator& o);
    friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
    friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
    /// Normally ordered product under [d_i, x_j] = delta_ij.
    friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);
    WeylOperator operator*(const Rational& c) const;

    /// Classical adjoint: sum of h_a d^a  |->  sum of (-d)^a h_a, in normal
    /// form.  An involutive anti-automorphism.
    WeylOperator adjoint() const;

    /// Applies the operator to a polynomial over coeff_vars (derivatives of
    /// central parameters are zero by construction).
    Polynomial apply(const Polynomial& p) const;

    friend bool operator==(const WeylOperator& a, const WeylOperator& b) {
        return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const WeylOperator& a, const WeylOperator& b) { return !(a == b); }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const WeylOperator& w);

    void add_term(const Monomial& dexp, const Polynomial& h);

private:
    void check_same_context(const WeylOperator& o) const;

    WeylContext ctx_;
    DMap terms_;
};

/// The operator s = -d_t t in a context whose variables include t.
WeylOperator s_operator(const WeylContext& ctx);

/// Evaluates a univariate polynomial (coefficients low to high) at an
/// operator argument.
WeylOperator eval_at_operator(const std::vector<Rational>& coeffs, const WeylOperator& arg);

/// Coefficients of P(s + shift) given those of P(s), low to high.
std::vector<Rational> shift_argument(const std::vector<Rational>& coeffs, const Rational& shift);

enum class SIdentity { TShift, DtShift, TmDtm, DtmTm };

/// Checks one of the defining identities of s = -d_t t by exact normal-form
/// equality: P(s) t^m = t^m P(s-m); P(s) d_t^m = d_t^m P(s+m);
/// t^m d_t^m = (-1)^m prod_{j=1..m} (s+j); d_t^m t^m = (-1)^m prod_{j=0..m-1} (s-j).
bool check_s_identity(const std::vector<Rational>& p_coeffs, unsigned m, SIdentity which,
                      const WeylContext& ctx);

}  // namespace vflab
