#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vflab/rational.hpp"

namespace vflab {

/// Immutable ordered set of distinct variable names.  Cheap to copy
/// (shared storage); polynomials over different VarSets never mix.
class VarSet {
public:
    VarSet() : names_(std::make_shared<std::vector<std::string>>()) {}
    explicit VarSet(std::vector<std::string> names);

    std::size_t size() const { return names_->size(); }
    const std::string& name(std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    friend bool operator==(const VarSet& a, const VarSet& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }
    friend bool operator!=(const VarSet& a, const VarSet& b) { return !(a == b); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exponent vector; length always equals the ambient VarSet size.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<unsigned> exps) : e_(std::move(exps)) {}

    std::size_t nvars() const { return e_.size(); }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    unsigned& operator[](std::size_t i) { return e_[i]; }
    const std::vector<unsigned>& exponents() const { return e_; }

    unsigned total_degree() const;
    bool is_one() const { return total_degree() == 0; }
    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    /// Exact quotient; caller must ensure divisibility.
    Monomial operator/(const Monomial& m) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool coprime_with(const Monomial& m) const;

    Rational weighted_degree(const std::vector<Rational>& w) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }
    /// Plain lexicographic order on exponent vectors; used for canonical
    /// term storage, independent of any Groebner order.
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }

private:
    std::vector<unsigned> e_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariant: no zero coefficients stored; zero polynomial = empty map.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(VarSet vars) : vars_(std::move(vars)) {}
    Polynomial(VarSet vars, TermMap terms);

    static Polynomial constant(VarSet vars, const Rational& c);
    static Polynomial variable(VarSet vars, std::size_t i, unsigned power = 1);
    static Polynomial term(VarSet vars, Monomial m, const Rational& c);

    const VarSet& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }
    unsigned total_degree() const;  // 0 for the zero polynomial
    Rational coeff(const Monomial& m) const;
    /// Coefficient of the constant term.
    Rational constant_term() const { return coeff(Monomial(vars_.size())); }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial operator*(const Rational& c) const;
    void add_term(const Monomial& m, const Rational& c);

    Polynomial pow(unsigned k) const;
    Polynomial derivative(std::size_t var) const;
    Polynomial derivative(const std::string& var) const;

    /// Substitutes the given variable by a rational constant.
    Polynomial substitute(std::size_t var, const Rational& value) const;
    /// Degree in one variable.
    unsigned degree_in(std::size_t var) const;

    /// Exact division: returns *this / d when the division is exact over
    /// the rationals, nullopt otherwise.
    std::optional<Polynomial> divide_exact(const Polynomial& d) const;

    /// Extends this polynomial to a superset of variables; `map[i]` is the
    /// index in `target` of variable i of this polynomial.
    Polynomial lift(const VarSet& target, const std::vector<std::size_t>& map) const;

    /// All monomials share one weighted degree?  Returns that degree, or
    /// nullopt with the offending pair reported through `conflict`.
    std::optional<Rational> homogeneous_weighted_degree(
        const std::vector<Rational>& w,
        std::pair<Monomial, Monomial>* conflict = nullptr) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Canonical text form, e.g. "x^2 + 1/2*x*y - 3".
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p);

    void check_same_vars(const Polynomial& o) const;

private:
    VarSet vars_;
    TermMap terms_;
};

}  // namespace vflab
