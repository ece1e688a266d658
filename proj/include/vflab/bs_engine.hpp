#pragma once

#include <optional>

#include "vflab/bfunction.hpp"
#include "vflab/groebner.hpp"
#include "vflab/twisted.hpp"

namespace vflab {

/// Weights rescaled so the validated polynomial has weighted degree 1.
struct WeightVector {
    std::vector<Rational> weights;

    Rational total() const {  // |w|
        Rational t;
        for (const auto& w : weights) t += w;
        return t;
    }
};

/// Checks that every monomial of f has the same weighted degree and
/// rescales the weights to make that degree 1.  Throws std::domain_error
/// on the zero polynomial, a constant, nonpositive weights, or a
/// non-homogeneous f (naming an offending pair of monomials).
WeightVector validate_weighted_homogeneous(const Polynomial& f, const std::vector<Rational>& w);

/// Weighted degrees of a monomial basis of R/J_f, with multiplicities
/// (graded Hilbert data of the Milnor algebra).
struct SigmaSet {
    std::vector<Rational> values;          // distinct, ascending
    std::vector<unsigned> multiplicities;  // parallel to values

    std::size_t milnor_number() const {
        std::size_t n = 0;
        for (unsigned m : multiplicities) n += m;
        return n;
    }
    bool contains(const Rational& v) const;
};

/// Requires an isolated singularity (finite Milnor algebra); smooth inputs
/// yield the empty set.  Throws std::domain_error otherwise.
SigmaSet sigma_set(const Polynomial& f, const WeightVector& w);

/// (s+1) * prod over lambda in Sigma(f) of (s + lambda + |w|), coinciding
/// roots merged into multiplicities.
BFunction bs_weighted_homogeneous(const Polynomial& f, const WeightVector& w);

/// The operators  f_{x_i} d_{x_j} - f_{x_j} d_{x_i}  for i < j, over a
/// context with central parameter s; each annihilates f^s.
std::vector<WeylOperator> yano_annihilator_generators(const Polynomial& f);

/// Witness for b(s) g f^s = P ((g f) f^s); verify() replays the identity
/// through the twisted-module action.
struct FunctionalEquationCertificate {
    std::vector<Rational> b_coefficients;  // monic, low to high
    WeylOperator P;
    Polynomial g;  // over the x-variables
    Polynomial f;

    bool verify() const;
};

/// Searches for P with derivative order <= max_order, s-degree <= max_sdeg
/// and coefficient x-degree <= deg_s(b)*deg(f) + deg(g) + max_order*deg(f)
/// solving the functional equation for the given b.  Returns nullopt when
/// no such P exists within the bounds.
std::optional<FunctionalEquationCertificate> solve_functional_equation(
    const Polynomial& f, const Polynomial& g, const BFunction& b, unsigned max_order,
    unsigned max_sdeg);

struct MinimalBResult {
    BFunction b;
    FunctionalEquationCertificate certificate;
};

/// Degree-by-degree search for the minimal monic b admitting a functional
/// equation within the bounds; the b and P coefficient spaces are solved
/// jointly.  Throws std::runtime_error("no b within bounds") when the
/// search exhausts max_sdeg.
MinimalBResult find_minimal_b_bounded(const Polynomial& f, const Polynomial& g,
                                      unsigned max_order, unsigned max_sdeg);

/// Factors a monic univariate rational polynomial into rational linear
/// factors; nullopt when an irreducible factor of higher degree remains.
std::optional<BFunction> factor_rational_roots(const std::vector<Rational>& monic_coeffs);

/// Context with central s over the variables of f.
WeylContext twisted_context(const Polynomial& f);

}  // namespace vflab
