#pragma once

#include <optional>

#include "vflab/bfunction.hpp"
#include "vflab/bs_engine.hpp"
#include "vflab/vmodel.hpp"

namespace vflab {

/// f = prod x_i^(a_i); at least one exponent positive.
struct MonomialDivisor {
    std::vector<unsigned> exponents;

    explicit MonomialDivisor(std::vector<unsigned> a);
    unsigned grid_denominator() const;
};

/// Numerical log-resolution data: one row per divisor on the resolution.
struct ResolutionRow {
    unsigned a = 1;           // multiplicity in the pulled-back divisor
    unsigned k = 0;           // discrepancy
    unsigned b = 0;           // multiplicity of an auxiliary function
    bool exceptional = false;
};

struct LogResolutionData {
    std::vector<ResolutionRow> rows;

    explicit LogResolutionData(std::vector<ResolutionRow> r);
};

/// Principal monomial ideal, canonical single generator.
struct MonomialIdeal {
    Monomial generator;

    bool is_unit() const { return generator.total_degree() == 0; }
    bool contains(const MonomialIdeal& other) const {  // reverse divisibility
        return generator.divides(other.generator);
    }
};

/// I(f^lambda): exponent max(ceil(lambda a_i) - 1, 0); the unit ideal for
/// lambda <= 0.
MonomialIdeal i_lambda(const MonomialDivisor& a, const Rational& lambda);

/// Multiplier ideal of the monomial divisor: exponent floor(lambda a_i).
MonomialIdeal multiplier_ideal_monomial(const MonomialDivisor& a, const Rational& lambda);

/// All jumping numbers up to the bound: { j/a_i : 1 <= j <= floor(bound a_i) }.
std::vector<Rational> jumping_numbers_monomial(const MonomialDivisor& a, const Rational& bound);

/// min over rows of (k+1)/a.
Rational lct_from_resolution(const LogResolutionData& data);
/// min over rows of (k+b+1)/a.
Rational lct_g_from_resolution(const LogResolutionData& data);

enum class RootBoundKind { bf_roots, g_dtm_bound, g_delta_bound, dtm_roots };

struct RootBoundResult {
    std::vector<Rational> candidates;  // for bf_roots / dtm_roots
    std::optional<Rational> bound;     // for the two bound kinds
};

/// Candidate sets and upper bounds for roots of the associated b-functions:
///   bf_roots:     -(k_i+l)/a_i for 1 <= l <= L
///   dtm_roots(m): m-(k_i+l)/a_i union negative integers >= -L; optionally
///                 restricted to exceptional rows
///   g_dtm_bound(m): -min(1, min (k_i+b_i+1)/a_i - m)
///   g_delta_bound:  -min (k_i+b_i+1)/a_i
RootBoundResult root_bound_candidates(const LogResolutionData& data, RootBoundKind which,
                                      unsigned m = 0, unsigned L = 0,
                                      bool exceptional_only = false);

/// b(-lambda) = 0 for every supplied jumping number?
bool check_jumping_roots(const BFunction& b, const std::vector<Rational>& jumps);

/// min of (k+1)/a over exceptional rows; nullopt (infinity) without any.
std::optional<Rational> min_exponent_lower_bound(const LogResolutionData& data);

struct ContainmentCheck {
    Rational lambda;
    Monomial generator;
    Membership result = Membership::unknown;
};

struct BudurSaitoReport {
    std::vector<ContainmentCheck> checks;
    bool all_certified = true;
    // Only the containment direction "multiplier ideal inside the V-level"
    // is machine-checkable with inner approximations.
    bool one_directional = true;
};

/// For each lambda on the grid: every generator g of the multiplier ideal
/// must certify g delta in the snapshot of V^(>lambda).
BudurSaitoReport budur_saito_consistency(const MonomialDivisor& a,
                                         const std::vector<Rational>& lambda_grid,
                                         const Truncation& trunc);

struct TrivialityThreshold {
    std::optional<Rational> value;  // nullopt = infinity (smooth)
    struct Certificate {
        unsigned q;
        Rational alpha;
        Membership result;
    };
    std::vector<Certificate> certificates;
    bool all_certified = true;
};

/// Minimal exponent as the triviality threshold of the refined multiplier
/// ideals; certifies dt^q delta in V^(>alpha) snapshots for grid points
/// q + alpha below the threshold with q <= 2.
TrivialityThreshold microlocal_triviality_threshold(const Polynomial& f, const WeightVector& w,
                                                    const Truncation& trunc);

}  // namespace vflab
