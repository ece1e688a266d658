#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vflab/rational.hpp"

namespace vflab {

/// Sparse exact vector: (key, coefficient) pairs sorted by descending key,
/// no zero coefficients.
using SparseVec = std::vector<std::pair<std::uint64_t, Rational>>;

SparseVec sparse_from_map(const std::map<std::uint64_t, Rational, std::greater<>>& m);

/// Row-echelon set of sparse vectors with distinct monic leading keys.
/// Insertion order is caller-controlled; reductions are forward-only, so
/// results are deterministic for a fixed insertion sequence.
class EchelonBasis {
public:
    /// When `track` is set, each inserted vector carries a companion
    /// "provenance" vector combined with the same row operations.
    explicit EchelonBasis(bool track = false) : track_(track) {}

    /// Fully reduces v (and its provenance) against the basis.
    void reduce(SparseVec& v, SparseVec* prov = nullptr) const;

    /// Reduces and, if a nonzero residual remains, adds it as a new monic
    /// row.  Returns true when the vector enlarged the span.
    bool insert(SparseVec v, SparseVec prov = {});

    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVec>& rows() const { return rows_; }

private:
    bool track_;
    std::map<std::uint64_t, std::size_t> pivot_;  // leading key -> row index
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> prov_;
};

/// axpy: target += c * source (sparse, descending keys).
void sparse_axpy(SparseVec& target, const Rational& c, const SparseVec& source);

/// Dense exact solver: finds one solution of A x = b together with a basis
/// of the homogeneous nullspace.  Returns nullopt when inconsistent.
struct AffineSolution {
    std::vector<Rational> particular;
    std::vector<std::vector<Rational>> nullspace;
};
std::optional<AffineSolution> solve_dense(std::vector<std::vector<Rational>> rows,
                                          std::vector<Rational> rhs);

/// Monic gcd of univariate polynomials given as coefficient vectors
/// (low to high); empty vector = zero polynomial.
std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b);
std::vector<Rational> poly_trim(std::vector<Rational> v);

}  // namespace vflab
