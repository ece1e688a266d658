#pragma once

#include "vflab/bfunction.hpp"

namespace vflab {

/// Cyclic annihilator of one summand of a graded piece of an elementary
/// module, with the number of copies it occurs in.
struct GradedPiece {
    BFunction annihilator;
    unsigned multiplicity;
};

/// Graded-piece annihilators of the elementary module built from b with
/// ranks p, q at integer level k:
///   primal: [ (s+k)^m x p,  (s+k) b(s+k) x q ]
///   dual:   [ (s+k+1)^m x p,  (s+k+1) b(-s-k-1) x q ]
/// Requires every root -lambda of b to satisfy lambda in [0,1) and m to be
/// the multiplicity of the root 0; throws std::domain_error otherwise.
std::vector<GradedPiece> elementary_graded_annihilators(const BFunction& b, unsigned m,
                                                        unsigned p, unsigned q, long k,
                                                        bool dual = false);

}  // namespace vflab
