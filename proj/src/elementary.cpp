#include "vflab/elementary.hpp"

#include <stdexcept>

namespace vflab {

std::vector<GradedPiece> elementary_graded_annihilators(const BFunction& b, unsigned m,
                                                        unsigned p, unsigned q, long k,
                                                        bool dual) {
    for (const auto& [root, mult] : b.factors()) {
        // b(-lambda) = 0 must force lambda in [0,1): roots lie in (-1, 0].
        if (!(root > Rational(-1) && root <= Rational(0)))
            throw std::domain_error("elementary module: root " + root.str() +
                                    " of b outside (-1, 0]");
    }
    if (b.multiplicity(Rational(0)) != m)
        throw std::domain_error("elementary module: m does not match the multiplicity of 0 in b");

    const Rational shift((long)k);
    const Rational one(1);
    std::vector<GradedPiece> out;

    BFunction first;
    Rational pole = dual ? -(shift + one) : -shift;
    first.add_root(pole, m);
    out.push_back({std::move(first), p});

    BFunction second;
    second.add_root(pole, 1);
    for (const auto& [root, mult] : b.factors()) {
        // (s+k) b(s+k) has roots r-k; the dual (s+k+1) b(-s-k-1) has -r-k-1.
        Rational moved = dual ? (-root - shift - one) : (root - shift);
        second.add_root(moved, mult);
    }
    out.push_back({std::move(second), q});
    return out;
}

}  // namespace vflab
