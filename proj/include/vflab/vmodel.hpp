#pragma once

#include <optional>
#include <variant>

#include "vflab/bf_module.hpp"
#include "vflab/bs_engine.hpp"
#include "vflab/linsolve.hpp"

namespace vflab {

/// The three explicit filtration models on the graph-embedding module.
class VModel {
public:
    struct Smooth {};
    struct Snc {
        std::vector<unsigned> exponents;  // per variable; zero = not a factor
    };
    struct QuasiHomogeneous {
        Polynomial f;
        WeightVector w;  // normalized
    };

    static VModel smooth();
    static VModel snc(std::vector<unsigned> exponents);
    static VModel quasi_homogeneous(Polynomial f, WeightVector w);

    const Polynomial& f() const { return f_; }
    /// Denominator of the rational grid on which the filtration can jump.
    unsigned grid_denominator() const { return grid_den_; }
    bool is_smooth() const { return std::holds_alternative<Smooth>(kind_); }
    bool is_snc() const { return std::holds_alternative<Snc>(kind_); }
    bool is_quasi_homogeneous() const { return std::holds_alternative<QuasiHomogeneous>(kind_); }
    const Snc* snc_data() const { return std::get_if<Snc>(&kind_); }
    const QuasiHomogeneous* qh_data() const { return std::get_if<QuasiHomogeneous>(&kind_); }

    /// Next grid point strictly above alpha; the filtration is constant on
    /// the half-open grid intervals, so this realizes V^{>alpha}.
    Rational next_grid_point(const Rational& alpha) const;

private:
    VModel(std::variant<Smooth, Snc, QuasiHomogeneous> kind, Polynomial f, unsigned grid_den)
        : kind_(std::move(kind)), f_(std::move(f)), grid_den_(grid_den) {}

    std::variant<Smooth, Snc, QuasiHomogeneous> kind_;
    Polynomial f_;
    unsigned grid_den_;
};

/// Finite window {sum_{j<=J} u_j dt^j delta : deg u_j <= D} plus a bound on
/// closure rounds.
struct Truncation {
    unsigned max_dt_order = 3;    // J
    unsigned max_x_degree = 12;   // D
    unsigned max_rounds = 256;    // W

    bool contains(const BfElement& e) const {
        return e.dt_order() <= max_dt_order && e.max_degree() <= max_x_degree;
    }
};

/// Generating elements of V^alpha over the Weyl algebra, per model.
std::vector<BfElement> v_generators(const VModel& model, const Rational& alpha, unsigned j_cap);

/// How a snapshot basis vector was produced: an operator word (coordinate
/// multiplications 'x' and derivations 'd') applied to one generator.
struct ClosureTrace {
    std::size_t generator = 0;
    std::vector<std::pair<char, std::size_t>> word;  // applied left to right
};

/// Inner approximation of V^alpha inside the window: the span of the
/// generators closed under multiplication by coordinates and coordinate
/// derivations, results leaving the window discarded.
class SubspaceSnapshot {
public:
    SubspaceSnapshot(const VModel& model, Rational level, const Truncation& trunc);

    const Rational& level() const { return level_; }
    bool saturated() const { return saturated_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BfElement>& basis() const { return basis_; }
    const Truncation& truncation() const { return trunc_; }
    const Polynomial& f() const { return f_; }

    /// The untouched closure elements spanning the snapshot, parallel to
    /// traces(): witnesses()[i] is the word traces()[i] applied to its
    /// generator.
    const std::vector<BfElement>& witnesses() const { return witnesses_; }
    const std::vector<ClosureTrace>& traces() const { return traces_; }
    const std::vector<BfElement>& generators() const { return generators_; }

    bool in_window(const BfElement& e) const { return trunc_.contains(e); }
    /// e must be inside the window.
    bool contains(const BfElement& e) const;
    /// Dimension of the quotient by another snapshot of the same window
    /// (the other is treated as the deeper piece).
    std::size_t quotient_dim(const SubspaceSnapshot& deeper) const;
    /// Representatives of a basis of this snapshot modulo `deeper`.
    std::vector<BfElement> quotient_basis(const SubspaceSnapshot& deeper) const;

    SparseVec encode(const BfElement& e) const;
    BfElement decode(const SparseVec& v) const;

private:
    friend struct GrMaps;
    Rational level_;
    Truncation trunc_;
    Polynomial f_;
    bool saturated_ = false;
    unsigned bits_ = 0;
    EchelonBasis ech_;
    std::vector<BfElement> basis_;
    std::vector<BfElement> witnesses_;
    std::vector<ClosureTrace> traces_;
    std::vector<BfElement> generators_;
};

struct LevelReport {
    Rational alpha;
    std::size_t dim = 0;
    std::size_t gr_dim = 0;
    bool saturated = false;
    bool mono_ok = true;
    bool t_up_ok = true;
    bool t_eq_checked = false;
    bool t_eq_ok = true;
    bool dt_down_ok = true;
    int nilpotency_order = -1;  // minimal k >= 1; -1 when not reached within the cap
};

struct AxiomReport {
    std::vector<LevelReport> levels;
    bool all_passed = true;
    std::string failure;  // first witness description
};

/// Containment and nilpotency checks of the filtration axioms on the
/// computed snapshots; levels must be sorted ascending on the model grid.
AxiomReport check_axioms(const VModel& model, const std::vector<Rational>& levels,
                         const Truncation& trunc);

struct GrMaps {
    std::size_t dim_lo = 0;  // dim Gr^alpha on the window
    std::size_t dim_hi = 0;  // dim Gr^(alpha+1) on the window
    // The maps act on the interior representatives (those with enough
    // window headroom for the operator); boundary classes are excluded.
    std::size_t t_domain_dim = 0;   // interior part of Gr^alpha
    std::size_t dt_domain_dim = 0;  // interior part of Gr^(alpha+1)
    // Column j = image of the j-th interior representative, in full
    // quotient coordinates of the target piece.
    std::vector<std::vector<Rational>> t_matrix;   // dim_hi x t_domain_dim
    std::vector<std::vector<Rational>> dt_matrix;  // dim_lo x dt_domain_dim
    bool t_injective = false, t_surjective = false;
    bool dt_injective = false, dt_surjective = false;
};

/// Matrices of t: Gr^alpha -> Gr^(alpha+1) and dt: Gr^(alpha+1) -> Gr^alpha
/// on the truncated graded pieces.  Throws std::runtime_error with a
/// diagnostic when a needed snapshot is unsaturated or an image leaves the
/// computed span.
GrMaps gr_action_maps(const VModel& model, const Rational& alpha, const Truncation& trunc);

enum class Membership { certified_member, not_in_window, unknown };

/// Inner-approximation membership: never claims non-membership.
Membership membership_certify(const BfElement& e, const VModel& model, const Rational& alpha,
                              const Truncation& trunc);

/// Shared snapshot cache for repeated level queries.
class SnapshotCache {
public:
    SnapshotCache(VModel model, Truncation trunc) : model_(std::move(model)), trunc_(trunc) {}
    const SubspaceSnapshot& at(const Rational& level);
    const VModel& model() const { return model_; }
    const Truncation& truncation() const { return trunc_; }

private:
    VModel model_;
    Truncation trunc_;
    std::map<Rational, SubspaceSnapshot> cache_;
};

}  // namespace vflab
