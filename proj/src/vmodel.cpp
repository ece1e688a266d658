#include "vflab/vmodel.hpp"

#include "vflab/deadline.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace vflab {

namespace {

VarSet coordinate_varset(std::size_t n) {
    static const char* short_names[] = {"x", "y", "z", "w"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        if (n <= 4)
            names.push_back(short_names[i]);
        else
            names.push_back("x" + std::to_string(i + 1));
    }
    return VarSet(std::move(names));
}

Rational ceil_rat(const Rational& r) { return Rational(r.ceil()); }

}  // namespace

VModel VModel::smooth() {
    VarSet vars({"y"});
    return VModel(Smooth{}, Polynomial::variable(vars, 0), 1);
}

VModel VModel::snc(std::vector<unsigned> exponents) {
    bool any = false;
    for (unsigned a : exponents) any |= (a > 0);
    if (!any) throw std::invalid_argument("VModel::snc: exponents must not all be zero");
    VarSet vars = coordinate_varset(exponents.size());
    Polynomial f = Polynomial::constant(vars, Rational(1));
    unsigned den = 1;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) continue;
        f = f * Polynomial::variable(vars, i, exponents[i]);
        den = static_cast<unsigned>(lcm(mpz_class(den), mpz_class(exponents[i])).get_ui());
    }
    return VModel(Snc{std::move(exponents)}, std::move(f), den);
}

VModel VModel::quasi_homogeneous(Polynomial f, WeightVector w) {
    // Re-validates the pair; accepts already-normalized weights as-is.
    w = validate_weighted_homogeneous(f, w.weights);
    mpz_class den(1);
    for (const auto& wi : w.weights) den = lcm(den, wi.den());
    unsigned d = static_cast<unsigned>(den.get_ui());
    Polynomial ff = f;
    return VModel(QuasiHomogeneous{std::move(f), std::move(w)}, std::move(ff), d);
}

Rational VModel::next_grid_point(const Rational& alpha) const {
    const Rational step(1, static_cast<long>(grid_den_));
    // Smallest grid multiple strictly greater than alpha.
    Rational scaled = alpha / step;
    return step * (Rational(scaled.floor()) + Rational(1));
}

namespace {

// Minimal monomials u (under divisibility) with weighted degree >= threshold.
std::vector<Monomial> minimal_weighted_generators(const std::vector<Rational>& w,
                                                  const Rational& threshold) {
    const std::size_t n = w.size();
    if (threshold.sign() <= 0) return {Monomial(n)};
    std::vector<Monomial> out;
    // Enumerate candidates with rho(u) >= T and rho(u - e_i) < T for all i
    // with u_i > 0; such u satisfy rho(u) < T + max(w).
    std::vector<unsigned> bound(n);
    for (std::size_t i = 0; i < n; ++i) {
        // u_i <= ceil((T + w_i)/w_i)
        Rational b = (threshold + w[i]) / w[i];
        bound[i] = static_cast<unsigned>(b.ceil().get_ui());
    }
    Monomial cur(n);
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational acc) {
        if (i == n) {
            if (acc < threshold) return;
            for (std::size_t k = 0; k < n; ++k) {
                if (cur[k] == 0) continue;
                if (acc - w[k] >= threshold) return;  // not minimal
            }
            out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= bound[i]; ++e) {
            cur[i] = e;
            Rational next = acc + w[i] * Rational((long)e);
            // Prune: beyond threshold plus one step in this variable the
            // monomial cannot be minimal.
            if (e > 0 && next - w[i] >= threshold) {
                cur[i] = 0;
                break;
            }
            rec(i + 1, next);
        }
        cur[i] = 0;
    };
    rec(0, Rational(0));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<BfElement> v_generators(const VModel& model, const Rational& alpha, unsigned j_cap) {
    const Polynomial& f = model.f();
    const VarSet& vars = f.vars();
    std::vector<BfElement> out;

    if (model.is_smooth()) {
        Rational m = ceil_rat(alpha) - Rational(1);
        unsigned e = m.sign() > 0 ? static_cast<unsigned>(m.num().get_ui()) : 0;
        out.push_back(BfElement::monomial_term(f, 0, Polynomial::variable(vars, 0, e)));
        return out;
    }

    if (const auto* snc = model.snc_data()) {
        const Rational one(1);
        Rational jmax_r = one - alpha;
        unsigned jmax = j_cap;
        if (jmax_r.sign() > 0) {
            unsigned floor_need = static_cast<unsigned>(ceil_rat(jmax_r).num().get_ui());
            jmax = std::max(jmax, floor_need);
        }
        for (unsigned j = 0; j <= jmax; ++j) {
            Rational lambda = alpha + Rational((long)j);
            Monomial m(vars.size());
            if (lambda.sign() > 0) {
                for (std::size_t i = 0; i < snc->exponents.size(); ++i) {
                    if (snc->exponents[i] == 0) continue;
                    Rational e = ceil_rat(lambda * Rational((long)snc->exponents[i])) - Rational(1);
                    m[i] = e.sign() > 0 ? static_cast<unsigned>(e.num().get_ui()) : 0;
                }
            }
            out.push_back(BfElement::monomial_term(f, j, Polynomial::term(vars, m, Rational(1))));
        }
        return out;
    }

    const auto* qh = model.qh_data();
    if (alpha > Rational(1)) {
        Rational m = ceil_rat(alpha) - Rational(1);
        unsigned steps = static_cast<unsigned>(m.num().get_ui());
        std::vector<BfElement> base = v_generators(model, alpha - m, j_cap);
        for (auto& g : base) {
            BfElement e = g;
            for (unsigned k = 0; k < steps; ++k) e = act_t(e);
            out.push_back(std::move(e));
        }
        return out;
    }
    const Rational total = qh->w.total();
    for (unsigned j = 0; j <= j_cap; ++j) {
        Rational threshold = alpha + Rational((long)j) - total;
        for (const auto& u : minimal_weighted_generators(qh->w.weights, threshold))
            out.push_back(BfElement::monomial_term(f, j, Polynomial::term(vars, u, Rational(1))));
    }
    return out;
}

SubspaceSnapshot::SubspaceSnapshot(const VModel& model, Rational level, const Truncation& trunc)
    : level_(std::move(level)), trunc_(trunc), f_(model.f()), ech_(false) {
    bits_ = 1;
    while ((1u << bits_) <= trunc.max_x_degree + 1) ++bits_;
    const std::size_t n = f_.vars().size();
    if (bits_ * n + 8 > 63) throw std::runtime_error("truncation window exceeds key capacity");

    struct Pending {
        BfElement element;
        ClosureTrace trace;
    };
    std::deque<Pending> queue;
    auto try_insert = [&](BfElement e, ClosureTrace trace) {
        if (e.is_zero() || !trunc_.contains(e)) return false;
        SparseVec v = encode(e);
        if (!ech_.insert(std::move(v))) return false;
        basis_.push_back(decode(ech_.rows().back()));
        // Walk the closure from the original image: row reduction mixes in
        // unrelated high-degree terms whose operator images would leave the
        // window and kill reachable paths.
        witnesses_.push_back(e);
        traces_.push_back(trace);
        queue.push_back(Pending{std::move(e), std::move(trace)});
        return true;
    };

    generators_ = v_generators(model, level_, trunc.max_dt_order);
    for (std::size_t g = 0; g < generators_.size(); ++g)
        try_insert(generators_[g], ClosureTrace{g, {}});

    // Closure under coordinate multiplications and derivations, in rounds.
    saturated_ = true;
    unsigned round = 0;
    while (!queue.empty()) {
        Deadline::poll();
        if (++round > trunc_.max_rounds) {
            saturated_ = false;
            break;
        }
        std::deque<Pending> current;
        std::swap(current, queue);
        for (const auto& p : current) {
            for (std::size_t i = 0; i < n; ++i) {
                ClosureTrace mul = p.trace;
                mul.word.emplace_back('x', i);
                try_insert(p.element * Polynomial::variable(f_.vars(), i), std::move(mul));
                ClosureTrace der = p.trace;
                der.word.emplace_back('d', i);
                try_insert(act_derivation(i, p.element), std::move(der));
            }
        }
    }
}

SparseVec SubspaceSnapshot::encode(const BfElement& e) const {
    std::map<std::uint64_t, Rational, std::greater<>> acc;
    const std::size_t n = f_.vars().size();
    for (const auto& [j, u] : e.components()) {
        for (const auto& [m, c] : u.terms()) {
            std::uint64_t key = static_cast<std::uint64_t>(j) << (bits_ * n);
            for (std::size_t i = 0; i < n; ++i)
                key |= static_cast<std::uint64_t>(m[i]) << (bits_ * (n - 1 - i));
            acc.emplace(key, c);
        }
    }
    return sparse_from_map(acc);
}

BfElement SubspaceSnapshot::decode(const SparseVec& v) const {
    const std::size_t n = f_.vars().size();
    const std::uint64_t mask = (1u << bits_) - 1;
    BfElement e(f_);
    for (const auto& [key, c] : v) {
        unsigned j = static_cast<unsigned>(key >> (bits_ * n));
        Monomial m(n);
        for (std::size_t i = 0; i < n; ++i)
            m[i] = static_cast<unsigned>((key >> (bits_ * (n - 1 - i))) & mask);
        e.add_component(j, Polynomial::term(f_.vars(), m, c));
    }
    return e;
}

bool SubspaceSnapshot::contains(const BfElement& e) const {
    if (!in_window(e)) throw std::invalid_argument("SubspaceSnapshot: element outside window");
    SparseVec v = encode(e);
    ech_.reduce(v);
    return v.empty();
}

std::size_t SubspaceSnapshot::quotient_dim(const SubspaceSnapshot& deeper) const {
    return quotient_basis(deeper).size();
}

std::vector<BfElement> SubspaceSnapshot::quotient_basis(const SubspaceSnapshot& deeper) const {
    // Greedy from small elements so representatives keep window headroom
    // for the operator maps acting on the quotient.
    std::vector<const BfElement*> order;
    order.reserve(basis_.size());
    for (const auto& b : basis_) order.push_back(&b);
    std::stable_sort(order.begin(), order.end(), [this](const BfElement* a, const BfElement* b) {
        auto ka = std::make_pair(a->max_degree(), a->dt_order());
        auto kb = std::make_pair(b->max_degree(), b->dt_order());
        if (ka != kb) return ka < kb;
        return encode(*a) < encode(*b);
    });
    EchelonBasis acc = deeper.ech_;
    std::vector<BfElement> reps;
    for (const BfElement* b : order) {
        if (acc.insert(encode(*b))) reps.push_back(*b);
    }
    return reps;
}

const SubspaceSnapshot& SnapshotCache::at(const Rational& level) {
    auto it = cache_.find(level);
    if (it == cache_.end())
        it = cache_.emplace(level, SubspaceSnapshot(model_, level, trunc_)).first;
    return it->second;
}

namespace {

std::string describe(const BfElement& e) { return e.str(); }

}  // namespace

AxiomReport check_axioms(const VModel& model, const std::vector<Rational>& levels,
                         const Truncation& trunc) {
    if (!std::is_sorted(levels.begin(), levels.end()))
        throw std::domain_error("check_axioms: levels must be sorted ascending");
    // Off-grid levels are fine: the explicit filtrations are constant
    // between consecutive grid points, so the snapshot formulas are total.

    AxiomReport report;
    SnapshotCache cache(model, trunc);
    const unsigned deg_f = model.f().total_degree();
    const unsigned D = trunc.max_x_degree;
    const unsigned J = trunc.max_dt_order;

    auto fail = [&](LevelReport& lr, bool LevelReport::* flag, const std::string& what,
                    const BfElement& witness) {
        lr.*flag = false;
        report.all_passed = false;
        if (report.failure.empty())
            report.failure = what + " at level " + lr.alpha.str() + ", witness " +
                             describe(witness);
    };

    for (std::size_t li = 0; li < levels.size(); ++li) {
        const Rational& alpha = levels[li];
        const SubspaceSnapshot& s = cache.at(alpha);
        LevelReport lr;
        lr.alpha = alpha;
        lr.dim = s.dim();
        lr.saturated = s.saturated();

        // (a) monotonicity against the next listed level.
        if (li + 1 < levels.size()) {
            const SubspaceSnapshot& deeper = cache.at(levels[li + 1]);
            if (s.saturated()) {
                for (const auto& v : deeper.basis()) {
                    if (!s.contains(v)) {
                        fail(lr, &LevelReport::mono_ok, "monotonicity violated", v);
                        break;
                    }
                }
            }
        }

        // (b) t V^alpha inside V^(alpha+1); margin: degree headroom deg(f).
        const SubspaceSnapshot& up = cache.at(alpha + Rational(1));
        if (up.saturated()) {
            for (const auto& v : s.basis()) {
                if (v.max_degree() + deg_f > D) continue;
                BfElement tv = act_t(v);
                if (!up.in_window(tv)) continue;
                if (!up.contains(tv)) {
                    fail(lr, &LevelReport::t_up_ok, "t-image escapes the next level", v);
                    break;
                }
            }
        }

        // Equality within window for alpha > 0 on saturated snapshots.
        if (alpha.sign() > 0 && s.saturated() && up.saturated()) {
            lr.t_eq_checked = true;
            EchelonBasis t_image;
            for (const auto& v : s.basis()) {
                BfElement tv = act_t(v);
                if (!up.in_window(tv)) continue;
                t_image.insert(up.encode(tv));
            }
            for (const auto& w : up.basis()) {
                if (w.max_degree() + deg_f > D || w.dt_order() + 1 > J) continue;
                SparseVec v = up.encode(w);
                t_image.reduce(v);
                if (!v.empty()) {
                    fail(lr, &LevelReport::t_eq_ok, "t V^a = V^(a+1) fails within window", w);
                    break;
                }
            }
        }

        // (c) dt V^alpha inside V^(alpha-1).
        const SubspaceSnapshot& down = cache.at(alpha - Rational(1));
        if (down.saturated()) {
            for (const auto& v : s.basis()) {
                if (v.dt_order() + 1 > J) continue;
                BfElement dv = act_dt(v);
                if (!down.in_window(dv)) continue;
                if (!down.contains(dv)) {
                    fail(lr, &LevelReport::dt_down_ok, "dt-image escapes the previous level", v);
                    break;
                }
            }
        }

        // (d) minimal k >= 1 with (s+alpha)^k S(alpha) inside S(>alpha).
        const SubspaceSnapshot& above = cache.at(model.next_grid_point(alpha));
        lr.gr_dim = s.quotient_dim(above);
        {
            std::vector<BfElement> gen;
            for (const auto& v : s.basis()) gen.push_back(v);
            const int cap = 4;
            for (int k = 1; k <= cap; ++k) {
                std::vector<BfElement> next;
                bool all_in = true;
                for (const auto& v : gen) {
                    if (v.max_degree() + deg_f > D || v.dt_order() + 1 > J) continue;
                    BfElement img = act_s(v) + v * alpha;
                    if (!above.in_window(img)) continue;
                    if (!img.is_zero() && !above.contains(img)) all_in = false;
                    if (!img.is_zero()) next.push_back(img);
                }
                if (all_in) {
                    lr.nilpotency_order = k;
                    break;
                }
                gen = std::move(next);
                if (gen.empty()) break;
            }
        }

        report.levels.push_back(std::move(lr));
    }
    return report;
}

GrMaps gr_action_maps(const VModel& model, const Rational& alpha, const Truncation& trunc) {
    SnapshotCache cache(model, trunc);
    const SubspaceSnapshot& lo = cache.at(alpha);
    const SubspaceSnapshot& lo_up = cache.at(model.next_grid_point(alpha));
    const SubspaceSnapshot& hi = cache.at(alpha + Rational(1));
    const SubspaceSnapshot& hi_up = cache.at(model.next_grid_point(alpha + Rational(1)));
    for (const auto* s : {&lo, &lo_up, &hi, &hi_up}) {
        if (!s->saturated())
            throw std::runtime_error("gr_action_maps: snapshot at level " + s->level().str() +
                                     " is unsaturated");
    }

    GrMaps maps;
    std::vector<BfElement> reps_lo = lo.quotient_basis(lo_up);
    std::vector<BfElement> reps_hi = hi.quotient_basis(hi_up);
    maps.dim_lo = reps_lo.size();
    maps.dim_hi = reps_hi.size();

    const unsigned deg_f = model.f().total_degree();
    std::vector<BfElement> t_sources, dt_sources;
    for (const auto& r : reps_lo)
        if (r.max_degree() + deg_f <= trunc.max_x_degree) t_sources.push_back(r);
    for (const auto& r : reps_hi)
        if (r.dt_order() + 1 <= trunc.max_dt_order) dt_sources.push_back(r);
    maps.t_domain_dim = t_sources.size();
    maps.dt_domain_dim = dt_sources.size();

    // Expresses e in quotient coordinates over `reps`, modulo `deeper`.
    auto coords = [](const SubspaceSnapshot& snap, const SubspaceSnapshot& deeper,
                     const std::vector<BfElement>& reps, const BfElement& e,
                     const char* what) -> std::vector<Rational> {
        EchelonBasis ech(true);
        for (const auto& b : deeper.basis()) ech.insert(snap.encode(b));
        std::vector<std::uint64_t> rep_ids;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            ech.insert(snap.encode(reps[i]), SparseVec{{static_cast<std::uint64_t>(i), Rational(1)}});
        }
        SparseVec v = snap.encode(e), prov;
        ech.reduce(v, &prov);
        if (!v.empty())
            throw std::runtime_error(std::string("gr_action_maps: ") + what +
                                     "-image leaves the computed span");
        std::vector<Rational> c(reps.size(), Rational(0));
        for (const auto& [id, coeff] : prov) c[static_cast<std::size_t>(id)] = -coeff;
        return c;
    };

    maps.t_matrix.assign(maps.dim_hi, std::vector<Rational>(maps.t_domain_dim, Rational(0)));
    for (std::size_t j = 0; j < t_sources.size(); ++j) {
        BfElement img = act_t(t_sources[j]);
        auto c = coords(hi, hi_up, reps_hi, img, "t");
        for (std::size_t i = 0; i < reps_hi.size(); ++i) maps.t_matrix[i][j] = c[i];
    }

    maps.dt_matrix.assign(maps.dim_lo, std::vector<Rational>(maps.dt_domain_dim, Rational(0)));
    for (std::size_t j = 0; j < dt_sources.size(); ++j) {
        BfElement img = act_dt(dt_sources[j]);
        auto c = coords(lo, lo_up, reps_lo, img, "dt");
        for (std::size_t i = 0; i < reps_lo.size(); ++i) maps.dt_matrix[i][j] = c[i];
    }

    auto rank = [](std::vector<std::vector<Rational>> m) -> std::size_t {
        if (m.empty() || m[0].empty()) return 0;
        auto sol = solve_dense(m, std::vector<Rational>(m.size(), Rational(0)));
        return m[0].size() - sol->nullspace.size();
    };
    std::size_t rt = rank(maps.t_matrix);
    std::size_t rdt = rank(maps.dt_matrix);
    maps.t_injective = (rt == maps.t_domain_dim);
    maps.t_surjective = (rt == maps.dim_hi);
    maps.dt_injective = (rdt == maps.dt_domain_dim);
    maps.dt_surjective = (rdt == maps.dim_lo);
    return maps;
}

Membership membership_certify(const BfElement& e, const VModel& model, const Rational& alpha,
                              const Truncation& trunc) {
    if (!trunc.contains(e)) return Membership::not_in_window;
    SubspaceSnapshot snap(model, alpha, trunc);
    if (snap.contains(e)) return Membership::certified_member;
    return Membership::unknown;
}

}  // namespace vflab
