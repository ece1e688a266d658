#include "vflab/multiplier.hpp"

#include <algorithm>
#include <set>

namespace vflab {

MonomialDivisor::MonomialDivisor(std::vector<unsigned> a) : exponents(std::move(a)) {
    bool any = false;
    for (unsigned e : exponents) any |= (e > 0);
    if (!any) throw std::invalid_argument("MonomialDivisor: at least one exponent must be positive");
}

unsigned MonomialDivisor::grid_denominator() const {
    mpz_class den(1);
    for (unsigned e : exponents)
        if (e > 0) den = lcm(den, mpz_class(e));
    return static_cast<unsigned>(den.get_ui());
}

LogResolutionData::LogResolutionData(std::vector<ResolutionRow> r) : rows(std::move(r)) {
    if (rows.empty()) throw std::invalid_argument("LogResolutionData: no rows");
    for (const auto& row : rows)
        if (row.a == 0) throw std::invalid_argument("LogResolutionData: row with a = 0");
}

MonomialIdeal i_lambda(const MonomialDivisor& a, const Rational& lambda) {
    Monomial g(a.exponents.size());
    if (lambda.sign() > 0) {
        for (std::size_t i = 0; i < a.exponents.size(); ++i) {
            if (a.exponents[i] == 0) continue;
            Rational e = Rational((lambda * Rational((long)a.exponents[i])).ceil()) - Rational(1);
            g[i] = e.sign() > 0 ? static_cast<unsigned>(e.num().get_ui()) : 0;
        }
    }
    return MonomialIdeal{std::move(g)};
}

MonomialIdeal multiplier_ideal_monomial(const MonomialDivisor& a, const Rational& lambda) {
    if (lambda.sign() < 0)
        throw std::invalid_argument("multiplier_ideal_monomial: lambda must be non-negative");
    Monomial g(a.exponents.size());
    for (std::size_t i = 0; i < a.exponents.size(); ++i) {
        if (a.exponents[i] == 0) continue;
        mpz_class e = (lambda * Rational((long)a.exponents[i])).floor();
        g[i] = static_cast<unsigned>(e.get_ui());
    }
    return MonomialIdeal{std::move(g)};
}

std::vector<Rational> jumping_numbers_monomial(const MonomialDivisor& a, const Rational& bound) {
    if (bound.sign() <= 0) throw std::invalid_argument("jumping_numbers_monomial: bound must be positive");
    std::set<Rational> jumps;
    for (unsigned ai : a.exponents) {
        if (ai == 0) continue;
        mpz_class top = (bound * Rational((long)ai)).floor();
        for (mpz_class j = 1; j <= top; ++j)
            jumps.insert(Rational(mpq_class(j) / mpq_class((long)ai)));
    }
    return {jumps.begin(), jumps.end()};
}

Rational lct_from_resolution(const LogResolutionData& data) {
    std::optional<Rational> best;
    for (const auto& row : data.rows) {
        Rational v(static_cast<long>(row.k) + 1, static_cast<long>(row.a));
        if (!best || v < *best) best = v;
    }
    return *best;
}

Rational lct_g_from_resolution(const LogResolutionData& data) {
    std::optional<Rational> best;
    for (const auto& row : data.rows) {
        Rational v(static_cast<long>(row.k) + static_cast<long>(row.b) + 1,
                   static_cast<long>(row.a));
        if (!best || v < *best) best = v;
    }
    return *best;
}

RootBoundResult root_bound_candidates(const LogResolutionData& data, RootBoundKind which,
                                      unsigned m, unsigned L, bool exceptional_only) {
    RootBoundResult out;
    if (L == 0) {
        unsigned amax = 0;
        for (const auto& row : data.rows) amax = std::max(amax, row.a);
        L = 3 * amax;
    }
    switch (which) {
        case RootBoundKind::bf_roots: {
            std::set<Rational> cands;
            for (const auto& row : data.rows)
                for (unsigned l = 1; l <= L; ++l)
                    cands.insert(Rational(-(static_cast<long>(row.k) + static_cast<long>(l)),
                                          static_cast<long>(row.a)));
            out.candidates.assign(cands.begin(), cands.end());
            break;
        }
        case RootBoundKind::dtm_roots: {
            std::set<Rational> cands;
            for (long i = 1; i <= static_cast<long>(L); ++i) cands.insert(Rational(-i));
            for (const auto& row : data.rows) {
                if (exceptional_only && !row.exceptional) continue;
                for (unsigned l = 1; l <= L; ++l)
                    cands.insert(Rational((long)m) -
                                 Rational(static_cast<long>(row.k) + static_cast<long>(l),
                                          static_cast<long>(row.a)));
            }
            out.candidates.assign(cands.begin(), cands.end());
            break;
        }
        case RootBoundKind::g_dtm_bound: {
            Rational v = lct_g_from_resolution(data) - Rational((long)m);
            out.bound = -std::min(Rational(1), v);
            break;
        }
        case RootBoundKind::g_delta_bound:
            out.bound = -lct_g_from_resolution(data);
            break;
    }
    return out;
}

bool check_jumping_roots(const BFunction& b, const std::vector<Rational>& jumps) {
    for (const auto& j : jumps)
        if (!b.has_root(-j)) return false;
    return true;
}

std::optional<Rational> min_exponent_lower_bound(const LogResolutionData& data) {
    std::optional<Rational> best;
    for (const auto& row : data.rows) {
        if (!row.exceptional) continue;
        Rational v(static_cast<long>(row.k) + 1, static_cast<long>(row.a));
        if (!best || v < *best) best = v;
    }
    return best;
}

BudurSaitoReport budur_saito_consistency(const MonomialDivisor& a,
                                         const std::vector<Rational>& lambda_grid,
                                         const Truncation& trunc) {
    BudurSaitoReport report;
    VModel model = VModel::snc(a.exponents);
    SnapshotCache cache(model, trunc);
    for (const auto& lambda : lambda_grid) {
        MonomialIdeal ideal = multiplier_ideal_monomial(a, lambda);
        Rational level = model.next_grid_point(lambda);
        const SubspaceSnapshot& snap = cache.at(level);
        BfElement g_delta = BfElement::monomial_term(
            model.f(), 0, Polynomial::term(model.f().vars(), ideal.generator, Rational(1)));
        ContainmentCheck check{lambda, ideal.generator, Membership::unknown};
        if (!snap.in_window(g_delta)) {
            check.result = Membership::not_in_window;
        } else if (snap.contains(g_delta)) {
            check.result = Membership::certified_member;
        } else {
            check.result = Membership::unknown;
        }
        if (check.result != Membership::certified_member) report.all_certified = false;
        report.checks.push_back(std::move(check));
    }
    return report;
}

TrivialityThreshold microlocal_triviality_threshold(const Polynomial& f, const WeightVector& w,
                                                    const Truncation& trunc) {
    TrivialityThreshold out;
    BFunction b = bs_weighted_homogeneous(f, w);
    out.value = minimal_exponent(b);
    if (!out.value) return out;  // smooth: nothing to certify

    VModel model = VModel::quasi_homogeneous(f, w);
    SnapshotCache cache(model, trunc);
    const Rational step(1, static_cast<long>(model.grid_denominator()));
    for (unsigned q = 0; q <= 2; ++q) {
        for (Rational alpha(0); alpha < Rational(1); alpha += step) {
            if (Rational((long)q) + alpha >= *out.value) break;
            Rational level = model.next_grid_point(alpha);
            const SubspaceSnapshot& snap = cache.at(level);
            BfElement probe = BfElement::delta(model.f());
            for (unsigned i = 0; i < q; ++i) probe = act_dt(probe);
            TrivialityThreshold::Certificate cert{q, alpha, Membership::unknown};
            if (!snap.in_window(probe))
                cert.result = Membership::not_in_window;
            else if (snap.contains(probe))
                cert.result = Membership::certified_member;
            if (cert.result != Membership::certified_member) out.all_certified = false;
            out.certificates.push_back(cert);
        }
    }
    return out;
}

}  // namespace vflab
