#include "vflab/groebner.hpp"

#include <algorithm>
#include <set>

namespace vflab {

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case Kind::Lex:
            return a.exponents() < b.exponents();
        case Kind::Grevlex: {
            unsigned da = a.total_degree(), db = b.total_degree();
            if (da != db) return da < db;
            // Equal degree: a < b iff the last nonzero entry of a-b is positive.
            for (std::size_t i = a.nvars(); i-- > 0;) {
                if (a[i] != b[i]) return a[i] > b[i];
            }
            return false;
        }
        case Kind::Weighted: {
            if (weights_.size() != a.nvars())
                throw std::invalid_argument("MonomialOrder: weight vector length mismatch");
            Rational da = a.weighted_degree(weights_), db = b.weighted_degree(weights_);
            if (da != db) return da < db;
            unsigned ta = a.total_degree(), tb = b.total_degree();
            if (ta != tb) return ta < tb;
            for (std::size_t i = a.nvars(); i-- > 0;) {
                if (a[i] != b[i]) return a[i] > b[i];
            }
            return false;
        }
    }
    return false;
}

Ideal::Ideal(VarSet vars, std::vector<Polynomial> gens) : vars_(std::move(vars)) {
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.vars() != vars_) throw std::invalid_argument("Ideal: VarSet mismatch");
        gens_.push_back(std::move(g));
    }
}

const Monomial& leading_monomial(const Polynomial& p, const MonomialOrder& ord) {
    if (p.is_zero()) throw std::invalid_argument("leading_monomial: zero polynomial");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : p.terms())
        if (!best || ord.less(*best, m)) best = &m;
    return *best;
}

Rational leading_coefficient(const Polynomial& p, const MonomialOrder& ord) {
    return p.coeff(leading_monomial(p, ord));
}

Polynomial normal_form(const Polynomial& g, const std::vector<Polynomial>& divisors,
                       const MonomialOrder& ord) {
    struct Head {
        const Polynomial* p;
        Monomial lm;
        Rational lc;
    };
    std::vector<Head> heads;
    heads.reserve(divisors.size());
    for (const auto& d : divisors) {
        if (d.is_zero()) continue;
        Monomial lm = leading_monomial(d, ord);
        Rational lc = d.coeff(lm);
        heads.push_back({&d, std::move(lm), std::move(lc)});
    }

    Polynomial rem = g;
    Polynomial out(g.vars());
    while (!rem.is_zero()) {
        Monomial lm = leading_monomial(rem, ord);
        Rational lc = rem.coeff(lm);
        bool reduced = false;
        for (const auto& h : heads) {
            if (!h.lm.divides(lm)) continue;
            Monomial q = lm / h.lm;
            rem -= (*h.p) * Polynomial::term(g.vars(), q, lc / h.lc);
            reduced = true;
            break;
        }
        if (!reduced) {
            out.add_term(lm, lc);
            rem.add_term(lm, -lc);
        }
    }
    return out;
}

namespace {

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    Monomial lf = leading_monomial(f, ord), lg = leading_monomial(g, ord);
    Monomial l = Monomial::lcm(lf, lg);
    Polynomial a = Polynomial::term(f.vars(), l / lf, Rational(1) / f.coeff(lf));
    Polynomial b = Polynomial::term(g.vars(), l / lg, Rational(1) / g.coeff(lg));
    return f * a - g * b;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned deg;
};

// Gebauer-Moller update: prune the pending pair set against the incoming
// element and build the new pairs it participates in.
void update_pairs(std::vector<Pair>& pairs, const std::vector<Polynomial>& basis,
                  const std::vector<Monomial>& lms, std::size_t t, const MonomialOrder& ord) {
    const Monomial& lt = lms[t];

    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < t; ++i) {
        Pair p{i, t, Monomial::lcm(lms[i], lt), 0};
        p.deg = p.lcm.total_degree();
        fresh.push_back(std::move(p));
    }

    // Criterion M: drop (i,t) if some (j,t) has lcm strictly dividing lcm(i,t).
    std::vector<bool> keep(fresh.size(), true);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
        for (std::size_t b = 0; b < fresh.size(); ++b) {
            if (a == b || !keep[b]) continue;
            if (fresh[b].lcm != fresh[a].lcm && fresh[b].lcm.divides(fresh[a].lcm)) {
                keep[a] = false;
                break;
            }
        }
    }
    // Criterion F: among equal lcms keep a single representative.
    for (std::size_t a = 0; a < fresh.size(); ++a) {
        if (!keep[a]) continue;
        for (std::size_t b = a + 1; b < fresh.size(); ++b) {
            if (keep[b] && fresh[b].lcm == fresh[a].lcm) keep[b] = false;
        }
    }
    // Buchberger's coprimality criterion.
    for (std::size_t a = 0; a < fresh.size(); ++a) {
        if (keep[a] && lms[fresh[a].i].coprime_with(lt)) keep[a] = false;
    }

    // Criterion B: drop old pairs whose lcm is divisible by lt unless lt's
    // pair lcms with both members coincide with it.
    std::erase_if(pairs, [&](const Pair& p) {
        if (!lt.divides(p.lcm)) return false;
        return Monomial::lcm(lms[p.i], lt) != p.lcm && Monomial::lcm(lms[p.j], lt) != p.lcm;
    });

    for (std::size_t a = 0; a < fresh.size(); ++a)
        if (keep[a]) pairs.push_back(std::move(fresh[a]));
    (void)basis;
    (void)ord;
}

}  // namespace

std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& ord) {
    std::vector<Polynomial> basis;
    std::vector<Monomial> lms;
    std::vector<Pair> pairs;

    auto push = [&](Polynomial p) {
        Rational lc = leading_coefficient(p, ord);
        p = p * lc.inverse();
        lms.push_back(leading_monomial(p, ord));
        basis.push_back(std::move(p));
        update_pairs(pairs, basis, lms, basis.size() - 1, ord);
    };

    for (const auto& g : ideal.generators()) push(g);

    while (!pairs.empty()) {
        // Normal strategy: smallest lcm degree first, ties by index.
        auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            if (a.deg != b.deg) return a.deg < b.deg;
            if (ord.less(a.lcm, b.lcm)) return true;
            if (ord.less(b.lcm, a.lcm)) return false;
            return std::tie(a.i, a.j) < std::tie(b.i, b.j);
        });
        Pair p = *it;
        pairs.erase(it);
        Polynomial s = normal_form(s_polynomial(basis[p.i], basis[p.j], ord), basis, ord);
        if (!s.is_zero()) push(std::move(s));
    }

    // Minimalize: drop elements whose lead is divisible by another lead.
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            if (lms[j].divides(lms[i]) && (lms[j] != lms[i] || j < i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) kept.push_back(i);
    }

    // Inter-reduce tails.
    std::vector<Polynomial> reduced;
    for (std::size_t k = 0; k < kept.size(); ++k) {
        std::vector<Polynomial> others;
        for (std::size_t l = 0; l < kept.size(); ++l)
            if (l != k) others.push_back(basis[kept[l]]);
        Polynomial r = normal_form(basis[kept[k]], others, ord);
        if (!r.is_zero()) {
            r = r * leading_coefficient(r, ord).inverse();
            reduced.push_back(std::move(r));
        }
    }

    // Canonical output order: ascending leading monomials.
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.less(leading_monomial(a, ord), leading_monomial(b, ord));
    });
    return reduced;
}

bool ideal_membership(const Polynomial& g, const Ideal& ideal, const MonomialOrder& ord) {
    if (g.vars() != ideal.vars()) throw std::invalid_argument("ideal_membership: VarSet mismatch");
    if (g.is_zero()) return true;
    if (ideal.is_zero()) return false;
    return normal_form(g, groebner_basis(ideal, ord), ord).is_zero();
}

QuotientBasis standard_monomials(const Ideal& ideal, const MonomialOrder& ord, std::size_t cap) {
    if (cap == 0) throw std::invalid_argument("standard_monomials: cap must be positive");
    const std::size_t n = ideal.vars().size();
    QuotientBasis out;
    if (ideal.is_zero()) {
        out.finite = (n == 0);
        if (out.finite) out.monomials.push_back(Monomial(0));
        return out;
    }

    std::vector<Monomial> lms;
    for (const auto& g : groebner_basis(ideal, ord)) lms.push_back(leading_monomial(g, ord));

    // Unit ideal: no standard monomials, zero-dimensional quotient.
    for (const auto& m : lms) {
        if (m.is_one()) {
            out.finite = true;
            return out;
        }
    }

    // Finite iff each variable occurs as a pure power among the leads.
    for (std::size_t i = 0; i < n; ++i) {
        bool pure = false;
        for (const auto& m : lms) {
            bool only_i = m[i] > 0;
            for (std::size_t j = 0; only_i && j < n; ++j)
                if (j != i && m[j] > 0) only_i = false;
            if (only_i) {
                pure = true;
                break;
            }
        }
        if (!pure) return out;  // finite=false
    }
    out.finite = true;

    auto is_standard = [&](const Monomial& m) {
        for (const auto& l : lms)
            if (l.divides(m)) return false;
        return true;
    };

    // Standard monomials form an order ideal: grow from 1 by single steps.
    std::set<Monomial> seen;
    std::vector<Monomial> queue{Monomial(n)};
    seen.insert(queue.front());
    for (std::size_t q = 0; q < queue.size(); ++q) {
        Monomial m = queue[q];
        for (std::size_t i = 0; i < n; ++i) {
            Monomial next(m);
            next[i] += 1;
            if (!seen.count(next) && is_standard(next)) {
                if (seen.size() + 1 >= cap) throw std::runtime_error("possibly infinite quotient");
                seen.insert(next);
                queue.push_back(std::move(next));
            }
        }
    }
    out.monomials.assign(seen.begin(), seen.end());
    return out;
}

}  // namespace vflab
