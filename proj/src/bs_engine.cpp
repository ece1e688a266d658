#include "vflab/bs_engine.hpp"

#include <algorithm>

#include "vflab/deadline.hpp"
#include "vflab/linsolve.hpp"

namespace vflab {

WeightVector validate_weighted_homogeneous(const Polynomial& f, const std::vector<Rational>& w) {
    if (f.is_zero()) throw std::domain_error("zero polynomial");
    if (w.size() != f.vars().size())
        throw std::domain_error("weight vector length does not match the variable count");
    for (const auto& wi : w)
        if (wi.sign() <= 0) throw std::domain_error("weights must be strictly positive");

    std::pair<Monomial, Monomial> conflict;
    auto deg = f.homogeneous_weighted_degree(w, &conflict);
    if (!deg) {
        auto mono_str = [&](const Monomial& m) {
            return Polynomial::term(f.vars(), m, Rational(1)).str();
        };
        throw std::domain_error("not w-homogeneous: monomials " + mono_str(conflict.first) +
                                " and " + mono_str(conflict.second) +
                                " have different weighted degrees");
    }
    if (deg->sign() <= 0) throw std::domain_error("constant polynomial has no weight normalization");

    WeightVector out;
    out.weights.reserve(w.size());
    for (const auto& wi : w) out.weights.push_back(wi / *deg);
    return out;
}

bool SigmaSet::contains(const Rational& v) const {
    return std::binary_search(values.begin(), values.end(), v);
}

SigmaSet sigma_set(const Polynomial& f, const WeightVector& w) {
    std::vector<Polynomial> partials;
    for (std::size_t i = 0; i < f.vars().size(); ++i) partials.push_back(f.derivative(i));
    Ideal jacobian(f.vars(), std::move(partials));
    QuotientBasis basis = standard_monomials(jacobian, MonomialOrder::grevlex());
    if (!basis.finite)
        throw std::domain_error("non-isolated singularity: the Milnor algebra is infinite-dimensional");

    std::map<Rational, unsigned> grades;
    for (const auto& m : basis.monomials) grades[m.weighted_degree(w.weights)] += 1;
    SigmaSet out;
    for (const auto& [v, mult] : grades) {
        out.values.push_back(v);
        out.multiplicities.push_back(mult);
    }
    return out;
}

BFunction bs_weighted_homogeneous(const Polynomial& f, const WeightVector& w) {
    SigmaSet sigma = sigma_set(f, w);
    const Rational total = w.total();
    BFunction b;
    b.add_root(Rational(-1));
    for (const auto& lambda : sigma.values) b.add_root(-(lambda + total));
    return b;
}

WeylContext twisted_context(const Polynomial& f) {
    return WeylContext(f.vars(), {"s"});
}

std::vector<WeylOperator> yano_annihilator_generators(const Polynomial& f) {
    WeylContext ctx = twisted_context(f);
    const std::size_t n = ctx.nvars();
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;

    std::vector<WeylOperator> out;
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial fi = f.derivative(i).lift(ctx.coeff_vars(), id);
        for (std::size_t j = i + 1; j < n; ++j) {
            Polynomial fj = f.derivative(j).lift(ctx.coeff_vars(), id);
            WeylOperator op = WeylOperator::coefficient(ctx, fi) * WeylOperator::derivative(ctx, j) -
                              WeylOperator::coefficient(ctx, fj) * WeylOperator::derivative(ctx, i);
            out.push_back(std::move(op));
        }
    }
    return out;
}

bool FunctionalEquationCertificate::verify() const {
    const WeylContext& ctx = P.context();
    std::vector<std::size_t> id(f.vars().size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    Polynomial fl = f.lift(ctx.coeff_vars(), id);
    Polynomial gl = g.lift(ctx.coeff_vars(), id);
    const std::size_t s = ctx.coeff_vars().index_of("s").value();

    TwistedElement rhs_src = TwistedElement::times_fs(ctx, gl * fl, fl);
    TwistedElement lhs = TwistedElement::times_fs(ctx, gl, fl);
    Polynomial bs(ctx.coeff_vars());
    for (std::size_t k = 0; k < b_coefficients.size(); ++k)
        bs += Polynomial::variable(ctx.coeff_vars(), s, static_cast<unsigned>(k)) *
              b_coefficients[k];
    return lhs * bs == act_on_twisted(P, rhs_src);
}

namespace {

struct ColumnSpace {
    std::vector<Monomial> shift_monomials;            // all x^a with deg <= Dmax
    std::vector<Monomial> dexps;                      // all beta with |beta| <= K
    std::vector<std::vector<std::pair<std::uint64_t, Rational>>> base;  // per beta, sorted desc
    unsigned max_sdeg;

    std::size_t count() const {
        return shift_monomials.size() * dexps.size() * (max_sdeg + 1);
    }
};

void enumerate_monomials_rec(std::vector<Monomial>& out, Monomial& cur, std::size_t i,
                             unsigned remaining) {
    if (i + 1 == cur.nvars()) {
        for (unsigned e = 0; e <= remaining; ++e) {
            cur[i] = e;
            out.push_back(cur);
        }
        cur[i] = 0;
        return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
        cur[i] = e;
        enumerate_monomials_rec(out, cur, i + 1, remaining - e);
    }
    cur[i] = 0;
}

std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, unsigned deg) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        out.push_back(Monomial(0));
        return out;
    }
    Monomial cur(nvars);
    enumerate_monomials_rec(out, cur, 0, deg);
    return out;
}

// Shared setup for the functional-equation linear systems.  Equation-space
// keys pack the x-exponents and the s-exponent into bit fields, so shifting
// a polynomial support by a monomial is addition of a constant.
struct FESystem {
    WeylContext ctx;
    std::size_t n = 0;       // number of x-variables
    std::size_t s_idx = 0;   // index of s in coeff_vars
    unsigned K = 0;          // derivative order bound
    ColumnSpace cols;
    Polynomial f_lift, g_lift;
    std::vector<SparseVec> rhs;  // rhs[k] = vec(s^k * g * f^K)

    FESystem(const Polynomial& f, const Polynomial& g, unsigned max_order, unsigned max_sdeg,
             unsigned b_degree)
        : ctx(twisted_context(f)) {
        n = f.vars().size();
        K = max_order;
        s_idx = ctx.coeff_vars().index_of("s").value();
        std::vector<std::size_t> id(n);
        for (std::size_t i = 0; i < n; ++i) id[i] = i;
        f_lift = f.lift(ctx.coeff_vars(), id);
        g_lift = g.lift(ctx.coeff_vars(), id);

        const unsigned dmax = b_degree * f.total_degree() + g.total_degree() +
                              max_order * f.total_degree();

        cols.max_sdeg = max_sdeg;
        cols.shift_monomials = monomials_up_to_degree(n, dmax);
        cols.dexps = monomials_up_to_degree(n, max_order);

        const unsigned max_total_sdeg = max_sdeg + max_order + b_degree;
        const unsigned max_xdeg =
            dmax + g.total_degree() + (max_order + 1 + b_degree) * f.total_degree();
        bits_ = 1;
        while ((1u << bits_) <= max_xdeg + 1) ++bits_;
        sbits_ = 1;
        while ((1u << sbits_) <= max_total_sdeg + 1) ++sbits_;
        if (bits_ * n + sbits_ > 63)
            throw std::runtime_error("functional-equation system exceeds key capacity");

        // Per-derivative-exponent base polynomial: numerator of
        // d^beta((g f) f^s) cleared to the uniform denominator f^K.
        TwistedElement u = TwistedElement::times_fs(ctx, g_lift * f_lift, f_lift);
        for (const auto& beta : cols.dexps) {
            TwistedElement e = u;
            for (std::size_t i = 0; i < n; ++i)
                for (unsigned k = 0; k < beta[i]; ++k) e = e.apply_derivative(i);
            Polynomial cleared = e.numerator() * f_lift.pow(K - e.f_power());
            std::map<std::uint64_t, Rational, std::greater<>> acc;
            for (const auto& [m, c] : cleared.terms()) acc.emplace(encode_term(m), c);
            cols.base.push_back(sparse_from_map(acc));
        }

        Polynomial base_rhs = g_lift * f_lift.pow(K);
        for (unsigned k = 0; k <= b_degree; ++k) {
            Polynomial rk = base_rhs * Polynomial::variable(ctx.coeff_vars(), s_idx, k);
            std::map<std::uint64_t, Rational, std::greater<>> acc;
            for (const auto& [m, c] : rk.terms()) acc.emplace(encode_term(m), c);
            rhs.push_back(sparse_from_map(acc));
        }
    }

    /// m lives over coeff_vars (x..., s); the s exponent sits in the low field.
    std::uint64_t encode_term(const Monomial& m) const {
        std::uint64_t key = m[m.nvars() - 1];
        for (std::size_t i = 0; i < n; ++i)
            key |= static_cast<std::uint64_t>(m[i]) << (sbits_ + bits_ * (n - 1 - i));
        return key;
    }

    std::uint64_t shift_key(const Monomial& a, unsigned k) const {
        std::uint64_t key = k;
        for (std::size_t i = 0; i < n; ++i)
            key |= static_cast<std::uint64_t>(a[i]) << (sbits_ + bits_ * (n - 1 - i));
        return key;
    }

    SparseVec column(std::size_t beta_i, unsigned k, std::size_t shift_i) const {
        const auto& base = cols.base[beta_i];
        std::uint64_t offset = shift_key(cols.shift_monomials[shift_i], k);
        SparseVec v;
        v.reserve(base.size());
        for (const auto& [key, c] : base) v.emplace_back(key + offset, c);
        return v;
    }

    // Deterministic global insertion order: descending leading key, ties by
    // column index.
    std::vector<std::size_t> insertion_order() const {
        const std::size_t total = cols.count();
        std::vector<std::pair<std::uint64_t, std::size_t>> leads;
        leads.reserve(total);
        for (std::size_t j = 0; j < total; ++j) {
            auto [bi, k, si] = split(j);
            if (cols.base[bi].empty()) continue;
            leads.emplace_back(cols.base[bi].front().first + shift_key(cols.shift_monomials[si], k),
                               j);
        }
        std::sort(leads.begin(), leads.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        std::vector<std::size_t> order;
        order.reserve(leads.size());
        for (const auto& [lead, j] : leads) order.push_back(j);
        return order;
    }

    std::tuple<std::size_t, unsigned, std::size_t> split(std::size_t j) const {
        const std::size_t per_beta = (cols.max_sdeg + 1) * cols.shift_monomials.size();
        std::size_t bi = j / per_beta;
        std::size_t rem = j % per_beta;
        unsigned k = static_cast<unsigned>(rem / cols.shift_monomials.size());
        std::size_t si = rem % cols.shift_monomials.size();
        return {bi, k, si};
    }

    unsigned bits_ = 0, sbits_ = 0;
};

WeylOperator assemble_operator(const FESystem& sys, const SparseVec& selection) {
    // selection: column index -> coefficient.
    WeylOperator P = WeylOperator::zero(sys.ctx);
    for (const auto& [j, c] : selection) {
        auto [bi, k, si] = sys.split(static_cast<std::size_t>(j));
        Monomial coeff_mono(sys.ctx.coeff_vars().size());
        const Monomial& a = sys.cols.shift_monomials[si];
        for (std::size_t i = 0; i < sys.n; ++i) coeff_mono[i] = a[i];
        coeff_mono[sys.ctx.coeff_vars().size() - 1] = k;
        P.add_term(sys.cols.dexps[bi],
                   Polynomial::term(sys.ctx.coeff_vars(), coeff_mono, c));
    }
    return P;
}

// Solves the system for fixed b coefficients; returns the certificate
// operator when feasible.
std::optional<WeylOperator> solve_for_fixed_b(const FESystem& sys,
                                              const std::vector<Rational>& b_coeffs) {
    EchelonBasis basis(true);
    std::size_t polled = 0;
    for (std::size_t j : sys.insertion_order()) {
        if ((++polled & 0xff) == 0) Deadline::poll();
        auto [bi, k, si] = sys.split(j);
        basis.insert(sys.column(bi, k, si), SparseVec{{static_cast<std::uint64_t>(j), Rational(1)}});
    }
    SparseVec target;
    for (std::size_t k = 0; k < b_coeffs.size(); ++k)
        sparse_axpy(target, b_coeffs[k], sys.rhs[k]);
    SparseVec prov;
    basis.reduce(target, &prov);
    if (!target.empty()) return std::nullopt;
    for (auto& [j, c] : prov) c = -c;
    return assemble_operator(sys, prov);
}

}  // namespace

std::optional<FunctionalEquationCertificate> solve_functional_equation(
    const Polynomial& f, const Polynomial& g, const BFunction& b, unsigned max_order,
    unsigned max_sdeg) {
    if (f.is_zero()) throw std::domain_error("solve_functional_equation: zero polynomial");
    std::vector<Rational> bc = b.coefficients();
    FESystem sys(f, g, max_order, max_sdeg, b.degree());
    auto P = solve_for_fixed_b(sys, bc);
    if (!P) return std::nullopt;
    FunctionalEquationCertificate cert{std::move(bc), std::move(*P), g, f};
    if (!cert.verify())
        throw std::logic_error("functional-equation certificate failed re-verification");
    return cert;
}

MinimalBResult find_minimal_b_bounded(const Polynomial& f, const Polynomial& g,
                                      unsigned max_order, unsigned max_sdeg) {
    if (f.is_zero()) throw std::domain_error("find_minimal_b_bounded: zero polynomial");
    for (unsigned d = 0; d <= max_sdeg; ++d) {
        FESystem sys(f, g, max_order, max_sdeg, d);
        EchelonBasis basis(false);
        std::size_t polled = 0;
        for (std::size_t j : sys.insertion_order()) {
            if ((++polled & 0xff) == 0) Deadline::poll();
            auto [bi, k, si] = sys.split(j);
            basis.insert(sys.column(bi, k, si));
        }
        // Residuals of s^k g f^K against the span of the operator columns.
        std::vector<SparseVec> residuals;
        for (unsigned k = 0; k <= d; ++k) {
            SparseVec r = sys.rhs[k];
            basis.reduce(r);
            residuals.push_back(std::move(r));
        }
        // Feasibility: monic b of degree d with sum_k b_k * res_k = 0.
        std::map<std::uint64_t, std::size_t> row_of_key;
        for (const auto& r : residuals)
            for (const auto& [key, c] : r) row_of_key.emplace(key, row_of_key.size());
        std::vector<std::vector<Rational>> rows(row_of_key.size(),
                                                std::vector<Rational>(d, Rational(0)));
        std::vector<Rational> rhs(row_of_key.size(), Rational(0));
        for (unsigned k = 0; k <= d; ++k) {
            for (const auto& [key, c] : residuals[k]) {
                std::size_t row = row_of_key[key];
                if (k == d)
                    rhs[row] -= c;  // monic leading coefficient moved right
                else
                    rows[row][k] = c;
            }
        }
        auto sol = solve_dense(std::move(rows), std::move(rhs));
        if (!sol) continue;

        // All feasible b at this degree form an affine space; the valid set
        // is closed under the polynomial gcd, which generates it.
        std::vector<Rational> particular = sol->particular;
        particular.push_back(Rational(1));
        std::vector<Rational> g_poly = particular;
        for (const auto& h : sol->nullspace) g_poly = poly_gcd(g_poly, h);

        std::vector<Rational> b_coeffs = poly_trim(std::move(g_poly));
        auto factored = factor_rational_roots(b_coeffs);
        if (!factored)
            throw std::runtime_error("minimal b-function has a non-rational factor");

        auto P = solve_for_fixed_b(sys, b_coeffs);
        if (!P) {
            // A proper gcd below degree d need not admit an operator inside
            // this bound box; the particular solution always does.
            P = solve_for_fixed_b(sys, particular);
            if (!P) continue;
            b_coeffs = particular;
            factored = factor_rational_roots(b_coeffs);
            if (!factored) throw std::runtime_error("minimal b-function has a non-rational factor");
        }
        FunctionalEquationCertificate cert{b_coeffs, std::move(*P), g, f};
        if (!cert.verify())
            throw std::logic_error("functional-equation certificate failed re-verification");
        return MinimalBResult{std::move(*factored), std::move(cert)};
    }
    throw std::runtime_error("no b within bounds");
}

std::optional<BFunction> factor_rational_roots(const std::vector<Rational>& monic_coeffs) {
    std::vector<Rational> c = poly_trim(monic_coeffs);
    if (c.empty()) return std::nullopt;
    if (!c.back().is_one()) {
        Rational inv = c.back().inverse();
        for (auto& x : c) x *= inv;
    }
    BFunction b;
    auto divisors = [](mpz_class v) {
        std::vector<mpz_class> out;
        v = abs(v);
        if (v == 0) return out;
        for (mpz_class d = 1; d * d <= v; ++d) {
            if (v % d == 0) {
                out.push_back(d);
                if (d * d != v) out.push_back(v / d);
            }
        }
        return out;
    };
    while (c.size() > 1) {
        // Roots of the integer-cleared polynomial L*s^d + ... + L*c_0.
        mpz_class L(1);
        for (const auto& x : c) L = lcm(L, x.den());
        mpz_class a0 = c.front().num() * (L / c.front().den());
        std::optional<Rational> root;
        if (c.front().is_zero()) {
            root = Rational(0);
        } else {
            for (const auto& u : divisors(a0)) {
                for (const auto& v : divisors(L)) {
                    for (int sign : {-1, 1}) {
                        Rational cand(mpq_class(mpz_class(sign * u)));
                        cand /= Rational(v);
                        // Evaluate by Horner.
                        Rational val;
                        for (std::size_t i = c.size(); i-- > 0;) val = val * cand + c[i];
                        if (val.is_zero()) {
                            root = cand;
                            break;
                        }
                    }
                    if (root) break;
                }
                if (root) break;
            }
        }
        if (!root) return std::nullopt;
        b.add_root(*root);
        // Synthetic division by (s - root).
        std::vector<Rational> q(c.size() - 1);
        Rational carry = c.back();
        for (std::size_t i = c.size() - 1; i-- > 0;) {
            q[i] = carry;
            carry = c[i] + carry * *root;
        }
        if (!carry.is_zero()) return std::nullopt;
        c = std::move(q);
    }
    return b;
}

}  // namespace vflab
