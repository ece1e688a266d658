#include "vflab/weyl.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

namespace vflab {

WeylContext::WeylContext(VarSet vars, std::vector<std::string> central_params)
    : vars_(std::move(vars)), params_(std::move(central_params)) {
    std::vector<std::string> all = vars_.names();
    for (const auto& p : params_) {
        if (vars_.index_of(p))
            throw std::invalid_argument("WeylContext: central parameter '" + p +
                                        "' collides with a variable");
        all.push_back(p);
    }
    coeff_vars_ = VarSet(std::move(all));
}

WeylOperator WeylOperator::one(const WeylContext& ctx) {
    return coefficient(ctx, Polynomial::constant(ctx.coeff_vars(), Rational(1)));
}

WeylOperator WeylOperator::coefficient(const WeylContext& ctx, Polynomial h) {
    WeylOperator w(ctx);
    if (h.vars() != ctx.coeff_vars())
        throw std::invalid_argument("WeylOperator: coefficient over wrong VarSet");
    if (!h.is_zero()) w.terms_.emplace(Monomial(ctx.nvars()), std::move(h));
    return w;
}

WeylOperator WeylOperator::variable(const WeylContext& ctx, std::size_t i) {
    return coefficient(ctx, Polynomial::variable(ctx.coeff_vars(), i));
}

WeylOperator WeylOperator::derivative(const WeylContext& ctx, std::size_t i) {
    if (i >= ctx.nvars()) throw std::invalid_argument("WeylOperator: no such variable");
    WeylOperator w(ctx);
    Monomial d(ctx.nvars());
    d[i] = 1;
    w.terms_.emplace(std::move(d), Polynomial::constant(ctx.coeff_vars(), Rational(1)));
    return w;
}

WeylOperator WeylOperator::term(const WeylContext& ctx, Polynomial h, Monomial dexp) {
    WeylOperator w(ctx);
    if (h.vars() != ctx.coeff_vars())
        throw std::invalid_argument("WeylOperator: coefficient over wrong VarSet");
    if (dexp.nvars() != ctx.nvars())
        throw std::invalid_argument("WeylOperator: derivative exponent arity mismatch");
    if (!h.is_zero()) w.terms_.emplace(std::move(dexp), std::move(h));
    return w;
}

unsigned WeylOperator::order() const {
    unsigned d = 0;
    for (const auto& [b, h] : terms_) d = std::max(d, b.total_degree());
    return d;
}

void WeylOperator::check_same_context(const WeylOperator& o) const {
    if (ctx_ != o.ctx_) throw std::invalid_argument("WeylOperator: context mismatch");
}

void WeylOperator::add_term(const Monomial& dexp, const Polynomial& h) {
    if (h.is_zero()) return;
    auto [it, inserted] = terms_.emplace(dexp, h);
    if (!inserted) {
        it->second += h;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WeylOperator WeylOperator::operator-() const {
    WeylOperator r(ctx_);
    for (const auto& [b, h] : terms_) r.terms_.emplace(b, -h);
    return r;
}

WeylOperator& WeylOperator::operator+=(const WeylOperator& o) {
    check_same_context(o);
    for (const auto& [b, h] : o.terms_) add_term(b, h);
    return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o) {
    check_same_context(o);
    for (const auto& [b, h] : o.terms_) add_term(b, -h);
    return *this;
}

WeylOperator WeylOperator::operator*(const Rational& c) const {
    WeylOperator r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [b, h] : terms_) r.terms_.emplace(b, h * c);
    return r;
}

WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
    a.check_same_context(b);
    const WeylContext& ctx = a.context();
    const std::size_t n = ctx.nvars();
    WeylOperator r(ctx);
    for (const auto& [beta, h] : a.terms()) {
        for (const auto& [gamma, g] : b.terms()) {
            // d^beta g = sum over mu <= beta of binom(beta,mu) (d^mu g) d^(beta-mu).
            // Enumerate mu recursively per coordinate to keep derivatives shared.
            struct Rec {
                const WeylContext& ctx;
                const Monomial& beta;
                const Monomial& gamma;
                WeylOperator& out;
                const Polynomial& lead_coeff;
                std::size_t n;

                void walk(std::size_t i, const Polynomial& dg, Monomial& mu, const Rational& c) {
                    if (dg.is_zero()) return;
                    if (i == n) {
                        Monomial rest(beta);
                        for (std::size_t k = 0; k < n; ++k) rest[k] -= mu[k];
                        out.add_term(rest * gamma, (lead_coeff * dg) * c);
                        return;
                    }
                    Polynomial cur = dg;
                    Rational binom(1);
                    for (unsigned m = 0; m <= beta[i]; ++m) {
                        mu[i] = m;
                        walk(i + 1, cur, mu, c * binom);
                        if (m == beta[i]) break;
                        binom *= Rational(static_cast<long>(beta[i] - m),
                                          static_cast<long>(m + 1));
                        cur = cur.derivative(i);
                        if (cur.is_zero()) break;
                    }
                    mu[i] = 0;
                }
            };
            Monomial mu(n);
            Rec rec{ctx, beta, gamma, r, h, n};
            rec.walk(0, g, mu, Rational(1));
        }
    }
    return r;
}

WeylOperator WeylOperator::adjoint() const {
    const std::size_t n = ctx_.nvars();
    WeylOperator r(ctx_);
    for (const auto& [beta, h] : terms_) {
        // (-d)^beta h, normally ordered.
        const long sign = (beta.total_degree() % 2 == 0) ? 1 : -1;
        struct Rec {
            const Monomial& beta;
            WeylOperator& out;
            std::size_t n;
            long sign;

            void walk(std::size_t i, const Polynomial& dh, Monomial& mu, const Rational& c) {
                if (dh.is_zero()) return;
                if (i == n) {
                    Monomial rest(beta);
                    for (std::size_t k = 0; k < n; ++k) rest[k] -= mu[k];
                    out.add_term(rest, dh * (c * Rational(sign)));
                    return;
                }
                Polynomial cur = dh;
                Rational binom(1);
                for (unsigned m = 0; m <= beta[i]; ++m) {
                    mu[i] = m;
                    walk(i + 1, cur, mu, c * binom);
                    if (m == beta[i]) break;
                    binom *= Rational(static_cast<long>(beta[i] - m), static_cast<long>(m + 1));
                    cur = cur.derivative(i);
                    if (cur.is_zero()) break;
                }
                mu[i] = 0;
            }
        };
        Monomial mu(n);
        Rec rec{beta, r, n, sign};
        rec.walk(0, h, mu, Rational(1));
    }
    return r;
}

Polynomial WeylOperator::apply(const Polynomial& p) const {
    if (p.vars() != ctx_.coeff_vars())
        throw std::invalid_argument("WeylOperator::apply: VarSet mismatch");
    Polynomial out(p.vars());
    for (const auto& [beta, h] : terms_) {
        Polynomial q = p;
        for (std::size_t i = 0; i < ctx_.nvars() && !q.is_zero(); ++i)
            for (unsigned k = 0; k < beta[i] && !q.is_zero(); ++k) q = q.derivative(i);
        out += h * q;
    }
    return out;
}

std::string WeylOperator::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const WeylOperator& w) {
    if (w.is_zero()) return os << "0";
    bool first = true;
    for (auto it = w.terms().rbegin(); it != w.terms().rend(); ++it) {
        const auto& [b, h] = *it;
        if (!first) os << " + ";
        first = false;
        bool coeff_one = (h.term_count() == 1 && h.terms().begin()->second.is_one() &&
                          h.terms().begin()->first.is_one());
        bool need_paren =
            h.term_count() > 1 || (!coeff_one && h.terms().begin()->second.sign() < 0);
        if (b.total_degree() == 0) {
            os << (need_paren ? "(" : "") << h << (need_paren ? ")" : "");
            continue;
        }
        if (!coeff_one) os << (need_paren ? "(" : "") << h << (need_paren ? ")" : "") << "*";
        bool first_d = true;
        for (std::size_t i = 0; i < b.nvars(); ++i) {
            if (b[i] == 0) continue;
            if (!first_d) os << "*";
            first_d = false;
            os << "d" << w.context().vars().name(i);
            if (b[i] > 1) os << "^" << b[i];
        }
    }
    return os;
}

WeylOperator s_operator(const WeylContext& ctx) {
    auto t = ctx.vars().index_of("t");
    if (!t) throw std::invalid_argument("s_operator: context has no variable t");
    return -(WeylOperator::derivative(ctx, *t) * WeylOperator::variable(ctx, *t));
}

WeylOperator eval_at_operator(const std::vector<Rational>& coeffs, const WeylOperator& arg) {
    WeylOperator r = WeylOperator::zero(arg.context());
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        r = r * arg;
        r += WeylOperator::one(arg.context()) * coeffs[i];
    }
    return r;
}

std::vector<Rational> shift_argument(const std::vector<Rational>& coeffs, const Rational& shift) {
    // P(s + shift) via repeated synthetic multiplication.
    std::vector<Rational> out(coeffs.size());
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        // out = out * (s + shift) + coeffs[i]
        for (std::size_t j = out.size(); j-- > 1;) out[j] = out[j - 1] + out[j] * shift;
        if (!out.empty()) out[0] = out[0] * shift;
        out[0] += coeffs[i];
    }
    return out;
}

bool check_s_identity(const std::vector<Rational>& p_coeffs, unsigned m, SIdentity which,
                      const WeylContext& ctx) {
    auto ti = ctx.vars().index_of("t");
    if (!ti) throw std::invalid_argument("check_s_identity: context has no variable t");
    const WeylOperator s = s_operator(ctx);
    const WeylOperator t = WeylOperator::variable(ctx, *ti);
    const WeylOperator dt = WeylOperator::derivative(ctx, *ti);
    auto power = [&](const WeylOperator& w, unsigned k) {
        WeylOperator r = WeylOperator::one(ctx);
        for (unsigned i = 0; i < k; ++i) r = r * w;
        return r;
    };

    switch (which) {
        case SIdentity::TShift:
            return eval_at_operator(p_coeffs, s) * power(t, m) ==
                   power(t, m) * eval_at_operator(shift_argument(p_coeffs, Rational(-(long)m)), s);
        case SIdentity::DtShift:
            return eval_at_operator(p_coeffs, s) * power(dt, m) ==
                   power(dt, m) * eval_at_operator(shift_argument(p_coeffs, Rational((long)m)), s);
        case SIdentity::TmDtm: {
            WeylOperator rhs = WeylOperator::one(ctx);
            for (unsigned j = 1; j <= m; ++j)
                rhs = rhs * (s + WeylOperator::one(ctx) * Rational((long)j));
            if (m % 2 == 1) rhs = -rhs;
            return power(t, m) * power(dt, m) == rhs;
        }
        case SIdentity::DtmTm: {
            WeylOperator rhs = WeylOperator::one(ctx);
            for (unsigned j = 0; j < m; ++j)
                rhs = rhs * (s - WeylOperator::one(ctx) * Rational((long)j));
            if (m % 2 == 1) rhs = -rhs;
            return power(dt, m) * power(t, m) == rhs;
        }
    }
    return false;
}

}  // namespace vflab
