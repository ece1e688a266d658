#include "vflab/twisted.hpp"

#include <sstream>

namespace vflab {

namespace {

std::size_t s_index(const WeylContext& ctx) {
    auto i = ctx.coeff_vars().index_of("s");
    if (!i || *i < ctx.nvars())
        throw std::invalid_argument("TwistedElement: context needs central parameter s");
    return *i;
}

}  // namespace

TwistedElement::TwistedElement(WeylContext ctx, Polynomial numerator, unsigned f_power,
                               Polynomial f)
    : ctx_(std::move(ctx)), num_(std::move(numerator)), fpow_(f_power), f_(std::move(f)) {
    if (num_.vars() != ctx_.coeff_vars() || f_.vars() != ctx_.coeff_vars())
        throw std::invalid_argument("TwistedElement: VarSet mismatch");
    if (f_.is_zero()) throw std::invalid_argument("TwistedElement: zero base polynomial");
    if (f_.degree_in(s_index(ctx_)) > 0)
        throw std::invalid_argument("TwistedElement: base polynomial must not involve s");
    reduce();
}

TwistedElement TwistedElement::times_fs(const WeylContext& ctx, Polynomial g, Polynomial f) {
    return TwistedElement(ctx, std::move(g), 0, std::move(f));
}

TwistedElement TwistedElement::fs_shifted(const WeylContext& ctx, const Polynomial& f,
                                          unsigned k) {
    return TwistedElement(ctx, f.pow(k), 0, f);
}

void TwistedElement::reduce() {
    if (num_.is_zero()) {
        fpow_ = 0;
        return;
    }
    while (fpow_ > 0) {
        auto q = num_.divide_exact(f_);
        if (!q) break;
        num_ = std::move(*q);
        --fpow_;
    }
}

TwistedElement TwistedElement::operator-() const {
    TwistedElement r(*this);
    r.num_ = -r.num_;
    return r;
}

TwistedElement& TwistedElement::operator+=(const TwistedElement& o) {
    if (ctx_ != o.ctx_ || f_ != o.f_)
        throw std::invalid_argument("TwistedElement: mixing different twisted modules");
    unsigned n = std::max(fpow_, o.fpow_);
    num_ = num_ * f_.pow(n - fpow_) + o.num_ * f_.pow(n - o.fpow_);
    fpow_ = n;
    reduce();
    return *this;
}

TwistedElement& TwistedElement::operator-=(const TwistedElement& o) { return *this += -o; }

TwistedElement TwistedElement::operator*(const Polynomial& h) const {
    TwistedElement r(*this);
    r.num_ = r.num_ * h;
    r.reduce();
    return r;
}

TwistedElement TwistedElement::operator*(const Rational& c) const {
    TwistedElement r(*this);
    r.num_ = r.num_ * c;
    if (r.num_.is_zero()) r.fpow_ = 0;
    return r;
}

TwistedElement TwistedElement::apply_derivative(std::size_t var) const {
    if (var >= ctx_.nvars()) throw std::invalid_argument("apply_derivative: no such variable");
    const std::size_t s = s_index(ctx_);
    Polynomial s_minus_n = Polynomial::variable(ctx_.coeff_vars(), s) -
                           Polynomial::constant(ctx_.coeff_vars(), Rational((long)fpow_));
    Polynomial next = num_.derivative(var) * f_ + s_minus_n * num_ * f_.derivative(var);
    return TwistedElement(ctx_, std::move(next), fpow_ + 1, f_);
}

bool operator==(const TwistedElement& a, const TwistedElement& b) {
    if (a.ctx_ != b.ctx_ || a.f_ != b.f_) return false;
    // Both sides kept reduced, so direct comparison is enough; cross-multiply
    // anyway to be robust to unreachable non-reduced states.
    if (a.fpow_ == b.fpow_) return a.num_ == b.num_;
    unsigned n = std::max(a.fpow_, b.fpow_);
    return a.num_ * a.f_.pow(n - a.fpow_) == b.num_ * b.f_.pow(n - b.fpow_);
}

TwistedElement act_on_twisted(const WeylOperator& P, const TwistedElement& e) {
    if (P.context() != e.context())
        throw std::invalid_argument("act_on_twisted: context mismatch");
    if (P.context().vars().index_of("t"))
        throw std::invalid_argument("act_on_twisted: operator context must not contain t");
    TwistedElement acc = e * Rational(0);
    for (const auto& [beta, h] : P.terms()) {
        TwistedElement cur = e;
        for (std::size_t i = 0; i < beta.nvars(); ++i)
            for (unsigned k = 0; k < beta[i]; ++k) cur = cur.apply_derivative(i);
        acc += cur * h;
    }
    return acc;
}

SpecializeResult specialize_s(const TwistedElement& e, long m) {
    const auto& ctx = e.context();
    const std::size_t s = ctx.coeff_vars().index_of("s").value();
    Polynomial v = e.numerator().substitute(s, Rational(m));
    SpecializeResult out;
    if (v.is_zero()) {
        out.value = v;
        return out;
    }
    long shift = m - static_cast<long>(e.f_power());
    if (shift >= 0) {
        out.value = v * e.f().pow(static_cast<unsigned>(shift));
        return out;
    }
    unsigned residual = static_cast<unsigned>(-shift);
    while (residual > 0) {
        auto q = v.divide_exact(e.f());
        if (!q) break;
        v = std::move(*q);
        --residual;
    }
    out.value = std::move(v);
    out.residual_fpower = residual;
    return out;
}

std::string TwistedElement::str() const {
    std::ostringstream os;
    os << "(" << num_ << ")";
    if (fpow_ > 0) os << "/f^" << fpow_;
    os << "*f^s";
    return os.str();
}

}  // namespace vflab
