#include <doctest.h>

#include "test_util.hpp"
#include "vflab/bs_engine.hpp"
#include "vflab/parse.hpp"
#include "vflab/twisted.hpp"

using namespace vflab;

namespace {

const WeylContext T_CTX(VarSet({"t"}));
const WeylContext XT_CTX(VarSet({"x", "t"}));

WeylOperator W(const std::string& text, const WeylContext& ctx) {
    return parse_weyl_operator(text, ctx);
}

WeylOperator random_operator(std::mt19937& rng, const WeylContext& ctx, unsigned max_dorder,
                             unsigned max_deg, unsigned max_terms) {
    std::uniform_int_distribution<unsigned> dord(0, max_dorder);
    WeylOperator w = WeylOperator::zero(ctx);
    for (unsigned t = 0; t < max_terms; ++t) {
        Monomial beta(ctx.nvars());
        unsigned budget = dord(rng);
        for (std::size_t i = 0; i < ctx.nvars() && budget > 0; ++i) {
            std::uniform_int_distribution<unsigned> e(0, budget);
            beta[i] = e(rng);
            budget -= beta[i];
        }
        w.add_term(beta, testutil::random_polynomial(rng, ctx.coeff_vars(), max_deg, 2));
    }
    return w;
}

}  // namespace

TEST_CASE("defining commutation relation") {
    WeylContext ctx(VarSet({"x"}));
    CHECK(W("dx", ctx) * W("x", ctx) == W("x*dx + 1", ctx));
    CHECK(W("x*dx", ctx) * W("x*dx", ctx) == W("x^2*dx^2 + x*dx", ctx));
    CHECK(W("dx", ctx) * W("dx", ctx) == W("dx^2", ctx));
}

TEST_CASE("context mismatch is an error") {
    WeylContext a(VarSet({"x"})), b(VarSet({"y"}));
    CHECK_THROWS_AS(W("dx", a) * W("y", b), std::invalid_argument);
}

TEST_CASE("t^m dt^m expands through s = -dt t") {
    // t dt = -(s+1) and dt t = -s.
    WeylOperator s = s_operator(T_CTX);
    WeylOperator one = WeylOperator::one(T_CTX);
    CHECK(W("t", T_CTX) * W("dt", T_CTX) == -(s + one));
    CHECK(W("dt", T_CTX) * W("t", T_CTX) == -s);
    for (unsigned m = 1; m <= 6; ++m) {
        CHECK(check_s_identity({Rational(0), Rational(1)}, m, SIdentity::TmDtm, T_CTX));
        CHECK(check_s_identity({Rational(0), Rational(1)}, m, SIdentity::DtmTm, T_CTX));
    }
}

TEST_CASE("shift identities for concrete P") {
    // P = s^2, m = 1.
    CHECK(check_s_identity({Rational(0), Rational(0), Rational(1)}, 1, SIdentity::TShift, T_CTX));
    // dt^3 t^3 = -s(s-1)(s-2) is the m=3 case of the lower factorial form.
    CHECK(check_s_identity({}, 3, SIdentity::DtmTm, T_CTX));
}

TEST_CASE("all four identities on random P up to m = 6") {
    std::mt19937 rng(5);
    for (unsigned m = 1; m <= 6; ++m) {
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<Rational> p;
            std::uniform_int_distribution<int> deg(0, 3);
            int d = deg(rng);
            for (int i = 0; i <= d; ++i) p.push_back(testutil::random_rational(rng));
            for (auto which : {SIdentity::TShift, SIdentity::DtShift, SIdentity::TmDtm,
                               SIdentity::DtmTm})
                CHECK(check_s_identity(p, m, which, XT_CTX));
        }
    }
}

TEST_CASE("classical adjoint on the stated examples") {
    WeylContext ctx(VarSet({"x"}));
    CHECK(W("dx", ctx).adjoint() == -W("dx", ctx));
    CHECK(W("x*dx", ctx).adjoint() == W("-x*dx - 1", ctx));
    // In the t-algebra: adjoint of s = -dt t is t dt = -s-1.
    WeylOperator s = s_operator(T_CTX);
    CHECK(s.adjoint() == W("t*dt", T_CTX));
    CHECK(s.adjoint() == -s - WeylOperator::one(T_CTX));
}

TEST_CASE("adjoint is an involutive anti-automorphism") {
    std::mt19937 rng(17);
    WeylContext ctx(VarSet({"x", "y"}));
    for (int trial = 0; trial < 60; ++trial) {
        WeylOperator p = random_operator(rng, ctx, 2, 2, 2);
        WeylOperator q = random_operator(rng, ctx, 2, 2, 2);
        CHECK(p.adjoint().adjoint() == p);
        CHECK((p * q).adjoint() == q.adjoint() * p.adjoint());
    }
}

TEST_CASE("multiplication is associative and unital") {
    std::mt19937 rng(23);
    WeylContext ctx(VarSet({"x", "y", "z"}));
    WeylOperator one = WeylOperator::one(ctx);
    for (int trial = 0; trial < 25; ++trial) {
        WeylOperator a = random_operator(rng, ctx, 2, 3, 2);
        WeylOperator b = random_operator(rng, ctx, 2, 3, 2);
        WeylOperator c = random_operator(rng, ctx, 2, 3, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * one == a);
        CHECK(one * a == a);
    }
}

TEST_CASE("central parameters ride along as scalars") {
    std::mt19937 rng(41);
    WeylContext ctx(VarSet({"x", "y"}), {"s"});
    const std::size_t s_idx = ctx.coeff_vars().index_of("s").value();
    WeylOperator s_coeff =
        WeylOperator::coefficient(ctx, Polynomial::variable(ctx.coeff_vars(), s_idx));
    for (int trial = 0; trial < 25; ++trial) {
        WeylOperator a = random_operator(rng, ctx, 2, 2, 2);
        WeylOperator b = random_operator(rng, ctx, 2, 2, 2);
        CHECK(s_coeff * a == a * s_coeff);
        CHECK((a * b) * s_coeff == a * (b * s_coeff));
        CHECK((s_coeff * a).adjoint() == a.adjoint() * s_coeff);
    }
}

TEST_CASE("operator order query") {
    WeylContext ctx(VarSet({"x", "y"}));
    CHECK(W("x^3", ctx).order() == 0);
    CHECK(W("x*dx*dy + dy", ctx).order() == 2);
    CHECK(WeylOperator::zero(ctx).order() == 0);
}

TEST_CASE("twisted action: chain rule with formal s") {
    Polynomial f = parse_polynomial_auto("x^2");
    WeylContext ctx = twisted_context(f);
    Polynomial fl = f.lift(ctx.coeff_vars(), {0});

    SUBCASE("dx on f^s") {
        TwistedElement e = TwistedElement::fs_shifted(ctx, fl, 0);
        TwistedElement r = act_on_twisted(W("dx", ctx), e);
        CHECK(r.f_power() == 1);
        CHECK(r.numerator() == parse_polynomial("2*x*s", ctx.coeff_vars()));
    }
    SUBCASE("quarter dx^2 on f^(s+1)") {
        TwistedElement e = TwistedElement::fs_shifted(ctx, fl, 1);
        TwistedElement r = act_on_twisted(W("1/4*dx^2", ctx), e);
        CHECK(r.f_power() == 0);
        CHECK(r.numerator() == parse_polynomial("(s+1)*(s+1/2)", ctx.coeff_vars()));
    }
}

TEST_CASE("cusp annihilator kills f^s") {
    Polynomial f = parse_polynomial_auto("x^2+y^3");
    WeylContext ctx = twisted_context(f);
    Polynomial fl = f.lift(ctx.coeff_vars(), {0, 1});
    TwistedElement e = TwistedElement::fs_shifted(ctx, fl, 0);
    CHECK(act_on_twisted(W("2*x*dy - 3*y^2*dx", ctx), e).is_zero());
}

TEST_CASE("twisted action is a module action") {
    std::mt19937 rng(31);
    Polynomial f = parse_polynomial_auto("x^2+y^3");
    WeylContext ctx = twisted_context(f);
    Polynomial fl = f.lift(ctx.coeff_vars(), {0, 1});
    for (int trial = 0; trial < 20; ++trial) {
        WeylOperator p = random_operator(rng, ctx, 1, 2, 2);
        WeylOperator q = random_operator(rng, ctx, 1, 2, 2);
        Polynomial num = testutil::random_polynomial(rng, ctx.coeff_vars(), 2, 2);
        TwistedElement e(ctx, num, 0, fl);
        CHECK(act_on_twisted(p * q, e) == act_on_twisted(p, act_on_twisted(q, e)));
    }
}

TEST_CASE("specialize_s") {
    Polynomial f = parse_polynomial_auto("x^2");
    WeylContext ctx = twisted_context(f);
    Polynomial fl = f.lift(ctx.coeff_vars(), {0});
    const VarSet& cv = ctx.coeff_vars();

    SUBCASE("s f^s at m=2 clears into a polynomial") {
        TwistedElement e(ctx, parse_polynomial("s", cv), 0, fl);
        auto r = specialize_s(e, 2);
        CHECK(r.residual_fpower == 0);
        CHECK(r.value == parse_polynomial("2*x^4", cv));
    }
    SUBCASE("f^(s-1) at m=0 keeps a residual power") {
        TwistedElement e(ctx, parse_polynomial("1", cv), 1, fl);
        auto r = specialize_s(e, 0);
        CHECK(r.residual_fpower == 1);
        CHECK(r.value == parse_polynomial("1", cv));
    }
    SUBCASE("(s+1) f^s at m=-1 vanishes") {
        TwistedElement e(ctx, parse_polynomial("s+1", cv), 0, fl);
        auto r = specialize_s(e, -1);
        CHECK(r.residual_fpower == 0);
        CHECK(r.value.is_zero());
    }
}
