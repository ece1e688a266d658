#include <doctest.h>

#include "test_util.hpp"
#include "vflab/elementary.hpp"
#include "vflab/parse.hpp"
#include "vflab/vmodel.hpp"

using namespace vflab;

namespace {

Polynomial cusp() { return parse_polynomial_auto("x^2+y^3"); }

VModel cusp_model() {
    Polynomial f = cusp();
    WeightVector w =
        validate_weighted_homogeneous(f, {Rational(1, 2), Rational(1, 3)});
    return VModel::quasi_homogeneous(f, w);
}

std::vector<Rational> poly_coeffs(std::initializer_list<long> cs) {
    std::vector<Rational> out;
    for (long c : cs) out.push_back(Rational(c));
    return out;
}

}  // namespace

TEST_CASE("module actions on the stated examples") {
    Polynomial f = cusp();
    BfElement delta = BfElement::delta(f);

    SUBCASE("t delta = f delta") {
        CHECK(act_t(delta) == BfElement::monomial_term(f, 0, f));
    }
    SUBCASE("t dt delta = f dt delta - delta") {
        BfElement e = act_t(act_dt(delta));
        BfElement expect = BfElement::monomial_term(f, 1, f) -
                           BfElement::delta(f);
        CHECK(e == expect);
    }
    SUBCASE("t on a j=2 term") {
        Polynomial u = parse_polynomial("x*y", f.vars());
        BfElement e = act_t(BfElement::monomial_term(f, 2, u));
        BfElement expect = BfElement::monomial_term(f, 2, u * f) +
                           BfElement::monomial_term(f, 1, u * Rational(-2));
        CHECK(e == expect);
    }
    SUBCASE("dx delta = -2x dt delta") {
        BfElement e = act_derivation(0, delta);
        CHECK(e == BfElement::monomial_term(f, 1, parse_polynomial("-2*x", f.vars())));
    }
    SUBCASE("dx (x delta) for f = x^2") {
        Polynomial f2 = parse_polynomial_auto("x^2");
        BfElement e = act_derivation(0, BfElement::monomial_term(
                                            f2, 0, parse_polynomial("x", f2.vars())));
        BfElement expect = BfElement::delta(f2) +
                           BfElement::monomial_term(
                               f2, 1, parse_polynomial("-2*x^2", f2.vars()));
        CHECK(e == expect);
    }
    SUBCASE("dt shifts") {
        Polynomial u = parse_polynomial("y", f.vars());
        CHECK(act_dt(BfElement::monomial_term(f, 0, u)) == BfElement::monomial_term(f, 1, u));
    }
}

TEST_CASE("Weyl relations hold as module actions") {
    std::mt19937 rng(3);
    Polynomial f = cusp();
    for (int trial = 0; trial < 25; ++trial) {
        BfElement e(f);
        std::uniform_int_distribution<unsigned> ord(0, 3);
        for (unsigned j = 0, top = ord(rng); j <= top; ++j)
            e.add_component(j, testutil::random_polynomial(rng, f.vars(), 3, 2));

        // [dt, t] = 1
        CHECK(act_dt(act_t(e)) - act_t(act_dt(e)) == e);
        // [d_i, x_j] = delta_ij, [t, x_i] = 0, [dt, x_i] = 0, [dt, d_i] = 0.
        for (std::size_t i = 0; i < 2; ++i) {
            Polynomial xi = Polynomial::variable(f.vars(), i);
            CHECK(act_derivation(i, e * xi) - act_derivation(i, e) * xi == e);
            std::size_t other = 1 - i;
            Polynomial xo = Polynomial::variable(f.vars(), other);
            CHECK(act_derivation(i, e * xo) == act_derivation(i, e) * xo);
            CHECK(act_t(e * xi) == act_t(e) * xi);
            CHECK(act_dt(e * xi) == act_dt(e) * xi);
            CHECK(act_dt(act_derivation(i, e)) == act_derivation(i, act_dt(e)));
        }
    }
}

TEST_CASE("tau on the stated examples") {
    Polynomial f = cusp();
    Polynomial one = Polynomial::constant(f.vars(), Rational(1));

    SUBCASE("tau(f^s) = delta") { CHECK(tau({Rational(1)}, one, f) == BfElement::delta(f)); }
    SUBCASE("tau(s f^s) = -f dt delta") {
        CHECK(tau(poly_coeffs({0, 1}), one, f) == BfElement::monomial_term(f, 1, -f));
    }
    SUBCASE("falling factorials give f^m dt^m delta") {
        for (const std::string& ftext : {std::string("x^2"), std::string("x^2+y^3")}) {
            Polynomial base = parse_polynomial_auto(ftext);
            Polynomial u = Polynomial::constant(base.vars(), Rational(1));
            std::vector<Rational> falling{Rational(1)};  // prod_{i<m} (s-i)
            for (unsigned m = 1; m <= 4; ++m) {
                // falling *= (s - (m-1))
                std::vector<Rational> next(falling.size() + 1, Rational(0));
                for (std::size_t i = 0; i < falling.size(); ++i) {
                    next[i + 1] += falling[i];
                    next[i] -= falling[i] * Rational((long)m - 1);
                }
                falling = std::move(next);
                BfElement image = tau(falling, u, base);
                BfElement expect =
                    BfElement::monomial_term(base, m, base.pow(m) * Rational(m % 2 ? -1 : 1));
                CHECK(image == expect);
            }
        }
    }
}

TEST_CASE("tau intertwines the t-action") {
    std::mt19937 rng(19);
    Polynomial f = cusp();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> p;
        std::uniform_int_distribution<int> deg(0, 3);
        for (int i = 0, d = deg(rng); i <= d; ++i) p.push_back(testutil::random_rational(rng));
        Polynomial u = testutil::random_polynomial(rng, f.vars(), 2, 2);
        // t (P(s) u f^s) = P(s+1) (f u) f^s.
        CHECK(act_t(tau(p, u, f)) == tau(shift_argument(p, Rational(1)), u * f, f));
    }
}

TEST_CASE("v_generators per model") {
    SUBCASE("snc a=(2,3) at 1/3 starts at delta") {
        VModel m = VModel::snc({2, 3});
        auto gens = v_generators(m, Rational(1, 3), 1);
        REQUIRE(!gens.empty());
        CHECK(gens[0] == BfElement::delta(m.f()));
    }
    SUBCASE("snc a=(2,3) at 5/6 includes x y^2 delta") {
        VModel m = VModel::snc({2, 3});
        auto gens = v_generators(m, Rational(5, 6), 1);
        BfElement expect =
            BfElement::monomial_term(m.f(), 0, parse_polynomial("x*y^2", m.f().vars()));
        bool found = false;
        for (const auto& g : gens) found |= (g == expect);
        CHECK(found);
    }
    SUBCASE("qh cusp at 5/6 has delta as the j=0 generator") {
        VModel m = cusp_model();
        auto gens = v_generators(m, Rational(5, 6), 1);
        REQUIRE(!gens.empty());
        CHECK(gens[0] == BfElement::delta(m.f()));
    }
    SUBCASE("smooth generators are the ceiling powers") {
        VModel m = VModel::smooth();
        auto gens = v_generators(m, Rational(3, 2), 0);
        REQUIRE(gens.size() == 1);
        CHECK(gens[0] == BfElement::monomial_term(m.f(), 0, m.f()));  // y^1 delta
    }
}

TEST_CASE("truncated snapshots") {
    SUBCASE("smooth at level 0 fills the whole window") {
        VModel m = VModel::smooth();
        Truncation trunc{2, 6, 64};
        SubspaceSnapshot snap(m, Rational(0), trunc);
        CHECK(snap.saturated());
        CHECK(snap.dim() == (trunc.max_dt_order + 1) * (trunc.max_x_degree + 1));
    }
    SUBCASE("smooth at level 1 still fills the whole window") {
        VModel m = VModel::smooth();
        Truncation trunc{2, 6, 64};
        SubspaceSnapshot snap(m, Rational(1), trunc);
        CHECK(snap.dim() == (trunc.max_dt_order + 1) * (trunc.max_x_degree + 1));
    }
    SUBCASE("snc a=(1,1): delta survives to level 1 and drops past it") {
        // b_delta = (s+1)^2 has all roots <= -1, so delta sits in V^1
        // exactly; past the jump only the divisor multiples remain.
        VModel m = VModel::snc({1, 1});
        Truncation trunc{3, 8, 64};
        SubspaceSnapshot at_one(m, Rational(1), trunc);
        CHECK(at_one.contains(BfElement::delta(m.f())));
        SubspaceSnapshot past(m, m.next_grid_point(Rational(1)), trunc);
        BfElement xy = BfElement::monomial_term(m.f(), 0, m.f());
        CHECK(past.contains(xy));
        CHECK(!past.contains(BfElement::delta(m.f())));
    }
    SUBCASE("very deep levels give the zero subspace") {
        VModel m = VModel::snc({2, 3});
        Truncation trunc{2, 6, 64};
        SubspaceSnapshot snap(m, Rational(50), trunc);
        CHECK(snap.dim() == 0);
    }
}

TEST_CASE("closure traces replay to their witnesses") {
    // Every snapshot vector is an operator word applied to a stated
    // generator; replaying the recorded word must reproduce it exactly.
    for (const VModel& m : {VModel::snc({2, 3}), cusp_model()}) {
        Truncation trunc{2, 8, 64};
        SubspaceSnapshot snap(m, Rational(1, 2), trunc);
        REQUIRE(snap.traces().size() == snap.witnesses().size());
        for (std::size_t i = 0; i < snap.traces().size(); ++i) {
            const ClosureTrace& tr = snap.traces()[i];
            BfElement e = snap.generators().at(tr.generator);
            for (const auto& [op, var] : tr.word) {
                if (op == 'x')
                    e = e * Polynomial::variable(m.f().vars(), var);
                else
                    e = act_derivation(var, e);
            }
            CHECK(e == snap.witnesses()[i]);
            CHECK(snap.contains(e));
        }
    }
}

TEST_CASE("unsaturated snapshots are refused by the graded maps") {
    // A zero round budget leaves the closure unfinished.
    Truncation starved{3, 10, 0};
    CHECK_THROWS_AS(gr_action_maps(VModel::snc({1, 1}), Rational(0), starved),
                    std::runtime_error);
}

TEST_CASE("axiom checker on f = xy with a small window") {
    VModel m = VModel::snc({1, 1});
    Truncation trunc{3, 8, 64};
    std::vector<Rational> levels{Rational(0), Rational(1, 2), Rational(1), Rational(3, 2),
                                 Rational(2)};
    AxiomReport report = check_axioms(m, levels, trunc);
    CHECK(report.all_passed);
    for (const auto& lr : report.levels) {
        CAPTURE(lr.alpha.str());
        CHECK(lr.saturated);
        CHECK(lr.mono_ok);
        CHECK(lr.t_up_ok);
        CHECK(lr.dt_down_ok);
        // The double root of b_xy = (s+1)^2 shows up as a size-2 Jordan
        // block at the integer levels; all other levels are semisimple.
        if (lr.alpha.is_integer() && lr.alpha.sign() > 0)
            CHECK(lr.nilpotency_order == 2);
        else
            CHECK(lr.nilpotency_order == 1);
        if (lr.alpha.sign() > 0) CHECK(lr.t_eq_ok);
    }
}

TEST_CASE("graded action maps") {
    Truncation trunc{3, 10, 64};
    SUBCASE("integer jumps only: zero piece at 1/2") {
        GrMaps maps = gr_action_maps(VModel::snc({1, 1}), Rational(1, 2), trunc);
        CHECK(maps.dim_lo == 0);
        CHECK(maps.t_injective);
        CHECK(maps.t_surjective);
        GrMaps smooth_maps = gr_action_maps(VModel::smooth(), Rational(1, 2), trunc);
        CHECK(smooth_maps.dim_lo == 0);
        CHECK(smooth_maps.dim_hi == 0);
    }
    SUBCASE("snc a=(2,3) at 1/3 has a nonzero injective t") {
        GrMaps maps = gr_action_maps(VModel::snc({2, 3}), Rational(1, 3), Truncation{3, 12, 64});
        CHECK(maps.dim_lo > 0);
        CHECK(maps.t_injective);
    }
}

TEST_CASE("membership certification") {
    Truncation trunc{3, 12, 64};
    SUBCASE("delta at snc 1/3") {
        VModel m = VModel::snc({2, 3});
        CHECK(membership_certify(BfElement::delta(m.f()), m, Rational(1, 3), trunc) ==
              Membership::certified_member);
    }
    SUBCASE("delta at qh cusp 5/6") {
        VModel m = cusp_model();
        CHECK(membership_certify(BfElement::delta(m.f()), m, Rational(5, 6), trunc) ==
              Membership::certified_member);
    }
    SUBCASE("dt delta in the sphere model at 1/2") {
        Polynomial f = parse_polynomial_auto("x^2+y^2+z^2");
        WeightVector w = validate_weighted_homogeneous(
            f, {Rational(1), Rational(1), Rational(1)});
        VModel m = VModel::quasi_homogeneous(f, w);
        BfElement e = act_dt(BfElement::delta(m.f()));
        CHECK(membership_certify(e, m, Rational(1, 2), Truncation{3, 8, 64}) ==
              Membership::certified_member);
    }
    SUBCASE("window guard") {
        VModel m = VModel::snc({2, 3});
        BfElement big = BfElement::monomial_term(
            m.f(), 0, Polynomial::variable(m.f().vars(), 0, 40));
        CHECK(membership_certify(big, m, Rational(1, 3), trunc) == Membership::not_in_window);
    }
}

TEST_CASE("elementary graded annihilators") {
    SUBCASE("canonical case b = s at k = 0") {
        BFunction b;
        b.add_root(Rational(0));
        auto pieces = elementary_graded_annihilators(b, 1, 1, 1, 0);
        REQUIRE(pieces.size() == 2);
        CHECK(pieces[0].annihilator.str() == "s");
        CHECK(pieces[0].multiplicity == 1);
        CHECK(pieces[1].annihilator.str() == "(s)^2");
        CHECK(pieces[1].multiplicity == 1);
    }
    SUBCASE("b = s(s+1/3), k = 1") {
        BFunction b;
        b.add_root(Rational(0));
        b.add_root(Rational(-1, 3));
        auto pieces = elementary_graded_annihilators(b, 1, 2, 1, 1);
        REQUIRE(pieces.size() == 2);
        CHECK(pieces[0].annihilator == BFunction::from_roots({{Rational(-1), 1}}));
        CHECK(pieces[0].multiplicity == 2);
        CHECK(pieces[1].annihilator ==
              BFunction::from_roots({{Rational(-1), 2}, {Rational(-4, 3), 1}}));
        CHECK(pieces[1].multiplicity == 1);
    }
    SUBCASE("dual variant at k = 0") {
        BFunction b;
        b.add_root(Rational(0));
        b.add_root(Rational(-1, 3));
        auto pieces = elementary_graded_annihilators(b, 1, 1, 1, 0, true);
        REQUIRE(pieces.size() == 2);
        CHECK(pieces[0].annihilator == BFunction::from_roots({{Rational(-1), 1}}));
        // (s+1) b(-s-1): roots -1, and -r-1 for r in {0, -1/3}.
        CHECK(pieces[1].annihilator ==
              BFunction::from_roots({{Rational(-1), 2}, {Rational(-2, 3), 1}}));
    }
    SUBCASE("roots outside the admissible window are rejected") {
        BFunction b;
        b.add_root(Rational(-3, 2));
        CHECK_THROWS_AS(elementary_graded_annihilators(b, 0, 1, 1, 0), std::domain_error);
        BFunction b2;
        b2.add_root(Rational(0));
        CHECK_THROWS_AS(elementary_graded_annihilators(b2, 2, 1, 1, 0), std::domain_error);
    }
}

TEST_CASE("elementary annihilators match direct substitution on random instances") {
    std::mt19937 rng(29);
    const std::vector<Rational> pool{Rational(0),      Rational(-1, 2), Rational(-1, 3),
                                     Rational(-2, 3),  Rational(-1, 4), Rational(-5, 6)};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<unsigned> small(1, 3);
    std::uniform_int_distribution<long> kdist(-2, 2);
    std::uniform_int_distribution<int> coin(0, 1);

    auto multiply_linear = [](std::vector<Rational> c, const Rational& root) {
        c.push_back(Rational(0));
        for (std::size_t i = c.size(); i-- > 1;) c[i] = c[i - 1] - c[i] * root;
        c[0] = c[0] * (-root);
        return c;
    };

    for (int trial = 0; trial < 20; ++trial) {
        BFunction b;
        unsigned nroots = small(rng);
        for (unsigned i = 0; i < nroots; ++i) b.add_root(pool[pick(rng)]);
        unsigned m = b.multiplicity(Rational(0));
        unsigned p = small(rng), q = small(rng);
        long k = kdist(rng);
        bool dual = coin(rng) == 1;

        auto pieces = elementary_graded_annihilators(b, m, p, q, k, dual);
        REQUIRE(pieces.size() == 2);
        CHECK(pieces[0].multiplicity == p);
        CHECK(pieces[1].multiplicity == q);

        // Independent route: substitute into the defining polynomials.
        Rational c = dual ? Rational(k + 1) : Rational(k);
        // First block: (s+c)^m.
        std::vector<Rational> first{Rational(1)};
        for (unsigned i = 0; i < m; ++i) first = multiply_linear(first, -c);
        CHECK(poly_trim(first) == poly_trim(pieces[0].annihilator.coefficients()));

        // Second block: (s+c) * b(arg), arg = s+k (primal) or -s-k-1 (dual).
        std::vector<Rational> second{Rational(1)};
        second = multiply_linear(second, -c);
        std::vector<Rational> composed;
        {
            // b(arg) via Horner on arg represented as a linear polynomial.
            std::vector<Rational> arg = dual
                ? std::vector<Rational>{Rational(-(k + 1)), Rational(-1)}
                : std::vector<Rational>{Rational((long)k), Rational(1)};
            std::vector<Rational> acc{Rational(0)};
            auto bc = b.coefficients();
            for (std::size_t i = bc.size(); i-- > 0;) {
                // acc = acc*arg + bc[i]
                std::vector<Rational> prod(acc.size() + arg.size() - 1, Rational(0));
                for (std::size_t x = 0; x < acc.size(); ++x)
                    for (std::size_t y = 0; y < arg.size(); ++y) prod[x + y] += acc[x] * arg[y];
                prod[0] += bc[i];
                acc = std::move(prod);
            }
            composed = acc;
        }
        std::vector<Rational> expect(second.size() + composed.size() - 1, Rational(0));
        for (std::size_t x = 0; x < second.size(); ++x)
            for (std::size_t y = 0; y < composed.size(); ++y)
                expect[x + y] += second[x] * composed[y];
        expect = poly_trim(std::move(expect));
        // Normalize monic (the dual substitution flips the sign for odd deg).
        if (!expect.empty() && !expect.back().is_one()) {
            Rational inv = expect.back().inverse();
            for (auto& v : expect) v *= inv;
        }
        CHECK(expect == poly_trim(pieces[1].annihilator.coefficients()));
    }
}
