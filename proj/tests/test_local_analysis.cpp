#include <random>

#include "doctest.h"
#include "pcadyn/local_analysis.hpp"
#include "test_support.hpp"

using namespace pcadyn;
using pcadyn::testing::P;
using pcadyn::testing::random_rational;

namespace {

MultiPoly Q(const char* text) { return P(text, 2); }

SeriesQ series(std::vector<BigRational> c, int order = 16) { return SeriesQ(std::move(c), order); }

// Lowest exponent of q(x(t), y(t)) computed with polynomial arithmetic in t.
int substituted_valuation(const MultiPoly& q, const PuiseuxBranch& b) {
    REQUIRE(b.y_exact);
    MultiPoly t = MultiPoly::variable(1, 0);
    MultiPoly yt(1);
    for (int k = 0; k <= b.order(); ++k) {
        Monomial m;
        m.exp[0] = static_cast<std::uint16_t>(k);
        if (!(*b.y_exact)[k].is_zero()) yt.add_term(m, (*b.y_exact)[k]);
    }
    MultiPoly tm = pow(t, b.m);
    std::vector<MultiPoly> args = b.swapped ? std::vector<MultiPoly>{yt, tm} : std::vector<MultiPoly>{tm, yt};
    PolyLimits lim;
    lim.max_total_degree = 4096;
    MultiPoly r = substitute(q, args, lim);
    int v = 1 << 20;
    for (const auto& [m, c] : r.terms()) v = std::min(v, static_cast<int>(m.exp[0]));
    return v;
}

int total_multiplicity(const std::vector<PuiseuxBranch>& bs, bool swapped) {
    int s = 0;
    for (const auto& b : bs)
        if (b.swapped == swapped) s += b.m;
    return s;
}

}  // namespace

TEST_CASE("power series arithmetic") {
    SeriesQ s = series({1, 2, -1, BigRational(1, 3)});
    SeriesQ one = SeriesQ::monomial(BigRational(1), 0, 16);
    CHECK(s * s.inverse() == one);
    SeriesQ r = s.root(3);
    CHECK(r.pow(3) == s);
    SeriesQ u = series({0, 2, 1, -3});
    SeriesQ inv = u.reversion();
    CHECK(u.compose(inv) == SeriesQ::monomial(BigRational(1), 1, 16));
    CHECK(inv.compose(u) == SeriesQ::monomial(BigRational(1), 1, 16));
    CHECK(u.valuation() == 1);
    CHECK(SeriesQ(8).valuation() == 9);
    CHECK(u.shifted(2)[3] == BigRational(2));
    CHECK(u.shifted(2).divided_by_t(2) == u);
    CHECK_THROWS_AS(u.divided_by_t(2), InvalidInput);
    CHECK_THROWS_AS(u.inverse(), DivisionByZero);
    CHECK_THROWS_AS(s.compose(s), InvalidInput);
    CHECK(u.derivative()[0] == BigRational(2));
    // Product order follows valuations.
    SeriesQ a = SeriesQ::monomial(BigRational(1), 3, 10), b = SeriesQ::monomial(BigRational(1), 2, 5);
    CHECK((a * b).order() == 8);
    CHECK(series_to_string(series({0, 1, 0, -2}), [](const BigRational& v) { return v.to_string(); }) == "t - 2*t^3");
}

TEST_CASE("evaluate_series matches polynomial substitution") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly q = pcadyn::testing::random_poly(rng, 2, 4, 5);
        SeriesQ x = series({0, random_rational(rng), random_rational(rng)}, 8);
        SeriesQ y = series({0, random_rational(rng), 0, random_rational(rng)}, 8);
        SeriesQ r = evaluate_series(q, x, y);
        MultiPoly t = MultiPoly::variable(1, 0);
        MultiPoly xt = MultiPoly::constant(1, x[1]) * t + MultiPoly::constant(1, x[2]) * t * t;
        MultiPoly yt = MultiPoly::constant(1, y[1]) * t + MultiPoly::constant(1, y[3]) * pow(t, 3);
        std::vector<MultiPoly> args = {xt, yt};
        MultiPoly full = substitute(q, args);
        for (int k = 0; k <= 8; ++k) {
            Monomial m;
            m.exp[0] = static_cast<std::uint16_t>(k);
            CHECK(r[k] == full.coefficient(m));
        }
    }
}

TEST_CASE("newton_puiseux examples") {
    SUBCASE("cusp") {
        auto bs = newton_puiseux(Q("y^2 - x^3"));
        REQUIRE(bs.size() == 1);
        CHECK(bs[0].m == 2);
        CHECK(bs[0].is_exact());
        CHECK(*bs[0].y_exact == SeriesQ::monomial(BigRational(1), 3, 16));
        CHECK(bs[0].n == 3);
        CHECK(bs[0].alpha_exact == BigRational(1));
        CHECK(bs[0].singular());
        CHECK(bs[0].multiplicity() == 2);
        CHECK(bs[0].to_string() == "m=2, y = t^3, n=3");
    }
    SUBCASE("node") {
        auto q = Q("y^2 - x^2 - x^3");
        auto bs = newton_puiseux(q);
        REQUIRE(bs.size() == 2);
        for (const auto& b : bs) {
            CHECK(b.m == 1);
            CHECK(b.multiplicity() == 1);
            CHECK(!b.singular());
            CHECK(substituted_valuation(q, b) > 16);
        }
        CHECK((*bs[0].y_exact)[1] + (*bs[1].y_exact)[1] == BigRational(0));
    }
    SUBCASE("cusp with a line") {
        auto q = Q("(y^2 - x^3)*(y - 2*x)");
        auto bs = newton_puiseux(q);
        REQUIRE(bs.size() == 2);
        CHECK(total_multiplicity(bs, false) == 3);
        for (const auto& b : bs) CHECK(substituted_valuation(q, b) > 16);
        auto tc = branch_tangent_type(bs[0], bs[1]);
        CHECK(tc.kind == TangentKind::Transversal);
    }
    SUBCASE("higher cusp") {
        auto q = Q("y^3 - x^4 - x^5");
        auto bs = newton_puiseux(q);
        REQUIRE(bs.size() == 1);
        CHECK(bs[0].m == 3);
        CHECK(bs[0].n == 4);
        CHECK(substituted_valuation(q, bs[0]) > 16);
    }
    SUBCASE("vertical line and swapped coordinates") {
        auto bs = newton_puiseux(Q("x*(x - y^2)"));
        CHECK(total_multiplicity(bs, true) == 2);
        for (const auto& b : bs) {
            CHECK(b.swapped);
            CHECK(substituted_valuation(Q("x*(x - y^2)"), b) > 16);
        }
        auto axes = newton_puiseux(Q("x*y"));
        REQUIRE(axes.size() == 2);
        CHECK(branch_tangent_type(axes[0], axes[1]).kind == TangentKind::Transversal);
    }
    SUBCASE("squarefree reduction") {
        auto bs = newton_puiseux(Q("(y - x^2)^2"));
        REQUIRE(bs.size() == 1);
        CHECK(substituted_valuation(Q("y - x^2"), bs[0]) > 16);
    }
    SUBCASE("irrational slopes") {
        auto q = Q("y^2 - 2*x^2 + x^3");
        auto bs = newton_puiseux(q);
        REQUIRE(bs.size() == 2);
        for (const auto& b : bs) {
            CHECK(!b.is_exact());
            CHECK(std::abs(std::abs(b.y[1]) - std::sqrt(2.0)) < 1e-12);
            CHECK(residual_valuation(q, b) > 16);
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(newton_puiseux(Q("y - 1 - x")), InvalidInput);
        CHECK_THROWS_AS(newton_puiseux(Q("0")), InvalidInput);
        CHECK_THROWS_AS(newton_puiseux(P("x*y*z")), ArityMismatch);
        CHECK_THROWS_AS(newton_puiseux(Q("(y - x^2)*(y - x^2 - x^20)")), Degenerate);
        PuiseuxOptions deep;
        deep.order = 24;
        CHECK(newton_puiseux(Q("(y - x^2)*(y - x^2 - x^20)"), deep).size() == 2);
    }
}

TEST_CASE("newton_puiseux on random products") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        // Distinct smooth branches y = a1 x + a2 x^2 and optionally a cusp.
        int lines = 1 + trial % 3;
        MultiPoly q = MultiPoly::constant(2, BigRational(1));
        std::vector<BigRational> slopes;
        int expected = 0;
        for (int i = 0; i < lines; ++i) {
            BigRational a1;
            do a1 = random_rational(rng);
            while (std::find(slopes.begin(), slopes.end(), a1) != slopes.end());
            slopes.push_back(a1);
            MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
            q = q * (y - MultiPoly::constant(2, a1) * x - MultiPoly::constant(2, random_rational(rng)) * x * x);
            expected += 1;
        }
        if (trial % 2 == 0) {
            MultiPoly c = Q("y^2 - x^3") + MultiPoly::constant(2, random_rational(rng)) * Q("x^4");
            q = q * c;
            expected += 2;
        }
        auto bs = newton_puiseux(q);
        CHECK(total_multiplicity(bs, false) == expected);
        for (const auto& b : bs) {
            REQUIRE(b.is_exact());
            CHECK(substituted_valuation(q, b) > 16);
            CHECK(residual_valuation(q, b) > 16);
        }
    }
}

TEST_CASE("branch_tangent_type") {
    auto b0 = PuiseuxBranch::exact(1, SeriesQ(16));
    auto b2 = PuiseuxBranch::exact(1, SeriesQ::monomial(BigRational(1), 2, 16));
    auto b3 = PuiseuxBranch::exact(1, SeriesQ::monomial(BigRational(1), 3, 16));
    auto vert = PuiseuxBranch::exact(1, SeriesQ(16), true);
    CHECK(branch_tangent_type(b0, vert).kind == TangentKind::Transversal);
    auto t2 = branch_tangent_type(b0, b2);
    CHECK(t2.kind == TangentKind::Tangential);
    CHECK(t2.contact_order == 2);
    CHECK(branch_tangent_type(b2, b3).contact_order == 2);
    CHECK(branch_tangent_type(b0, b3).contact_order == 3);
    auto same = branch_tangent_type(b2, b2);
    CHECK(same.kind == TangentKind::Indistinguishable);
    CHECK(same.contact_order == 16);
    CHECK(t2.to_string() == "Tangential(contact 2)");
    // A vertical parabola against the vertical axis.
    auto vp = PuiseuxBranch::exact(1, SeriesQ::monomial(BigRational(1), 2, 16), true);
    CHECK(branch_tangent_type(vert, vp).contact_order == 2);
    // The same parabola parametrized as (t^2, t).
    auto vp2 = PuiseuxBranch::exact(2, SeriesQ::monomial(BigRational(1), 1, 16));
    CHECK(branch_tangent_type(vp, vp2).kind == TangentKind::Indistinguishable);
}

TEST_CASE("normalize_branch and transform_branch") {
    // (4t^2, 8t^3) is the cusp y^2 = x^3 with tau = 2t.
    auto b = normalize_branch(series({0, 0, 4}), series({0, 0, 0, 8}));
    REQUIRE(b.is_exact());
    CHECK(b.m == 2);
    CHECK(*b.y_exact == SeriesQ::monomial(BigRational(1), 3, b.order()));
    auto v = normalize_branch(series({0, 0, 0, 1}), series({0, 1}));
    CHECK(v.swapped);
    CHECK(v.m == 1);
    CHECK_THROWS_AS(normalize_branch(series({1, 1}), series({0, 1})), InvalidInput);

    auto h = CoordinateChange::triangular(Q("x^2"), Q("y^2"));
    auto line = PuiseuxBranch::exact(1, SeriesQ(16));
    auto moved = transform_branch(h.forward, line);
    auto back = transform_branch(h.inverse, moved);
    CHECK(branch_tangent_type(back, line).kind == TangentKind::Indistinguishable);
    // The image of y = 0 satisfies the transformed equation.
    std::vector<MultiPoly> hinv(h.inverse.begin(), h.inverse.end());
    MultiPoly image_eq = substitute(Q("y"), hinv);
    CHECK(substituted_valuation(image_eq, moved) > moved.order() - 1);
}

TEST_CASE("coordinate changes invert") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        MultiPoly p = MultiPoly::constant(2, random_rational(rng)) * Q("x^2") +
                      MultiPoly::constant(2, random_rational(rng)) * Q("x^3");
        MultiPoly r = MultiPoly::constant(2, random_rational(rng)) * Q("y^2");
        auto h = CoordinateChange::triangular(p, r);
        std::vector<MultiPoly> inv(h.inverse.begin(), h.inverse.end());
        CHECK(substitute(h.forward[0], inv) == Q("x"));
        CHECK(substitute(h.forward[1], inv) == Q("y"));
    }
    CHECK_THROWS_AS(CoordinateChange::triangular(Q("y^2"), Q("y^2")), InvalidInput);
    CHECK_THROWS_AS(CoordinateChange::triangular(Q("x + 1"), Q("y^2")), InvalidInput);
}

TEST_CASE("germ maps") {
    GermMap2 g(Q("2*x + y^2"), Q("3*y + x*y"));
    auto L = g.linear_part();
    CHECK(L[0][0] == BigRational(2));
    CHECK(L[0][1] == BigRational(0));
    CHECK(L[1][1] == BigRational(3));
    auto s = g.swapped();
    CHECK(s[0] == Q("3*x + x*y"));
    CHECK(s[1] == Q("2*y + x^2"));
    CHECK_THROWS_AS(GermMap2(Q("x + 1"), Q("y")), InvalidInput);
    CHECK_THROWS_AS(GermMap2(P("x"), P("y")), ArityMismatch);
}

TEST_CASE("induced_circle_map") {
    SUBCASE("smooth invariant line") {
        auto cm = induced_circle_map(GermMap2(Q("2*x"), Q("4*y")), PuiseuxBranch::exact(1, SeriesQ(16)));
        REQUIRE(cm.exact);
        CHECK((*cm.exact)[1] == BigRational(2));
        CHECK(cm.consistent_roots == 1);
    }
    SUBCASE("cusp picks the consistent root") {
        auto b = newton_puiseux(Q("y^2 - x^3"))[0];
        auto cm = induced_circle_map(GermMap2(Q("4*x"), Q("8*y")), b);
        REQUIRE(cm.exact);
        CHECK((*cm.exact)[1] == BigRational(2));
        CHECK(cm.root_index == 0);
        auto neg = induced_circle_map(GermMap2(Q("4*x"), Q("-8*y")), b);
        CHECK(neg.root_index == 1);
        CHECK(neg.exact);
        CHECK(std::abs(neg.lambda() + 2.0) < 1e-12);
    }
    SUBCASE("conjugated by a shear") {
        auto h = CoordinateChange::triangular(Q("x^2"), Q("0"));
        GermMap2 g = GermMap2(Q("2*x"), Q("4*y")).conjugated(h.forward, h.inverse);
        auto b = transform_branch(h.forward, PuiseuxBranch::exact(1, SeriesQ(16)));
        auto cm = induced_circle_map(g, b);
        CHECK(std::abs(cm.lambda() - 2.0) < 1e-12);
    }
    SUBCASE("not invariant") {
        CHECK_THROWS_AS(induced_circle_map(GermMap2(Q("2*x"), Q("2*y + x")), PuiseuxBranch::exact(1, SeriesQ(16))),
                        NotInvariant);
        auto cusp = newton_puiseux(Q("y^2 - x^3"))[0];
        CHECK_THROWS_AS(induced_circle_map(GermMap2(Q("y"), Q("x")), cusp), NotInvariant);
    }
}

TEST_CASE("cusp relation") {
    std::mt19937 rng(77);
    const std::vector<BigRational> lambdas = {BigRational(2), BigRational(3), BigRational(1, 2)};
    const std::vector<std::pair<int, int>> exps = {{2, 3}, {2, 5}, {3, 4}};
    for (const auto& lam : lambdas)
        for (auto [m, n] : exps) {
            CAPTURE(m);
            CAPTURE(n);
            MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
            GermMap2 g(MultiPoly::constant(2, lam.pow(m)) * x, MultiPoly::constant(2, lam.pow(n)) * y);
            MultiPoly q = pow(y, m) - pow(x, n);
            auto bs = newton_puiseux(q);
            REQUIRE(bs.size() == 1);
            auto rep = verify_cusp_relation(g, bs[0]);
            CHECK(rep.pass);
            CHECK(rep.exact);
            CHECK(rep.lambda_exact == lam);
            CHECK(rep.expected_text == "λ^" + std::to_string(m) + ", λ^" + std::to_string(n));

            for (int k = 0; k < 5; ++k) {
                MultiPoly p = MultiPoly::constant(2, random_rational(rng)) * x * x;
                MultiPoly r = MultiPoly::constant(2, random_rational(rng)) * y * y;
                auto h = CoordinateChange::triangular(p, r);
                GermMap2 gh = g.conjugated(h.forward, h.inverse);
                auto bh = transform_branch(h.forward, bs[0]);
                auto rh = verify_cusp_relation(gh, bh);
                CHECK(rh.pass);
                CHECK(std::abs(rh.lambda - lam.to_complex()) < 1e-9);
                // The conjugated curve equation vanishes along the moved branch.
                std::vector<MultiPoly> inv(h.inverse.begin(), h.inverse.end());
                if (bh.is_exact()) CHECK(substituted_valuation(substitute(q, inv), bh) > bh.order() - 1);
            }
        }
}

TEST_CASE("cusp relation refusals") {
    GermMap2 g(Q("4*x"), Q("8*y"));
    CHECK_THROWS_AS(verify_cusp_relation(g, PuiseuxBranch::exact(1, SeriesQ(16))), InvalidInput);
    auto cusp = newton_puiseux(Q("y^2 - x^3"))[0];
    PuiseuxOptions low;
    low.order = 4;
    auto shallow = newton_puiseux(Q("y^2 - x^3"), low)[0];
    CHECK_THROWS_AS(verify_cusp_relation(g, shallow), InvalidInput);
    CHECK_THROWS_AS(verify_cusp_relation(GermMap2(Q("4*x"), Q("9*y")), cusp), NotInvariant);
}

TEST_CASE("preperiodic relation") {
    GermMap2 g(Q("y^2"), Q("3*y"));
    auto dst = PuiseuxBranch::exact(1, series({0, 0, BigRational(1, 9)}), true);
    auto src = PuiseuxBranch::exact(1, SeriesQ(16), true);
    auto rep = verify_preperiodic_relation(g, src, dst);
    CHECK(rep.pass);
    CHECK(rep.exact);
    CHECK(rep.lambda_exact == BigRational(3));
    CHECK(rep.expected_text == "0, λ");
    CHECK(std::abs(rep.eigenvalues[0]) < 1e-12);
    CHECK(std::abs(rep.eigenvalues[1] - 3.0) < 1e-12);
    // The axis x = 0 itself is not invariant.
    CHECK_THROWS_AS(verify_preperiodic_relation(g, dst, src), NotInvariant);
    CHECK_THROWS_AS(verify_preperiodic_relation(g, dst, dst), InvalidInput);

    GermMap2 g2(Q("x*y"), Q("3*y"));
    auto yaxis = PuiseuxBranch::exact(1, SeriesQ(16), true);
    auto xaxis = PuiseuxBranch::exact(1, SeriesQ(16));
    auto r2 = verify_preperiodic_relation(g2, xaxis, yaxis);
    CHECK(r2.pass);
    CHECK(r2.lambda_exact == BigRational(3));
    // A source that is not mapped into the destination.
    GermMap2 g3(Q("2*x + y^2"), Q("3*y"));
    CHECK_THROWS_AS(verify_preperiodic_relation(g3, PuiseuxBranch::exact(1, SeriesQ(16)), yaxis), NotInvariant);
}

TEST_CASE("tangent relation") {
    GermMap2 g(Q("2*x"), Q("4*y"));
    auto b1 = PuiseuxBranch::exact(1, SeriesQ(16));
    auto b2 = PuiseuxBranch::exact(1, SeriesQ::monomial(BigRational(1), 2, 16));
    auto rep = verify_tangent_relation(g, b1, b2);
    CHECK(rep.pass);
    CHECK(rep.exact);
    CHECK(rep.expected_text == "λ, λ^2");
    auto b3 = PuiseuxBranch::exact(1, SeriesQ::monomial(BigRational(1), 3, 16));
    CHECK_THROWS_AS(verify_tangent_relation(g, b1, b3), NotInvariant);
    CHECK_THROWS_AS(verify_tangent_relation(g, b1, PuiseuxBranch::exact(1, SeriesQ(16), true)), InvalidInput);
    CHECK_THROWS_AS(verify_tangent_relation(g, b1, b1), InvalidInput);
    // Contact order three.
    auto r3 = verify_tangent_relation(GermMap2(Q("2*x"), Q("8*y")), b1, b3);
    CHECK(r3.pass);
    CHECK(r3.expected_text == "λ, λ^3");
}
