#include <random>

#include "doctest.h"
#include "pcadyn/normalization.hpp"
#include "test_support.hpp"

using namespace pcadyn;
using pcadyn::testing::P;

namespace {

const std::vector<std::string> kST = {"s", "t"};

MultiPoly B2(const char* text) { return parse_polynomial(text, kST); }

HomogeneousEndo power_map(int d) {
    std::vector<MultiPoly> c;
    for (int i = 0; i < 3; ++i) c.push_back(pow(MultiPoly::variable(3, i), d));
    return HomogeneousEndo(c);
}

RationalCurveMap curve(const char* a, const char* b, const char* c) {
    return RationalCurveMap({B2(a), B2(b), B2(c)});
}

RationalMap1D map1(const char* a, const char* b) { return RationalMap1D(B2(a), B2(b)); }

ProjPoint pt(double u) { return ProjPoint({u, 1.0}); }

const PointWithMultiplicity& near(const std::vector<PointWithMultiplicity>& ps, const ProjPoint& z) {
    for (const auto& p : ps)
        if (projective_distance(p.point, z) < 1e-12) return p;
    FAIL("point not found");
    return ps.front();
}

const CriticalOrbit& orbit_from(const PcfVerdict& v, const ProjPoint& z) {
    for (const auto& o : v.orbits)
        if (projective_distance(o.start, z) < 1e-12) return o;
    FAIL("orbit not found");
    return v.orbits.front();
}

int total(const std::vector<PointWithMultiplicity>& ps) {
    int s = 0;
    for (const auto& p : ps) s += p.multiplicity;
    return s;
}

// Central difference of u -> A(u,1)/B(u,1).
Complex numeric_derivative(const RationalMap1D& g, Complex u) {
    auto R = [&](Complex x) {
        std::array<Complex, 2> z{x, 1.0};
        return evaluate(g.numerator(), z) / evaluate(g.denominator(), z);
    };
    const double h = 1e-6;
    return (R(u + h) - R(u - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("curve and map validation") {
    CHECK_THROWS_AS(curve("s", "s", "s"), InvalidInput);
    CHECK_THROWS_AS(curve("s^2", "s*t", "s^2"), InvalidInput);
    CHECK_THROWS_AS(curve("s", "t^2", "t"), InvalidInput);
    CHECK_THROWS_AS(curve("1", "1", "1"), InvalidInput);
    CHECK(curve("s", "0", "t").degree() == 1);
    CHECK_THROWS_AS(map1("s^2", "s*t"), InvalidInput);
    CHECK_THROWS_AS(map1("s^2", "t"), InvalidInput);
    CHECK_THROWS_AS(map1("1", "1"), InvalidInput);
    CHECK_THROWS_AS(map1("0", "t"), InvalidInput);
    CHECK(map1("s^2", "t^2").to_string() == "[s^2 : t^2]");
}

TEST_CASE("lift_over_normalization") {
    SUBCASE("invariant line") {
        auto g = lift_over_normalization(power_map(2), curve("s", "s", "t"));
        CHECK(g == map1("s^2", "t^2"));
        CHECK(degree_1d(g).degree == 2);
        CHECK(lift_scalar(power_map(2), curve("s", "s", "t"), g) == BigRational(1));
    }
    SUBCASE("conic") {
        auto n = curve("s^2", "t^2", "s*t");
        auto g = lift_over_normalization(power_map(2), n);
        CHECK(g == map1("s^2", "t^2"));
        CHECK(lift_scalar(power_map(2), n, g).has_value());
    }
    SUBCASE("cuspidal cubic") {
        auto n = curve("s^2*t", "s^3", "t^3");
        auto g = lift_over_normalization(power_map(2), n);
        CHECK(g == map1("s^2", "t^2"));
    }
    SUBCASE("degree three") {
        auto g = lift_over_normalization(power_map(3), curve("s", "-s", "t"));
        CHECK(degree_1d(g).degree == 3);
        CHECK(degree_1d(g).pass);
    }
    SUBCASE("scaled parametrization") {
        // Line x = y parametrized with a shift: [s + t : s + t : 2t].
        auto n = curve("s + t", "s + t", "2*t");
        auto g = lift_over_normalization(power_map(2), n);
        CHECK(lift_scalar(power_map(2), n, g).has_value());
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(lift_over_normalization(power_map(2), curve("2*s", "s", "t")), NotInvariant);
        CHECK_THROWS_AS(lift_over_normalization(power_map(2), curve("s^2", "s^2", "t^2")), InvalidInput);
        CHECK_THROWS_AS(lift_over_normalization(power_map(2), curve("s^4", "s^4", "t^4")), InvalidInput);
    }
}

TEST_CASE("lift functoriality at sample points") {
    std::mt19937 rng(9);
    std::normal_distribution<double> nd;
    struct Case {
        HomogeneousEndo f;
        RationalCurveMap n;
    };
    std::vector<Case> cases = {{power_map(2), curve("s", "s", "t")},
                               {power_map(2), curve("s^2", "t^2", "s*t")},
                               {power_map(3), curve("s^2*t", "s^3", "t^3")},
                               {HomogeneousEndo({P("y^2"), P("x^2"), P("z^2")}), curve("s^2", "t^2", "s*t")}};
    for (const auto& c : cases) {
        RationalMap1D g = lift_over_normalization(c.f, c.n);
        for (int k = 0; k < 100; ++k) {
            ProjPoint tau({Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng))});
            ProjPoint lhs = c.n.apply(g.apply(tau));
            ProjPoint rhs(c.f.apply(c.n.apply(tau).coords()));
            CHECK(projective_distance(lhs, rhs) < 1e-9);
        }
    }
}

TEST_CASE("degree audit") {
    CHECK(degree_1d(map1("s^2", "t^2")).degree == 2);
    auto one = degree_1d(map1("s", "t"));
    CHECK(one.degree == 1);
    CHECK(!one.pass);
}

TEST_CASE("critical_points_1d") {
    auto c2 = critical_points_1d(map1("s^2", "t^2"));
    REQUIRE(c2.size() == 2);
    CHECK(near(c2, pt(0.0)).multiplicity == 1);
    CHECK(near(c2, ProjPoint({1.0, 0.0})).multiplicity == 1);
    auto c3 = critical_points_1d(map1("s^3", "t^3"));
    REQUIRE(c3.size() == 2);
    CHECK(c3[0].multiplicity == 2);
    CHECK(c3[1].multiplicity == 2);
    CHECK(wronskian(map1("s^2", "t^2")) == B2("4*s*t"));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + trial % 3;
        MultiPoly a = pcadyn::testing::random_homogeneous(rng, 2, d, 3);
        MultiPoly b = pcadyn::testing::random_homogeneous(rng, 2, d, 3);
        if (!gcd(a, b).is_constant()) continue;
        RationalMap1D g(a, b);
        MultiPoly w = wronskian(g);
        CHECK(w.total_degree() == 2 * d - 2);
        CHECK(total(critical_points_1d(g)) == 2 * d - 2);
        auto audit = audit_1d_dichotomy(g);
        int fixed = 0;
        for (const auto& fp : audit.fixed_points) fixed += fp.multiplicity;
        CHECK(fixed == d + 1);
    }
}

TEST_CASE("postcritical orbits") {
    SUBCASE("power map") {
        auto v = postcritical_orbit_1d(map1("s^2", "t^2"));
        CHECK(v.verdict == PcfStatus::Pcf);
        for (const auto& o : v.orbits) {
            CHECK(o.finite);
            CHECK(o.exact);
            CHECK(o.tail == 0);
            CHECK(o.period == 1);
        }
    }
    SUBCASE("Chebyshev") {
        auto v = postcritical_orbit_1d(map1("s^2 - 2*t^2", "t^2"));
        CHECK(v.verdict == PcfStatus::Pcf);
        REQUIRE(v.orbits.size() == 2);
        CHECK(orbit_from(v, pt(0.0)).tail == 2);
        CHECK(orbit_from(v, pt(0.0)).period == 1);
    }
    SUBCASE("basilica") {
        auto v = postcritical_orbit_1d(map1("s^2 - t^2", "t^2"));
        CHECK(v.verdict == PcfStatus::Pcf);
        CHECK(orbit_from(v, pt(0.0)).to_string() == "Finite(tail=0, period=2)");
    }
    SUBCASE("numeric mode") {
        // Newton's map for u^2 - 2: critical points +-sqrt(2) are fixed.
        auto v = postcritical_orbit_1d(map1("s^2 + 2*t^2", "2*s*t"));
        CHECK(v.verdict == PcfStatus::Pcf);
        REQUIRE(v.orbits.size() == 2);
        for (const auto& o : v.orbits) {
            CHECK(!o.exact);
            CHECK(o.period == 1);
        }
    }
    SUBCASE("escaping orbit") {
        OrbitOptions opts;
        opts.max_iter = 64;
        auto v = postcritical_orbit_1d(map1("s^2 + t^2", "t^2"), opts);
        CHECK(v.verdict == PcfStatus::Undecided);
        CHECK(!v.note.empty());
    }
    SUBCASE("lift of the power map") {
        auto g = lift_over_normalization(power_map(2), curve("s", "s", "t"));
        CHECK(postcritical_orbit_1d(g).verdict == PcfStatus::Pcf);
    }
}

TEST_CASE("audit_1d_dichotomy") {
    SUBCASE("squaring") {
        auto a = audit_1d_dichotomy(map1("s^2", "t^2"));
        CHECK(a.verdict == Verdict::Pass);
        REQUIRE(a.fixed_points.size() == 3);
        std::vector<double> mult;
        for (const auto& fp : a.fixed_points) mult.push_back(std::abs(fp.multiplier));
        std::sort(mult.begin(), mult.end());
        CHECK(mult[0] < 1e-12);
        CHECK(mult[1] < 1e-12);
        CHECK(std::abs(mult[2] - 2.0) < 1e-12);
    }
    SUBCASE("cubing") {
        auto a = audit_1d_dichotomy(map1("s^3", "t^3"));
        CHECK(a.verdict == Verdict::Pass);
        REQUIRE(a.fixed_points.size() == 4);
        int repelling = 0;
        for (const auto& fp : a.fixed_points)
            if (fp.cls.tag == EigenTag::Repelling) {
                ++repelling;
                CHECK(std::abs(fp.multiplier - 3.0) < 1e-12);
            }
        CHECK(repelling == 2);
    }
    SUBCASE("parabolic") {
        auto a = audit_1d_dichotomy(map1("s*t + s^2", "t^2"));
        CHECK(a.verdict == Verdict::FailDichotomy);
        CHECK(!a.note.empty());
        bool parabolic = false;
        for (const auto& fp : a.fixed_points)
            if (fp.cls.tag == EigenTag::Parabolic) {
                parabolic = true;
                CHECK(fp.multiplicity == 2);
            }
        CHECK(parabolic);
    }
    SUBCASE("multipliers agree with finite differences") {
        std::vector<RationalMap1D> maps = {map1("s^2 + 2*t^2", "2*s*t"), map1("s^2 - 2*t^2", "t^2"),
                                           map1("2*s^3 - t^3", "s*t^2 + t^3")};
        for (const auto& g : maps)
            for (const auto& fp : audit_1d_dichotomy(g).fixed_points) {
                if (std::abs(fp.point[1]) < 1e-3 || std::abs(fp.point[0] / fp.point[1]) > 10.0) continue;
                Complex u = fp.point[0] / fp.point[1];
                CHECK(std::abs(fp.multiplier - numeric_derivative(g, u)) < 1e-5 * std::max(1.0, std::abs(fp.multiplier)));
            }
    }
    SUBCASE("Newton map") {
        auto a = audit_1d_dichotomy(map1("s^2 + 2*t^2", "2*s*t"));
        CHECK(a.verdict == Verdict::Pass);
    }
}
