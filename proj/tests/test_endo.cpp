#include <cmath>
#include <random>

#include "doctest.h"
#include "pcadyn/endo.hpp"
#include "pcadyn/projective_solve.hpp"
#include "test_support.hpp"

using namespace pcadyn;
using pcadyn::testing::P;

namespace {

HomogeneousEndo power_map(int d, int arity = 3) {
    std::vector<MultiPoly> c;
    for (int i = 0; i < arity; ++i) c.push_back(pow(MultiPoly::variable(arity, i), d));
    return HomogeneousEndo(c);
}

std::vector<Complex> random_point(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> z;
    for (int i = 0; i < n; ++i) z.emplace_back(u(rng), u(rng));
    return z;
}

// Projective equality of two vectors: all 2x2 minors small relative to the norms.
double projective_gap(std::span<const Complex> a, std::span<const Complex> b) {
    double na = 0, nb = 0, g = 0;
    for (auto c : a) na = std::max(na, std::abs(c));
    for (auto c : b) nb = std::max(nb, std::abs(c));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            g = std::max(g, std::abs(a[i] * b[j] - a[j] * b[i]) / (na * nb));
    return g;
}

}  // namespace

TEST_CASE("new_endo validates components") {
    auto f = new_endo({P("x^2"), P("y^2"), P("z^2")});
    CHECK(f.degree() == 2);
    CHECK_THROWS_AS(new_endo({P("x^2"), P("y^3"), P("z^2")}), InvalidInput);
    CHECK_THROWS_AS(new_endo({P("x^2 + y"), P("y^2"), P("z^2")}), InvalidInput);
    CHECK_THROWS_AS(new_endo({P("0"), P("0"), P("0")}), InvalidInput);
    CHECK_THROWS_AS(new_endo({P("x^2", 2), P("y^2"), P("z^2")}), ArityMismatch);
    CHECK(new_endo({P("0"), P("y^2"), P("z^2")}).degree() == 2);
}

TEST_CASE("iterate composes") {
    auto f = power_map(2);
    auto f2 = iterate(f, 2);
    CHECK(f2 == new_endo({P("x^4"), P("y^4"), P("z^4")}));
    CHECK(f2.degree() == 4);
    CHECK(iterate(f, 1) == f);
    CHECK_THROWS_AS(iterate(power_map(3), 4), DegreeCapExceeded);

    auto g = new_endo({P("x^2 + y*z"), P("y^2 - 1/2*x*z"), P("z^2 + 3*x*y")});
    auto g2 = iterate(g, 2);
    std::mt19937 rng(7);
    for (int k = 0; k < 20; ++k) {
        std::vector<BigRational> pt;
        for (int i = 0; i < 3; ++i) pt.push_back(pcadyn::testing::random_rational(rng));
        CHECK(g2.apply_exact(pt) == g.apply_exact(g.apply_exact(pt)));
    }
}

TEST_CASE("check_nondegenerate") {
    for (int d = 2; d <= 4; ++d) {
        CHECK(check_nondegenerate(power_map(d)).nondegenerate);
        // A shared linear factor creates a common zero.
        auto f = power_map(d);
        std::vector<MultiPoly> c;
        for (const auto& p : f.components()) c.push_back(p * P("x - 2*y + z"));
        auto r = check_nondegenerate(HomogeneousEndo(c));
        REQUIRE_FALSE(r.nondegenerate);
        REQUIRE(r.witness);
        const auto& w = r.witness->coords();
        for (const auto& p : c) CHECK(std::abs(evaluate(p, w)) < 1e-9);
    }
    auto r = check_nondegenerate(new_endo({P("x^2"), P("y^2"), P("x*y")}));
    REQUIRE_FALSE(r.nondegenerate);
    REQUIRE(r.witness->exact());
    CHECK(*r.witness->exact() == std::vector<BigRational>{0, 0, 1});
    CHECK(check_nondegenerate(new_endo({P("x^2 - y*z"), P("y^2"), P("z^2")})).nondegenerate);

    // Isolated irrational common zero: x^2 - 2z^2 = 0, y = z.
    auto s = check_nondegenerate(new_endo({P("x^2 - 2*z^2"), P("y^2 - z^2"), P("y*z - z^2")}));
    REQUIRE_FALSE(s.nondegenerate);
    CHECK(s.witness_residual < 1e-9);

    CHECK(check_nondegenerate(new_endo({P("x^2", 2), P("y^2", 2)})).nondegenerate);
    CHECK_FALSE(check_nondegenerate(new_endo({P("x*y", 2), P("x^2 - x*y", 2)})).nondegenerate);
}

TEST_CASE("common projective zeros of simple systems") {
    std::vector<MultiPoly> sys = {P("x*y"), P("y*z"), P("x*z")};
    auto z = common_projective_zeros(sys);
    CHECK(z.size() == 3);
    std::vector<MultiPoly> line = {P("x - y"), P("x*y - z^2")};
    auto zl = common_projective_zeros(line);
    CHECK(zl.size() == 2);
    for (const auto& pz : zl) CHECK(pz.point.exact());
    std::vector<MultiPoly> deg = {P("x*(x - y)"), P("x*(y - z)")};
    CHECK_THROWS_AS(common_projective_zeros(deg), Degenerate);
}

TEST_CASE("chart_representation") {
    auto f = power_map(2);
    auto cz = chart_representation(f, 2);
    CHECK(cz.numerators()[0] == P("x^2"));
    CHECK(cz.numerators()[1] == P("y^2"));
    CHECK(cz.denominator() == P("1"));
    auto cx = chart_representation(f, 0);
    CHECK(cx.numerators()[0] == P("y^2"));
    CHECK(cx.numerators()[1] == P("z^2"));
    CHECK(cx.source_variables() == std::vector<int>{1, 2});

    CHECK_THROWS_AS(chart_representation(new_endo({P("x^2"), P("y^2"), P("0")}), 2), Degenerate);

    // Cross-evaluation oracle against projective evaluation.
    auto g = new_endo({P("x^2 + y*z"), P("y^2 - 1/2*x*z"), P("z^2 + 3*x*y")});
    std::mt19937 rng(11);
    for (int chart = 0; chart < 3; ++chart)
        for (int ic = 0; ic < 3; ++ic) {
            auto m = chart_representation(g, chart, ic);
            for (int k = 0; k < 10; ++k) {
                auto a = random_point(rng, 2);
                auto img = m.evaluate(a);
                std::vector<Complex> proj(3);
                int pos = 0;
                for (int v = 0; v < 3; ++v) proj[v] = v == ic ? Complex(1.0) : img[pos++];
                auto direct = g.apply(m.lift(a));
                CHECK(projective_gap(proj, direct) < 1e-12);
            }
        }
}

TEST_CASE("chain rule for the second iterate") {
    auto g = new_endo({P("x^2 + y*z"), P("y^2 - 1/2*x*z"), P("z^2 + 3*x*y")});
    auto g2 = iterate(g, 2);
    auto m = chart_representation(g, 2);
    auto m2 = chart_representation(g2, 2);
    std::mt19937 rng(3);
    int checked = 0;
    while (checked < 100) {
        auto a = random_point(rng, 2);
        auto b = m.lift(a);
        if (std::abs(evaluate(g[2], b)) < 1e-3) continue;
        auto mid = m.evaluate(a);
        if (std::abs(evaluate(g[2], m.lift(mid))) < 1e-3) continue;
        auto j1 = m.jacobian(a);
        auto j2 = m.jacobian(mid);
        auto j = m2.jacobian(a);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                Complex prod = j2[r][0] * j1[0][c] + j2[r][1] * j1[1][c];
                CHECK(std::abs(prod - j[r][c]) <= 1e-8 * std::max(1.0, std::abs(j[r][c])));
            }
        ++checked;
    }
}

TEST_CASE("radial eigenvalue and Euler identity") {
    std::vector<Complex> w = {1.0, 1.0, 1.0};
    CHECK(verify_radial_eigenvalue(power_map(2), w, 1e-12));
    CHECK(verify_radial_eigenvalue(power_map(3), w, 1e-12));
    CHECK_THROWS_AS(verify_radial_eigenvalue(power_map(2), std::vector<Complex>{2.0, 1.0, 1.0}, 1e-9),
                    InvalidInput);
    CHECK_THROWS_AS(verify_radial_eigenvalue(power_map(2), std::vector<Complex>{0.0, 0.0, 0.0}, 1e-9),
                    InvalidInput);
    auto g = new_endo({P("x^3 + y*z^2"), P("y^3 - 1/2*x*z*y"), P("z^3 + 3*x^2*y")});
    for (const auto& p : g.components()) {
        MultiPoly e(3);
        for (int v = 0; v < 3; ++v) e += MultiPoly::variable(3, v) * partial_derivative(p, v);
        CHECK(e == BigRational(g.degree()) * p);
    }
}

TEST_CASE("potential of the power map") {
    auto f = power_map(2);
    auto est = potential(f, std::vector<Complex>{2.0, 1.0, 1.0}, 40, 1e-12);
    CHECK(std::abs(est.extrapolated - std::log(2.0)) < 1e-10);
    CHECK(est.converged);
    CHECK(est.samples.size() == 41);
    auto e0 = potential(f, std::vector<Complex>{1.0, 0.3, 0.5}, 40, 1e-12);
    CHECK(std::abs(e0.extrapolated) < 1e-12);
    CHECK_THROWS_AS(potential(f, std::vector<Complex>{0.0, 0.0, 0.0}, 10, 1e-9), InvalidInput);

    auto g = new_endo({P("x^2 + y*z"), P("y^2 - 1/2*x*z"), P("z^2 + 3*x*y")});
    REQUIRE(check_nondegenerate(g).nondegenerate);
    std::mt19937 rng(5);
    for (int k = 0; k < 100; ++k) {
        auto w = random_point(rng, 3);
        double h = potential(g, w, 60, 1e-12).extrapolated;
        double hf = potential(g, g.apply(w), 60, 1e-12).extrapolated;
        CHECK(std::abs(hf - 2.0 * h) < 1e-8);
        std::vector<Complex> cw;
        Complex c(0.7, -1.9);
        for (auto v : w) cw.push_back(c * v);
        double hc = potential(g, cw, 60, 1e-12).extrapolated;
        CHECK(std::abs(hc - h - std::log(std::abs(c))) < 1e-9);
    }
}
