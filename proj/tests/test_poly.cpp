#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "doctest.h"
#include "pcadyn/poly.hpp"
#include "pcadyn/poly_parse.hpp"
#include "pcadyn/roots.hpp"
#include "test_support.hpp"

using namespace pcadyn;
using pcadyn::testing::P;

TEST_CASE("ring operations on small examples") {
    CHECK((P("x") + P("-x")).is_zero());
    CHECK(P("x+y") * P("x-y") == P("x^2-y^2"));
    CHECK(pow(P("x+1"), 0) == P("1"));
    CHECK(pow(P("x+1"), 3) == P("x^3+3*x^2+3*x+1"));
    CHECK_THROWS_AS(P("x", 2) + P("x", 3), ArityMismatch);
}

TEST_CASE("substitution") {
    std::vector<MultiPoly> sq = {P("x^2"), P("y^2"), P("z^2")};
    CHECK(substitute(P("x"), sq) == P("x^2"));
    CHECK(substitute(P("x-y"), sq) == P("x^2-y^2"));
    // the cusp parametrization annihilates its defining polynomial
    std::vector<MultiPoly> cusp = {P("x^2", 1), P("x^3", 1)};
    CHECK(substitute(P("y^2-x^3", 2), cusp).is_zero());
    CHECK_THROWS_AS(substitute(P("x"), std::vector<MultiPoly>{P("x")}), ArityMismatch);
}

TEST_CASE("partial derivatives") {
    CHECK(partial_derivative(P("x^2*y"), 0) == P("2*x*y"));
    CHECK(partial_derivative(P("7"), 0).is_zero());
    CHECK(partial_derivative(P("x^3+y^3+z^3"), 2) == P("3*z^2"));
}

TEST_CASE("jacobian determinant") {
    std::vector<MultiPoly> sq = {P("x^2"), P("y^2"), P("z^2")};
    // diagonal matrix diag(2x, 2y, 2z)
    CHECK(jacobian_det(sq) == P("8*x*y*z"));
    CHECK(jacobian_det(std::vector<MultiPoly>{P("x", 2), P("y", 2)}) == P("1", 2));
    CHECK(jacobian_det(std::vector<MultiPoly>{P("y", 2), P("x", 2)}) == P("-1", 2));
    CHECK_THROWS_AS(jacobian_det(std::vector<MultiPoly>{P("x"), P("y")}), InvalidInput);

    // independent cofactor expansion on a non-diagonal map
    std::vector<MultiPoly> f = {P("x^2"), P("y^2"), P("z^2+x*y")};
    MultiPoly m[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = partial_derivative(f[i], j);
    MultiPoly cof = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(jacobian_det(f) == cof);
}

TEST_CASE("homogeneity") {
    auto h = is_homogeneous(P("x^2+y*z"));
    CHECK(h.homogeneous);
    CHECK(h.degree == 2);
    CHECK_FALSE(is_homogeneous(P("x^2+y")).homogeneous);
    auto z = is_homogeneous(MultiPoly(3));
    CHECK(z.homogeneous);
    CHECK(z.zero);
}

TEST_CASE("exact division") {
    CHECK(*exact_divide(P("x^2*y - x*y"), P("x")) == P("x*y - y"));
    CHECK(*exact_divide(P("x^2-y^2"), P("x-y")) == P("x+y"));
    // x^2+y^2 does not vanish on x=y, so x-y cannot divide it
    BigRational pt[3] = {1, 1, 0};
    REQUIRE_FALSE(evaluate_exact(P("x^2+y^2"), pt).is_zero());
    CHECK_FALSE(exact_divide(P("x^2+y^2"), P("x-y")).has_value());
    CHECK_THROWS_AS(exact_divide(P("x"), MultiPoly(3)), DivisionByZero);
}

TEST_CASE("sylvester resultant") {
    CHECK(sylvester_resultant(P("x^2-1"), P("x-1"), 0).is_zero());
    // det [[1, -y], [1, -z]] = y - z
    CHECK(sylvester_resultant(P("x-y"), P("x-z"), 0) == P("y-z"));
    // constant in the variable: raised to the other degree
    CHECK(sylvester_resultant(P("y+1"), P("x^2+y"), 0) == P("(y+1)^2"));
    CHECK_THROWS_AS(sylvester_resultant(MultiPoly(3), MultiPoly(3), 0), InvalidInput);
}

namespace {

// Res(p, q) = lc(p)^deg q * prod q(r_i) over the roots of p, with roots from
// Eigen's companion-matrix eigenvalues (independent of the Sylvester route).
std::complex<double> product_over_roots(const MultiPoly& p, const MultiPoly& q) {
    auto a = complex_coefficients(p);
    const int n = static_cast<int>(a.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -a[i] / a[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    auto qc = complex_coefficients(q);
    std::complex<double> prod = std::pow(a[n], q.total_degree());
    for (int i = 0; i < n; ++i) prod *= horner(qc, es.eigenvalues()[i]);
    return prod;
}

}  // namespace

TEST_CASE("resultant multiplicativity and product-over-roots oracle") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto cubic = [&] {
            MultiPoly p(1);
            for (int k = 0; k <= 3; ++k) p.add_term(Monomial{{static_cast<std::uint16_t>(k)}}, pcadyn::testing::random_rational(rng));
            p.add_term(Monomial{{3}}, BigRational(1));
            if (p.degree_in(0) != 3) p.add_term(Monomial{{3}}, BigRational(2));
            return p;
        };
        MultiPoly f = cubic(), g = cubic(), h = cubic();
        MultiPoly lhs = sylvester_resultant(f * g, h, 0);
        CHECK(lhs == sylvester_resultant(f, h, 0) * sylvester_resultant(g, h, 0));
        auto numeric = product_over_roots(f * g, h);
        double exact = lhs.constant_term().to_double();
        CHECK(std::abs(numeric - exact) <= 1e-7 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("gcd and squarefree part") {
    CHECK(gcd(P("x^2-y^2"), P("x-y")) == P("x-y"));
    CHECK(gcd(P("(x+z)*(y-2*z)^2"), P("(y-2*z)*(x^2+y*z)")) == P("y-2*z"));
    CHECK(gcd(P("x^2+1"), P("y")) == P("1"));
    CHECK(squarefree_part(P("x^2*y")) == P("x*y"));
    // factor-and-multiply oracle
    MultiPoly a = P("x-y"), b = P("x+z");
    CHECK(squarefree_part(pow(a, 3) * b) == normalize(a * b));
    CHECK_THROWS_AS(squarefree_part(MultiPoly(3)), InvalidInput);
    CHECK_THROWS_AS(gcd(MultiPoly(2), MultiPoly(2)), InvalidInput);
}

TEST_CASE("evaluation") {
    Complex pt[2] = {2.0, 1.0};
    CHECK(std::abs(evaluate(P("x^2+y", 2), pt) - Complex(5.0)) < 1e-15);
    BigRational z3[3] = {0, 0, 0};
    CHECK(evaluate_exact(P("x^2+3*y-7/2"), z3) == BigRational(-7, 2));
    Complex r2[1] = {1.4142135623730951};
    CHECK(std::abs(evaluate(P("x^2-2", 1), r2)) < 1e-15);
}

TEST_CASE("parser") {
    std::vector<std::string> vars = {"x", "y", "z"};
    CHECK(parse_polynomial("x^2*y - 3/2*z^3", vars).to_string() == "x^2*y - 3/2*z^3");
    CHECK_THROWS_AS(parse_polynomial("2x", vars), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x + q", vars), ParseError);
    try {
        parse_polynomial("x + q", vars, 4, 10);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() == 15);
    }
    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
        MultiPoly p = pcadyn::testing::random_poly(rng, 3, 5, 6);
        CHECK(parse_polynomial(p.to_string(), vars) == p);
    }
}

TEST_CASE("property: ring axioms up to arity 4, degree 6") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int arity = 1 + trial % 4;
        auto a = pcadyn::testing::random_poly(rng, arity, 3, 5);
        auto b = pcadyn::testing::random_poly(rng, arity, 3, 5);
        auto c = pcadyn::testing::random_poly(rng, arity, 3, 5);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("property: exact_divide round trip") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int arity = 1 + trial % 4;
        auto p = pcadyn::testing::random_poly(rng, arity, 4, 5);
        auto d = pcadyn::testing::random_poly(rng, arity, 3, 4);
        if (d.is_zero()) continue;
        auto q = exact_divide(d * p, d);
        REQUIRE(q.has_value());
        CHECK(*q == p);
    }
}

TEST_CASE("property: resultant vanishes iff gcd has positive degree in the variable") {
    std::mt19937 rng(99);
    int vanished = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto common = pcadyn::testing::random_poly(rng, 2, 2, 3);
        auto a = pcadyn::testing::random_poly(rng, 2, 2, 3);
        auto b = pcadyn::testing::random_poly(rng, 2, 2, 3);
        if (trial % 2 == 0) {
            a *= common;
            b *= common;
        }
        if (a.is_zero() || b.is_zero() || a.degree_in(0) < 1 || b.degree_in(0) < 1) continue;
        bool res_zero = sylvester_resultant(a, b, 0).is_zero();
        bool shared = gcd(a, b).degree_in(0) > 0;
        CHECK(res_zero == shared);
        vanished += res_zero;
    }
    CHECK(vanished > 0);
}

TEST_CASE("property: substitution is a ring homomorphism") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto p = pcadyn::testing::random_poly(rng, 3, 3, 4);
        auto q = pcadyn::testing::random_poly(rng, 3, 3, 4);
        std::vector<MultiPoly> f;
        for (int i = 0; i < 3; ++i) f.push_back(pcadyn::testing::random_poly(rng, 2, 2, 3));
        CHECK(substitute(p * q, f) == substitute(p, f) * substitute(q, f));
        CHECK(substitute(p + q, f) == substitute(p, f) + substitute(q, f));
    }
}

TEST_CASE("property: Euler identity on 200 random homogeneous polynomials") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int arity = 2 + trial % 3;
        int d = 1 + trial % 6;
        auto p = pcadyn::testing::random_homogeneous(rng, arity, d, 6);
        MultiPoly sum(arity);
        for (int i = 0; i < arity; ++i) sum += MultiPoly::variable(arity, i) * partial_derivative(p, i);
        CHECK(sum == p * BigRational(d));
    }
}

TEST_CASE("property: squarefree part divides p and has no repeated factor") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = pcadyn::testing::random_poly(rng, 3, 2, 3);
        auto b = pcadyn::testing::random_poly(rng, 3, 1, 3);
        if (a.is_constant() || b.is_constant()) continue;
        MultiPoly p = a * a * b;
        MultiPoly s = squarefree_part(p);
        CHECK(exact_divide(p, s).has_value());
        MultiPoly g = s;
        for (int v = 0; v < 3; ++v) {
            auto d = partial_derivative(s, v);
            if (!d.is_zero()) g = gcd(g, d);
        }
        CHECK(g.is_constant());
    }
}

TEST_CASE("univariate roots with rational detection") {
    // (x-1)^2 (x+1/2) (x^2+2)
    MultiPoly p = P("(x-1)^2*(x+1/2)*(x^2+2)", 1);
    auto roots = univariate_roots(p);
    int rational = 0;
    for (const auto& r : roots) {
        if (r.exact) {
            ++rational;
            if (*r.exact == BigRational(1)) CHECK(r.multiplicity == 2);
            if (*r.exact == BigRational(-1, 2)) CHECK(r.multiplicity == 1);
        } else {
            CHECK(std::abs(std::abs(r.value.imag()) - std::sqrt(2.0)) < 1e-12);
        }
    }
    CHECK(rational == 2);
    CHECK(roots.size() == 4);
}
