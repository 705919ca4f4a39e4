#include <numbers>
#include <type_traits>

#include "pcadyn/local_analysis.hpp"

namespace pcadyn {

namespace {

BigRational coeff_xy(const MultiPoly& p, int a, int b) {
    Monomial m;
    m.exp[0] = static_cast<std::uint16_t>(a);
    m.exp[1] = static_cast<std::uint16_t>(b);
    return p.coefficient(m);
}

bool only_uses(const MultiPoly& p, int var) {
    return !p.uses_variable(1 - var);
}

struct Graph {
    bool swapped;  // x = G(y) instead of y = G(x)
    SeriesC g;
    std::optional<SeriesQ> gq;
};

Graph smooth_graph(const PuiseuxBranch& b_in) {
    if (b_in.multiplicity() != 1) throw InvalidInput("branch must be smooth");
    PuiseuxBranch b = b_in;
    if (b.m != 1) {
        if (b.y_exact) {
            SeriesQ t_m = SeriesQ::monomial(BigRational(1), b.m, b.order());
            b = b.swapped ? normalize_branch(*b.y_exact, t_m) : normalize_branch(t_m, *b.y_exact);
        } else {
            b = normalize_branch(b.x_series(), b.y_series());
        }
    }
    return {b.swapped, b.y, b.y_exact};
}

// Candidate g_hat up to the root of unity, as zeta-free base t^k U^{1/m}.
template <class T>
std::optional<std::tuple<PowerSeries<T>, PowerSeries<T>, PowerSeries<T>>> circle_data(const GermMap2& g, int m,
                                                                                      const PowerSeries<T>& y,
                                                                                      double tol, int& v_out) {
    const int N = y.order();
    PowerSeries<T> X = PowerSeries<T>::monomial(Scalar<T>::from_int(1), m, N);
    PowerSeries<T> G1 = evaluate_series(g[0], X, y);
    PowerSeries<T> G2 = evaluate_series(g[1], X, y);
    int v;
    if constexpr (std::is_same_v<T, BigRational>) v = G1.valuation();
    else v = G1.valuation(tol * std::max(1.0, G1.max_magnitude()));
    v_out = v;
    if (v > N) throw NotInvariant("first coordinate of g along the branch vanishes to order " + std::to_string(N));
    if (v % m != 0)
        throw NotInvariant("branch is not invariant: valuation " + std::to_string(v) + " of g1 along it is not a multiple of m=" +
                           std::to_string(m));
    const T a = G1[v];
    PowerSeries<T> U = G1.divided_by_t(v) * (Scalar<T>::from_int(1) / a);
    U.set(0, Scalar<T>::from_int(1));
    PowerSeries<T> base = U.root(static_cast<unsigned>(m)).shifted(v / m);
    return std::make_tuple(base, G2, PowerSeries<T>::monomial(a, 0, 0));
}

Complex principal_root(Complex a, int m) {
    return std::polar(std::pow(std::abs(a), 1.0 / m), std::arg(a) / m);
}

bool consistent(const SeriesC& y, const SeriesC& ghat, const SeriesC& G2, double tol) {
    SeriesC lhs = y.compose(ghat);
    const int K = std::min(lhs.order(), G2.order());
    double eps = tol * std::max({1.0, lhs.max_magnitude(), G2.max_magnitude()});
    for (int k = 0; k <= K; ++k)
        if (std::abs(lhs[k] - G2[k]) > eps) return false;
    return true;
}

std::array<Complex, 2> spectrum(const std::array<std::array<BigRational, 2>, 2>& L) {
    Complex tr = (L[0][0] + L[1][1]).to_complex();
    Complex det = (L[0][0] * L[1][1] - L[0][1] * L[1][0]).to_complex();
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex q = std::abs(tr + disc) >= std::abs(tr - disc) ? (tr + disc) / 2.0 : (tr - disc) / 2.0;
    std::array<Complex, 2> ev{0.0, 0.0};
    if (q != Complex(0.0)) ev = {q, det / q};
    if (std::abs(ev[1]) < std::abs(ev[0])) std::swap(ev[0], ev[1]);
    return ev;
}

struct Expected {
    std::array<Complex, 2> value;
    std::optional<std::array<BigRational, 2>> exact;
    std::string text;
};

RelationReport relation_report(const std::string& name, const GermMap2& g, const CircleMap& cm, const Expected& e,
                               double tol) {
    RelationReport r;
    r.relation = name;
    r.lambda = cm.lambda();
    if (cm.exact) r.lambda_exact = (*cm.exact)[1];
    auto L = g.linear_part();
    r.eigenvalues = spectrum(L);
    r.expected = e.value;
    if (std::abs(r.expected[1]) < std::abs(r.expected[0])) std::swap(r.expected[0], r.expected[1]);
    r.expected_text = e.text;
    const BigRational tr = L[0][0] + L[1][1];
    const BigRational det = L[0][0] * L[1][1] - L[0][1] * L[1][0];
    if (e.exact) {
        r.exact = true;
        const auto& [e1, e2] = *e.exact;
        r.pass = tr == e1 + e2 && det == e1 * e2;
        r.residual = std::max(std::abs((tr - e1 - e2).to_double()), std::abs((det - e1 * e2).to_double()));
        return r;
    }
    Complex s = e.value[0] + e.value[1], p = e.value[0] * e.value[1];
    double scale = std::max({1.0, std::abs(tr.to_double()), std::abs(det.to_double())});
    r.residual = std::max(std::abs(tr.to_complex() - s), std::abs(det.to_complex() - p)) / scale;
    r.pass = r.residual <= tol;
    return r;
}

Expected powers(const CircleMap& cm, std::optional<int> a, int b, std::string text) {
    Expected e;
    Complex lam = cm.lambda();
    e.value = {a ? std::pow(lam, *a) : Complex(0.0), std::pow(lam, b)};
    if (cm.exact) {
        BigRational l = (*cm.exact)[1];
        e.exact = std::array<BigRational, 2>{a ? l.pow(static_cast<unsigned>(*a)) : BigRational(0),
                                             l.pow(static_cast<unsigned>(b))};
    }
    e.text = std::move(text);
    return e;
}

}  // namespace

GermMap2::GermMap2(MultiPoly g1, MultiPoly g2) : g_{std::move(g1), std::move(g2)} {
    for (const auto& p : g_) {
        if (p.arity() != 2) throw ArityMismatch("germ components must be polynomials in x, y");
        if (!p.constant_term().is_zero()) throw InvalidInput("germ must fix the origin (non-zero constant term)");
    }
}

std::array<std::array<BigRational, 2>, 2> GermMap2::linear_part() const {
    return {{{coeff_xy(g_[0], 1, 0), coeff_xy(g_[0], 0, 1)}, {coeff_xy(g_[1], 1, 0), coeff_xy(g_[1], 0, 1)}}};
}

GermMap2 GermMap2::swapped() const {
    const std::vector<int> s = {1, 0};
    return GermMap2(remap_variables(g_[1], 2, s), remap_variables(g_[0], 2, s));
}

GermMap2 GermMap2::conjugated(const std::array<MultiPoly, 2>& h, const std::array<MultiPoly, 2>& h_inv) const {
    std::array<MultiPoly, 2> inner = {substitute(g_[0], h_inv), substitute(g_[1], h_inv)};
    return GermMap2(substitute(h[0], inner), substitute(h[1], inner));
}

CoordinateChange CoordinateChange::triangular(const MultiPoly& p, const MultiPoly& r) {
    if (p.arity() != 2 || r.arity() != 2) throw ArityMismatch("coordinate change needs polynomials in x, y");
    if (!only_uses(p, 0)) throw InvalidInput("p must be a polynomial in x alone");
    if (!only_uses(r, 1)) throw InvalidInput("r must be a polynomial in y alone");
    if (!p.constant_term().is_zero() || !r.constant_term().is_zero())
        throw InvalidInput("coordinate change must fix the origin");
    const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    CoordinateChange c;
    MultiPoly Y = y + p;
    std::array<MultiPoly, 2> at_Y = {x, Y};
    c.forward = {x + substitute(r, at_Y), Y};
    MultiPoly X = x - r;
    std::array<MultiPoly, 2> at_X = {X, y};
    c.inverse = {X, y - substitute(p, at_X)};
    return c;
}

CircleMap induced_circle_map(const GermMap2& g_in, const PuiseuxBranch& b, double tol) {
    const GermMap2 g = b.swapped ? g_in.swapped() : g_in;
    const int m = b.m;
    int v = 0;
    auto [base, G2, lead] = *circle_data<Complex>(g, m, b.y, tol, v);
    const Complex A = principal_root(lead[0], m);
    CircleMap out;
    out.consistent_roots = 0;
    std::optional<int> chosen;
    for (int j = 0; j < m; ++j) {
        Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
        SeriesC ghat = base * (zeta * A);
        if (!consistent(b.y, ghat, G2, tol)) continue;
        ++out.consistent_roots;
        if (!chosen) {
            chosen = j;
            out.series = ghat;
        }
    }
    if (!chosen) throw NotInvariant("branch is not invariant: no root of unity matches the second coordinate");
    out.root_index = *chosen;
    if (b.y_exact && (*chosen == 0 || 2 * *chosen == m)) {
        int vq = 0;
        auto [bq, G2q, leadq] = *circle_data<BigRational>(g, m, *b.y_exact, tol, vq);
        auto Aq = leadq[0].exact_root(static_cast<unsigned>(m));
        if (Aq) {
            BigRational zeta = *chosen == 0 ? BigRational(1) : BigRational(-1);
            out.exact = bq * (zeta * *Aq);
            out.series = out.exact->cast<Complex>();
        }
    }
    return out;
}

RelationReport verify_cusp_relation(const GermMap2& g, const PuiseuxBranch& b, double tol) {
    if (!b.singular()) throw InvalidInput("branch is smooth: the cusp relation needs 1 < m < n");
    const int m = b.m, n = *b.n;
    if (n % m == 0) throw InvalidInput("m divides n: no characteristic exponent");
    if (b.order() < m + n)
        throw InvalidInput("truncation order " + std::to_string(b.order()) + " is below m + n = " +
                           std::to_string(m + n));
    CircleMap cm = induced_circle_map(g, b, tol);
    return relation_report("cusp", g, cm,
                           powers(cm, m, n, "λ^" + std::to_string(m) + ", λ^" + std::to_string(n)), tol);
}

RelationReport verify_preperiodic_relation(const GermMap2& g, const PuiseuxBranch& b_src, const PuiseuxBranch& b_dst,
                                           double tol) {
    Graph dst = smooth_graph(b_dst);
    auto tc = branch_tangent_type(b_src, b_dst, tol);
    if (tc.kind == TangentKind::Indistinguishable)
        throw InvalidInput("source and destination branches coincide to the truncation order");
    CircleMap cm = induced_circle_map(g, b_dst, tol);

    // g∘gamma_src must satisfy the graph equation of b_dst.
    SeriesC xs = b_src.x_series(), ys = b_src.y_series();
    SeriesC A = evaluate_series(g[0], xs, ys), B = evaluate_series(g[1], xs, ys);
    const SeriesC& base = dst.swapped ? B : A;
    const SeriesC& other = dst.swapped ? A : B;
    SeriesC diff = other - dst.g.compose(base);
    double eps = tol * std::max({1.0, A.max_magnitude(), B.max_magnitude()});
    if (diff.valuation(eps) <= diff.order())
        throw NotInvariant("g does not map the source branch into the destination branch (defect at t^" +
                           std::to_string(diff.valuation(eps)) + ")");
    return relation_report("preperiodic", g, cm, powers(cm, std::nullopt, 1, "0, λ"), tol);
}

RelationReport verify_tangent_relation(const GermMap2& g, const PuiseuxBranch& b1, const PuiseuxBranch& b2,
                                       double tol) {
    smooth_graph(b1);
    smooth_graph(b2);
    auto tc = branch_tangent_type(b1, b2, tol);
    if (tc.kind == TangentKind::Transversal) throw InvalidInput("branches are transversal");
    if (tc.kind == TangentKind::Indistinguishable)
        throw InvalidInput("branches coincide to the truncation order");
    CircleMap cm = induced_circle_map(g, b1, tol);
    induced_circle_map(g, b2, tol);
    const int k = tc.contact_order;
    return relation_report("tangent", g, cm, powers(cm, 1, k, "λ, λ^" + std::to_string(k)), tol);
}

}  // namespace pcadyn
