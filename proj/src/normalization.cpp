#include "pcadyn/normalization.hpp"

#include <algorithm>
#include <map>

#include "pcadyn/roots.hpp"

namespace pcadyn {

namespace {

const std::vector<std::string> kBinaryNames = {"s", "t"};

int form_degree(const MultiPoly& p, const char* what) {
    if (p.arity() != 2) throw ArityMismatch(std::string(what) + " must be a form in s, t");
    auto h = is_homogeneous(p);
    if (!h.homogeneous) throw InvalidInput(std::string(what) + " is not homogeneous");
    return h.zero ? -1 : h.degree;
}

bool proportional(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return true;
    return a * b.leading_coefficient() == b * a.leading_coefficient();
}

Complex eval2(const MultiPoly& p, Complex s, Complex t) {
    std::array<Complex, 2> z{s, t};
    return evaluate(p, z);
}

// Zeros of a non-zero binary form, with the point at infinity [1:0].
std::vector<PointWithMultiplicity> binary_roots(const MultiPoly& w) {
    std::vector<PointWithMultiplicity> out;
    MultiPoly affine = specialize(w, 1, BigRational(1));
    const int at_infinity = w.total_degree() - affine.total_degree();
    if (!affine.is_constant()) {
        for (const auto& r : univariate_roots(to_univariate(affine, 0))) {
            PointWithMultiplicity p;
            if (r.exact) {
                std::array<BigRational, 2> e{*r.exact, BigRational(1)};
                p.point = ProjPoint::from_exact(e);
            } else {
                p.point = ProjPoint({r.value, 1.0});
            }
            p.multiplicity = r.multiplicity;
            out.push_back(std::move(p));
        }
    }
    if (at_infinity > 0) {
        std::array<BigRational, 2> e{BigRational(1), BigRational(0)};
        out.push_back({ProjPoint::from_exact(e), at_infinity});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.point, b.point); });
    return out;
}

// Exact representative: (u, false) for [u:1], (0, true) for [1:0].
using ExactKey = std::pair<BigRational, bool>;

std::optional<ExactKey> exact_key(const ProjPoint& p) {
    if (!p.exact()) return std::nullopt;
    const auto& e = *p.exact();
    if (e[1].is_zero()) return ExactKey{BigRational(0), true};
    return ExactKey{e[0] / e[1], false};
}

ExactKey exact_step(const RationalMap1D& g, const ExactKey& k) {
    std::array<BigRational, 2> z = k.second ? std::array<BigRational, 2>{BigRational(1), BigRational(0)}
                                            : std::array<BigRational, 2>{k.first, BigRational(1)};
    BigRational a = evaluate_exact(g.numerator(), z), b = evaluate_exact(g.denominator(), z);
    if (b.is_zero()) return {BigRational(0), true};
    return {a / b, false};
}

CriticalOrbit exact_orbit(const RationalMap1D& g, const ProjPoint& start, ExactKey k, const OrbitOptions& opts) {
    CriticalOrbit o;
    o.start = start;
    o.exact = true;
    std::map<ExactKey, int> seen;
    seen.emplace(k, 0);
    for (int n = 1; n <= opts.max_iter; ++n) {
        k = exact_step(g, k);
        o.iterations = n;
        auto it = seen.find(k);
        if (it != seen.end()) {
            o.finite = true;
            o.tail = it->second;
            o.period = n - it->second;
            return o;
        }
        if (k.first.bit_size() > opts.max_height_bits) break;
        seen.emplace(k, n);
    }
    o.iterations = opts.max_iter;
    return o;
}

CriticalOrbit numeric_orbit(const RationalMap1D& g, const ProjPoint& start, const OrbitOptions& opts) {
    CriticalOrbit o;
    o.start = start;
    std::vector<ProjPoint> h{start};
    for (int n = 1; n <= opts.max_iter; ++n) {
        h.push_back(g.apply(h.back()));
        for (int i = 0; i < n; ++i) {
            if (projective_distance(h[n], h[i]) >= opts.tol) continue;
            const int period = n - i;
            ProjPoint z = h[n];
            bool sustained = true;
            for (int k = 1; k <= period && sustained; ++k) {
                z = g.apply(z);
                sustained = projective_distance(z, h[i + k]) < opts.tol;
            }
            if (sustained) {
                o.finite = true;
                o.tail = i;
                o.period = period;
                o.iterations = n + period;
                return o;
            }
            break;
        }
    }
    o.iterations = opts.max_iter;
    return o;
}

Complex chart_multiplier(const RationalMap1D& g, const ProjPoint& z) {
    const MultiPoly& A = g.numerator();
    const MultiPoly& B = g.denominator();
    // Chart t = 1 for |u| <= 1, chart s = 1 (coordinate v = t/s) otherwise.
    if (std::abs(z[1]) >= std::abs(z[0])) {
        Complex u = z[0] / z[1];
        Complex a = eval2(A, u, 1.0), b = eval2(B, u, 1.0);
        Complex da = eval2(partial_derivative(A, 0), u, 1.0), db = eval2(partial_derivative(B, 0), u, 1.0);
        return (da * b - a * db) / (b * b);
    }
    Complex v = z[1] / z[0];
    Complex a = eval2(A, 1.0, v), b = eval2(B, 1.0, v);
    Complex da = eval2(partial_derivative(A, 1), 1.0, v), db = eval2(partial_derivative(B, 1), 1.0, v);
    return (db * a - b * da) / (a * a);
}

}  // namespace

RationalCurveMap::RationalCurveMap(std::array<MultiPoly, 3> forms) : forms_(std::move(forms)) {
    degree_ = -1;
    for (const auto& f : forms_) {
        int d = form_degree(f, "curve parametrization");
        if (d < 0) continue;
        if (degree_ >= 0 && d != degree_) throw InvalidInput("curve parametrization forms have different degrees");
        degree_ = d;
    }
    if (degree_ < 1) throw InvalidInput("curve parametrization needs forms of degree at least 1");
    MultiPoly g(2);
    for (const auto& f : forms_)
        if (!f.is_zero()) g = g.is_zero() ? normalize(f) : gcd(g, f);
    if (!g.is_constant())
        throw InvalidInput("curve parametrization forms share the factor " + g.to_string(kBinaryNames));
    bool all_proportional = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!proportional(forms_[i], forms_[j])) all_proportional = false;
    if (all_proportional) throw InvalidInput("curve parametrization is constant (image is a point)");
}

ProjPoint RationalCurveMap::apply(const ProjPoint& tau) const {
    std::vector<Complex> z;
    for (const auto& f : forms_) z.push_back(evaluate(f, tau.coords()));
    return ProjPoint(std::move(z));
}

RationalMap1D::RationalMap1D(MultiPoly a, MultiPoly b) : a_(std::move(a)), b_(std::move(b)) {
    int da = form_degree(a_, "numerator"), db = form_degree(b_, "denominator");
    if (da < 0 || db < 0) throw InvalidInput("rational map needs non-zero numerator and denominator");
    if (da != db) throw InvalidInput("numerator and denominator have different degrees");
    if (da < 1) throw InvalidInput("rational map needs degree at least 1");
    if (!gcd(a_, b_).is_constant()) throw InvalidInput("numerator and denominator share a factor");
    degree_ = da;
}

ProjPoint RationalMap1D::apply(const ProjPoint& tau) const {
    return ProjPoint({evaluate(a_, tau.coords()), evaluate(b_, tau.coords())});
}

std::string RationalMap1D::to_string() const {
    return "[" + a_.to_string(kBinaryNames) + " : " + b_.to_string(kBinaryNames) + "]";
}

RationalMap1D lift_over_normalization(const HomogeneousEndo& f, const RationalCurveMap& n) {
    if (f.arity() != 3) throw ArityMismatch("lift needs an endomorphism of CP^2");
    if (n.degree() > 3) throw InvalidInput("parametrizations of degree above 3 are not supported");
    std::vector<MultiPoly> nf(n.forms().begin(), n.forms().end());
    std::vector<MultiPoly> F;
    for (int i = 0; i < 3; ++i) F.push_back(substitute(f[i], nf));

    // Common factor of n_i(S,T) F_j(s,t) - n_j(S,T) F_i(s,t) over (S, T, s, t).
    const std::vector<int> st_upper = {0, 1}, st_lower = {2, 3};
    MultiPoly g(4);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            MultiPoly e = remap_variables(n[i], 4, st_upper) * remap_variables(F[j], 4, st_lower) -
                          remap_variables(n[j], 4, st_upper) * remap_variables(F[i], 4, st_lower);
            if (e.is_zero()) continue;
            g = g.is_zero() ? e : gcd(g, e);
        }
    if (g.is_zero()) throw SolverFailure("lift equations vanish identically");
    int e_deg = -1;
    for (const auto& [m, c] : g.terms()) {
        int d = m.exp[0] + m.exp[1];
        if (e_deg >= 0 && d != e_deg) throw SolverFailure("lift factor is not homogeneous in the parameter");
        e_deg = d;
    }
    if (e_deg == 0) throw NotInvariant("curve not invariant: f maps the parametrized curve elsewhere");
    if (e_deg > 1)
        throw InvalidInput("parametrization is not birational onto its image (lift has degree " +
                           std::to_string(e_deg) + " in the parameter)");
    MultiPoly alpha(2), beta(2);
    for (const auto& [m, c] : g.terms()) {
        Monomial st;
        st.exp[0] = m.exp[2];
        st.exp[1] = m.exp[3];
        (m.exp[0] == 1 ? alpha : beta).add_term(st, c);
    }
    MultiPoly A = -beta, B = alpha;
    MultiPoly common = gcd(A, B);
    A = *exact_divide(A, common);
    B = *exact_divide(B, common);
    RationalMap1D lift(A, B);
    if (!lift_scalar(f, n, lift)) throw NotInvariant("curve not invariant: lift identity fails");
    return lift;
}

std::optional<BigRational> lift_scalar(const HomogeneousEndo& f, const RationalCurveMap& n, const RationalMap1D& g) {
    std::vector<MultiPoly> nf(n.forms().begin(), n.forms().end());
    std::vector<MultiPoly> ab = {g.numerator(), g.denominator()};
    std::optional<BigRational> c;
    for (int i = 0; i < 3; ++i) {
        MultiPoly lhs = substitute(n[i], ab);
        MultiPoly rhs = substitute(f[i], nf);
        if (rhs.is_zero()) {
            if (!lhs.is_zero()) return std::nullopt;
            continue;
        }
        if (!c) c = lhs.is_zero() ? BigRational(0) : lhs.leading_coefficient() / rhs.leading_coefficient();
        if (lhs != rhs * *c) return std::nullopt;
    }
    if (!c || c->is_zero()) return std::nullopt;
    return c;
}

DegreeAudit degree_1d(const RationalMap1D& g) { return {g.degree(), g.degree() >= 2}; }

MultiPoly wronskian(const RationalMap1D& g) {
    const MultiPoly& A = g.numerator();
    const MultiPoly& B = g.denominator();
    return partial_derivative(A, 0) * partial_derivative(B, 1) - partial_derivative(A, 1) * partial_derivative(B, 0);
}

std::vector<PointWithMultiplicity> critical_points_1d(const RationalMap1D& g) {
    MultiPoly w = wronskian(g);
    if (w.is_zero()) throw Degenerate("Wronskian vanishes identically");
    return binary_roots(w);
}

std::string to_string(PcfStatus s) { return s == PcfStatus::Pcf ? "PCF" : "Undecided"; }

std::string CriticalOrbit::to_string() const {
    if (finite) return "Finite(tail=" + std::to_string(tail) + ", period=" + std::to_string(period) + ")";
    return "Undecided(" + std::to_string(iterations) + ")";
}

PcfVerdict postcritical_orbit_1d(const RationalMap1D& g, const OrbitOptions& opts) {
    if (g.degree() < 2) throw InvalidInput("PCF check needs degree at least 2");
    PcfVerdict v;
    v.critical_points = critical_points_1d(g);
    bool all = true;
    for (const auto& c : v.critical_points) {
        auto k = exact_key(c.point);
        CriticalOrbit o = k ? exact_orbit(g, c.point, *k, opts) : numeric_orbit(g, c.point, opts);
        all = all && o.finite;
        v.orbits.push_back(std::move(o));
    }
    v.verdict = all ? PcfStatus::Pcf : PcfStatus::Undecided;
    if (!all)
        v.note = "some critical orbit did not close up within " + std::to_string(opts.max_iter) +
                 " iterations: either max_iter is too small or the map is not PCF (for a lift, the input map "
                 "would then not be PCA)";
    return v;
}

Audit1D audit_1d_dichotomy(const RationalMap1D& g, double class_tol, int root_probe) {
    const MultiPoly s = MultiPoly::variable(2, 0), t = MultiPoly::variable(2, 1);
    MultiPoly fix = s * g.denominator() - t * g.numerator();
    Audit1D out;
    if (fix.is_zero()) throw Degenerate("every point is fixed");
    for (const auto& p : binary_roots(fix)) {
        FixedPoint1D fp;
        fp.point = p.point;
        fp.multiplicity = p.multiplicity;
        fp.multiplier = chart_multiplier(g, p.point);
        fp.cls = classify_eigenvalue(fp.multiplier, class_tol, root_probe);
        if (!dichotomy_class(fp.cls)) out.verdict = Verdict::FailDichotomy;
        out.fixed_points.push_back(std::move(fp));
    }
    if (out.verdict == Verdict::FailDichotomy)
        out.note = "a fixed multiplier outside {0} and |λ| > 1 means the map is not PCF, so it cannot be the lift "
                   "of a PCA map over an invariant curve";
    return out;
}

}  // namespace pcadyn
