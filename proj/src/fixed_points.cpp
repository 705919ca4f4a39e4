#include "pcadyn/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace pcadyn {

namespace {

using Matrix = std::vector<std::vector<Complex>>;

bool eigen_less(Complex a, Complex b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12 * std::max({1.0, ma, mb})) return ma < mb;
    double aa = ma == 0.0 ? 0.0 : std::arg(a), ab = mb == 0.0 ? 0.0 : std::arg(b);
    return aa < ab;
}

std::vector<Complex> eigenvalues(const Matrix& j) {
    if (j.size() == 1) return {j[0][0]};
    Complex tr = j[0][0] + j[1][1];
    Complex det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex q = std::abs(tr + disc) >= std::abs(tr - disc) ? (tr + disc) / 2.0 : (tr - disc) / 2.0;
    std::vector<Complex> ev;
    if (q == Complex(0.0)) ev = {0.0, 0.0};
    else ev = {q, det / q};
    std::sort(ev.begin(), ev.end(), eigen_less);
    return ev;
}

double matrix_norm(const Matrix& j) {
    double m = 0.0;
    for (const auto& r : j)
        for (auto v : r) m = std::max(m, std::abs(v));
    return m;
}

std::vector<Complex> affine_coords(const ProjPoint& z, int chart) {
    std::vector<Complex> a;
    for (std::size_t v = 0; v < z.size(); ++v)
        if (static_cast<int>(v) != chart) a.push_back(z[v] / z[chart]);
    return a;
}

int checked_chart(const ProjPoint& z, std::optional<int> chart) {
    int c = chart.value_or(z.max_index());
    if (c < 0 || c >= static_cast<int>(z.size())) throw InvalidInput("chart index out of range");
    if (std::abs(z[c]) < 1e-8) throw InvalidInput("point lies outside the requested chart");
    return c;
}

void require_fixed(const HomogeneousEndo& f, const ProjPoint& z, double residual_tol) {
    if (static_cast<int>(z.size()) != f.arity()) throw ArityMismatch("point dimension differs from the map");
    double r = system_residual(fixed_point_system(f), z.coords());
    if (r > residual_tol) throw InvalidInput("point " + z.to_string() + " is not fixed (residual " +
                                             format_double(r) + ")");
}

double normalized_value(const MultiPoly& q, const ProjPoint& z) {
    double m = max_abs_coefficient(q).to_double();
    return std::abs(evaluate(q, z.coords())) / m;
}

}  // namespace

std::string to_string(EigenTag tag) {
    switch (tag) {
        case EigenTag::Superattracting: return "Superattracting";
        case EigenTag::Attracting: return "Attracting";
        case EigenTag::Parabolic: return "Parabolic";
        case EigenTag::Elliptic: return "Elliptic";
        case EigenTag::Repelling: return "Repelling";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::FailDichotomy: return "FAIL-DICHOTOMY";
        case Verdict::Refused: return "REFUSED";
    }
    return "?";
}

EigenClass classify_eigenvalue(Complex lambda, double tol, int root_probe) {
    EigenClass c;
    c.modulus = std::abs(lambda);
    if (c.modulus <= tol) c.tag = EigenTag::Superattracting;
    else if (c.modulus <= 1.0 - tol) c.tag = EigenTag::Attracting;
    else if (c.modulus >= 1.0 + tol) c.tag = EigenTag::Repelling;
    else {
        c.tag = EigenTag::Elliptic;
        Complex p = 1.0;
        for (int q = 1; q <= root_probe; ++q) {
            p *= lambda;
            if (std::abs(p - 1.0) <= tol) {
                c.tag = EigenTag::Parabolic;
                c.root_order = q;
                break;
            }
        }
    }
    return c;
}

std::vector<MultiPoly> fixed_point_system(const HomogeneousEndo& f) {
    const int n = f.arity();
    std::vector<MultiPoly> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.push_back(MultiPoly::variable(n, i) * f[j] - MultiPoly::variable(n, j) * f[i]);
    return out;
}

std::vector<ProjectiveZero> solve_fixed_points(const HomogeneousEndo& f, const SolveOptions& opts) {
    if (f.degree() < 2) throw InvalidInput("fixed point solving needs degree at least 2");
    auto sys = fixed_point_system(f);
    std::vector<MultiPoly> nz;
    for (const auto& m : sys)
        if (!m.is_zero()) nz.push_back(m);
    if (nz.empty()) throw Degenerate("all fixed-point minors vanish: every point is fixed");
    MultiPoly g = nz[0];
    for (std::size_t i = 1; i < nz.size(); ++i) g = gcd(g, nz[i]);
    if (!g.is_constant())
        throw Degenerate("fixed points form a curve: common factor " +
                         g.to_string(default_variable_names(f.arity())));
    return common_projective_zeros(sys, opts);
}

std::vector<Complex> eigenvalues_at(const HomogeneousEndo& f, const ProjPoint& z, double residual_tol,
                                    std::optional<int> chart) {
    require_fixed(f, z, residual_tol);
    int c = checked_chart(z, chart);
    auto m = chart_representation(f, c);
    return eigenvalues(m.jacobian(affine_coords(z, c)));
}

TangentSplit tangent_split(const HomogeneousEndo& f, const ProjPoint& z, const CurveComponent& q, double tol,
                           double residual_tol) {
    if (f.arity() != 3) throw InvalidInput("tangent_split needs a map of CP^2");
    require_fixed(f, z, residual_tol);
    if (normalized_value(q.poly, z) > tol)
        throw InvalidInput("point " + z.to_string() + " is not on component '" + q.label + "'");
    const int c = checked_chart(z, {});
    auto m = chart_representation(f, c);
    auto a = affine_coords(z, c);
    auto j = m.jacobian(a);
    const auto& vars = m.source_variables();
    Complex ga = evaluate(partial_derivative(q.poly, vars[0]), z.coords());
    Complex gb = evaluate(partial_derivative(q.poly, vars[1]), z.coords());
    double gn = std::hypot(std::abs(ga), std::abs(gb));
    if (gn <= tol * max_abs_coefficient(q.poly).to_double())
        throw Degenerate("point " + z.to_string() + " is a singular point of component '" + q.label + "'");
    Complex t0 = gb / gn, t1 = -ga / gn;
    Complex j0 = j[0][0] * t0 + j[0][1] * t1;
    Complex j1 = j[1][0] * t0 + j[1][1] * t1;
    Complex mu = std::conj(t0) * j0 + std::conj(t1) * j1;
    double scale = std::max(1.0, matrix_norm(j));
    double off = std::hypot(std::abs(j0 - mu * t0), std::abs(j1 - mu * t1));
    if (off > tol * scale)
        throw NotInvariant("no eigenvector of D_z f spans the tangent line of '" + q.label + "' at " + z.to_string() +
                           " (component not invariant there)");
    TangentSplit s;
    s.tangent = mu;
    s.transversal = j[0][0] + j[1][1] - mu;
    s.label = q.label;
    s.scalar_jacobian = std::abs(j[0][1]) <= tol * scale && std::abs(j[1][0]) <= tol * scale &&
                        std::abs(j[0][0] - j[1][1]) <= tol * scale;
    return s;
}

AuditResult audit_theorem(const HomogeneousEndo& f, const std::optional<std::vector<CurveComponent>>& components,
                          const AuditOptions& opts) {
    AuditResult out;
    if (components) {
        out.pca = verify_pca(f, *components);
        if (!out.pca->certified()) {
            out.verdict = Verdict::Refused;
            return out;
        }
    }
    SolveOptions so;
    so.residual_tol = opts.residual_tol;
    so.dedup_tol = opts.dedup_tol;
    so.threads = opts.threads;
    auto zeros = solve_fixed_points(f, so);

    auto analyze = [&](const ProjectiveZero& pz) {
        FixedPointReport r;
        r.point = pz.point;
        r.residual = pz.residual;
        r.eigenvalues = eigenvalues_at(f, pz.point, opts.residual_tol);
        Complex det = 1.0;
        for (auto ev : r.eigenvalues) {
            r.classes.push_back(classify_eigenvalue(ev, opts.class_tol, opts.root_probe));
            det *= ev;
            if (!dichotomy_class(r.classes.back()))
                r.violations.push_back("eigenvalue " + format_complex(ev) + " is " + to_string(r.classes.back().tag));
        }
        r.critical = std::abs(det) <= opts.class_tol;
        if (!components) return r;
        const CurveComponent* through = nullptr;
        int count = 0;
        for (const auto& q : *components)
            if (normalized_value(q.poly, pz.point) <= opts.class_tol) {
                r.pc_labels.push_back(q.label);
                through = &q;
                ++count;
            }
        r.on_pc = count > 0;
        if (count != 1 || f.arity() != 3) return r;
        try {
            r.split = tangent_split(f, pz.point, *through, opts.class_tol, opts.residual_tol);
        } catch (const Degenerate&) {
            return r;  // singular point of the curve: no split to check
        } catch (const NotInvariant& e) {
            r.violations.push_back(e.what());
            return r;
        }
        auto tc = classify_eigenvalue(r.split->tangent, opts.class_tol, opts.root_probe);
        auto xc = classify_eigenvalue(r.split->transversal, opts.class_tol, opts.root_probe);
        if (tc.tag != EigenTag::Repelling)
            r.violations.push_back("tangent eigenvalue " + format_complex(r.split->tangent) + " is " +
                                   to_string(tc.tag) + ", expected Repelling");
        if (!dichotomy_class(xc))
            r.violations.push_back("transversal eigenvalue " + format_complex(r.split->transversal) + " is " +
                                   to_string(xc.tag));
        return r;
    };

    if (opts.threads > 1) {
        std::vector<std::future<FixedPointReport>> jobs;
        for (const auto& z : zeros) jobs.push_back(std::async(std::launch::async, analyze, std::cref(z)));
        for (auto& j : jobs) out.reports.push_back(j.get());
    } else {
        for (const auto& z : zeros) out.reports.push_back(analyze(z));
    }
    for (const auto& r : out.reports)
        if (!r.ok()) out.verdict = Verdict::FailDichotomy;
    return out;
}

}  // namespace pcadyn
