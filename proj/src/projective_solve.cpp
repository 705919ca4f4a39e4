#include "pcadyn/projective_solve.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "pcadyn/roots.hpp"

namespace pcadyn {

namespace {

struct Candidate {
    std::vector<Complex> coords;
    std::optional<std::vector<BigRational>> exact;
};

void check_system(std::span<const MultiPoly> polys) {
    if (polys.empty()) throw InvalidInput("empty polynomial system");
    int arity = polys[0].arity();
    if (arity != 2 && arity != 3) throw InvalidInput("projective solving supports arity 2 or 3 only");
    for (const auto& p : polys) {
        if (p.arity() != arity) throw ArityMismatch("system with mixed arity");
        if (!is_homogeneous(p).homogeneous) throw InvalidInput("system polynomial is not homogeneous");
    }
}

std::vector<Complex> coefficients_at(const MultiPoly& p, int u_var, Complex u0, int v_var) {
    std::vector<Complex> out;
    const int arity = p.arity();
    std::vector<Complex> pt(arity, Complex(0.0));
    pt[u_var] = u0;
    for (const auto& c : p.coefficients_in(v_var)) {
        // c only depends on u_var (chart variable already specialized)
        out.push_back(c.is_zero() ? Complex(0.0) : evaluate(c, pt));
    }
    return out;
}

bool all_exact_zero(std::span<const MultiPoly> polys, std::span<const BigRational> pt) {
    for (const auto& p : polys)
        if (!evaluate_exact(p, pt).is_zero()) return false;
    return true;
}

// Newton polish on a square 2x2 subsystem in the affine variables (a, b).
std::vector<Complex> refine(const MultiPoly& f, const MultiPoly& g, int a, int b, std::vector<Complex> z,
                            std::span<const MultiPoly> all) {
    MultiPoly fa = partial_derivative(f, a), fb = partial_derivative(f, b);
    MultiPoly ga = partial_derivative(g, a), gb = partial_derivative(g, b);
    double best_res = system_residual(all, z);
    std::vector<Complex> best = z;
    for (int it = 0; it < 12 && best_res > 0.0; ++it) {
        Complex F = evaluate(f, z), G = evaluate(g, z);
        Complex j11 = evaluate(fa, z), j12 = evaluate(fb, z);
        Complex j21 = evaluate(ga, z), j22 = evaluate(gb, z);
        Complex det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300) break;
        Complex du = (F * j22 - G * j12) / det;
        Complex dv = (j11 * G - j21 * F) / det;
        z[a] -= du;
        z[b] -= dv;
        double r = system_residual(all, z);
        if (!(r < best_res)) break;
        best_res = r;
        best = z;
    }
    return best;
}

void solve_chart_p1(std::span<const MultiPoly> polys, int chart, std::vector<Candidate>& out) {
    const int u = 1 - chart;
    MultiPoly g(2);
    for (const auto& p : polys) {
        MultiPoly d = specialize(p, chart, BigRational(1));
        if (d.is_zero()) continue;
        g = g.is_zero() ? normalize(d) : gcd(g, d);
    }
    if (g.is_zero()) throw Degenerate("all polynomials vanish identically");
    if (g.is_constant()) return;
    for (const auto& r : univariate_roots(to_univariate(g, u))) {
        Candidate c;
        c.coords.assign(2, Complex(0.0));
        c.coords[chart] = 1.0;
        c.coords[u] = r.value;
        if (r.exact) {
            std::vector<BigRational> e(2);
            e[chart] = BigRational(1);
            e[u] = *r.exact;
            c.exact = e;
        }
        out.push_back(std::move(c));
    }
}

void solve_chart_p2(std::span<const MultiPoly> polys, int chart, std::vector<Candidate>& out) {
    int a = chart == 0 ? 1 : 0;
    int b = chart == 2 ? 1 : 2;
    std::vector<MultiPoly> deh;
    for (const auto& p : polys) deh.push_back(specialize(p, chart, BigRational(1)));

    // Pick the first pair with a non-vanishing eliminant.
    std::size_t pi = 0, pj = 0;
    MultiPoly res(3);
    bool found = false;
    for (std::size_t i = 0; i < deh.size() && !found; ++i)
        for (std::size_t j = i + 1; j < deh.size() && !found; ++j) {
            if (deh[i].is_zero() || deh[j].is_zero()) continue;
            res = sylvester_resultant(deh[i], deh[j], b);
            if (!res.is_zero()) {
                pi = i;
                pj = j;
                found = true;
            }
        }
    if (!found) {
        if (deh.size() == 1) throw Degenerate("a single equation has infinitely many zeros");
        throw Degenerate("eliminant vanishes identically in chart " + std::to_string(chart) +
                         " (common factor: infinitely many zeros)");
    }
    if (res.is_constant()) return;

    for (const auto& ur : univariate_roots(to_univariate(res, a))) {
        if (ur.exact) {
            const BigRational u0 = *ur.exact;
            MultiPoly g(3);
            for (const auto& d : deh) {
                MultiPoly s = specialize(d, a, u0);
                if (s.is_zero()) continue;
                g = g.is_zero() ? normalize(s) : gcd(g, s);
            }
            if (g.is_zero()) throw Degenerate("a whole line of common zeros in chart " + std::to_string(chart));
            if (g.is_constant()) continue;
            for (const auto& vr : univariate_roots(to_univariate(g, b))) {
                Candidate c;
                c.coords.assign(3, Complex(0.0));
                c.coords[chart] = 1.0;
                c.coords[a] = u0.to_complex();
                c.coords[b] = vr.value;
                if (vr.exact) {
                    std::vector<BigRational> e(3);
                    e[chart] = BigRational(1);
                    e[a] = u0;
                    e[b] = *vr.exact;
                    c.exact = e;
                } else {
                    c.coords = refine(deh[pi], deh[pj], a, b, c.coords, polys);
                }
                out.push_back(std::move(c));
            }
            continue;
        }
        // Numeric u0: take the lowest-degree non-trivial specialization in v.
        std::vector<Complex> best;
        bool has_nonzero_constant = false;
        for (const auto& d : deh) {
            if (d.is_zero()) continue;
            auto co = trim_numeric(coefficients_at(d, a, ur.value, b), 1e-11);
            if (co.empty()) continue;
            if (co.size() == 1) {
                has_nonzero_constant = true;
                break;
            }
            if (best.empty() || co.size() < best.size()) best = co;
        }
        if (has_nonzero_constant || best.empty()) continue;
        for (const Complex& v0 : aberth_roots(best)) {
            std::vector<Complex> z(3, Complex(0.0));
            z[chart] = 1.0;
            z[a] = ur.value;
            z[b] = v0;
            out.push_back({refine(deh[pi], deh[pj], a, b, z, polys), std::nullopt});
        }
    }
}

}  // namespace

double system_residual(std::span<const MultiPoly> polys, std::span<const Complex> z) {
    double r = 0.0;
    for (const auto& p : polys) r = std::max(r, relative_residual(p, z));
    return r;
}

std::vector<ProjectiveZero> common_projective_zeros(std::span<const MultiPoly> polys, const SolveOptions& opts) {
    check_system(polys);
    const int arity = polys[0].arity();
    auto solve_chart = [&](int chart) {
        std::vector<Candidate> c;
        if (arity == 2) solve_chart_p1(polys, chart, c);
        else solve_chart_p2(polys, chart, c);
        return c;
    };
    std::vector<std::vector<Candidate>> per_chart;
    if (opts.threads > 1) {
        std::vector<std::future<std::vector<Candidate>>> jobs;
        for (int chart = 0; chart < arity; ++chart) jobs.push_back(std::async(std::launch::async, solve_chart, chart));
        for (auto& j : jobs) per_chart.push_back(j.get());
    } else {
        for (int chart = 0; chart < arity; ++chart) per_chart.push_back(solve_chart(chart));
    }
    std::vector<Candidate> cands;
    for (auto& c : per_chart) cands.insert(cands.end(), c.begin(), c.end());
    std::vector<ProjectiveZero> out;
    for (auto& c : cands) {
        double residual;
        if (c.exact) {
            if (!all_exact_zero(polys, *c.exact)) continue;
            residual = 0.0;
        } else {
            residual = system_residual(polys, c.coords);
            if (residual > opts.residual_tol) continue;
        }
        ProjPoint p(c.coords);
        if (c.exact) p.set_exact(*c.exact);
        auto dup = std::find_if(out.begin(), out.end(), [&](const ProjectiveZero& z) {
            return projective_distance(z.point, p) < opts.dedup_tol;
        });
        if (dup != out.end()) {
            if (c.exact && !dup->point.exact()) *dup = {p, residual};
            continue;
        }
        out.push_back({p, residual});
    }
    std::sort(out.begin(), out.end(),
              [](const ProjectiveZero& x, const ProjectiveZero& y) { return canonical_less(x.point, y.point); });
    return out;
}

ProjectiveZero point_on_hypersurface(const MultiPoly& p) {
    auto h = is_homogeneous(p);
    if (!h.homogeneous || p.is_constant()) throw InvalidInput("point_on_hypersurface needs a non-constant form");
    const int arity = p.arity();
    const BigRational probes[] = {0, 1, -1, 2, BigRational(1, 2), 3};
    for (int chart = arity - 1; chart >= 0; --chart) {
        MultiPoly d = specialize(p, chart, BigRational(1));
        if (arity == 2) {
            int u = 1 - chart;
            if (d.is_constant()) continue;
            auto roots = univariate_roots(to_univariate(d, u));
            std::vector<Complex> z(2);
            z[chart] = 1.0;
            z[u] = roots.front().value;
            ProjPoint pt(z);
            if (roots.front().exact) {
                std::vector<BigRational> e(2);
                e[chart] = BigRational(1);
                e[u] = *roots.front().exact;
                pt.set_exact(e);
            }
            return {pt, relative_residual(p, z)};
        }
        int a = chart == 0 ? 1 : 0;
        int b = chart == 2 ? 1 : 2;
        for (const auto& u0 : probes) {
            MultiPoly s = specialize(d, a, u0);
            std::vector<BigRational> e(3);
            e[chart] = BigRational(1);
            e[a] = u0;
            if (s.is_zero()) {
                e[b] = BigRational(0);
                return {ProjPoint::from_exact(e), 0.0};
            }
            if (s.is_constant()) continue;
            auto roots = univariate_roots(to_univariate(s, b));
            std::vector<Complex> z(3);
            z[chart] = 1.0;
            z[a] = u0.to_complex();
            z[b] = roots.front().value;
            if (roots.front().exact) {
                e[b] = *roots.front().exact;
                return {ProjPoint::from_exact(e), 0.0};
            }
            return {ProjPoint(z), relative_residual(p, z)};
        }
    }
    throw SolverFailure("could not locate a point on the hypersurface");
}

std::optional<ProjectiveZero> find_common_zero(std::span<const MultiPoly> polys, const SolveOptions& opts) {
    check_system(polys);
    std::vector<MultiPoly> nz;
    for (const auto& p : polys)
        if (!p.is_zero()) nz.push_back(p);
    const int arity = polys[0].arity();
    if (nz.empty()) {
        std::vector<BigRational> e(arity, BigRational(0));
        e.back() = BigRational(1);
        return ProjectiveZero{ProjPoint::from_exact(e), 0.0};
    }
    for (const auto& p : nz)
        if (p.is_constant()) return std::nullopt;
    MultiPoly g = nz[0];
    for (std::size_t i = 1; i < nz.size(); ++i) g = gcd(g, nz[i]);
    if (!g.is_constant()) return point_on_hypersurface(normalize(g));
    if (nz.size() == 1) return std::nullopt;
    for (std::size_t i = 0; i < nz.size(); ++i)
        for (std::size_t j = i + 1; j < nz.size(); ++j) {
            MultiPoly h = gcd(nz[i], nz[j]);
            if (h.is_constant()) continue;
            std::vector<MultiPoly> rest = {h};
            for (std::size_t k = 0; k < nz.size(); ++k)
                if (k != i && k != j) rest.push_back(nz[k]);
            auto z = find_common_zero(rest, opts);
            if (z) z->residual = system_residual(polys, z->point.coords());
            return z;
        }
    auto zeros = common_projective_zeros(nz, opts);
    if (zeros.empty()) return std::nullopt;
    return zeros.front();
}

}  // namespace pcadyn
