#include "pcadyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pcadyn {

Complex horner(std::span<const Complex> coeffs, Complex z) {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

namespace {

struct Eval {
    Complex p, dp;
    double bound;  // sum |a_i| |z|^i
};

Eval evaluate_with_derivative(std::span<const Complex> a, Complex z) {
    Complex p = 0.0, dp = 0.0;
    double bound = 0.0;
    double az = std::abs(z);
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
        bound = bound * az + std::abs(*it);
    }
    return {p, dp, bound};
}

double initial_radius(std::span<const Complex> a) {
    const std::size_t n = a.size() - 1;
    double lead = std::abs(a[n]);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ai = std::abs(a[i]);
        if (ai == 0.0) continue;
        r = std::max(r, std::pow(ai / lead, 1.0 / static_cast<double>(n - i)));
    }
    return r > 0.0 ? r : 1.0;
}

}  // namespace

std::vector<Complex> aberth_roots(std::span<const Complex> coeffs, const AberthOptions& opts) {
    std::vector<Complex> a(coeffs.begin(), coeffs.end());
    while (!a.empty() && a.back() == Complex(0.0)) a.pop_back();
    if (a.empty()) throw InvalidInput("aberth_roots: zero polynomial");
    // Strip and record roots at zero exactly.
    std::size_t zeros = 0;
    while (zeros + 1 < a.size() && a[zeros] == Complex(0.0)) ++zeros;
    a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(zeros));
    std::vector<Complex> roots(zeros, Complex(0.0));
    const std::size_t n = a.size() - 1;
    if (n == 0) return roots;
    if (n == 1) {
        roots.push_back(-a[0] / a[1]);
        return roots;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double r0 = initial_radius(a);
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = std::polar(r0 * (1.0 + 0.01 * static_cast<double>(k % 3)), theta);
    }
    std::vector<bool> done(n, false);
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        bool all_done = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            Eval e = evaluate_with_derivative(a, z[k]);
            if (std::abs(e.p) <= opts.backward_factor * eps * e.bound) {
                done[k] = true;
                continue;
            }
            all_done = false;
            Complex ratio = e.dp == Complex(0.0) ? Complex(1e-3) : e.p / e.dp;
            Complex s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k && z[j] != z[k]) s += 1.0 / (z[k] - z[j]);
            Complex denom = 1.0 - ratio * s;
            Complex w = denom == Complex(0.0) ? ratio : ratio / denom;
            z[k] -= w;
            if (std::abs(w) <= 4 * eps * std::max(1.0, std::abs(z[k]))) done[k] = true;
        }
        if (all_done) break;
    }
    for (std::size_t k = 0; k < n; ++k) {
        // A few Newton steps; keep the best point seen.
        Complex best = z[k];
        Eval eb = evaluate_with_derivative(a, best);
        for (int it = 0; it < 5 && eb.dp != Complex(0.0); ++it) {
            Complex cand = best - eb.p / eb.dp;
            Eval ec = evaluate_with_derivative(a, cand);
            if (std::abs(ec.p) >= std::abs(eb.p)) break;
            best = cand;
            eb = ec;
        }
        if (!std::isfinite(best.real()) || !std::isfinite(best.imag()))
            throw SolverFailure("aberth_roots: non-finite iterate");
        // Multiple roots are only determined to about eps^(1/mult); accept a loose backward error.
        if (std::abs(eb.p) > 1e-6 * std::max(eb.bound, 1e-300))
            throw SolverFailure("aberth_roots: no convergence for degree " + std::to_string(n));
        roots.push_back(best);
    }
    return roots;
}

MultiPoly to_univariate(const MultiPoly& p, int var) {
    for (int v = 0; v < p.arity(); ++v)
        if (v != var && p.uses_variable(v)) throw InvalidInput("to_univariate: polynomial uses other variables");
    std::vector<int> map(p.arity(), -1);
    map[var] = 0;
    MultiPoly out(1);
    for (const auto& [m, c] : p.terms()) {
        Monomial r;
        r.exp[0] = m.exp[var];
        out.add_term(r, c);
    }
    return out;
}

std::vector<Complex> complex_coefficients(const MultiPoly& p) {
    if (p.arity() != 1) throw ArityMismatch("complex_coefficients expects arity 1");
    std::vector<Complex> out(std::max(p.total_degree() + 1, 0), Complex(0.0));
    for (const auto& [m, c] : p.terms()) out[m.exp[0]] = c.to_double();
    return out;
}

std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& p) {
    if (p.arity() != 1) throw ArityMismatch("squarefree_decomposition expects arity 1");
    if (p.is_zero()) throw InvalidInput("squarefree_decomposition of zero");
    std::vector<std::pair<MultiPoly, int>> out;
    if (p.is_constant()) return out;
    auto quo = [](const MultiPoly& a, const MultiPoly& b) {
        auto q = exact_divide(a, b);
        if (!q) throw Error("internal: Yun division failed");
        return *q;
    };
    MultiPoly dp = partial_derivative(p, 0);
    MultiPoly c = gcd(p, dp);
    MultiPoly w = quo(p, c);
    MultiPoly y = quo(dp, c);
    MultiPoly z = y - partial_derivative(w, 0);
    int i = 1;
    while (!w.is_constant()) {
        MultiPoly g = z.is_zero() ? normalize(w) : gcd(w, z);
        if (!g.is_constant()) out.emplace_back(g, i);
        w = quo(w, g);
        y = quo(z, g);
        z = y - partial_derivative(w, 0);
        ++i;
    }
    return out;
}

std::vector<UnivariateRoot> univariate_roots(const MultiPoly& p) {
    std::vector<UnivariateRoot> out;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        MultiPoly f = normalize(factor);
        auto coeffs = complex_coefficients(f);
        mpz_class lead = f.leading_coefficient().numerator();
        if (lead < 0) lead = -lead;
        long max_den = lead.fits_slong_p() ? std::max(1L, lead.get_si()) : 1000000000000L;
        max_den = std::min(max_den, 1000000000000L);
        for (const Complex& z : aberth_roots(coeffs)) {
            UnivariateRoot r{z, std::nullopt, mult};
            if (std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z))) {
                BigRational cand = BigRational::approximate(z.real(), max_den);
                BigRational pt[1] = {cand};
                if (evaluate_exact(f, pt).is_zero()) {
                    r.exact = cand;
                    r.value = cand.to_complex();
                }
            }
            out.push_back(r);
        }
    }
    return out;
}

std::vector<Complex> trim_numeric(std::vector<Complex> coeffs, double rel_tol) {
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    while (!coeffs.empty() && std::abs(coeffs.back()) <= rel_tol * scale) coeffs.pop_back();
    if (scale == 0.0) coeffs.clear();
    return coeffs;
}

std::vector<UnivariateRoot> clustered_roots(std::span<const Complex> coeffs, double cluster_tol) {
    auto roots = aberth_roots(coeffs);
    std::vector<UnivariateRoot> out;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Complex sum = roots[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            double scale = std::max(1.0, std::abs(roots[i]));
            if (std::abs(roots[j] - roots[i]) <= cluster_tol * scale) {
                used[j] = true;
                sum += roots[j];
                ++count;
            }
        }
        out.push_back({sum / static_cast<double>(count), std::nullopt, count});
    }
    return out;
}

}  // namespace pcadyn
