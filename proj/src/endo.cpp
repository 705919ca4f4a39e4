#include "pcadyn/endo.hpp"

#include <algorithm>
#include <cmath>

#include "pcadyn/projective_solve.hpp"

namespace pcadyn {

namespace {

double sup_norm(std::span<const Complex> v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

HomogeneousEndo::HomogeneousEndo(std::vector<MultiPoly> components) : components_(std::move(components)) {
    const int n = static_cast<int>(components_.size());
    if (n != 2 && n != 3) throw InvalidInput("endomorphisms need 2 or 3 components");
    int degree = -1;
    for (int i = 0; i < n; ++i) {
        const auto& p = components_[i];
        if (p.arity() != n) throw ArityMismatch("component " + std::to_string(i) + " has arity " +
                                                std::to_string(p.arity()) + ", expected " + std::to_string(n));
        auto h = is_homogeneous(p);
        if (h.zero) continue;
        if (!h.homogeneous) throw InvalidInput("component " + std::to_string(i) + " is not homogeneous");
        if (degree >= 0 && h.degree != degree) throw InvalidInput("components have mixed degrees");
        degree = h.degree;
    }
    if (degree < 0) throw InvalidInput("all components are zero");
    if (degree == 0) throw InvalidInput("components must have degree at least 1");
    degree_ = degree;
}

std::vector<Complex> HomogeneousEndo::apply(std::span<const Complex> w) const {
    std::vector<Complex> out;
    for (const auto& p : components_) out.push_back(evaluate(p, w));
    return out;
}

std::vector<BigRational> HomogeneousEndo::apply_exact(std::span<const BigRational> w) const {
    std::vector<BigRational> out;
    for (const auto& p : components_) out.push_back(evaluate_exact(p, w));
    return out;
}

std::vector<std::vector<Complex>> HomogeneousEndo::jacobian_at(std::span<const Complex> w) const {
    std::vector<std::vector<Complex>> j;
    for (const auto& p : components_) {
        std::vector<Complex> row;
        for (int v = 0; v < arity(); ++v) row.push_back(evaluate(partial_derivative(p, v), w));
        j.push_back(std::move(row));
    }
    return j;
}

HomogeneousEndo new_endo(std::vector<MultiPoly> components) { return HomogeneousEndo(std::move(components)); }

HomogeneousEndo iterate(const HomogeneousEndo& f, int j, const PolyLimits& lim) {
    if (j < 1) throw InvalidInput("iterate needs j >= 1");
    long long deg = 1;
    for (int k = 0; k < j; ++k) {
        deg *= f.degree();
        if (deg > lim.max_total_degree)
            throw DegreeCapExceeded("iterate: degree " + std::to_string(f.degree()) + "^" + std::to_string(j) +
                                    " exceeds the cap " + std::to_string(lim.max_total_degree));
    }
    std::vector<MultiPoly> cur = f.components();
    for (int k = 1; k < j; ++k) {
        std::vector<MultiPoly> next;
        for (const auto& p : f.components()) next.push_back(substitute(p, cur, lim));
        cur = std::move(next);
    }
    return HomogeneousEndo(std::move(cur));
}

Nondegeneracy check_nondegenerate(const HomogeneousEndo& f, double residual_tol) {
    SolveOptions opts;
    opts.residual_tol = residual_tol;
    auto z = find_common_zero(f.components(), opts);
    Nondegeneracy out;
    if (!z) {
        out.nondegenerate = true;
        return out;
    }
    out.witness = z->point;
    out.witness_residual = z->residual;
    return out;
}

ChartMap chart_representation(const HomogeneousEndo& f, int chart, std::optional<int> image_chart) {
    const int n = f.arity();
    if (chart < 0 || chart >= n) throw InvalidInput("chart index out of range");
    const int ic = image_chart.value_or(chart);
    if (ic < 0 || ic >= n) throw InvalidInput("image chart index out of range");
    ChartMap m;
    m.chart_ = chart;
    m.image_chart_ = ic;
    for (int v = 0; v < n; ++v)
        if (v != chart) m.source_vars_.push_back(v);
    m.denominator_ = specialize(f[ic], chart, BigRational(1));
    if (m.denominator_.is_zero())
        throw Degenerate("component " + std::to_string(ic) + " vanishes identically in chart " +
                         std::to_string(chart));
    for (int k = 0; k < n; ++k)
        if (k != ic) m.numerators_.push_back(specialize(f[k], chart, BigRational(1)));
    for (const auto& num : m.numerators_) {
        std::vector<MultiPoly> row;
        for (int v : m.source_vars_) row.push_back(partial_derivative(num, v));
        m.num_partials_.push_back(std::move(row));
    }
    for (int v : m.source_vars_) m.den_partials_.push_back(partial_derivative(m.denominator_, v));
    return m;
}

std::vector<Complex> ChartMap::lift(std::span<const Complex> affine) const {
    if (affine.size() != source_vars_.size()) throw ArityMismatch("affine point has the wrong dimension");
    std::vector<Complex> z(source_vars_.size() + 1, Complex(0.0));
    z[chart_] = 1.0;
    for (std::size_t i = 0; i < source_vars_.size(); ++i) z[source_vars_[i]] = affine[i];
    return z;
}

std::vector<Complex> ChartMap::evaluate(std::span<const Complex> affine) const {
    auto z = lift(affine);
    Complex den = pcadyn::evaluate(denominator_, z);
    if (den == Complex(0.0)) throw DivisionByZero("chart denominator vanishes");
    std::vector<Complex> out;
    for (const auto& num : numerators_) out.push_back(pcadyn::evaluate(num, z) / den);
    return out;
}

std::vector<std::vector<Complex>> ChartMap::jacobian(std::span<const Complex> affine) const {
    auto z = lift(affine);
    Complex den = pcadyn::evaluate(denominator_, z);
    if (den == Complex(0.0)) throw DivisionByZero("chart denominator vanishes");
    std::vector<Complex> dden;
    for (const auto& p : den_partials_) dden.push_back(pcadyn::evaluate(p, z));
    std::vector<std::vector<Complex>> j;
    for (std::size_t r = 0; r < numerators_.size(); ++r) {
        Complex num = pcadyn::evaluate(numerators_[r], z);
        std::vector<Complex> row;
        for (std::size_t c = 0; c < source_vars_.size(); ++c) {
            Complex dnum = pcadyn::evaluate(num_partials_[r][c], z);
            row.push_back((dnum * den - num * dden[c]) / (den * den));
        }
        j.push_back(std::move(row));
    }
    return j;
}

bool verify_radial_eigenvalue(const HomogeneousEndo& f, std::span<const Complex> w, double tol) {
    if (static_cast<int>(w.size()) != f.arity()) throw ArityMismatch("point has the wrong dimension");
    const double nw = sup_norm(w);
    if (nw <= tol) throw InvalidInput("radial eigenvalue check at the origin");
    auto fw = f.apply(w);
    double defect = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) defect = std::max(defect, std::abs(fw[i] - w[i]));
    if (defect > tol * nw) throw InvalidInput("point is not fixed by the lift");
    auto j = f.jacobian_at(w);
    double err = 0.0;
    for (std::size_t r = 0; r < w.size(); ++r) {
        Complex jw = 0.0;
        for (std::size_t c = 0; c < w.size(); ++c) jw += j[r][c] * w[c];
        err = std::max(err, std::abs(jw - static_cast<double>(f.degree()) * w[r]));
    }
    return err <= tol * nw;
}

PotentialEstimate potential(const HomogeneousEndo& f, std::span<const Complex> w, int j_max, double tol) {
    if (static_cast<int>(w.size()) != f.arity()) throw ArityMismatch("point has the wrong dimension");
    if (j_max < 1) throw InvalidInput("potential needs at least one iterate");
    double n = sup_norm(w);
    if (n == 0.0) throw InvalidInput("potential at the origin");
    PotentialEstimate est;
    est.tolerance = tol;
    std::vector<Complex> v(w.begin(), w.end());
    for (auto& c : v) c /= n;
    double h = std::log(n);
    double scale = 1.0;  // d^{-j}
    est.samples.emplace_back(0, h);
    for (int j = 1; j <= j_max; ++j) {
        v = f.apply(v);
        double m = sup_norm(v);
        if (m == 0.0) throw Degenerate("orbit reached the origin: the lift is degenerate");
        for (auto& c : v) c /= m;
        scale /= f.degree();
        h += scale * std::log(m);
        est.samples.emplace_back(j, h);
    }
    est.extrapolated = h;
    const auto& s = est.samples;
    est.converged = std::abs(s.back().second - s[s.size() - 2].second) <= tol;
    return est;
}

}  // namespace pcadyn
