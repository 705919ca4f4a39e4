#include <map>
#include <numeric>
#include <type_traits>

#include "pcadyn/local_analysis.hpp"
#include "pcadyn/projective.hpp"
#include "pcadyn/roots.hpp"

namespace pcadyn {

namespace {

template <class T>
using Biv = std::map<std::pair<int, int>, T>;

template <class T>
constexpr bool is_exact_v = std::is_same_v<T, BigRational>;

template <class T>
bool nonzero(const T& v, double eps) {
    if constexpr (is_exact_v<T>) return !v.is_zero();
    else return std::abs(v) > eps;
}

struct RawBranch {
    int m = 1;
    SeriesC yc;
    std::optional<SeriesQ> yq;
};

template <class T>
double biv_scale(const Biv<T>& q) {
    double s = 0.0;
    for (const auto& [k, v] : q) s = std::max(s, Scalar<T>::magnitude(v));
    return s;
}

template <class T>
Biv<T> cleaned(const Biv<T>& q, double rel_tol) {
    const double eps = rel_tol * biv_scale(q);
    Biv<T> out;
    for (const auto& [k, v] : q)
        if (nonzero(v, eps)) out.emplace(k, v);
    return out;
}

Biv<Complex> to_complex(const Biv<BigRational>& q) {
    Biv<Complex> out;
    for (const auto& [k, v] : q) out.emplace(k, v.to_complex());
    return out;
}

// s^{-M} q(s^qq, s^p (c + y)), dropping s-exponents above keep.
template <class T>
Biv<T> substitute_edge(const Biv<T>& q, int p, int qq, const T& c, int M, int keep) {
    int maxj = 0;
    for (const auto& [k, v] : q) maxj = std::max(maxj, k.second);
    std::vector<T> cp{Scalar<T>::from_int(1)};
    for (int k = 1; k <= maxj; ++k) cp.push_back(cp.back() * c);
    Biv<T> out;
    for (const auto& [k, a] : q) {
        const auto [i, j] = k;
        int base = qq * i + p * j - M;
        if (base > keep) continue;
        long binom = 1;
        for (int e = 0; e <= j; ++e) {
            T term = a * Scalar<T>::from_int(binom) * cp[j - e];
            auto it = out.find({base, e});
            if (it == out.end()) out.emplace(std::make_pair(base, e), term);
            else it->second = it->second + term;
            binom = binom * (j - e) / (e + 1);
        }
    }
    return out;
}

// Power series y(s) with q(s, y(s)) = 0, y(0) = 0, when d q / d y (0,0) != 0.
template <class T>
PowerSeries<T> implicit_branch(const Biv<T>& q, int N) {
    auto it = q.find({0, 1});
    if (it == q.end()) throw SolverFailure("implicit step without a simple root");
    const T a = it->second;
    int maxj = 0;
    for (const auto& [k, v] : q) maxj = std::max(maxj, k.second);
    PowerSeries<T> y(N);
    for (int k = 1; k <= N; ++k) {
        std::vector<PowerSeries<T>> yp{PowerSeries<T>::monomial(Scalar<T>::from_int(1), 0, k)};
        for (int j = 1; j <= maxj; ++j) yp.push_back((yp.back() * y.truncated(k)).truncated(k));
        T e{};
        for (const auto& [key, v] : q) {
            const auto [i, j] = key;
            if (i > k) continue;
            e = e + v * yp[j][k - i];
        }
        y.set(k, -e / a);
    }
    return y;
}

std::string prefix_text(const std::string& prefix, const std::string& term) {
    return prefix.empty() ? term : prefix + ", " + term;
}

struct ExpandContext {
    int N;
    int keep;
    double zero_tol;
};

template <class T>
std::vector<RawBranch> expand(const Biv<T>& q_in, const ExpandContext& ctx, int lead, const std::string& prefix);

// Continue the expansion along the root c of one edge polynomial.
template <class T>
std::vector<RawBranch> follow_root(const Biv<T>& q, int p, int qq, const T& c, int M, int mult,
                                   const ExpandContext& ctx, int lead, const std::string& prefix) {
    Biv<T> q1 = cleaned(substitute_edge(q, p, qq, c, M, ctx.keep), is_exact_v<T> ? 0.0 : ctx.zero_tol);
    auto combine = [&](int m_sub, const PowerSeries<T>& ysub) {
        RawBranch r;
        r.m = qq * m_sub;
        PowerSeries<T> y = (ysub + PowerSeries<T>::monomial(c, 0, ysub.order())).shifted(p * m_sub).truncated(ctx.N);
        PowerSeries<T> full(ctx.N);
        full += y;
        if constexpr (is_exact_v<T>) {
            r.yq = full;
            r.yc = full.template cast<Complex>();
        } else {
            r.yc = full;
        }
        return r;
    };
    if (mult == 1) return {combine(1, implicit_branch(q1, ctx.N))};

    const int next_lead = lead * qq + p;
    std::string term;
    if constexpr (is_exact_v<T>) term = c.to_string();
    else term = format_complex(c);
    std::string here = prefix_text(prefix, term + "*s^" + std::to_string(p) + "/" + std::to_string(qq));
    if (next_lead > ctx.N)
        throw Degenerate("truncation order " + std::to_string(ctx.N) +
                         " does not separate the branches; common prefix: " + here);
    std::vector<RawBranch> out;
    for (auto& sub : expand(q1, ctx, next_lead, here)) {
        if constexpr (is_exact_v<T>) {
            if (sub.yq) {
                out.push_back(combine(sub.m, *sub.yq));
                continue;
            }
            RawBranch r;
            r.m = qq * sub.m;
            SeriesC y = (sub.yc + SeriesC::monomial(c.to_complex(), 0, sub.yc.order())).shifted(p * sub.m);
            SeriesC full(ctx.N);
            full += y.truncated(ctx.N);
            r.yc = full;
            out.push_back(r);
        } else {
            out.push_back(combine(sub.m, sub.yc));
        }
    }
    return out;
}

template <class T>
std::vector<RawBranch> expand(const Biv<T>& q, const ExpandContext& ctx, int lead, const std::string& prefix) {
    int r = -1, j0 = -1;
    for (const auto& [k, v] : q) {
        if (k.first == 0 && (r < 0 || k.second < r)) r = k.second;
        if (j0 < 0 || k.second < j0) j0 = k.second;
    }
    if (r < 0) throw SolverFailure("expansion lost the q(0, y) term");
    if (r == 0) return {};
    if (j0 >= 2)
        throw Degenerate("truncation order " + std::to_string(ctx.N) +
                         " does not separate the branches; common prefix: " + (prefix.empty() ? "0" : prefix));
    std::vector<RawBranch> out;
    if (j0 == 1) {
        RawBranch zero;
        zero.yc = SeriesC(ctx.N);
        if constexpr (is_exact_v<T>) zero.yq = SeriesQ(ctx.N);
        out.push_back(zero);
    }
    std::pair<int, int> cur{0, r};
    while (cur.second > j0) {
        std::pair<int, int> best{-1, -1};
        for (const auto& [k, v] : q) {
            if (k.second >= cur.second) continue;
            if (best.first < 0) {
                best = k;
                continue;
            }
            // Compare slopes (i - ci)/(cj - j).
            long lhs = static_cast<long>(k.first - cur.first) * (cur.second - best.second);
            long rhs = static_cast<long>(best.first - cur.first) * (cur.second - k.second);
            if (lhs < rhs || (lhs == rhs && k.second < best.second)) best = k;
        }
        const int di = best.first - cur.first, dj = cur.second - best.second;
        if (di <= 0) throw SolverFailure("malformed Newton polygon");
        const int g = std::gcd(di, dj);
        const int p = di / g, qq = dj / g;
        const int M = qq * cur.first + p * cur.second;
        std::vector<T> psi(static_cast<std::size_t>(g + 1), T{});
        for (const auto& [k, v] : q)
            if (qq * k.first + p * k.second == M) psi[(k.second - best.second) / qq] = v;

        if constexpr (is_exact_v<T>) {
            MultiPoly w(1);
            for (int e = 0; e <= g; ++e) {
                Monomial mon;
                mon.exp[0] = static_cast<std::uint16_t>(e);
                w.add_term(mon, psi[e]);
            }
            for (const auto& root : univariate_roots(w)) {
                std::optional<BigRational> c;
                if (root.exact) c = root.exact->exact_root(static_cast<unsigned>(qq));
                if (c) {
                    auto part = follow_root(q, p, qq, *c, M, root.multiplicity, ctx, lead, prefix);
                    out.insert(out.end(), part.begin(), part.end());
                } else {
                    Complex wc = root.value;
                    Complex cc = std::polar(std::pow(std::abs(wc), 1.0 / qq), std::arg(wc) / qq);
                    auto part = follow_root(to_complex(q), p, qq, cc, M, root.multiplicity, ctx, lead, prefix);
                    out.insert(out.end(), part.begin(), part.end());
                }
            }
        } else {
            for (const auto& root : clustered_roots(psi, 1e-6)) {
                Complex wc = root.value;
                Complex cc = std::polar(std::pow(std::abs(wc), 1.0 / qq), std::arg(wc) / qq);
                auto part = follow_root(q, p, qq, cc, M, root.multiplicity, ctx, lead, prefix);
                out.insert(out.end(), part.begin(), part.end());
            }
        }
        cur = best;
    }
    return out;
}

MultiPoly swap_xy(const MultiPoly& p) {
    std::vector<int> map = {1, 0};
    return remap_variables(p, 2, map);
}

template <class T>
std::optional<BigRational> as_rational(const T& v) {
    if constexpr (is_exact_v<T>) return v;
    else return std::nullopt;
}

template <class T>
PuiseuxBranch finish_branch(int m, const PowerSeries<T>& y, bool swapped) {
    PuiseuxBranch b;
    b.m = m;
    b.swapped = swapped;
    if constexpr (is_exact_v<T>) {
        b.y_exact = y;
        b.y = y.template cast<Complex>();
    } else {
        b.y = y;
    }
    const double eps = is_exact_v<T> ? 0.0 : 1e-9 * std::max(1.0, y.max_magnitude());
    for (int k = 1; k <= y.order(); ++k) {
        if (k % m == 0 || !nonzero(y[k], eps)) continue;
        b.n = k;
        b.alpha = Scalar<T>::to_complex(y[k]);
        b.alpha_exact = as_rational(y[k]);
        break;
    }
    return b;
}

template <class T>
PuiseuxBranch normalize_impl(const PowerSeries<T>& a, const PowerSeries<T>& b) {
    const double eps = is_exact_v<T> ? 0.0 : 1e-12 * std::max({1.0, a.max_magnitude(), b.max_magnitude()});
    auto val = [&](const PowerSeries<T>& s) {
        for (int k = 0; k <= s.order(); ++k)
            if (nonzero(s[k], eps)) return k;
        return s.order() + 1;
    };
    const int va = val(a), vb = val(b);
    if (va == 0 || vb == 0) throw InvalidInput("branch does not pass through the origin");
    if (va > a.order() && vb > b.order()) throw InvalidInput("branch is constant to the truncation order");
    const bool swapped = vb < va;
    const PowerSeries<T>& P = swapped ? b : a;
    const PowerSeries<T>& Q = swapped ? a : b;
    const int m = swapped ? vb : va;
    const T lead = P[m];
    PowerSeries<T> unit = P.divided_by_t(m) * (Scalar<T>::from_int(1) / lead);
    unit.set(0, Scalar<T>::from_int(1));
    if constexpr (is_exact_v<T>) {
        auto A = lead.exact_root(static_cast<unsigned>(m));
        if (!A) return normalize_impl(a.template cast<Complex>(), b.template cast<Complex>());
        SeriesQ tau = (unit.root(static_cast<unsigned>(m)) * *A).shifted(1);
        SeriesQ t_of_tau = tau.reversion();
        return finish_branch(m, Q.compose(t_of_tau), swapped);
    } else {
        Complex A = std::polar(std::pow(std::abs(lead), 1.0 / m), std::arg(lead) / m);
        SeriesC tau = (unit.root(static_cast<unsigned>(m)) * A).shifted(1);
        SeriesC t_of_tau = tau.reversion();
        return finish_branch(m, Q.compose(t_of_tau), swapped);
    }
}

template <class T>
TangentComparison compare_graphs(const PowerSeries<T>& x1, const PowerSeries<T>& y1, const PowerSeries<T>& x2,
                                 const PowerSeries<T>& y2, double tol) {
    auto val = [&](const PowerSeries<T>& s) {
        const double eps = tol * std::max(1.0, s.max_magnitude());
        for (int k = 0; k <= s.order(); ++k)
            if (nonzero(s[k], eps)) return k;
        return s.order() + 1;
    };
    auto direction = [&](const PowerSeries<T>& x, const PowerSeries<T>& y) {
        int v = std::min(val(x), val(y));
        return std::make_pair(v, std::make_pair(x[v], y[v]));
    };
    auto [v1, d1] = direction(x1, y1);
    auto [v2, d2] = direction(x2, y2);
    T cross = d1.first * d2.second - d1.second * d2.first;
    double scale = std::max({1.0, Scalar<T>::magnitude(d1.first), Scalar<T>::magnitude(d1.second)}) *
                   std::max({1.0, Scalar<T>::magnitude(d2.first), Scalar<T>::magnitude(d2.second)});
    if (nonzero(cross, tol * scale)) return {TangentKind::Transversal, 1};
    if (v1 != 1 || v2 != 1) return {TangentKind::Tangential, 0};
    // Both smooth with a common tangent: compare as graphs over the tangent's
    // non-vanishing coordinate.
    const bool vertical = !nonzero(d1.first, tol * scale);
    auto graph = [&](const PowerSeries<T>& x, const PowerSeries<T>& y) {
        const PowerSeries<T>& base = vertical ? y : x;
        const PowerSeries<T>& other = vertical ? x : y;
        PowerSeries<T> b = base;
        b.set(0, T{});
        return other.compose(b.reversion());
    };
    PowerSeries<T> g1 = graph(x1, y1), g2 = graph(x2, y2);
    const int K = std::min(g1.order(), g2.order());
    const double eps = tol * std::max({1.0, g1.max_magnitude(), g2.max_magnitude()});
    for (int k = 0; k <= K; ++k)
        if (nonzero(g1[k] - g2[k], eps)) return {TangentKind::Tangential, k};
    return {TangentKind::Indistinguishable, K};
}

bool same_expansion(const PuiseuxBranch& a, const PuiseuxBranch& b) {
    if (a.m != b.m || a.swapped != b.swapped) return false;
    if (a.y_exact && b.y_exact) return *a.y_exact == *b.y_exact;
    const int K = std::min(a.order(), b.order());
    const double eps = 1e-9 * std::max({1.0, a.y.max_magnitude(), b.y.max_magnitude()});
    for (int k = 0; k <= K; ++k)
        if (std::abs(a.y[k] - b.y[k]) > eps) return false;
    return true;
}

}  // namespace

PuiseuxBranch PuiseuxBranch::exact(int m, SeriesQ y, bool swapped) {
    if (m < 1) throw InvalidInput("branch multiplicity must be positive");
    return finish_branch(m, y, swapped);
}

PuiseuxBranch PuiseuxBranch::numeric(int m, SeriesC y, bool swapped) {
    if (m < 1) throw InvalidInput("branch multiplicity must be positive");
    return finish_branch(m, y, swapped);
}

int PuiseuxBranch::multiplicity() const {
    int v = y_exact ? y_exact->valuation() : y.valuation(1e-12 * std::max(1.0, y.max_magnitude()));
    return std::min(m, v);
}

SeriesC PuiseuxBranch::x_series() const {
    return swapped ? y : SeriesC::monomial(1.0, m, y.order());
}

SeriesC PuiseuxBranch::y_series() const {
    return swapped ? SeriesC::monomial(1.0, m, y.order()) : y;
}

std::string PuiseuxBranch::to_string() const {
    std::string series = y_exact ? series_to_string(*y_exact, [](const BigRational& v) { return v.to_string(); })
                                 : series_to_string(y, [](Complex v) { return format_complex(v); },
                                                    1e-12 * std::max(1.0, y.max_magnitude()));
    std::string param = m == 1 ? "t" : "t^" + std::to_string(m);
    std::string s = "m=" + std::to_string(m) + ", ";
    if (swapped) s += "x = " + series + ", y = " + param;
    else s += "y = " + series;
    if (n) s += ", n=" + std::to_string(*n);
    if (!y_exact) s += " (numeric)";
    return s;
}

std::vector<PuiseuxBranch> newton_puiseux(const MultiPoly& q_in, const PuiseuxOptions& opts) {
    if (q_in.arity() != 2) throw ArityMismatch("newton_puiseux needs a polynomial in x, y");
    if (q_in.is_zero()) throw InvalidInput("newton_puiseux of the zero polynomial");
    if (!q_in.constant_term().is_zero()) throw InvalidInput("curve does not pass through the origin: q(0,0) != 0");
    if (opts.order < 1) throw InvalidInput("truncation order must be positive");
    MultiPoly q = normalize(squarefree_part(q_in));
    const int N = opts.order;
    std::vector<PuiseuxBranch> out;
    bool swapped = false;
    const MultiPoly x = MultiPoly::variable(2, 0);
    if (specialize(q, 0, BigRational(0)).is_zero()) {
        if (!specialize(q, 1, BigRational(0)).is_zero()) {
            q = swap_xy(q);
            swapped = true;
        } else {
            out.push_back(PuiseuxBranch::exact(1, SeriesQ(N), true));
            q = *exact_divide(q, x);
            if (!q.constant_term().is_zero()) return out;
        }
    }
    Biv<BigRational> biv;
    for (const auto& [mon, c] : q.terms()) biv.emplace(std::make_pair(mon.exp[0], mon.exp[1]), c);

    for (int keep : {3 * N + 8, 8 * N + 16}) {
        ExpandContext ctx{N, keep, opts.zero_tol};
        auto raw = expand(biv, ctx, 0, "");
        std::vector<PuiseuxBranch> got;
        bool ok = true;
        for (const auto& r : raw) {
            PuiseuxBranch b = r.yq ? finish_branch(r.m, *r.yq, swapped) : finish_branch(r.m, r.yc, swapped);
            PuiseuxBranch local = b;
            local.swapped = false;
            if (residual_valuation(q, local) <= N) ok = false;
            got.push_back(std::move(b));
        }
        if (ok) {
            out.insert(out.end(), got.begin(), got.end());
            for (std::size_t i = 0; i < out.size(); ++i)
                for (std::size_t j = i + 1; j < out.size(); ++j)
                    if (same_expansion(out[i], out[j]))
                        throw Degenerate("truncation order " + std::to_string(N) +
                                         " does not separate the branches; common expansion: " + out[i].to_string());
            return out;
        }
    }
    throw SolverFailure("Puiseux expansion failed its residual check at order " + std::to_string(N));
}

int residual_valuation(const MultiPoly& q, const PuiseuxBranch& b, double tol) {
    if (b.y_exact) {
        SeriesQ t_m = SeriesQ::monomial(BigRational(1), b.m, b.order());
        SeriesQ r = b.swapped ? evaluate_series(q, *b.y_exact, t_m) : evaluate_series(q, t_m, *b.y_exact);
        return r.valuation();
    }
    SeriesC r = evaluate_series(q, b.x_series(), b.y_series());
    double scale = coefficient_norm1(q) * std::pow(std::max(1.0, b.y.max_magnitude()), std::max(q.total_degree(), 0));
    return r.valuation(tol * scale);
}

std::string TangentComparison::to_string() const {
    switch (kind) {
        case TangentKind::Transversal: return "Transversal";
        case TangentKind::Tangential: return "Tangential(contact " + std::to_string(contact_order) + ")";
        case TangentKind::Indistinguishable: return "Indistinguishable(" + std::to_string(contact_order) + ")";
    }
    return "?";
}

TangentComparison branch_tangent_type(const PuiseuxBranch& b1, const PuiseuxBranch& b2, double tol) {
    if (b1.is_exact() && b2.is_exact()) {
        const int n1 = b1.order(), n2 = b2.order();
        SeriesQ t1 = SeriesQ::monomial(BigRational(1), b1.m, n1), t2 = SeriesQ::monomial(BigRational(1), b2.m, n2);
        const SeriesQ& y1 = *b1.y_exact;
        const SeriesQ& y2 = *b2.y_exact;
        return compare_graphs(b1.swapped ? y1 : t1, b1.swapped ? t1 : y1, b2.swapped ? y2 : t2, b2.swapped ? t2 : y2,
                              tol);
    }
    return compare_graphs(b1.x_series(), b1.y_series(), b2.x_series(), b2.y_series(), tol);
}

PuiseuxBranch normalize_branch(const SeriesC& a, const SeriesC& b) { return normalize_impl(a, b); }
PuiseuxBranch normalize_branch(const SeriesQ& a, const SeriesQ& b) { return normalize_impl(a, b); }

PuiseuxBranch transform_branch(const std::array<MultiPoly, 2>& h, const PuiseuxBranch& b) {
    if (b.y_exact) {
        SeriesQ t_m = SeriesQ::monomial(BigRational(1), b.m, b.order());
        SeriesQ x = b.swapped ? *b.y_exact : t_m;
        SeriesQ y = b.swapped ? t_m : *b.y_exact;
        return normalize_branch(evaluate_series(h[0], x, y), evaluate_series(h[1], x, y));
    }
    SeriesC x = b.x_series(), y = b.y_series();
    return normalize_branch(evaluate_series(h[0], x, y), evaluate_series(h[1], x, y));
}

}  // namespace pcadyn
