#include "pcadyn/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pcadyn {

namespace {

void check_arity(int arity) {
    if (arity < 1 || arity > kMaxArity)
        throw ArityMismatch("arity " + std::to_string(arity) + " outside 1.." + std::to_string(kMaxArity));
}

void require_same_arity(const MultiPoly& a, const MultiPoly& b, const char* op) {
    if (a.arity() != b.arity())
        throw ArityMismatch(std::string(op) + ": arity " + std::to_string(a.arity()) + " vs " +
                            std::to_string(b.arity()));
}

void check_limits(int degree, std::size_t terms, const PolyLimits& lim) {
    if (degree > lim.max_total_degree)
        throw DegreeCapExceeded("total degree " + std::to_string(degree) + " exceeds cap " +
                                std::to_string(lim.max_total_degree));
    if (terms > lim.max_terms)
        throw DegreeCapExceeded("term count " + std::to_string(terms) + " exceeds cap " +
                                std::to_string(lim.max_terms));
}

// Intermediate results of elimination and gcd may exceed the user-facing cap.
const PolyLimits kWorkLimits{1024, 2000000};

Monomial var_power(int var, int k) {
    Monomial m;
    m.exp[var] = static_cast<std::uint16_t>(k);
    return m;
}

MultiPoly exact_quotient(const MultiPoly& p, const MultiPoly& d) {
    auto q = exact_divide(p, d);
    if (!q) throw Error("internal: expected exact division failed");
    return *q;
}

}  // namespace

MultiPoly::MultiPoly(int arity) : arity_(arity) { check_arity(arity); }

MultiPoly MultiPoly::constant(int arity, const BigRational& c) {
    MultiPoly p(arity);
    p.add_term(Monomial{}, c);
    return p;
}

MultiPoly MultiPoly::variable(int arity, int index) {
    MultiPoly p(arity);
    if (index < 0 || index >= arity) throw ArityMismatch("variable index out of range");
    p.add_term(var_power(index, 1), BigRational(1));
    return p;
}

MultiPoly MultiPoly::term(int arity, const Monomial& m, const BigRational& c) {
    MultiPoly p(arity);
    for (int i = arity; i < kMaxArity; ++i)
        if (m.exp[i] != 0) throw ArityMismatch("monomial uses variable beyond arity");
    p.add_term(m, c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
}

int MultiPoly::degree_in(int var) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, m.exp[var]);
    return d;
}

int MultiPoly::order() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.degree();
}

const Monomial& MultiPoly::leading_monomial() const {
    if (terms_.empty()) throw InvalidInput("leading monomial of zero polynomial");
    return terms_.rbegin()->first;
}

const BigRational& MultiPoly::leading_coefficient() const {
    if (terms_.empty()) throw InvalidInput("leading coefficient of zero polynomial");
    return terms_.rbegin()->second;
}

BigRational MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigRational(0) : it->second;
}

BigRational MultiPoly::constant_term() const { return coefficient(Monomial{}); }

std::vector<MultiPoly> MultiPoly::coefficients_in(int var) const {
    int d = degree_in(var);
    std::vector<MultiPoly> out(std::max(d + 1, 0), MultiPoly(arity_));
    for (const auto& [m, c] : terms_) {
        Monomial r = m;
        int k = r.exp[var];
        r.exp[var] = 0;
        out[k].add_term(r, c);
    }
    return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, int var, int arity) {
    MultiPoly out(arity);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (const auto& [m, c] : coeffs[k].terms()) {
            Monomial r = m;
            r.exp[var] = static_cast<std::uint16_t>(r.exp[var] + k);
            out.add_term(r, c);
        }
    return out;
}

void MultiPoly::add_term(const Monomial& m, const BigRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    require_same_arity(*this, o, "add");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    require_same_arity(*this, o, "sub");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = mul(*this, o);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const BigRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return mul(a, b); }

MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r = a;
    r *= BigRational(-1);
    return r;
}

std::vector<std::string> default_variable_names(int arity) {
    switch (arity) {
        case 1: return {"x"};
        case 2: return {"x", "y"};
        case 3: return {"x", "y", "z"};
        default: return {"x", "y", "z", "w"};
    }
}

std::string MultiPoly::to_string() const {
    auto names = default_variable_names(arity_);
    return to_string(names);
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
    if (names.size() < static_cast<std::size_t>(arity_))
        throw ArityMismatch("not enough variable names");
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        BigRational mag = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (!mag.is_one() || m.degree() == 0) {
            os << mag.to_string();
            wrote = true;
        }
        for (int i = 0; i < arity_; ++i) {
            if (m.exp[i] == 0) continue;
            if (wrote) os << "*";
            os << names[i];
            if (m.exp[i] > 1) os << "^" << m.exp[i];
            wrote = true;
        }
    }
    return os.str();
}

MultiPoly mul(const MultiPoly& p, const MultiPoly& q, const PolyLimits& lim) {
    require_same_arity(p, q, "mul");
    MultiPoly out(p.arity());
    if (p.is_zero() || q.is_zero()) return out;
    check_limits(p.total_degree() + q.total_degree(), 0, lim);
    for (const auto& [ma, ca] : p.terms())
        for (const auto& [mb, cb] : q.terms()) out.add_term(ma * mb, ca * cb);
    check_limits(out.total_degree(), out.term_count(), lim);
    return out;
}

MultiPoly pow(const MultiPoly& p, unsigned k, const PolyLimits& lim) {
    MultiPoly result = MultiPoly::constant(p.arity(), BigRational(1));
    if (k == 0) return result;
    if (p.is_zero()) return MultiPoly(p.arity());
    check_limits(p.total_degree() * static_cast<int>(k), 0, lim);
    MultiPoly base = p;
    while (k > 0) {
        if (k & 1u) result = mul(result, base, lim);
        k >>= 1u;
        if (k > 0) base = mul(base, base, lim);
    }
    return result;
}

MultiPoly substitute(const MultiPoly& q, std::span<const MultiPoly> f, const PolyLimits& lim) {
    if (f.size() != static_cast<std::size_t>(q.arity()))
        throw ArityMismatch("substitute: " + std::to_string(f.size()) + " images for arity " +
                            std::to_string(q.arity()));
    if (f.empty()) throw ArityMismatch("substitute: no images");
    int k = f[0].arity();
    int max_deg = 0;
    for (const auto& g : f) {
        if (g.arity() != k) throw ArityMismatch("substitute: images of differing arity");
        max_deg = std::max(max_deg, g.total_degree());
    }
    MultiPoly out(k);
    if (q.is_zero()) return out;
    check_limits(q.total_degree() * std::max(max_deg, 0), 0, lim);
    // powers[i][e] = f[i]^e, filled lazily
    std::vector<std::vector<MultiPoly>> powers(f.size());
    auto power_of = [&](std::size_t i, int e) -> const MultiPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(MultiPoly::constant(k, BigRational(1)));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(mul(cache.back(), f[i], lim));
        return cache[e];
    };
    for (const auto& [m, c] : q.terms()) {
        MultiPoly t = MultiPoly::constant(k, c);
        for (std::size_t i = 0; i < f.size(); ++i)
            if (m.exp[i] > 0) t = mul(t, power_of(i, m.exp[i]), lim);
        out += t;
    }
    check_limits(out.total_degree(), out.term_count(), lim);
    return out;
}

MultiPoly specialize(const MultiPoly& p, int var, const BigRational& value) {
    MultiPoly out(p.arity());
    for (const auto& [m, c] : p.terms()) {
        Monomial r = m;
        unsigned e = r.exp[var];
        r.exp[var] = 0;
        out.add_term(r, e == 0 ? c : c * value.pow(e));
    }
    return out;
}

MultiPoly remap_variables(const MultiPoly& p, int new_arity, std::span<const int> index_map) {
    if (index_map.size() != static_cast<std::size_t>(p.arity()))
        throw ArityMismatch("remap_variables: map length must equal arity");
    MultiPoly out(new_arity);
    for (const auto& [m, c] : p.terms()) {
        Monomial r;
        for (int i = 0; i < p.arity(); ++i) {
            if (m.exp[i] == 0) continue;
            int t = index_map[i];
            if (t < 0 || t >= new_arity) throw ArityMismatch("remap_variables: dropped variable in use");
            r.exp[t] = static_cast<std::uint16_t>(r.exp[t] + m.exp[i]);
        }
        out.add_term(r, c);
    }
    return out;
}

MultiPoly partial_derivative(const MultiPoly& p, int var) {
    if (var < 0 || var >= p.arity()) throw ArityMismatch("derivative variable out of range");
    MultiPoly out(p.arity());
    for (const auto& [m, c] : p.terms()) {
        if (m.exp[var] == 0) continue;
        Monomial r = m;
        r.exp[var] = static_cast<std::uint16_t>(r.exp[var] - 1);
        out.add_term(r, c * BigRational(static_cast<long>(m.exp[var])));
    }
    return out;
}

MultiPoly determinant(std::vector<std::vector<MultiPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) throw InvalidInput("determinant of empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw InvalidInput("determinant of non-square matrix");
    const int arity = m[0][0].arity();
    if (n == 1) return m[0][0];
    MultiPoly prev = MultiPoly::constant(arity, BigRational(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return MultiPoly(arity);
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = mul(m[i][j], m[k][k], kWorkLimits) - mul(m[i][k], m[k][j], kWorkLimits);
                m[i][j] = prev.is_constant() ? num * prev.constant_term().inverse() : exact_quotient(num, prev);
            }
            m[i][k] = MultiPoly(arity);
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return negate ? -det : det;
}

MultiPoly jacobian_det(std::span<const MultiPoly> f) {
    const std::size_t n = f.size();
    if (n == 0) throw InvalidInput("jacobian of empty system");
    for (const auto& p : f)
        if (p.arity() != static_cast<int>(n))
            throw InvalidInput("jacobian_det: system is not square (" + std::to_string(n) +
                               " maps in arity " + std::to_string(p.arity()) + ")");
    std::vector<std::vector<MultiPoly>> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i].push_back(partial_derivative(f[i], static_cast<int>(j)));
    return determinant(std::move(m));
}

Homogeneity is_homogeneous(const MultiPoly& p) {
    Homogeneity h;
    if (p.is_zero()) {
        h.homogeneous = true;
        h.zero = true;
        return h;
    }
    int d = p.terms().begin()->first.degree();
    if (p.total_degree() != d) return h;
    h.homogeneous = true;
    h.degree = d;
    return h;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& d) {
    require_same_arity(p, d, "exact_divide");
    if (d.is_zero()) throw DivisionByZero("exact_divide by zero polynomial");
    MultiPoly q(p.arity());
    if (p.is_zero()) return q;
    if (p.total_degree() < d.total_degree()) return std::nullopt;
    for (int v = 0; v < p.arity(); ++v)
        if (p.degree_in(v) < d.degree_in(v)) return std::nullopt;
    const Monomial lm = d.leading_monomial();
    const BigRational lc = d.leading_coefficient();
    MultiPoly r = p;
    while (!r.is_zero()) {
        const Monomial& rm = r.leading_monomial();
        if (!lm.divides(rm)) return std::nullopt;
        Monomial t = rm / lm;
        BigRational c = r.leading_coefficient() / lc;
        q.add_term(t, c);
        MultiPoly step(p.arity());
        for (const auto& [m, dc] : d.terms()) step.add_term(m * t, dc * c);
        r -= step;
    }
    return q;
}

MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, int var) {
    require_same_arity(p, q, "sylvester_resultant");
    if (var < 0 || var >= p.arity()) throw ArityMismatch("resultant variable out of range");
    if (p.is_zero() && q.is_zero()) throw InvalidInput("resultant of two zero polynomials");
    const int arity = p.arity();
    if (p.is_zero() || q.is_zero()) return MultiPoly(arity);
    const int m = p.degree_in(var);
    const int n = q.degree_in(var);
    if (m == 0 && n == 0) return MultiPoly::constant(arity, BigRational(1));
    if (m == 0) return pow(p, static_cast<unsigned>(n), kWorkLimits);
    if (n == 0) return pow(q, static_cast<unsigned>(m), kWorkLimits);
    auto a = p.coefficients_in(var);
    auto b = q.coefficients_in(var);
    const int size = m + n;
    std::vector<std::vector<MultiPoly>> s(size, std::vector<MultiPoly>(size, MultiPoly(arity)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
    return determinant(std::move(s));
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, int var) {
    require_same_arity(a, b, "pseudo_remainder");
    if (b.is_zero()) throw DivisionByZero("pseudo_remainder by zero");
    const int db = b.degree_in(var);
    auto bc = b.coefficients_in(var);
    const MultiPoly lcb = bc[db];
    MultiPoly r = a;
    int e = a.degree_in(var) - db + 1;
    if (e <= 0) return r;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        int dr = r.degree_in(var);
        MultiPoly lcr = r.coefficients_in(var)[dr];
        MultiPoly shift = MultiPoly::term(a.arity(), var_power(var, dr - db), BigRational(1));
        r = mul(lcb, r, kWorkLimits) - mul(mul(lcr, shift, kWorkLimits), b, kWorkLimits);
        --e;
    }
    if (e > 0) r = mul(pow(lcb, static_cast<unsigned>(e), kWorkLimits), r, kWorkLimits);
    return r;
}

MultiPoly normalize(const MultiPoly& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_class d = c.denominator();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        mpz_class n = c.numerator();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    }
    BigRational scale(den_lcm, num_gcd);
    if (p.leading_coefficient().sign() < 0) scale = -scale;
    return p * scale;
}

namespace {

int first_used_variable(const MultiPoly& p, const MultiPoly& q) {
    for (int v = 0; v < p.arity(); ++v)
        if (p.uses_variable(v) || q.uses_variable(v)) return v;
    return -1;
}

MultiPoly content_in(const MultiPoly& p, int var) {
    MultiPoly g(p.arity());
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize(c) : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

// Subresultant PRS on polynomials primitive with respect to var.
MultiPoly prs_gcd(MultiPoly a, MultiPoly b, int var) {
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    const int arity = a.arity();
    MultiPoly g = MultiPoly::constant(arity, BigRational(1));
    MultiPoly h = MultiPoly::constant(arity, BigRational(1));
    while (true) {
        int delta = a.degree_in(var) - b.degree_in(var);
        MultiPoly r = pseudo_remainder(a, b, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) return MultiPoly::constant(arity, BigRational(1));
        a = b;
        b = exact_quotient(r, mul(g, pow(h, static_cast<unsigned>(delta), kWorkLimits), kWorkLimits));
        g = a.coefficients_in(var).back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_quotient(pow(g, static_cast<unsigned>(delta), kWorkLimits),
                               pow(h, static_cast<unsigned>(delta - 1), kWorkLimits));
        }
    }
    MultiPoly c = content_in(b, var);
    return normalize(exact_quotient(b, c));
}

}  // namespace

MultiPoly gcd(const MultiPoly& p, const MultiPoly& q) {
    require_same_arity(p, q, "gcd");
    if (p.is_zero() && q.is_zero()) throw InvalidInput("gcd of two zero polynomials");
    if (p.is_zero()) return normalize(q);
    if (q.is_zero()) return normalize(p);
    const int arity = p.arity();
    if (p.is_constant() || q.is_constant()) return MultiPoly::constant(arity, BigRational(1));
    if (auto t = exact_divide(p, q)) return normalize(q);
    if (auto t = exact_divide(q, p)) return normalize(p);
    const int var = first_used_variable(p, q);
    MultiPoly cp = content_in(p, var);
    MultiPoly cq = content_in(q, var);
    MultiPoly c = gcd(cp, cq);
    MultiPoly pp = exact_quotient(p, cp);
    MultiPoly pq = exact_quotient(q, cq);
    if (pp.degree_in(var) == 0 || pq.degree_in(var) == 0) return normalize(c);
    return normalize(c * prs_gcd(pp, pq, var));
}

MultiPoly squarefree_part(const MultiPoly& p) {
    if (p.is_zero()) throw InvalidInput("squarefree_part of zero polynomial");
    if (p.is_constant()) return MultiPoly::constant(p.arity(), BigRational(1));
    MultiPoly g = p;
    for (int v = 0; v < p.arity() && !g.is_constant(); ++v) {
        MultiPoly d = partial_derivative(p, v);
        if (!d.is_zero()) g = gcd(g, d);
    }
    return normalize(exact_quotient(p, g));
}

Complex evaluate(const MultiPoly& p, std::span<const Complex> point) {
    if (point.size() != static_cast<std::size_t>(p.arity()))
        throw ArityMismatch("evaluate: point length differs from arity");
    std::vector<std::vector<Complex>> powers(p.arity());
    for (int i = 0; i < p.arity(); ++i) {
        int d = std::max(p.degree_in(i), 0);
        powers[i].resize(d + 1);
        powers[i][0] = 1.0;
        for (int e = 1; e <= d; ++e) powers[i][e] = powers[i][e - 1] * point[i];
    }
    Complex sum = 0.0;
    for (const auto& [m, c] : p.terms()) {
        Complex t = c.to_double();
        for (int i = 0; i < p.arity(); ++i)
            if (m.exp[i]) t *= powers[i][m.exp[i]];
        sum += t;
    }
    return sum;
}

BigRational evaluate_exact(const MultiPoly& p, std::span<const BigRational> point) {
    if (point.size() != static_cast<std::size_t>(p.arity()))
        throw ArityMismatch("evaluate_exact: point length differs from arity");
    std::vector<std::vector<BigRational>> powers(p.arity());
    for (int i = 0; i < p.arity(); ++i) {
        int d = std::max(p.degree_in(i), 0);
        powers[i].resize(d + 1);
        powers[i][0] = BigRational(1);
        for (int e = 1; e <= d; ++e) powers[i][e] = powers[i][e - 1] * point[i];
    }
    BigRational sum(0);
    for (const auto& [m, c] : p.terms()) {
        BigRational t = c;
        for (int i = 0; i < p.arity(); ++i)
            if (m.exp[i]) t *= powers[i][m.exp[i]];
        sum += t;
    }
    return sum;
}

double coefficient_norm1(const MultiPoly& p) {
    double s = 0.0;
    for (const auto& [m, c] : p.terms()) s += std::abs(c.to_double());
    return s;
}

BigRational max_abs_coefficient(const MultiPoly& p) {
    BigRational best(0);
    for (const auto& [m, c] : p.terms()) best = std::max(best, c.abs());
    return best;
}

}  // namespace pcadyn
