#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcadyn/errors.hpp"
#include "pcadyn/rational.hpp"

namespace pcadyn {

inline constexpr int kMaxArity = 4;

/// Exponent vector. Slots at or beyond the owning polynomial's arity are zero.
struct Monomial {
    std::array<std::uint16_t, kMaxArity> exp{};

    int degree() const {
        int d = 0;
        for (auto e : exp) d += e;
        return d;
    }
    bool divides(const Monomial& o) const {
        for (int i = 0; i < kMaxArity; ++i)
            if (exp[i] > o.exp[i]) return false;
        return true;
    }
    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kMaxArity; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
        return r;
    }
    /// Requires divides(a, b).
    friend Monomial operator/(const Monomial& b, const Monomial& a) {
        Monomial r;
        for (int i = 0; i < kMaxArity; ++i) r.exp[i] = static_cast<std::uint16_t>(b.exp[i] - a.exp[i]);
        return r;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order with x0 > x1 > ... ; ascending.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exp < b.exp;
    }
};

struct PolyLimits {
    int max_total_degree = 64;
    std::size_t max_terms = 200000;
};

/// Sparse multivariate polynomial over Q in `arity` variables (1..4).
/// Stored canonically: no zero coefficients, terms keyed in grlex order.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, BigRational, GrlexLess>;

    explicit MultiPoly(int arity = 1);

    static MultiPoly constant(int arity, const BigRational& c);
    static MultiPoly variable(int arity, int index);
    static MultiPoly term(int arity, const Monomial& m, const BigRational& c);

    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// -1 for the zero polynomial.
    int total_degree() const;
    /// -1 for the zero polynomial.
    int degree_in(int var) const;
    /// Lowest total degree of a term, -1 for zero.
    int order() const;
    /// Largest monomial in grlex order. Requires non-zero.
    const Monomial& leading_monomial() const;
    const BigRational& leading_coefficient() const;
    BigRational coefficient(const Monomial& m) const;
    BigRational constant_term() const;
    bool uses_variable(int var) const { return degree_in(var) > 0; }

    /// Coefficients with respect to `var`: result[k] multiplies var^k and is
    /// free of `var`. Same arity as this polynomial.
    std::vector<MultiPoly> coefficients_in(int var) const;
    /// Inverse of coefficients_in.
    static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, int var, int arity);

    void add_term(const Monomial& m, const BigRational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const BigRational& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const BigRational& c) { return a *= c; }
    friend MultiPoly operator*(const BigRational& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator-(const MultiPoly& a);

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Canonical text, terms in descending grlex order, e.g. "x^2*y - 3/2*z^3".
    std::string to_string() const;
    std::string to_string(std::span<const std::string> names) const;

private:
    int arity_;
    TermMap terms_;
};

/// Default variable names for a given arity: x,y / x,y,z / x,y,z,w; 1 -> x.
std::vector<std::string> default_variable_names(int arity);

MultiPoly mul(const MultiPoly& p, const MultiPoly& q, const PolyLimits& lim = {});
MultiPoly pow(const MultiPoly& p, unsigned k, const PolyLimits& lim = {});

/// q∘f where f has q.arity() entries, all of a common arity.
MultiPoly substitute(const MultiPoly& q, std::span<const MultiPoly> f, const PolyLimits& lim = {});

/// Replace variable `var` by the constant `value`; arity is preserved.
MultiPoly specialize(const MultiPoly& p, int var, const BigRational& value);

/// Change arity by mapping source variable i to target variable index_map[i].
MultiPoly remap_variables(const MultiPoly& p, int new_arity, std::span<const int> index_map);

MultiPoly partial_derivative(const MultiPoly& p, int var);

/// Determinant of the Jacobian matrix of a square system (n polys in n vars).
MultiPoly jacobian_det(std::span<const MultiPoly> f);

/// Determinant of a square matrix with polynomial entries (fraction-free Bareiss).
MultiPoly determinant(std::vector<std::vector<MultiPoly>> m);

struct Homogeneity {
    bool homogeneous = false;
    bool zero = false;
    int degree = -1;
};
Homogeneity is_homogeneous(const MultiPoly& p);

/// q with d*q == p, or nullopt. Throws DivisionByZero when d == 0.
std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& d);

/// Sylvester resultant eliminating `var`; p's coefficient rows on top.
MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, int var);

/// Pseudo-remainder of a by b with respect to var.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, int var);

/// Integer coefficients with content 1 and positive leading coefficient.
MultiPoly normalize(const MultiPoly& p);

MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);
MultiPoly squarefree_part(const MultiPoly& p);

Complex evaluate(const MultiPoly& p, std::span<const Complex> point);
BigRational evaluate_exact(const MultiPoly& p, std::span<const BigRational> point);
/// Sum of absolute values of coefficients (a bound for |p| on the unit polydisc).
double coefficient_norm1(const MultiPoly& p);
/// Largest |coefficient|.
BigRational max_abs_coefficient(const MultiPoly& p);

}  // namespace pcadyn
