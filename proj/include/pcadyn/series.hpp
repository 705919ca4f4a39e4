#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pcadyn/errors.hpp"
#include "pcadyn/poly.hpp"

namespace pcadyn {

template <class T>
struct Scalar;

template <>
struct Scalar<BigRational> {
    static BigRational from(const BigRational& v) { return v; }
    static BigRational from_int(long v) { return BigRational(v); }
    static Complex to_complex(const BigRational& v) { return v.to_complex(); }
    static bool is_zero(const BigRational& v) { return v.is_zero(); }
    static double magnitude(const BigRational& v) { return std::abs(v.to_double()); }
};

template <>
struct Scalar<Complex> {
    static Complex from(const BigRational& v) { return v.to_complex(); }
    static Complex from_int(long v) { return Complex(static_cast<double>(v)); }
    static Complex to_complex(const Complex& v) { return v; }
    static bool is_zero(const Complex& v) { return v == Complex(0.0); }
    static double magnitude(const Complex& v) { return std::abs(v); }
};

/// Truncated power series sum_{k<=N} c_k t^k; every result carries the order
/// up to which it is known.
template <class T>
class PowerSeries {
public:
    explicit PowerSeries(int order = 16) : order_(order), c_(static_cast<std::size_t>(order + 1), T{}) {
        if (order < 0) throw InvalidInput("negative truncation order");
    }
    PowerSeries(std::vector<T> c, int order) : PowerSeries(order) {
        for (std::size_t k = 0; k < c.size() && static_cast<int>(k) <= order; ++k) c_[k] = c[k];
    }
    static PowerSeries monomial(const T& a, int k, int order) {
        PowerSeries s(order);
        if (k <= order) s.c_[k] = a;
        return s;
    }

    int order() const { return order_; }
    T operator[](int k) const { return k >= 0 && k <= order_ ? c_[k] : T{}; }
    void set(int k, const T& v) {
        if (k >= 0 && k <= order_) c_[k] = v;
    }
    const std::vector<T>& coefficients() const { return c_; }

    /// Index of the first non-zero coefficient, order()+1 when none.
    int valuation() const {
        for (int k = 0; k <= order_; ++k)
            if (!Scalar<T>::is_zero(c_[k])) return k;
        return order_ + 1;
    }
    /// Same with a magnitude threshold.
    int valuation(double eps) const {
        for (int k = 0; k <= order_; ++k)
            if (Scalar<T>::magnitude(c_[k]) > eps) return k;
        return order_ + 1;
    }
    double max_magnitude() const {
        double m = 0.0;
        for (const auto& v : c_) m = std::max(m, Scalar<T>::magnitude(v));
        return m;
    }

    PowerSeries truncated(int n) const { return PowerSeries(c_, std::min(n, order_)); }

    /// t^k * s.
    PowerSeries shifted(int k) const {
        PowerSeries s(order_ + k);
        for (int i = 0; i <= order_; ++i) s.c_[i + k] = c_[i];
        return s;
    }
    /// s / t^k; requires valuation() >= k.
    PowerSeries divided_by_t(int k) const {
        if (valuation() < k) throw InvalidInput("series is not divisible by t^" + std::to_string(k));
        PowerSeries s(order_ - k);
        for (int i = k; i <= order_; ++i) s.c_[i - k] = c_[i];
        return s;
    }
    PowerSeries derivative() const {
        PowerSeries s(std::max(order_ - 1, 0));
        for (int i = 1; i <= order_; ++i) s.c_[i - 1] = Scalar<T>::from_int(i) * c_[i];
        return s;
    }

    PowerSeries& operator+=(const PowerSeries& o) {
        *this = truncated(o.order_);
        for (int i = 0; i <= order_; ++i) c_[i] = c_[i] + o.c_[i];
        return *this;
    }
    PowerSeries& operator-=(const PowerSeries& o) {
        *this = truncated(o.order_);
        for (int i = 0; i <= order_; ++i) c_[i] = c_[i] - o.c_[i];
        return *this;
    }
    PowerSeries& operator*=(const T& a) {
        for (auto& v : c_) v = v * a;
        return *this;
    }
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, const T& b) { return a *= b; }
    friend PowerSeries operator*(const T& b, PowerSeries a) { return a *= b; }
    friend PowerSeries operator-(PowerSeries a) { return a *= Scalar<T>::from_int(-1); }

    /// Product known to order min(ord a + val b, ord b + val a).
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        int va = std::min(a.valuation(), a.order_), vb = std::min(b.valuation(), b.order_);
        int n = std::min(a.order_ + vb, b.order_ + va);
        PowerSeries s(n);
        for (int i = va; i <= std::min(a.order_, n); ++i) {
            if (Scalar<T>::is_zero(a.c_[i])) continue;
            for (int j = vb; i + j <= n && j <= b.order_; ++j) s.c_[i + j] = s.c_[i + j] + a.c_[i] * b.c_[j];
        }
        return s;
    }

    PowerSeries pow(unsigned k) const {
        PowerSeries r = PowerSeries::monomial(Scalar<T>::from_int(1), 0, order_);
        PowerSeries b = *this;
        while (k) {
            if (k & 1u) r = r * b;
            k >>= 1u;
            if (k) b = b * b;
        }
        return r;
    }

    /// s(inner(t)); inner must have zero constant term.
    PowerSeries compose(const PowerSeries& inner) const {
        int v = inner.valuation();
        if (v == 0) throw InvalidInput("composition with a series that has a constant term");
        if (v > inner.order_) return PowerSeries::monomial(c_[0], 0, inner.order_);
        int n = std::min((order_ + 1) * v - 1, inner.order_);
        PowerSeries acc = PowerSeries::monomial(c_[0], 0, n);
        PowerSeries p = PowerSeries::monomial(Scalar<T>::from_int(1), 0, n);
        for (int k = 1; k <= order_ && k * v <= n; ++k) {
            p = (p * inner).truncated(n);
            if (!Scalar<T>::is_zero(c_[k])) acc += p * c_[k];
        }
        return acc.truncated(n);
    }

    /// 1/s; requires a non-zero constant term.
    PowerSeries inverse() const {
        if (Scalar<T>::is_zero(c_[0])) throw DivisionByZero("series inverse with zero constant term");
        PowerSeries r(order_);
        r.c_[0] = Scalar<T>::from_int(1) / c_[0];
        for (int k = 1; k <= order_; ++k) {
            T acc{};
            for (int j = 1; j <= k; ++j) acc = acc + c_[j] * r.c_[k - j];
            r.c_[k] = -acc / c_[0];
        }
        return r;
    }

    /// Principal m-th root of a series with constant term 1.
    PowerSeries root(unsigned m) const {
        if (c_[0] != Scalar<T>::from_int(1)) throw InvalidInput("series root needs constant term 1");
        PowerSeries r(order_);
        r.c_[0] = Scalar<T>::from_int(1);
        const T alpha = Scalar<T>::from_int(1) / Scalar<T>::from_int(static_cast<long>(m));
        for (int k = 1; k <= order_; ++k) {
            T acc{};
            for (int j = 1; j <= k; ++j)
                acc = acc + (alpha * Scalar<T>::from_int(j) - Scalar<T>::from_int(k - j)) * c_[j] * r.c_[k - j];
            r.c_[k] = acc / Scalar<T>::from_int(k);
        }
        return r;
    }

    /// Compositional inverse r with s(r(t)) = t; requires s = a t + ..., a != 0.
    PowerSeries reversion() const {
        if (!Scalar<T>::is_zero(c_[0]) || Scalar<T>::is_zero(c_[1]))
            throw InvalidInput("series reversion needs the form a*t + ... with a != 0");
        PowerSeries r(order_);
        r.c_[1] = Scalar<T>::from_int(1) / c_[1];
        for (int k = 2; k <= order_; ++k) {
            T e = compose(r)[k];
            r.c_[k] = -e / c_[1];
        }
        return r;
    }

    template <class U>
    PowerSeries<U> cast() const {
        std::vector<U> c;
        for (const auto& v : c_) c.push_back(Scalar<T>::to_complex(v));
        return PowerSeries<U>(c, order_);
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }

private:
    int order_;
    std::vector<T> c_;
};

using SeriesQ = PowerSeries<BigRational>;
using SeriesC = PowerSeries<Complex>;

/// p(x(t), y(t)) for a bivariate polynomial p with rational coefficients.
template <class T>
PowerSeries<T> evaluate_series(const MultiPoly& p, const PowerSeries<T>& x, const PowerSeries<T>& y) {
    if (p.arity() != 2) throw ArityMismatch("evaluate_series needs a bivariate polynomial");
    int n = std::min(x.order(), y.order());
    std::vector<PowerSeries<T>> xp{PowerSeries<T>::monomial(Scalar<T>::from_int(1), 0, n)};
    std::vector<PowerSeries<T>> yp{PowerSeries<T>::monomial(Scalar<T>::from_int(1), 0, n)};
    for (int k = 1; k <= p.degree_in(0); ++k) xp.push_back((xp.back() * x).truncated(n));
    for (int k = 1; k <= p.degree_in(1); ++k) yp.push_back((yp.back() * y).truncated(n));
    PowerSeries<T> acc(n);
    for (const auto& [m, c] : p.terms()) acc += ((xp[m.exp[0]] * yp[m.exp[1]]).truncated(n)) * Scalar<T>::from(c);
    return acc.truncated(n);
}

/// Text form "c0 + c1*t + ..." with the given coefficient formatter; zero terms skipped.
template <class T, class Fmt>
std::string series_to_string(const PowerSeries<T>& s, Fmt fmt, double eps = 0.0) {
    std::string out;
    for (int k = 0; k <= s.order(); ++k) {
        if (Scalar<T>::magnitude(s[k]) <= eps || Scalar<T>::is_zero(s[k])) continue;
        std::string c = fmt(s[k]);
        bool neg = !c.empty() && c[0] == '-' && c.find_first_of("+-", 1) == std::string::npos;
        if (neg) c = c.substr(1);
        if (c.find_first_of("+-", 1) != std::string::npos) c = "(" + c + ")";
        std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
        std::string term;
        if (k == 0) term = c;
        else if (c == "1") term = mono;
        else term = c + "*" + mono;
        if (out.empty()) out = neg ? "-" + term : term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace pcadyn
