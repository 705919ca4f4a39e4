#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pcadyn {

using Complex = std::complex<double>;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Thin value wrapper around GMP's mpq_class so that arithmetic
/// returns concrete values instead of expression templates.
class BigRational {
public:
    BigRational() = default;
    BigRational(long v) : q_(v) {}
    BigRational(int v) : q_(static_cast<long>(v)) {}
    BigRational(long num, long den);
    explicit BigRational(const mpz_class& num) : q_(num) {}
    BigRational(const mpz_class& num, const mpz_class& den);
    explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed text
    /// or a zero denominator.
    static BigRational parse(std::string_view text);

    /// Closest rational with denominator at most max_den (continued fractions).
    static BigRational approximate(double v, long max_den);

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    Complex to_complex() const { return {q_.get_d(), 0.0}; }

    /// "p" for integers, "p/q" otherwise.
    std::string to_string() const;

    BigRational abs() const { return BigRational(mpq_class(::abs(q_))); }
    BigRational inverse() const;
    BigRational pow(unsigned k) const;
    /// Exact k-th root when one exists in Q (negative radicand allowed for odd k).
    std::optional<BigRational> exact_root(unsigned k) const;
    /// Bit length of numerator plus denominator; a height measure.
    std::size_t bit_size() const;

    BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
    BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
    BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
    BigRational& operator/=(const BigRational& o);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.q_)); }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return a.q_ != b.q_; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return a.q_ < b.q_; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return a.q_ > b.q_; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return a.q_ <= b.q_; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const BigRational& r) {
        return os << r.to_string();
    }

private:
    mpq_class q_{0};
};

std::size_t hash_value(const BigRational& r);

}  // namespace pcadyn

template <>
struct std::hash<pcadyn::BigRational> {
    std::size_t operator()(const pcadyn::BigRational& r) const { return pcadyn::hash_value(r); }
};
