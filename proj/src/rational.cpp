#include "pcadyn/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace pcadyn {

BigRational::BigRational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    q_.canonicalize();
}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    q_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    mpz_class num, den(1);
    auto parse_int = [](const std::string& t, mpz_class& out) {
        if (t.empty()) throw std::invalid_argument("empty integer");
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) throw std::invalid_argument("bad integer '" + t + "'");
        for (std::size_t i = start; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("bad integer '" + t + "'");
        out.set_str(t[0] == '+' ? t.substr(1) : t, 10);
    };
    if (slash == std::string::npos) {
        parse_int(s, num);
    } else {
        parse_int(s.substr(0, slash), num);
        parse_int(s.substr(slash + 1), den);
    }
    if (den == 0) throw std::invalid_argument("zero denominator");
    return BigRational(num, den);
}

BigRational BigRational::approximate(double v, long max_den) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
    // Convergents of the continued fraction of v.
    long double x = v;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        long double a = std::floor(x);
        mpz_class ai;
        ai = static_cast<double>(a);
        mpz_class p2 = ai * p1 + p0;
        mpz_class q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        long double frac = x - a;
        if (frac < 1e-18L) break;
        x = 1.0L / frac;
        if (x > 1e18L) break;
    }
    if (q1 == 0) return BigRational(0);
    return BigRational(p1, q1);
}

std::string BigRational::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigRational BigRational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return BigRational(q_.get_den(), q_.get_num());
}

BigRational BigRational::pow(unsigned k) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), k);
    return BigRational(n, d);
}

std::optional<BigRational> BigRational::exact_root(unsigned k) const {
    if (k == 0) return std::nullopt;
    if (k == 1) return *this;
    mpz_class n = q_.get_num();
    bool neg = n < 0;
    if (neg && k % 2 == 0) return std::nullopt;
    if (neg) n = -n;
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), q_.get_den_mpz_t(), k)) return std::nullopt;
    if (neg) rn = -rn;
    return BigRational(rn, rd);
}

std::size_t BigRational::bit_size() const {
    return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

std::size_t hash_value(const BigRational& r) {
    return std::hash<std::string>{}(r.to_string());
}

}  // namespace pcadyn
