#include "pcadyn/projective.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace pcadyn {

namespace {
constexpr double kTieTolerance = 1e-9;
}

ProjPoint::ProjPoint(std::vector<Complex> coords) {
    double m = 0.0;
    for (const auto& c : coords) m = std::max(m, std::abs(c));
    if (m == 0.0 || !std::isfinite(m)) throw InvalidInput("projective point from zero or non-finite vector");
    std::size_t pick = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (std::abs(coords[i]) >= (1.0 - kTieTolerance) * m) {
            pick = i;
            break;
        }
    Complex scale = std::conj(coords[pick]) / (std::abs(coords[pick]) * m);
    for (auto& c : coords) {
        c *= scale;
        if (c.real() == 0.0) c = Complex(0.0, c.imag());  // drop negative zero
        if (c.imag() == 0.0) c = Complex(c.real(), 0.0);
    }
    coords[pick] = Complex(coords[pick].real(), 0.0);
    coords_ = std::move(coords);
}

ProjPoint ProjPoint::from_exact(std::span<const BigRational> coords) {
    std::vector<Complex> c;
    for (const auto& r : coords) c.push_back(r.to_complex());
    ProjPoint p(std::move(c));
    p.set_exact(std::vector<BigRational>(coords.begin(), coords.end()));
    return p;
}

void ProjPoint::set_exact(std::vector<BigRational> e) {
    // Scale so that the canonical coordinate is 1.
    int k = max_index();
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (std::abs(coords_[i]) >= (1.0 - kTieTolerance)) {
            k = static_cast<int>(i);
            break;
        }
    if (e[k].is_zero()) return;
    BigRational s = e[k].inverse();
    for (auto& v : e) v *= s;
    exact_ = std::move(e);
}

int ProjPoint::max_index() const {
    int best = 0;
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (std::abs(coords_[i]) > std::abs(coords_[best]) * (1.0 + kTieTolerance)) best = static_cast<int>(i);
    return best;
}

std::string ProjPoint::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += " : ";
        if (exact_) s += (*exact_)[i].to_string();
        else s += format_complex(coords_[i]);
    }
    return s + "]";
}

double projective_distance(const ProjPoint& a, const ProjPoint& b) {
    if (a.size() != b.size()) throw ArityMismatch("projective_distance: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

bool canonical_less(const ProjPoint& a, const ProjPoint& b) {
    constexpr double q = 1e-7;
    auto key = [](double v) { return std::llround(v / q); };
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        auto ar = key(a[i].real()), br = key(b[i].real());
        if (ar != br) return ar > br;
        auto ai = key(a[i].imag()), bi = key(b[i].imag());
        if (ai != bi) return ai > bi;
    }
    return false;
}

double relative_residual(const MultiPoly& p, std::span<const Complex> z) {
    double m = 0.0;
    for (const auto& c : z) m = std::max(m, std::abs(c));
    if (m == 0.0) return 0.0;
    std::vector<Complex> scaled(z.begin(), z.end());
    for (auto& c : scaled) c /= m;
    double n1 = coefficient_norm1(p);
    if (n1 == 0.0) return 0.0;
    return std::abs(evaluate(p, scaled)) / n1;
}

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
    constexpr double snap = 1e-12;
    double re = std::abs(z.real()) < snap ? 0.0 : z.real();
    double im = std::abs(z.imag()) < snap ? 0.0 : z.imag();
    if (im == 0.0) return format_double(re);
    if (re == 0.0) return format_double(im) + "i";
    return format_double(re) + (im < 0 ? "-" : "+") + format_double(std::abs(im)) + "i";
}

}  // namespace pcadyn
