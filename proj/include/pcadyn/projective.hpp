#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcadyn/poly.hpp"

namespace pcadyn {

/// Point of CP^n (n = coords.size() - 1) in canonical form: sup-norm 1 and the
/// first coordinate of (near-)maximal modulus rotated to be real positive.
class ProjPoint {
public:
    ProjPoint() = default;
    /// Canonicalizes. Throws InvalidInput for the zero vector.
    explicit ProjPoint(std::vector<Complex> coords);
    static ProjPoint from_exact(std::span<const BigRational> coords);

    const std::vector<Complex>& coords() const { return coords_; }
    std::size_t size() const { return coords_.size(); }
    const Complex& operator[](std::size_t i) const { return coords_[i]; }
    /// Index of the coordinate with largest modulus (first one on ties).
    int max_index() const;
    /// Exact coordinates when the point is known to be rational (scaled so
    /// that the canonical coordinate is 1).
    const std::optional<std::vector<BigRational>>& exact() const { return exact_; }
    void set_exact(std::vector<BigRational> e);

    std::string to_string() const;

private:
    std::vector<Complex> coords_;
    std::optional<std::vector<BigRational>> exact_;
};

/// Max coordinate distance between canonical forms.
double projective_distance(const ProjPoint& a, const ProjPoint& b);

/// Deterministic total order on canonical coordinates (used for sorting reports).
bool canonical_less(const ProjPoint& a, const ProjPoint& b);

/// Relative residual of a homogeneous polynomial at a point: |p(z)| / sum|coeffs|
/// with z scaled to sup-norm 1.
double relative_residual(const MultiPoly& p, std::span<const Complex> z);

/// Formats a double as the shortest decimal that round-trips.
std::string format_double(double v);
std::string format_complex(Complex z);

}  // namespace pcadyn
