#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pcadyn/endo.hpp"
#include "pcadyn/fixed_points.hpp"
#include "pcadyn/projective.hpp"

namespace pcadyn {

/// Parametrization [n0 : n1 : n2] of a rational plane curve by binary forms in (s, t).
class RationalCurveMap {
public:
    /// Throws InvalidInput unless the forms share a degree k >= 1, have no
    /// common factor and are not all proportional.
    explicit RationalCurveMap(std::array<MultiPoly, 3> forms);

    int degree() const { return degree_; }
    const std::array<MultiPoly, 3>& forms() const { return forms_; }
    const MultiPoly& operator[](int i) const { return forms_[i]; }
    ProjPoint apply(const ProjPoint& tau) const;

private:
    std::array<MultiPoly, 3> forms_;
    int degree_ = 0;
};

/// Endomorphism [A : B] of CP^1.
class RationalMap1D {
public:
    /// Throws InvalidInput unless A, B are coprime forms of a common degree >= 1.
    RationalMap1D(MultiPoly a, MultiPoly b);

    int degree() const { return degree_; }
    const MultiPoly& numerator() const { return a_; }
    const MultiPoly& denominator() const { return b_; }
    ProjPoint apply(const ProjPoint& tau) const;
    std::string to_string() const;

    friend bool operator==(const RationalMap1D& x, const RationalMap1D& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

private:
    MultiPoly a_, b_;
    int degree_ = 0;
};

/// [A : B] with n(A, B) = c * (f∘n). Throws NotInvariant when the curve is
/// not invariant, InvalidInput for parametrizations of degree above 3 or not
/// birational onto their image.
RationalMap1D lift_over_normalization(const HomogeneousEndo& f, const RationalCurveMap& n);

/// The scalar c of the lift identity, or nullopt if the identity fails.
std::optional<BigRational> lift_scalar(const HomogeneousEndo& f, const RationalCurveMap& n, const RationalMap1D& g);

struct DegreeAudit {
    int degree = 0;
    bool pass = false;  ///< degree >= 2
};

DegreeAudit degree_1d(const RationalMap1D& g);

/// W = A_s B_t - A_t B_s.
MultiPoly wronskian(const RationalMap1D& g);

struct PointWithMultiplicity {
    ProjPoint point;
    int multiplicity = 1;
};

/// Zeros of the Wronskian in CP^1 with multiplicities summing to 2d' - 2.
/// Throws Degenerate if the Wronskian vanishes identically.
std::vector<PointWithMultiplicity> critical_points_1d(const RationalMap1D& g);

struct CriticalOrbit {
    ProjPoint start;
    bool finite = false;
    int tail = 0;
    int period = 0;
    bool exact = false;  ///< decided by exact rational arithmetic
    int iterations = 0;  ///< iterations spent (max_iter for Undecided)
    std::string to_string() const;
};

enum class PcfStatus { Pcf, Undecided };

std::string to_string(PcfStatus s);

struct PcfVerdict {
    std::vector<PointWithMultiplicity> critical_points;
    std::vector<CriticalOrbit> orbits;
    PcfStatus verdict = PcfStatus::Undecided;
    std::string note;  ///< explanation attached to Undecided
};

struct OrbitOptions {
    int max_iter = 64;
    double tol = 1e-9;
    /// Exact orbits whose height passes this many bits fall back to Undecided.
    std::size_t max_height_bits = 10000;
};

/// Iterates every critical point. PCF iff every orbit closes up within max_iter.
PcfVerdict postcritical_orbit_1d(const RationalMap1D& g, const OrbitOptions& opts = {});

struct FixedPoint1D {
    ProjPoint point;
    int multiplicity = 1;
    Complex multiplier;
    EigenClass cls;
};

struct Audit1D {
    std::vector<FixedPoint1D> fixed_points;
    Verdict verdict = Verdict::Pass;
    std::string note;
};

/// Zeros of s B - t A with their multipliers, classified.
Audit1D audit_1d_dichotomy(const RationalMap1D& g, double class_tol = 1e-6, int root_probe = 24);

}  // namespace pcadyn
