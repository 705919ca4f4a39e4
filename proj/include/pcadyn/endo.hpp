#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pcadyn/poly.hpp"
#include "pcadyn/projective.hpp"

namespace pcadyn {

/// Homogeneous polynomial endomorphism F = (P_0, ..., P_n) of C^{n+1}, n = 1 or 2,
/// all components homogeneous of a common degree d >= 1.
class HomogeneousEndo {
public:
    /// Validates. Throws InvalidInput on mixed degrees, inhomogeneous or all-zero
    /// components and ArityMismatch on inconsistent arity.
    explicit HomogeneousEndo(std::vector<MultiPoly> components);

    int arity() const { return static_cast<int>(components_.size()); }
    int degree() const { return degree_; }
    const std::vector<MultiPoly>& components() const { return components_; }
    const MultiPoly& operator[](std::size_t i) const { return components_[i]; }

    std::vector<Complex> apply(std::span<const Complex> w) const;
    std::vector<BigRational> apply_exact(std::span<const BigRational> w) const;
    /// Jacobian matrix of F (rows: components, columns: variables) at w.
    std::vector<std::vector<Complex>> jacobian_at(std::span<const Complex> w) const;

    friend bool operator==(const HomogeneousEndo& a, const HomogeneousEndo& b) {
        return a.components_ == b.components_;
    }

private:
    std::vector<MultiPoly> components_;
    int degree_ = 0;
};

HomogeneousEndo new_endo(std::vector<MultiPoly> components);

/// j-fold composition. Throws DegreeCapExceeded when d^j passes the cap.
HomogeneousEndo iterate(const HomogeneousEndo& f, int j, const PolyLimits& lim = {});

struct Nondegeneracy {
    bool nondegenerate = false;
    std::optional<ProjPoint> witness;  ///< common projective zero when degenerate
    double witness_residual = 0.0;     ///< max_i |P_i(witness)| / |P_i|_1 at sup-norm 1
};

/// Decides F^{-1}(0) = {0} by chart-wise elimination with verified back-substitution.
Nondegeneracy check_nondegenerate(const HomogeneousEndo& f, double residual_tol = 1e-9);

/// Affine representation of f between the chart {x_chart = 1} and the chart
/// {x_image_chart = 1}. Affine coordinates are the remaining variables in index order.
class ChartMap {
public:
    int chart() const { return chart_; }
    int image_chart() const { return image_chart_; }
    /// Components other than the image chart one, with x_chart = 1.
    const std::vector<MultiPoly>& numerators() const { return numerators_; }
    const MultiPoly& denominator() const { return denominator_; }
    /// Variable indices used as affine coordinates in the source.
    const std::vector<int>& source_variables() const { return source_vars_; }

    std::vector<Complex> lift(std::span<const Complex> affine) const;
    std::vector<Complex> evaluate(std::span<const Complex> affine) const;
    std::vector<std::vector<Complex>> jacobian(std::span<const Complex> affine) const;

private:
    friend ChartMap chart_representation(const HomogeneousEndo&, int, std::optional<int>);
    int chart_ = 0;
    int image_chart_ = 0;
    std::vector<int> source_vars_;
    std::vector<MultiPoly> numerators_;
    MultiPoly denominator_;
    std::vector<std::vector<MultiPoly>> num_partials_;
    std::vector<MultiPoly> den_partials_;
};

/// Throws Degenerate when the image chart component vanishes identically on the
/// source chart. The image chart defaults to the source chart.
ChartMap chart_representation(const HomogeneousEndo& f, int chart, std::optional<int> image_chart = {});

/// Checks J_F(w) w = d w for a fixed point w of F in the cone (Euler identity).
/// Throws InvalidInput when w is (numerically) zero or not fixed by F.
bool verify_radial_eigenvalue(const HomogeneousEndo& f, std::span<const Complex> w, double tol);

struct PotentialEstimate {
    std::vector<std::pair<int, double>> samples;  ///< (j, H_j)
    double extrapolated = 0.0;
    bool converged = false;
    double tolerance = 0.0;
};

/// H_j = d^{-j} log |F^j(w)|_sup for j = 0..j_max, renormalizing at each step.
PotentialEstimate potential(const HomogeneousEndo& f, std::span<const Complex> w, int j_max, double tol);

}  // namespace pcadyn
