#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pcadyn/poly.hpp"
#include "pcadyn/projective.hpp"

namespace pcadyn {

struct SolveOptions {
    /// Accept a candidate when every relative residual is at most this.
    double residual_tol = 1e-9;
    /// Merge candidates whose canonical forms are closer than this.
    double dedup_tol = 1e-8;
    /// Charts are solved concurrently when this is above 1.
    int threads = 1;
};

struct ProjectiveZero {
    ProjPoint point;
    double residual = 0.0;  ///< max relative residual over the system
};

/// All common zeros in P^1 (arity 2) or P^2 (arity 3) of a list of
/// homogeneous polynomials whose common zero set is finite. Works chart by
/// chart: the chart variable is set to 1, one variable is eliminated from a
/// pair of polynomials by a Sylvester resultant, the univariate eliminant is
/// solved (exactly for rational roots, Aberth otherwise) and every candidate is
/// back-substituted into the whole system. Throws Degenerate when the zero set
/// is not finite (shared factor) and SolverFailure on numerical breakdown.
std::vector<ProjectiveZero> common_projective_zeros(std::span<const MultiPoly> polys,
                                                    const SolveOptions& opts = {});

/// Some common zero of the list, finite or not, or nullopt if there is none.
std::optional<ProjectiveZero> find_common_zero(std::span<const MultiPoly> polys,
                                               const SolveOptions& opts = {});

/// A point on the projective hypersurface p = 0 (p homogeneous, non-constant).
ProjectiveZero point_on_hypersurface(const MultiPoly& p);

/// Max relative residual of the system at z.
double system_residual(std::span<const MultiPoly> polys, std::span<const Complex> z);

}  // namespace pcadyn
