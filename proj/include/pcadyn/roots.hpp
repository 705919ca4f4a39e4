#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pcadyn/poly.hpp"

namespace pcadyn {

struct AberthOptions {
    int max_iterations = 800;
    /// A root is accepted when |p(z)| <= backward_factor * eps * sum |a_i| |z|^i.
    double backward_factor = 64.0;
};

/// All complex roots of the polynomial with ascending coefficients `coeffs`
/// (coeffs.back() != 0) by Aberth–Ehrlich simultaneous iteration followed by
/// Newton polishing. Throws SolverFailure when the iteration stalls.
std::vector<Complex> aberth_roots(std::span<const Complex> coeffs, const AberthOptions& opts = {});

struct UnivariateRoot {
    Complex value;
    std::optional<BigRational> exact;  ///< set when the root is rational (verified exactly)
    int multiplicity = 1;
};

/// Squarefree decomposition (Yun) of a univariate polynomial given as an
/// arity-1 MultiPoly: pairs (factor, multiplicity) with product equal to p up
/// to a constant.
std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& p);

/// Roots of a non-zero arity-1 polynomial with multiplicities. Rational roots
/// are detected and verified exactly.
std::vector<UnivariateRoot> univariate_roots(const MultiPoly& p);

/// Extract the dependence on `var` of a polynomial that uses no other
/// variable, as an arity-1 polynomial. Throws InvalidInput otherwise.
MultiPoly to_univariate(const MultiPoly& p, int var);

/// Ascending complex coefficients of an arity-1 polynomial.
std::vector<Complex> complex_coefficients(const MultiPoly& p);

/// Roots of a polynomial with complex coefficients, grouped into clusters
/// whose members lie within cluster_tol (relative) of each other. The value
/// of a cluster is its mean, multiplicity its size.
std::vector<UnivariateRoot> clustered_roots(std::span<const Complex> coeffs, double cluster_tol = 1e-6);

/// Trims trailing coefficients that are negligible relative to the largest one.
std::vector<Complex> trim_numeric(std::vector<Complex> coeffs, double rel_tol);

Complex horner(std::span<const Complex> coeffs, Complex z);

}  // namespace pcadyn
