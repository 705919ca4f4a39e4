#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pcadyn/poly.hpp"
#include "pcadyn/series.hpp"

namespace pcadyn {

/// Branch gamma(t) = (t^m, y(t)) of a plane curve germ at the origin, or
/// (y(t), t^m) when `swapped` is set. Coefficients are exact when every step
/// of the expansion stayed rational; otherwise only the float series is set.
struct PuiseuxBranch {
    int m = 1;
    SeriesC y;
    std::optional<SeriesQ> y_exact;
    bool swapped = false;
    std::optional<int> n;  ///< first exponent not divisible by m with a non-zero coefficient
    Complex alpha = 0.0;   ///< coefficient at t^n
    std::optional<BigRational> alpha_exact;

    static PuiseuxBranch exact(int m, SeriesQ y, bool swapped = false);
    static PuiseuxBranch numeric(int m, SeriesC y, bool swapped = false);

    bool is_exact() const { return y_exact.has_value(); }
    int order() const { return y.order(); }
    /// 1 < m < n with m not dividing n.
    bool singular() const { return m > 1 && n && *n > m; }
    /// Multiplicity of the branch at the origin (1 for smooth branches).
    int multiplicity() const;
    SeriesC x_series() const;
    SeriesC y_series() const;
    std::string to_string() const;
};

struct PuiseuxOptions {
    int order = 16;
    /// Relative magnitude below which float coefficients count as zero.
    double zero_tol = 1e-9;
};

/// Branches of q = 0 at the origin by Newton polygons. q is replaced by its
/// squarefree part. If x divides q the coordinates are swapped (returned
/// branches carry `swapped`); if both x and y divide q the line x = 0 is split
/// off as its own branch. Throws InvalidInput when q(0,0) != 0 and
/// Degenerate when order N does not separate the branches.
std::vector<PuiseuxBranch> newton_puiseux(const MultiPoly& q, const PuiseuxOptions& opts = {});

/// Largest k with q(gamma(t)) = O(t^k) checked numerically (order+1 if it vanishes to the truncation order).
int residual_valuation(const MultiPoly& q, const PuiseuxBranch& b, double tol = 1e-8);

enum class TangentKind { Transversal, Tangential, Indistinguishable };

struct TangentComparison {
    TangentKind kind;
    int contact_order = 0;  ///< first differing exponent for Tangential, N for Indistinguishable
    std::string to_string() const;
};

TangentComparison branch_tangent_type(const PuiseuxBranch& b1, const PuiseuxBranch& b2, double tol = 1e-9);

/// Germ g = (g1, g2) of a polynomial self-map of (C^2, 0).
class GermMap2 {
public:
    /// Throws InvalidInput for a non-zero constant term or wrong arity.
    GermMap2(MultiPoly g1, MultiPoly g2);
    const MultiPoly& operator[](int i) const { return g_[i]; }
    std::array<std::array<BigRational, 2>, 2> linear_part() const;
    /// g with the coordinates exchanged: s∘g∘s, s(x, y) = (y, x).
    GermMap2 swapped() const;
    /// h∘g∘h_inv.
    GermMap2 conjugated(const std::array<MultiPoly, 2>& h, const std::array<MultiPoly, 2>& h_inv) const;

private:
    std::array<MultiPoly, 2> g_;
};

/// Polynomial automorphism h = (x + r(y + p(x)), y + p(x)) with its inverse.
struct CoordinateChange {
    std::array<MultiPoly, 2> forward;
    std::array<MultiPoly, 2> inverse;
    /// p is a polynomial in x, r a polynomial in y (both arity 2).
    static CoordinateChange triangular(const MultiPoly& p, const MultiPoly& r);
};

/// Re-parametrizes the germ t -> (a(t), b(t)) into Puiseux form: the
/// coordinate of lower valuation becomes tau^m (x on ties).
PuiseuxBranch normalize_branch(const SeriesC& a, const SeriesC& b);
PuiseuxBranch normalize_branch(const SeriesQ& a, const SeriesQ& b);

/// h∘gamma re-parametrized into Puiseux form.
PuiseuxBranch transform_branch(const std::array<MultiPoly, 2>& h, const PuiseuxBranch& b);

struct CircleMap {
    SeriesC series;
    std::optional<SeriesQ> exact;
    int root_index = 0;        ///< j for the chosen root of unity exp(2 pi i j / m)
    int consistent_roots = 1;  ///< how many roots passed the consistency check
    Complex lambda() const { return series[1]; }
};

/// The map g_hat with g∘gamma = gamma∘g_hat, from the m-th root of the first
/// coordinate of g∘gamma; the root of unity is fixed by the second coordinate
/// (smallest index on ties). Throws NotInvariant if no root is consistent.
CircleMap induced_circle_map(const GermMap2& g, const PuiseuxBranch& b, double tol = 1e-9);

struct RelationReport {
    std::string relation;
    bool pass = false;
    bool exact = false;
    Complex lambda;
    std::optional<BigRational> lambda_exact;
    std::array<Complex, 2> eigenvalues;  ///< spectrum of the linear part
    std::array<Complex, 2> expected;
    std::string expected_text;           ///< e.g. "λ^2, λ^3"
    double residual = 0.0;
};

/// Spectrum of D_0 g against {λ^m, λ^n} for a singular invariant branch.
/// Throws InvalidInput when m | n, the branch is smooth, or N < m + n.
RelationReport verify_cusp_relation(const GermMap2& g, const PuiseuxBranch& b, double tol = 1e-9);

/// Spectrum of D_0 g against {0, λ}, λ the multiplier along the invariant
/// smooth branch b_dst, when g maps b_src into b_dst.
RelationReport verify_preperiodic_relation(const GermMap2& g, const PuiseuxBranch& b_src,
                                           const PuiseuxBranch& b_dst, double tol = 1e-9);

/// Spectrum of D_0 g against {λ, λ^k} for two invariant smooth branches with
/// contact order k.
RelationReport verify_tangent_relation(const GermMap2& g, const PuiseuxBranch& b1, const PuiseuxBranch& b2,
                                       double tol = 1e-9);

}  // namespace pcadyn
