#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcadyn/critical.hpp"
#include "pcadyn/endo.hpp"
#include "pcadyn/projective_solve.hpp"

namespace pcadyn {

enum class EigenTag { Superattracting, Attracting, Parabolic, Elliptic, Repelling };

std::string to_string(EigenTag tag);

struct EigenClass {
    EigenTag tag = EigenTag::Superattracting;
    double modulus = 0.0;
    int root_order = 0;  ///< smallest q with |λ^q - 1| <= tol, for Parabolic
};

EigenClass classify_eigenvalue(Complex lambda, double tol = 1e-6, int root_probe = 24);

/// True for the two classes allowed by the dichotomy (0 or |λ| > 1).
inline bool dichotomy_class(const EigenClass& c) {
    return c.tag == EigenTag::Superattracting || c.tag == EigenTag::Repelling;
}

/// The 2x2 minors x_i P_j - x_j P_i, i < j.
std::vector<MultiPoly> fixed_point_system(const HomogeneousEndo& f);

/// All fixed points of f. Requires d >= 2; throws Degenerate when the minors
/// have a common curve (or all vanish).
std::vector<ProjectiveZero> solve_fixed_points(const HomogeneousEndo& f, const SolveOptions& opts = {});

/// Eigenvalues of D_z f sorted by modulus then argument. The chart defaults to
/// the largest coordinate of z. Throws InvalidInput if z is not fixed.
std::vector<Complex> eigenvalues_at(const HomogeneousEndo& f, const ProjPoint& z, double residual_tol = 1e-9,
                                    std::optional<int> chart = {});

struct TangentSplit {
    Complex tangent;
    Complex transversal;
    std::string label;
    bool scalar_jacobian = false;  ///< both labels carry the same value
};

/// Splits the eigenvalues at a fixed point z lying on a smooth point of V(q)
/// into the one along T_z V(q) and the transversal one. Throws InvalidInput if
/// z is not on V(q), Degenerate at a singular point of V(q) and NotInvariant
/// when the tangent line is not an eigendirection.
TangentSplit tangent_split(const HomogeneousEndo& f, const ProjPoint& z, const CurveComponent& q, double tol = 1e-6,
                           double residual_tol = 1e-9);

struct AuditOptions {
    double residual_tol = 1e-9;
    double class_tol = 1e-6;
    double dedup_tol = 1e-8;
    int root_probe = 24;
    int threads = 1;
};

struct FixedPointReport {
    ProjPoint point;
    double residual = 0.0;
    std::vector<Complex> eigenvalues;
    std::vector<EigenClass> classes;
    bool critical = false;  ///< det D_z f = 0
    std::optional<bool> on_pc;
    std::vector<std::string> pc_labels;  ///< components through the point
    std::optional<TangentSplit> split;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

enum class Verdict { Pass, FailDichotomy, Refused };

std::string to_string(Verdict v);

struct AuditResult {
    std::vector<FixedPointReport> reports;
    std::optional<PcaResult> pca;
    Verdict verdict = Verdict::Pass;
};

/// Classifies every fixed point. With components, first certifies PCA (a
/// refusal ends the audit with Verdict::Refused), then marks points on the
/// post-critical curve and checks tangent and transversal eigenvalues at its
/// smooth points.
AuditResult audit_theorem(const HomogeneousEndo& f, const std::optional<std::vector<CurveComponent>>& components,
                          const AuditOptions& opts = {});

}  // namespace pcadyn
