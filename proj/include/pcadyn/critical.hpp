#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcadyn/endo.hpp"

namespace pcadyn {

/// Labeled component of a post-critical curve. Irreducibility is the caller's
/// assertion; homogeneity and squarefreeness are checked on construction.
struct CurveComponent {
    std::string label;
    MultiPoly poly;

    CurveComponent(std::string label, MultiPoly poly);
};

struct CriticalLocus {
    MultiPoly raw;         ///< Jacobian determinant
    MultiPoly squarefree;  ///< normalized squarefree part
};

/// Throws Degenerate if the Jacobian determinant vanishes identically.
CriticalLocus critical_locus(const HomogeneousEndo& f);

/// f(V(src)) contained in V(dst), decided as src | dst∘F.
bool maps_into(const HomogeneousEndo& f, const CurveComponent& src, const CurveComponent& dst);

/// Squarefree form in the image variables whose zero set contains f(V(src)).
/// Built from the graph equations by eliminating the source variables in index
/// order, over every pair of source and image charts. May carry extraneous
/// factors. Throws Degenerate if every chart pair degenerates.
MultiPoly image_eliminant(const HomogeneousEndo& f, const CurveComponent& src);

struct OrbitClass {
    int tail = 0;    ///< 0 for periodic components
    int period = 1;
    bool periodic() const { return tail == 0; }
    std::string to_string() const;
};

struct PcaCertificate {
    std::vector<CurveComponent> components;
    std::vector<int> critical_cover;  ///< indices whose product is the squarefree critical locus
    std::vector<int> forward_map;     ///< sigma
    std::vector<OrbitClass> orbit_classes;
};

struct PcaRefusal {
    enum class Kind { UncoveredCriticalFactor, UnmappedComponent };
    Kind kind;
    std::string detail;  ///< factor text or component label
    std::string message() const;
};

struct PcaResult {
    std::optional<PcaCertificate> certificate;
    std::optional<PcaRefusal> refusal;
    bool certified() const { return certificate.has_value(); }
};

/// Checks that the supplied components cover the critical locus and are closed
/// under forward images. A refusal means only that this list does not certify
/// PCA. Throws InvalidInput when two components are associate or when a
/// component maps into two different components (reducible input).
PcaResult verify_pca(const HomogeneousEndo& f, const std::vector<CurveComponent>& components);

/// Functional-graph orbit type of each index under sigma.
std::vector<OrbitClass> classify_orbits(const std::vector<int>& sigma);

}  // namespace pcadyn
