#include "pcadyn/critical.hpp"

#include <map>

namespace pcadyn {

namespace {

MultiPoly homogenize(const MultiPoly& p, int var) {
    const int d = p.total_degree();
    MultiPoly out(p.arity());
    for (const auto& [m, c] : p.terms()) {
        Monomial h = m;
        h.exp[var] = static_cast<std::uint16_t>(h.exp[var] + d - m.degree());
        out.add_term(h, c);
    }
    return out;
}

// Eliminant of the image of V(src) from source chart c into image chart ic, or
// nullopt when this chart pair degenerates.
std::optional<MultiPoly> chart_eliminant(const HomogeneousEndo& f, const MultiPoly& src, int c, int ic) {
    const int a = c == 0 ? 1 : 0;
    const int b = c == 2 ? 1 : 2;
    const int i1 = ic == 0 ? 1 : 0;
    const int i2 = ic == 2 ? 1 : 2;
    // Arity-4 workspace: u = x_a, v = x_b, X, Y.
    std::vector<int> to4(3, 0);
    to4[a] = 0;
    to4[b] = 1;
    to4[c] = 0;
    auto lift = [&](const MultiPoly& p) { return remap_variables(specialize(p, c, BigRational(1)), 4, to4); };
    const MultiPoly q = lift(src);
    if (q.is_constant()) return std::nullopt;
    const MultiPoly den = lift(f[ic]);
    const MultiPoly X = MultiPoly::variable(4, 2), Y = MultiPoly::variable(4, 3);
    MultiPoly g1 = X * den - lift(f[i1]);
    MultiPoly g2 = Y * den - lift(f[i2]);

    MultiPoly r1 = sylvester_resultant(q, g1, 0);
    MultiPoly r2 = sylvester_resultant(q, g2, 0);
    if (r1.is_zero() || r2.is_zero()) return std::nullopt;
    MultiPoly r;
    if (!r1.uses_variable(1) && r1.uses_variable(2)) {
        r = r1;
    } else if (!r2.uses_variable(1) && r2.uses_variable(3)) {
        r = r2;
    } else {
        MultiPoly h = gcd(r1, r2);
        if (h.uses_variable(1)) {
            r1 = *exact_divide(r1, h);
            r2 = *exact_divide(r2, h);
        }
        if (!r1.uses_variable(1) && !r2.uses_variable(1)) return std::nullopt;
        r = sylvester_resultant(r1, r2, 1);
    }
    if (r.is_zero() || r.is_constant()) return std::nullopt;
    std::vector<int> back = {ic, ic, i1, i2};
    return homogenize(remap_variables(r, 3, back), ic);
}

}  // namespace

CurveComponent::CurveComponent(std::string label_, MultiPoly poly_) : label(std::move(label_)), poly(std::move(poly_)) {
    auto h = is_homogeneous(poly);
    if (!h.homogeneous || h.zero || h.degree < 1)
        throw InvalidInput("component '" + label + "' must be a homogeneous form of positive degree");
    if (squarefree_part(poly).total_degree() != poly.total_degree())
        throw InvalidInput("component '" + label + "' is not squarefree");
}

CriticalLocus critical_locus(const HomogeneousEndo& f) {
    MultiPoly raw = jacobian_det(f.components());
    if (raw.is_zero()) throw Degenerate("Jacobian determinant vanishes identically");
    return {raw, normalize(squarefree_part(raw))};
}

bool maps_into(const HomogeneousEndo& f, const CurveComponent& src, const CurveComponent& dst) {
    if (src.poly.arity() != f.arity() || dst.poly.arity() != f.arity())
        throw ArityMismatch("component arity differs from the map");
    return exact_divide(substitute(dst.poly, f.components()), src.poly).has_value();
}

MultiPoly image_eliminant(const HomogeneousEndo& f, const CurveComponent& src) {
    if (f.arity() != 3) throw InvalidInput("image_eliminant needs a map of CP^2");
    MultiPoly acc(3);
    for (int c = 0; c < 3; ++c)
        for (int ic = 0; ic < 3; ++ic) {
            auto r = chart_eliminant(f, src.poly, c, ic);
            if (!r) continue;
            MultiPoly s = squarefree_part(*r);
            acc = acc.is_zero() ? s : acc * s;
        }
    if (acc.is_zero())
        throw Degenerate("image eliminant of '" + src.label + "' vanishes identically in every chart pair");
    return normalize(squarefree_part(acc));
}

std::string OrbitClass::to_string() const {
    if (periodic()) return "Periodic(" + std::to_string(period) + ")";
    return "Preperiodic(" + std::to_string(tail) + ", " + std::to_string(period) + ")";
}

std::string PcaRefusal::message() const {
    if (kind == Kind::UncoveredCriticalFactor) return "critical factor not covered by the components: " + detail;
    return "image of component '" + detail + "' is not among the components";
}

std::vector<OrbitClass> classify_orbits(const std::vector<int>& sigma) {
    std::vector<OrbitClass> out;
    const int n = static_cast<int>(sigma.size());
    for (int i = 0; i < n; ++i) {
        std::map<int, int> seen;
        int cur = i;
        for (int step = 0;; ++step) {
            auto it = seen.find(cur);
            if (it != seen.end()) {
                out.push_back({it->second, step - it->second});
                break;
            }
            seen[cur] = step;
            cur = sigma[cur];
        }
    }
    return out;
}

PcaResult verify_pca(const HomogeneousEndo& f, const std::vector<CurveComponent>& components) {
    for (const auto& c : components)
        if (c.poly.arity() != f.arity()) throw ArityMismatch("component '" + c.label + "' has the wrong arity");
    for (std::size_t i = 0; i < components.size(); ++i)
        for (std::size_t j = i + 1; j < components.size(); ++j)
            if (normalize(components[i].poly) == normalize(components[j].poly))
                throw InvalidInput("components '" + components[i].label + "' and '" + components[j].label +
                                   "' are associate");

    PcaResult result;
    PcaCertificate cert;
    cert.components = components;

    MultiPoly rem = critical_locus(f).squarefree;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (rem.is_constant()) break;
        if (auto q = exact_divide(rem, components[i].poly)) {
            rem = *q;
            cert.critical_cover.push_back(static_cast<int>(i));
        }
    }
    if (!rem.is_constant()) {
        result.refusal = PcaRefusal{PcaRefusal::Kind::UncoveredCriticalFactor,
                                    normalize(rem).to_string(default_variable_names(f.arity()))};
        return result;
    }

    for (std::size_t i = 0; i < components.size(); ++i) {
        int found = -1;
        for (std::size_t j = 0; j < components.size(); ++j) {
            if (!maps_into(f, components[i], components[j])) continue;
            if (found >= 0)
                throw InvalidInput("component '" + components[i].label + "' maps into both '" +
                                   components[found].label + "' and '" + components[j].label + "'");
            found = static_cast<int>(j);
        }
        if (found < 0) {
            result.refusal = PcaRefusal{PcaRefusal::Kind::UnmappedComponent, components[i].label};
            return result;
        }
        cert.forward_map.push_back(found);
    }
    cert.orbit_classes = classify_orbits(cert.forward_map);
    result.certificate = std::move(cert);
    return result;
}

}  // namespace pcadyn
