#include "pcadyn/report.hpp"

#include <sstream>

#include "pcadyn/poly_parse.hpp"

namespace pcadyn {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json point_json(const ProjPoint& p) {
    json j;
    j["coords"] = json::array();
    for (const auto& c : p.coords()) j["coords"].push_back(complex_json(c));
    if (p.exact()) {
        j["exact"] = json::array();
        for (const auto& q : *p.exact()) j["exact"].push_back(rational_text(q));
    } else {
        j["exact"] = nullptr;
    }
    j["text"] = p.to_string();
    return j;
}

json class_json(const EigenClass& c) {
    json j{{"tag", to_string(c.tag)}, {"modulus", c.modulus}};
    if (c.tag == EigenTag::Parabolic) j["root_order"] = c.root_order;
    return j;
}

json header(const std::string& command, const std::string& name, const RunOptions& o) {
    return json{{"schema_version", kSchemaVersion},
                {"tool", kToolName},
                {"version", kToolVersion},
                {"command", command},
                {"name", name},
                {"tolerances",
                 {{"residual", o.tol_residual}, {"class", o.tol_class}, {"order", o.order}, {"max_iter", o.max_iter}}}};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string complex_list(const std::vector<Complex>& zs) {
    std::vector<std::string> parts;
    for (auto z : zs) parts.push_back(format_complex(z));
    return join(parts, ", ");
}

int exit_code_for(Verdict v) {
    switch (v) {
        case Verdict::Pass: return kExitPass;
        case Verdict::FailDichotomy: return kExitFailDichotomy;
        case Verdict::Refused: return kExitRefused;
    }
    return kExitError;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const NotInvariant*>(&e)) return "NotInvariant";
    if (dynamic_cast<const Degenerate*>(&e)) return "Degenerate";
    if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
    if (dynamic_cast<const ArityMismatch*>(&e)) return "ArityMismatch";
    if (dynamic_cast<const DegreeCapExceeded*>(&e)) return "DegreeCapExceeded";
    if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
    if (dynamic_cast<const SolverFailure*>(&e)) return "SolverFailure";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "InternalError";
}

HomogeneousEndo checked_endo(const MapSpec& spec, const RunOptions& o) {
    HomogeneousEndo f = build_endo(spec);
    auto nd = check_nondegenerate(f, o.tol_residual);
    if (!nd.nondegenerate) {
        std::string where = nd.witness ? nd.witness->to_string() : std::string("(no witness)");
        throw Degenerate("map is degenerate: components vanish together at " + where + " (residual " +
                         format_double(nd.witness_residual) + ")");
    }
    return f;
}

AuditOptions audit_options(const RunOptions& o) {
    AuditOptions a;
    a.residual_tol = o.tol_residual;
    a.class_tol = o.tol_class;
    a.threads = o.threads;
    return a;
}

struct Section {
    json j;
    std::string text;
    bool fail = false;
};

Section pca_section(const PcaResult& r, const std::vector<CurveComponent>& comps) {
    Section s;
    if (r.refusal) {
        s.j = {{"status", "REFUSED"}, {"reason", r.refusal->message()}};
        s.text = "pca: REFUSED (" + r.refusal->message() + ")\n";
        return s;
    }
    const auto& c = *r.certificate;
    json sigma = json::object(), orbits = json::object(), cover = json::array();
    std::vector<std::string> sig_txt, orb_txt, cov_txt;
    for (std::size_t i = 0; i < c.components.size(); ++i) {
        const auto& lbl = c.components[i].label;
        const auto& img = c.components[c.forward_map[i]].label;
        sigma[lbl] = img;
        orbits[lbl] = c.orbit_classes[i].to_string();
        sig_txt.push_back(lbl + " -> " + img);
        orb_txt.push_back(lbl + " " + c.orbit_classes[i].to_string());
    }
    for (int k : c.critical_cover) {
        cover.push_back(comps[k].label);
        cov_txt.push_back(comps[k].label);
    }
    s.j = {{"status", "CERTIFIED"}, {"sigma", sigma}, {"orbits", orbits}, {"critical_cover", cover}};
    s.text = "pca: certified\n  critical cover: " + join(cov_txt, ", ") + "\n  sigma: " + join(sig_txt, ", ") +
             "\n  orbits: " + join(orb_txt, ", ") + "\n";
    return s;
}

Section fixed_point_section(const AuditResult& a) {
    Section s;
    s.j = json::array();
    std::ostringstream t;
    t << "fixed points: " << a.reports.size() << "\n";
    for (const auto& r : a.reports) {
        json fp{{"point", point_json(r.point)},
                {"residual", r.residual},
                {"critical", r.critical},
                {"pc_labels", r.pc_labels},
                {"violations", r.violations}};
        fp["eigenvalues"] = json::array();
        for (auto z : r.eigenvalues) fp["eigenvalues"].push_back(complex_json(z));
        fp["classes"] = json::array();
        std::vector<std::string> tags;
        for (const auto& c : r.classes) {
            fp["classes"].push_back(class_json(c));
            tags.push_back(to_string(c.tag));
        }
        fp["on_pc"] = r.on_pc ? json(*r.on_pc) : json(nullptr);
        if (r.split) {
            fp["split"] = {{"tangent", complex_json(r.split->tangent)},
                           {"transversal", complex_json(r.split->transversal)},
                           {"label", r.split->label},
                           {"scalar_jacobian", r.split->scalar_jacobian}};
        } else {
            fp["split"] = nullptr;
        }
        s.j.push_back(fp);
        t << "  " << r.point.to_string() << "  eigenvalues " << complex_list(r.eigenvalues) << "  " << join(tags, ", ");
        if (!r.pc_labels.empty()) t << "  on " << join(r.pc_labels, ", ");
        if (r.split) t << "  tangent " << format_complex(r.split->tangent) << " along " << r.split->label;
        t << "\n";
        for (const auto& v : r.violations) t << "    violation: " << v << "\n";
    }
    s.text = t.str();
    return s;
}

Section lift_section(const HomogeneousEndo& f, const CurveSpec& c, const RunOptions& o) {
    Section s;
    RationalCurveMap n = build_curve(c);
    RationalMap1D g = lift_over_normalization(f, n);
    auto scalar = lift_scalar(f, n, g);
    DegreeAudit deg = degree_1d(g);
    s.j = {{"label", c.label},
           {"lift", g.to_string()},
           {"lift_scalar", scalar ? json(rational_text(*scalar)) : json(nullptr)},
           {"degree", deg.degree},
           {"degree_audit", deg.pass ? "PASS" : "FAIL"}};
    std::string pcf_text = "n/a";
    if (deg.pass) {
        OrbitOptions oo;
        oo.max_iter = o.max_iter;
        oo.tol = o.tol_residual;
        PcfVerdict pcf = postcritical_orbit_1d(g, oo);
        json orbits = json::array();
        for (std::size_t i = 0; i < pcf.orbits.size(); ++i) {
            const auto& ob = pcf.orbits[i];
            orbits.push_back({{"start", point_json(ob.start)},
                              {"multiplicity", pcf.critical_points[i].multiplicity},
                              {"orbit", ob.to_string()},
                              {"exact", ob.exact},
                              {"iterations", ob.iterations}});
        }
        pcf_text = to_string(pcf.verdict);
        s.j["pcf"] = {{"status", pcf_text}, {"orbits", orbits}, {"note", pcf.note}};
    } else {
        s.j["pcf"] = nullptr;
    }
    Audit1D audit = audit_1d_dichotomy(g, o.tol_class);
    json fps = json::array();
    for (const auto& fp : audit.fixed_points)
        fps.push_back({{"point", point_json(fp.point)},
                       {"multiplicity", fp.multiplicity},
                       {"multiplier", complex_json(fp.multiplier)},
                       {"class", class_json(fp.cls)}});
    s.j["dichotomy"] = {{"verdict", to_string(audit.verdict)}, {"fixed_points", fps}, {"note", audit.note}};
    s.fail = !deg.pass || audit.verdict != Verdict::Pass;
    s.text = g.to_string() + ", d' = " + std::to_string(deg.degree) + ", " + pcf_text + ", dichotomy " +
             to_string(audit.verdict);
    if (!deg.pass) s.text += ", degree audit FAIL";
    if (!audit.note.empty()) s.text += " (" + audit.note + ")";
    return s;
}

Section germ_section(const GermSpec& gs, const RunOptions& o) {
    Section s;
    GermMap2 g(gs.map[0], gs.map[1]);
    auto branch = [&](const std::string& key) { return build_branch(gs.branches.at(key), o.order); };
    RelationReport r;
    if (gs.relation == "cusp") {
        r = verify_cusp_relation(g, branch("branch"), o.tol_residual);
    } else if (gs.relation == "preperiodic") {
        r = verify_preperiodic_relation(g, branch("src"), branch("dst"), o.tol_residual);
    } else {
        r = verify_tangent_relation(g, branch("b1"), branch("b2"), o.tol_residual);
    }
    std::string lam = r.lambda_exact ? rational_text(*r.lambda_exact) : format_complex(r.lambda);
    s.fail = !r.pass;
    s.j = {{"label", gs.label},
           {"relation", r.relation},
           {"pass", r.pass},
           {"exact", r.exact},
           {"lambda", complex_json(r.lambda)},
           {"lambda_exact", r.lambda_exact ? json(rational_text(*r.lambda_exact)) : json(nullptr)},
           {"eigenvalues", json::array({complex_json(r.eigenvalues[0]), complex_json(r.eigenvalues[1])})},
           {"expected", json::array({complex_json(r.expected[0]), complex_json(r.expected[1])})},
           {"expected_text", r.expected_text},
           {"residual", r.residual}};
    s.text = "germ " + gs.label + ": " + (r.pass ? "PASS" : "FAIL") + " eigenvalues " +
             format_complex(r.eigenvalues[0]) + ", " + format_complex(r.eigenvalues[1]) + (r.pass ? " = " : " != ") +
             r.expected_text + " (λ=" + lam + ")";
    if (!r.pass) s.text += " residual " + format_double(r.residual);
    return s;
}

void finish(CommandOutput& out, Verdict v, const std::string& reason) {
    out.json["verdict"] = to_string(v);
    out.json["reason"] = reason;
    out.exit_code = exit_code_for(v);
    out.text += "verdict: " + to_string(v);
    if (!reason.empty()) out.text += " (" + reason + ")";
    out.text += "\n";
}

}  // namespace

std::string rational_text(const BigRational& q) { return q.to_string(); }

CommandOutput cmd_analyze(const MapSpec& spec, const RunOptions& opts) {
    CommandOutput out;
    out.json = header("analyze", spec.name, opts);
    if (!spec.name.empty()) out.text += "map " + spec.name + "\n";
    std::vector<std::string> failures;
    out.json["pca"] = nullptr;
    out.json["fixed_points"] = json::array();
    out.json["curves"] = json::array();
    out.json["germs"] = json::array();
    if (spec.has_map()) {
        HomogeneousEndo f = checked_endo(spec, opts);
        auto comps = build_components(spec);
        AuditResult audit = audit_theorem(f, comps, audit_options(opts));
        if (audit.pca) {
            Section p = pca_section(*audit.pca, *comps);
            out.json["pca"] = p.j;
            out.text += p.text;
        }
        if (audit.verdict == Verdict::Refused) {
            finish(out, Verdict::Refused, audit.pca->refusal->message());
            return out;
        }
        Section fp = fixed_point_section(audit);
        out.json["fixed_points"] = fp.j;
        out.text += fp.text;
        if (audit.verdict == Verdict::FailDichotomy) failures.push_back("fixed-point eigenvalue audit");
        for (const auto& c : spec.curves) {
            Section l = lift_section(f, c, opts);
            out.json["curves"].push_back(l.j);
            out.text += "curve " + c.label + ": " + l.text + "\n";
            if (l.fail) failures.push_back("curve " + c.label);
        }
    }
    for (const auto& g : spec.germs) {
        Section s = germ_section(g, opts);
        out.json["germs"].push_back(s.j);
        out.text += s.text + "\n";
        if (s.fail) failures.push_back("germ " + g.label);
    }
    if (failures.empty()) finish(out, Verdict::Pass, "");
    else finish(out, Verdict::FailDichotomy, "failed: " + join(failures, ", "));
    return out;
}

CommandOutput cmd_check_pca(const MapSpec& spec, const RunOptions& opts) {
    if (!spec.pc) throw InvalidInput("check-pca needs a [pc] section");
    HomogeneousEndo f = checked_endo(spec, opts);
    auto comps = *build_components(spec);
    PcaResult r = verify_pca(f, comps);
    CommandOutput out;
    out.json = header("check-pca", spec.name, opts);
    Section p = pca_section(r, comps);
    out.json["pca"] = p.j;
    out.text = p.text;
    if (r.certified()) finish(out, Verdict::Pass, "");
    else finish(out, Verdict::Refused, r.refusal->message());
    return out;
}

CommandOutput cmd_fixed_points(const MapSpec& spec, const RunOptions& opts) {
    HomogeneousEndo f = checked_endo(spec, opts);
    AuditResult audit = audit_theorem(f, std::nullopt, audit_options(opts));
    CommandOutput out;
    out.json = header("fixed-points", spec.name, opts);
    Section fp = fixed_point_section(audit);
    out.json["fixed_points"] = fp.j;
    out.text = fp.text;
    finish(out, audit.verdict, audit.verdict == Verdict::Pass ? "" : "fixed-point eigenvalue audit");
    return out;
}

CommandOutput cmd_puiseux(const std::string& poly, const RunOptions& opts) {
    const std::vector<std::string> xy = {"x", "y"};
    MultiPoly q = parse_polynomial(poly, xy);
    PuiseuxOptions po;
    po.order = opts.order;
    auto branches = newton_puiseux(q, po);
    CommandOutput out;
    out.json = header("puiseux", "", opts);
    out.json["polynomial"] = q.to_string(xy);
    out.json["branches"] = json::array();
    for (const auto& b : branches) {
        json jb{{"text", b.to_string()},
                {"m", b.m},
                {"n", b.n ? json(*b.n) : json(nullptr)},
                {"swapped", b.swapped},
                {"exact", b.is_exact()},
                {"singular", b.singular()},
                {"valuation", residual_valuation(q, b)}};
        if (b.n) jb["alpha"] = b.alpha_exact ? json(rational_text(*b.alpha_exact)) : complex_json(b.alpha);
        out.json["branches"].push_back(jb);
        out.text += "branch: " + b.to_string() + "\n";
    }
    out.json["verdict"] = to_string(Verdict::Pass);
    return out;
}

CommandOutput cmd_lift(const MapSpec& spec, const std::string& curve, const RunOptions& opts) {
    HomogeneousEndo f = checked_endo(spec, opts);
    Section l = lift_section(f, find_curve(spec, curve), opts);
    CommandOutput out;
    out.json = header("lift", spec.name, opts);
    out.json["curve"] = l.j;
    out.text = l.text + "\n";
    out.json["verdict"] = l.fail ? to_string(Verdict::FailDichotomy) : to_string(Verdict::Pass);
    out.exit_code = l.fail ? kExitFailDichotomy : kExitPass;
    return out;
}

CommandOutput cmd_potential(const MapSpec& spec, const std::vector<BigRational>& point, int iters,
                            const RunOptions& opts) {
    HomogeneousEndo f = checked_endo(spec, opts);
    if (static_cast<int>(point.size()) != f.arity())
        throw InvalidInput("point has " + std::to_string(point.size()) + " coordinates, the map needs " +
                           std::to_string(f.arity()));
    std::vector<Complex> w;
    json pj = json::array();
    for (const auto& q : point) {
        w.push_back(q.to_complex());
        pj.push_back(rational_text(q));
    }
    PotentialEstimate e = potential(f, w, iters, opts.tol_residual);
    CommandOutput out;
    out.json = header("potential", spec.name, opts);
    out.json["point"] = pj;
    out.json["iterations"] = iters;
    out.json["H"] = e.extrapolated;
    out.json["converged"] = e.converged;
    out.json["samples"] = json::array();
    for (const auto& [j, h] : e.samples) out.json["samples"].push_back(json::array({j, h}));
    out.json["verdict"] = to_string(Verdict::Pass);
    out.text = "H = " + format_double(e.extrapolated) + ", " + (e.converged ? "converged" : "not converged") + "\n";
    return out;
}

CommandOutput run_guarded(const std::string& command, const RunOptions& opts,
                          const std::function<CommandOutput()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        CommandOutput out;
        out.json = header(command, "", opts);
        out.json["verdict"] = "ERROR";
        out.json["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
        out.text = std::string(e.what()) + "\n";
        out.exit_code = kExitError;
        return out;
    }
}

}  // namespace pcadyn
