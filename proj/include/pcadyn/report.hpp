#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcadyn/map_spec.hpp"

namespace pcadyn {

inline constexpr const char* kToolName = "pcadyn";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitPass = 0, kExitError = 1, kExitFailDichotomy = 2, kExitRefused = 3 };

struct RunOptions {
    double tol_residual = 1e-9;
    double tol_class = 1e-6;
    int order = 16;
    int max_iter = 64;
    int threads = 1;
};

/// Human-readable text, JSON report and process exit code of one command.
struct CommandOutput {
    std::string text;
    nlohmann::json json;
    int exit_code = kExitPass;
};

/// PCA certificate, fixed points and eigenvalue audit, curve lifts, germ
/// relations. Exit 0 PASS, 2 FAIL-DICHOTOMY, 3 REFUSED.
CommandOutput cmd_analyze(const MapSpec& spec, const RunOptions& opts);
CommandOutput cmd_check_pca(const MapSpec& spec, const RunOptions& opts);
CommandOutput cmd_fixed_points(const MapSpec& spec, const RunOptions& opts);
/// Branches at the origin of a polynomial in x, y.
CommandOutput cmd_puiseux(const std::string& poly, const RunOptions& opts);
CommandOutput cmd_lift(const MapSpec& spec, const std::string& curve, const RunOptions& opts);
CommandOutput cmd_potential(const MapSpec& spec, const std::vector<BigRational>& point, int iters,
                            const RunOptions& opts);

/// Runs body, turning library errors into an exit-1 report.
CommandOutput run_guarded(const std::string& command, const RunOptions& opts,
                          const std::function<CommandOutput()>& body);

/// "p/q" (or "p") for a rational.
std::string rational_text(const BigRational& q);

}  // namespace pcadyn
