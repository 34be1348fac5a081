#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wvctx/bounds.hpp"
#include "wvctx/ontic.hpp"
#include "wvctx/pipelines.hpp"
#include "wvctx/schemes.hpp"

// Command-line surface. Each cmd_* function implements one subcommand and
// returns the process exit code: 0 success, 2 input error, 3 domain error,
// 4 internal invariant failure. The thin main in tools/ only parses flags.

namespace wvctx::cli {

struct ExperimentConfig {
    schemes::SchemeSpec scheme;
    qmath::DensityState state;
    qmath::Effect weak_projector;           // the weakly measured projector
    qmath::Effect postselection_projector;  // ideal postselection, before noise
    std::vector<double> sweep;              // s or epsilon values, at least one
    bool sweep_is_epsilon = false;
    int bins = 64;  // cell count for the models subcommand
};

/// Parse and validate a config document (schema 1; unknown keys rejected;
/// numbers are decimal strings; amplitudes must be normalized to 1e-9).
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct RunPoint {
    double param = 0.0;  // the swept s or epsilon value
    schemes::ExperimentStats stats;
    std::vector<bounds::Certificate> certificates;
    std::vector<std::string> notes;
};

struct RunReport {
    std::vector<RunPoint> points;
};

/// Evaluate every sweep point (in parallel, capped by WVCTX_THREADS) and the
/// scheme-appropriate certificates; points come back in input order.
RunReport run_simulation(const ExperimentConfig& config);

std::string report_to_csv(const RunReport& report);
std::string report_to_json_text(const RunReport& report);

/// Fixed formatting used by every emitter: 12 significant digits.
std::string format_number(double v);

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& format, std::ostream& out, std::ostream& err);

int cmd_assess(double p_minus, double p_f, double p_d, double q_star, std::optional<double> p_m,
               std::ostream& out, std::ostream& err);

int cmd_models(const std::string& config_path, const std::string& out_path, std::ostream& out,
               std::ostream& err);

int cmd_polytope(const std::string& pipeline, const std::string& p_d, const std::string& p_tilde,
                 const std::string& q0, const std::string& q_star, const std::string& out_path,
                 std::ostream& out, std::ostream& err);

int cmd_tradeoff(const std::string& p_d, const std::string& p_tilde, const std::string& q0,
                 const std::string& q_star, const std::string& out_path, std::ostream& out,
                 std::ostream& err);

}  // namespace wvctx::cli
