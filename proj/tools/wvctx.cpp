#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wvctx/cli.hpp"

// wvctx: weak-value experiment statistics, noncontextual bounds and
// violation certificates, explicit hidden-variable models, and the
// exact-rational polytope pipelines behind the optimal inequalities.

int main(int argc, char** argv) {
    CLI::App app{"weak-value contextuality toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "json";
    std::string pipeline = "lemma1", pd = "1/4", ptilde = "1/2", q0 = "1/2", qstar = "1/2";
    double pminus = 0.0, pf = 0.0, pd_flag = 0.0, qstar_flag = 0.5;
    double pm_flag = -1.0;

    auto* simulate = app.add_subcommand("simulate", "run a scheme sweep and emit stats + certificates");
    simulate->add_option("--config", config_path, "experiment config (JSON)")->required();
    simulate->add_option("--out", out_path, "output path ('-' for stdout)");
    simulate->add_option("--format", format, "output format: json or csv");

    auto* assess = app.add_subcommand("assess", "postselection sharpness needed for a violation");
    assess->add_option("--pminus", pminus, "observed p_minus")->required();
    assess->add_option("--pf", pf, "postselection probability p_F")->required();
    assess->add_option("--pd", pd_flag, "disturbance weight p_d")->required();
    assess->add_option("--qstar", qstar_flag, "ensemble weight q_*")->required();
    assess->add_option("--pm", pm_flag, "measurement strength p_m (discrete schemes)");

    auto* models = app.add_subcommand("models", "build and audit the hidden-variable constructions");
    models->add_option("--config", config_path, "experiment config (JSON)")->required();
    models->add_option("--out", out_path, "optional JSON dump of the models");

    auto* polytope = app.add_subcommand("polytope", "run an exact-rational tightness pipeline");
    polytope->add_option("--pipeline", pipeline, "lemma1 or lemma2")->required();
    polytope->add_option("--pd", pd, "p_d as a rational or exact decimal");
    polytope->add_option("--ptilde", ptilde, "p~ as a rational or exact decimal");
    polytope->add_option("--q0", q0, "sharpness-ensemble weight q0 (lemma2)");
    polytope->add_option("--qstar", qstar, "mixing weight q_* (lemma2)");
    polytope->add_option("--out", out_path, "JSON output path ('-' for stdout)");

    auto* tradeoff = app.add_subcommand("tradeoff", "grid of (p_F, C_S, max allowed p_minus)");
    tradeoff->add_option("--pd", pd, "p_d as a rational or exact decimal");
    tradeoff->add_option("--ptilde", ptilde, "p~ as a rational or exact decimal");
    tradeoff->add_option("--q0", q0, "sharpness-ensemble weight q0");
    tradeoff->add_option("--qstar", qstar, "mixing weight q_*");
    tradeoff->add_option("--out", out_path, "CSV output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (simulate->parsed())
        return wvctx::cli::cmd_simulate(config_path, out_path, format, std::cout, std::cerr);
    if (assess->parsed()) {
        std::optional<double> pm;
        if (assess->count("--pm") > 0) pm = pm_flag;
        return wvctx::cli::cmd_assess(pminus, pf, pd_flag, qstar_flag, pm, std::cout, std::cerr);
    }
    if (models->parsed()) return wvctx::cli::cmd_models(config_path, out_path, std::cout, std::cerr);
    if (polytope->parsed())
        return wvctx::cli::cmd_polytope(pipeline, pd, ptilde, q0, qstar, out_path, std::cout,
                                        std::cerr);
    if (tradeoff->parsed())
        return wvctx::cli::cmd_tradeoff(pd, ptilde, q0, qstar, out_path, std::cout, std::cerr);
    return 2;
}
