#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uent/harness.hpp"

namespace {

using namespace uent;

int dispatch(int argc, char** argv) {
    CLI::App app{"Workbench for Hamming-weight monogamy and polygamy bounds on unified-entropy "
                 "entanglement of multiqubit states"};
    app.require_subcommand(1);

    // example1
    auto* ex1 = app.add_subcommand("example1",
                                   "Reproduce the alpha-sweep figure for the worked three-qubit "
                                   "state (CSV, SVG, audit JSON)");
    double alpha_max = 5.0;
    int ex1_steps = 200;
    std::string ex1_out = "example1-out";
    ex1->add_option("--alpha-max", alpha_max, "Upper end of the alpha sweep (> 1)");
    ex1->add_option("--steps", ex1_steps, "Grid points in the sweep");
    ex1->add_option("--out", ex1_out, "Output directory");

    // example2
    auto* ex2 = app.add_subcommand("example2",
                                   "Reproduce the beta-sweep figure for the worked three-qubit "
                                   "state (CSV, SVG)");
    double beta_min = 0.0;
    int ex2_steps = 200;
    std::string ex2_out = "example2-out";
    ex2->add_option("--beta-min", beta_min, "Lower end of the beta sweep, in [0, 1)");
    ex2->add_option("--steps", ex2_steps, "Grid points in the sweep");
    ex2->add_option("--out", ex2_out, "Output directory");

    // campaign
    auto* camp = app.add_subcommand("campaign",
                                    "Randomized verification campaign over Haar-random pure "
                                    "states (JSON-lines reports + summary)");
    harness::CampaignConfig cfg;
    cfg.exponents.clear();
    std::string config_path, mode_str = "monogamy";
    std::vector<double> alphas, betas;
    camp->add_option("--config", config_path, "JSON file mirroring the campaign configuration");
    camp->add_option("--states", cfg.n_states, "Number of random states");
    camp->add_option("--qubits", cfg.n_qubits, "Qubit count (3 or 4)");
    camp->add_option("--q", cfg.q, "Entropy parameter q");
    camp->add_option("--s", cfg.s, "Entropy parameter s");
    camp->add_option("--alpha", alphas, "Exponent grid value (repeatable)");
    camp->add_option("--beta", betas, "Exponent grid value (repeatable)");
    camp->add_option("--k", cfg.k, "Tightening parameter k in (0, 1]");
    camp->add_option("--delta", cfg.delta, "Tightening parameter delta >= 1");
    camp->add_option("--seed", cfg.seed, "Base seed; per-state seeds are seed XOR index");
    camp->add_option("--mode", mode_str, "monogamy | polygamy | negative-power");
    camp->add_option("--out", cfg.out_dir, "Output directory");
    camp->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
    camp->add_option("--restarts", cfg.roof.restarts, "Convex-roof multistart count");

    // check
    auto* chk = app.add_subcommand("check", "Evaluate every bound for one state file");
    std::string state_file, chk_mode_str = "monogamy";
    harness::CheckParams cp;
    double chk_exponent = 1.0;
    chk->add_option("state", state_file, "State JSON file")->required();
    chk->add_option("--focus", cp.focus, "Index of the focus party A");
    chk->add_option("--q", cp.entropy.q, "Entropy parameter q");
    chk->add_option("--s", cp.entropy.s, "Entropy parameter s");
    chk->add_option("--alpha,--beta", chk_exponent, "Measure exponent");
    chk->add_option("--k", cp.tightening.k, "Tightening parameter k");
    chk->add_option("--delta", cp.tightening.delta, "Tightening parameter delta");
    chk->add_option("--mode", chk_mode_str, "monogamy | polygamy | negative-power");
    chk->add_flag("--mixed-lhs", cp.eval.allow_mixed_lhs,
                  "Allow the convex-roof LHS for mixed 3-qubit states of rank <= 2");
    chk->add_option("--restarts", cp.eval.roof.restarts, "Convex-roof multistart count");
    chk->add_option("--threads", cp.eval.roof.threads, "Concurrent convex-roof restarts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? harness::exit_ok : harness::exit_usage;
    }

    if (ex1->parsed()) return harness::cmd_example1(alpha_max, ex1_steps, ex1_out);
    if (ex2->parsed()) return harness::cmd_example2(beta_min, ex2_steps, ex2_out);
    if (camp->parsed()) {
        if (!config_path.empty()) {
            harness::CampaignConfig file_cfg = harness::CampaignConfig::from_json_file(config_path);
            // Explicit flags take precedence over the config file.
            if (!camp->count("--states")) cfg.n_states = file_cfg.n_states;
            if (!camp->count("--qubits")) cfg.n_qubits = file_cfg.n_qubits;
            if (!camp->count("--q")) cfg.q = file_cfg.q;
            if (!camp->count("--s")) cfg.s = file_cfg.s;
            if (!camp->count("--k")) cfg.k = file_cfg.k;
            if (!camp->count("--delta")) cfg.delta = file_cfg.delta;
            if (!camp->count("--seed")) cfg.seed = file_cfg.seed;
            if (!camp->count("--mode")) mode_str = bounds::mode_name(file_cfg.mode);
            if (!camp->count("--out")) cfg.out_dir = file_cfg.out_dir;
            if (!camp->count("--threads")) cfg.threads = file_cfg.threads;
            if (!camp->count("--restarts")) cfg.roof = file_cfg.roof;
            if (alphas.empty() && betas.empty()) cfg.exponents = file_cfg.exponents;
        }
        cfg.mode = bounds::mode_from_name(mode_str);
        cfg.exponents.insert(cfg.exponents.end(), alphas.begin(), alphas.end());
        cfg.exponents.insert(cfg.exponents.end(), betas.begin(), betas.end());
        return harness::cmd_campaign(cfg);
    }
    if (chk->parsed()) {
        cp.mode = bounds::mode_from_name(chk_mode_str);
        cp.tightening.exponent = chk_exponent;
        return harness::cmd_check(state_file, cp);
    }
    return harness::exit_usage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return uent::harness::exit_usage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return uent::harness::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return uent::harness::exit_numeric;
    }
}
