#include "uent/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace uent::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int default_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Bounded worker pool over [0, n) with results merged by index.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    threads = std::clamp(threads, 1, std::max(n, 1));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

states::PureState example_state() {
    states::SchmidtParams sp;
    sp.lambdas = {std::sqrt(3.0) / 3.0, 0.0, std::sqrt(2.0) / 2.0, std::sqrt(6.0) / 6.0, 0.0};
    sp.phi = 0.0;
    return states::build_generalized_schmidt(sp);
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("format_csv: row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << fmt12(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

void CampaignConfig::validate() const {
    if (n_states < 1) throw std::invalid_argument("campaign: n_states must be positive");
    if (n_qubits != 3 && n_qubits != 4)
        throw std::invalid_argument("campaign: n_qubits must be 3 or 4");
    if (exponents.empty()) throw std::invalid_argument("campaign: exponent grid is empty");
    for (double e : exponents) {
        bounds::TighteningParams t{k, delta, e};
        t.validate(mode);  // throws when e is outside the mode's range
    }
    entropy::EntropyParams p{q, s};
    p.validate();
    const auto flags = entropy::classify_domain(p);
    if ((mode == bounds::Mode::polygamy && !flags.polygamy_valid) ||
        (mode != bounds::Mode::polygamy && !flags.monogamy_valid))
        throw std::invalid_argument("campaign: (q, s) fails the domain predicate for this mode");
    if (out_dir.empty()) throw std::invalid_argument("campaign: output directory not set");
}

std::string CampaignConfig::to_json_string(int indent) const {
    json j;
    j["n_states"] = n_states;
    j["n_qubits"] = n_qubits;
    j["q"] = q;
    j["s"] = s;
    j["exponents"] = exponents;
    j["k"] = k;
    j["delta"] = delta;
    j["seed"] = seed;
    j["mode"] = bounds::mode_name(mode);
    j["out_dir"] = out_dir;
    j["threads"] = threads;
    j["fast_path_states"] = fast_path_states;
    j["roof"] = {{"restarts", roof.restarts},
                 {"max_iterations", roof.max_iterations},
                 {"polish_rounds", roof.polish_rounds},
                 {"ensemble_multiplier", roof.ensemble_multiplier},
                 {"seed", roof.seed}};
    return j.dump(indent);
}

CampaignConfig CampaignConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j = json::parse(in);
    CampaignConfig cfg;
    cfg.n_states = j.value("n_states", cfg.n_states);
    cfg.n_qubits = j.value("n_qubits", cfg.n_qubits);
    cfg.q = j.value("q", cfg.q);
    cfg.s = j.value("s", cfg.s);
    if (j.contains("exponents")) cfg.exponents = j["exponents"].get<std::vector<double>>();
    cfg.k = j.value("k", cfg.k);
    cfg.delta = j.value("delta", cfg.delta);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("mode")) cfg.mode = bounds::mode_from_name(j["mode"].get<std::string>());
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.fast_path_states = j.value("fast_path_states", cfg.fast_path_states);
    if (j.contains("roof")) {
        const json& r = j["roof"];
        cfg.roof.restarts = r.value("restarts", cfg.roof.restarts);
        cfg.roof.max_iterations = r.value("max_iterations", cfg.roof.max_iterations);
        cfg.roof.polish_rounds = r.value("polish_rounds", cfg.roof.polish_rounds);
        cfg.roof.ensemble_multiplier = r.value("ensemble_multiplier", cfg.roof.ensemble_multiplier);
        cfg.roof.seed = r.value("seed", cfg.roof.seed);
    }
    return cfg;
}

int cmd_example1(double alpha_max, int steps, const std::string& out_dir,
                 const measures::RoofOptions& roof, bool with_audit) {
    if (steps < 2) throw std::invalid_argument("example1: steps must be at least 2");
    if (!(alpha_max > 1.0))
        throw std::invalid_argument("example1: alpha range must have positive span (alpha_max > 1)");

    std::vector<std::vector<double>> rows;
    std::vector<Curve> curves(3);
    curves[0] = {"measure to the alpha", "#1f4e8c", "", {}};
    curves[1] = {"hamming-weighted bound", "#c23b22", "8,4", {}};
    curves[2] = {"baseline bound", "#3c8031", "2,4,8,4", {}};
    for (int i = 0; i < steps; ++i) {
        const double a = 1.0 + (alpha_max - 1.0) * i / (steps - 1);
        const double lhs = std::pow(4.0 / 9.0, a);
        const double y1 = std::pow(1.0 / 6.0, a) + std::pow(7.0 / 27.0, a) - std::pow(4.0 / 27.0, a);
        const double y2 = std::pow(1.0 / 6.0, a) + a * std::pow(1.0 / 9.0, a);
        if (y1 < y2 - 1e-15)
            throw std::runtime_error("example1: tightened bound fell below the baseline at alpha=" +
                                     std::to_string(a));
        rows.push_back({a, lhs, y1, y2});
        curves[0].points.emplace_back(a, lhs);
        curves[1].points.emplace_back(a, y1);
        curves[2].points.emplace_back(a, y2);
    }
    write_text_file(out_dir + "/example1.csv", format_csv({"alpha", "lhs", "y1", "y2"}, rows));
    write_text_file(out_dir + "/example1.svg",
                    render_line_chart("Monogamy bounds, three-qubit example", "alpha", "value",
                                      curves));

    if (!with_audit) return exit_ok;

    // Audit: the figure's tabulated A|B pair value vs the computed roof.
    const states::PureState psi = example_state();
    states::DensityMatrix rho_ab = states::reduce(psi, {0, 1});
    const double closed_form = measures::tsallis2_two_qubit(rho_ab);
    const entropy::EntropyParams p21{2.0, 1.0};
    states::PartitionSpec pair_part;
    pair_part.focus = 0;
    pair_part.others = {1};
    const measures::RoofResult roof_res =
        measures::convex_roof(rho_ab, pair_part, p21, measures::RoofDirection::minimize, roof);

    json audit;
    audit["figure_pair_value"] = 1.0 / 6.0;
    audit["closed_form_value"] = closed_form;
    audit["convex_roof"] = {{"value", roof_res.value},
                            {"converged", roof_res.converged},
                            {"restarts_used", roof_res.restarts_used},
                            {"restart_spread", roof_res.restart_spread}};
    audit["figure_matches_computation"] =
        std::abs(roof_res.value - 1.0 / 6.0) < 1e-3;
    audit["note"] =
        "curves keep the tabulated pair value 1/6; the convex-roof optimum and the "
        "concurrence closed form are reported unmodified for comparison";
    audit["sweep"] = {{"alpha_min", 1.0}, {"alpha_max", alpha_max}, {"steps", steps}};
    write_text_file(out_dir + "/example1_audit.json", audit.dump(2) + "\n");
    return exit_ok;
}

int cmd_example2(double beta_min, int steps, const std::string& out_dir) {
    if (steps < 2) throw std::invalid_argument("example2: steps must be at least 2");
    if (beta_min < 0.0 || beta_min >= 1.0)
        throw std::invalid_argument("example2: beta_min must lie in [0, 1)");

    std::vector<std::vector<double>> rows;
    std::vector<Curve> curves(3);
    curves[0] = {"assisted measure to the beta", "#1f4e8c", "", {}};
    curves[1] = {"hamming-weighted bound", "#c23b22", "8,4", {}};
    curves[2] = {"baseline bound", "#3c8031", "2,4,8,4", {}};
    for (int i = 0; i < steps; ++i) {
        const double b = beta_min + (1.0 - beta_min) * i / (steps - 1);
        const double lhs = std::pow(4.0 / 9.0, b);
        const double y3 = std::pow(1.0 / 3.0, b) + std::pow(5.0 / 18.0, b) - std::pow(1.0 / 6.0, b);
        const double y4 = std::pow(1.0 / 3.0, b) + b * std::pow(1.0 / 9.0, b);
        if (y3 > y4 + 1e-15)
            throw std::runtime_error("example2: tightened bound exceeded the baseline at beta=" +
                                     std::to_string(b));
        if (lhs > y3 + 1e-15)
            throw std::runtime_error("example2: measure exceeded the tightened bound at beta=" +
                                     std::to_string(b));
        rows.push_back({b, lhs, y3, y4});
        curves[0].points.emplace_back(b, lhs);
        curves[1].points.emplace_back(b, y3);
        curves[2].points.emplace_back(b, y4);
    }
    write_text_file(out_dir + "/example2.csv", format_csv({"beta", "lhs", "y3", "y4"}, rows));
    write_text_file(out_dir + "/example2.svg",
                    render_line_chart("Polygamy bounds, three-qubit example", "beta", "value",
                                      curves));
    json meta;
    meta["sweep"] = {{"beta_min", beta_min}, {"beta_max", 1.0}, {"steps", steps}};
    write_text_file(out_dir + "/example2_meta.json", meta.dump(2) + "\n");
    return exit_ok;
}

namespace {

// Per-bound aggregation across a campaign.
struct BoundStats {
    double min_slack = std::numeric_limits<double>::infinity();
    long evaluated = 0;
    long precondition_passed = 0;
    long violations = 0;
};

}  // namespace

int cmd_campaign(const CampaignConfig& cfg) {
    cfg.validate();
    const int threads = cfg.threads > 0 ? cfg.threads : default_threads();

    const bool at_21 = (cfg.q == 2.0 && cfg.s == 1.0);
    const bool needs_ue = cfg.mode != bounds::Mode::polygamy;
    json fast_path_info;
    if (needs_ue && at_21) {
        if (!measures::fast_path_validated()) {
            measures::RoofOptions vopts = cfg.roof;
            vopts.threads = threads;
            const auto rep = measures::validate_fast_path(cfg.fast_path_states, 5e-4, vopts);
            if (!rep.passed)
                std::cerr << "fast-path validation failed (max err " << rep.max_abs_err
                          << "); measures fall back to the optimizer\n";
        }
        const auto rep = measures::last_fast_path_report();
        fast_path_info = {{"validated", rep && rep->passed},
                          {"n_states", rep ? rep->n_states : 0},
                          {"max_abs_err", rep ? rep->max_abs_err : 0.0}};
    } else {
        fast_path_info = {{"applicable", false}};
    }
    const bool fast_ue = needs_ue && at_21 && measures::fast_path_validated();
    // Arithmetic-noise tolerance on closed-form paths; optimizer-gap tolerance
    // when a convex-roof value enters the comparison.
    const double tolerance = fast_ue ? 1e-7 : 5e-4;

    const entropy::EntropyParams p{cfg.q, cfg.s};
    states::PartitionSpec part;
    part.focus = 0;
    part.others.resize(cfg.n_qubits - 1);
    for (std::size_t i = 0; i < part.others.size(); ++i) part.others[i] = i + 1;

    std::vector<std::string> lines(cfg.n_states);
    std::vector<std::vector<bounds::BoundReport>> reports(cfg.n_states);

    parallel_for(cfg.n_states, threads, [&](int i) {
        const std::uint64_t state_seed = cfg.seed ^ static_cast<std::uint64_t>(i);
        const states::PureState psi =
            states::haar_random_pure(static_cast<std::size_t>(cfg.n_qubits), state_seed);
        measures::RoofOptions ropts = cfg.roof;
        ropts.threads = 1;  // states already run in parallel
        const double lhs = measures::pure_state_ue(psi, part, p);
        const auto pairs = bounds::pairwise_measures(psi, part, p, cfg.mode, ropts);

        std::ostringstream block;
        for (std::size_t e = 0; e < cfg.exponents.size(); ++e) {
            bounds::TighteningParams t{cfg.k, cfg.delta, cfg.exponents[e]};
            bounds::BoundReport rep =
                bounds::evaluate_bounds_from_values(lhs, pairs, p, t, cfg.mode);
            json line;
            line["state_index"] = i;
            line["seed"] = state_seed;
            line["report"] = json::parse(rep.to_json_string());
            block << line.dump() << '\n';
            reports[i].push_back(std::move(rep));
        }
        lines[i] = block.str();
    });

    std::map<std::string, BoundStats> stats;
    long total_violations = 0;
    for (const auto& per_state : reports) {
        for (const auto& rep : per_state) {
            for (const auto& [name, slack] : rep.slack) {
                BoundStats& bs = stats[name];
                ++bs.evaluated;
                const bool pre = rep.preconditions.at(name);
                if (!pre) continue;
                ++bs.precondition_passed;
                bs.min_slack = std::min(bs.min_slack, slack);
                const bool violated = (rep.mode == bounds::Mode::negative_power)
                                          ? slack <= 0.0
                                          : slack < -tolerance;
                if (violated) {
                    ++bs.violations;
                    ++total_violations;
                }
            }
        }
    }

    std::ostringstream reports_out;
    for (const auto& l : lines) reports_out << l;
    write_text_file(cfg.out_dir + "/reports.jsonl", reports_out.str());

    json summary;
    summary["config"] = json::parse(cfg.to_json_string());
    summary["tolerance"] = tolerance;
    summary["fast_path"] = fast_path_info;
    summary["total_violations"] = total_violations;
    for (const auto& [name, bs] : stats) {
        summary["bounds"][name] = {
            {"evaluated", bs.evaluated},
            {"precondition_passed", bs.precondition_passed},
            {"precondition_pass_rate",
             bs.evaluated ? static_cast<double>(bs.precondition_passed) / bs.evaluated : 0.0},
            {"min_slack", bs.precondition_passed ? json(bs.min_slack) : json()},
            {"violations", bs.violations}};
    }
    write_text_file(cfg.out_dir + "/summary.json", summary.dump(2) + "\n");

    return total_violations == 0 ? exit_ok : exit_violation;
}

std::variant<states::PureState, states::DensityMatrix> load_state_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open state file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("state file parse error: ") + e.what());
    }
    if (!j.contains("dims") || !j.contains("kind") || !j.contains("data"))
        throw std::invalid_argument("state file: required fields are dims, kind, data");
    const auto dims = j["dims"].get<std::vector<std::size_t>>();
    std::size_t d = 1;
    for (std::size_t x : dims) {
        if (x < 2) throw std::invalid_argument("state file: subsystem dimensions must be >= 2");
        d *= x;
    }
    const std::string kind = j["kind"].get<std::string>();
    std::vector<linalg::cplx> entries;
    for (const auto& pair : j["data"]) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("state file: data entries must be [re, im] pairs");
        entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    if (kind == "pure") {
        if (entries.size() != d)
            throw std::invalid_argument("state file: expected " + std::to_string(d) +
                                        " amplitudes, got " + std::to_string(entries.size()));
        states::PureState psi;
        psi.dims = dims;
        psi.amplitudes = std::move(entries);
        psi.validate();
        return psi;
    }
    if (kind == "mixed") {
        if (entries.size() != d * d)
            throw std::invalid_argument("state file: expected " + std::to_string(d * d) +
                                        " matrix entries, got " + std::to_string(entries.size()));
        states::DensityMatrix rho;
        rho.dims = dims;
        rho.matrix = linalg::ComplexMatrix(d, d);
        std::copy(entries.begin(), entries.end(), rho.matrix.data());
        rho.validate();
        return rho;
    }
    throw std::invalid_argument("state file: kind must be \"pure\" or \"mixed\"");
}

int cmd_check(const std::string& state_file, const CheckParams& params) {
    const auto state = load_state_json(state_file);
    const std::size_t n_parties = std::holds_alternative<states::PureState>(state)
                                      ? std::get<states::PureState>(state).dims.size()
                                      : std::get<states::DensityMatrix>(state).dims.size();
    states::PartitionSpec part;
    part.focus = params.focus;
    for (std::size_t i = 0; i < n_parties; ++i)
        if (i != params.focus) part.others.push_back(i);

    bounds::BoundReport rep;
    if (std::holds_alternative<states::PureState>(state)) {
        rep = bounds::evaluate_bounds(std::get<states::PureState>(state), part, params.entropy,
                                      params.tightening, params.mode, params.eval);
    } else {
        rep = bounds::evaluate_bounds(std::get<states::DensityMatrix>(state), part, params.entropy,
                                      params.tightening, params.mode, params.eval);
    }
    std::cout << rep.to_json_string(2) << std::endl;
    return exit_ok;
}

}  // namespace uent::harness
