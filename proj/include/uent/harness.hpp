#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "uent/bounds.hpp"

namespace uent::harness {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numeric = 3;

struct CampaignConfig {
    int n_states = 1000;
    int n_qubits = 3;
    double q = 2.0;
    double s = 1.0;
    std::vector<double> exponents;
    double k = 0.75;
    double delta = 1.0;
    std::uint64_t seed = 1;
    bounds::Mode mode = bounds::Mode::monogamy;
    std::string out_dir = "campaign-out";
    int threads = 0;  // 0: hardware concurrency
    int fast_path_states = 200;  // size of the one-time fast-path validation
    measures::RoofOptions roof;

    void validate() const;
    std::string to_json_string(int indent = -1) const;
    static CampaignConfig from_json_file(const std::string& path);
};

struct SweepRow {
    double x = 0.0;
    double lhs = 0.0;
    double tight = 0.0;     // this work's bound
    double baseline = 0.0;  // prior Hamming-weight bound
};

// Fig. 1 reproduction: alpha sweep of the worked three-qubit example, CSV +
// SVG + an audit JSON comparing the tabulated pair value against the
// convex-roof computation.
int cmd_example1(double alpha_max, int steps, const std::string& out_dir,
                 const measures::RoofOptions& roof = {}, bool with_audit = true);

// Fig. 2 reproduction: beta sweep, CSV + SVG.
int cmd_example2(double beta_min, int steps, const std::string& out_dir);

int cmd_campaign(const CampaignConfig& cfg);

struct CheckParams {
    std::size_t focus = 0;
    entropy::EntropyParams entropy{2.0, 1.0};
    bounds::TighteningParams tightening;
    bounds::Mode mode = bounds::Mode::monogamy;
    bounds::EvaluationOptions eval;
};

int cmd_check(const std::string& state_file, const CheckParams& params);

// {"dims": [...], "kind": "pure"|"mixed", "data": [[re, im], ...]}
std::variant<states::PureState, states::DensityMatrix> load_state_json(const std::string& path);

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

struct Curve {
    std::string label;
    std::string stroke;      // CSS color
    std::string dash;        // stroke-dasharray, empty for solid
    std::vector<std::pair<double, double>> points;
};

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<Curve>& curves);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace uent::harness
