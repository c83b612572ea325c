#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gquench/analytic.hpp"
#include "gquench/dynamics.hpp"
#include "gquench/fitting.hpp"

namespace gquench {

/// One fully specified simulation run.
struct Scenario {
    std::string name;
    double omega_p0 = 0.0;
    double omega_m0 = 0.0;
    double omega_p1 = 0.0;
    double omega_m1 = 0.0;
    double dt = 1e-3;
    double t_max = 0.0;
    int record_every = 10;
    bool first_step_prequench = false;
    double fit_t_min = 1.0;  ///< samples earlier than this are excluded from the log fit

    std::string csv_path;      ///< empty: "<name>.csv"
    std::string summary_path;  ///< empty: "<name>_summary.txt"
    std::string plot_path;     ///< empty: no plot emitted

    QuenchSchedule schedule() const { return {omega_p0, omega_m0, omega_p1, omega_m1}; }
    void validate() const;
};

/// Parses the scenario configuration grammar:
///   [scenario.NAME]
///   key = value        # comment
/// Unknown keys, missing required keys, and invariant violations raise
/// ConfigError carrying the offending line.
std::vector<Scenario> parse_config(std::istream& in);
std::vector<Scenario> parse_config(const std::string& text);
std::vector<Scenario> load_config(const std::filesystem::path& file);

/// Bundled scenarios covering every frequency combination of the reference
/// plots (fig1a..fig1d, fig2a..fig2d, fig3a..fig3d).
const std::vector<Scenario>& presets();
const Scenario* find_preset(std::string_view name);
/// The presets rendered as a parseable configuration document.
std::string presets_config_text();

/// Recorded trajectory columns, one entry per recorded time.
struct RunTable {
    std::vector<double> t;
    std::vector<double> s_c;            ///< numeric entropy from the evolved covariance
    std::vector<double> s_a;            ///< closed-form entropy at the same times
    std::vector<double> d_reduced;      ///< symplectic eigenvalue of the reduced state
    std::vector<double> purity_defect;  ///< max |e_tau - 1/2| of the full state

    std::size_t size() const { return t.size(); }
    TimeSeries series_sc() const { return {t, s_c}; }
    TimeSeries series_sa() const { return {t, s_a}; }
};

struct RunReport {
    Scenario scenario;  ///< with output paths resolved
    RunTable table;
    double max_purity_defect = 0.0;
    double max_abs_entropy_gap = 0.0;  ///< max_t |S_a - S_c|
    std::optional<double> period_sc_peak, period_sa_peak;
    std::optional<double> period_sc_fourier, period_sa_fourier;
    std::optional<double> period_ratio;  ///< S_a over S_c, peak estimator
    std::optional<FitResult> fit;        ///< log fit of S_c over t >= fit_t_min
};

/// Runs the scenario end to end: evolve, per-sample entropies, CSV + summary
/// (and plot when requested), period and fit diagnostics. Writes are atomic
/// (write-then-rename). Relative output paths are placed under the directory
/// named by the GQUENCH_OUT_DIR environment variable when it is set. On a
/// numeric failure a "<csv>.partial" marker naming the error is left behind
/// and the exception propagates.
RunReport run_scenario(const Scenario& scenario);

/// Computes the same report without touching the filesystem.
RunReport run_scenario_in_memory(const Scenario& scenario);

/// CSV document with header "t,S_c,S_a,d_reduced,purity_defect", 12
/// significant digits, line-feed terminators.
std::string format_run_csv(const RunTable& table);
std::string format_summary(const RunReport& report);

/// Parses a document produced by format_run_csv. Throws ConfigError on a
/// malformed document or missing column.
RunTable read_run_csv(const std::filesystem::path& file);

/// write-then-rename so concurrent writers never interleave
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace gquench
