#include "gquench/scenario.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "gquench/entropy.hpp"
#include "gquench/plot.hpp"

namespace gquench {

namespace {

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

} // namespace

void Scenario::validate() const {
    if (name.empty()) throw std::domain_error("scenario name must not be empty");
    schedule().validate();
    if (!(dt > 0.0)) throw std::domain_error("dt must be positive");
    if (!(t_max >= 10.0 * dt)) throw std::domain_error("t_max must be at least 10*dt");
    if (record_every < 1) throw std::domain_error("record_every must be >= 1");
    if (!(fit_t_min >= 0.0)) throw std::domain_error("fit_t_min must be non-negative");
}

namespace {

const char* const kScenarioKeys[] = {
    "omega_p0", "omega_m0", "omega_p1", "omega_m1", "dt",     "t_max",
    "record_every", "first_step_prequench", "fit_t_min", "csv", "summary", "plot",
};

bool known_key(const std::string& key) {
    for (const char* k : kScenarioKeys) {
        if (key == k) return true;
    }
    return false;
}

double parse_double(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects a number, got '" + value + "'", line);
    }
}

int parse_int(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects an integer, got '" + value + "'", line);
    }
}

bool parse_bool(const std::string& value, const std::string& key, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("key '" + key + "' expects true/false, got '" + value + "'", line);
}

struct PendingScenario {
    Scenario scenario;
    int header_line = 0;
    std::map<std::string, int> seen;  // key -> line

    bool has(const char* key) const { return seen.count(key) > 0; }
};

void apply_key(PendingScenario& pending, const std::string& key, const std::string& value,
               int line) {
    if (!known_key(key)) {
        throw ConfigError("unknown key '" + key + "'", line);
    }
    if (pending.seen.count(key)) {
        throw ConfigError("duplicate key '" + key + "' (first set on line " +
                              std::to_string(pending.seen[key]) + ")",
                          line);
    }
    pending.seen[key] = line;

    Scenario& s = pending.scenario;
    if (key == "omega_p0") s.omega_p0 = parse_double(value, key, line);
    else if (key == "omega_m0") s.omega_m0 = parse_double(value, key, line);
    else if (key == "omega_p1") s.omega_p1 = parse_double(value, key, line);
    else if (key == "omega_m1") s.omega_m1 = parse_double(value, key, line);
    else if (key == "dt") s.dt = parse_double(value, key, line);
    else if (key == "t_max") s.t_max = parse_double(value, key, line);
    else if (key == "record_every") s.record_every = parse_int(value, key, line);
    else if (key == "first_step_prequench") s.first_step_prequench = parse_bool(value, key, line);
    else if (key == "fit_t_min") s.fit_t_min = parse_double(value, key, line);
    else if (key == "csv") s.csv_path = value;
    else if (key == "summary") s.summary_path = value;
    else if (key == "plot") s.plot_path = value;
}

void finish_scenario(PendingScenario& pending, std::vector<Scenario>& out) {
    for (const char* required : {"omega_p0", "omega_m0", "omega_p1", "omega_m1", "t_max"}) {
        if (!pending.has(required)) {
            throw ConfigError("scenario '" + pending.scenario.name + "' is missing required key '" +
                                  required + "'",
                              pending.header_line);
        }
    }
    try {
        pending.scenario.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError("scenario '" + pending.scenario.name + "': " + e.what(),
                          pending.header_line);
    }
    for (const Scenario& existing : out) {
        if (existing.name == pending.scenario.name) {
            throw ConfigError("duplicate scenario name '" + pending.scenario.name + "'",
                              pending.header_line);
        }
    }
    out.push_back(pending.scenario);
}

} // namespace

std::vector<Scenario> parse_config(std::istream& in) {
    std::vector<Scenario> out;
    std::optional<PendingScenario> pending;
    std::string raw;
    int line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            const std::string section = trim(line.substr(1, line.size() - 2));
            constexpr std::string_view prefix = "scenario.";
            if (section.rfind(prefix, 0) != 0 || section.size() == prefix.size()) {
                throw ConfigError("expected section header [scenario.NAME]", line_no);
            }
            if (pending) finish_scenario(*pending, out);
            pending.emplace();
            pending->scenario.name = section.substr(prefix.size());
            pending->header_line = line_no;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'", line_no);
        }
        if (!pending) {
            throw ConfigError("key outside of a [scenario.NAME] section", line_no);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        apply_key(*pending, key, value, line_no);
    }
    if (pending) finish_scenario(*pending, out);
    if (out.empty()) throw ConfigError("configuration defines no scenarios");
    return out;
}

std::vector<Scenario> parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::vector<Scenario> load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file: " + file.string());
    return parse_config(in);
}

namespace {

Scenario make_preset(std::string name, double wp0, double wm0, double wp1, double wm1,
                     double t_max) {
    Scenario s;
    s.name = std::move(name);
    s.omega_p0 = wp0;
    s.omega_m0 = wm0;
    s.omega_p1 = wp1;
    s.omega_m1 = wm1;
    s.t_max = t_max;
    return s;
}

} // namespace

const std::vector<Scenario>& presets() {
    static const std::vector<Scenario> list = {
        // one quench family, decreasing final frequencies
        make_preset("fig1a", 0.9, 4.9, 0.17, 4.17, 100.0),
        make_preset("fig1b", 0.9, 4.9, 0.12, 4.12, 100.0),
        make_preset("fig1c", 0.9, 4.9, 0.07, 4.07, 100.0),
        make_preset("fig1d", 0.9, 4.9, 0.01, 4.01, 100.0),
        // varied initial frequencies
        make_preset("fig2a", 0.94, 2.6, 0.04, 0.05, 100.0),
        make_preset("fig2b", 1.02, 4.6, 0.03, 0.04, 100.0),
        make_preset("fig2c", 0.186, 0.396, 1.49, 1.5, 100.0),
        make_preset("fig2d", 4.33, 4.49, 0.412, 0.423, 100.0),
        // long-time runs of the same combinations for the growth fits
        make_preset("fig3a", 0.94, 2.6, 0.04, 0.05, 200.0),
        make_preset("fig3b", 1.02, 4.6, 0.03, 0.04, 200.0),
        make_preset("fig3c", 0.186, 0.396, 1.49, 1.5, 200.0),
        make_preset("fig3d", 4.33, 4.49, 0.412, 0.423, 200.0),
    };
    return list;
}

const Scenario* find_preset(std::string_view name) {
    for (const Scenario& s : presets()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::string presets_config_text() {
    std::ostringstream out;
    out << "# bundled scenarios\n";
    for (const Scenario& s : presets()) {
        out << "\n[scenario." << s.name << "]\n";
        out << "omega_p0 = " << g12(s.omega_p0) << "\n";
        out << "omega_m0 = " << g12(s.omega_m0) << "\n";
        out << "omega_p1 = " << g12(s.omega_p1) << "\n";
        out << "omega_m1 = " << g12(s.omega_m1) << "\n";
        out << "t_max = " << g12(s.t_max) << "\n";
    }
    return out.str();
}

namespace {

std::filesystem::path resolve_output_path(const std::string& configured,
                                          const std::string& fallback) {
    std::filesystem::path path = configured.empty() ? fallback : configured;
    if (path.is_relative()) {
        if (const char* dir = std::getenv("GQUENCH_OUT_DIR"); dir != nullptr && *dir != '\0') {
            path = std::filesystem::path(dir) / path;
        }
    }
    return path;
}

std::optional<double> try_period(const TimeSeries& series, PeriodMethod method) {
    try {
        return estimate_period(series, method);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

} // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string format_run_csv(const RunTable& table) {
    std::string out = "t,S_c,S_a,d_reduced,purity_defect\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        out += g12(table.t[i]);
        out += ',';
        out += g12(table.s_c[i]);
        out += ',';
        out += g12(table.s_a[i]);
        out += ',';
        out += g12(table.d_reduced[i]);
        out += ',';
        out += g12(table.purity_defect[i]);
        out += '\n';
    }
    return out;
}

RunTable read_run_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open CSV file: " + file.string());
    std::string header;
    if (!std::getline(in, header)) throw ConfigError("empty CSV file: " + file.string());
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != "t,S_c,S_a,d_reduced,purity_defect") {
        throw ConfigError("unexpected CSV header '" + header + "' in " + file.string());
    }
    RunTable table;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::array<double, 5> row{};
        std::istringstream ls(line);
        std::string cell;
        for (std::size_t c = 0; c < 5; ++c) {
            if (!std::getline(ls, cell, ',')) {
                throw ConfigError("missing column in CSV row", line_no);
            }
            row[c] = parse_double(trim(cell), "column " + std::to_string(c + 1), line_no);
        }
        table.t.push_back(row[0]);
        table.s_c.push_back(row[1]);
        table.s_a.push_back(row[2]);
        table.d_reduced.push_back(row[3]);
        table.purity_defect.push_back(row[4]);
    }
    return table;
}

namespace {

std::string opt_to_string(const std::optional<double>& v) {
    return v ? g12(*v) : "n/a";
}

} // namespace

std::string format_summary(const RunReport& report) {
    const Scenario& s = report.scenario;
    std::ostringstream out;
    out << "scenario = " << s.name << "\n";
    out << "omega_p0 = " << g12(s.omega_p0) << "\n";
    out << "omega_m0 = " << g12(s.omega_m0) << "\n";
    out << "omega_p1 = " << g12(s.omega_p1) << "\n";
    out << "omega_m1 = " << g12(s.omega_m1) << "\n";
    out << "dt = " << g12(s.dt) << "\n";
    out << "t_max = " << g12(s.t_max) << "\n";
    out << "record_every = " << s.record_every << "\n";
    out << "first_step_prequench = " << (s.first_step_prequench ? "true" : "false") << "\n";
    out << "samples = " << report.table.size() << "\n";
    out << "initial_entropy = " << g12(static_entropy(s.omega_p0, s.omega_m0).entropy) << "\n";
    out << "max_purity_defect = " << g12(report.max_purity_defect) << "\n";
    out << "max_abs_entropy_gap = " << g12(report.max_abs_entropy_gap) << "\n";
    out << "period_Sc_peak = " << opt_to_string(report.period_sc_peak) << "\n";
    out << "period_Sa_peak = " << opt_to_string(report.period_sa_peak) << "\n";
    out << "period_Sc_fourier = " << opt_to_string(report.period_sc_fourier) << "\n";
    out << "period_Sa_fourier = " << opt_to_string(report.period_sa_fourier) << "\n";
    out << "period_ratio_Sa_over_Sc = " << opt_to_string(report.period_ratio) << "\n";
    out << "fit_window_t_min = " << g12(s.fit_t_min) << "\n";
    if (report.fit) {
        out << "fit_u = " << g12(report.fit->u) << "\n";
        out << "fit_w = " << g12(report.fit->w) << "\n";
        out << "fit_z = " << g12(report.fit->z) << "\n";
        out << "fit_r2_adj = "
            << (std::isfinite(report.fit->r2_adj) ? g12(report.fit->r2_adj) : "n/a") << "\n";
        out << "fit_degenerate = " << (report.fit->degenerate ? "true" : "false") << "\n";
    } else {
        out << "fit_u = n/a\n";
    }
    return out.str();
}

RunReport run_scenario_in_memory(const Scenario& scenario) {
    scenario.validate();
    RunReport report;
    report.scenario = scenario;

    const QuenchSchedule schedule = scenario.schedule();
    const std::vector<GaussianState> states =
        evolve(schedule, scenario.dt, scenario.t_max, scenario.record_every,
               scenario.first_step_prequench);

    RunTable& table = report.table;
    table.t.reserve(states.size());
    for (const GaussianState& state : states) {
        const ReducedCovariance reduced = reduce_to_oscillator(state, 1);
        const double sc = entanglement_entropy(reduced);
        const double sa = analytic_entropy(schedule, state.t);
        table.t.push_back(state.t);
        table.s_c.push_back(sc);
        table.s_a.push_back(sa);
        table.d_reduced.push_back(reduced.symplectic_eigenvalue());
        table.purity_defect.push_back(purity_defect(state));
        report.max_purity_defect = std::max(report.max_purity_defect, table.purity_defect.back());
        report.max_abs_entropy_gap = std::max(report.max_abs_entropy_gap, std::abs(sa - sc));
    }

    const TimeSeries sc_series = table.series_sc();
    const TimeSeries sa_series = table.series_sa();
    report.period_sc_peak = try_period(sc_series, PeriodMethod::peak_spacing);
    report.period_sa_peak = try_period(sa_series, PeriodMethod::peak_spacing);
    report.period_sc_fourier = try_period(sc_series, PeriodMethod::fourier);
    report.period_sa_fourier = try_period(sa_series, PeriodMethod::fourier);
    if (report.period_sc_peak && report.period_sa_peak && *report.period_sc_peak > 0.0) {
        report.period_ratio = *report.period_sa_peak / *report.period_sc_peak;
    }

    const TimeSeries fit_window = tail_from(sc_series, scenario.fit_t_min);
    try {
        FitResult fit = fit_log_model(fit_window, FitMode::fix_z_zero);
        try {
            fit.r2_adj = adjusted_r_squared(fit_window, fit);
        } catch (const std::domain_error&) {
            fit.r2_adj = std::numeric_limits<double>::quiet_NaN();
        }
        report.fit = fit;
    } catch (const std::domain_error&) {
        report.fit = std::nullopt;
    }
    return report;
}

RunReport run_scenario(const Scenario& scenario) {
    scenario.validate();
    Scenario resolved = scenario;
    resolved.csv_path = resolve_output_path(scenario.csv_path, scenario.name + ".csv").string();
    resolved.summary_path =
        resolve_output_path(scenario.summary_path, scenario.name + "_summary.txt").string();
    if (!scenario.plot_path.empty()) {
        resolved.plot_path = resolve_output_path(scenario.plot_path, "").string();
    }

    try {
        RunReport report = run_scenario_in_memory(resolved);
        report.scenario = resolved;
        write_file_atomic(resolved.csv_path, format_run_csv(report.table));
        write_file_atomic(resolved.summary_path, format_summary(report));
        if (!resolved.plot_path.empty()) {
            PlotOptions opts;
            opts.title = resolved.name;
            opts.fit_overlay = report.fit.has_value();
            opts.fit_t_min = resolved.fit_t_min;
            write_file_atomic(resolved.plot_path, render_svg(report.table, opts));
        }
        return report;
    } catch (const std::exception& e) {
        // leave a marker so batch runs can tell aborted scenarios apart
        try {
            write_file_atomic(resolved.csv_path + ".partial",
                              std::string("scenario aborted: ") + e.what() + "\n");
        } catch (...) {
            // the marker is best-effort
        }
        throw;
    }
}

} // namespace gquench
