// gquench - covariance-matrix simulator for a quenched pair of coupled
// oscillators, with closed-form cross-validation of the entanglement entropy.

#include <atomic>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gquench/plot.hpp"
#include "gquench/scenario.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

struct ScenarioOutcome {
    std::string name;
    bool ok = false;
    std::string message;
};

int run_command(const std::string& config_file, const std::string& only_scenario, int jobs) {
    std::vector<gquench::Scenario> scenarios;
    try {
        scenarios = gquench::load_config(config_file);
    } catch (const gquench::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    if (!only_scenario.empty()) {
        std::erase_if(scenarios,
                      [&](const gquench::Scenario& s) { return s.name != only_scenario; });
        if (scenarios.empty()) {
            std::cerr << "config error: no scenario named '" << only_scenario << "'\n";
            return kExitConfigError;
        }
    }

    std::vector<ScenarioOutcome> outcomes(scenarios.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(scenarios.size())));

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= scenarios.size()) break;
            outcomes[i].name = scenarios[i].name;
            try {
                const gquench::RunReport report = gquench::run_scenario(scenarios[i]);
                outcomes[i].ok = true;
                outcomes[i].message = report.scenario.csv_path;
            } catch (const std::exception& e) {
                outcomes[i].ok = false;
                outcomes[i].message = e.what();
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    bool any_failed = false;
    for (const ScenarioOutcome& o : outcomes) {
        if (o.ok) {
            std::cout << "[ok]     " << o.name << " -> " << o.message << "\n";
        } else {
            any_failed = true;
            std::cerr << "[failed] " << o.name << ": " << o.message << "\n";
        }
    }
    return any_failed ? kExitNumericError : 0;
}

int presets_command(bool list, const std::string& write_path) {
    if (list) {
        std::printf("%-8s %8s %8s %8s %8s %8s\n", "name", "omega_p0", "omega_m0", "omega_p1",
                    "omega_m1", "t_max");
        for (const gquench::Scenario& s : gquench::presets()) {
            std::printf("%-8s %8g %8g %8g %8g %8g\n", s.name.c_str(), s.omega_p0, s.omega_m0,
                        s.omega_p1, s.omega_m1, s.t_max);
        }
    }
    if (!write_path.empty()) {
        if (write_path == "-") {
            std::cout << gquench::presets_config_text();
        } else {
            gquench::write_file_atomic(write_path, gquench::presets_config_text());
            std::cout << "wrote " << write_path << "\n";
        }
    }
    return 0;
}

int plot_command(const std::string& csv, const std::string& out, bool fit,
                 const std::string& title) {
    gquench::PlotOptions options;
    options.fit_overlay = fit;
    options.title = title;
    gquench::emit_plot(csv, out, options);
    std::cout << "wrote " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-state quench simulator for two coupled oscillators"};
    app.require_subcommand(1);

    std::string config_file;
    std::string only_scenario;
    int jobs = 1;
    CLI::App* run = app.add_subcommand("run", "run scenarios from a configuration file");
    run->add_option("config", config_file, "configuration file")->required();
    run->add_option("--scenario", only_scenario, "run only the named scenario");
    run->add_option("--jobs", jobs, "number of parallel scenario workers")
        ->check(CLI::PositiveNumber);

    bool list = false;
    std::string write_path;
    CLI::App* presets = app.add_subcommand("presets", "list or export the bundled scenarios");
    presets->add_flag("--list", list, "print the preset table");
    presets->add_option("--write", write_path, "write the presets as a config file ('-' = stdout)");

    std::string csv;
    std::string out;
    std::string title;
    bool fit = false;
    CLI::App* plot = app.add_subcommand("plot", "render a run CSV as an SVG image");
    plot->add_option("csv", csv, "input CSV produced by 'run'")->required();
    plot->add_option("--out", out, "output SVG path")->required();
    plot->add_flag("--fit", fit, "add a panel with the fitted logarithmic curve");
    plot->add_option("--title", title, "plot title");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(config_file, only_scenario, jobs);
        if (presets->parsed()) return presets_command(list || write_path.empty(), write_path);
        if (plot->parsed()) return plot_command(csv, out, fit, title);
    } catch (const gquench::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
    return 0;
}
