// Acceptance suite: one check per release criterion, one printed line each.
// Usage: gquench_acceptance [N ...]   (defaults to all criteria)

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gquench/analytic.hpp"
#include "gquench/dynamics.hpp"
#include "gquench/entropy.hpp"
#include "gquench/fitting.hpp"
#include "gquench/scenario.hpp"

using namespace gquench;

namespace {

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, const char* spec = "%.3g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

const RunReport& cached_run(const std::string& preset_name) {
    static std::map<std::string, RunReport> cache;
    auto it = cache.find(preset_name);
    if (it == cache.end()) {
        const Scenario* preset = find_preset(preset_name);
        if (preset == nullptr) throw std::runtime_error("unknown preset " + preset_name);
        it = cache.emplace(preset_name, run_scenario_in_memory(*preset)).first;
    }
    return it->second;
}

// 1. symplectic spectrum of the constructed ground state is (1/2, 1/2)
CriterionResult ground_state_purity() {
    std::mt19937 rng(20240101u);
    std::uniform_real_distribution<double> freq(0.1, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const StiffnessParams params = stiffness_from_frequencies(freq(rng), freq(rng));
        const SymplecticSpectrum spec = symplectic_spectrum(build_initial_covariance(params));
        worst = std::max({worst, std::abs(spec.e1 - 0.5), std::abs(spec.e2 - 0.5)});
    }
    return {worst <= 1e-12, "max |e - 1/2| = " + fmt(worst) + " over 100 draws (tol 1e-12)"};
}

// 2. covariance route, closed-form route, and static formula agree at t = 0
CriterionResult triple_equality_t0() {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double wp = 0.1 + i * (4.9 / 9.0);
            const double wm = 0.1 + j * (4.9 / 9.0);
            const double s_static = static_entropy(wp, wm).entropy;
            const GaussianState ground = build_initial_covariance(stiffness_from_frequencies(wp, wm));
            const double s_cov = entanglement_entropy(reduce_to_oscillator(ground, 1));
            const double s_analytic = analytic_entropy({wp, wm, 1.0, 2.0}, 0.0);
            worst = std::max({worst, std::abs(s_cov - s_static), std::abs(s_analytic - s_static),
                              std::abs(s_cov - s_analytic)});
        }
    }
    return {worst <= 1e-8, "max pairwise gap = " + fmt(worst) + " on the 10x10 grid (tol 1e-8)"};
}

// 3. purity is preserved over the full evolution of the first preset family
CriterionResult purity_preservation() {
    double worst = 0.0;
    std::string worst_name;
    for (const char* name : {"fig1a", "fig1b", "fig1c", "fig1d"}) {
        const RunReport& report = cached_run(name);
        if (report.max_purity_defect > worst) {
            worst = report.max_purity_defect;
            worst_name = name;
        }
    }
    return {worst <= 1e-6,
            "max purity defect = " + fmt(worst) + " (" + worst_name + ", tol 1e-6)"};
}

// 4. diagonalized reduced kernel reproduces the closed-form entropy
CriterionResult kernel_entropy_oracle() {
    const double wp = 0.9, wm = 4.9;
    const StaticEntropyResult stat = static_entropy(wp, wm);

    const int n = 400;
    const double box = 8.0 / std::sqrt(wp);
    const double dx = 2.0 * box / (n - 1);
    const double prefactor = std::sqrt(2.0 / M_PI * wm * wp / (wm + wp));
    Eigen::MatrixXd kernel(n, n);
    for (int i = 0; i < n; ++i) {
        const double x = -box + i * dx;
        for (int j = 0; j <= i; ++j) {
            const double y = -box + j * dx;
            const double value =
                prefactor *
                std::exp(x * y * stat.theta10 - 0.5 * (x * x + y * y) * stat.theta20) * dx;
            kernel(i, j) = kernel(j, i) = value;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel);
    double entropy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double p = solver.eigenvalues()(i);
        if (p > 1e-14) entropy -= p * std::log(p);
    }
    const double gap = std::abs(entropy - stat.entropy);
    return {gap <= 1e-3, "kernel entropy = " + fmt(entropy, "%.6f") + " vs closed form " +
                             fmt(stat.entropy, "%.6f") + ", gap " + fmt(gap) + " (tol 1e-3)"};
}

// 5. integrated scale-factor equation matches the closed form for both modes
CriterionResult ermakov_closed_form() {
    double worst = 0.0;
    for (const char* name : {"fig1a", "fig1b", "fig1c", "fig1d"}) {
        const Scenario* preset = find_preset(name);
        const QuenchCoefficients coeffs = quench_coefficients(preset->schedule());
        const struct {
            ModeCoefficients c;
            double w0, w1;
        } modes[2] = {{coeffs.p, preset->omega_p0, preset->omega_p1},
                      {coeffs.m, preset->omega_m0, preset->omega_m1}};
        for (const auto& mode : modes) {
            const auto samples =
                ermakov_integrate([&](double) { return mode.w1; }, mode.w0, 1e-3, 50.0);
            for (const ErmakovSample& s : samples) {
                const GammaValue closed = quench_gamma(mode.c, mode.w1, s.t);
                worst = std::max(worst, std::abs(s.gamma - closed.gamma));
                worst = std::max(worst, std::abs(s.gamma_dot - closed.gamma_dot));
            }
        }
    }
    return {worst <= 1e-6, "sup-norm ODE vs closed form = " + fmt(worst) + " (tol 1e-6)"};
}

// 6. reported period ratio ~ 2.3 for fig1a; fig1b ratio closer to 1
CriterionResult period_ratio() {
    const RunReport& a = cached_run("fig1a");
    const RunReport& b = cached_run("fig1b");
    if (!a.period_ratio || !b.period_ratio) {
        return {false, "period estimation failed"};
    }
    const double ra = *a.period_ratio;
    const double rb = *b.period_ratio;
    const bool in_band = ra >= 2.0 && ra <= 2.6;
    const bool closer = std::abs(rb - 1.0) < std::abs(ra - 1.0);
    return {in_band && closer, "fig1a ratio = " + fmt(ra, "%.4f") + " (required [2.0, 2.6]), " +
                                   "fig1b ratio = " + fmt(rb, "%.4f") +
                                   (closer ? " (closer to 1)" : " (not closer to 1)")};
}

// 7. fig1b shows the smallest |S_a - S_c| among the first preset family
CriterionResult best_approximation_ordering() {
    std::string best;
    double best_gap = 0.0;
    std::string detail;
    for (const char* name : {"fig1a", "fig1b", "fig1c", "fig1d"}) {
        const RunReport& report = cached_run(name);
        double gap = 0.0;
        for (std::size_t i = 0; i < report.table.size(); ++i) {
            if (report.table.t[i] <= 83.0) {
                gap = std::max(gap, std::abs(report.table.s_a[i] - report.table.s_c[i]));
            }
        }
        if (best.empty() || gap < best_gap) {
            best = name;
            best_gap = gap;
        }
        detail += std::string(name) + "=" + fmt(gap) + " ";
    }
    return {best == "fig1b", "max|S_a-S_c| over t<=83: " + detail + "-> min at " + best +
                                 " (required fig1b)"};
}

// 8. long runs grow logarithmically: adjusted R^2 >= 0.85, u near 1 for a/b
CriterionResult logarithmic_growth() {
    bool pass = true;
    std::string detail;
    for (const char* name : {"fig3a", "fig3b", "fig3c", "fig3d"}) {
        const RunReport& report = cached_run(name);
        if (!report.fit) {
            return {false, std::string(name) + ": fit unavailable"};
        }
        const double r2 = report.fit->r2_adj;
        const double u = report.fit->u;
        if (!(r2 >= 0.85)) pass = false;
        const bool check_u = (std::string(name) == "fig3a" || std::string(name) == "fig3b");
        if (check_u && !(std::abs(u - 1.0) <= 0.25)) pass = false;
        detail += std::string(name) + ": u=" + fmt(u, "%.3f") + " w=" + fmt(report.fit->w, "%.3f") +
                  " R2adj=" + fmt(r2, "%.4f") + "  ";
    }
    return {pass, detail + "(required R2adj >= 0.85 all, |u-1| <= 0.25 for a/b)"};
}

// 9. step-halving shows fourth-order convergence of the covariance
CriterionResult integrator_order() {
    const Scenario* preset = find_preset("fig1a");
    const QuenchSchedule schedule = preset->schedule();
    const auto final_cov = [&](double dt) {
        return evolve(schedule, dt, 10.0, 1 << 30).back().cov;
    };
    const Mat4 c1 = final_cov(0.02);
    const Mat4 c2 = final_cov(0.01);
    const Mat4 c3 = final_cov(0.005);
    const double e1 = (c1 - c2).cwiseAbs().maxCoeff();
    const double e2 = (c2 - c3).cwiseAbs().maxCoeff();
    const double order = std::log2(e1 / e2);
    return {order >= 3.7, "observed convergence order = " + fmt(order, "%.2f") +
                              " at t = 10 (required >= 3.7)"};
}

// 10. identical scenario produces byte-identical CSV
CriterionResult determinism() {
    const Scenario* preset = find_preset("fig1a");
    const std::string first = format_run_csv(run_scenario_in_memory(*preset).table);
    const std::string second = format_run_csv(run_scenario_in_memory(*preset).table);
    const bool equal = first == second;
    return {equal, equal ? "two fresh fig1a runs produced identical CSV bytes ("
                               + std::to_string(first.size()) + " bytes)"
                         : "CSV bytes differ between reruns"};
}

struct Criterion {
    const char* name;
    std::function<CriterionResult()> run;
};

const Criterion kCriteria[] = {
    {"ground-state purity", ground_state_purity},
    {"triple equality at t = 0", triple_equality_t0},
    {"purity preservation under evolution", purity_preservation},
    {"independent kernel oracle for the static entropy", kernel_entropy_oracle},
    {"scale-factor ODE vs closed form", ermakov_closed_form},
    {"period-ratio reproduction", period_ratio},
    {"best-approximation ordering", best_approximation_ordering},
    {"logarithmic growth of the long runs", logarithmic_growth},
    {"integrator convergence order", integrator_order},
    {"determinism of scenario output", determinism},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--list") {
            for (std::size_t k = 0; k < std::size(kCriteria); ++k) {
                std::printf("%2zu  %s\n", k + 1, kCriteria[k].name);
            }
            return 0;
        }
        selected.push_back(std::atoi(argv[i]));
    }
    if (selected.empty()) {
        for (std::size_t k = 1; k <= std::size(kCriteria); ++k) {
            selected.push_back(static_cast<int>(k));
        }
    }

    int failures = 0;
    for (int index : selected) {
        if (index < 1 || index > static_cast<int>(std::size(kCriteria))) {
            std::fprintf(stderr, "no criterion %d\n", index);
            return 64;
        }
        const Criterion& criterion = kCriteria[static_cast<std::size_t>(index - 1)];
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %-48s %s  [%.2f s]\n", result.pass ? "PASS" : "FAIL",
                    index, criterion.name, result.detail.c_str(), secs);
        if (!result.pass) ++failures;
    }
    return failures;
}
