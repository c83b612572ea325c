#include "gquench/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "gquench/fitting.hpp"
#include "gquench/scenario.hpp"

namespace gquench {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad(double frac) {
        const double span = hi - lo;
        const double p = (span > 0.0) ? frac * span : 1.0;
        lo -= p;
        hi += p;
    }
};

/// Tick step of the form {1, 2, 5} * 10^k giving roughly `target` divisions.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mult * mag >= raw) return mult * mag;
    }
    return 10.0 * mag;
}

struct Panel {
    double x0, y0, w, h;  // plot area in svg coordinates
    Range xr, yr;

    double sx(double x) const { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * w; }
    double sy(double y) const { return y0 + h - (y - yr.lo) / (yr.hi - yr.lo) * h; }
};

void draw_axes(std::ostringstream& svg, const Panel& p, const std::string& xlabel,
               const std::string& ylabel, const std::string& title) {
    svg << "<rect x='" << p.x0 << "' y='" << p.y0 << "' width='" << p.w << "' height='" << p.h
        << "' fill='white' stroke='#444' stroke-width='1'/>\n";

    const double xstep = nice_step(p.xr.hi - p.xr.lo, 8);
    for (double x = std::ceil(p.xr.lo / xstep) * xstep; x <= p.xr.hi + 1e-12 * xstep; x += xstep) {
        const double px = p.sx(x);
        svg << "<line x1='" << fmt(px, "%.2f") << "' y1='" << p.y0 + p.h << "' x2='"
            << fmt(px, "%.2f") << "' y2='" << p.y0 + p.h + 5 << "' stroke='#444'/>\n";
        svg << "<text x='" << fmt(px, "%.2f") << "' y='" << p.y0 + p.h + 20
            << "' font-size='12' text-anchor='middle'>" << fmt(x) << "</text>\n";
    }
    const double ystep = nice_step(p.yr.hi - p.yr.lo, 6);
    for (double y = std::ceil(p.yr.lo / ystep) * ystep; y <= p.yr.hi + 1e-12 * ystep; y += ystep) {
        const double py = p.sy(y);
        svg << "<line x1='" << p.x0 - 5 << "' y1='" << fmt(py, "%.2f") << "' x2='" << p.x0
            << "' y2='" << fmt(py, "%.2f") << "' stroke='#444'/>\n";
        svg << "<text x='" << p.x0 - 9 << "' y='" << fmt(py + 4, "%.2f")
            << "' font-size='12' text-anchor='end'>" << fmt(y) << "</text>\n";
    }
    svg << "<text x='" << p.x0 + p.w / 2 << "' y='" << p.y0 + p.h + 38
        << "' font-size='14' text-anchor='middle'>" << xlabel << "</text>\n";
    svg << "<text x='" << p.x0 - 48 << "' y='" << p.y0 + p.h / 2
        << "' font-size='14' text-anchor='middle' transform='rotate(-90 " << p.x0 - 48 << " "
        << p.y0 + p.h / 2 << ")'>" << ylabel << "</text>\n";
    if (!title.empty()) {
        svg << "<text x='" << p.x0 + p.w / 2 << "' y='" << p.y0 - 10
            << "' font-size='15' text-anchor='middle' font-weight='bold'>" << title
            << "</text>\n";
    }
}

void draw_curve(std::ostringstream& svg, const Panel& p, const std::vector<double>& xs,
                const std::vector<double>& ys, const std::string& color, bool dashed = false) {
    const std::size_t n = xs.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 2400);
    svg << "<polyline fill='none' stroke='" << color << "' stroke-width='1.3'";
    if (dashed) svg << " stroke-dasharray='7,4'";
    svg << " points='";
    for (std::size_t i = 0; i < n; i += stride) {
        svg << fmt(p.sx(xs[i]), "%.2f") << ',' << fmt(p.sy(ys[i]), "%.2f") << ' ';
    }
    if ((n - 1) % stride != 0) {
        svg << fmt(p.sx(xs[n - 1]), "%.2f") << ',' << fmt(p.sy(ys[n - 1]), "%.2f");
    }
    svg << "'/>\n";
}

void draw_legend_entry(std::ostringstream& svg, double x, double y, const std::string& color,
                       const std::string& label, bool dashed = false) {
    svg << "<line x1='" << x << "' y1='" << y << "' x2='" << x + 26 << "' y2='" << y
        << "' stroke='" << color << "' stroke-width='2'"
        << (dashed ? " stroke-dasharray='7,4'" : "") << "/>\n";
    svg << "<text x='" << x + 32 << "' y='" << y + 4 << "' font-size='13'>" << label
        << "</text>\n";
}

} // namespace

std::string render_svg(const RunTable& table, const PlotOptions& options) {
    if (table.size() == 0) {
        throw ConfigError("cannot render plot: the series is empty");
    }

    const int panels = options.fit_overlay ? 2 : 1;
    const double margin_l = 70, margin_r = 20, margin_t = 46, margin_b = 56;
    const double total_w = options.width;
    const double total_h = options.height * panels;

    std::ostringstream svg;
    svg << "<?xml version='1.0' encoding='UTF-8'?>\n";
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << total_w << "' height='" << total_h
        << "' viewBox='0 0 " << total_w << ' ' << total_h << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";

    Panel top;
    top.x0 = margin_l;
    top.y0 = margin_t;
    top.w = total_w - margin_l - margin_r;
    top.h = options.height - margin_t - margin_b;
    top.xr = {table.t.front(), table.t.back()};
    top.yr = {table.s_c.front(), table.s_c.front()};
    for (std::size_t i = 0; i < table.size(); ++i) {
        top.yr.include(table.s_c[i]);
        top.yr.include(table.s_a[i]);
    }
    top.yr.pad(0.06);

    draw_axes(svg, top, "t", "S (nats)",
              options.title.empty() ? "entanglement entropy" : options.title);
    draw_curve(svg, top, table.t, table.s_a, "#d62728");
    draw_curve(svg, top, table.t, table.s_c, "#1f77b4");
    draw_legend_entry(svg, top.x0 + top.w - 150, top.y0 + 16, "#1f77b4", "S_c (numeric)");
    draw_legend_entry(svg, top.x0 + top.w - 150, top.y0 + 34, "#d62728", "S_a (analytic)");

    if (options.fit_overlay) {
        const TimeSeries window = tail_from(table.series_sc(), options.fit_t_min);
        FitResult fit;
        try {
            fit = fit_log_model(window);
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("fit overlay requested but fitting failed: ") +
                              e.what());
        }

        Panel bottom = top;
        bottom.y0 = options.height + margin_t;
        bottom.yr = top.yr;

        draw_axes(svg, bottom, "t", "S (nats)", "logarithmic fit");
        draw_curve(svg, bottom, table.t, table.s_c, "#1f77b4");
        std::vector<double> ft, fv;
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table.t[i] >= options.fit_t_min && table.t[i] > 0.0) {
                const double v = fit.predict(table.t[i]);
                ft.push_back(table.t[i]);
                fv.push_back(std::clamp(v, bottom.yr.lo, bottom.yr.hi));
            }
        }
        if (!ft.empty()) draw_curve(svg, bottom, ft, fv, "#2ca02c", /*dashed=*/true);
        draw_legend_entry(svg, bottom.x0 + bottom.w - 230, bottom.y0 + 16, "#1f77b4",
                          "S_c (numeric)");
        draw_legend_entry(svg, bottom.x0 + bottom.w - 230, bottom.y0 + 34, "#2ca02c",
                          "fit u ln(w t), u=" + fmt(fit.u, "%.3g") + " w=" + fmt(fit.w, "%.3g"),
                          /*dashed=*/true);
    }

    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const std::filesystem::path& csv, const std::filesystem::path& out,
               const PlotOptions& options) {
    const RunTable table = read_run_csv(csv);
    write_file_atomic(out, render_svg(table, options));
}

} // namespace gquench
