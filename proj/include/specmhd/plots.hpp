// Static SVG line plots with embedded data points; no display dependency.

#ifndef SPECMHD_PLOTS_HPP
#define SPECMHD_PLOTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "specmhd/diagnostics.hpp"

namespace specmhd {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ReferenceLine {
    std::string label;
    double y = 0.0;
};

namespace detail {

inline std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace detail

inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<PlotSeries>& series, bool log_y,
                           const std::vector<ReferenceLine>& refs = {}) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    if (series.empty()) throw std::invalid_argument("write_svg_plot: no series");

    const double width = 860, height = 520;
    const double ml = 80, mr = 30, mt = 48, mb = 56;
    const double pw = width - ml - mr, ph = height - mt - mb;

    auto usable = [&](double y) { return !log_y || y > 0.0; };

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::size_t points = 0;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.y[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
            ++points;
        }
    for (const auto& r : refs)
        if (usable(r.y)) {
            ymin = std::min(ymin, r.y);
            ymax = std::max(ymax, r.y);
        }
    if (points == 0) throw std::invalid_argument("write_svg_plot: no drawable points");
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin = log_y ? ymin * 0.5 : ymin - 0.5;
        ymax = log_y ? ymax * 2.0 : ymax + 0.5;
    }

    auto ty = [&](double y) {
        const double lo = log_y ? std::log10(ymin) : ymin;
        const double hi = log_y ? std::log10(ymax) : ymax;
        const double v = log_y ? std::log10(y) : y;
        return mt + ph * (1.0 - (v - lo) / (hi - lo));
    };
    auto tx = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_svg_plot: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\" stroke=\"black\"/>\n";

    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / nticks;
        const double px = tx(fx);
        out << "<line x1=\"" << px << "\" y1=\"" << mt + ph << "\" x2=\"" << px << "\" y2=\""
            << mt + ph + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::fmt_tick(fx)
            << "</text>\n";
        double fy;
        if (log_y) {
            const double lo = std::log10(ymin), hi = std::log10(ymax);
            fy = std::pow(10.0, lo + (hi - lo) * i / nticks);
        } else {
            fy = ymin + (ymax - ymin) * i / nticks;
        }
        const double py = ty(fy);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\"" << py
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << detail::fmt_tick(fy) << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n"
        << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " << mt + ph / 2
        << ")\">" << y_label << "</text>\n";

    for (const auto& r : refs) {
        if (!usable(r.y) || r.y < ymin || r.y > ymax) continue;
        const double py = ty(r.y);
        out << "<line x1=\"" << ml << "\" y1=\"" << py << "\" x2=\"" << ml + pw << "\" y2=\"" << py
            << "\" stroke=\"#555\" stroke-dasharray=\"6,4\"/>\n"
            << "<text x=\"" << ml + pw - 4 << "\" y=\"" << py - 5
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#555\">" << r.label << "</text>\n";
    }

    int color = 0;
    double legend_y = mt + 14;
    for (const auto& s : series) {
        const char* stroke = palette[color % 6];
        std::string poly;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.y[i]) || !std::isfinite(s.y[i])) continue;
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", tx(s.x[i]), ty(s.y[i]));
            poly += buf;
        }
        if (poly.empty()) {
            ++color;
            continue;
        }
        out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\""
            << poly << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.y[i]) || !std::isfinite(s.y[i])) continue;
            out << "<circle cx=\"" << tx(s.x[i]) << "\" cy=\"" << ty(s.y[i])
                << "\" r=\"2.2\" fill=\"" << stroke << "\"/>\n";
        }
        out << "<rect x=\"" << ml + pw - 170 << "\" y=\"" << legend_y - 9
            << "\" width=\"12\" height=\"4\" fill=\"" << stroke << "\"/>\n"
            << "<text x=\"" << ml + pw - 152 << "\" y=\"" << legend_y
            << "\" font-size=\"12\">" << s.label << "</text>\n";
        legend_y += 16;
        ++color;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write_svg_plot: write failure on " + path);
}

// Standard plot set for a trajectory: perturbation norms against the
// bootstrap threshold, energy/dissipation, and the bound-ratio traces.
inline void emit_plots(const std::vector<DiagnosticsRecord>& trajectory, double eta,
                       const std::string& out_dir) {
    if (trajectory.empty()) throw std::invalid_argument("emit_plots: empty trajectory");
    std::filesystem::create_directories(out_dir);

    auto column = [&](auto&& get) {
        PlotSeries s;
        for (const auto& r : trajectory) {
            s.x.push_back(r.t);
            s.y.push_back(get(r));
        }
        return s;
    };

    PlotSeries h3v = column([](const DiagnosticsRecord& r) { return r.h3_v; });
    h3v.label = "|v|_H3";
    PlotSeries h3c = column([](const DiagnosticsRecord& r) { return r.h3_c; });
    h3c.label = "|c|_H3";
    PlotSeries q = column(
        [](const DiagnosticsRecord& r) { return r.h3_v * r.h3_v + r.h3_c * r.h3_c; });
    q.label = "|v|^2 + |c|^2";
    write_svg_plot(out_dir + "/perturbation_norms.svg", "Perturbation size vs bootstrap threshold",
                   "t", "H3 norms (log)", {h3v, h3c, q}, true, {{"eta", eta}});

    PlotSeries energy = column([](const DiagnosticsRecord& r) { return r.l2_energy; });
    energy.label = "energy";
    PlotSeries diss = column([](const DiagnosticsRecord& r) { return r.dissipation_rate; });
    diss.label = "dissipation rate";
    write_svg_plot(out_dir + "/energy.svg", "Energy and dissipation", "t", "value (log)",
                   {energy, diss}, true);

    PlotSeries bu = column([](const DiagnosticsRecord& r) { return r.bernstein_ratio_U; });
    bu.label = "bernstein U";
    PlotSeries bb = column([](const DiagnosticsRecord& r) { return r.bernstein_ratio_B; });
    bb.label = "bernstein B";
    PlotSeries lf = column([](const DiagnosticsRecord& r) { return r.lemma33_ratio_f; });
    lf.label = "lemma33 f";
    PlotSeries lg = column([](const DiagnosticsRecord& r) { return r.lemma33_ratio_G; });
    lg.label = "lemma33 G";
    write_svg_plot(out_dir + "/bound_ratios.svg", "Measured bound ratios", "t", "ratio",
                   {bu, bb, lf, lg}, false);
}

}  // namespace specmhd

#endif
