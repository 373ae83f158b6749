#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "entnet/common/errors.hpp"
#include "entnet/exp/csv.hpp"

namespace entnet::exp {

struct PlotSpec {
    std::string x_column;
    std::vector<std::string> y_columns;
    std::string title;
    int width = 800;
    int height = 500;
};

namespace detail {

inline std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

inline const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f6fb2", "#c23b22", "#2e8b57", "#8a2be2", "#b8860b"};
    return palette[i % 5];
}

}  // namespace detail

// Self-contained SVG line plot of named csv columns. Deterministic output:
// identical input bytes give identical plot bytes.
inline void emit_plot(const std::string& csv_path, const PlotSpec& spec,
                      const std::string& out_path) {
    const CsvTable table = read_csv(csv_path);
    if (table.rows.empty())
        throw ConfigError("emit_plot: '" + csv_path + "' has no data rows");
    const int xi = table.column_index(spec.x_column);
    if (xi < 0)
        throw ConfigError("emit_plot: missing column '" + spec.x_column + "' in " + csv_path);
    std::vector<int> yis;
    for (const auto& name : spec.y_columns) {
        const int yi = table.column_index(name);
        if (yi < 0)
            throw ConfigError("emit_plot: missing column '" + name + "' in " + csv_path);
        yis.push_back(yi);
    }
    if (yis.empty()) throw ConfigError("emit_plot: no y columns requested");

    auto finite_row = [&](const std::vector<double>& row, int yi) {
        return std::isfinite(row[xi]) && std::isfinite(row[yi]);
    };
    bool any = false;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const auto& row : table.rows)
        for (int yi : yis) {
            if (!finite_row(row, yi)) continue;
            if (!any) {
                xmin = xmax = row[xi];
                ymin = ymax = row[yi];
                any = true;
            }
            xmin = std::min(xmin, row[xi]);
            xmax = std::max(xmax, row[xi]);
            ymin = std::min(ymin, row[yi]);
            ymax = std::max(ymax, row[yi]);
        }
    if (!any)
        throw ConfigError("emit_plot: '" + csv_path + "' has no finite data points");
    if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
    if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }

    const double ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw ConfigError("emit_plot: cannot write '" + out_path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << " "
        << spec.height << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <text x=\"" << spec.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << spec.title << "</text>\n";
    // axes
    out << "  <line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n";
    // range labels
    out << "  <text x=\"" << ml << "\" y=\"" << mt + ph + 20
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << detail::fmt6(xmin)
        << "</text>\n";
    out << "  <text x=\"" << ml + pw << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << detail::fmt6(xmax) << "</text>\n";
    out << "  <text x=\"" << ml - 6 << "\" y=\"" << mt + ph
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << detail::fmt6(ymin) << "</text>\n";
    out << "  <text x=\"" << ml - 6 << "\" y=\"" << mt + 12
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << detail::fmt6(ymax) << "</text>\n";
    out << "  <text x=\"" << (ml + pw / 2) << "\" y=\"" << spec.height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << spec.x_column << "</text>\n";

    for (std::size_t s = 0; s < yis.size(); ++s) {
        out << "  <text x=\"" << ml + pw - 4 << "\" y=\"" << mt + 16 + 16 * s
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << detail::series_color(s) << "\">" << spec.y_columns[s] << "</text>\n";
        out << "  <polyline fill=\"none\" stroke=\"" << detail::series_color(s)
            << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& row : table.rows) {
            if (!finite_row(row, yis[s])) continue;
            if (!first) out << " ";
            first = false;
            out << detail::fmt6(sx(row[xi])) << "," << detail::fmt6(sy(row[yis[s]]));
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace entnet::exp
