#include "crunchfx/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace crunchfx {
namespace {

std::string format_value(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.10g", v);
    return buffer;
}

std::string format_pixel(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

std::string format_tick(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

void check_common_grid(const std::vector<Trajectory>& trajectories) {
    if (trajectories.empty()) {
        throw std::invalid_argument("at least one trajectory is required");
    }
    for (const Trajectory& trajectory : trajectories) {
        if (!(trajectory.grid == trajectories.front().grid)) {
            throw std::invalid_argument("trajectories must share one time grid");
        }
        if (trajectory.values.size() != trajectory.grid.times().size()) {
            throw std::invalid_argument("trajectory has one value per grid time");
        }
    }
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

}  // namespace

void write_trajectories_csv(const std::vector<Trajectory>& trajectories,
                            std::ostream& sink) {
    check_common_grid(trajectories);
    sink << "t";
    for (const Trajectory& trajectory : trajectories) {
        sink << "," << trajectory.label;
    }
    sink << "\n";
    const std::vector<double>& times = trajectories.front().grid.times();
    for (std::size_t i = 0; i < times.size(); ++i) {
        sink << format_value(times[i]);
        for (const Trajectory& trajectory : trajectories) {
            sink << "," << format_value(trajectory.values[i]);
        }
        sink << "\n";
    }
}

void render_svg_chart(const std::vector<Trajectory>& trajectories,
                      std::ostream& sink) {
    check_common_grid(trajectories);

    constexpr double kWidth = 800.0;
    constexpr double kHeight = 500.0;
    constexpr double kLeft = 62.0;
    constexpr double kRight = 18.0;
    constexpr double kTop = 18.0;
    constexpr double kBottom = 42.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    const std::vector<double>& times = trajectories.front().grid.times();
    const double x_min = times.front();
    const double x_max = times.back();
    double y_min = trajectories.front().values.front();
    double y_max = y_min;
    for (const Trajectory& trajectory : trajectories) {
        const auto [lo, hi] =
            std::minmax_element(trajectory.values.begin(), trajectory.values.end());
        y_min = std::min(y_min, *lo);
        y_max = std::max(y_max, *hi);
    }
    if (y_min == y_max) {  // flat series: give the axis some room
        y_min -= 1.0;
        y_max += 1.0;
    }

    const auto x_px = [&](double t) {
        return kLeft + (t - x_min) / (x_max - x_min) * plot_w;
    };
    const auto y_px = [&](double v) {
        return kTop + (y_max - v) / (y_max - y_min) * plot_h;
    };

    sink << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
            "viewBox=\"0 0 800 500\">\n";
    sink << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";
    sink << "  <rect x=\"" << format_pixel(kLeft) << "\" y=\"" << format_pixel(kTop)
         << "\" width=\"" << format_pixel(plot_w) << "\" height=\""
         << format_pixel(plot_h) << "\" fill=\"none\" stroke=\"#444444\"/>\n";

    for (std::size_t s = 0; s < trajectories.size(); ++s) {
        sink << "  <polyline fill=\"none\" stroke=\"" << kPalette[s % kPaletteSize]
             << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (i != 0) sink << " ";
            sink << format_pixel(x_px(times[i])) << ","
                 << format_pixel(y_px(trajectories[s].values[i]));
        }
        sink << "\"/>\n";
    }

    // Extremal tick labels, one per axis end.
    sink << "  <text x=\"" << format_pixel(kLeft) << "\" y=\""
         << format_pixel(kHeight - kBottom + 18.0)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
         << format_tick(x_min) << "</text>\n";
    sink << "  <text x=\"" << format_pixel(kWidth - kRight) << "\" y=\""
         << format_pixel(kHeight - kBottom + 18.0)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
         << format_tick(x_max) << "</text>\n";
    sink << "  <text x=\"" << format_pixel(kLeft - 6.0) << "\" y=\""
         << format_pixel(kHeight - kBottom)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
         << format_tick(y_min) << "</text>\n";
    sink << "  <text x=\"" << format_pixel(kLeft - 6.0) << "\" y=\""
         << format_pixel(kTop + 10.0)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
         << format_tick(y_max) << "</text>\n";

    for (std::size_t s = 0; s < trajectories.size(); ++s) {
        const double ly = kTop + 14.0 + 16.0 * static_cast<double>(s);
        sink << "  <line x1=\"" << format_pixel(kWidth - kRight - 130.0) << "\" y1=\""
             << format_pixel(ly - 4.0) << "\" x2=\""
             << format_pixel(kWidth - kRight - 110.0) << "\" y2=\""
             << format_pixel(ly - 4.0) << "\" stroke=\""
             << kPalette[s % kPaletteSize] << "\" stroke-width=\"1.5\"/>\n";
        sink << "  <text x=\"" << format_pixel(kWidth - kRight - 104.0) << "\" y=\""
             << format_pixel(ly)
             << "\" font-family=\"sans-serif\" font-size=\"12\">"
             << trajectories[s].label << "</text>\n";
    }
    sink << "</svg>\n";
}

}  // namespace crunchfx
