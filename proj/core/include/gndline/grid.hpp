#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gndline {

enum class GridSpacing { log, linear };

/// Frequency sweep grid. Default span matches the simulated range used
/// throughout: 50 Hz to 500 kHz, 200 points, logarithmic.
struct FrequencyGrid {
    double start_hz = 50.0;
    double stop_hz = 500e3;
    std::size_t points = 200;
    GridSpacing spacing = GridSpacing::log;

    std::vector<double> frequencies() const {
        if (!(start_hz > 0.0)) throw std::invalid_argument("FrequencyGrid: start must be > 0");
        if (points == 0) throw std::invalid_argument("FrequencyGrid: points must be >= 1");
        if (points == 1) return {start_hz};
        if (!(stop_hz > start_hz)) throw std::invalid_argument("FrequencyGrid: stop must be > start");
        std::vector<double> f(points);
        if (spacing == GridSpacing::log) {
            const double la = std::log10(start_hz);
            const double lb = std::log10(stop_hz);
            for (std::size_t i = 0; i < points; ++i) {
                f[i] = std::pow(10.0, la + (lb - la) * static_cast<double>(i) /
                                           static_cast<double>(points - 1));
            }
        } else {
            for (std::size_t i = 0; i < points; ++i) {
                f[i] = start_hz + (stop_hz - start_hz) * static_cast<double>(i) /
                                      static_cast<double>(points - 1);
            }
        }
        f.front() = start_hz;
        f.back() = stop_hz;
        return f;
    }
};

/// One row of a frequency response table.
struct FrcRow {
    double frequency_hz;
    double magnitude;
    double phase_rad;
};

}  // namespace gndline
