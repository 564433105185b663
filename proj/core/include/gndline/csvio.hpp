#pragma once

#include "gndline/signal.hpp"

#include <string>
#include <vector>

namespace gndline {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_number(double value);

/// Accumulates a CSV document: optional '#'-prefixed unit comment lines,
/// a header row, then data rows. write() goes through a temp file and an
/// atomic rename so a failed run never leaves a partial output.
class CsvWriter {
public:
    void add_comment(const std::string& text);
    void set_header(const std::vector<std::string>& columns);
    void add_row(const std::vector<std::string>& cells);
    void add_numeric_row(const std::vector<double>& values);

    std::string to_string() const;
    void write(const std::string& path) const;

private:
    std::vector<std::string> lines_;
    std::size_t columns_ = 0;
    bool header_set_ = false;
};

/// Writes arbitrary bytes through the same temp-file/rename path.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Waveform as CSV with columns time_s,volts.
void write_waveform_csv(const Waveform& w, const std::string& path);

/// 16-bit little-endian signed PCM, peak-normalized. A sidecar file at
/// path + ".rate" records the sample rate and the peak scale used.
void write_waveform_pcm(const Waveform& w, const std::string& path);

}  // namespace gndline
