#include "gndline/csvio.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gndline {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void CsvWriter::add_comment(const std::string& text) {
    if (header_set_) throw std::logic_error("CsvWriter: comments must precede the header");
    lines_.push_back("# " + text);
}

void CsvWriter::set_header(const std::vector<std::string>& columns) {
    if (header_set_) throw std::logic_error("CsvWriter: header already set");
    columns_ = columns.size();
    header_set_ = true;
    std::string line;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) line += ',';
        line += columns[i];
    }
    lines_.push_back(std::move(line));
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (!header_set_) throw std::logic_error("CsvWriter: header not set");
    if (cells.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    lines_.push_back(std::move(line));
}

void CsvWriter::add_numeric_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(cells);
}

std::string CsvWriter::to_string() const {
    std::string out;
    for (const std::string& line : lines_) {
        out += line;
        out += '\n';
    }
    return out;
}

void CsvWriter::write(const std::string& path) const {
    write_file_atomic(path, to_string());
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!f) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void write_waveform_csv(const Waveform& w, const std::string& path) {
    CsvWriter csv;
    csv.add_comment("units: time_s in seconds, volts in volt");
    csv.set_header({"time_s", "volts"});
    for (std::size_t k = 0; k < w.samples.size(); ++k) {
        const double t = w.t0 + static_cast<double>(k) / w.sample_rate;
        csv.add_numeric_row({t, w.samples[k]});
    }
    csv.write(path);
}

void write_waveform_pcm(const Waveform& w, const std::string& path) {
    double peak = 0.0;
    for (double s : w.samples) peak = std::max(peak, std::abs(s));
    const double scale = peak > 0.0 ? 32767.0 / peak : 0.0;

    std::string bytes;
    bytes.reserve(w.samples.size() * 2);
    for (double s : w.samples) {
        const auto v = static_cast<std::int16_t>(std::lround(s * scale));
        bytes.push_back(static_cast<char>(v & 0xff));
        bytes.push_back(static_cast<char>((v >> 8) & 0xff));
    }
    write_file_atomic(path, bytes);

    std::string sidecar;
    sidecar += "sample_rate_hz=" + format_number(w.sample_rate) + "\n";
    sidecar += "peak_volts=" + format_number(peak) + "\n";
    sidecar += "format=s16le\n";
    write_file_atomic(path + ".rate", sidecar);
}

}  // namespace gndline
