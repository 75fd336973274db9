#pragma once

#include <map>
#include <string>
#include <vector>

namespace rg2::io {

inline constexpr const char* kToolVersion = "rg2lab 0.1.0";

/// Shortest round-trip decimal representation (byte-stable across runs).
std::string format_double(double x);

/// UTF-8 comma-separated file with a single header row.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

struct Series {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal line plot with axes, tick labels and a legend.
void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series);

struct RasterClass {
    std::string label;
    std::string color;
};

/// Cell raster over a rectangular grid; cell_ids are row-major indices into
/// classes ([ix * ys.size() + iy]).
void write_svg_raster(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<double>& xs, const std::vector<double>& ys,
                      const std::vector<int>& cell_ids, const std::vector<RasterClass>& classes);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::map<std::string, std::string> tolerances;
    std::vector<std::string> artifacts;
    std::string tool_version = kToolVersion;
};

/// Single JSON document describing one run; every output file is listed.
void write_manifest(const std::string& path, const RunManifest& manifest);

} // namespace rg2::io
