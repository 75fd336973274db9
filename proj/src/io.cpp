#include "rg2/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rg2::io {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

struct AxisTicks {
    double lo, hi;
    std::vector<double> ticks;
};

AxisTicks nice_axis(double lo, double hi) {
    if (!(hi > lo)) hi = lo + 1.0;
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    if (!(step > 0.0)) step = 1.0;
    AxisTicks ax{lo, hi, {}};
    for (double t = std::ceil(lo / step) * step; t <= hi + 0.5 * step; t += step)
        ax.ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ax;
}

std::string tick_label(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

} // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    auto out = open_out(path);
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv: row width differs from header");
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series) {
    const double W = 720, H = 480, ml = 70, mr = 150, mt = 40, mb = 55;
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool first = true;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (first) {
                xlo = xhi = s.x[i];
                ylo = yhi = s.y[i];
                first = false;
            }
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    if (yhi == ylo) yhi = ylo + 1.0;
    if (xhi == xlo) xhi = xlo + 1.0;
    const auto xt = nice_axis(xlo, xhi);
    const auto yt = nice_axis(ylo, yhi);
    const auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (W - ml - mr); };
    const auto py = [&](double y) { return H - mb - (y - ylo) / (yhi - ylo) * (H - mt - mb); };

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    for (double t : xt.ticks) {
        if (t < xlo || t > xhi) continue;
        out << "<line x1=\"" << px(t) << "\" y1=\"" << H - mb << "\" x2=\"" << px(t) << "\" y2=\""
            << H - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(t) << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">"
            << tick_label(t) << "</text>\n";
    }
    for (double t : yt.ticks) {
        if (t < ylo || t > yhi) continue;
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << ml << "\" y2=\""
            << py(t) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">"
            << tick_label(t) << "</text>\n";
    }
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + H - mb) / 2 << "\" text-anchor=\"middle\" transform=\""
        << "rotate(-90 18 " << (mt + H - mb) / 2 << ")\">" << y_label << "</text>\n";

    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            out << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        out << "\"/>\n";
    }
    double ly = mt + 10;
    for (const auto& s : series) {
        out << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 34
            << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << W - mr + 40 << "\" y=\"" << ly + 4 << "\">" << s.label
            << "</text>\n";
        ly += 18;
    }
    out << "</svg>\n";
}

void write_svg_raster(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<double>& xs, const std::vector<double>& ys,
                      const std::vector<int>& cell_ids, const std::vector<RasterClass>& classes) {
    if (cell_ids.size() != xs.size() * ys.size())
        throw std::invalid_argument("write_svg_raster: cell count mismatch");
    const double W = 720, H = 560, ml = 80, mr = 190, mt = 40, mb = 60;
    const double cw = (W - ml - mr) / xs.size();
    const double ch = (H - mt - mb) / ys.size();

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    for (size_t ix = 0; ix < xs.size(); ++ix)
        for (size_t iy = 0; iy < ys.size(); ++iy) {
            const int id = cell_ids[ix * ys.size() + iy];
            out << "<rect x=\"" << ml + ix * cw << "\" y=\"" << H - mb - (iy + 1) * ch
                << "\" width=\"" << cw << "\" height=\"" << ch << "\" fill=\""
                << classes.at(static_cast<size_t>(id)).color << "\"/>\n";
        }
    // extreme tick labels only; the CSV carries the exact grid
    out << "<text x=\"" << ml << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">"
        << tick_label(xs.front()) << "</text>\n";
    out << "<text x=\"" << ml + xs.size() * cw << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\">" << tick_label(xs.back()) << "</text>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << H - mb << "\" text-anchor=\"end\">"
        << tick_label(ys.front()) << "</text>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << H - mb - ys.size() * ch + 10
        << "\" text-anchor=\"end\">" << tick_label(ys.back()) << "</text>\n";
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"20\" y=\"" << (mt + H - mb) / 2 << "\" text-anchor=\"middle\" transform=\""
        << "rotate(-90 20 " << (mt + H - mb) / 2 << ")\">" << y_label << "</text>\n";
    double ly = mt + 10;
    for (const auto& cls : classes) {
        out << "<rect x=\"" << W - mr + 10 << "\" y=\"" << ly - 9 << "\" width=\"14\" height=\""
            << 14 << "\" fill=\"" << cls.color << "\"/>\n";
        out << "<text x=\"" << W - mr + 30 << "\" y=\"" << ly + 3 << "\">" << cls.label
            << "</text>\n";
        ly += 20;
    }
    out << "</svg>\n";
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    nlohmann::json j;
    j["command"] = manifest.command;
    j["parameters"] = manifest.parameters;
    j["tolerances"] = manifest.tolerances;
    j["artifacts"] = manifest.artifacts;
    j["tool_version"] = manifest.tool_version;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

} // namespace rg2::io
