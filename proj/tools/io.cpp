#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "longwalk/error.hpp"

namespace longwalk::io {

namespace {

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
    return out;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Manifest::Manifest(std::string command, std::filesystem::path directory, std::string stem, bool reproducible)
    : command_(std::move(command)),
      directory_(std::move(directory)),
      stem_(std::move(stem)),
      timestamp_(reproducible ? "1970-01-01T00:00:00Z" : utc_now()) {
    std::filesystem::create_directories(directory_);
}

std::filesystem::path Manifest::path_for(const std::string& suffix) const { return directory_ / (stem_ + suffix); }

std::string Manifest::file_name() const { return stem_ + ".manifest.json"; }

nlohmann::json Manifest::to_json() const {
    return {{"command", command_}, {"parameters", parameters_}, {"version", kVersion},
            {"timestamp", timestamp_}, {"outputs", outputs_}, {"notes", notes_}};
}

void Manifest::write() const {
    auto out = open_output(directory_ / file_name());
    out << to_json().dump(2) << "\n";
}

void write_csv(Manifest& manifest, const std::string& suffix, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    const auto path = manifest.path_for(suffix);
    auto out = open_output(path);
    out << "# schema=" << kCsvSchema << " manifest=" << manifest.file_name() << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << number(row[i]);
        out << "\n";
    }
    manifest.add_output(path);
}

void write_json(Manifest& manifest, const std::string& suffix, nlohmann::json report) {
    const auto path = manifest.path_for(suffix);
    manifest.add_output(path);
    report["manifest"] = manifest.to_json();
    auto out = open_output(path);
    out << report.dump(2) << "\n";
}

std::string render_svg(const PlotSpec& plot, const std::string& manifest_name, const std::string& timestamp) {
    constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;
    auto tx = [&](double v) { return plot.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return plot.log_y ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0) && (!plot.log_y || y > 0);
    };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.04 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double v) { return kLeft + (tx(v) - x0) / (x1 - x0) * (kW - kLeft - kRight); };
    auto py = [&](double v) { return kH - kBottom - (ty(v) - y0) / (y1 - y0) * (kH - kTop - kBottom); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
    os << "<!-- manifest=" << manifest_name << " timestamp=" << timestamp << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(plot.title)
       << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight << "\" height=\""
       << kH - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = x0 + (x1 - x0) * i / 4.0;
        const double fy = y0 + (y1 - y0) * i / 4.0;
        const double vx = plot.log_x ? std::pow(10.0, fx) : fx;
        const double vy = plot.log_y ? std::pow(10.0, fy) : fy;
        char label[32];
        std::snprintf(label, sizeof label, "%.3g", vx);
        os << "<text x=\"" << px(vx) << "\" y=\"" << kH - kBottom + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
           << label << "</text>\n";
        std::snprintf(label, sizeof label, "%.3g", vy);
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(vy) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << label
           << "</text>\n";
    }
    os << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
       << escape_xml(plot.x_label) << (plot.log_x ? " (log)" : "") << "</text>\n";
    os << "<text x=\"16\" y=\"" << (kTop + kH - kBottom) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
       << "transform=\"rotate(-90 16 " << (kTop + kH - kBottom) / 2 << ")\">" << escape_xml(plot.y_label)
       << (plot.log_y ? " (log)" : "") << "</text>\n";

    for (std::size_t si = 0; si < plot.series.size(); ++si) {
        const auto& s = plot.series[si];
        const char* color = colors[si % 7];
        std::ostringstream pts;
        pts.precision(6);
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (usable(s.x[i], s.y[i])) pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                if (usable(s.x[i], s.y[i]))
                    os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << color
                       << "\"/>\n";
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts.str()
               << "\"/>\n";
        }
        os << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 15 * static_cast<double>(si) << "\" fill=\""
           << color << "\" font-size=\"12\">" << escape_xml(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg(Manifest& manifest, const std::string& suffix, const PlotSpec& plot) {
    const auto path = manifest.path_for(suffix);
    auto out = open_output(path);
    out << render_svg(plot, manifest.file_name(), manifest.to_json()["timestamp"].get<std::string>());
    manifest.add_output(path);
}

}  // namespace longwalk::io
