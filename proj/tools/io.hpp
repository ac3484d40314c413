#pragma once

// Flat-file outputs of the CLI: versioned CSV, JSON manifests and a small
// SVG line-plot writer.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace longwalk::io {

inline constexpr const char* kCsvSchema = "longwalk-csv/1";
inline constexpr const char* kVersion = "0.1.0";

/// 17 significant digits, round-trippable.
std::string number(double v);

class Manifest {
public:
    Manifest(std::string command, std::filesystem::path directory, std::string stem, bool reproducible);

    nlohmann::json& parameters() { return parameters_; }
    void note(std::string text) { notes_.push_back(std::move(text)); }
    void add_output(const std::filesystem::path& path) { outputs_.push_back(path.filename().string()); }

    std::filesystem::path path_for(const std::string& suffix) const;
    std::string file_name() const;
    nlohmann::json to_json() const;
    /// Writes <stem>.manifest.json; call after every output is registered.
    void write() const;

private:
    std::string command_;
    std::filesystem::path directory_;
    std::string stem_;
    std::string timestamp_;
    nlohmann::json parameters_ = nlohmann::json::object();
    std::vector<std::string> outputs_;
    std::vector<std::string> notes_;
};

void write_csv(Manifest& manifest, const std::string& suffix, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Writes `report` with the manifest inlined under "manifest".
void write_json(Manifest& manifest, const std::string& suffix, nlohmann::json report);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

std::string render_svg(const PlotSpec& plot, const std::string& manifest_name, const std::string& timestamp);
void write_svg(Manifest& manifest, const std::string& suffix, const PlotSpec& plot);

}  // namespace longwalk::io
