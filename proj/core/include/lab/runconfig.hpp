#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace lab {

// Flat JSON config with read-tracking: every key a scenario reads is marked,
// and reject_unknown() turns leftover keys into a config_error. Catches
// typos like "t_end" vs "tend" instead of silently running defaults.
class RunConfig {
  public:
    RunConfig() : j_(nlohmann::json::object()) {}
    static RunConfig from_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text);

    // "key=value"; value parsed as JSON when possible, else taken as string
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const;
    double number(const std::string& key);                  // required
    double number(const std::string& key, double fallback);
    long integer(const std::string& key, long fallback);
    bool flag(const std::string& key, bool fallback);
    std::string text(const std::string& key, const std::string& fallback);
    std::vector<double> number_list(const std::string& key,
                                    const std::vector<double>& fallback);

    void reject_unknown() const;
    const nlohmann::json& raw() const { return j_; }

  private:
    nlohmann::json j_;
    mutable std::set<std::string> seen_;
    const nlohmann::json* find(const std::string& key) const;
};

// One line of provenance per invocation: what ran, with which inputs, what
// it wrote, and how it ended. Written atomically (tmp + rename) so a crash
// mid-run never leaves a truncated record.
struct RunRecord {
    std::string scenario;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    std::string status = "ok";  // "ok" | "config_error" | "numeric_error"
    std::string error;
    double wall_seconds = 0.0;
    nlohmann::json metrics = nlohmann::json::object();
};

void write_run_record(const std::string& path, const RunRecord& rec);

// Minimal standalone SVG line plot: one polyline per series over a shared
// x column, auto-scaled axes, no external assets.
struct PlotSeries {
    std::string label;
    const std::vector<double>* y = nullptr;
};
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<double>& x, const std::vector<PlotSeries>& series);

}  // namespace lab
