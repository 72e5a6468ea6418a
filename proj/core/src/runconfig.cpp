#include "lab/runconfig.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lab/util.hpp"

namespace lab {

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    RunConfig c;
    try {
        c.j_ = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!c.j_.is_object()) throw config_error("config must be a JSON object");
    return c;
}

void RunConfig::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override must look like key=value: " + assignment);
    const std::string key = assignment.substr(0, eq);
    const std::string val = assignment.substr(eq + 1);
    try {
        j_[key] = nlohmann::json::parse(val);
    } catch (const nlohmann::json::parse_error&) {
        j_[key] = val;  // bare strings are allowed unquoted
    }
}

const nlohmann::json* RunConfig::find(const std::string& key) const {
    const auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
}

bool RunConfig::has(const std::string& key) const { return find(key) != nullptr; }

double RunConfig::number(const std::string& key) {
    const nlohmann::json* v = find(key);
    if (!v) throw config_error("missing required config key: " + key);
    if (!v->is_number()) throw config_error("config key must be a number: " + key);
    return v->get<double>();
}

double RunConfig::number(const std::string& key, double fallback) {
    const nlohmann::json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw config_error("config key must be a number: " + key);
    return v->get<double>();
}

long RunConfig::integer(const std::string& key, long fallback) {
    const nlohmann::json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw config_error("config key must be an integer: " + key);
    return v->get<long>();
}

bool RunConfig::flag(const std::string& key, bool fallback) {
    const nlohmann::json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw config_error("config key must be a boolean: " + key);
    return v->get<bool>();
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) {
    const nlohmann::json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw config_error("config key must be a string: " + key);
    return v->get<std::string>();
}

std::vector<double> RunConfig::number_list(const std::string& key,
                                           const std::vector<double>& fallback) {
    const nlohmann::json* v = find(key);
    if (!v) return fallback;
    if (!v->is_array()) throw config_error("config key must be an array: " + key);
    std::vector<double> out;
    for (const auto& e : *v) {
        if (!e.is_number()) throw config_error("config key must be numeric array: " + key);
        out.push_back(e.get<double>());
    }
    return out;
}

void RunConfig::reject_unknown() const {
    std::string strays;
    for (auto it = j_.begin(); it != j_.end(); ++it)
        if (seen_.find(it.key()) == seen_.end()) strays += (strays.empty() ? "" : ", ") + it.key();
    if (!strays.empty()) throw config_error("unknown config keys: " + strays);
}

void write_run_record(const std::string& path, const RunRecord& rec) {
    nlohmann::json j;
    j["scenario"] = rec.scenario;
    j["config"] = rec.config;
    j["seed"] = rec.seed;
    j["outputs"] = rec.outputs;
    j["status"] = rec.status;
    if (!rec.error.empty()) j["error"] = rec.error;
    j["wall_seconds"] = rec.wall_seconds;
    j["metrics"] = rec.metrics;

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw config_error("cannot write run record: " + tmp);
        out << j.dump(2) << '\n';
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw config_error("cannot move run record into place: " + path);
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<double>& x, const std::vector<PlotSeries>& series) {
    if (x.size() < 2) throw config_error("plot needs at least two points");
    for (const auto& s : series)
        if (!s.y || s.y->size() != x.size())
            throw config_error("plot series must match the x column length");

    double ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (double v : *s.y) {
            if (std::isfinite(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    if (!(ymax >= ymin)) throw numeric_error("plot has no finite samples");
    if (ymax == ymin) {
        ymax += 1.0;
        ymin -= 1.0;
    }
    const double xmin = x.front(), xmax = x.back();
    if (!(xmax > xmin)) throw config_error("x column must be increasing");

    const int W = 720, H = 440, ML = 60, MR = 20, MT = 40, MB = 40;
    auto px = [&](double v) { return ML + (v - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double v) { return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "' viewBox='0 0 " << W << " " << H << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-family='sans-serif' "
        << "font-size='15'>" << title << "</text>\n";
    svg << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='" << H - MB
        << "' stroke='black'/>\n";
    svg << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
        << "' stroke='black'/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + k * (xmax - xmin) / 4.0;
        const double yv = ymin + k * (ymax - ymin) / 4.0;
        svg << "<text x='" << px(xv) << "' y='" << H - MB + 16
            << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
            << fmt_double(xv) << "</text>\n";
        svg << "<text x='" << ML - 6 << "' y='" << py(yv) + 4
            << "' text-anchor='end' font-family='sans-serif' font-size='11'>" << fmt_double(yv)
            << "</text>\n";
    }
    int ci = 0;
    for (const auto& s : series) {
        svg << "<polyline fill='none' stroke='" << colors[ci % 5] << "' stroke-width='1.5' points='";
        for (size_t j = 0; j < x.size(); ++j) {
            if (!std::isfinite((*s.y)[j])) continue;
            svg << px(x[j]) << "," << py((*s.y)[j]) << " ";
        }
        svg << "'/>\n";
        svg << "<text x='" << W - MR - 8 << "' y='" << MT + 16 + 16 * ci
            << "' text-anchor='end' font-family='sans-serif' font-size='12' fill='"
            << colors[ci % 5] << "'>" << s.label << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw config_error("cannot write plot: " + path);
    out << svg.str();
}

}  // namespace lab
