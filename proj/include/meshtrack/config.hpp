#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "meshtrack/mesh_io.hpp"
#include "meshtrack/tracking.hpp"

namespace meshtrack {

// Flat `key = value` config text; '#' starts a comment, blank lines are
// skipped. Every pipeline/filter/crop default is overridable here.
class ConfigMap {
public:
    static ConfigMap parse(std::istream& in) {
        ConfigMap config;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                if (line.find_first_not_of(" \t\r") != std::string::npos)
                    throw ParseError("config line " + std::to_string(line_no) +
                                     ": expected key = value");
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ParseError("config line " + std::to_string(line_no) +
                                 ": empty key or value");
            config.values_[key] = value;
        }
        return config;
    }

    static ConfigMap parse_file(const std::string& path) {
        auto in = open_input(path);
        return parse(in);
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw ParseError("config key '" + key + "': '" + it->second +
                             "' is not a number");
        }
    }

    long get_long(const std::string& key, long fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const long v = std::stol(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw ParseError("config key '" + key + "': '" + it->second +
                             "' is not an integer");
        }
    }

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    static std::string trim(const std::string& s) {
        const std::size_t begin = s.find_first_not_of(" \t\r");
        if (begin == std::string::npos) return "";
        const std::size_t end = s.find_last_not_of(" \t\r");
        return s.substr(begin, end - begin + 1);
    }

    std::map<std::string, std::string> values_;
};

inline const std::set<std::string>& pipeline_config_keys() {
    static const std::set<std::string> keys = {
        "face_flag_threshold", "margin",         "input_size",
        "z_aspect",            "min_cutoff_hz",  "beta",
        "window_size",         "eye_left_outer", "eye_left_inner",
        "eye_right_inner",     "eye_right_outer"};
    return keys;
}

inline PipelineConfig pipeline_config_from(const ConfigMap& map) {
    for (const auto& [key, value] : map.values()) {
        if (!pipeline_config_keys().count(key))
            throw ParseError("unknown config key '" + key + "'");
    }
    PipelineConfig config;
    config.face_flag_threshold =
        map.get_double("face_flag_threshold", config.face_flag_threshold);
    config.margin = map.get_double("margin", config.margin);
    config.input_size = map.get_double("input_size", config.input_size);
    config.z_aspect = map.get_double("z_aspect", config.z_aspect);
    config.filter_params.min_cutoff_hz =
        map.get_double("min_cutoff_hz", config.filter_params.min_cutoff_hz);
    config.filter_params.beta = map.get_double("beta", config.filter_params.beta);
    config.filter_params.window_size = static_cast<int>(
        map.get_long("window_size", config.filter_params.window_size));
    config.eye_spec.left_outer = static_cast<VertexIndex>(
        map.get_long("eye_left_outer", config.eye_spec.left_outer));
    config.eye_spec.left_inner = static_cast<VertexIndex>(
        map.get_long("eye_left_inner", config.eye_spec.left_inner));
    config.eye_spec.right_inner = static_cast<VertexIndex>(
        map.get_long("eye_right_inner", config.eye_spec.right_inner));
    config.eye_spec.right_outer = static_cast<VertexIndex>(
        map.get_long("eye_right_outer", config.eye_spec.right_outer));
    validate_pipeline_config(config);
    return config;
}

inline PipelineConfig load_pipeline_config(const std::string& path) {
    return pipeline_config_from(ConfigMap::parse_file(path));
}

inline void write_pipeline_config(std::ostream& out, const PipelineConfig& config) {
    out << "face_flag_threshold = " << format_double(config.face_flag_threshold) << "\n"
        << "margin = " << format_double(config.margin) << "\n"
        << "input_size = " << format_double(config.input_size) << "\n"
        << "z_aspect = " << format_double(config.z_aspect) << "\n"
        << "min_cutoff_hz = " << format_double(config.filter_params.min_cutoff_hz) << "\n"
        << "beta = " << format_double(config.filter_params.beta) << "\n"
        << "window_size = " << config.filter_params.window_size << "\n"
        << "eye_left_outer = " << config.eye_spec.left_outer << "\n"
        << "eye_left_inner = " << config.eye_spec.left_inner << "\n"
        << "eye_right_inner = " << config.eye_spec.right_inner << "\n"
        << "eye_right_outer = " << config.eye_spec.right_outer << "\n";
}

}  // namespace meshtrack
