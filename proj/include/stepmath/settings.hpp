#pragma once

// Layered settings: command-line flags override environment variables, which
// override the config file, which overrides built-in defaults.
//
// The config file is a flat JSON object, e.g.
//   {"base_url": "https://api.openai.com/v1", "model": "gpt-4o-2024-08-06",
//    "parallelism": 4, "language": "zh"}

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "stepmath/errors.hpp"

namespace stepmath {

enum class SettingSource { Default, ConfigFile, Environment, Flag };

inline std::string_view to_string(SettingSource s) {
    switch (s) {
        case SettingSource::Default: return "default";
        case SettingSource::ConfigFile: return "config";
        case SettingSource::Environment: return "env";
        case SettingSource::Flag: return "flag";
    }
    return "?";
}

struct ResolvedSetting {
    std::string value;
    SettingSource source = SettingSource::Default;
};

/// Environment variable consulted for each key.
inline const std::map<std::string, std::string>& setting_env_names() {
    static const std::map<std::string, std::string> names{
        {"api_key", "STEPMATH_API_KEY"},
        {"base_url", "STEPMATH_BASE_URL"},
        {"model", "STEPMATH_MODEL"},
    };
    return names;
}

class Settings {
public:
    using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

    static std::optional<std::string> process_env(const std::string& name) {
        if (const char* v = std::getenv(name.c_str()); v && *v) return std::string(v);
        return std::nullopt;
    }

    explicit Settings(nlohmann::json config = nlohmann::json::object(), EnvLookup env = process_env)
        : config_(std::move(config)), env_(std::move(env)) {
        if (!config_.is_object()) throw ParseError("config file must hold a JSON object");
    }

    static Settings from_file(const std::string& path, EnvLookup env = process_env) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open config file '" + path + "'");
        auto doc = nlohmann::json::parse(in, nullptr, false);
        if (doc.is_discarded()) throw ParseError("config file '" + path + "' is not valid JSON");
        return Settings(std::move(doc), std::move(env));
    }

    ResolvedSetting resolve(const std::string& key, const std::optional<std::string>& flag,
                            const std::string& fallback) const {
        if (flag) return {*flag, SettingSource::Flag};
        if (auto it = setting_env_names().find(key); it != setting_env_names().end()) {
            if (auto v = env_(it->second)) return {*v, SettingSource::Environment};
        }
        if (config_.contains(key) && !config_.at(key).is_null()) {
            const auto& v = config_.at(key);
            return {v.is_string() ? v.get<std::string>() : v.dump(), SettingSource::ConfigFile};
        }
        return {fallback, SettingSource::Default};
    }

    std::string get(const std::string& key, const std::optional<std::string>& flag,
                    const std::string& fallback) const {
        return resolve(key, flag, fallback).value;
    }

    int get_int(const std::string& key, const std::optional<int>& flag, int fallback) const {
        const auto r = resolve(key, flag ? std::optional<std::string>(std::to_string(*flag)) : std::nullopt,
                               std::to_string(fallback));
        try {
            std::size_t used = 0;
            const int v = std::stoi(r.value, &used);
            if (used != r.value.size()) throw std::invalid_argument(r.value);
            return v;
        } catch (const std::logic_error&) {
            throw ParseError("setting '" + key + "' from " + std::string(to_string(r.source)) +
                             " is not an integer: '" + r.value + "'");
        }
    }

private:
    nlohmann::json config_;
    EnvLookup env_;
};

}  // namespace stepmath
