#include <filesystem>
#include <fstream>
#include <map>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "stepmath/settings.hpp"

using namespace stepmath;
using nlohmann::json;

namespace {

Settings::EnvLookup env_of(std::map<std::string, std::string> vars) {
    return [vars = std::move(vars)](const std::string& name) -> std::optional<std::string> {
        if (auto it = vars.find(name); it != vars.end()) return it->second;
        return std::nullopt;
    };
}

}  // namespace

TEST(Settings, PrecedenceFlagEnvConfigDefault) {
    const json config{{"model", "from-config"}, {"parallelism", 3}};
    const Settings with_env(config, env_of({{"STEPMATH_MODEL", "from-env"}}));
    const Settings no_env(config, env_of({}));
    const Settings nothing(json::object(), env_of({}));

    auto r = with_env.resolve("model", std::string("from-flag"), "default");
    EXPECT_EQ(r.value, "from-flag");
    EXPECT_EQ(r.source, SettingSource::Flag);

    r = with_env.resolve("model", std::nullopt, "default");
    EXPECT_EQ(r.value, "from-env");
    EXPECT_EQ(r.source, SettingSource::Environment);

    r = no_env.resolve("model", std::nullopt, "default");
    EXPECT_EQ(r.value, "from-config");
    EXPECT_EQ(r.source, SettingSource::ConfigFile);

    r = nothing.resolve("model", std::nullopt, "default");
    EXPECT_EQ(r.value, "default");
    EXPECT_EQ(r.source, SettingSource::Default);
}

TEST(Settings, KeysWithoutEnvironmentVariable) {
    const Settings s(json{{"parallelism", 3}}, env_of({{"STEPMATH_PARALLELISM", "9"}}));
    EXPECT_EQ(s.get_int("parallelism", std::nullopt, 1), 3);
    EXPECT_EQ(s.get_int("parallelism", 5, 1), 5);
    EXPECT_EQ(s.get_int("retries", std::nullopt, 2), 2);
}

TEST(Settings, IntegerParsing) {
    const Settings s(json{{"parallelism", "four"}}, env_of({}));
    EXPECT_THROW(s.get_int("parallelism", std::nullopt, 1), ParseError);
    EXPECT_THROW(Settings(json::array()), ParseError);
}

TEST(Settings, FromFile) {
    const auto path = std::filesystem::temp_directory_path() / "stepmath_settings_test.json";
    std::ofstream(path) << R"({"base_url": "http://localhost:9/v1"})";
    const auto s = Settings::from_file(path.string(), env_of({}));
    EXPECT_EQ(s.get("base_url", std::nullopt, "x"), "http://localhost:9/v1");
    std::ofstream(path) << "{not json";
    EXPECT_THROW(Settings::from_file(path.string(), env_of({})), ParseError);
    std::filesystem::remove(path);
    EXPECT_THROW(Settings::from_file(path.string(), env_of({})), Error);
}

TEST(Settings, EnvironmentNames) {
    EXPECT_EQ(setting_env_names().at("api_key"), "STEPMATH_API_KEY");
    EXPECT_EQ(setting_env_names().at("base_url"), "STEPMATH_BASE_URL");
}
