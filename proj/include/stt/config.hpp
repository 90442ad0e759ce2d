#pragma once

// Run manifest: flat "key = value" lines grouped under [section] headers.
// '#' and ';' start comments. Every key has a default; unknown sections or
// keys are errors reported with their line number.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stt/coupling.hpp"
#include "stt/scenario.hpp"

namespace stt {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Config {
  public:
    Config();  // all defaults

    static Config parse(std::istream& is, const std::string& origin = "<config>");
    static Config load(const std::filesystem::path& path);

    /// Keys are "section.key".
    bool known(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
    const std::string& text(const std::string& key) const;
    double number(const std::string& key) const;
    int integer(const std::string& key) const;

    /// Every key with its resolved value, in schema order.
    std::string resolved_text() const;

    /// Typed views; these validate ranges and throw ConfigError.
    GridSpec grid() const;
    ScenarioParams scenario() const;
    StokesConfig stokes() const;

  private:
    std::vector<std::string> order_;
    std::map<std::string, std::string> values_;
};

}  // namespace stt
