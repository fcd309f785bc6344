#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cherry/errors.hpp"

namespace cherry {

// Flat declarative "key = value" text config; # starts a comment. Flag
// overrides from the CLI are merged on top of the file entries.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Comma-separated list of "d0:beta" pairs.
    std::vector<std::pair<double, double>> get_cells(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace cherry
