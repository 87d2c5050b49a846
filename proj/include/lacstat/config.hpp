#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lacstat/errors.hpp"
#include "lacstat/realinput.hpp"

namespace lacstat {

// Nested key-value configuration. Sections are bracket headers ([a] or
// [a.b]); keys inside are addressed as "a.b.key". Every key must be
// consumed by the reader; finish() reports leftovers as errors.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& dflt);
    long get_int(const std::string& key);
    long get_int(const std::string& key, long dflt);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double dflt);
    bool get_bool(const std::string& key, bool dflt);
    mpq_class get_exact(const std::string& key);
    RealInput get_real(const std::string& key);
    RealInput get_real(const std::string& key, const std::string& dflt_token);
    std::vector<std::string> get_list(const std::string& key);
    std::vector<long> get_int_list(const std::string& key);

    // All keys under "prefix." (marks none consumed).
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    // Throws ConfigError naming every unconsumed key.
    void finish() const;

    // FNV-1a over the sorted flattened key=value list; stable under key
    // reordering in the file.
    std::uint64_t canonical_hash() const;

private:
    std::string raw_lookup(const std::string& key);
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> consumed_;
    std::string origin_;
};

}  // namespace lacstat
