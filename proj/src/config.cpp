#include "lacstat/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lacstat {

namespace {
std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        std::string full = section.empty() ? key : section + "." + key;
        if (cfg.values_.count(full))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + full + "'");
        cfg.values_[full] = val;
        cfg.consumed_[full] = false;
    }
    return cfg;
}

std::string Config::raw_lookup(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

std::string Config::get_string(const std::string& key) { return raw_lookup(key); }

std::string Config::get_string(const std::string& key, const std::string& dflt) {
    if (!has(key)) return dflt;
    return raw_lookup(key);
}

long Config::get_int(const std::string& key) {
    std::string v = raw_lookup(key);
    try {
        size_t pos = 0;
        long r = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": key '" + key + "': not an integer: '" + v + "'");
    }
}

long Config::get_int(const std::string& key, long dflt) { return has(key) ? get_int(key) : dflt; }

double Config::get_double(const std::string& key) {
    std::string v = raw_lookup(key);
    try {
        size_t pos = 0;
        double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": key '" + key + "': not a real: '" + v + "'");
    }
}

double Config::get_double(const std::string& key, double dflt) { return has(key) ? get_double(key) : dflt; }

bool Config::get_bool(const std::string& key, bool dflt) {
    if (!has(key)) return dflt;
    std::string v = raw_lookup(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(origin_ + ": key '" + key + "': not a boolean: '" + v + "'");
}

mpq_class Config::get_exact(const std::string& key) {
    std::string v = raw_lookup(key);
    try {
        return parse_decimal_rational(v);
    } catch (const ConfigError& e) {
        throw ConfigError(origin_ + ": key '" + key + "': " + e.what());
    }
}

RealInput Config::get_real(const std::string& key) {
    std::string v = raw_lookup(key);
    try {
        return RealInput::parse(v);
    } catch (const ConfigError& e) {
        throw ConfigError(origin_ + ": key '" + key + "': " + e.what());
    }
}

RealInput Config::get_real(const std::string& key, const std::string& dflt_token) {
    if (!has(key)) return RealInput::parse(dflt_token);
    return get_real(key);
}

std::vector<std::string> Config::get_list(const std::string& key) {
    std::string v = raw_lookup(key);
    std::vector<std::string> out;
    std::string cur;
    for (char c : v) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<long> Config::get_int_list(const std::string& key) {
    std::vector<long> out;
    for (const auto& tok : get_list(key)) {
        try {
            out.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ": key '" + key + "': not an integer list element: '" + tok + "'");
        }
    }
    return out;
}

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (k.rfind(prefix, 0) == 0) out.push_back(k);
    return out;
}

void Config::finish() const {
    std::vector<std::string> leftover;
    for (const auto& [k, used] : consumed_)
        if (!used) leftover.push_back(k);
    if (!leftover.empty()) {
        std::string msg = origin_ + ": unknown key(s):";
        for (const auto& k : leftover) msg += " '" + k + "'";
        throw ConfigError(msg);
    }
}

std::uint64_t Config::canonical_hash() const {
    std::vector<std::string> entries;
    entries.reserve(values_.size());
    for (const auto& [k, v] : values_) entries.push_back(k + "=" + v + "\n");
    std::sort(entries.begin(), entries.end());
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    for (const auto& e : entries)
        for (unsigned char c : e) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    return h;
}

}  // namespace lacstat
