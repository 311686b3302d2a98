#include "tfd/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tfd/errors.hpp"

namespace tfd {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool valid_key(const std::string& key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') return false;
    for (char c : key) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                        c == '_' || c == '.';
        if (!ok) return false;
    }
    return true;
}

[[noreturn]] void parse_fail(const std::string& origin, int line,
                             const std::string& what) {
    std::ostringstream os;
    os << origin << ": parse error at line " << line << ": " << what;
    throw ConfigError(os.str());
}

[[noreturn]] void field_fail(const std::string& key, const std::string& value,
                             const char* wanted) {
    std::ostringstream os;
    os << "field '" << key << "': cannot parse '" << value << "' as "
       << wanted;
    throw ConfigError(os.str());
}

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* last = t.data() + t.size();
    auto [p, ec] = std::from_chars(t.data(), last, v);
    if (ec != std::errc() || p != last) field_fail(key, text, "a real number");
    return v;
}

long long to_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    long long v = 0;
    const char* last = t.data() + t.size();
    auto [p, ec] = std::from_chars(t.data(), last, v);
    if (ec != std::errc() || p != last) field_fail(key, text, "an integer");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

Config Config::from_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash_pos = raw.find('#');
        if (hash_pos != std::string::npos) raw.erase(hash_pos);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            parse_fail(origin, lineno, "missing '=' in '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            parse_fail(origin, lineno,
                       "invalid key '" + key +
                           "' (expected dotted lowercase identifier)");
        if (value.empty())
            parse_fail(origin, lineno, "empty value for key '" + key + "'");
        auto [it, inserted] = cfg.kv_.emplace(key, value);
        if (!inserted) {
            std::ostringstream os;
            os << "duplicate key '" << key << "' (first defined at line "
               << cfg.lines_.at(key) << ")";
            parse_fail(origin, lineno, os.str());
        }
        cfg.lines_[key] = lineno;
    }
    return cfg;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

void Config::set(const std::string& key, const std::string& value) {
    if (!valid_key(key)) throw ConfigError("invalid config key '" + key + "'");
    kv_[key] = value;
    lines_.erase(key);
}

const std::string& Config::get_string(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end())
        throw ConfigError(origin_ + ": missing required field '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    return to_double(key, get_string(key));
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : to_double(key, it->second);
}

long long Config::get_int(const std::string& key) const {
    return to_int(key, get_string(key));
}

long long Config::get_int(const std::string& key, long long fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : to_int(key, it->second);
}

bool Config::get_bool(const std::string& key) const {
    const std::string& v = get_string(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    field_fail(key, v, "a boolean (true/false/1/0)");
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& tok : split_list(get_string(key)))
        out.push_back(to_double(key, tok));
    return out;
}

std::vector<int> Config::get_ints(const std::string& key) const {
    std::vector<int> out;
    for (const std::string& tok : split_list(get_string(key)))
        out.push_back(static_cast<int>(to_int(key, tok)));
    return out;
}

std::vector<std::string> Config::get_strings(const std::string& key) const {
    return split_list(get_string(key));
}

std::vector<std::string> Config::apply_env_overrides() {
    static const std::string prefix = "tolerances.";
    std::vector<std::string> changed;
    for (auto& [key, value] : kv_) {
        if (key.rfind(prefix, 0) != 0) continue;
        std::string env_name = "TFD_TOL_";
        for (char c : key.substr(prefix.size()))
            env_name.push_back(c == '.' ? '_'
                                        : static_cast<char>(std::toupper(
                                              static_cast<unsigned char>(c))));
        const char* env = std::getenv(env_name.c_str());
        if (env == nullptr) continue;
        const std::string replacement = trim(env);
        if (replacement.empty())
            throw ConfigError("environment override " + env_name +
                              " is empty");
        to_double(key, replacement);  // overrides must be numeric
        if (replacement != value) {
            value = replacement;
            changed.push_back(key);
        }
    }
    return changed;
}

std::uint64_t Config::hash() const {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](const std::string& s) {
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
    };
    for (const auto& [key, value] : kv_) {
        mix(key);
        mix("=");
        mix(value);
        mix("\n");
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xfull];
        h >>= 4;
    }
    return out;
}

}  // namespace tfd
