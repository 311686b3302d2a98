#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tfd {

// Flat scenario configuration: one `key = value` pair per line, `#` starts
// a comment, keys are dotted lowercase identifiers (section.name).  Values
// keep their raw text; typed accessors convert on demand and report the
// offending key and text on failure.  Parse errors carry the source name
// and line number.
//
// Tolerance knobs (keys under `tolerances.`) can be overridden from the
// environment: `tolerances.foo_bar` responds to TFD_TOL_FOO_BAR.  Overrides
// are applied by apply_env_overrides(), which callers must invoke before
// reading hash() so that the recorded hash describes the effective
// configuration.
//
// hash() is a 64-bit FNV-1a digest of the canonical serialization (keys in
// sorted order, `key=value\n`), so two configs hash equal iff they define
// the same effective key/value set regardless of line order or comments.
class Config {
public:
    Config() = default;

    static Config from_string(const std::string& text,
                              const std::string& origin = "<string>");
    static Config from_file(const std::string& path);

    bool has(const std::string& key) const;
    // Inserts or replaces; programmatic values carry no source line.
    void set(const std::string& key, const std::string& value);

    const std::string& get_string(const std::string& key) const;
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // Comma- or whitespace-separated lists.
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<int> get_ints(const std::string& key) const;
    std::vector<std::string> get_strings(const std::string& key) const;

    // Applies TFD_TOL_* environment overrides to `tolerances.*` keys and
    // returns the keys that were changed.
    std::vector<std::string> apply_env_overrides();

    std::uint64_t hash() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }
    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> kv_;
    std::map<std::string, int> lines_;
    std::string origin_ = "<empty>";
};

// Fixed-width lowercase hex form of a config hash (16 digits).
std::string hash_hex(std::uint64_t h);

}  // namespace tfd
