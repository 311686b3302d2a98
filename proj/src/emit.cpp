#include "tfd/emit.hpp"

#include <charconv>
#include <fstream>

#include "tfd/config.hpp"
#include "tfd/errors.hpp"

namespace tfd {

bool RunSummary::all_pass() const {
    for (const CheckRecord& c : checks)
        if (!c.pass()) return false;
    return true;
}

void RunSummary::add_check(std::string name, double residual,
                           double threshold) {
    for (const CheckRecord& c : checks)
        if (c.name == name)
            throw Error("check '" + name + "' declared twice");
    checks.push_back({std::move(name), residual, threshold});
}

const CheckRecord& RunSummary::check(const std::string& name) const {
    for (const CheckRecord& c : checks)
        if (c.name == name) return c;
    throw Error("no check named '" + name + "'");
}

std::string format_float(double v) {
    char buf[64];
    auto [p, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc()) throw Error("float formatting failed");
    return std::string(buf, p);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

}  // namespace

void emit_series(const std::string& path, std::uint64_t config_hash,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows) {
    if (columns.empty()) throw Error("series needs at least one column");
    std::ofstream out = open_out(path);
    out << "# config_hash=" << hash_hex(config_hash) << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i == 0 ? "" : ",") << columns[i];
    out << "\n";
    for (const std::vector<double>& row : rows) {
        if (row.size() != columns.size())
            throw Error("series row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i == 0 ? "" : ",") << format_float(row[i]);
        out << "\n";
    }
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

void emit_summary(const std::string& path, const RunSummary& summary) {
    std::ofstream out = open_out(path);
    out << "{\"config_hash\":\"" << hash_hex(summary.config_hash)
        << "\",\"seed\":" << summary.seed << "}\n";
    for (const CheckRecord& c : summary.checks) {
        out << "{\"name\":\"" << c.name
            << "\",\"residual\":" << format_float(c.residual)
            << ",\"threshold\":" << format_float(c.threshold)
            << ",\"status\":\"" << (c.pass() ? "pass" : "fail") << "\"}\n";
    }
    out << "{\"manifest\":[";
    for (std::size_t i = 0; i < summary.files.size(); ++i)
        out << (i == 0 ? "" : ",") << "\"" << summary.files[i] << "\"";
    out << "]}\n";
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace tfd
