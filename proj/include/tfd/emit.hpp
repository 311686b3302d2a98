#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tfd {

// One verification performed by a scenario run.  `pass` mirrors the
// algebra-suite convention: a residual strictly below the threshold, or a
// non-positive residual for exact (bitwise) checks whose threshold is 0.
struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass() const { return residual < threshold || residual <= 0.0; }
};

// Everything a scenario run reports back: the effective config hash, the
// seed, every declared check exactly once, and the names of the files it
// emitted (relative to the output directory, including the summary file
// itself).  Wall time is printed by the front end, never written to disk,
// so reruns stay byte-identical.
struct RunSummary {
    std::uint64_t config_hash = 0;
    long long seed = 0;
    std::vector<CheckRecord> checks;
    std::vector<std::string> files;

    bool all_pass() const;
    // Throws if two checks share a name (every check must appear once).
    void add_check(std::string name, double residual, double threshold);
    const CheckRecord& check(const std::string& name) const;
};

// Shortest decimal form at 17 significant digits: round-trips every double
// exactly and is locale-independent, so emitted files are byte-stable.
std::string format_float(double v);

// CSV time series: a `# config_hash=<hex>` comment line, a header row with
// the column names, then one row per record at 17 significant digits.  An
// empty record set still emits the hash line and the header row.
void emit_series(const std::string& path, std::uint64_t config_hash,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows);

// Line-delimited summary: first a hash record, then one record per check
// with the fixed key order name / residual / threshold / status, finally
// the emitted-file manifest.
void emit_summary(const std::string& path, const RunSummary& summary);

}  // namespace tfd
