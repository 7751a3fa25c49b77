#pragma once

#include <map>

#include "pindex/verification.hpp"

namespace pindex {

// Flat sectioned config: [section] headers, key = value lines, # comments.
// Values are scalars or space-separated lists; no nesting beyond one level.
class Scenario {
  public:
    static Scenario parse_file(const std::string& path);
    static Scenario parse_text(const std::string& text, const std::string& origin = "<text>");

    const std::string& kind() const { return kind_; }
    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    long get_long(const std::string& section, const std::string& key) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    std::vector<long> get_longs(const std::string& section, const std::string& key) const;
    std::vector<double> get_doubles(const std::string& section, const std::string& key) const;

    Json echo() const;  // the parsed sections, for report input echoing

  private:
    std::string origin_;
    std::string kind_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

struct RunOverrides {
    std::optional<unsigned long long> seed;
    std::string out_dir;          // empty: no files written
    std::string format = "json";  // "json" or "csv" (csv adds crossing/trajectory tables)
    int workers = 4;
};

// Exit codes: 0 all checks pass, 1 a named check failed, 2 config/validation
// error, 3 numerical failure.
struct RunResult {
    int exit_code = 0;
    Json report;
    std::string message;
    std::vector<std::pair<std::string, std::string>> files;  // (name, contents)
};

RunResult run_scenario(const Scenario& sc, const RunOverrides& ov = {});

// The committed report schema (docs/report-schema.json contents).
Json builtin_report_schema();

}  // namespace pindex
