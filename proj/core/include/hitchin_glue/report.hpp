#pragma once

// Keyed result rows and their CSV / JSON emission.

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hg {

using ReportValue = std::variant<double, long long, bool, std::string>;

// Cells keep insertion order; setting an existing key overwrites in place.
struct ReportRow {
    std::vector<std::pair<std::string, ReportValue>> cells;

    ReportRow& set(const std::string& key, ReportValue v);
    ReportRow& set(const std::string& key, double v) { return set(key, ReportValue(v)); }
    ReportRow& set(const std::string& key, bool v) { return set(key, ReportValue(v)); }
    ReportRow& set(const std::string& key, int v) { return set(key, ReportValue(static_cast<long long>(v))); }
    ReportRow& set(const std::string& key, long long v) { return set(key, ReportValue(v)); }
    ReportRow& set(const std::string& key, const std::string& v) { return set(key, ReportValue(v)); }
    ReportRow& set(const std::string& key, const char* v) { return set(key, ReportValue(std::string(v))); }
    const ReportValue* get(const std::string& key) const;
};

enum class ReportFormat { csv, json };
ReportFormat report_format_from_name(const std::string& s);

// 17 significant digits; non-finite values become nan, inf, -inf (CSV) or null (JSON).
std::string format_double(double x);

// Columns are the union of keys in order of first appearance; missing cells are blank (CSV)
// or absent (JSON).
std::string format_report(const std::vector<ReportRow>& rows, ReportFormat fmt);
// Throws std::runtime_error on I/O failure.
void emit_report(const std::vector<ReportRow>& rows, ReportFormat fmt, const std::string& path);

}  // namespace hg
