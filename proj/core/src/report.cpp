#include "hitchin_glue/report.hpp"

#include "hitchin_glue/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hg {

ReportRow& ReportRow::set(const std::string& key, ReportValue v) {
    for (auto& c : cells)
        if (c.first == key) {
            c.second = std::move(v);
            return *this;
        }
    cells.emplace_back(key, std::move(v));
    return *this;
}

const ReportValue* ReportRow::get(const std::string& key) const {
    for (const auto& c : cells)
        if (c.first == key) return &c.second;
    return nullptr;
}

ReportFormat report_format_from_name(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw InvalidArgument("unknown report format '" + s + "' (expected csv or json)");
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::vector<std::string> columns(const std::vector<ReportRow>& rows) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (const auto& c : r.cells) {
            bool seen = false;
            for (const auto& k : cols) seen = seen || k == c.first;
            if (!seen) cols.push_back(c.first);
        }
    return cols;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) {
        if (ch == '"') o += '"';
        o += ch;
    }
    return o + "\"";
}

std::string csv_cell(const ReportValue& v) {
    struct {
        std::string operator()(double x) const { return format_double(x); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return csv_escape(s); }
    } vis;
    return std::visit(vis, v);
}

std::string json_cell(const ReportValue& v) {
    struct {
        std::string operator()(double x) const { return std::isfinite(x) ? format_double(x) : "null"; }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
    } vis;
    return std::visit(vis, v);
}

}  // namespace

std::string format_report(const std::vector<ReportRow>& rows, ReportFormat fmt) {
    std::ostringstream os;
    if (fmt == ReportFormat::csv) {
        std::vector<std::string> cols = columns(rows);
        for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << csv_escape(cols[k]);
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (k) os << ',';
                if (const ReportValue* v = r.get(cols[k])) os << csv_cell(*v);
            }
            os << '\n';
        }
        return os.str();
    }
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << "  {";
        const auto& cells = rows[i].cells;
        for (std::size_t k = 0; k < cells.size(); ++k)
            os << (k ? ", " : "") << nlohmann::json(cells[k].first).dump() << ": " << json_cell(cells[k].second);
        os << (i + 1 < rows.size() ? "},\n" : "}\n");
    }
    os << "]\n";
    return os.str();
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat fmt, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open report file " + path);
    f << format_report(rows, fmt);
    if (!f) throw std::runtime_error("write failed for report file " + path);
}

}  // namespace hg
