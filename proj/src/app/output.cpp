#include "qotto/app/output.hpp"

#include <cstdio>
#include <fstream>

#include "qotto/errors.hpp"

namespace qotto::app {

std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string fmt(long long value) { return std::to_string(value); }

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    return out;
}

} // namespace

void emit_csv(const Table& table, const std::filesystem::path& path) {
    if (table.rows.empty()) {
        throw Error(ErrorCode::IoError, "refusing to write empty table to '" + path.string() + "'");
    }
    std::ofstream out = open_for_write(path);
    out << table.header << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

void emit_summary_json(const nlohmann::json& summary, const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    out << summary.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

} // namespace qotto::app
