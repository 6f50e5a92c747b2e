#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace oversquash::capi {

namespace {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + '"';
    }
    if (v.is_primitive()) return v.dump();
    return csv_cell(json(v.dump()));
}

}  // namespace

json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

std::string Report::render_json() const { return doc.dump(2) + "\n"; }

std::string Report::render_csv() const {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ",";
            if (row.contains(columns[c])) out << csv_cell(row.at(columns[c]));
        }
        out << "\n";
    }
    return out.str();
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string matrix_csv(const Matrix& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace oversquash::capi
