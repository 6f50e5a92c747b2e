#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "oversquash/graph.hpp"

namespace oversquash::capi {

using json = nlohmann::json;

// A report is a JSON document (object keys sorted by construction) plus one
// flat table for CSV output. Named matrices ride along for --matrices dumps.
struct Report {
    json doc = json::object();
    std::vector<std::string> columns;
    std::vector<json> rows;  // objects keyed by `columns`
    std::map<std::string, Matrix> matrices;

    std::string render_json() const;
    std::string render_csv() const;
};

// Non-finite values have no JSON spelling: +inf and nan become strings so the
// distinction survives, CSV prints them as inf / nan.
json number(double x);

json matrix_json(const Matrix& m);
std::string matrix_csv(const Matrix& m);

}  // namespace oversquash::capi
