#pragma once

#include <string>
#include <vector>

#include "lpalg/algebra.hpp"
#include "lpalg/group_function.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace lpalg {

/// Deterministic CSV writer: fixed %.17g formatting, caller-ordered rows.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& row);
    void add_row_mixed(const std::vector<std::string>& row);
    std::string str() const;
    void write(const std::string& path) const;
    static std::string format(double v);

private:
    std::vector<std::string> header_;
    std::vector<std::string> rows_;
};

nlohmann::json group_to_json(const GroupModel& model);
nlohmann::json weight_to_json(const Weight& w);
nlohmann::json inequality_report_to_json(const InequalityReport& rep);

std::string function_to_csv(const GroupFunction& f);
std::string ball_to_csv(const GroupModel& model, int n);

/// "Z" | "Z2" | "Z3" | "heis" | "cyclic:N" | "mesh:h"
GroupModel parse_group(const std::string& spec);
/// "poly:K=..,D=.." | "subexp:C=..,gamma=.." | "exp:C=.." |
/// "prod:<spec>|<spec>" (factors separated by '|')
Weight parse_weight(const std::string& spec);

void write_file(const std::string& path, const std::string& content);

}  // namespace lpalg
