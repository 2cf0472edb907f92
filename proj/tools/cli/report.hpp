#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fockalg::cli {

enum ExitCode : int {
    kComputed = 0,
    kPropertyViolation = 1,
    kInputError = 2,
    kResourceCap = 3,
};

struct Report {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
    int exit_code = kComputed;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string to_text() const;
};

/// Report for a failed run (input error or resource cap).
[[nodiscard]] Report error_report(const std::string& command, int exit_code, const std::string& message);

}  // namespace fockalg::cli
