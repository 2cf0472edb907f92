#include "report.hpp"

#include <cstdio>
#include <sstream>

namespace fockalg::cli {

using nlohmann::json;

json Report::to_json() const {
    return {{"command", command},   {"parameters", parameters}, {"results", results},
            {"warnings", warnings}, {"notes", notes},           {"exit_code", exit_code}};
}

namespace {

std::string scalar_text(const json& v) {
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.15g", v.get<double>());
        return buf;
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_flat_array(const json& v) {
    if (!v.is_array()) return false;
    for (const json& e : v) {
        if (e.is_object()) return false;
        if (e.is_array()) {
            for (const json& x : e) {
                if (!x.is_number()) return false;
            }
        }
    }
    return true;
}

void render(std::ostringstream& os, const json& v, const std::string& indent) {
    for (const auto& [key, value] : v.items()) {
        if (value.is_object()) {
            os << indent << key << ":\n";
            render(os, value, indent + "  ");
        } else if (value.is_array() && !is_flat_array(value)) {
            os << indent << key << ": (" << value.size() << " entries, see --json)\n";
        } else if (value.is_array()) {
            os << indent << key << ": [";
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (i) os << ", ";
                if (value[i].is_array()) {
                    os << "(";
                    for (std::size_t t = 0; t < value[i].size(); ++t) os << (t ? ", " : "") << scalar_text(value[i][t]);
                    os << ")";
                } else {
                    os << scalar_text(value[i]);
                }
            }
            os << "]\n";
        } else {
            os << indent << key << ": " << scalar_text(value) << "\n";
        }
    }
}

}  // namespace

std::string Report::to_text() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    if (!parameters.empty()) {
        os << "parameters:\n";
        render(os, parameters, "  ");
    }
    if (!results.empty()) {
        os << "results:\n";
        render(os, results, "  ");
    }
    for (const std::string& w : warnings) os << "warning: " << w << "\n";
    for (const std::string& n : notes) os << "note: " << n << "\n";
    os << "exit code: " << exit_code << "\n";
    return os.str();
}

Report error_report(const std::string& command, int exit_code, const std::string& message) {
    Report r;
    r.command = command;
    r.exit_code = exit_code;
    r.results["error"] = message;
    return r;
}

}  // namespace fockalg::cli
