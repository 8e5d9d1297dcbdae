#include "netvuln/result.hpp"

#include <sstream>

#include "netvuln/errors.hpp"

namespace netvuln {

nlohmann::json ResultRecord::to_json(bool with_timing) const {
    nlohmann::json j;
    j["op"] = op;
    j["params"] = params;
    for (const auto& [name, value] : values) j[name] = value;
    if (has_se) j["se"] = se;
    j["seed"] = seed;
    if (with_timing) j["wall_ms"] = wall_ms;
    j["version"] = kArtifactVersion;
    if (!error.empty()) j["error"] = error;
    return j;
}

OutputFormat parse_format(const std::string& name) {
    if (name == "jsonl" || name == "json-lines") return OutputFormat::JsonLines;
    if (name == "csv") return OutputFormat::Csv;
    throw ConfigError("format must be jsonl or csv, got '" + name + "'");
}

std::string to_json_lines(const std::vector<ResultRecord>& records, bool with_timing) {
    std::ostringstream out;
    for (const auto& r : records) out << r.to_json(with_timing).dump() << '\n';
    return out.str();
}

std::string to_csv(const std::vector<ResultRecord>& records, bool with_timing) {
    std::ostringstream out;
    out << "op,params,value_name,value,se,seed";
    if (with_timing) out << ",wall_ms";
    out << ",version,error\n";
    out.precision(17);
    for (const auto& r : records) {
        const std::string params = r.params.dump();
        std::string quoted = "\"";
        for (char c : params) {
            if (c == '"') quoted += "\"\"";
            else quoted += c;
        }
        quoted += "\"";
        auto row = [&](const std::string& name, double value) {
            out << r.op << ',' << quoted << ',' << name << ',' << value << ',';
            if (r.has_se) out << r.se;
            out << ',' << r.seed;
            if (with_timing) out << ',' << r.wall_ms;
            out << ',' << kArtifactVersion << ',' << r.error << '\n';
        };
        if (r.values.empty()) row("", 0.0);
        for (const auto& [name, value] : r.values) row(name, value);
    }
    return out.str();
}

}  // namespace netvuln
