#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace netvuln {

inline constexpr const char* kArtifactVersion = "netvuln-0.1.0";

// One experiment outcome. Values are an ordered map so emission order is
// deterministic; wall time is kept out of files unless timing is requested,
// which keeps re-runs byte-identical.
struct ResultRecord {
    std::string op;
    nlohmann::json params;
    std::map<std::string, double> values;
    double se = 0.0;
    bool has_se = false;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
    std::string error;  // empty on success

    nlohmann::json to_json(bool with_timing = false) const;
};

enum class OutputFormat { JsonLines, Csv };

OutputFormat parse_format(const std::string& name);

// Serializers; both carry exactly the same values.
std::string to_json_lines(const std::vector<ResultRecord>& records, bool with_timing = false);
std::string to_csv(const std::vector<ResultRecord>& records, bool with_timing = false);

}  // namespace netvuln
