#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace qw {

inline constexpr const char* kToolName = "qwcat";
inline constexpr const char* kToolVersion = "0.1.0";

// Schema-versioned report envelope.  Key order is alphabetical (nlohmann
// objects sort), so identical config and results give byte-identical output
// up to the timestamp field.
nlohmann::json make_report(const std::string& command, const nlohmann::json& config,
                           const nlohmann::json& results, const nlohmann::json& provenance);

void write_text_file(const std::string& path, const std::string& text);  // IOError

// Full-precision decimal for CSV cells; round-trips a double exactly.
std::string csv_number(double v);

}  // namespace qw
