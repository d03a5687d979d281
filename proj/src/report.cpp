#include "qw/report.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "qw/errors.hpp"

namespace qw {

nlohmann::json make_report(const std::string& command, const nlohmann::json& config,
                           const nlohmann::json& results, const nlohmann::json& provenance) {
  char stamp[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

  nlohmann::json rep;
  rep["schema"] = "qwcat-report/1";
  rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  rep["command"] = command;
  rep["timestamp"] = stamp;
  rep["config"] = config;
  rep["results"] = results;
  rep["provenance"] = provenance;
  return rep;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IOError("short write to " + path);
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace qw
