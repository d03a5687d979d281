#pragma once

#include <string>
#include <vector>

namespace qw {

// Parsed command line; defaults match the per-command documentation.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;  // walk files or @registry refs
  std::string init_path;            // state file; empty = delta at the origin
  int grid = 4096;                  // power of two >= 512
  int window = 0;                   // 0 picks the command default
  long long t = 1;
  unsigned seed = 7;
  int trials = 20;
  std::string kgrid;  // "a:b:m" wavenumber sweep for charfn
  bool build = false;
  bool verify = false;
  std::string out_path;
  std::string format;  // "", "json", "csv"; empty infers from out_path
};

// Executes one command.  Returns 0 (affirmative / success) or 3 (negative
// verdict: no intertwiner, not realizable, walk fails validation).  Errors
// escape as qw::Error subclasses.
int run(const RunConfig& cfg);

// Full front end: parse args (no argv[0]), run, print diagnostics; never
// throws.  Exit codes 0 / 3 / 1.
int run_cli(const std::vector<std::string>& args);

}  // namespace qw
