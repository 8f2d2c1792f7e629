#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qrg::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kNumerical = 4 };

struct RunConfig {
  std::string command;
  std::string model = "triangular";
  std::string measure = "tau";
  int n_min = 1;
  int n_max = 6;
  std::optional<double> g_min;
  std::optional<double> g_max;
  int steps = 512;
  std::optional<double> nu;
  std::optional<std::string> output_path;
  std::string format = "csv";
  int threads = 0;
  // `cluster` only
  double g = 0.5;
  int n = 0;
};

// Every precondition violation in one list; empty when the config is usable.
std::vector<std::string> validate(const RunConfig& config);

// Parses argv-style arguments (args[0] is the program name) and runs the
// selected command. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Fixed 12-significant-digit scientific formatting used for every CSV number.
std::string format_number(double value);

}  // namespace qrg::cli
