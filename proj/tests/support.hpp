#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lords/dgp.hpp"
#include "lords/scm.hpp"

namespace testsupport {

inline std::filesystem::path models_dir() { return LORDS_MODELS_DIR; }
inline std::string cli_path() { return LORDS_CLI_PATH; }

// Fresh scratch directory per test binary run.
inline std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("lords_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline lords::Dataset lords_dataset(std::size_t n, std::uint64_t seed) {
  const auto spec = lords::build_lords_scm();
  return lords::to_natural_units(lords::simulate(spec, n, seed), spec);
}

inline lords::Dataset randomized_dataset(std::size_t n, std::uint64_t seed) {
  const auto spec = lords::build_randomized_scm();
  return lords::to_natural_units(lords::simulate(spec, n, seed), spec);
}

// Runs a shell command, captures combined stdout/stderr, returns exit code.
inline int run_command(const std::string& command, std::string* output) {
  FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return -1;
  std::string captured;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) captured.append(buf, got);
  const int status = ::pclose(pipe);
  if (output) *output = captured;
  if (status < 0) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

inline int run_cli(const std::string& args, std::string* output = nullptr) {
  return run_command(cli_path() + " " + args, output);
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
    ++count;
  return count;
}

}  // namespace testsupport
