#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "threshkit/rational.hpp"

namespace threshkit::cli {

enum class Format { Table, Structured };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;  // family files or directories
  Rational width = Rational(1, 1 << 20);
  std::size_t k = 2;
  std::optional<Rational> q;
  Rational K = 16;
  std::uint64_t seed = 1;
  std::size_t limit = 1000;
  std::size_t trials = 100;
  bool all = false;
  std::optional<std::string> group_path;
  std::optional<std::string> cover_path;
  Format format = Format::Table;
};

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kViolated = 1;
inline constexpr int kInputError = 2;
inline constexpr int kCapExceeded = 3;

/// Runs one command. A directory input is expanded to its regular files,
/// processed in filename order.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace threshkit::cli
