#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace procmine::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kUsageError = 3 };

enum class Algorithm { inductive, decomposition };
enum class Format { csv, json };

struct RunConfig {
  std::string command;
  std::filesystem::path log;
  std::filesystem::path model;
  std::vector<std::filesystem::path> models;  // metrics, select
  std::optional<std::filesystem::path> truth;
  std::optional<std::filesystem::path> output;  // stdout when absent
  Algorithm algorithm = Algorithm::inductive;
  std::size_t max_cluster_size = 25;
  std::size_t search_budget = 5'000'000;
  std::size_t state_cap = 1'048'576;
  unsigned threads = 0;
  Format format = Format::csv;
  std::uint64_t seed = 1;
  // simulate
  std::size_t traces = 100;
  std::size_t alphabet = 8;
  std::size_t max_depth = 4;
  std::size_t max_loop = 2;
  std::string tree;
};

int cmd_discover(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_replay(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_metrics(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_select(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses the command line (and an optional --config file) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Truth labels, one per line: "+"/"-", "1"/"0", "true"/"false", optionally
// preceded by a case id column. A non-matching first line is taken as a header.
std::vector<bool> read_truth(const std::filesystem::path& path);

}  // namespace procmine::cli
