#include "commands.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "procmine/alignment.hpp"
#include "procmine/classification.hpp"
#include "procmine/complexity.hpp"
#include "procmine/decomposition.hpp"
#include "procmine/errors.hpp"
#include "procmine/event_log.hpp"
#include "procmine/inductive_miner.hpp"
#include "procmine/pnml.hpp"
#include "procmine/process_tree.hpp"
#include "procmine/reports.hpp"

namespace procmine::cli {

namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const fs::path& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError(std::string(what) + " not found: " + path.string());
}

std::string describe(const ParseError& e, const fs::path& path) {
  std::ostringstream s;
  s << path.string();
  if (e.line() > 0) s << ':' << e.line() << ':' << e.column();
  s << ": " << e.what();
  return s.str();
}

EventLog load_log(const fs::path& path) {
  require_file(path, "event log");
  try {
    return read_xes(path);
  } catch (const ParseError& e) {
    throw InputError(describe(e, path));
  } catch (const std::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

AcceptingPetriNet load_net(const fs::path& path) {
  require_file(path, "model");
  try {
    auto apn = load_model(path);
    apn.validate();
    return apn;
  } catch (const ParseError& e) {
    throw InputError(describe(e, path));
  } catch (const std::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

// Writes to a sibling temporary file and renames it into place, so a failed
// run never leaves a truncated output behind.
void write_atomically(const fs::path& target, const std::function<void(std::ostream&)>& body) {
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw InputError("cannot write " + target.string());
      body(out);
      out.flush();
      if (!out) throw InputError("cannot write " + target.string());
    }
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

void emit(const RunConfig& config, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (config.output) {
    write_atomically(*config.output, body);
  } else {
    body(out);
  }
}

SearchLimits limits_for(const RunConfig& config) {
  SearchLimits limits;
  limits.max_expanded_states = config.search_budget;
  return limits;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<bool> truth_value(std::string s) {
  s = lower(s);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s == "+" || s == "1" || s == "true" || s == "fitting" || s == "yes") return true;
  if (s == "-" || s == "0" || s == "false" || s == "non_fitting" || s == "no") return false;
  return std::nullopt;
}

}  // namespace

std::vector<bool> read_truth(const fs::path& path) {
  require_file(path, "truth file");
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<bool> truth;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto comma = line.rfind(',');
    auto value = truth_value(comma == std::string::npos ? line : line.substr(comma + 1));
    if (!value) {
      if (truth.empty() && number == 1) continue;  // header
      throw InputError(path.string() + ":" + std::to_string(number) + ": unrecognised truth value");
    }
    truth.push_back(*value);
  }
  return truth;
}

int cmd_discover(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    EventLog log = load_log(config.log);
    AcceptingPetriNet apn = config.algorithm == Algorithm::inductive
                                ? discover_net(log)
                                : discover_decomposed(log, config.max_cluster_size);
    auto unpacked = unpack(apn);
    std::ostream& summary = config.output ? out : err;
    if (config.output) {
      write_atomically(finals_sidecar_path(*config.output),
                       [&](std::ostream& o) { write_finals_json(unpacked.net, unpacked.finals, o); });
    }
    emit(config, out, [&](std::ostream& o) { write_pnml(unpacked.net, unpacked.initial, o); });
    summary << "|P|=" << apn.net.place_count() << " |T|=" << apn.net.transition_count()
            << " |A|=" << apn.net.arc_count() << '\n';
    return kOk;
  });
}

int cmd_replay(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    EventLog log = load_log(config.log);
    AcceptingPetriNet apn = load_net(config.model);
    auto replay = replay_log(log, apn, CostScheme{}, limits_for(config), config.threads);
    emit(config, out, [&](std::ostream& o) {
      if (config.format == Format::json) write_replay_json(replay, o);
      else write_replay_csv(replay, o);
    });
    return kOk;
  });
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    EventLog log = load_log(config.log);
    AcceptingPetriNet apn = load_net(config.model);
    std::optional<std::vector<bool>> truth;
    if (config.truth) {
      truth = read_truth(*config.truth);
      if (truth->size() != log.size()) {
        throw UsageError("truth file has " + std::to_string(truth->size()) + " labels but the log has " +
                         std::to_string(log.size()) + " traces");
      }
    }
    auto verdicts = classify_log(log, apn, CostScheme{}, limits_for(config), config.threads);
    std::optional<ConfusionMatrix> matrix;
    if (truth) matrix = confusion(verdicts, *truth);
    emit(config, out, [&](std::ostream& o) {
      if (config.format == Format::json) {
        write_verdicts_json(verdicts, matrix ? &*matrix : nullptr, o);
      } else {
        write_verdicts_csv(verdicts, o);
        if (matrix) {
          o << '\n';
          write_confusion_csv(*matrix, o);
        }
      }
    });
    return kOk;
  });
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    EventLog log = load_log(config.log);
    AcceptingPetriNet apn = load_net(config.model);
    auto result = check_rediscoverability(log, apn, limits_for(config), config.threads);
    out << "trace_fitness=" << format_fraction(result.global.trace_fitness)
        << " move_model_fitness=" << format_fraction(result.global.move_model_fitness)
        << " move_log_fitness=" << format_fraction(result.global.move_log_fitness) << '\n';
    out << (result.rediscoverable ? "rediscoverable" : "not rediscoverable") << '\n';
    return result.rediscoverable ? kOk : kNegative;
  });
}

int cmd_metrics(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.models.empty()) throw UsageError("no model given");
    std::vector<NamedReport> rows;
    for (const auto& path : config.models) {
      AcceptingPetriNet apn = load_net(path);
      if (apn.net.place_count() == 0 || apn.net.transition_count() == 0) {
        throw InputError(path.string() + ": density needs at least one place and one transition");
      }
      rows.emplace_back(path.stem().string(), complexity_report(apn, config.state_cap));
    }
    emit(config, out, [&](std::ostream& o) {
      if (config.format == Format::json) write_metrics_json(rows, o);
      else write_metrics_csv(rows, o);
    });
    return kOk;
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProcessTree tree = ProcessTree::tau();
    if (!config.tree.empty()) {
      try {
        tree = ProcessTree::parse(config.tree);
      } catch (const std::exception& e) {
        throw UsageError(std::string("bad tree: ") + e.what());
      }
    } else {
      if (config.alphabet == 0) throw UsageError("alphabet size must be positive");
      tree = random_tree(config.alphabet, config.max_depth, config.seed);
    }
    EventLog log = simulate(tree, config.traces, config.max_loop, config.seed);
    emit(config, out, [&](std::ostream& o) { write_xes(log, o); });
    (config.output ? out : err) << tree.to_string() << '\n';
    return kOk;
  });
}

int cmd_select(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.models.empty()) throw UsageError("no candidate model given");
    if (!config.truth) throw UsageError("select needs --truth");
    EventLog log = load_log(config.log);
    auto truth = read_truth(*config.truth);
    if (truth.size() != log.size()) {
      throw UsageError("truth file has " + std::to_string(truth.size()) + " labels but the log has " +
                       std::to_string(log.size()) + " traces");
    }
    std::vector<ModelCandidate> candidates;
    for (const auto& path : config.models) {
      AcceptingPetriNet apn = load_net(path);
      auto verdicts = classify_log(log, apn, CostScheme{}, limits_for(config), config.threads);
      candidates.push_back(ModelCandidate{path.stem().string(), confusion(verdicts, truth),
                                          complexity_report(apn, config.state_cap)});
    }
    const std::size_t chosen = select_model(candidates);
    emit(config, out, [&](std::ostream& o) {
      o << "model,tp,fp,tn,fn,correct,ecam,density,arcs,chosen\n";
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        o << c.name << ',' << c.confusion.tp << ',' << c.confusion.fp << ',' << c.confusion.tn << ','
          << c.confusion.fn << ',' << c.confusion.correctly_classified() << ',' << c.complexity.ecam << ','
          << format_fixed(c.complexity.density, 4) << ',' << c.complexity.arcs << ',' << (i == chosen ? "yes" : "no")
          << '\n';
      }
    });
    return kOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Process discovery, conformance replay and model selection", "procmine"};
  app.set_config("--config", "", "TOML-style file with option values (sections per subcommand)");
  app.require_subcommand(1);

  RunConfig config;
  std::string algorithm = "inductive";
  std::string format = "csv";
  std::string output;

  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", output, "Output file (default: stdout)"); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--search-budget", config.search_budget, "Expanded states per alignment");
    sub->add_option("--threads", config.threads, "Worker threads (0: all cores)");
  };

  auto* discover = app.add_subcommand("discover", "Discover an accepting Petri net from an XES log");
  discover->add_option("log", config.log, "XES event log")->required();
  discover->add_option("--algorithm", algorithm, "inductive or decomposition")
      ->check(CLI::IsMember({"inductive", "decomposition"}));
  discover->add_option("--max-cluster-size", config.max_cluster_size, "Largest activity cluster")
      ->check(CLI::PositiveNumber);
  add_output(discover);

  auto* replay = app.add_subcommand("replay", "Align every trace and report fitness");
  replay->add_option("log", config.log, "XES event log")->required();
  replay->add_option("model", config.model, "PNML model")->required();
  add_output(replay);
  add_format(replay);
  add_search(replay);

  auto* classify = app.add_subcommand("classify", "Classify traces as fitting (+) or not (-)");
  classify->add_option("log", config.log, "XES event log")->required();
  classify->add_option("model", config.model, "PNML model")->required();
  std::string truth;
  classify->add_option("--truth", truth, "Ground-truth labels, one per trace");
  add_output(classify);
  add_format(classify);
  add_search(classify);

  auto* check = app.add_subcommand("check", "Exit 0 iff the model replays the log perfectly");
  check->add_option("log", config.log, "XES event log")->required();
  check->add_option("model", config.model, "PNML model")->required();
  add_search(check);

  auto* metrics = app.add_subcommand("metrics", "Complexity metrics, one row per model");
  metrics->add_option("models", config.models, "PNML models")->required();
  metrics->add_option("--state-cap", config.state_cap, "Reachability graph vertex limit");
  add_output(metrics);
  add_format(metrics);

  auto* simulate = app.add_subcommand("simulate", "Write a log simulated from a (random) process tree");
  simulate->add_option("--traces", config.traces, "Number of traces");
  simulate->add_option("--alphabet", config.alphabet, "Activities in the random tree");
  simulate->add_option("--max-depth", config.max_depth, "Depth of the random tree");
  simulate->add_option("--max-loop", config.max_loop, "Loop repetitions at most");
  simulate->add_option("--seed", config.seed, "Random seed");
  simulate->add_option("--tree", config.tree, "Use this tree instead of a random one");
  add_output(simulate);

  auto* select = app.add_subcommand("select", "Pick the best candidate model for a log");
  select->add_option("log", config.log, "XES event log")->required();
  select->add_option("models", config.models, "Candidate PNML models, in preference order")->required();
  select->add_option("--truth", truth, "Ground-truth labels, one per trace")->required();
  select->add_option("--state-cap", config.state_cap, "Reachability graph vertex limit");
  add_output(select);
  add_search(select);

  // --config is a global option but reads naturally after the subcommand too
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      std::rotate(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else if (args[i].starts_with("--config=")) {
      std::rotate(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 1));
    }
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  config.algorithm = algorithm == "decomposition" ? Algorithm::decomposition : Algorithm::inductive;
  config.format = format == "json" ? Format::json : Format::csv;
  if (!output.empty()) config.output = output;
  if (!truth.empty()) config.truth = truth;

  for (const auto* sub : app.get_subcommands()) {
    config.command = sub->get_name();
    if (config.command == "discover") return cmd_discover(config, out, err);
    if (config.command == "replay") return cmd_replay(config, out, err);
    if (config.command == "classify") return cmd_classify(config, out, err);
    if (config.command == "check") return cmd_check(config, out, err);
    if (config.command == "metrics") return cmd_metrics(config, out, err);
    if (config.command == "simulate") return cmd_simulate(config, out, err);
    if (config.command == "select") return cmd_select(config, out, err);
  }
  return kUsageError;
}

}  // namespace procmine::cli
