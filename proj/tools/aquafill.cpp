// aquafill: a workbench for online fractional allocation. Runs allocation
// policies over request sequences, computes hindsight optima, applies the
// adversarial sequence transforms, and evaluates regret and competitive
// ratios. All allocation arithmetic is exact; see README.md for the file
// format and examples.

#include <atomic>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aquafill/errors.hpp"
#include "aquafill/harmonic.hpp"
#include "aquafill/hindsight.hpp"
#include "aquafill/instance_io.hpp"
#include "aquafill/majorization.hpp"
#include "aquafill/objectives.hpp"
#include "aquafill/policies.hpp"
#include "aquafill/regret.hpp"
#include "aquafill/sequence.hpp"
#include "aquafill/transforms.hpp"
#include "aquafill/waterfill.hpp"

namespace {

using namespace aquafill;
using nlohmann::ordered_json;

void emit(const ordered_json& payload, const std::string& output_path) {
  std::string text = payload.dump(2) + "\n";
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw Error("cannot write output file: " + output_path);
  out << text;
}

void emit_text(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw Error("cannot write output file: " + output_path);
  out << text;
}

// Minimal wildcard match supporting '*' and '?', applied per path component.
bool wildcard_match(std::string_view pattern, std::string_view text) {
  if (pattern.empty()) return text.empty();
  if (pattern[0] == '*') {
    for (size_t skip = 0; skip <= text.size(); ++skip) {
      if (wildcard_match(pattern.substr(1), text.substr(skip))) return true;
    }
    return false;
  }
  if (text.empty()) return false;
  if (pattern[0] != '?' && pattern[0] != text[0]) return false;
  return wildcard_match(pattern.substr(1), text.substr(1));
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  namespace fs = std::filesystem;
  fs::path p(pattern);
  fs::path dir = p.parent_path().empty() ? fs::path(".") : p.parent_path();
  std::string name_pattern = p.filename().string();
  std::vector<std::string> matches;
  if (!fs::is_directory(dir)) {
    throw ValidationError("glob directory does not exist: " + dir.string());
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (wildcard_match(name_pattern, entry.path().filename().string())) {
      matches.push_back(entry.path().string());
    }
  }
  std::sort(matches.begin(), matches.end());
  if (matches.empty()) throw ValidationError("glob matched no files: " + pattern);
  return matches;
}

// Fans out one JSON report per file, preserving input order regardless of
// scheduling. Worker state is per-file: nothing is shared but the counter.
std::vector<ordered_json> map_files(const std::vector<std::string>& files, int jobs,
                                    const std::function<ordered_json(const std::string&)>& fn) {
  std::vector<ordered_json> results(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<size_t> cursor{0};
  int worker_count = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));

  auto worker = [&]() {
    while (true) {
      size_t index = cursor.fetch_add(1);
      if (index >= files.size()) return;
      try {
        results[index] = fn(files[index]);
      } catch (const std::exception& e) {
        errors[index] = e.what();
      }
    }
  };
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < worker_count; ++w) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  for (const std::string& message : errors) {
    if (!message.empty()) throw ValidationError(message);
  }
  return results;
}

ExpectationMode parse_mode(const std::string& mode, int samples, std::uint64_t seed) {
  if (mode == "exact") return ExpectationMode::exact();
  if (mode == "mc") return ExpectationMode::monte_carlo(samples, seed);
  throw InvalidParameter("--mode must be exact or mc");
}

ordered_json objective_values(const std::vector<std::string>& names, const RVec& loads) {
  ordered_json values = ordered_json::object();
  for (const std::string& name : names) {
    values[name] = make_objective(name).evaluate(loads);
  }
  return values;
}

// ---- run ------------------------------------------------------------------

struct RunOptions {
  std::string input;
  std::string glob;
  int jobs = 1;
  std::string policy = "wf";
  std::uint64_t seed = 0;
  std::vector<std::string> objectives;
  bool summary = false;
  std::string output;
};

ordered_json run_one(const RunOptions& options, const std::string& file) {
  RequestSequence sequence = load_instance(file);
  auto policy = make_policy(options.policy);
  AllocationTrace trace = run_policy(sequence, *policy, options.seed);

  ordered_json j;
  j["file"] = file;
  j["policy"] = options.policy;
  j["seed"] = options.seed;
  if (options.summary) {
    j["final_loads"] = format_vector(trace.final_loads);
  } else {
    j["trace"] = trace_to_json(trace);
  }
  if (!options.objectives.empty()) {
    j["objectives"] = objective_values(options.objectives, trace.final_loads);
  }
  return j;
}

int cmd_run(const RunOptions& options) {
  if (!options.glob.empty()) {
    std::vector<std::string> files = expand_glob(options.glob);
    ordered_json j;
    j["results"] = map_files(files, options.jobs,
                             [&](const std::string& f) { return run_one(options, f); });
    emit(j, options.output);
    return 0;
  }
  emit(run_one(options, options.input), options.output);
  return 0;
}

// ---- opt ------------------------------------------------------------------

int cmd_opt(const std::string& input, bool witness, const std::string& output) {
  RequestSequence sequence = load_instance(input);
  HindsightResult result = opt_hindsight_with_witness(sequence);
  ordered_json j;
  j["file"] = input;
  j["loads"] = format_vector(result.loads);
  ordered_json levels = ordered_json::array();
  for (const Rat& level : result.levels) levels.push_back(format_rational(level));
  j["levels"] = levels;
  if (witness) {
    ordered_json w = ordered_json::array();
    for (const RVec& x : result.witness) w.push_back(format_vector(x));
    j["witness"] = w;
  }
  emit(j, output);
  return 0;
}

// ---- transform ------------------------------------------------------------

struct TransformOptions {
  std::string input;
  std::string kind;
  std::string policy = "wf";
  std::string mode = "exact";
  int samples = 10000;
  std::uint64_t seed = 0;
  bool audit = false;
  bool chain = false;
  std::string output;
};

int cmd_transform(const TransformOptions& options) {
  RequestSequence sequence = load_instance(options.input);
  ordered_json j;
  j["file"] = options.input;
  j["kind"] = options.kind;

  if (options.kind == "nestify") {
    NestifyResult result = nestify(sequence);
    j["instance"] = instance_to_json(result.sequence);
    if (options.audit) j["audit"] = nestify_audit_to_json(result.audit);
    emit(j, options.output);
    return 0;
  }

  // deviate and worstcase need a nested input; --chain nestifies first.
  if (!is_nested(validate(sequence))) {
    if (!options.chain) {
      throw NotNested(options.kind + " needs a nested input; rerun with --chain "
                      "to nestify first");
    }
    NestifyResult chained = nestify(sequence);
    if (options.audit) j["nestify_audit"] = nestify_audit_to_json(chained.audit);
    sequence = chained.sequence;
    j["chained"] = true;
  }

  if (options.kind == "deviate") {
    auto policy = make_policy(options.policy);
    DeviationAudit audit;
    RequestSequence out = policy_deviation(
        sequence, *policy, parse_mode(options.mode, options.samples, options.seed), &audit);
    j["policy"] = options.policy;
    j["instance"] = instance_to_json(out);
    if (options.audit) {
      j["audit"] = {{"phi", audit.phi},
                    {"removed_upfront", audit.removed_upfront},
                    {"removed", audit.removed}};
    }
    emit(j, options.output);
    return 0;
  }

  if (options.kind == "worstcase") {
    j["instance"] = instance_to_json(worstcase_upper_triangular(sequence));
    emit(j, options.output);
    return 0;
  }

  throw InvalidParameter("--kind must be nestify, deviate, or worstcase");
}

// ---- game -----------------------------------------------------------------

int cmd_game(const std::string& input, const std::string& policy_name, std::uint64_t seed,
             const std::string& output) {
  RequestSequence sequence = load_instance(input);
  auto policy = make_policy(policy_name);
  GameTranscript transcript = adaptive_game(*policy, sequence, seed);
  ordered_json j;
  j["file"] = input;
  j["policy"] = policy_name;
  j["seed"] = seed;
  j.update(transcript_to_json(transcript));
  emit(j, output);
  return 0;
}

// ---- regret ---------------------------------------------------------------

struct RegretOptions {
  std::string input;
  std::string policy = "wf";
  std::string objective;
  double alpha = 1.0;
  std::string mode = "exact";
  int samples = 10000;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_regret(const RegretOptions& options) {
  RequestSequence sequence = load_instance(options.input);
  auto policy = make_policy(options.policy);
  ObjectiveSpec objective = make_objective(options.objective);
  RegretReport report =
      alpha_regret(sequence, *policy, objective, options.alpha,
                   parse_mode(options.mode, options.samples, options.seed));
  ordered_json j;
  j["file"] = options.input;
  j["policy"] = options.policy;
  j.update(report.to_json());
  emit(j, options.output);
  return 0;
}

// ---- cr -------------------------------------------------------------------

struct CrOptions {
  std::string objective;
  std::string range = "2..6";
  std::string mode = "both";
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string output;
};

std::pair<int, int> parse_range(const std::string& range) {
  size_t dots = range.find("..");
  try {
    if (dots == std::string::npos) {
      int single = std::stoi(range);
      return {single, single};
    }
    int lo = std::stoi(range.substr(0, dots));
    int hi = std::stoi(range.substr(dots + 2));
    if (lo < 1 || hi < lo) throw std::invalid_argument("bad range");
    return {lo, hi};
  } catch (const std::exception&) {
    throw InvalidParameter("--n must be a positive integer or range like 2..6");
  }
}

// Objective spec used for the numeric search of a closed-form name.
std::optional<ObjectiveSpec> numeric_spec_for(const std::string& name,
                                              std::optional<CrObjective> closed) {
  if (!closed) return make_objective(name);
  switch (*closed) {
    case CrObjective::Nsw: return make_objective("nsw");
    case CrObjective::Maximin: return make_objective("egalitarian");
    case CrObjective::MakespanMin: return make_objective("makespan");
    case CrObjective::Matching: return make_objective("matching:1");
    case CrObjective::SeparableConcave: return std::nullopt;  // a bound, not a function
  }
  return std::nullopt;
}

int cmd_cr(const CrOptions& options) {
  auto [lo, hi] = parse_range(options.range);
  bool want_closed = options.mode == "closed" || options.mode == "both";
  bool want_numeric = options.mode == "numeric" || options.mode == "both";
  if (!want_closed && !want_numeric) {
    throw InvalidParameter("--mode must be closed, numeric, or both");
  }

  std::optional<CrObjective> closed_name;
  try {
    closed_name = cr_objective_from_name(options.objective);
  } catch (const UnknownObjective&) {
    closed_name = std::nullopt;  // numeric-only catalog objective
  }
  if (want_closed && !closed_name) {
    throw UnknownObjective("no closed-form competitive ratio for: " + options.objective);
  }
  std::optional<ObjectiveSpec> numeric_spec = numeric_spec_for(options.objective, closed_name);

  SearchConfig config;
  config.seed = options.seed;

  ordered_json rows = ordered_json::array();
  for (int n = lo; n <= hi; ++n) {
    ordered_json row;
    row["n"] = n;
    if (want_closed) {
      ClosedFormCr closed = closed_form_cr(*closed_name, n);
      row["closed"] = closed.exact ? ordered_json(format_rational(*closed.exact))
                                   : ordered_json(closed.value);
      row["closed_value"] = closed.value;
      if (closed.lower_bound_only) row["lower_bound_only"] = true;
    }
    if (want_numeric) {
      if (numeric_spec) {
        RegretReport report = numeric_competitive_ratio(n, *numeric_spec, config);
        row["numeric"] = report.alpha;
      } else {
        row["numeric"] = nullptr;
      }
    }
    rows.push_back(std::move(row));
  }

  ordered_json j;
  j["objective"] = options.objective;
  j["rows"] = rows;

  if (options.format == "table") {
    std::string table = "n\tclosed\tnumeric\n";
    for (const auto& row : rows) {
      table += std::to_string(row["n"].get<int>());
      table += '\t';
      if (row.contains("closed")) {
        table += row["closed"].is_string() ? row["closed"].get<std::string>()
                                           : row["closed"].dump();
      } else {
        table += "-";
      }
      table += '\t';
      if (row.contains("numeric") && !row["numeric"].is_null()) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.6f", row["numeric"].get<double>());
        table += buffer;
      } else {
        table += "-";
      }
      table += '\n';
    }
    emit_text(table, options.output);
    return 0;
  }
  if (options.format != "json") throw InvalidParameter("--format must be json or table");
  emit(j, options.output);
  return 0;
}

// ---- check ----------------------------------------------------------------

ordered_json check_one(const std::string& file, const std::string& original_path) {
  RequestSequence sequence = load_instance(file);
  ordered_json j;
  j["file"] = file;
  j["valid"] = true;
  j["n"] = sequence.n;
  j["m"] = sequence.m();
  j["total_quantity"] = format_rational(sequence.total_quantity());
  j["nested"] = is_nested(sequence);

  if (!original_path.empty()) {
    RequestSequence original = load_instance(original_path);
    MajorizationRelation wf_rel = compare_majorization(
        run_waterfill(original).final_loads, run_waterfill(sequence).final_loads);
    MajorizationRelation opt_rel =
        compare_majorization(opt_hindsight(original), opt_hindsight(sequence));
    bool wf_ok = wf_rel == MajorizationRelation::RightMajorizesLeft ||
                 wf_rel == MajorizationRelation::Equivalent;
    bool opt_ok = opt_rel == MajorizationRelation::LeftMajorizesRight ||
                  opt_rel == MajorizationRelation::Equivalent;
    j["against"] = original_path;
    j["wf_relation"] = to_string(wf_rel);
    j["wf_never_better"] = wf_ok;
    j["opt_relation"] = to_string(opt_rel);
    j["opt_never_worse"] = opt_ok;
    if (!wf_ok || !opt_ok) {
      throw ValidationError(j.dump(2) + "\ntransform guarantee violated");
    }
  }
  return j;
}

int cmd_check(const std::string& input, const std::string& glob, int jobs,
              const std::string& original, const std::string& output) {
  if (!glob.empty()) {
    std::vector<std::string> files = expand_glob(glob);
    ordered_json j;
    j["results"] = map_files(files, jobs, [&](const std::string& f) {
      return check_one(f, original);
    });
    emit(j, output);
    return 0;
  }
  emit(check_one(input, original), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online fractional allocation workbench"};
  app.require_subcommand(1);

  RunOptions run_options;
  CLI::App* run = app.add_subcommand("run", "play a policy over a request sequence");
  run->add_option("input", run_options.input, "instance file");
  run->add_option("--glob", run_options.glob, "process every matching instance file");
  run->add_option("--jobs", run_options.jobs, "worker threads for --glob");
  run->add_option("--policy", run_options.policy, "wf|proportional|greedy-lowest|threshold-guard");
  run->add_option("--seed", run_options.seed, "seed for randomized policies");
  run->add_option("--objective", run_options.objectives, "objective(s) to evaluate on the final loads");
  run->add_flag("--summary", run_options.summary, "final loads only, no trace");
  run->add_option("--output", run_options.output, "write JSON here instead of stdout");

  std::string opt_input, opt_output;
  bool opt_witness = false;
  CLI::App* opt = app.add_subcommand("opt", "hindsight-optimal load vector");
  opt->add_option("input", opt_input, "instance file")->required();
  opt->add_flag("--witness", opt_witness, "include a per-arrival allocation achieving it");
  opt->add_option("--output", opt_output, "write JSON here instead of stdout");

  TransformOptions transform_options;
  CLI::App* transform = app.add_subcommand("transform", "adversarial sequence transforms");
  transform->add_option("input", transform_options.input, "instance file")->required();
  transform->add_option("--kind", transform_options.kind, "nestify|deviate|worstcase")->required();
  transform->add_option("--policy", transform_options.policy, "policy for --kind deviate");
  transform->add_option("--mode", transform_options.mode, "expected loads: exact|mc");
  transform->add_option("--samples", transform_options.samples, "samples for --mode mc");
  transform->add_option("--seed", transform_options.seed, "seed for --mode mc");
  transform->add_flag("--audit", transform_options.audit, "include the transform's working");
  transform->add_flag("--chain", transform_options.chain, "nestify non-nested inputs first");
  transform->add_option("--output", transform_options.output, "write JSON here instead of stdout");

  // Direct aliases for the three kinds.
  TransformOptions nestify_options, deviate_options, worstcase_options;
  nestify_options.kind = "nestify";
  deviate_options.kind = "deviate";
  worstcase_options.kind = "worstcase";
  CLI::App* nestify_cmd = app.add_subcommand("nestify", "rewrite into a nested sequence");
  nestify_cmd->add_option("input", nestify_options.input, "instance file")->required();
  nestify_cmd->add_flag("--audit", nestify_options.audit, "include the transform's working");
  nestify_cmd->add_option("--output", nestify_options.output, "write JSON here instead of stdout");
  CLI::App* deviate_cmd = app.add_subcommand("deviate", "relabel a nested sequence against a policy");
  deviate_cmd->add_option("input", deviate_options.input, "instance file")->required();
  deviate_cmd->add_option("--policy", deviate_options.policy, "policy to play against");
  deviate_cmd->add_option("--mode", deviate_options.mode, "expected loads: exact|mc");
  deviate_cmd->add_option("--samples", deviate_options.samples, "samples for --mode mc");
  deviate_cmd->add_option("--seed", deviate_options.seed, "seed for --mode mc");
  deviate_cmd->add_flag("--audit", deviate_options.audit, "include the removal schedule");
  deviate_cmd->add_flag("--chain", deviate_options.chain, "nestify non-nested inputs first");
  deviate_cmd->add_option("--output", deviate_options.output, "write JSON here instead of stdout");
  CLI::App* worstcase_cmd = app.add_subcommand("worstcase", "worst nested sequence at equal hindsight optimum");
  worstcase_cmd->add_option("input", worstcase_options.input, "instance file")->required();
  worstcase_cmd->add_flag("--chain", worstcase_options.chain, "nestify non-nested inputs first");
  worstcase_cmd->add_option("--output", worstcase_options.output, "write JSON here instead of stdout");

  std::string game_input, game_policy = "wf", game_output;
  std::uint64_t game_seed = 0;
  CLI::App* game = app.add_subcommand("game", "adaptive adversary against a policy");
  game->add_option("input", game_input, "nested seed instance file")->required();
  game->add_option("--policy", game_policy, "policy to play against");
  game->add_option("--seed", game_seed, "seed for randomized policies");
  game->add_option("--output", game_output, "write JSON here instead of stdout");

  RegretOptions regret_options;
  CLI::App* regret = app.add_subcommand("regret", "policy regret on one instance");
  regret->add_option("input", regret_options.input, "instance file")->required();
  regret->add_option("--policy", regret_options.policy, "policy to evaluate");
  regret->add_option("--objective", regret_options.objective, "objective name")->required();
  regret->add_option("--alpha", regret_options.alpha, "hindsight discount");
  regret->add_option("--mode", regret_options.mode, "policy expectation: exact|mc");
  regret->add_option("--samples", regret_options.samples, "samples for --mode mc");
  regret->add_option("--seed", regret_options.seed, "seed for --mode mc");
  regret->add_option("--output", regret_options.output, "write JSON here instead of stdout");

  CrOptions cr_options;
  CLI::App* cr = app.add_subcommand("cr", "competitive ratios of water-filling");
  cr->add_option("--objective", cr_options.objective, "closed-form or catalog objective")->required();
  cr->add_option("--n", cr_options.range, "node count or range, e.g. 4 or 2..6");
  cr->add_option("--mode", cr_options.mode, "closed|numeric|both");
  cr->add_option("--format", cr_options.format, "json|table");
  cr->add_option("--seed", cr_options.seed, "seed for the numeric search");
  cr->add_option("--output", cr_options.output, "write output here instead of stdout");

  std::string check_input, check_glob, check_original, check_output;
  int check_jobs = 1;
  CLI::App* check = app.add_subcommand("check", "validate an instance file");
  check->add_option("input", check_input, "instance file");
  check->add_option("--glob", check_glob, "validate every matching instance file");
  check->add_option("--jobs", check_jobs, "worker threads for --glob");
  check->add_option("--original", check_original,
                    "verify transform guarantees of input against this source instance");
  check->add_option("--output", check_output, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);

    if (run->parsed()) {
      if (run_options.input.empty() && run_options.glob.empty()) {
        throw InvalidParameter("run needs an instance file or --glob");
      }
      return cmd_run(run_options);
    }
    if (opt->parsed()) return cmd_opt(opt_input, opt_witness, opt_output);
    if (transform->parsed()) return cmd_transform(transform_options);
    if (nestify_cmd->parsed()) return cmd_transform(nestify_options);
    if (deviate_cmd->parsed()) return cmd_transform(deviate_options);
    if (worstcase_cmd->parsed()) return cmd_transform(worstcase_options);
    if (game->parsed()) return cmd_game(game_input, game_policy, game_seed, game_output);
    if (regret->parsed()) return cmd_regret(regret_options);
    if (cr->parsed()) return cmd_cr(cr_options);
    if (check->parsed()) {
      if (check_input.empty() && check_glob.empty()) {
        throw InvalidParameter("check needs an instance file or --glob");
      }
      return cmd_check(check_input, check_glob, check_jobs, check_original, check_output);
    }
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
