#include "borbit/cli.hpp"

#include "borbit/counterexample.hpp"
#include "borbit/reports_io.hpp"
#include "borbit/sampling.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <utility>

namespace borbit {

namespace {

// A failure that should stop the command with a specific exit code.
struct CommandError {
  int code;
  std::string message;
};

// Raw option state for one invocation: flag values (when given), the loaded
// config document (when given), and built-in defaults. Flags win over
// config, config over defaults; the output directory also consults
// BORBIT_OUT_DIR between config and default.
class Options {
 public:
  void attach_common(CLI::App& command) {
    command.add_option("--config", config_path_, "JSON config file; flags override it");
    add(command, "--seed", "random seed for sampling and perturbations");
    add(command, "--depth", "orbit truncation depth");
    add(command, "--out", "output directory (or set BORBIT_OUT_DIR)");
  }

  void add(CLI::App& command, const std::string& flag, const std::string& help) {
    const std::string key = flag.substr(2);
    flag_values_[key] = {};
    command.add_option_function<std::string>(
        flag, [this, key](const std::string& value) { flag_values_[key] = value; }, help);
  }

  void add_list(CLI::App& command, const std::string& flag, const std::string& help) {
    const std::string key = flag.substr(2);
    command
        .add_option_function<std::vector<std::string>>(
            flag, [this, key](const std::vector<std::string>& value) { list_values_[key] = value; },
            help)
        ->take_all();
  }

  void load_config() {
    if (config_path_.empty()) {
      return;
    }
    std::ifstream in(config_path_);
    if (!in) {
      throw CommandError{2, "cannot open config file: " + config_path_};
    }
    try {
      config_ = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CommandError{2, "config is not valid JSON: " + std::string(e.what())};
    }
    if (!config_.is_object()) {
      throw CommandError{2, "config must be a JSON object"};
    }
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (auto it = flag_values_.find(key); it != flag_values_.end() && it->second) {
      return *it->second;
    }
    if (config_.contains(key)) {
      const auto& value = config_.at(key);
      if (value.is_string()) {
        return value.get<std::string>();
      }
      if (value.is_number_integer()) {
        return std::to_string(value.get<long long>());
      }
      throw CommandError{2, "config key '" + key + "' must be a string or integer"};
    }
    return fallback;
  }

  std::vector<std::string> list(const std::string& key,
                                const std::vector<std::string>& fallback) const {
    if (auto it = list_values_.find(key); it != list_values_.end()) {
      return it->second;
    }
    if (config_.contains(key)) {
      const auto& value = config_.at(key);
      if (!value.is_array()) {
        throw CommandError{2, "config key '" + key + "' must be an array of strings"};
      }
      std::vector<std::string> result;
      for (const auto& entry : value) {
        if (!entry.is_string()) {
          throw CommandError{2, "config key '" + key + "' must be an array of strings"};
        }
        result.push_back(entry.get<std::string>());
      }
      return result;
    }
    return fallback;
  }

  std::filesystem::path out_dir() const {
    if (auto it = flag_values_.find("out"); it != flag_values_.end() && it->second) {
      return *it->second;
    }
    if (config_.contains("out")) {
      return config_.at("out").get<std::string>();
    }
    if (const char* env = std::getenv("BORBIT_OUT_DIR"); env != nullptr && *env != '\0') {
      return env;
    }
    return ".";
  }

 private:
  std::string config_path_;
  std::map<std::string, std::optional<std::string>> flag_values_;
  std::map<std::string, std::vector<std::string>> list_values_;
  nlohmann::json config_ = nlohmann::json::object();
};

Rational parse_rational_or_fail(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw CommandError{2, what + ": " + e.what()};
  }
}

SeqPoint parse_point_or_fail(const std::string& text, const std::string& what) {
  try {
    return SeqPoint::from_text(text);
  } catch (const std::invalid_argument& e) {
    throw CommandError{2, what + ": " + e.what()};
  }
}

std::uint64_t parse_unsigned_or_fail(const std::string& text, const std::string& what) {
  try {
    std::size_t consumed = 0;
    const unsigned long long value = std::stoull(text, &consumed);
    if (consumed != text.size()) {
      throw std::invalid_argument(text);
    }
    return value;
  } catch (const std::exception&) {
    throw CommandError{2, what + " must be a nonnegative integer, got '" + text + "'"};
  }
}

// "name" or "name:arg1:arg2". Splits on ':'.
std::vector<std::string> split_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t colon = spec.find(':', begin);
    if (colon == std::string::npos) {
      parts.push_back(spec.substr(begin));
      return parts;
    }
    parts.push_back(spec.substr(begin, colon - begin));
    begin = colon + 1;
  }
}

Mapping parse_mapping_spec(const std::string& spec) {
  const auto parts = split_spec(spec);
  if (parts[0] == "shift_halve" && parts.size() == 1) {
    return shift_halve_mapping();
  }
  if (parts[0] == "identity" && parts.size() == 1) {
    return identity_mapping();
  }
  if (parts[0] == "scale" && parts.size() == 2) {
    return scale_mapping(parse_rational_or_fail(parts[1], "scale ratio"));
  }
  throw CommandError{2, "unknown mapping '" + spec +
                            "' (expected shift_halve, identity, or scale:RATIO)"};
}

ComparisonFunction parse_psi_spec(const std::string& spec) {
  const auto parts = split_spec(spec);
  if (parts[0] == "scale" && parts.size() == 2) {
    try {
      return psi_scale(parse_rational_or_fail(parts[1], "psi ratio"));
    } catch (const std::invalid_argument& e) {
      throw CommandError{2, std::string("bad psi ratio: ") + e.what()};
    }
  }
  throw CommandError{2, "unknown comparison gauge '" + spec + "' (expected scale:RATIO)"};
}

IndexSelector parse_selector_spec(const std::string& spec) {
  const auto parts = split_spec(spec);
  if (parts[0] == "identity" && parts.size() == 1) {
    return identity_selector();
  }
  if (parts[0] == "constant" && parts.size() == 2) {
    return constant_selector(parse_unsigned_or_fail(parts[1], "selector constant"));
  }
  throw CommandError{2,
                     "unknown selector '" + spec + "' (expected identity or constant:VALUE)"};
}

ErrorSchedule parse_schedule_spec(const std::string& spec) {
  const auto parts = split_spec(spec);
  try {
    if (parts[0] == "constant" && parts.size() == 2) {
      return constant_schedule(parse_rational_or_fail(parts[1], "schedule value"));
    }
    if (parts[0] == "geometric" && parts.size() == 3) {
      return geometric_schedule(parse_rational_or_fail(parts[1], "schedule start"),
                                parse_rational_or_fail(parts[2], "schedule ratio"));
    }
  } catch (const std::invalid_argument& e) {
    throw CommandError{2, std::string("bad schedule: ") + e.what()};
  }
  throw CommandError{2, "unknown schedule '" + spec +
                            "' (expected constant:VALUE or geometric:START:RATIO)"};
}

PerturbationRule parse_perturbation_spec(const std::string& spec, std::uint64_t seed) {
  const auto parts = split_spec(spec);
  try {
    if (parts[0] == "zero" && parts.size() == 1) {
      return PerturbationRule::zero();
    }
    if (parts[0] == "bump" && parts.size() == 2) {
      return PerturbationRule::first_coordinate_bump(
          parse_rational_or_fail(parts[1], "bump magnitude"));
    }
    if (parts[0] == "random" && parts.size() == 2) {
      return PerturbationRule::seeded_bump(seed,
                                           parse_rational_or_fail(parts[1], "bump scale"));
    }
  } catch (const std::invalid_argument& e) {
    throw CommandError{2, std::string("bad perturbation: ") + e.what()};
  }
  throw CommandError{2, "unknown perturbation '" + spec +
                            "' (expected zero, bump:MAGNITUDE, or random:SCALE)"};
}

GammaSequence parse_gamma_spec(const std::string& spec) {
  try {
    return GammaSequence::constant(parse_rational(spec));
  } catch (const std::invalid_argument& e) {
    throw CommandError{2, std::string("bad gamma: ") + e.what()};
  }
}

// Everything a command handler may need, resolved and typed.
struct Resolved {
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  int depth = 0;
  const Options* options = nullptr;

  Rational rational(const std::string& key, const std::string& fallback) const {
    return parse_rational_or_fail(options->text(key, fallback), key);
  }
  SeqPoint point(const std::string& key, const std::string& fallback) const {
    return parse_point_or_fail(options->text(key, fallback), key);
  }
  std::uint64_t integer(const std::string& key, const std::string& fallback) const {
    return parse_unsigned_or_fail(options->text(key, fallback), key);
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    return options->text(key, fallback);
  }
};

Resolved resolve_common(const Options& options) {
  Resolved r;
  r.options = &options;
  r.seed = parse_unsigned_or_fail(options.text("seed", "12345"), "seed");
  const std::uint64_t depth = parse_unsigned_or_fail(options.text("depth", "64"), "depth");
  if (depth == 0 || depth > 4096) {
    throw CommandError{2, "depth must lie in 1..4096"};
  }
  r.depth = static_cast<int>(depth);
  r.out_dir = options.out_dir();
  return r;
}

MappingFamily resolve_family(const Resolved& r) {
  const std::vector<std::string> specs =
      r.options->list("family", std::vector<std::string>{"shift_halve"});
  if (specs.empty()) {
    throw CommandError{2, "family must name at least one mapping"};
  }
  std::vector<Mapping> members;
  members.reserve(specs.size());
  for (const std::string& spec : specs) {
    members.push_back(parse_mapping_spec(spec));
  }
  return MappingFamily(std::move(members), parse_psi_spec(r.text("psi", "scale:1/3")));
}

TargetSet resolve_target(const Resolved& r) {
  const std::vector<std::string> texts =
      r.options->list("target", std::vector<std::string>{""});
  std::vector<SeqPoint> points;
  points.reserve(texts.size());
  for (const std::string& text : texts) {
    points.push_back(parse_point_or_fail(text, "target point"));
  }
  return TargetSet(std::move(points));
}

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw CommandError{2, "cannot create output directory " + dir.string()};
  }
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) {
    throw CommandError{2, "cannot write " + (dir / name).string()};
  }
  out << content;
}

void write_json(const std::filesystem::path& dir, const std::string& name,
                const nlohmann::json& data) {
  write_file(dir, name, data.dump(2) + "\n");
}

nlohmann::json base_summary(const std::string& command, const Resolved& r) {
  nlohmann::json summary;
  summary["command"] = command;
  summary["seed"] = r.seed;
  summary["depth"] = r.depth;
  return summary;
}

int finish(const std::string& command, const Resolved& r, nlohmann::json summary,
           const std::string& summary_name, bool passed) {
  summary["verdict"] = passed ? "pass" : "fail";
  write_json(r.out_dir, summary_name, summary);
  std::cout << command << ": " << (passed ? "pass" : "fail") << " (reports in "
            << r.out_dir.string() << ")\n";
  return passed ? 0 : 1;
}

int run_check_axioms(const Resolved& r) {
  const std::size_t samples = r.integer("samples", "1000");
  const Rational coefficient = r.rational("coefficient", "2");
  const BMetricSpace space = concrete_space_with(coefficient);

  SampleGenerator generator(r.seed);
  const std::vector<SampleTriple> triples = generator.triples(samples);
  const AxiomReport report = check_b_metric_axioms(space, triples);

  write_file(r.out_dir, "axiom_rows.csv", property_report_csv(report.rows));
  nlohmann::json summary = base_summary("check-axioms", r);
  summary["coefficient"] = to_string(coefficient);
  summary["triples"] = report.triples_checked;
  summary["identity_failures"] = report.identity_failures;
  summary["symmetry_failures"] = report.symmetry_failures;
  summary["triangle_failures"] = report.triangle_failures;
  if (report.min_coefficient) {
    summary["min_coefficient"] = to_string(*report.min_coefficient);
    summary["min_coefficient_float"] = to_double(*report.min_coefficient);
  } else {
    summary["min_coefficient"] = nullptr;
  }
  return finish("check-axioms", r, std::move(summary), "axiom_summary.json", report.all_pass());
}

int run_check_contraction(const Resolved& r) {
  const std::size_t pair_count = r.integer("pairs", "200");
  const MappingFamily family = resolve_family(r);

  SampleGenerator generator(r.seed);
  const std::vector<SamplePair> pairs = generator.pairs(pair_count);

  const PropertyReport contraction = family.validate(pairs, r.depth);
  const PropertyReport monotonicity =
      check_orbit_monotonicity(family.members(), pairs, r.depth);

  std::vector<Rational> gauge_samples = {Rational(0), Rational(1, 3), Rational(1, 2),
                                         Rational(1), Rational(2)};
  for (const SamplePair& pair : pairs) {
    gauge_samples.push_back(distance(pair.x, pair.y));
  }
  const PropertyReport gauge = check_comparison_function(family.psi(), gauge_samples);

  write_file(r.out_dir, "contraction_rows.csv", property_report_csv(contraction));
  write_file(r.out_dir, "monotonicity_rows.csv", property_report_csv(monotonicity));
  write_file(r.out_dir, "gauge_rows.csv", property_report_csv(gauge));

  nlohmann::json summary = base_summary("check-contraction", r);
  summary["pairs"] = pair_count;
  summary["contraction"] = property_report_json(contraction);
  summary["monotonicity"] = property_report_json(monotonicity);
  summary["gauge"] = property_report_json(gauge);
  const bool passed = contraction.all_pass() && monotonicity.all_pass() && gauge.all_pass();
  return finish("check-contraction", r, std::move(summary), "contraction_summary.json", passed);
}

int run_convergence(const Resolved& r) {
  const MappingFamily family = resolve_family(r);
  const TargetSet target = resolve_target(r);
  const SeqPoint start = r.point("start", "1/2");
  const Rational epsilon = r.rational("epsilon", "1/1000000");
  const std::size_t horizon = r.integer("horizon", "60");
  if (horizon == 0) {
    throw CommandError{2, "horizon must be positive"};
  }
  const IndexSelector selector = parse_selector_spec(r.text("selector", "identity"));
  const ErrorSchedule schedule = parse_schedule_spec(r.text("schedule", "geometric:1/3:1/2"));
  const PerturbationRule perturb =
      parse_perturbation_spec(r.text("perturbation", "bump:1/8"), r.seed);

  nlohmann::json summary = base_summary("run-convergence", r);
  summary["start"] = start.to_text();
  summary["selector"] = selector.name();
  summary["schedule"] = schedule.name();
  summary["perturbation"] = perturb.name();

  // Premise checks: the family must actually be contracting on a sample,
  // and the target must absorb its own preimages.
  SampleGenerator generator(r.seed);
  const std::vector<SamplePair> pairs = generator.pairs(25);
  const PropertyReport premise = family.validate(pairs, r.depth);
  const PropertyReport preimages = check_target_preimages(family, target);
  summary["family_contraction"] = property_report_json(premise);
  summary["target_preimages"] = property_report_json(preimages);

  // Optional boundedness premise: with --bound K (and base point --theta),
  // the joint orbit of the start and theta must certify within K/s under
  // every member.
  std::optional<PropertyReport> base_bound;
  if (const std::string bound_text = r.text("bound", ""); !bound_text.empty()) {
    const SeqPoint theta = r.point("theta", "");
    base_bound = check_base_orbit_bound(
        family, start, theta, parse_rational_or_fail(bound_text, "bound"),
        concrete_space().coefficient_s, r.depth);
    summary["base_orbit_bound"] = property_report_json(*base_bound);
  }

  Trajectory trajectory;
  try {
    trajectory = inexact_orbit(family, selector, start, schedule, perturb, horizon, r.depth);
  } catch (const ScheduleTooTightError& e) {
    summary["error"] = e.what();
    return finish("run-convergence", r, std::move(summary), "run_summary.json", false);
  }
  const MonitorReport monitor = convergence_monitor(trajectory, target, epsilon);

  write_file(r.out_dir, "run.csv", trajectory_csv(trajectory, target));
  summary.update(monitor_summary_json(monitor, horizon));
  const bool passed = monitor.n_bar.has_value() && premise.all_pass() &&
                      preimages.all_pass() && (!base_bound || base_bound->all_pass());
  return finish("run-convergence", r, std::move(summary), "run_summary.json", passed);
}

int run_ergodic(const Resolved& r) {
  const MappingFamily family = resolve_family(r);
  const SeqPoint start_x = r.point("start", "1/2");
  const SeqPoint start_y = r.point("start-y", "1/4,1/8");
  const Rational epsilon = r.rational("epsilon", "1/1000000");
  const std::size_t horizon = r.integer("horizon", "60");
  if (horizon == 0) {
    throw CommandError{2, "horizon must be positive"};
  }
  const IndexSelector selector = parse_selector_spec(r.text("selector", "identity"));
  const ErrorSchedule schedule = parse_schedule_spec(r.text("schedule", "geometric:1/3:1/2"));
  const PerturbationRule perturb =
      parse_perturbation_spec(r.text("perturbation", "random:1/8"), r.seed);

  nlohmann::json summary = base_summary("run-ergodic", r);
  summary["start"] = start_x.to_text();
  summary["start_y"] = start_y.to_text();
  summary["selector"] = selector.name();
  summary["schedule"] = schedule.name();
  summary["perturbation"] = perturb.name();

  PairReport report;
  try {
    report = ergodic_pair_run(family, selector, start_x, start_y, schedule, perturb, horizon,
                              epsilon, r.depth);
  } catch (const ScheduleTooTightError& e) {
    summary["error"] = e.what();
    return finish("run-ergodic", r, std::move(summary), "pair_summary.json", false);
  }

  write_file(r.out_dir, "pair.csv", pair_run_csv(report));
  summary.update(pair_summary_json(report, horizon));
  return finish("run-ergodic", r, std::move(summary), "pair_summary.json",
                report.n_check.has_value());
}

int run_build_counterexample(const Resolved& r) {
  const GammaSequence gamma = parse_gamma_spec(r.text("gamma", "1/64"));
  const std::size_t blocks = r.integer("blocks", "3");
  const SeqPoint start = r.point("start", "");
  const Rational threshold = r.rational("threshold", to_string(kEscapeThreshold));

  DivergentOrbit orbit;
  try {
    orbit = build_divergent_orbit(start, gamma, blocks, r.depth);
  } catch (const std::invalid_argument& e) {
    throw CommandError{2, std::string("cannot build the orbit: ") + e.what()};
  } catch (const std::runtime_error& e) {
    throw CommandError{2, std::string("cannot build the orbit: ") + e.what()};
  }
  const VerificationReport verification = verify_divergence(orbit, threshold, r.depth);

  write_file(r.out_dir, "orbit.csv", divergent_orbit_csv(orbit));
  write_json(r.out_dir, "orbit.json", divergent_orbit_json(orbit));
  write_file(r.out_dir, "verification.csv", verification_report_csv(verification));

  nlohmann::json summary = base_summary("build-counterexample", r);
  summary["gamma"] = gamma.description();
  summary["blocks"] = blocks;
  summary["start"] = start.to_text();
  summary["threshold"] = to_string(threshold);
  summary["escape_steps"] = orbit.t;
  summary["verification"] = verification_report_json(verification);
  return finish("build-counterexample", r, std::move(summary), "verification_summary.json",
                verification.all_pass());
}

int run_verify_counterexample(const Resolved& r) {
  const std::string input = r.text("input", "");
  if (input.empty()) {
    throw CommandError{2, "verify-counterexample needs --input ORBIT_JSON"};
  }
  const Rational threshold = r.rational("threshold", to_string(kEscapeThreshold));

  std::ifstream in(input);
  if (!in) {
    throw CommandError{2, "cannot open " + input};
  }
  DivergentOrbit orbit;
  try {
    orbit = divergent_orbit_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw CommandError{2, "input is not valid JSON: " + std::string(e.what())};
  } catch (const std::invalid_argument& e) {
    throw CommandError{2, std::string("input is not a stored orbit: ") + e.what()};
  }

  VerificationReport verification;
  try {
    verification = verify_divergence(orbit, threshold, r.depth);
  } catch (const std::invalid_argument& e) {
    throw CommandError{2, std::string("stored orbit is inconsistent: ") + e.what()};
  }

  write_file(r.out_dir, "verification.csv", verification_report_csv(verification));
  nlohmann::json summary = base_summary("verify-counterexample", r);
  summary["input"] = input;
  summary["threshold"] = to_string(threshold);
  summary["verification"] = verification_report_json(verification);
  return finish("verify-counterexample", r, std::move(summary), "verification_summary.json",
                verification.all_pass());
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"exact experiments with inexact infinite products of contracting mappings"};
  app.require_subcommand(1);

  Options options;
  std::vector<std::pair<CLI::App*, int (*)(const Resolved&)>> handlers;

  {
    CLI::App* cmd = app.add_subcommand("check-axioms",
                                       "sample the relaxed-triangle distance axioms");
    options.attach_common(*cmd);
    options.add(*cmd, "--samples", "number of sampled triples");
    options.add(*cmd, "--coefficient", "relaxed triangle coefficient s");
    handlers.emplace_back(cmd, &run_check_axioms);
  }
  {
    CLI::App* cmd = app.add_subcommand(
        "check-contraction", "check the contraction and monotonicity properties on samples");
    options.attach_common(*cmd);
    options.add(*cmd, "--pairs", "number of sampled pairs");
    options.add_list(*cmd, "--family", "family members (shift_halve, identity, scale:RATIO)");
    options.add(*cmd, "--psi", "comparison gauge (scale:RATIO)");
    handlers.emplace_back(cmd, &run_check_contraction);
  }
  {
    CLI::App* cmd = app.add_subcommand("run-convergence",
                                       "drive an inexact product toward a target set");
    options.attach_common(*cmd);
    options.add_list(*cmd, "--family", "family members");
    options.add(*cmd, "--psi", "comparison gauge");
    options.add_list(*cmd, "--target", "target set points (point text; '' is zero)");
    options.add(*cmd, "--start", "start point text");
    options.add(*cmd, "--epsilon", "stabilization radius");
    options.add(*cmd, "--horizon", "number of steps");
    options.add(*cmd, "--selector", "index selector (identity, constant:VALUE)");
    options.add(*cmd, "--schedule", "error schedule (constant:V, geometric:START:RATIO)");
    options.add(*cmd, "--perturbation", "perturbation rule (zero, bump:M, random:S)");
    options.add(*cmd, "--bound", "orbit bound K: require the start/theta orbits within K/s");
    options.add(*cmd, "--theta", "base point for the orbit bound (default: zero)");
    handlers.emplace_back(cmd, &run_convergence);
  }
  {
    CLI::App* cmd = app.add_subcommand("run-ergodic",
                                       "drive two independently perturbed products together");
    options.attach_common(*cmd);
    options.add_list(*cmd, "--family", "family members");
    options.add(*cmd, "--psi", "comparison gauge");
    options.add(*cmd, "--start", "first start point");
    options.add(*cmd, "--start-y", "second start point");
    options.add(*cmd, "--epsilon", "coalescence radius");
    options.add(*cmd, "--horizon", "number of steps");
    options.add(*cmd, "--selector", "index selector");
    options.add(*cmd, "--schedule", "error schedule");
    options.add(*cmd, "--perturbation", "perturbation rule");
    handlers.emplace_back(cmd, &run_ergodic);
  }
  {
    CLI::App* cmd = app.add_subcommand(
        "build-counterexample",
        "chain escape blocks into an orbit that defeats non-vanishing error schedules");
    options.attach_common(*cmd);
    options.add(*cmd, "--gamma", "constant per-step slack (rational <= 1/64)");
    options.add(*cmd, "--blocks", "number of blocks to chain");
    options.add(*cmd, "--start", "start point text (default: the zero sequence)");
    options.add(*cmd, "--threshold", "escape distance threshold");
    handlers.emplace_back(cmd, &run_build_counterexample);
  }
  {
    CLI::App* cmd = app.add_subcommand("verify-counterexample",
                                       "re-verify a stored orbit from its JSON record");
    options.attach_common(*cmd);
    options.add(*cmd, "--input", "orbit JSON produced by build-counterexample");
    options.add(*cmd, "--threshold", "escape distance threshold");
    handlers.emplace_back(cmd, &run_verify_counterexample);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    options.load_config();
    const Resolved resolved = resolve_common(options);
    for (const auto& [cmd, handler] : handlers) {
      if (cmd->parsed()) {
        return handler(resolved);
      }
    }
    std::cerr << "no command given\n";
    return 2;
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace borbit
