#include "genlevel/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <system_error>
#include <unistd.h>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "genlevel/leaderboard.hpp"
#include "genlevel/normalize.hpp"
#include "genlevel/registry.hpp"
#include "genlevel/report_export.hpp"
#include "genlevel/results.hpp"
#include "genlevel/scoring.hpp"
#include "genlevel/synergy.hpp"
#include "json.hpp"

namespace genlevel::cli {
namespace fs = std::filesystem;
namespace {

constexpr const char* kConfigEnv = "GENLEVEL_CONFIG";

/// Collects output files in memory and publishes them with tmp + rename.
class OutputWriter {
 public:
  explicit OutputWriter(fs::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }

  void commit() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::IoError, dir_.string(), ec.message());

    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
      for (const auto& [name, content] : files_) {
        const fs::path target = dir_ / name;
        const fs::path tmp = dir_ / fmt::format(".{}.tmp-{}", name, ::getpid());
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, tmp.string(), "cannot open for writing");
        out << content;
        out.close();
        if (!out) throw Error(ErrorCode::IoError, tmp.string(), "write failed");
        staged.emplace_back(tmp, target);
      }
    } catch (...) {
      for (const auto& [tmp, _] : staged) fs::remove(tmp, ec);
      throw;
    }
    for (const auto& [tmp, target] : staged) {
      fs::rename(tmp, target, ec);
      if (ec) throw Error(ErrorCode::IoError, target.string(), ec.message());
    }
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

struct Loaded {
  Registry registry;
  std::vector<ModelResults> models;
  Diagnostics diagnostics;
};

void print_diagnostics(const Diagnostics& diagnostics, std::ostream& err) {
  for (const auto& d : diagnostics) err << d.format() << '\n';
}

// Reads and validates registry and results, gathering every problem.
// The registry is only built when its records are clean.
Loaded load_inputs(const RunConfig& config, bool need_results) {
  if (config.registry_path.empty()) throw Error(ErrorCode::ConfigError, "registry", "no registry path");
  Loaded loaded;
  auto text = read_file(config.registry_path);
  auto tasks = parse_registry_records(text, format_for(config.registry_path), loaded.diagnostics);
  auto validation = validate_tasks(tasks);
  loaded.diagnostics.insert(loaded.diagnostics.end(), validation.begin(), validation.end());
  const bool registry_ok = !has_errors(loaded.diagnostics);
  if (registry_ok) loaded.registry = Registry(std::move(tasks));

  if (config.results_dir.empty()) {
    if (need_results) throw Error(ErrorCode::ConfigError, "results", "no results directory");
    return loaded;
  }
  loaded.models = load_results_dir(config.results_dir, loaded.diagnostics);
  if (loaded.models.empty()) {
    loaded.diagnostics.push_back({Severity::Warning, ErrorCode::IoError, config.results_dir.string(),
                                  "no model results found"});
  }
  if (registry_ok) {
    for (const auto& m : loaded.models) {
      auto d = validate_results(m, loaded.registry);
      loaded.diagnostics.insert(loaded.diagnostics.end(), d.begin(), d.end());
    }
  }
  return loaded;
}

std::vector<ExportFormat> export_formats(const RunConfig& config) {
  std::vector<ExportFormat> formats;
  for (const auto& f : config.formats) formats.push_back(parse_export_format(f));
  return formats;
}

void print_summary(const std::vector<LevelReport>& reports, int decimals, std::ostream& out) {
  out << fmt::format("{:<28} {:>5} {:>8} {:>8} {:>8} {:>8}\n", "model", "level", "S2", "S3", "S4", "S5");
  for (const auto& r : reports) {
    out << fmt::format("{:<28} {:>5} {:>8} {:>8} {:>8} {:>8}\n", r.model_id, r.assigned_level,
                       format_presented(r.s2.value(), decimals), format_presented(r.s3.value(), decimals),
                       format_presented(r.s4.value(), decimals), format_presented(r.s5.value(), decimals));
  }
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_inputs(config, false);
  print_diagnostics(loaded.diagnostics, err);
  const bool failed = has_errors(loaded.diagnostics);
  out << (failed ? "validation failed" : "ok") << '\n';
  return failed ? kValidationFailure : kSuccess;
}

// Shared prologue for score/rank/synergy: any error aborts before output.
std::optional<Loaded> load_clean(const RunConfig& config, std::ostream& err) {
  auto loaded = load_inputs(config, true);
  print_diagnostics(loaded.diagnostics, err);
  if (has_errors(loaded.diagnostics)) return std::nullopt;
  return loaded;
}

int cmd_score(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_clean(config, err);
  if (!loaded) return kValidationFailure;
  const ScoringOptions options{config.epsilon};
  const auto formats = export_formats(config);

  std::vector<LevelReport> reports;
  for (const auto& m : loaded->models) reports.push_back(score_model(m, loaded->registry, options));

  OutputWriter writer(config.output_dir);
  for (auto f : formats) {
    writer.add(fmt::format("reports.{}", extension(f)),
               f == ExportFormat::Json
                   ? export_reports_json(reports, loaded->registry.fingerprint(), config.precision)
                   : export_reports_csv(reports, config.precision));
  }
  writer.commit();
  print_summary(reports, config.precision, out);
  return kSuccess;
}

int cmd_rank(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_clean(config, err);
  if (!loaded) return kValidationFailure;
  const ScoringOptions options{config.epsilon};
  const auto formats = export_formats(config);

  std::vector<Leaderboard> boards;
  for (const auto& text : config.scopes) {
    boards.push_back(build_leaderboard(loaded->models, Scope::parse(text), loaded->registry, options));
  }

  OutputWriter writer(config.output_dir);
  for (const auto& board : boards) {
    for (auto f : formats) {
      writer.add(fmt::format("leaderboard_{}.{}", board.scope.file_stem(), extension(f)),
                 export_leaderboard(board, f, config.precision));
    }
  }
  writer.commit();

  for (const auto& board : boards) {
    out << "scope " << board.scope.label() << '\n';
    for (const auto& e : board.entries) {
      out << fmt::format("{:>4}  {:<28} L{}  {:>8}\n", e.rank, e.model_id, e.level,
                         format_presented(e.score.value(), config.precision));
    }
  }
  return kSuccess;
}

int cmd_synergy(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto loaded = load_clean(config, err);
  if (!loaded) return kValidationFailure;
  const auto formats = export_formats(config);

  std::vector<NormalizedResults> normalized;
  for (const auto& m : loaded->models) normalized.push_back(normalize_results(m, loaded->registry));

  OutputWriter writer(config.output_dir);
  for (const auto& text : config.synergy_kinds) {
    const auto kind = parse_synergy_kind(text);
    std::vector<ModelSynergy> models;
    for (const auto& n : normalized) models.push_back(synergy_for(kind, n, loaded->registry));
    for (auto f : formats) {
      writer.add(fmt::format("synergy_{}.{}", to_string(kind), extension(f)),
                 f == ExportFormat::Json ? export_synergy_json(kind, models) : export_synergy_csv(models));
    }
    out << fmt::format("synergy {}: {} model(s)\n", to_string(kind), models.size());
  }
  writer.commit();
  return kSuccess;
}

int cmd_normalize(const std::string& metric_name, const std::string& value, double range_min,
                  double range_max, std::ostream& out, std::ostream& err) {
  auto metric = parse_metric(metric_name, range_min, range_max);
  if (!metric) throw Error(ErrorCode::UnknownMetricKind, metric_name, "unknown metric");
  Diagnostics warnings;
  const auto score = normalize(*metric, parse_raw_score(value), &warnings);
  print_diagnostics(warnings, err);
  out << fmt::format("{} {}\n", score.value(), score.presented());
  return kSuccess;
}

}  // namespace

void apply_config_file(RunConfig& config, const fs::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, path.string(), e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, path.string(), "config must be a JSON object");

  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  try {
    if (doc.contains("registry_path")) config.registry_path = resolve(doc["registry_path"].get<std::string>());
    if (doc.contains("results_dir")) config.results_dir = resolve(doc["results_dir"].get<std::string>());
    if (doc.contains("output_dir")) config.output_dir = resolve(doc["output_dir"].get<std::string>());
    if (doc.contains("scopes")) config.scopes = doc["scopes"].get<std::vector<std::string>>();
    if (doc.contains("formats")) config.formats = doc["formats"].get<std::vector<std::string>>();
    if (doc.contains("synergy_kinds")) config.synergy_kinds = doc["synergy_kinds"].get<std::vector<std::string>>();
    if (doc.contains("epsilon")) config.epsilon = doc["epsilon"].get<double>();
    if (doc.contains("precision")) config.precision = doc["precision"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, path.string(), e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"General-Level scoring and ranking engine", "genlevel"};
  app.require_subcommand(1);

  std::string config_path;
  std::string registry;
  std::string results;
  std::string output;
  std::vector<std::string> formats;
  double epsilon = 0.0;
  int precision = 2;

  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (default: $GENLEVEL_CONFIG)");
    sub->add_option("--registry", registry, "Task registry (.json or .csv)");
    sub->add_option("--results", results, "Directory of per-model result files");
    sub->add_option("--output", output, "Output directory");
    sub->add_option("--format", formats, "Export formats: json, csv");
    sub->add_option("--epsilon", epsilon, "Non-zero threshold on the canonical scale");
    sub->add_option("--precision", precision, "Decimals in presented scores");
  };

  auto* validate = app.add_subcommand("validate", "Check registry and results for violations");
  add_run_options(validate);
  auto* score = app.add_subcommand("score", "Compute level reports for every model");
  add_run_options(score);
  auto* rank = app.add_subcommand("rank", "Build leaderboards");
  add_run_options(rank);
  std::vector<std::string> scopes;
  rank->add_option("--scope", scopes, "A | B:<modality> | C:<modality>:<paradigm> | D:<skill>");
  auto* synergy = app.add_subcommand("synergy", "Synergy analyses");
  add_run_options(synergy);
  std::vector<std::string> kinds;
  synergy->add_option("--kind", kinds, "skill | modality | compgen");

  auto* normalize_cmd = app.add_subcommand("normalize", "Normalize one raw metric value");
  std::string metric;
  std::string value;
  double range_min = 0.0;
  double range_max = 0.0;
  normalize_cmd->add_option("--metric", metric, "Metric kind")->required();
  normalize_cmd->add_option("--value", value, "Raw value, 'inf' or 'unsupported'")->required();
  normalize_cmd->add_option("--min", range_min, "LinearRange lower bound");
  normalize_cmd->add_option("--max", range_max, "LinearRange upper bound");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kIoFailure;
  }

  try {
    if (normalize_cmd->parsed()) {
      return cmd_normalize(metric, value, range_min, range_max, out, err);
    }

    CLI::App* sub = app.get_subcommands().front();
    RunConfig config;
    if (config_path.empty()) {
      if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') config_path = env;
    }
    if (!config_path.empty()) apply_config_file(config, config_path);
    if (sub->count("--registry")) config.registry_path = registry;
    if (sub->count("--results")) config.results_dir = results;
    if (sub->count("--output")) config.output_dir = output;
    if (sub->count("--format")) config.formats = formats;
    if (sub->count("--epsilon")) config.epsilon = epsilon;
    if (sub->count("--precision")) config.precision = precision;
    if (sub == rank && !scopes.empty()) config.scopes = scopes;
    if (sub == synergy && !kinds.empty()) config.synergy_kinds = kinds;

    if (sub == validate) return cmd_validate(config, out, err);
    if (sub == score) return cmd_score(config, out, err);
    if (sub == rank) return cmd_rank(config, out, err);
    return cmd_synergy(config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::IoError:
      case ErrorCode::ConfigError:
      case ErrorCode::InvalidScope:
      case ErrorCode::UnsupportedFormat:
      case ErrorCode::UnknownModalityForScope:
      case ErrorCode::UnknownSkillForScope:
        return kIoFailure;
      default:
        return kValidationFailure;
    }
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
}

}  // namespace genlevel::cli
