#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "randstat/gof_tests.hpp"
#include "randstat/montecarlo.hpp"
#include "randstat/rank_tests.hpp"

namespace randstat::cli {

using json = nlohmann::ordered_json;

struct Options {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string format;  // empty: human-readable table on stdout
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool randomize = false;
  std::string theta_mode = "fixed";
  double lambda = 0.0;
  std::string score = "friedman";
  std::string null_p = "uniform";
  double alpha = 0.05;
  std::string n_grid = "64,128,256,512";
  std::size_t replicates = 200000;
  bool replicates_given = false;
  std::string kind = "randomized-rank";
  std::size_t r = 4;
  bool r_given = false;
  std::size_t n = 0;  // declared sample size (test-gof) or calibration sample size
  bool n_given = false;
  std::string data = "auto";
  bool raw_scores = false;
  unsigned threads = 1;
};

namespace detail {

inline std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep = ',') {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
std::optional<T> parse_number(const std::string& s) {
  T value{};
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || begin == end) return std::nullopt;
  return value;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& what) {
  std::vector<T> values;
  for (const auto& item : split(text)) {
    const auto v = parse_number<T>(item);
    if (!v) throw invalid_argument(what + ": cannot parse '" + item + "'");
    values.push_back(*v);
  }
  return values;
}

/// Comma-separated numeric rows. A first line that does not parse as numbers
/// is taken to be a header and skipped. Blank lines are ignored.
inline std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  if (path.empty()) throw invalid_argument("--input is required");
  std::ifstream in(path);
  if (!in) throw invalid_argument("cannot open input file '" + path + "'");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (first) {
      first = false;
      bool numeric = true;
      for (const auto& c : cells) numeric = numeric && parse_number<double>(c).has_value();
      if (!numeric) continue;
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw invalid_argument("input file '" + path + "' has no data rows");
  return rows;
}

template <class T>
T cell_value(const std::string& cell, std::size_t row) {
  const auto v = parse_number<T>(cell);
  if (!v) throw invalid_argument("row " + std::to_string(row) + ": malformed value '" + cell + "'");
  return *v;
}

inline ScoreFunction resolve_score(const std::string& spec, std::size_t r) {
  if (spec == "friedman") return ScoreFunction::identity(r);
  if (spec.rfind("brownmood:", 0) == 0) {
    const auto a = parse_number<std::size_t>(spec.substr(10));
    if (!a) throw invalid_argument("--score brownmood:<a> needs an integer a");
    return ScoreFunction::indicator(r, *a);
  }
  if (spec.rfind("custom:", 0) == 0) {
    auto values = parse_list<double>(spec.substr(7), "--score custom");
    if (values.size() != r) {
      throw invalid_dimension("--score custom has " + std::to_string(values.size()) +
                              " values but r = " + std::to_string(r));
    }
    return ScoreFunction(std::move(values));
  }
  throw invalid_argument("unknown --score '" + spec + "' (friedman, brownmood:<a>, custom:<v1,...>)");
}

inline std::optional<ProbabilityVector> explicit_null(const std::string& spec) {
  if (spec == "uniform") return std::nullopt;
  return ProbabilityVector(parse_list<double>(spec, "--null"));
}

inline ProbabilityVector resolve_null(const std::string& spec, std::size_t r) {
  auto p = explicit_null(spec);
  if (!p) return ProbabilityVector::uniform(r);
  if (p->size() != r) {
    throw invalid_dimension("--null has " + std::to_string(p->size()) + " entries but the data have " +
                            std::to_string(r) + " categories");
  }
  return *p;
}

inline json sample_size_json(const SampleSizeReport& report) {
  return {{"condition1_holds", report.condition1_holds},
          {"condition2_holds", report.condition2_holds},
          {"condition3_holds", report.condition3_holds},
          {"margin1", report.margin1},
          {"margin2", std::isinf(report.margin2) ? json(nullptr) : json(report.margin2)},
          {"margin3", report.margin3},
          {"all_hold", report.all_hold()}};
}

inline std::string sample_size_text(const SampleSizeReport& report) {
  std::ostringstream s;
  const bool holds[] = {report.condition1_holds, report.condition2_holds, report.condition3_holds};
  const double margins[] = {report.margin1, report.margin2, report.margin3};
  for (int k = 0; k < 3; ++k) {
    s << "  condition " << k + 1 << ": " << (holds[k] ? "holds" : "FAILS") << " (margin "
      << format_number(margins[k], 10) << ")\n";
  }
  return s.str();
}

inline void emit_to(const Options& opts, std::ostream& out, const std::string& text) {
  if (opts.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opts.output, std::ios::binary);
  if (!file) throw invalid_argument("cannot write output file '" + opts.output + "'");
  file << text;
}

/// Writes a flat result record: JSON, CSV (header + one row) or an aligned table.
inline void emit_record(const Options& opts, std::ostream& out, const json& record) {
  std::ostringstream text;
  if (opts.format == "json") {
    text << record.dump(2) << "\n";
  } else {
    std::vector<std::pair<std::string, std::string>> cells;
    const int digits = opts.format == "csv" ? 17 : 10;
    for (const auto& [key, value] : record.items()) {
      if (value.is_object() || value.is_array()) continue;
      std::string shown;
      if (value.is_number_float()) {
        shown = format_number(value.get<double>(), digits);
      } else if (value.is_null()) {
        shown = "";
      } else if (value.is_string()) {
        shown = value.get<std::string>();
      } else {
        shown = value.dump();
      }
      cells.emplace_back(key, shown);
    }
    if (opts.format == "csv") {
      for (std::size_t i = 0; i < cells.size(); ++i) text << (i ? "," : "") << cells[i].first;
      text << "\n";
      for (std::size_t i = 0; i < cells.size(); ++i) text << (i ? "," : "") << cells[i].second;
      text << "\n";
    } else {
      for (const auto& [key, shown] : cells) {
        text << key << std::string(key.size() < 18 ? 18 - key.size() : 1, ' ') << shown << "\n";
      }
      if (record.contains("config")) text << "config            " << record["config"].dump() << "\n";
    }
  }
  emit_to(opts, out, text.str());
}

inline json seed_json(const Options& opts) {
  return opts.has_seed ? json(opts.seed) : json(nullptr);
}

inline void require_seed(const Options& opts, const char* why) {
  if (!opts.has_seed) throw invalid_argument(std::string("--seed is required ") + why);
}

inline StatisticKind parse_kind(const std::string& kind) {
  if (kind == "classical-rank") return StatisticKind::classical_rank;
  if (kind == "randomized-rank") return StatisticKind::randomized_rank;
  if (kind == "classical-phi") return StatisticKind::classical_phi;
  if (kind == "randomized-phi") return StatisticKind::randomized_phi;
  throw invalid_argument("unknown --kind '" + kind + "'");
}

inline ExperimentConfig experiment_config(const Options& opts) {
  ExperimentConfig c;
  c.kind = parse_kind(opts.kind);
  c.r = opts.r;
  if (is_rank(c.kind)) {
    const auto score = resolve_score(opts.score, c.r);
    c.score.assign(score.values().begin(), score.values().end());
  } else {
    if (!opts.r_given) {
      if (auto p = explicit_null(opts.null_p)) c.r = p->size();
    }
    c.lambda = opts.lambda;
    const auto p = resolve_null(opts.null_p, c.r);
    c.null_p.assign(p.values().begin(), p.values().end());
  }
  c.theta_mode = opts.theta_mode == "fresh" ? ThetaMode::fresh_per_replicate : ThetaMode::fixed_per_n;
  c.seed = opts.seed;
  c.threads = opts.threads;
  return c;
}

/// Family description shared by simulate and calibrate output. Thread count is
/// left out on purpose: results do not depend on it.
inline json family_json(const Options& opts, const ExperimentConfig& c) {
  json j = {{"kind", opts.kind}, {"r", c.r}};
  if (is_rank(c.kind)) {
    j["score"] = opts.score;
    j["score_values"] = c.score;
  } else {
    j["lambda"] = c.lambda;
    j["null"] = c.null_p;
  }
  j["theta_mode"] = opts.theta_mode;
  j["seed"] = c.seed;
  return j;
}

}  // namespace detail

inline int cmd_test_rank(const Options& opts, std::ostream& out, std::ostream& /*err*/) {
  if (opts.randomize) detail::require_seed(opts, "with --randomize");
  const auto rows = detail::read_csv(opts.input);
  RankingMatrix rankings = [&] {
    if (opts.raw_scores) {
      std::vector<std::vector<double>> values;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& row = values.emplace_back();
        for (const auto& c : rows[i]) row.push_back(detail::cell_value<double>(c, i + 1));
      }
      return rankings_from_scores(values);
    }
    std::vector<std::vector<int>> ranks;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto& row = ranks.emplace_back();
      for (const auto& c : rows[i]) row.push_back(detail::cell_value<int>(c, i + 1));
    }
    return RankingMatrix(ranks);
  }();
  const auto score = detail::resolve_score(opts.score, rankings.cols());
  std::optional<UnitWeights> theta;
  if (opts.randomize) {
    RandomSource rng(opts.seed);
    theta = sample_sphere(rankings.rows(), rng);
  }
  const auto result = rank_test(rankings, score, theta);

  json record;
  record["test"] = "rank";
  record["statistic"] = result.statistic;
  record["df"] = result.df;
  record["p_value"] = result.p_value;
  record["randomized"] = result.randomized;
  record["seed"] = detail::seed_json(opts);
  record["n"] = rankings.rows();
  record["r"] = rankings.cols();
  record["config"] = {{"subcommand", "test-rank"},
                      {"input", opts.input},
                      {"output", opts.output},
                      {"format", opts.format.empty() ? "table" : opts.format},
                      {"score", opts.score},
                      {"score_values", std::vector<double>(score.values().begin(), score.values().end())},
                      {"raw_scores", opts.raw_scores},
                      {"randomize", opts.randomize},
                      {"seed", detail::seed_json(opts)}};
  detail::emit_record(opts, out, record);
  return 0;
}

inline int cmd_test_gof(const Options& opts, std::ostream& out, std::ostream& err) {
  if (opts.randomize) detail::require_seed(opts, "with --randomize");
  const auto rows = detail::read_csv(opts.input);
  std::string data = opts.data;
  if (data == "auto") {
    bool single_column = true;
    for (const auto& row : rows) single_column = single_column && row.size() == 1;
    if (rows.size() == 1 && rows[0].size() >= 2) {
      data = "counts";
    } else if (single_column) {
      data = "outcomes";
    } else {
      throw invalid_argument(
          "cannot tell counts from outcomes: expected one row of counts or one category per row");
    }
  }
  const auto phi = phi_lambda(opts.lambda);

  std::optional<CountVector> counts;
  std::vector<std::size_t> outcomes;
  std::size_t r = 0;
  if (data == "counts") {
    if (rows.size() != 1) throw invalid_argument("counts input must be a single row");
    std::vector<std::uint64_t> values;
    for (const auto& c : rows[0]) values.push_back(detail::cell_value<std::uint64_t>(c, 1));
    counts = opts.n_given ? CountVector(values, opts.n) : CountVector(values);
    r = counts->size();
  } else {
    std::size_t largest = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != 1) {
        throw invalid_argument("row " + std::to_string(i + 1) + ": expected a single category index");
      }
      const auto k = detail::cell_value<std::size_t>(rows[i][0], i + 1);
      if (k < 1) throw invalid_argument("row " + std::to_string(i + 1) + ": categories start at 1");
      outcomes.push_back(k - 1);
      largest = std::max(largest, k);
    }
    if (opts.n_given && outcomes.size() != opts.n) {
      throw invalid_argument("input has " + std::to_string(outcomes.size()) +
                             " outcomes but --n declares " + std::to_string(opts.n));
    }
    const auto p = detail::explicit_null(opts.null_p);
    r = p ? p->size() : (opts.r_given ? opts.r : largest);
    if (opts.r_given && r != opts.r) {
      throw invalid_dimension("--r " + std::to_string(opts.r) + " disagrees with --null");
    }
    if (largest > r) {
      throw invalid_argument("category " + std::to_string(largest) + " exceeds r = " +
                             std::to_string(r));
    }
    if (r < 2) throw invalid_dimension("need at least 2 categories (pass --r)");
  }
  const auto p = detail::resolve_null(opts.null_p, r);
  const std::size_t n = counts ? counts->total() : outcomes.size();
  std::optional<SampleSizeReport> report;
  if (n >= 2) report = check_sample_size(n, p, phi);

  GofTestResult result;
  try {
    if (opts.randomize) {
      RandomSource rng(opts.seed);
      result = counts ? randomized_phi_from_counts(*counts, p, phi, rng)
                      : randomized_phi_statistic(outcomes, p, phi, sample_sphere(n, rng));
    } else {
      result = classical_phi_statistic(counts ? *counts : tally(outcomes, r), p, phi);
    }
  } catch (const phi_domain_error& e) {
    err << "error: " << e.what() << "\n";
    if (report) err << "sample-size report:\n" << detail::sample_size_text(*report);
    return 2;
  }

  if (report && !report->all_hold()) {
    err << "warning: sample-size conditions for the chi-square limit are not all met at n = " << n
        << "\n"
        << detail::sample_size_text(*report);
  }
  if (result.negative_argument) {
    err << "warning: a randomized argument fell below 0; phi is not convex there\n";
  }

  json record;
  record["test"] = "phi-divergence";
  record["statistic"] = result.statistic;
  record["df"] = result.df;
  record["p_value"] = result.p_value;
  record["randomized"] = result.randomized;
  record["seed"] = detail::seed_json(opts);
  record["n"] = n;
  record["r"] = r;
  record["negative_argument"] = result.negative_argument;
  record["sample_size_report"] = report ? detail::sample_size_json(*report) : json(nullptr);
  record["config"] = {{"subcommand", "test-gof"},
                      {"input", opts.input},
                      {"output", opts.output},
                      {"format", opts.format.empty() ? "table" : opts.format},
                      {"data", data},
                      {"lambda", opts.lambda},
                      {"null", std::vector<double>(p.values().begin(), p.values().end())},
                      {"declared_n", opts.n_given ? json(opts.n) : json(nullptr)},
                      {"randomize", opts.randomize},
                      {"seed", detail::seed_json(opts)}};
  detail::emit_record(opts, out, record);
  return 0;
}

inline int cmd_simulate(const Options& opts, std::ostream& out, std::ostream& /*err*/) {
  detail::require_seed(opts, "for simulate");
  if (opts.output.empty()) throw invalid_argument("simulate needs --output <file.csv>");
  auto config = detail::experiment_config(opts);
  config.n_grid = detail::parse_list<std::size_t>(opts.n_grid, "--n-grid");
  config.replicates = opts.replicates;
  const auto report = run_experiment(config);

  const std::filesystem::path csv_path(opts.output);
  auto json_path = csv_path;
  json_path.replace_extension(".json");
  if (json_path == csv_path) throw invalid_argument("--output must not end in .json");

  std::ostringstream csv;
  csv << "n,dk,se,excluded_frac\n";
  for (const auto& p : report.points) {
    csv << p.n << "," << detail::format_number(p.dk, 17) << "," << detail::format_number(p.se, 17)
        << "," << detail::format_number(p.excluded_frac, 17) << "\n";
  }

  json points = json::array();
  for (const auto& p : report.points) {
    points.push_back({{"n", p.n},
                      {"dk", p.dk},
                      {"se", p.se},
                      {"excluded_frac", p.excluded_frac},
                      {"noise_limited", p.noise_limited}});
  }
  auto config_echo = detail::family_json(opts, config);
  config_echo["n_grid"] = config.n_grid;
  config_echo["replicates"] = config.replicates;
  json sidecar = {{"slope", report.slope},
                  {"intercept", report.intercept},
                  {"residuals", report.residuals},
                  {"points", points},
                  {"config", config_echo}};

  {
    std::ofstream file(csv_path, std::ios::binary);
    if (!file) throw invalid_argument("cannot write output file '" + csv_path.string() + "'");
    file << csv.str();
  }
  {
    std::ofstream file(json_path, std::ios::binary);
    if (!file) throw invalid_argument("cannot write output file '" + json_path.string() + "'");
    file << sidecar.dump(2) << "\n";
  }

  out << "n           dk            se            excluded_frac  noise_limited\n";
  for (const auto& p : report.points) {
    char line[160];
    std::snprintf(line, sizeof line, "%-11zu %-13.10g %-13.10g %-14.10g %s\n", p.n, p.dk, p.se,
                  p.excluded_frac, p.noise_limited ? "yes" : "no");
    out << line;
  }
  out << "slope       " << detail::format_number(report.slope, 10) << "\n"
      << "intercept   " << detail::format_number(report.intercept, 10) << "\n"
      << "threads     " << config.threads << "\n"
      << "wrote       " << csv_path.string() << ", " << json_path.string() << "\n";
  return 0;
}

inline int cmd_calibrate(const Options& opts, std::ostream& out, std::ostream& /*err*/) {
  detail::require_seed(opts, "for calibrate");
  const auto config = detail::experiment_config(opts);
  const std::size_t n = opts.n_given ? opts.n : 200;
  const std::size_t replicates = opts.replicates_given ? opts.replicates : 100000;
  const double rate = calibration_check(config, n, replicates, opts.alpha, RandomSource(opts.seed));

  json record;
  record["test"] = "calibration";
  record["rejection_rate"] = rate;
  record["alpha"] = opts.alpha;
  record["monte_carlo_se"] = std::sqrt(opts.alpha * (1.0 - opts.alpha) / static_cast<double>(replicates));
  record["n"] = n;
  record["replicates"] = replicates;
  record["seed"] = opts.seed;
  auto config_echo = detail::family_json(opts, config);
  config_echo["subcommand"] = "calibrate";
  config_echo["format"] = opts.format.empty() ? "table" : opts.format;
  config_echo["output"] = opts.output;
  record["config"] = config_echo;
  detail::emit_record(opts, out, record);
  return 0;
}

/// Runs the command line; returns the process exit code
/// (0 success, 2 user or data error, 1 internal error).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Classical and randomized rank and phi-divergence tests", "randstat"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* sub) {
    sub->add_option("--input", opts.input, "CSV input file")->required();
  };
  auto output = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--output", opts.output, "Output file (default: stdout)");
    if (required) o->required();
    sub->add_option("--format", opts.format, "Result format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto seed = [&](CLI::App* sub) {
    sub->add_option("--seed", opts.seed, "RNG seed (required for any randomization)");
  };
  auto theta_mode = [&](CLI::App* sub) {
    sub->add_option("--theta-mode", opts.theta_mode, "fixed: one theta per n; fresh: one per replicate")
        ->check(CLI::IsMember({"fixed", "fresh"}));
  };
  auto family = [&](CLI::App* sub) {
    sub->add_option("--kind", opts.kind, "Statistic family")
        ->check(CLI::IsMember({"classical-rank", "randomized-rank", "classical-phi", "randomized-phi"}));
    sub->add_option("--r", opts.r, "Number of treatments or categories");
    sub->add_option("--score", opts.score, "friedman | brownmood:<a> | custom:<v1,...,vr>");
    sub->add_option("--lambda", opts.lambda, "Power-divergence index");
    sub->add_option("--null", opts.null_p, "uniform | p1,...,pr");
    theta_mode(sub);
    sub->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
    seed(sub);
  };

  auto* rank = app.add_subcommand("test-rank", "Rank test on a CSV of rankings (one row per block)");
  input(rank);
  output(rank, false);
  seed(rank);
  rank->add_flag("--randomize", opts.randomize, "Use uniform random unit weights");
  rank->add_option("--score", opts.score, "friedman | brownmood:<a> | custom:<v1,...,vr>");
  rank->add_flag("--raw-scores", opts.raw_scores, "Rows hold raw measurements; rank within rows");

  auto* gof = app.add_subcommand("test-gof", "Phi-divergence goodness-of-fit test");
  input(gof);
  output(gof, false);
  seed(gof);
  gof->add_flag("--randomize", opts.randomize, "Use uniform random unit weights");
  gof->add_option("--lambda", opts.lambda, "Power-divergence index (1 = Pearson, 0 = likelihood ratio)");
  gof->add_option("--null", opts.null_p, "uniform | p1,...,pr");
  gof->add_option("--data", opts.data, "Input layout")->check(CLI::IsMember({"auto", "counts", "outcomes"}));
  auto* gof_n = gof->add_option("--n", opts.n, "Declared sample size, checked against the data");
  auto* gof_r = gof->add_option("--r", opts.r, "Number of categories for outcomes with a uniform null");

  auto* sim = app.add_subcommand("simulate", "Kolmogorov-distance convergence experiment");
  output(sim, true);
  family(sim);
  sim->add_option("--n-grid", opts.n_grid, "Comma-separated sample sizes");
  sim->add_option("--replicates", opts.replicates, "Monte Carlo replicates per grid point");

  auto* cal = app.add_subcommand("calibrate", "Empirical type-I error against the chi-square limit");
  output(cal, false);
  family(cal);
  cal->add_option("--alpha", opts.alpha, "Nominal level");
  auto* cal_n = cal->add_option("--n", opts.n, "Sample size (default 200)");
  auto* cal_m = cal->add_option("--replicates", opts.replicates, "Replicates (default 100000)");

  std::vector<const char*> argv{"randstat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto given = [](const CLI::App* sub, const char* name) { return sub->count(name) > 0; };
  try {
    if (*rank) {
      opts.has_seed = given(rank, "--seed");
      return cmd_test_rank(opts, out, err);
    }
    if (*gof) {
      opts.has_seed = given(gof, "--seed");
      opts.n_given = gof_n->count() > 0;
      opts.r_given = gof_r->count() > 0;
      return cmd_test_gof(opts, out, err);
    }
    if (*sim) {
      opts.has_seed = given(sim, "--seed");
      opts.r_given = given(sim, "--r");
      return cmd_simulate(opts, out, err);
    }
    opts.has_seed = given(cal, "--seed");
    opts.r_given = given(cal, "--r");
    opts.n_given = cal_n->count() > 0;
    opts.replicates_given = cal_m->count() > 0;
    return cmd_calibrate(opts, out, err);
  } catch (const randstat::error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace randstat::cli
