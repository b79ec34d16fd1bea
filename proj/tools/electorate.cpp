// electorate: command-line front end for the electoral dynamics library.
//
// Exit codes: 0 success, 1 verification failure, 2 argument or validation
// error, 3 enumeration cap exceeded.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "electorate/electorate.hpp"

namespace {

using namespace electorate;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCap = 3;

int report_error(const std::string& code, const std::string& message, int status) {
  nlohmann::json err = {{"error", {{"code", code}, {"message", message}}}};
  std::cerr << err.dump() << '\n';
  return status;
}

int report_error(const Error& e) {
  return report_error(std::string(to_string(e.code())), e.what(),
                      e.code() == ErrorCode::EnumerationTooLarge ? kExitCap : kExitBadInput);
}

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw Error(ErrorCode::InvalidArguments, std::string("cannot parse ") + what + " '" + std::string(text) + "'");
  return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto piece = std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_number<T>(piece, what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t resolve_cap(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ELECTORATE_CAP"); env && *env)
    return parse_number<std::uint64_t>(env, "ELECTORATE_CAP");
  return kDefaultEnumerationCap;
}

// SOURCE_DATE_EPOCH pins the timestamp for reproducible output.
std::string timestamp_now() {
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env)
    return format::iso8601_utc(static_cast<std::time_t>(parse_number<std::int64_t>(env, "SOURCE_DATE_EPOCH")));
  return format::iso8601_utc(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
}

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidArguments, "cannot open output file " + path);
    file << text;
  }
};

struct SystemArgs {
  std::optional<std::int64_t> electors;
  std::string probs;
  std::optional<std::int64_t> uniform;

  void add_to(CLI::App* cmd, bool electors_required) {
    auto* opt = cmd->add_option("-n,--electors", electors, "Number of electors N");
    if (electors_required) opt->required();
    auto* p = cmd->add_option("--probs", probs, "Comma-separated outcome probabilities p1,p2,...");
    auto* u = cmd->add_option("--uniform", uniform, "Use M equally likely outcomes");
    p->excludes(u);
  }

  std::vector<double> probabilities(std::vector<double> fallback) const {
    if (uniform) {
      if (*uniform < 1) throw Error(ErrorCode::EmptyDistribution, "--uniform needs M >= 1");
      const auto m = static_cast<std::size_t>(*uniform);
      return std::vector<double>(m, 1.0 / static_cast<double>(m));
    }
    if (!probs.empty()) return parse_list<double>(probs, "probability");
    if (fallback.empty()) throw Error(ErrorCode::InvalidArguments, "pass --probs or --uniform");
    return fallback;
  }

  ElectoralSystem system(std::int64_t default_electors = 0, std::vector<double> fallback = {}) const {
    return validate_system(electors.value_or(default_electors), probabilities(std::move(fallback)));
  }
};

void check_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (fmt == a) return;
  throw Error(ErrorCode::InvalidArguments, "unsupported --format '" + fmt + "' for this command");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability and rigidity of electoral systems under multinomial voting"};
  app.require_subcommand(1);

  std::string out_path;
  std::optional<std::uint64_t> cap_flag;
  std::string fmt;

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Closed-form dynamic attributes of one system");
  SystemArgs analyze_args;
  analyze_args.add_to(analyze_cmd, true);
  bool with_verify = false;
  analyze_cmd->add_flag("--verify", with_verify, "Also evaluate the ensemble averages by enumeration");
  analyze_cmd->add_option("--format", fmt, "json, csv or text")->default_str("json");
  analyze_cmd->add_option("--cap", cap_flag, "Enumeration cap");
  analyze_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // table
  auto* table_cmd = app.add_subcommand("table", "Partition grid, multiplicity table or branch summary");
  std::string which;
  table_cmd->add_option("which", which, "partitions | table2 | branches")
      ->required()
      ->check(CLI::IsMember({"partitions", "table2", "branches"}));
  SystemArgs table_args;
  table_args.add_to(table_cmd, false);
  std::int64_t max_parties_table = 5;
  table_cmd->add_option("--max-parties", max_parties_table, "Largest M in the partition grid");
  bool paper_rounding = false;
  table_cmd->add_flag("--paper-rounding", paper_rounding, "Round g and g*{x.x} to one decimal");
  table_cmd->add_option("--format", fmt, "text, csv or json")->default_str("text");
  table_cmd->add_option("--cap", cap_flag, "Enumeration cap");
  table_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // figure
  auto* figure_cmd = app.add_subcommand("figure", "Per-party probability densities as CSV");
  std::string kind;
  figure_cmd->add_option("kind", kind, "stability | rigidity")
      ->required()
      ->check(CLI::IsMember({"stability", "rigidity"}));
  std::string figure_electors, figure_probs, figure_uniform;
  figure_cmd->add_option("-n,--electors", figure_electors,
                         "Elector counts (stability, comma list) or the fixed N (rigidity)");
  figure_cmd->add_option("--probs", figure_probs, "Outcome probabilities (stability)");
  figure_cmd->add_option("--uniform", figure_uniform, "Outcome counts with uniform p (rigidity, comma list)");
  figure_cmd->add_option("--format", fmt, "csv")->default_str("csv");
  figure_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Closed forms against enumeration, quadrature and finite differences");
  VerifyOptions vopt;
  verify_cmd->add_option("--max-electors", vopt.max_electors, "Largest N in the sweep")->default_val(8);
  verify_cmd->add_option("--max-parties", vopt.max_parties, "Largest M in the sweep")->default_val(4);
  verify_cmd->add_option("--points", vopt.points, "Random simplex points per (N, M) cell")->default_val(25);
  verify_cmd->add_option("--seed", vopt.seed, "Seed for the random points")->default_val(1);
  verify_cmd->add_option("--trials", vopt.trials, "Monte Carlo trials per spot check (0 = skip)")->default_val(0);
  verify_cmd->add_option("--cap", cap_flag, "Enumeration cap");
  verify_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // mc
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate of the ensemble variance");
  SystemArgs mc_args;
  mc_args.add_to(mc_cmd, true);
  std::uint64_t trials = 100000, seed = 1;
  mc_cmd->add_option("--trials", trials, "Sampled tallies")->default_val(100000);
  mc_cmd->add_option("--seed", seed, "Master seed")->default_val(1);
  mc_cmd->add_option("--format", fmt, "json, csv or text")->default_str("json");
  mc_cmd->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("InvalidArguments", e.what(), kExitBadInput);
  }

  const Output out{out_path};
  try {
    if (*analyze_cmd) {
      if (fmt.empty()) fmt = "json";
      check_format(fmt, {"json", "csv", "text"});
      const auto sys = analyze_args.system();
      const auto rec = analyze(sys, with_verify, resolve_cap(cap_flag), timestamp_now());
      if (fmt == "json") out.write(to_json(rec).dump(2) + '\n');
      else if (fmt == "csv") out.write(analysis_csv(rec));
      else out.write(analysis_text(rec));
      return brute_force_agrees(rec) ? kExitOk : kExitVerifyFailed;
    }

    if (*table_cmd) {
      if (fmt.empty()) fmt = "text";
      check_format(fmt, {"text", "csv", "json"});
      if (which == "partitions") {
        const std::int64_t n = table_args.electors.value_or(5);
        const auto grid = partition_grid(n, max_parties_table);
        const auto nn = static_cast<count_t>(n);
        if (fmt == "text") out.write(partition_grid_text(grid, nn));
        else if (fmt == "csv") out.write(partition_grid_csv(grid, nn));
        else out.write(partition_grid_json(grid, nn).dump(2) + '\n');
      } else if (which == "table2") {
        const auto table = multiplicity_table(table_args.system(5, {0.1, 0.3, 0.6}), resolve_cap(cap_flag));
        if (fmt == "text") out.write(multiplicity_table_text(table, paper_rounding));
        else if (fmt == "csv") out.write(multiplicity_table_csv(table, paper_rounding));
        else out.write(multiplicity_table_json(table).dump(2) + '\n');
      } else {
        const auto rows = branch_table();
        if (fmt == "text") out.write(branch_table_text(rows));
        else if (fmt == "csv") out.write(branch_table_csv(rows));
        else out.write(branch_table_json(rows).dump(2) + '\n');
      }
      return kExitOk;
    }

    if (*figure_cmd) {
      if (fmt.empty()) fmt = "csv";
      check_format(fmt, {"csv"});
      if (kind == "stability") {
        if (!figure_uniform.empty() && !figure_probs.empty())
          throw Error(ErrorCode::InvalidArguments, "--probs and --uniform are exclusive");
        std::vector<double> probs = {0.1, 0.3, 0.6};
        if (!figure_probs.empty()) probs = parse_list<double>(figure_probs, "probability");
        if (!figure_uniform.empty()) {
          const auto m = parse_number<std::size_t>(figure_uniform, "outcome count");
          if (m < 1) throw Error(ErrorCode::EmptyDistribution, "--uniform needs M >= 1");
          probs.assign(m, 1.0 / static_cast<double>(m));
        }
        const auto dist = validate_distribution(probs);
        std::vector<std::int64_t> ns = {1, 6, 15, 200};
        if (!figure_electors.empty()) ns = parse_list<std::int64_t>(figure_electors, "elector count");
        std::vector<count_t> electors;
        for (auto n : ns) electors.push_back(validate_system(n, probs).electors());
        out.write(figure_csv(stability_figure(dist, electors)));
      } else {
        if (!figure_probs.empty())
          throw Error(ErrorCode::InvalidArguments, "the rigidity figure uses uniform probabilities; pass --uniform");
        const std::int64_t n = figure_electors.empty() ? 30 : parse_number<std::int64_t>(figure_electors, "elector count");
        if (n < 1) throw Error(ErrorCode::NonPositiveElectors, "elector count must be >= 1");
        std::vector<std::size_t> ms = {1, 2, 9, 500};
        if (!figure_uniform.empty()) ms = parse_list<std::size_t>(figure_uniform, "outcome count");
        for (auto m : ms)
          if (m < 1) throw Error(ErrorCode::EmptyDistribution, "--uniform needs M >= 1");
        out.write(figure_csv(rigidity_figure(static_cast<count_t>(n), ms)));
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      vopt.cap = resolve_cap(cap_flag);
      const auto report = run_verify(vopt);
      out.write(to_json(report).dump(2) + '\n');
      return report.passed() ? kExitOk : kExitVerifyFailed;
    }

    if (*mc_cmd) {
      if (fmt.empty()) fmt = "json";
      check_format(fmt, {"json", "csv", "text"});
      const auto sys = mc_args.system();
      const auto est = estimate_variance(sys, trials, seed);
      const double expected = static_cast<double>(sys.electors()) * (1.0 - sys.distribution().sum_of_squares());
      if (fmt == "json") {
        nlohmann::json j = {{"electors", sys.electors()},
                            {"probs", std::vector<double>(sys.probs().begin(), sys.probs().end())},
                            {"mean", est.mean},
                            {"std_error", est.std_error},
                            {"trials", est.trials},
                            {"seed", est.seed},
                            {"closed_form", expected}};
        out.write(j.dump(2) + '\n');
      } else if (fmt == "csv") {
        out.write(format::csv_row({"electors", "mean", "std_error", "trials", "seed", "closed_form"}) +
                  format::csv_row({std::to_string(sys.electors()), format::shortest(est.mean),
                                   format::shortest(est.std_error), std::to_string(est.trials),
                                   std::to_string(est.seed), format::shortest(expected)}));
      } else {
        out.write("mean        " + format::shortest(est.mean) + "\nstd_error   " + format::shortest(est.std_error) +
                  "\ntrials      " + std::to_string(est.trials) + "\nseed        " + std::to_string(est.seed) +
                  "\nclosed form " + format::shortest(expected) + '\n');
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    return report_error(e);
  }
  return kExitBadInput;
}
