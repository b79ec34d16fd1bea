#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "electorate/combinatorics.hpp"
#include "electorate/distribution.hpp"
#include "electorate/dynamics.hpp"
#include "electorate/ensemble.hpp"
#include "electorate/model.hpp"
#include "electorate/montecarlo.hpp"
#include "electorate/tables.hpp"

namespace electorate {

/// Uniform draw from the simplex with m vertices (flat Dirichlet).
inline std::vector<double> random_simplex_point(std::size_t m, Engine& engine) {
  std::vector<double> p(m);
  double total = 0.0;
  for (auto& x : p) {
    x = -std::log1p(-uniform01(engine));
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

/// L as a function of the independent coordinates p_1..p_{M-1}.
inline double constrained_flexibility(std::span<const double> independent) {
  double last = 1.0, squares = 0.0;
  for (double p : independent) {
    last -= p;
    squares += p * p;
  }
  squares += last * last;
  return std::sqrt(1.0 - squares);
}

struct VerifyOptions {
  count_t max_electors = 8;
  std::size_t max_parties = 4;
  std::size_t points = 25;
  std::uint64_t seed = 1;
  std::uint64_t trials = 0;  // 0 skips the Monte Carlo spot checks
  std::uint64_t cap = kDefaultEnumerationCap;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::uint64_t cases = 0;

  void observe(double deviation) {
    ++cases;
    // NaN counts as a failure
    if (!(deviation <= tolerance)) passed = false;
    if (std::isnan(deviation) || deviation > max_deviation) max_deviation = deviation;
  }
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CheckResult> checks;
  double max_relative_deviation = 0.0;  // closed-form vs enumerated fluctuation

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

inline VerifyReport run_verify(const VerifyOptions& opt) {
  if (opt.max_electors < 1 || opt.max_parties < 1 || opt.points < 1)
    throw Error(ErrorCode::InvalidArguments, "verify needs max electors, max parties and points >= 1");
  VerifyReport report{opt, {}, 0.0};
  Engine engine(opt.seed);

  CheckResult oracle{"fractional_fluctuation_oracle", true, 0.0, 1e-9, 0};
  CheckResult variance{"variance_closed_form", true, 0.0, 1e-9, 0};
  CheckResult normalization{"multiplicity_normalization", true, 0.0, 1e-9, 0};
  for (count_t n = 1; n <= opt.max_electors; ++n) {
    for (std::size_t m = 1; m <= opt.max_parties; ++m) {
      for (std::size_t i = 0; i < opt.points; ++i) {
        const ElectoralSystem sys(n, validate_distribution(random_simplex_point(m, engine)));
        const EnsembleReport bf = brute_force_report(sys, opt.cap);
        const double f_bf = std::sqrt(bf.variance) / bf.mean_alignment;
        const double f_cf = closed_form_attributes(sys).fractional_fluctuation;
        oracle.observe(std::abs(f_bf - f_cf));
        if (f_cf > 0.0)
          report.max_relative_deviation = std::max(report.max_relative_deviation, std::abs(f_bf - f_cf) / f_cf);
        const double expected = static_cast<double>(n) * (1.0 - sys.distribution().sum_of_squares());
        variance.observe(std::abs(bf.variance - expected) / std::max(1.0, expected));
        const double states = std::pow(static_cast<double>(m), static_cast<double>(n));
        normalization.observe(std::abs(bf.total_weight / states - 1.0));
      }
    }
  }
  report.checks.push_back(oracle);
  report.checks.push_back(variance);
  report.checks.push_back(normalization);

  CheckResult partitions{"partition_counts_n5", true, 0.0, 0.0, 0};
  const int expected_counts[] = {1, 3, 5, 6, 7};
  for (int m = 1; m <= 5; ++m)
    partitions.observe(partition_count(5, m) == expected_counts[m - 1] ? 0.0 : 1.0);
  report.checks.push_back(partitions);

  const auto table = multiplicity_table(validate_system(5, {0.1, 0.3, 0.6}), opt.cap);
  CheckResult weight_sum{"table_total_weight", true, 0.0, 1e-12, 0};
  weight_sum.observe(std::abs(table.total_weight - 243.0) / 243.0);
  report.checks.push_back(weight_sum);
  CheckResult weighted{"table_weighted_sum", true, 0.0, 1e-9, 0};
  weighted.observe(std::abs(table.weighted_sum - 656.1));
  report.checks.push_back(weighted);

  CheckResult quadrature{"spherical_cross_term", true, 0.0, 1e-9, 0};
  for (int m = 2; m <= 16; ++m) quadrature.observe(std::abs(spherical_cross_term(m, 4096)));
  report.checks.push_back(quadrature);

  CheckResult gradient{"flexibility_gradient_fd", true, 0.0, 1e-6, 0};
  CheckResult zero{"flexibility_gradient_uniform_zero", true, 0.0, 1e-12, 0};
  CheckResult upper{"flexibility_upper_bound_attained", true, 0.0, 1e-12, 0};
  constexpr double kStep = 1e-6;
  for (std::size_t m = 2; m <= 6; ++m) {
    for (std::size_t i = 0; i < opt.points; ++i) {
      const auto dist = validate_distribution(random_simplex_point(m, engine));
      const auto grad = flexibility_gradient(dist);
      std::vector<double> independent(dist.probs().begin(), dist.probs().end() - 1);
      for (std::size_t k = 0; k + 1 < m; ++k) {
        auto plus = independent, minus = independent;
        plus[k] += kStep;
        minus[k] -= kStep;
        const double fd = (constrained_flexibility(plus) - constrained_flexibility(minus)) / (2 * kStep);
        gradient.observe(std::abs(fd - grad.partials[k]));
      }
    }
    const auto uniform = uniform_distribution(m);
    for (double d : flexibility_gradient(uniform).partials) zero.observe(std::abs(d));
    const double bound = flexibility_bounds(static_cast<std::int64_t>(m)).upper;
    upper.observe(std::abs(flexibility(uniform) - bound) / bound);
  }
  report.checks.push_back(gradient);
  report.checks.push_back(zero);
  report.checks.push_back(upper);

  if (opt.trials > 0) {
    // deviation is measured in standard errors
    CheckResult mc{"monte_carlo_variance", true, 0.0, 4.0, 0};
    const ElectoralSystem systems[] = {validate_system(5, {0.1, 0.3, 0.6}), validate_system(200, {0.1, 0.3, 0.6}),
                                       ElectoralSystem(30, uniform_distribution(2))};
    for (const auto& sys : systems) {
      const McEstimate est = estimate_variance(sys, opt.trials, opt.seed);
      const double expected = static_cast<double>(sys.electors()) * (1.0 - sys.distribution().sum_of_squares());
      mc.observe(est.std_error > 0.0 ? std::abs(est.mean - expected) / est.std_error
                                     : std::abs(est.mean - expected));
    }
    report.checks.push_back(mc);
  }
  return report;
}

inline nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"max_deviation", c.max_deviation},
                      {"tolerance", c.tolerance},
                      {"cases", c.cases}});
  return {{"options",
           {{"max_electors", r.options.max_electors},
            {"max_parties", r.options.max_parties},
            {"points", r.options.points},
            {"seed", r.options.seed},
            {"trials", r.options.trials},
            {"cap", r.options.cap}}},
          {"checks", checks},
          {"max_relative_deviation", r.max_relative_deviation},
          {"passed", r.passed()}};
}

}  // namespace electorate
