#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "electorate/combinatorics.hpp"
#include "electorate/distribution.hpp"
#include "electorate/dynamics.hpp"
#include "electorate/ensemble.hpp"
#include "electorate/format.hpp"
#include "electorate/model.hpp"
#include "electorate/numeric.hpp"

namespace electorate {

// ---------------------------------------------------------------------------
// Partition grid: every shape of N for M = 1..max_parties.

struct PartitionColumn {
  std::size_t parties = 0;
  std::vector<PartitionShape> shapes;
  BigInt cardinality;
};

inline std::vector<PartitionColumn> partition_grid(std::int64_t electors, std::int64_t max_parties) {
  check_shape_args(electors, max_parties);
  std::vector<PartitionColumn> grid;
  for (std::int64_t m = 1; m <= max_parties; ++m) {
    PartitionSet set = enumerate_partitions(electors, m);
    grid.push_back({static_cast<std::size_t>(m), std::move(set.shapes), partition_count(electors, m)});
  }
  return grid;
}

inline std::string partition_grid_text(const std::vector<PartitionColumn>& grid, count_t electors) {
  std::vector<std::vector<std::string>> cells;
  std::size_t rows = 0;
  for (const auto& col : grid) rows = std::max(rows, col.shapes.size());
  std::vector<std::string> header, footer;
  for (const auto& col : grid) {
    header.push_back("N = " + std::to_string(electors) + ", M = " + std::to_string(col.parties));
    footer.push_back("count = " + col.cardinality.str());
  }
  cells.push_back(header);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> line;
    for (const auto& col : grid)
      line.push_back(r < col.shapes.size() ? format::bracketed(col.shapes[r].parts()) : "");
    cells.push_back(line);
  }
  cells.push_back(footer);

  std::vector<std::size_t> width(grid.size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i == 1 || i + 1 == cells.size()) {
      for (std::size_t c = 0; c < width.size(); ++c) {
        if (c) out += "-+-";
        out += std::string(width[c], '-');
      }
      out += '\n';
    }
    std::string line;
    for (std::size_t c = 0; c < cells[i].size(); ++c) {
      if (c) line += " | ";
      line += cells[i][c] + std::string(width[c] - cells[i][c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

inline std::string partition_grid_csv(const std::vector<PartitionColumn>& grid, count_t electors) {
  std::string out = format::csv_row({"electors", "parties", "rank", "shape", "cardinality"});
  for (const auto& col : grid)
    for (std::size_t r = 0; r < col.shapes.size(); ++r)
      out += format::csv_row({std::to_string(electors), std::to_string(col.parties),
                              std::to_string(r + 1), format::bracketed(col.shapes[r].parts()),
                              col.cardinality.str()});
  return out;
}

inline nlohmann::json partition_grid_json(const std::vector<PartitionColumn>& grid, count_t electors) {
  nlohmann::json columns = nlohmann::json::array();
  for (const auto& col : grid) {
    nlohmann::json shapes = nlohmann::json::array();
    for (const auto& s : col.shapes) shapes.push_back(std::vector<count_t>(s.parts().begin(), s.parts().end()));
    columns.push_back({{"parties", col.parties}, {"shapes", shapes}, {"cardinality", col.cardinality.str()}});
  }
  return {{"electors", electors}, {"columns", columns}};
}

// ---------------------------------------------------------------------------
// Multiplicity table: every tally of one system with g, {x.x} and g{x.x}.

struct MultiplicityRow {
  Tally tally;
  double multiplicity = 0.0;
  double self_product = 0.0;
  double product = 0.0;
};

struct MultiplicityTable {
  ElectoralSystem system;
  std::vector<MultiplicityRow> rows;
  double total_weight = 0.0;
  double weighted_sum = 0.0;
  double variance = 0.0;
};

/// Rows are grouped by partition shape (shapes largest-first, each shape's
/// permutations lexicographically decreasing).
inline MultiplicityTable multiplicity_table(const ElectoralSystem& sys,
                                            std::uint64_t cap = kDefaultEnumerationCap) {
  check_enumeration_cap(sys.electors(), sys.parties(), cap);
  MultiplicityTable table{sys, {}, 0.0, 0.0, 0.0};
  CompensatedSum weights, weighted;
  const auto set = enumerate_partitions(static_cast<std::int64_t>(sys.electors()),
                                        static_cast<std::int64_t>(sys.parties()));
  for (const auto& shape : set.shapes) {
    for (auto& tally : shape_permutations(shape)) {
      MultiplicityRow row;
      row.multiplicity = multiplicity(tally, sys);
      row.self_product = directional_self_product(tally, sys);
      row.product = row.multiplicity * row.self_product;
      row.tally = std::move(tally);
      weights += row.multiplicity;
      weighted += row.product;
      table.rows.push_back(std::move(row));
    }
  }
  table.total_weight = weights.value();
  table.weighted_sum = weighted.value();
  table.variance = table.weighted_sum / table.total_weight;
  return table;
}

inline std::string multiplicity_table_text(const MultiplicityTable& t, bool paper_rounding) {
  auto num = [&](double x) { return paper_rounding ? format::fixed(x, 1) : format::shortest(x); };
  std::string out;
  out += "# N = " + std::to_string(t.system.electors()) + ", M = " + std::to_string(t.system.parties()) +
         ", p = " + format::bracketed(t.system.probs()) + "\n";
  out += "# columns: tally, multiplicity g, {x.x} = sum_k (N_k - p_k N)^2, g * {x.x}\n";
  if (paper_rounding)
    out += "# g and g*{x.x} rounded to one decimal; {x.x} left exact because the published\n"
           "# integer display of that column rounds inconsistently\n";
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"tally", "g", "{x.x}", "g*{x.x}"});
  for (const auto& r : t.rows)
    cells.push_back({format::bracketed(r.tally.counts()), num(r.multiplicity),
                     format::shortest(r.self_product), num(r.product)});
  cells.push_back({"Sum", num(t.total_weight), "", num(t.weighted_sum)});
  std::size_t width[4] = {0, 0, 0, 0};
  for (const auto& line : cells)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], line[c].size());
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t c = 0; c < 4; ++c) {
      if (c) text += "  ";
      text += line[c] + std::string(width[c] - line[c].size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + '\n';
  }
  out += "variance = " + format::shortest(t.weighted_sum) + " / " + format::shortest(t.total_weight) +
         " = " + format::shortest(t.variance) + '\n';
  return out;
}

inline std::string multiplicity_table_csv(const MultiplicityTable& t, bool paper_rounding) {
  auto num = [&](double x) { return paper_rounding ? format::fixed(x, 1) : format::shortest(x); };
  std::string out = format::csv_row({"tally", "g", "self_product", "product"});
  for (const auto& r : t.rows)
    out += format::csv_row({format::bracketed(r.tally.counts()), num(r.multiplicity),
                            format::shortest(r.self_product), num(r.product)});
  out += format::csv_row({"Sum", num(t.total_weight), "", num(t.weighted_sum)});
  return out;
}

inline nlohmann::json multiplicity_table_json(const MultiplicityTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"tally", std::vector<count_t>(r.tally.counts().begin(), r.tally.counts().end())},
                    {"g", r.multiplicity},
                    {"self_product", r.self_product},
                    {"product", r.product}});
  return {{"electors", t.system.electors()},
          {"probs", std::vector<double>(t.system.probs().begin(), t.system.probs().end())},
          {"rows", rows},
          {"total_weight", t.total_weight},
          {"weighted_sum", t.weighted_sum},
          {"variance", t.variance}};
}

// ---------------------------------------------------------------------------
// Government branches: stability and rigidity brackets from elector and
// outcome-count ranges.

struct BranchSpec {
  std::string name;
  count_t n_low = 1;
  count_t n_high = 1;
  count_t m_low = 1;
  std::optional<count_t> m_high;  // empty: unbounded, rigidity floor is 0
  std::optional<Bounds> published_stability;
  std::optional<Bounds> published_rigidity;
};

inline void check_branch(const BranchSpec& b) {
  if (b.n_low < 1 || b.n_low > b.n_high || b.m_low < 1 || (b.m_high && b.m_low > *b.m_high))
    throw Error(ErrorCode::InvalidArguments, "malformed branch bracket for " + b.name);
}

/// U.S. federal branches with the elector counts, quorums and published
/// two-decimal brackets used by the reproduction.
inline std::vector<BranchSpec> builtin_branches() {
  return {
      {"President / Vice-President", 1, 2, 1, std::nullopt, Bounds{0.00, 0.29}, Bounds{0.00, 1.00}},
      {"Supreme Court", 6, 9, 1, 9, Bounds{0.59, 0.67}, Bounds{0.00, 1.00}},
      {"Senate", 51, 101, 1, 101, Bounds{0.86, 0.90}, Bounds{0.01, 1.00}},
      {"House of Representatives", 218, 430, 1, 430, Bounds{0.93, 0.95}, Bounds{0.00, 1.00}},
  };
}

struct BranchRow {
  BranchSpec spec;
  Bounds stability;
  Bounds rigidity;
  std::vector<std::string> notes;
};

inline double round2(double x) { return std::round(x * 100.0) / 100.0; }

/// Stability over [S(n_low), S(n_high)]; rigidity over
/// [R(uniform, m_high), R(m = 1) = 1].
inline BranchRow analyze_branch(const BranchSpec& spec) {
  check_branch(spec);
  BranchRow row{spec, {stability(spec.n_low), stability(spec.n_high)}, {}, {}};
  row.rigidity.lower = spec.m_high ? rigidity_bounds(static_cast<std::int64_t>(*spec.m_high)).lower : 0.0;
  row.rigidity.upper = rigidity_bounds(static_cast<std::int64_t>(spec.m_low)).upper;
  auto compare = [&](const char* what, const char* side, double value, double published) {
    if (std::abs(round2(value) - published) > 1e-9)
      row.notes.push_back(std::string(what) + " " + side + " bound " + format::shortest(value) +
                          " rounds to " + format::fixed(round2(value), 2) + ", published " +
                          format::fixed(published, 2));
  };
  if (spec.published_stability) {
    compare("stability", "lower", row.stability.lower, spec.published_stability->lower);
    compare("stability", "upper", row.stability.upper, spec.published_stability->upper);
  }
  if (spec.published_rigidity) {
    compare("rigidity", "lower", row.rigidity.lower, spec.published_rigidity->lower);
    compare("rigidity", "upper", row.rigidity.upper, spec.published_rigidity->upper);
  }
  return row;
}

inline std::vector<BranchRow> branch_table(const std::vector<BranchSpec>& specs = builtin_branches()) {
  std::vector<BranchRow> rows;
  for (const auto& s : specs) rows.push_back(analyze_branch(s));
  return rows;
}

inline std::string bracket2(Bounds b) {
  return "[" + format::fixed(round2(b.lower), 2) + ", " + format::fixed(round2(b.upper), 2) + "]";
}

inline std::string branch_table_text(const std::vector<BranchRow>& rows) {
  std::string out;
  std::size_t name_width = 6;
  for (const auto& r : rows) name_width = std::max(name_width, r.spec.name.size());
  auto pad = [](std::string s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  out += pad("Branch", name_width) + "  " + pad("Stability", 14) + "  Rigidity\n";
  for (const auto& r : rows)
    out += pad(r.spec.name, name_width) + "  " + pad(bracket2(r.stability), 14) + "  " + bracket2(r.rigidity) + '\n';
  out += "\nFull precision:\n";
  for (const auto& r : rows) {
    out += "  " + r.spec.name + ": N in [" + std::to_string(r.spec.n_low) + ", " + std::to_string(r.spec.n_high) +
           "], M in [" + std::to_string(r.spec.m_low) + ", " +
           (r.spec.m_high ? std::to_string(*r.spec.m_high) : std::string("inf")) + "]; stability [" +
           format::shortest(r.stability.lower) + ", " + format::shortest(r.stability.upper) + "]; rigidity [" +
           format::shortest(r.rigidity.lower) + ", " + format::shortest(r.rigidity.upper) + "]\n";
    for (const auto& note : r.notes) out += "    note: " + note + '\n';
  }
  return out;
}

inline std::string branch_table_csv(const std::vector<BranchRow>& rows) {
  std::string out = format::csv_row({"branch", "n_low", "n_high", "m_low", "m_high", "stability_low",
                                     "stability_high", "rigidity_low", "rigidity_high", "notes"});
  for (const auto& r : rows) {
    std::string notes;
    for (std::size_t i = 0; i < r.notes.size(); ++i) notes += (i ? "; " : "") + r.notes[i];
    out += format::csv_row({r.spec.name, std::to_string(r.spec.n_low), std::to_string(r.spec.n_high),
                            std::to_string(r.spec.m_low), r.spec.m_high ? std::to_string(*r.spec.m_high) : "",
                            format::shortest(r.stability.lower), format::shortest(r.stability.upper),
                            format::shortest(r.rigidity.lower), format::shortest(r.rigidity.upper), notes});
  }
  return out;
}

inline nlohmann::json branch_table_json(const std::vector<BranchRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"branch", r.spec.name},
                   {"electors", {r.spec.n_low, r.spec.n_high}},
                   {"parties", {r.spec.m_low, r.spec.m_high ? nlohmann::json(*r.spec.m_high) : nlohmann::json(nullptr)}},
                   {"stability", {r.stability.lower, r.stability.upper}},
                   {"rigidity", {r.rigidity.lower, r.rigidity.upper}},
                   {"notes", r.notes}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Figure data: per-party binomial densities. A party with p = 0 or p = 1 has
// a one-point support and contributes only that point.

struct DensityPoint {
  count_t electors = 0;
  std::size_t parties = 0;
  std::size_t party = 0;  // 1-based
  count_t count = 0;
  double abscissa = 0.0;
  double density = 0.0;
  double equilibrium = 0.0;
};

inline bool in_support(double p, count_t count, count_t electors) {
  if (p == 0.0) return count == 0;
  if (p == 1.0) return count == electors;
  return true;
}

/// Density of N_k / N for each party, one curve per elector count.
inline std::vector<DensityPoint> stability_figure(const PartyDistribution& dist,
                                                  const std::vector<count_t>& electors) {
  std::vector<DensityPoint> out;
  for (count_t n : electors) {
    const ElectoralSystem sys(n, dist);
    const auto nd = static_cast<double>(n);
    for (std::size_t k = 1; k <= dist.parties(); ++k)
      for (count_t c = 0; c <= n; ++c) {
        if (!in_support(dist[k - 1], c, n)) continue;
        out.push_back({n, dist.parties(), k, c, static_cast<double>(c) / nd,
                       binomial_marginal(static_cast<std::int64_t>(k), static_cast<std::int64_t>(c), sys),
                       dist[k - 1]});
      }
  }
  return out;
}

/// Density of (N_k - p_k N) / N under uniform p, one curve set per outcome count.
inline std::vector<DensityPoint> rigidity_figure(count_t electors, const std::vector<std::size_t>& parties) {
  std::vector<DensityPoint> out;
  const auto nd = static_cast<double>(electors);
  for (std::size_t m : parties) {
    const ElectoralSystem sys(electors, uniform_distribution(m));
    for (std::size_t k = 1; k <= m; ++k) {
      const double eq = sys.probs()[k - 1] * nd;
      for (count_t c = 0; c <= electors; ++c) {
        if (!in_support(sys.probs()[k - 1], c, electors)) continue;
        out.push_back({electors, m, k, c, (static_cast<double>(c) - eq) / nd,
                       binomial_marginal(static_cast<std::int64_t>(k), static_cast<std::int64_t>(c), sys), 0.0});
      }
    }
  }
  return out;
}

inline std::string figure_csv(const std::vector<DensityPoint>& points) {
  std::string out = format::csv_row({"electors", "parties", "party", "count", "abscissa", "density", "equilibrium"});
  for (const auto& p : points)
    out += format::csv_row({std::to_string(p.electors), std::to_string(p.parties), std::to_string(p.party),
                            std::to_string(p.count), format::shortest(p.abscissa), format::shortest(p.density),
                            format::shortest(p.equilibrium)});
  return out;
}

}  // namespace electorate
