#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cvsteer/hawking.hpp"
#include "cvsteer/rootfind.hpp"
#include "cvsteer/steering.hpp"
#include "cvsteer/types.hpp"

namespace cvsteer {

enum class BipartitePair { alice_bob, bob_antibob };
enum class OutputFormat { csv, json };

struct RRange {
  double min = 0.0;
  double max = 2.0;
  int steps = 400;
};

/// One parameter sweep: which bipartition, which squeezings, which channel
/// grid, and how to emit the table.
struct SweepConfig {
  BipartitePair pair = BipartitePair::alice_bob;
  std::vector<double> s_values{1.0};
  RRange r_range{};
  double omega = 1.0;        // frequency for the temperature column
  std::string output_path;   // empty means stdout
  OutputFormat format = OutputFormat::csv;
};

inline void validate(const SweepConfig& config) {
  if (config.s_values.empty()) {
    throw ConfigError("sweep: need at least one squeezing value");
  }
  if (!(config.r_range.min >= 0.0)) {
    throw ConfigError("sweep: r range must start at or above 0");
  }
  if (!(config.r_range.max > config.r_range.min)) {
    throw ConfigError("sweep: r range max must exceed min");
  }
  if (config.r_range.steps < 2) {
    throw ConfigError("sweep: r range needs at least 2 steps");
  }
  if (!(config.omega > 0.0)) {
    throw ConfigError("sweep: omega must be positive");
  }
}

struct SweepRow {
  double s;
  double r;
  double temperature;
  double g_forward;
  double g_backward;
  double g_delta;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

inline int resolve_jobs(int jobs) {
  if (jobs > 0) {
    return jobs;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Strided index-parallel loop; every index writes its own slot, so results
/// do not depend on the thread count. The first worker exception is
/// rethrown after the join.
template <typename F>
void parallel_for_index(std::size_t count, int jobs, F&& body) {
  const int workers = std::min<std::size_t>(resolve_jobs(jobs), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = static_cast<std::size_t>(t); i < count; i += workers) {
          body(i);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  for (const auto& err : errors) {
    if (err) {
      std::rethrow_exception(err);
    }
  }
}

namespace detail {

inline std::pair<SteeringDirection, SteeringDirection> directions_for(BipartitePair pair) {
  if (pair == BipartitePair::alice_bob) {
    return {SteeringDirection::alice_to_bob, SteeringDirection::bob_to_alice};
  }
  return {SteeringDirection::bob_to_antibob, SteeringDirection::antibob_to_bob};
}

// Closed forms against the Schur-complement route. The tolerance widens with
// cosh(2s) cosh(2r): that is the cancellation growth in the Schur complement.
inline void audit_row(BipartitePair pair, double s, double r, double g_forward, double g_backward) {
  const SqueezingParam<double> sp(s);
  const HawkingParam<double> hp(r);
  const CovarianceMatrix<double> state =
      pair == BipartitePair::alice_bob ? reduced_ab(sp, hp) : reduced_bbbar(sp, hp);
  const ModePartition forward({0}, {1});
  const double general_forward = gaussian_steering(state, forward);
  const double general_backward = gaussian_steering(state, forward.swapped());
  const double allowed = std::max(1e-10, 256.0 * std::numeric_limits<double>::epsilon() *
                                             std::cosh(2.0 * s) * std::cosh(2.0 * r));
  if (std::abs(general_forward - g_forward) > allowed ||
      std::abs(general_backward - g_backward) > allowed) {
    throw NumericDomainError("sweep audit: closed form disagrees with the general route at s = " +
                             std::to_string(s) + ", r = " + std::to_string(r));
  }
}

inline SweepRow evaluate_row(BipartitePair pair, double s, double r, double omega, bool audit) {
  const SqueezingParam<double> sp(s);
  const HawkingParam<double> hp(r);
  const auto [forward, backward] = directions_for(pair);
  const double g_forward = closed_form_steering(sp, hp, forward);
  const double g_backward = closed_form_steering(sp, hp, backward);
  if (audit) {
    audit_row(pair, s, r, g_forward, g_backward);
  }
  const double temperature = r > 0.0 ? temperature_from_r(omega, r) : 0.0;  // exact-zero limit
  return SweepRow{s, r, temperature, g_forward, g_backward, std::abs(g_backward - g_forward)};
}

}  // namespace detail

/// Deterministic grid sweep (s outer, r inner); every 50th row is re-checked
/// against the general Schur-complement route.
inline SweepTable sweep(const SweepConfig& config, int jobs = 0) {
  validate(config);
  const std::size_t r_count = static_cast<std::size_t>(config.r_range.steps);
  const std::size_t total = config.s_values.size() * r_count;
  const double r_step = (config.r_range.max - config.r_range.min) /
                        static_cast<double>(config.r_range.steps - 1);

  SweepTable table;
  table.rows.resize(total);
  parallel_for_index(total, jobs, [&](std::size_t i) {
    const std::size_t si = i / r_count;
    const std::size_t ri = i % r_count;
    const double s = config.s_values[si];
    const double r = config.r_range.min + r_step * static_cast<double>(ri);
    table.rows[i] = detail::evaluate_row(config.pair, s, r, config.omega, i % 50 == 0);
  });
  return table;
}

/// Sudden-death/birth thresholds and asymmetry peaks at fixed s. Roots are
/// bisection zeros of the signed (unclamped) steerings; peak locations come
/// from golden-section search on the asymmetry of each pair.
struct ThresholdResult {
  double s = 0.0;
  std::optional<double> r_death_a_to_b;
  std::optional<double> r_birth_antibob_to_bob;
  double r_max_asymmetry_ab = 0.0;
  double r_max_asymmetry_bbbar = 0.0;
  double asymmetry_at_max = 0.0;
  double bracket_width = 0.0;
};

inline ThresholdResult find_death_birth(double s) {
  if (!(s > 0.0)) {
    throw NumericDomainError("find_death_birth: s must be positive");
  }
  const SqueezingParam<double> sp(s);
  const auto signed_steering = [&](SteeringDirection direction) {
    return [&, direction](double r) {
      return closed_form_steering_unclamped(sp, HawkingParam<double>(r), direction);
    };
  };
  // The A->B zero sits below asinh(1), where the critical-point relation
  // degenerates; the antiB->B zero sits at the same r.
  const double death_hi = std::asinh(1.0) - 1e-9;
  const auto death = bisect(signed_steering(SteeringDirection::alice_to_bob), 0.0, death_hi);
  const auto birth = bisect(signed_steering(SteeringDirection::antibob_to_bob), 0.0, 3.0);

  const auto asym = [&](SteeringDirection fwd, SteeringDirection bwd) {
    return [&, fwd, bwd](double r) {
      const HawkingParam<double> hp(r);
      return std::abs(closed_form_steering(sp, hp, bwd) - closed_form_steering(sp, hp, fwd));
    };
  };
  const auto peak_ab =
      golden_section_max(asym(SteeringDirection::alice_to_bob, SteeringDirection::bob_to_alice), 0.0, 3.0);
  const auto peak_bbbar = golden_section_max(
      asym(SteeringDirection::bob_to_antibob, SteeringDirection::antibob_to_bob), 0.0, 3.0);

  if (death.root && birth.root && std::abs(*death.root - *birth.root) > 1e-8) {
    throw NumericDomainError("find_death_birth: death and birth roots disagree beyond 1e-8");
  }

  double width = 0.0;
  if (death.root) {
    width = std::max(width, death.bracket_width);
  }
  if (birth.root) {
    width = std::max(width, birth.bracket_width);
  }

  ThresholdResult result;
  result.s = s;
  result.r_death_a_to_b = death.root;
  result.r_birth_antibob_to_bob = birth.root;
  result.r_max_asymmetry_ab = peak_ab.arg_max;
  result.r_max_asymmetry_bbbar = peak_bbbar.arg_max;
  result.asymmetry_at_max = peak_ab.max_value;
  result.bracket_width = width;
  return result;
}

/// Residuals of the two candidate critical-point relations at the numerically
/// found asymmetry peak r*(s):
///   printed:  s = arccosh(cosh^2 r* / (1 - sinh^2 r*))
///   doubled: 2s = arccosh(cosh^2 r* / (1 - sinh^2 r*))
/// plus the defect of the defining relation cosh(2s)(1 - sinh^2 r*) = cosh^2 r*.
struct CriticalPointRow {
  double s = 0.0;
  double r_star = 0.0;
  double residual_printed = 0.0;
  double residual_doubled = 0.0;
  double defect_relation = 0.0;
};

struct CriticalPointReport {
  std::vector<CriticalPointRow> rows;
  bool printed_relation_holds = false;
  bool doubled_relation_holds = false;
  std::string verdict;
};

inline CriticalPointReport adjudicate_critical_formula(const std::vector<double>& s_grid) {
  if (s_grid.empty()) {
    throw ConfigError("adjudicate: need at least one squeezing value");
  }
  CriticalPointReport report;
  report.printed_relation_holds = true;
  report.doubled_relation_holds = true;
  constexpr double residual_tol = 1e-8;
  for (double s : s_grid) {
    if (!(s > 0.0) || s > 3.0) {
      throw NumericDomainError("adjudicate: s values must lie in (0, 3]");
    }
    const auto thresholds = find_death_birth(s);
    if (!thresholds.r_death_a_to_b) {
      throw NumericDomainError("adjudicate: no death root found for s = " + std::to_string(s));
    }
    const double r_star = *thresholds.r_death_a_to_b;
    const double ch2 = std::cosh(r_star) * std::cosh(r_star);
    const double sh2 = std::sinh(r_star) * std::sinh(r_star);
    if (!(1.0 - sh2 > 0.0)) {
      throw NumericDomainError("adjudicate: root crossed the relation's pole");
    }
    const double arc = std::acosh(ch2 / (1.0 - sh2));
    CriticalPointRow row;
    row.s = s;
    row.r_star = r_star;
    row.residual_printed = std::abs(s - arc);
    row.residual_doubled = std::abs(2.0 * s - arc);
    row.defect_relation = std::abs(std::cosh(2.0 * s) * (1.0 - sh2) - ch2);
    report.printed_relation_holds = report.printed_relation_holds && row.residual_printed < residual_tol;
    report.doubled_relation_holds = report.doubled_relation_holds && row.residual_doubled < residual_tol;
    report.rows.push_back(row);
  }
  if (report.doubled_relation_holds && !report.printed_relation_holds) {
    report.verdict =
        "the asymmetry peak satisfies 2s = arccosh(cosh^2 r / (1 - sinh^2 r)); "
        "the single-s form misses by the factor between s and 2s";
  } else if (report.printed_relation_holds && !report.doubled_relation_holds) {
    report.verdict = "the asymmetry peak satisfies s = arccosh(cosh^2 r / (1 - sinh^2 r))";
  } else if (report.printed_relation_holds && report.doubled_relation_holds) {
    report.verdict = "both candidate relations hold on this grid (degenerate grid?)";
  } else {
    report.verdict = "neither candidate relation holds on this grid";
  }
  return report;
}

/// Exhaustive scan of the steering asymmetry over an (s, r) grid for both
/// bipartitions, reporting each supremum, its location and the margin below
/// ln 2.
struct BoundGridSpec {
  double s_min = 0.0;
  double s_max = 6.0;
  double r_min = 0.0;
  double r_max = 6.0;
  double step = 0.01;
};

struct PairBoundScan {
  double supremum = 0.0;
  double s_at = 0.0;
  double r_at = 0.0;
  double margin_below_ln2 = 0.0;
};

struct LnTwoBoundReport {
  PairBoundScan alice_bob;
  PairBoundScan bob_antibob;
  bool bound_holds = false;
};

inline LnTwoBoundReport verify_ln2_bound(const BoundGridSpec& grid = {}, int jobs = 0) {
  if (!(grid.step > 0.0) || !(grid.s_max >= grid.s_min) || !(grid.r_max >= grid.r_min)) {
    throw ConfigError("bound scan: malformed grid");
  }
  const auto count = [&](double lo, double hi) {
    return static_cast<std::size_t>(std::llround((hi - lo) / grid.step)) + 1;
  };
  const std::size_t s_count = count(grid.s_min, grid.s_max);
  const std::size_t r_count = count(grid.r_min, grid.r_max);

  struct RowMax {
    double value_ab = -1.0;
    double r_ab = 0.0;
    double value_bbbar = -1.0;
    double r_bbbar = 0.0;
  };
  std::vector<RowMax> per_s(s_count);
  parallel_for_index(s_count, jobs, [&](std::size_t si) {
    const double s = grid.s_min + grid.step * static_cast<double>(si);
    const SqueezingParam<double> sp(s);
    RowMax best;
    for (std::size_t ri = 0; ri < r_count; ++ri) {
      const double r = grid.r_min + grid.step * static_cast<double>(ri);
      const HawkingParam<double> hp(r);
      const double ab =
          std::abs(closed_form_steering(sp, hp, SteeringDirection::bob_to_alice) -
                   closed_form_steering(sp, hp, SteeringDirection::alice_to_bob));
      const double bbbar =
          std::abs(closed_form_steering(sp, hp, SteeringDirection::bob_to_antibob) -
                   closed_form_steering(sp, hp, SteeringDirection::antibob_to_bob));
      if (ab > best.value_ab) {
        best.value_ab = ab;
        best.r_ab = r;
      }
      if (bbbar > best.value_bbbar) {
        best.value_bbbar = bbbar;
        best.r_bbbar = r;
      }
    }
    per_s[si] = best;
  });

  LnTwoBoundReport report;
  report.alice_bob.supremum = -1.0;
  report.bob_antibob.supremum = -1.0;
  for (std::size_t si = 0; si < s_count; ++si) {
    const double s = grid.s_min + grid.step * static_cast<double>(si);
    if (per_s[si].value_ab > report.alice_bob.supremum) {
      report.alice_bob = PairBoundScan{per_s[si].value_ab, s, per_s[si].r_ab, 0.0};
    }
    if (per_s[si].value_bbbar > report.bob_antibob.supremum) {
      report.bob_antibob = PairBoundScan{per_s[si].value_bbbar, s, per_s[si].r_bbbar, 0.0};
    }
  }
  const double ln2 = std::log(2.0);
  report.alice_bob.margin_below_ln2 = ln2 - report.alice_bob.supremum;
  report.bob_antibob.margin_below_ln2 = ln2 - report.bob_antibob.supremum;
  report.bound_holds = report.alice_bob.supremum < ln2 && report.bob_antibob.supremum < ln2;
  return report;
}

// ---------------------------------------------------------------------------
// Figures and serialization

enum class FigureName { fig1a, fig1b, fig2, fig3 };

inline std::optional<FigureName> parse_figure_name(std::string_view name) {
  if (name == "fig1a") return FigureName::fig1a;
  if (name == "fig1b") return FigureName::fig1b;
  if (name == "fig2") return FigureName::fig2;
  if (name == "fig3") return FigureName::fig3;
  return std::nullopt;
}

/// 17 significant digits: doubles round-trip losslessly and the text is
/// byte-stable across runs.
inline std::string format_g17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

inline void write_csv(const SweepTable& table, std::ostream& os) {
  os << "s,r,T,G_forward,G_backward,G_delta\n";
  for (const auto& row : table.rows) {
    os << format_g17(row.s) << ',' << format_g17(row.r) << ',' << format_g17(row.temperature)
       << ',' << format_g17(row.g_forward) << ',' << format_g17(row.g_backward) << ','
       << format_g17(row.g_delta) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const SweepRow& row) {
  return nlohmann::ordered_json{{"s", row.s},
                                {"r", row.r},
                                {"T", row.temperature},
                                {"G_forward", row.g_forward},
                                {"G_backward", row.g_backward},
                                {"G_delta", row.g_delta}};
}

inline void write_json(const SweepTable& table, std::ostream& os) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    rows.push_back(to_json(row));
  }
  os << rows.dump(2) << '\n';
}

/// r vs T table on r in (0, 2], 400 points, at fixed omega.
struct TemperatureCurve {
  std::vector<std::pair<double, double>> rows;  // (r, T)
};

inline TemperatureCurve temperature_curve(double omega = 1.0, int points = 400, double r_max = 2.0) {
  if (!(omega > 0.0) || points < 1 || !(r_max > 0.0)) {
    throw ConfigError("temperature curve: malformed parameters");
  }
  TemperatureCurve curve;
  curve.rows.reserve(points);
  for (int k = 1; k <= points; ++k) {
    const double r = r_max * static_cast<double>(k) / static_cast<double>(points);
    curve.rows.emplace_back(r, temperature_from_r(omega, r));
  }
  return curve;
}

inline void write_csv(const TemperatureCurve& curve, std::ostream& os) {
  os << "r,T\n";
  for (const auto& [r, t] : curve.rows) {
    os << format_g17(r) << ',' << format_g17(t) << '\n';
  }
}

inline void write_json(const TemperatureCurve& curve, std::ostream& os) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [r, t] : curve.rows) {
    rows.push_back(nlohmann::ordered_json{{"r", r}, {"T", t}});
  }
  os << rows.dump(2) << '\n';
}

/// Fixed datasets behind the four reference figures:
///   fig1a: (A, B) steerings and asymmetry, s = 1, r in [0, 2], 400 points
///   fig1b: T(r) at omega = 1, r in (0, 2], 400 points
///   fig2:  (A, B) asymmetry surface, s and r in [0, 2], 200 x 200
///   fig3:  (B, antiB) steerings and asymmetry, s = 1, r in [0, 2], 400 points
inline SweepTable figure_table(FigureName name, double omega = 1.0, int jobs = 0) {
  SweepConfig config;
  config.omega = omega;
  switch (name) {
    case FigureName::fig1a:
      config.pair = BipartitePair::alice_bob;
      config.s_values = {1.0};
      config.r_range = RRange{0.0, 2.0, 400};
      break;
    case FigureName::fig3:
      config.pair = BipartitePair::bob_antibob;
      config.s_values = {1.0};
      config.r_range = RRange{0.0, 2.0, 400};
      break;
    case FigureName::fig2: {
      config.pair = BipartitePair::alice_bob;
      config.s_values.clear();
      config.s_values.reserve(200);
      for (int i = 0; i < 200; ++i) {
        config.s_values.push_back(2.0 * static_cast<double>(i) / 199.0);
      }
      config.r_range = RRange{0.0, 2.0, 200};
      break;
    }
    case FigureName::fig1b:
      throw ContractViolation("figure_table: fig1b is a temperature curve, not a sweep");
  }
  return sweep(config, jobs);
}

inline void write_figure(FigureName name, std::ostream& os, OutputFormat format = OutputFormat::csv,
                         double omega = 1.0, int jobs = 0) {
  if (name == FigureName::fig1b) {
    const auto curve = temperature_curve(omega);
    if (format == OutputFormat::csv) {
      write_csv(curve, os);
    } else {
      write_json(curve, os);
    }
    return;
  }
  const auto table = figure_table(name, omega, jobs);
  if (format == OutputFormat::csv) {
    write_csv(table, os);
  } else {
    write_json(table, os);
  }
}

// ---------------------------------------------------------------------------
// Report serialization (CSV mirrors the JSON fields; missing roots are empty
// CSV cells and JSON nulls)

inline nlohmann::ordered_json to_json(const ThresholdResult& result) {
  nlohmann::ordered_json j{{"s", result.s},
                           {"r_death_AtoB", nullptr},
                           {"r_birth_BbarToB", nullptr},
                           {"r_max_asymmetry_AB", result.r_max_asymmetry_ab},
                           {"r_max_asymmetry_BBbar", result.r_max_asymmetry_bbbar},
                           {"asymmetry_at_max", result.asymmetry_at_max},
                           {"bracket_width", result.bracket_width}};
  if (result.r_death_a_to_b) {
    j["r_death_AtoB"] = *result.r_death_a_to_b;
  }
  if (result.r_birth_antibob_to_bob) {
    j["r_birth_BbarToB"] = *result.r_birth_antibob_to_bob;
  }
  return j;
}

inline void write_csv(const ThresholdResult& result, std::ostream& os) {
  os << "s,r_death_AtoB,r_birth_BbarToB,r_max_asymmetry_AB,r_max_asymmetry_BBbar,"
        "asymmetry_at_max,bracket_width\n";
  os << format_g17(result.s) << ',';
  if (result.r_death_a_to_b) {
    os << format_g17(*result.r_death_a_to_b);
  }
  os << ',';
  if (result.r_birth_antibob_to_bob) {
    os << format_g17(*result.r_birth_antibob_to_bob);
  }
  os << ',' << format_g17(result.r_max_asymmetry_ab) << ','
     << format_g17(result.r_max_asymmetry_bbbar) << ',' << format_g17(result.asymmetry_at_max)
     << ',' << format_g17(result.bracket_width) << '\n';
}

inline nlohmann::ordered_json to_json(const CriticalPointReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    rows.push_back(nlohmann::ordered_json{{"s", row.s},
                                          {"r_star", row.r_star},
                                          {"residual_printed", row.residual_printed},
                                          {"residual_doubled", row.residual_doubled},
                                          {"defect_relation", row.defect_relation}});
  }
  return nlohmann::ordered_json{{"rows", rows},
                                {"printed_relation_holds", report.printed_relation_holds},
                                {"doubled_relation_holds", report.doubled_relation_holds},
                                {"verdict", report.verdict}};
}

inline void write_csv(const CriticalPointReport& report, std::ostream& os) {
  os << "s,r_star,residual_printed,residual_doubled,defect_relation\n";
  for (const auto& row : report.rows) {
    os << format_g17(row.s) << ',' << format_g17(row.r_star) << ','
       << format_g17(row.residual_printed) << ',' << format_g17(row.residual_doubled) << ','
       << format_g17(row.defect_relation) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const LnTwoBoundReport& report) {
  const auto pair_json = [](const PairBoundScan& scan) {
    return nlohmann::ordered_json{{"supremum", scan.supremum},
                                  {"s_at", scan.s_at},
                                  {"r_at", scan.r_at},
                                  {"margin_below_ln2", scan.margin_below_ln2}};
  };
  return nlohmann::ordered_json{{"alice_bob", pair_json(report.alice_bob)},
                                {"bob_antibob", pair_json(report.bob_antibob)},
                                {"bound_holds", report.bound_holds}};
}

inline void write_csv(const LnTwoBoundReport& report, std::ostream& os) {
  os << "pair,supremum,s_at,r_at,margin_below_ln2\n";
  os << "alice_bob," << format_g17(report.alice_bob.supremum) << ','
     << format_g17(report.alice_bob.s_at) << ',' << format_g17(report.alice_bob.r_at) << ','
     << format_g17(report.alice_bob.margin_below_ln2) << '\n';
  os << "bob_antibob," << format_g17(report.bob_antibob.supremum) << ','
     << format_g17(report.bob_antibob.s_at) << ',' << format_g17(report.bob_antibob.r_at) << ','
     << format_g17(report.bob_antibob.margin_below_ln2) << '\n';
}

/// Row-major nested JSON arrays; debugging aid for covariance matrices.
inline nlohmann::ordered_json matrix_to_json(const DenseMatrix<double>& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::ordered_json matrix_to_json(const CovarianceMatrix<double>& sigma) {
  return matrix_to_json(sigma.mat());
}

// ---------------------------------------------------------------------------
// Sweep config as JSON (the CLI merges a config file with explicit flags)

inline SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  SweepConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "pair") {
      const std::string pair = value.get<std::string>();
      if (pair == "ab" || pair == "AB") {
        config.pair = BipartitePair::alice_bob;
      } else if (pair == "bbbar" || pair == "BBbar") {
        config.pair = BipartitePair::bob_antibob;
      } else {
        throw ConfigError("config: pair must be \"ab\" or \"bbbar\"");
      }
    } else if (key == "s_values") {
      config.s_values.clear();
      if (value.is_number()) {
        config.s_values.push_back(value.get<double>());
      } else if (value.is_array()) {
        for (const auto& v : value) {
          config.s_values.push_back(v.get<double>());
        }
      } else {
        throw ConfigError("config: s_values must be a number or an array of numbers");
      }
    } else if (key == "r_range") {
      if (!value.is_object()) {
        throw ConfigError("config: r_range must be an object {min, max, steps}");
      }
      config.r_range.min = value.value("min", config.r_range.min);
      config.r_range.max = value.value("max", config.r_range.max);
      config.r_range.steps = value.value("steps", config.r_range.steps);
    } else if (key == "omega") {
      config.omega = value.get<double>();
    } else if (key == "output_path") {
      config.output_path = value.get<std::string>();
    } else if (key == "format") {
      const std::string format = value.get<std::string>();
      if (format == "csv") {
        config.format = OutputFormat::csv;
      } else if (format == "json") {
        config.format = OutputFormat::json;
      } else {
        throw ConfigError("config: format must be \"csv\" or \"json\"");
      }
    } else {
      throw ConfigError("config: unknown key \"" + key + "\"");
    }
  }
  return config;
}

}  // namespace cvsteer
