#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sc231/enumerate.hpp"
#include "sc231/sample.hpp"

namespace sc231 {

struct DataPoint {
  double x;
  double y;
};

struct FitPoint {
  double x;
  double observed;
  double predicted;
  double residual;  // observed - predicted
};

struct FitResult {
  double a = 0;  // y = a * x^b
  double b = 0;
  /// sqrt(max(0, 1 - SSres/SStot)); NaN when SStot == 0 (undefined, not 1).
  double r = 0;
  /// Ordinary-least-squares solution in log-log space, kept for the report;
  /// it also seeds the Gauss-Newton iteration.
  double loglog_a = 0;
  double loglog_b = 0;
  bool converged = false;
  int iterations = 0;
  double ss_res = 0;
  double ss_tot = 0;
  std::vector<FitPoint> points;
};

/// Least squares for y = a*x^b in the original (not log) space: damped
/// Gauss-Newton seeded by the log-log solution, stopping at relative step
/// 1e-10 or 200 iterations. Non-convergence is reported through the
/// `converged` flag with the best iterate kept. Requires >= 3 points with
/// positive coordinates.
FitResult power_fit(std::span<const DataPoint> pts);

/// Goodness coefficient for an (a, b) pair on the given points.
double goodness(std::span<const DataPoint> pts, double a, double b);

/// CSV report emitters/parsers. Numbers render via format_double, so a parse
/// of an emitted file reproduces every value exactly.
void emit_length_summaries_csv(std::span<const LengthSummary> rows, std::ostream& os);
std::vector<LengthSummary> parse_length_summaries_csv(std::istream& is);

void emit_sample_stats_csv(std::span<const SampleStats> rows, std::ostream& os);
std::vector<SampleStats> parse_sample_stats_csv(std::istream& is);

/// Columns n,observed,predicted,residual.
void emit_fit_csv(const FitResult& fit, std::ostream& os);
std::vector<FitPoint> parse_fit_csv(std::istream& is);

/// Two-column input for power_fit: "x,y" per line; a non-numeric first line
/// is treated as a header.
std::vector<DataPoint> parse_fit_points_csv(std::istream& is);

/// Dense two-column "x,predicted" curve for external plotting tools.
void emit_fit_plot_csv(const FitResult& fit, std::ostream& os, int samples = 256);

/// JSON: {a, b, r, loglog:{a,b}, converged, iterations, points:[...]}.
std::string fit_to_json(const FitResult& fit, int indent = 2);

}  // namespace sc231
