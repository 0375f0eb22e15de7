#include "sc231/analyze.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sc231/numfmt.hpp"

namespace sc231 {
namespace {

double sse_for(std::span<const DataPoint> pts, double a, double b) {
  double s = 0;
  for (const auto& p : pts) {
    const double r = p.y - a * std::pow(p.x, b);
    s += r * r;
  }
  return s;
}

void check_points(std::span<const DataPoint> pts) {
  if (pts.size() < 3) throw DomainError("power fit needs at least 3 points");
  for (const auto& p : pts)
    if (!(p.x > 0) || !(p.y > 0))
      throw DomainError("power fit needs positive coordinates, got (" +
                        format_double(p.x) + ", " + format_double(p.y) + ")");
}

}  // namespace

double goodness(std::span<const DataPoint> pts, double a, double b) {
  if (pts.empty()) throw DomainError("goodness of empty data");
  double mean = 0;
  for (const auto& p : pts) mean += p.y;
  mean /= static_cast<double>(pts.size());
  double ss_tot = 0;
  for (const auto& p : pts) ss_tot += (p.y - mean) * (p.y - mean);
  if (ss_tot == 0) return std::numeric_limits<double>::quiet_NaN();
  const double ss_res = sse_for(pts, a, b);
  return std::sqrt(std::max(0.0, 1 - ss_res / ss_tot));
}

FitResult power_fit(std::span<const DataPoint> pts) {
  check_points(pts);
  const auto m = static_cast<double>(pts.size());

  // Log-log ordinary least squares seeds the iteration.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    const double lx = std::log(p.x);
    const double ly = std::log(p.y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double var = sxx - sx * sx / m;
  const double b0 = var > 0 ? (sxy - sx * sy / m) / var : 0.0;
  const double a0 = std::exp((sy - b0 * sx) / m);

  double a = a0;
  double b = b0;
  double sse = sse_for(pts, a, b);
  bool converged = false;
  int iterations = 0;

  for (; iterations < 200; ++iterations) {
    // Normal equations of the damped Gauss-Newton step.
    double jaa = 0, jab = 0, jbb = 0, ga = 0, gb = 0;
    for (const auto& p : pts) {
      const double f = a * std::pow(p.x, b);
      const double da = f / a;
      const double db = f * std::log(p.x);
      const double r = p.y - f;
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    const double det = jaa * jbb - jab * jab;
    if (!(std::fabs(det) > 0)) break;
    const double step_a = (jbb * ga - jab * gb) / det;
    const double step_b = (jaa * gb - jab * ga) / det;

    double lambda = 1;
    double next_a = a, next_b = b, next_sse = sse;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
      const double ca = a + lambda * step_a;
      const double cb = b + lambda * step_b;
      if (!(ca > 0)) continue;
      const double s = sse_for(pts, ca, cb);
      if (s < sse) {
        next_a = ca;
        next_b = cb;
        next_sse = s;
        improved = true;
        break;
      }
    }
    if (!improved) {
      converged = true;
      break;
    }
    const double rel_step = std::max(std::fabs(next_a - a) / std::max(1.0, std::fabs(a)),
                                     std::fabs(next_b - b) / std::max(1.0, std::fabs(b)));
    a = next_a;
    b = next_b;
    sse = next_sse;
    if (rel_step < 1e-10) {
      converged = true;
      break;
    }
  }

  FitResult fit;
  fit.a = a;
  fit.b = b;
  fit.loglog_a = a0;
  fit.loglog_b = b0;
  fit.converged = converged;
  fit.iterations = iterations;
  fit.ss_res = sse;
  fit.r = goodness(pts, a, b);
  double mean = 0;
  for (const auto& p : pts) mean += p.y;
  mean /= m;
  for (const auto& p : pts) fit.ss_tot += (p.y - mean) * (p.y - mean);
  fit.points.reserve(pts.size());
  for (const auto& p : pts) {
    const double pred = a * std::pow(p.x, b);
    fit.points.push_back({p.x, p.y, pred, p.y - pred});
  }
  return fit;
}

namespace {

std::vector<std::vector<std::string_view>> data_rows(const std::string& text,
                                                     std::size_t expected_fields,
                                                     const char* what) {
  std::vector<std::vector<std::string_view>> rows;
  bool first = true;
  for (const auto line : split(text, '\n')) {
    const auto t = trim(line);
    if (t.empty()) continue;
    auto fields = split(t, ',');
    if (first) {
      first = false;
      // A non-numeric first row is a header.
      bool numeric = true;
      try {
        parse_double(fields[0]);
      } catch (const DomainError&) {
        numeric = false;
      }
      if (!numeric) continue;
    }
    if (fields.size() != expected_fields)
      throw DomainError(std::string("bad ") + what + " row: expected " +
                        std::to_string(expected_fields) + " fields in '" + std::string(t) + "'");
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string slurp(std::istream& is) {
  return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

}  // namespace

void emit_length_summaries_csv(std::span<const LengthSummary> rows, std::ostream& os) {
  os << "n,max_sort_number,count_at_max,sum_of_sort_numbers,average\n";
  for (const auto& s : rows)
    os << s.n << ',' << s.max_sort_number << ',' << s.count_at_max << ','
       << s.sum_of_sort_numbers << ',' << format_double(s.average) << '\n';
}

std::vector<LengthSummary> parse_length_summaries_csv(std::istream& is) {
  std::vector<LengthSummary> out;
  const std::string text = slurp(is);
  for (const auto& f : data_rows(text, 5, "length-summary")) {
    LengthSummary s;
    s.n = static_cast<int>(parse_int(f[0]));
    s.max_sort_number = static_cast<int>(parse_int(f[1]));
    s.count_at_max = static_cast<std::uint64_t>(parse_int(f[2]));
    s.sum_of_sort_numbers = static_cast<std::uint64_t>(parse_int(f[3]));
    s.average = parse_double(f[4]);
    out.push_back(s);
  }
  return out;
}

void emit_sample_stats_csv(std::span<const SampleStats> rows, std::ostream& os) {
  os << "n,samples,mean,sd,ci_low,ci_high,level,seed\n";
  for (const auto& s : rows)
    os << s.n << ',' << s.m << ',' << format_double(s.mean) << ',' << format_double(s.sd)
       << ',' << format_double(s.ci_low) << ',' << format_double(s.ci_high) << ','
       << format_double(s.level) << ',' << s.seed << '\n';
}

std::vector<SampleStats> parse_sample_stats_csv(std::istream& is) {
  std::vector<SampleStats> out;
  const std::string text = slurp(is);
  for (const auto& f : data_rows(text, 8, "sample-stats")) {
    SampleStats s;
    s.n = static_cast<int>(parse_int(f[0]));
    s.m = parse_int(f[1]);
    s.mean = parse_double(f[2]);
    s.sd = parse_double(f[3]);
    s.ci_low = parse_double(f[4]);
    s.ci_high = parse_double(f[5]);
    s.level = parse_double(f[6]);
    s.seed = static_cast<std::uint64_t>(parse_int(f[7]));
    out.push_back(s);
  }
  return out;
}

void emit_fit_csv(const FitResult& fit, std::ostream& os) {
  os << "n,observed,predicted,residual\n";
  for (const auto& p : fit.points)
    os << format_double(p.x) << ',' << format_double(p.observed) << ','
       << format_double(p.predicted) << ',' << format_double(p.residual) << '\n';
}

std::vector<FitPoint> parse_fit_csv(std::istream& is) {
  std::vector<FitPoint> out;
  const std::string text = slurp(is);
  for (const auto& f : data_rows(text, 4, "fit-report"))
    out.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]),
                   parse_double(f[3])});
  return out;
}

std::vector<DataPoint> parse_fit_points_csv(std::istream& is) {
  std::vector<DataPoint> out;
  const std::string text = slurp(is);
  for (const auto& f : data_rows(text, 2, "fit-input"))
    out.push_back({parse_double(f[0]), parse_double(f[1])});
  return out;
}

void emit_fit_plot_csv(const FitResult& fit, std::ostream& os, int samples) {
  if (fit.points.empty()) throw DomainError("no points to plot");
  if (samples < 2) throw DomainError("need at least 2 plot samples");
  double lo = fit.points.front().x;
  double hi = lo;
  for (const auto& p : fit.points) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  os << "n,predicted\n";
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    os << format_double(x) << ',' << format_double(fit.a * std::pow(x, fit.b)) << '\n';
  }
}

std::string fit_to_json(const FitResult& fit, int indent) {
  nlohmann::ordered_json obj;
  obj["a"] = fit.a;
  obj["b"] = fit.b;
  if (std::isnan(fit.r))
    obj["r"] = nullptr;
  else
    obj["r"] = fit.r;
  obj["loglog"] = {{"a", fit.loglog_a}, {"b", fit.loglog_b}};
  obj["converged"] = fit.converged;
  obj["iterations"] = fit.iterations;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : fit.points) {
    nlohmann::ordered_json e;
    e["n"] = p.x;
    e["observed"] = p.observed;
    e["predicted"] = p.predicted;
    e["residual"] = p.residual;
    arr.push_back(std::move(e));
  }
  obj["points"] = std::move(arr);
  return obj.dump(indent) + "\n";
}

}  // namespace sc231
