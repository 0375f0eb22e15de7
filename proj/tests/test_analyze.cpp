#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sc231/analyze.hpp"
#include "sc231/sample.hpp"

using namespace sc231;

namespace {

std::vector<DataPoint> synthetic(double a, double b, int lo, int hi) {
  std::vector<DataPoint> pts;
  for (int x = lo; x <= hi; ++x)
    pts.push_back({static_cast<double>(x), a * std::pow(static_cast<double>(x), b)});
  return pts;
}

}  // namespace

TEST_CASE("power_fit recovers an exact model") {
  const auto pts = synthetic(2.0, 1.5, 1, 10);
  const FitResult fit = power_fit(pts);
  CHECK(std::fabs(fit.a - 2.0) < 1e-9);
  CHECK(std::fabs(fit.b - 1.5) < 1e-9);
  CHECK(std::fabs(fit.r - 1.0) < 1e-9);
  CHECK(fit.converged);
  for (const auto& p : fit.points) CHECK(std::fabs(p.residual) < 1e-9);
}

TEST_CASE("constant data fits with a near-zero exponent") {
  std::vector<DataPoint> pts;
  for (int x = 1; x <= 8; ++x) pts.push_back({static_cast<double>(x), 5.0});
  const FitResult fit = power_fit(pts);
  CHECK(std::fabs(fit.b) < 1e-9);
  CHECK(std::fabs(fit.a - 5.0) < 1e-9);
}

TEST_CASE("exponent is invariant under rescaling the abscissae") {
  RngState rng = RngState::from_seed(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 0.5 + 3.0 * (rng.next() % 1000) / 1000.0;
    const double b = 0.2 + 2.0 * (rng.next() % 1000) / 1000.0;
    const double s = 0.25 + 4.0 * (rng.next() % 1000) / 1000.0;

    std::vector<DataPoint> pts = synthetic(a, b, 2, 12);
    std::vector<DataPoint> scaled = pts;
    for (auto& p : scaled) p.x *= s;

    const FitResult f1 = power_fit(pts);
    const FitResult f2 = power_fit(scaled);
    REQUIRE(std::fabs(f1.b - f2.b) < 1e-6);
    REQUIRE(std::fabs(f2.a - f1.a * std::pow(s, -f1.b)) < 1e-6 * std::max(1.0, f1.a));
  }
}

TEST_CASE("gauss-newton never regresses from its log-log seed") {
  RngState rng = RngState::from_seed(23);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<DataPoint> pts;
    const double a = 0.3 + (rng.next() % 500) / 250.0;
    const double b = 0.8 + (rng.next() % 500) / 500.0;
    for (int x = 3; x <= 20; ++x) {
      const double noise = 1.0 + 0.15 * ((rng.next() % 2001) / 1000.0 - 1.0);
      pts.push_back({static_cast<double>(x), a * std::pow(x, b) * noise});
    }
    const FitResult fit = power_fit(pts);
    const double seed_sse = [&] {
      double s = 0;
      for (const auto& p : pts) {
        const double r = p.y - fit.loglog_a * std::pow(p.x, fit.loglog_b);
        s += r * r;
      }
      return s;
    }();
    REQUIRE(fit.ss_res <= seed_sse + 1e-12);
  }
}

TEST_CASE("goodness behaves") {
  const auto pts = synthetic(2.0, 1.5, 1, 10);
  CHECK(goodness(pts, 2.0, 1.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(goodness(pts, 2.5, 1.2) < 1.0);

  std::vector<DataPoint> flat;
  for (int x = 1; x <= 5; ++x) flat.push_back({static_cast<double>(x), 3.0});
  CHECK(std::isnan(goodness(flat, 3.0, 0.0)));
}

TEST_CASE("power_fit input validation") {
  std::vector<DataPoint> two{{1, 1}, {2, 2}};
  CHECK_THROWS_AS(power_fit(two), DomainError);
  std::vector<DataPoint> nonpos{{1, 1}, {2, 2}, {3, -1}};
  CHECK_THROWS_AS(power_fit(nonpos), DomainError);
  std::vector<DataPoint> zero_x{{0, 1}, {2, 2}, {3, 1}};
  CHECK_THROWS_AS(power_fit(zero_x), DomainError);
}

TEST_CASE("length-summary CSV round-trips exactly") {
  std::vector<LengthSummary> rows;
  for (int n = 1; n <= 14; ++n) {
    LengthSummary s;
    s.n = n;
    s.max_sort_number = 2 * n;
    s.count_at_max = static_cast<std::uint64_t>(n) * 31;
    s.sum_of_sort_numbers = static_cast<std::uint64_t>(n) * 977;
    s.average = static_cast<double>(s.sum_of_sort_numbers) / (3.0 * n);
    rows.push_back(s);
  }
  std::ostringstream os;
  emit_length_summaries_csv(rows, os);

  std::istringstream is(os.str());
  const auto parsed = parse_length_summaries_csv(is);
  REQUIRE(parsed.size() == 14);
  for (std::size_t i = 0; i < rows.size(); ++i) REQUIRE(parsed[i] == rows[i]);
}

TEST_CASE("empty tables emit header-only CSV") {
  std::ostringstream os;
  emit_length_summaries_csv({}, os);
  CHECK(os.str() == "n,max_sort_number,count_at_max,sum_of_sort_numbers,average\n");

  std::ostringstream os2;
  emit_sample_stats_csv({}, os2);
  CHECK(os2.str() == "n,samples,mean,sd,ci_low,ci_high,level,seed\n");
}

TEST_CASE("sample-stats CSV round-trips exactly") {
  std::vector<SampleStats> rows;
  SampleStats s;
  s.n = 15;
  s.m = 400;
  s.mean = 11.465;
  s.sd = 3.1622776601683795;
  s.ci_low = 11.055417;
  s.ci_high = 11.874583;
  s.level = 0.99;
  s.seed = 42;
  rows.push_back(s);
  std::ostringstream os;
  emit_sample_stats_csv(rows, os);
  std::istringstream is(os.str());
  const auto parsed = parse_sample_stats_csv(is);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0] == rows[0]);
}

TEST_CASE("fit report CSV round-trips exactly") {
  const FitResult fit = power_fit(synthetic(0.45, 1.35, 3, 14));
  std::ostringstream os;
  emit_fit_csv(fit, os);
  std::istringstream is(os.str());
  const auto parsed = parse_fit_csv(is);
  REQUIRE(parsed.size() == fit.points.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].x == fit.points[i].x);
    CHECK(parsed[i].observed == fit.points[i].observed);
    CHECK(parsed[i].predicted == fit.points[i].predicted);
    CHECK(parsed[i].residual == fit.points[i].residual);
  }
}

TEST_CASE("fit input parsing accepts an optional header") {
  std::istringstream with_header("n,y\n1,2\n2,5.5\n3,9\n");
  auto pts = parse_fit_points_csv(with_header);
  REQUIRE(pts.size() == 3);
  CHECK(pts[1].y == 5.5);

  std::istringstream bare("1,2\n2,5.5\n");
  pts = parse_fit_points_csv(bare);
  REQUIRE(pts.size() == 2);

  std::istringstream bad("1,2\n2\n");
  CHECK_THROWS_AS(parse_fit_points_csv(bad), DomainError);
}

TEST_CASE("plot data covers the observed range") {
  const FitResult fit = power_fit(synthetic(2.0, 1.5, 4, 9));
  std::ostringstream os;
  emit_fit_plot_csv(fit, os, 11);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "n,predicted");
  int rows = 0;
  double first_x = -1, last_x = -1;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    const double x = std::stod(line.substr(0, comma));
    if (rows == 0) first_x = x;
    last_x = x;
    ++rows;
  }
  CHECK(rows == 11);
  CHECK(first_x == 4.0);
  CHECK(last_x == 9.0);
}

TEST_CASE("fit JSON shape") {
  const std::string text = fit_to_json(power_fit(synthetic(2.0, 1.5, 1, 6)));
  CHECK(text.find("\"a\": 2.0") != std::string::npos);
  CHECK(text.find("\"b\": 1.5") != std::string::npos);
  CHECK(text.find("\"loglog\"") != std::string::npos);
  CHECK(text.find("\"points\"") != std::string::npos);
}
