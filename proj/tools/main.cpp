// sc231 command-line tool: trajectory inspection, exhaustive scans,
// Monte-Carlo estimation, power-law fits, property suites and preimage
// queries, all exposed from the core library.
//
// Everything written to stdout (or --out) is byte-deterministic for a fixed
// seed, independent of --threads; progress and timing go to stderr.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sc231/analyze.hpp"
#include "sc231/enumerate.hpp"
#include "sc231/machine.hpp"
#include "sc231/numfmt.hpp"
#include "sc231/sample.hpp"
#include "sc231/verify.hpp"

namespace {

using namespace sc231;

std::string render_values(std::span<const std::int32_t> values, bool compact) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (compact) {
      out += static_cast<char>('0' + values[i]);
    } else {
      if (i) out += ',';
      out += std::to_string(values[i]);
    }
  }
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::trunc | std::ios::binary);
  if (!os) throw Error("cannot open output file " + out_path);
  os << text;
  if (!os) throw Error("short write to " + out_path);
}

// ---- trace ----------------------------------------------------------------

std::string render_trace(const SortTrace& trace) {
  const int n = trace.input.size();
  const bool compact = n <= 9;
  std::ostringstream os;
  os << "input: " << trace.input.str() << '\n';

  std::vector<std::int32_t> stack;
  std::vector<std::int32_t> out;
  int consumed = 0;
  for (const auto& e : trace.events) {
    std::string op;
    if (e.kind == SortEvent::Kind::Push) {
      ++consumed;
      stack.push_back(e.value);
      op = "push " + std::to_string(e.value);
    } else {
      stack.pop_back();
      out.push_back(e.value);
      op = (e.pre_popped ? "pre-pop " : "post-pop ") + std::to_string(e.value);
    }
    std::vector<std::int32_t> remaining(trace.input.values().begin() + consumed,
                                        trace.input.values().end());
    std::vector<std::int32_t> top_first(stack.rbegin(), stack.rend());
    os << "  " << op;
    for (std::size_t pad = op.size(); pad < 12; ++pad) os << ' ';
    os << " input: " << render_values(remaining, compact);
    for (std::size_t pad = remaining.size() * (compact ? 1 : 3); pad < static_cast<std::size_t>(compact ? n : 3 * n); ++pad)
      os << ' ';
    os << " stack: " << render_values(top_first, compact);
    for (std::size_t pad = top_first.size() * (compact ? 1 : 3); pad < static_cast<std::size_t>(compact ? n : 3 * n); ++pad)
      os << ' ';
    os << " output: " << render_values(out, compact) << '\n';
  }
  os << "output: " << trace.output.str() << '\n';
  const auto pre = trace.pre_popped_values();
  os << "pre-popped:";
  for (const auto v : pre) os << ' ' << v;
  if (pre.empty()) os << " (none)";
  os << '\n';
  return os.str();
}

// ---- sort-number ----------------------------------------------------------

std::string render_trajectory_text(const Trajectory& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.steps.size(); ++i)
    os << "step " << i << ": " << t.steps[i].str() << " (index " << index_of(t.steps[i])
       << ")\n";
  os << "sort-number: " << t.sort_number() << '\n';
  return os.str();
}

std::string render_trajectory_json(const Trajectory& t) {
  std::ostringstream os;
  os << "{\n  \"input\": \"" << t.steps.front().str() << "\",\n  \"sort_number\": "
     << t.sort_number() << ",\n  \"steps\": [\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    os << "    {\"permutation\": \"" << t.steps[i].str() << "\", \"index\": "
       << index_of(t.steps[i]) << "}";
    os << (i + 1 < t.steps.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

// ---- exhaustive -----------------------------------------------------------

std::string render_exhaustive_text(const ExhaustiveResult& r) {
  std::ostringstream os;
  os << "n: " << r.summary.n << '\n';
  os << "max sort-number: " << r.summary.max_sort_number << '\n';
  os << "permutations at max: " << r.summary.count_at_max << '\n';
  os << "sum of sort-numbers: " << r.summary.sum_of_sort_numbers << '\n';
  os << "average sort-number: " << format_double(r.summary.average) << '\n';
  os << "histogram (k: count):\n";
  for (int k = 0; k <= r.histogram.max_k(); ++k)
    if (r.histogram.count(k)) os << "  " << k << ": " << r.histogram.count(k) << '\n';
  os << "by leading entry (max, count at max, average):\n";
  for (int lead = 1; lead <= r.leading.n; ++lead) {
    const LengthSummary s = r.leading.summary_for(lead);
    os << "  " << lead << ": " << s.max_sort_number << ", " << s.count_at_max << ", "
       << format_double(s.average) << '\n';
  }
  return os.str();
}

// ---- verify ---------------------------------------------------------------

std::string render_reports_text(std::span<const SuiteReport> reports) {
  std::ostringstream os;
  bool all = true;
  for (const auto& rep : reports) {
    os << rep.suite << ": " << (rep.passed() ? "PASS" : "FAIL") << " (" << rep.checks
       << " checks, max-n " << rep.max_n << ")\n";
    for (const auto& f : rep.failures)
      os << "  counterexample " << f.input << ": expected " << f.expected << ", got "
         << f.actual << '\n';
    if (rep.failure_count > rep.failures.size())
      os << "  ... " << (rep.failure_count - rep.failures.size()) << " more failures\n";
    all = all && rep.passed();
  }
  os << (all ? "all suites passed\n" : "FAILURES PRESENT\n");
  return os.str();
}

// ---- fit ------------------------------------------------------------------

std::string render_fit_text(const FitResult& fit) {
  std::ostringstream os;
  os << "model: y = a * n^b\n";
  os << "a: " << format_double(fit.a) << '\n';
  os << "b: " << format_double(fit.b) << '\n';
  os << "r: " << (std::isnan(fit.r) ? std::string("undefined") : format_double(fit.r))
     << '\n';
  os << "log-log seed: a=" << format_double(fit.loglog_a)
     << " b=" << format_double(fit.loglog_b) << '\n';
  os << "converged: " << (fit.converged ? "yes" : "no") << " (" << fit.iterations
     << " iterations)\n";
  os << "n,observed,predicted,residual\n";
  for (const auto& p : fit.points)
    os << format_double(p.x) << ',' << format_double(p.observed) << ','
       << format_double(p.predicted) << ',' << format_double(p.residual) << '\n';
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"consecutive-231-avoiding stack sort toolkit"};
  app.require_subcommand(1);

  // trace
  std::string trace_perm;
  auto* cmd_trace = app.add_subcommand("trace", "show the push/pop log of one pass");
  cmd_trace->add_option("perm", trace_perm, "permutation (compact digits or comma form)")
      ->required();

  // sort-number
  std::string sn_perm;
  std::string sn_format = "text";
  auto* cmd_sn = app.add_subcommand("sort-number", "iterate to a periodic point");
  cmd_sn->add_option("perm", sn_perm, "permutation")->required();
  cmd_sn->add_option("--format", sn_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // exhaustive
  int ex_n = 0;
  int ex_threads = 0;
  std::string ex_format = "text";
  std::string ex_out, ex_checkpoint;
  std::uint64_t ex_checkpoint_every = 1;
  auto* cmd_ex = app.add_subcommand("exhaustive", "scan all of S_n");
  cmd_ex->add_option("--n", ex_n, "permutation length")->required();
  cmd_ex->add_option("--threads", ex_threads, "worker threads (0 = cores)")
      ->envname("SC231_THREADS");
  cmd_ex->add_option("--format", ex_format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd_ex->add_option("--out", ex_out, "write the report here instead of stdout");
  cmd_ex->add_option("--checkpoint", ex_checkpoint, "resumable checkpoint file");
  cmd_ex->add_option("--checkpoint-every", ex_checkpoint_every,
                     "blocks between checkpoint rewrites");

  // sample
  std::vector<int> sm_nlist;
  std::int64_t sm_samples = 400;
  std::uint64_t sm_seed = 0;
  double sm_level = 0.99;
  int sm_threads = 0;
  std::string sm_format = "text";
  std::string sm_out;
  auto* cmd_sm = app.add_subcommand("sample", "estimate average sort-numbers");
  cmd_sm->add_option("--n-list", sm_nlist, "lengths, comma separated")
      ->required()
      ->delimiter(',');
  cmd_sm->add_option("--samples", sm_samples, "samples per length (>= 2)");
  cmd_sm->add_option("--seed", sm_seed, "base seed");
  cmd_sm->add_option("--level", sm_level, "confidence level in (0,1)");
  cmd_sm->add_option("--threads", sm_threads, "worker threads (0 = cores)")
      ->envname("SC231_THREADS");
  cmd_sm->add_option("--format", sm_format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd_sm->add_option("--out", sm_out, "output file");

  // fit
  std::string fit_input;
  std::string fit_format = "text";
  std::string fit_out, fit_plot;
  auto* cmd_fit = app.add_subcommand("fit", "power-law fit y = a*n^b");
  cmd_fit->add_option("--input", fit_input, "two-column CSV of n,y points")->required();
  cmd_fit->add_option("--format", fit_format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd_fit->add_option("--out", fit_out, "output file");
  cmd_fit->add_option("--plot-data", fit_plot, "also write a dense n,predicted curve");

  // verify
  std::string vf_suite;
  int vf_max_n = 8;
  bool vf_force = false;
  int vf_threads = 0;
  std::string vf_format = "text";
  std::string vf_out;
  auto* cmd_vf = app.add_subcommand("verify", "machine-checked property suites");
  cmd_vf->add_option("--suite", vf_suite, "suite name or 'all'")->required();
  cmd_vf->add_option("--max-n", vf_max_n, "largest length to check");
  cmd_vf->add_flag("--force", vf_force, "allow exhaustive suites up to n = 12");
  cmd_vf->add_option("--threads", vf_threads, "worker threads (0 = cores)")
      ->envname("SC231_THREADS");
  cmd_vf->add_option("--format", vf_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_vf->add_option("--out", vf_out, "output file");

  // preimages
  std::string pi_perm;
  std::string pi_format = "text";
  auto* cmd_pi = app.add_subcommand("preimages", "all q with one pass mapping q to perm");
  cmd_pi->add_option("perm", pi_perm, "permutation (n <= 9)")->required();
  cmd_pi->add_option("--format", pi_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  if (cmd_trace->parsed()) {
    write_output(render_trace(sc231_trace(Permutation::parse(trace_perm))), "");
    return 0;
  }

  if (cmd_sn->parsed()) {
    const Trajectory t = trajectory(Permutation::parse(sn_perm));
    write_output(sn_format == "json" ? render_trajectory_json(t) : render_trajectory_text(t),
                 "");
    return 0;
  }

  if (cmd_ex->parsed()) {
    ScanOptions opts;
    opts.threads = ex_threads;
    if (ex_n > 14)
      std::cerr << "warning: a full scan of S_" << ex_n
                << " runs for hours; use --checkpoint to make it resumable\n";
    if (!ex_checkpoint.empty()) {
      if (const auto cp = load_checkpoint(ex_checkpoint)) {
        if (cp->n != ex_n)
          throw DomainError("checkpoint " + ex_checkpoint + " is for n = " +
                            std::to_string(cp->n));
        std::cerr << "resuming from " << cp->next_permutation().str() << "\n";
        opts.resume = *cp;
      }
      opts.checkpoint_every_blocks = ex_checkpoint_every;
      const std::string path = ex_checkpoint;
      opts.on_checkpoint = [path](const ScanCheckpoint& cp) {
        save_checkpoint(cp, path);
        std::cerr << "checkpoint: next " << cp.next_permutation().str() << "\n";
      };
    }
    std::cerr << "processing n=" << ex_n << "\n";
    const ExhaustiveResult r = exhaustive_summary(ex_n, opts);
    if (!ex_checkpoint.empty() && std::filesystem::exists(ex_checkpoint))
      std::filesystem::remove(ex_checkpoint);

    std::string text;
    if (ex_format == "json") {
      text = exhaustive_to_json(r);
    } else if (ex_format == "csv") {
      std::ostringstream os;
      emit_histogram_csv(r.histogram, os);
      text = os.str();
    } else {
      text = render_exhaustive_text(r);
    }
    write_output(text, ex_out);
    return 0;
  }

  if (cmd_sm->parsed()) {
    std::vector<SampleRun> runs;
    runs.reserve(sm_nlist.size());
    for (const int n : sm_nlist) {
      std::cerr << "processing n=" << n << "\n";
      runs.push_back(sample_stats(n, sm_samples, sm_seed, sm_level, sm_threads));
    }
    std::string text;
    if (sm_format == "json") {
      text = sample_to_json(runs);
    } else if (sm_format == "csv") {
      std::vector<SampleStats> stats;
      for (const auto& r : runs) stats.push_back(r.stats);
      std::ostringstream os;
      emit_sample_stats_csv(stats, os);
      text = os.str();
    } else {
      std::ostringstream os;
      emit_sample_grid(runs, os);
      text = os.str();
    }
    write_output(text, sm_out);
    return 0;
  }

  if (cmd_fit->parsed()) {
    std::ifstream is(fit_input);
    if (!is) throw Error("cannot read " + fit_input);
    const auto pts = parse_fit_points_csv(is);
    const FitResult fit = power_fit(pts);
    std::string text;
    if (fit_format == "json") {
      text = fit_to_json(fit);
    } else if (fit_format == "csv") {
      std::ostringstream os;
      emit_fit_csv(fit, os);
      text = os.str();
    } else {
      text = render_fit_text(fit);
    }
    write_output(text, fit_out);
    if (!fit_plot.empty()) {
      std::ofstream plot(fit_plot, std::ios::trunc);
      if (!plot) throw Error("cannot open " + fit_plot);
      emit_fit_plot_csv(fit, plot);
    }
    return 0;
  }

  if (cmd_vf->parsed()) {
    std::vector<SuiteReport> reports;
    const auto log_done = [](const SuiteReport& rep) {
      std::fprintf(stderr, "%s: %s (%llu checks, %.2fs)\n", rep.suite.c_str(),
                   rep.passed() ? "pass" : "FAIL",
                   static_cast<unsigned long long>(rep.checks), rep.elapsed_seconds);
    };
    if (vf_suite == "all") {
      reports = run_all_suites(vf_max_n, vf_force, vf_threads, log_done);
    } else {
      reports.push_back(run_suite(vf_suite, vf_max_n, vf_force, vf_threads));
      log_done(reports.back());
    }
    write_output(vf_format == "json" ? reports_to_json(reports)
                                     : render_reports_text(reports),
                 vf_out);
    for (const auto& rep : reports)
      if (!rep.passed()) return 1;
    return 0;
  }

  if (cmd_pi->parsed()) {
    const Permutation p = Permutation::parse(pi_perm);
    const auto pre = preimages(p);
    std::ostringstream os;
    if (pi_format == "json") {
      os << "{\n  \"permutation\": \"" << p.str() << "\",\n  \"preimages\": [";
      for (std::size_t i = 0; i < pre.size(); ++i)
        os << (i ? ", " : "") << '"' << pre[i].str() << '"';
      os << "]\n}\n";
    } else {
      for (const auto& q : pre) os << q.str() << '\n';
      if (pre.empty()) os << "(none)\n";
    }
    write_output(os.str(), "");
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sc231::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
