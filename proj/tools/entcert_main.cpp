// entcert: certifies entanglement of subspaces and low-rank mixed states by
// building the level-k linear systems and testing column independence.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "entcert/constructions.hpp"
#include "entcert/hierarchy.hpp"
#include "entcert/io.hpp"

namespace {

using namespace entcert;

struct CommonArgs {
  std::string input;
  std::string out = "-";
  std::string mode = "float";
  double tol = -1.0;
  int k = 0;      // 0 = not set
  int k_max = 0;  // 0 = not set
  CertifyOptions opts;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_levels = true) {
  cmd->add_option("input", args.input, "input file (\"-\" for stdin)")->required();
  cmd->add_option("--out", args.out, "certificate output path (\"-\" for stdout)");
  cmd->add_option("--mode", args.mode, "arithmetic mode: float | rational")
      ->check(CLI::IsMember({"float", "rational"}));
  cmd->add_option("--tol", args.tol, "relative rank tolerance (float mode)");
  if (with_levels) {
    auto* k = cmd->add_option("--k", args.k, "hierarchy level to run");
    auto* kmax = cmd->add_option("--k-max", args.k_max, "walk levels 1..k-max");
    k->excludes(kmax);
  }
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("ENTCERT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

struct TimedRun {
  Certificate certificate;
  double elapsed_ms = 0.0;
};

template <class Fn>
TimedRun timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Certificate cert = fn();
  const auto stop = std::chrono::steady_clock::now();
  return {std::move(cert),
          std::chrono::duration<double, std::milli>(stop - start).count()};
}

int emit_certificate(const CommonArgs& args, const TimedRun& run, const std::string& raw_input) {
  io::CertificateFile file;
  file.certificate = run.certificate;
  file.provenance.input_name = args.input == "-" ? "<stdin>" : args.input;
  file.provenance.input_hash = io::fnv1a64_hex(raw_input);
  file.provenance.elapsed_ms = run.elapsed_ms;
  io::write_output(args.out, io::serialize_certificate(file));
  return run.certificate.exit_code();
}

/// Loads a subspace honoring the requested mode; rational computation on a
/// float file is refused (no exact lift exists for binary floats).
std::variant<Subspace<Complexd>, Subspace<RationalComplex>> load_subspace(
    const CommonArgs& args, const std::string& raw) {
  auto any = io::parse_subspace_file(raw);
  if (args.mode == "rational") {
    if (!std::holds_alternative<Subspace<RationalComplex>>(any))
      throw std::invalid_argument("--mode rational requires a rational-mode input file");
    return std::get<Subspace<RationalComplex>>(std::move(any));
  }
  if (std::holds_alternative<Subspace<Complexd>>(any))
    return std::get<Subspace<Complexd>>(std::move(any));
  return to_float(std::get<Subspace<RationalComplex>>(any));
}

std::variant<MixedState<Complexd>, MixedState<RationalComplex>> load_state(
    const CommonArgs& args, const std::string& raw) {
  auto any = io::parse_state_file(raw);
  if (args.mode == "rational") {
    if (!std::holds_alternative<MixedState<RationalComplex>>(any))
      throw std::invalid_argument("--mode rational requires a rational-mode input file");
    return std::get<MixedState<RationalComplex>>(std::move(any));
  }
  if (std::holds_alternative<MixedState<Complexd>>(any))
    return std::get<MixedState<Complexd>>(std::move(any));
  auto f = to_float(std::get<MixedState<RationalComplex>>(any));
  validate_mixed_state(f);
  return f;
}

int run_certify(CommonArgs& args, int r) {
  const std::string raw = io::read_input(args.input);
  auto loaded = load_subspace(args, raw);
  args.opts.rel_tol = args.tol;
  const int k = args.k > 0 ? args.k : (args.k_max > 0 ? 0 : 1);
  const auto run = timed([&] {
    return std::visit(
        [&](const auto& s) {
          return k > 0 ? certify_bipartite(s, r, k, args.opts)
                       : certify_bipartite_auto(s, r, args.k_max, args.opts);
        },
        loaded);
  });
  return emit_certificate(args, run, raw);
}

int run_schmidt_number(CommonArgs& args, int r) {
  const std::string raw = io::read_input(args.input);
  auto loaded = load_state(args, raw);
  args.opts.rel_tol = args.tol;
  const int k = args.k > 0 ? args.k : (args.k_max > 0 ? 0 : 1);
  const auto run = timed([&] {
    return std::visit(
        [&](const auto& m) {
          if (k > 0) return schmidt_number_bound(m, r, k, args.opts);
          Certificate cert;
          for (int level = 1; level <= args.k_max; ++level) {
            Certificate step = schmidt_number_bound(m, r, level, args.opts);
            if (level == 1) {
              cert = step;
            } else {
              cert.verdict = step.verdict;
              cert.level = step.level;
              for (auto& rep : step.systems) cert.systems.push_back(std::move(rep));
            }
            if (cert.verdict != Verdict::NotCertifiedAtLevel) break;
          }
          return cert;
        },
        loaded);
  });
  return emit_certificate(args, run, raw);
}

int run_multiparty(CommonArgs& args, bool genuine) {
  const std::string raw = io::read_input(args.input);
  auto loaded = load_subspace(args, raw);
  args.opts.rel_tol = args.tol;
  const int k = args.k > 0 ? args.k : (args.k_max > 0 ? 0 : 1);
  const auto run = timed([&] {
    return std::visit(
        [&](const auto& s) {
          if (genuine)
            return k > 0 ? certify_ges(s, k, args.opts)
                         : certify_ges_auto(s, args.k_max, args.opts);
          return k > 0 ? certify_ces(s, k, args.opts)
                       : certify_ces_auto(s, args.k_max, args.opts);
        },
        loaded);
  });
  return emit_certificate(args, run, raw);
}

int run_random(const std::string& dims_csv, int dsub, std::uint64_t seed,
               const std::string& out) {
  std::vector<int> dims;
  std::stringstream ss(dims_csv);
  std::string part;
  while (std::getline(ss, part, ',')) dims.push_back(std::stoi(part));
  const auto s = constructions::random_subspace(TensorSpace(dims), dsub, seed);
  io::write_output(out, io::serialize_subspace_file(s));
  return 0;
}

struct BenchRow {
  std::string dims;
  int r = 0;
  int k = 0;
  int d_s = 0;
  bool certified = false;
  std::string system;
  double ms = 0.0;
};

void print_bench(const std::vector<BenchRow>& rows) {
  std::printf("%-12s %3s %3s %5s %10s %16s %10s\n", "dims", "r", "k", "d_S", "certified",
              "system", "ms");
  for (const auto& row : rows)
    std::printf("%-12s %3d %3d %5d %10s %16s %10.1f\n", row.dims.c_str(), row.r, row.k, row.d_s,
                row.certified ? "yes" : "no", row.system.c_str(), row.ms);
}

std::string system_label(const Certificate& c) {
  if (c.systems.empty()) return "-";
  const auto& rep = c.systems.back();
  return std::to_string(rep.rows) + "x" + std::to_string(rep.cols);
}

int run_bench(int table, int max_dim, int trials, std::uint64_t seed, const CertifyOptions& opts) {
  if (max_dim <= 0) max_dim = table == 3 ? 12 : (table == 2 ? 3 : 6);
  std::vector<BenchRow> rows;
  std::vector<std::string> mismatches;
  const auto record = [&](const std::string& dims, int r, int k, int d_s,
                          const Certificate& cert, double ms) {
    rows.push_back({dims, r, k, d_s, cert.certified(), system_label(cert), ms});
  };

  if (table == 1) {
    for (const auto& row : constructions::level1_max_dimension_table()) {
      if (row.d > max_dim) continue;
      const int computed = max_level1_dimension(row.d, row.d, row.r);
      if (computed != row.max_d_s) {
        mismatches.push_back("table 1 d=" + std::to_string(row.d) + " r=" + std::to_string(row.r) +
                             ": max d_S computed " + std::to_string(computed) + ", expected " +
                             std::to_string(row.max_d_s));
        continue;
      }
      for (int t = 0; t < std::max(1, trials); ++t) {
        const auto run = timed([&] {
          const auto s = constructions::random_subspace(TensorSpace({row.d, row.d}), row.max_d_s,
                                                        seed + static_cast<std::uint64_t>(t));
          return certify_bipartite(s, row.r, 1, opts);
        });
        record(std::to_string(row.d) + "x" + std::to_string(row.d), row.r, 1, row.max_d_s,
               run.certificate, run.elapsed_ms);
        if (!run.certificate.certified())
          mismatches.push_back("table 1 d=" + std::to_string(row.d) + " r=" +
                               std::to_string(row.r) + ": subspace not certified at level 1");
      }
    }
  } else if (table == 2) {
    for (const auto& row : constructions::level2_max_dimension_table()) {
      if (row.d > max_dim) continue;
      if (row.max_d_s != (row.d - row.r) * (row.d - row.r)) {
        mismatches.push_back("table 2 d=" + std::to_string(row.d) +
                             ": stored d_S is not (d-r)^2");
        continue;
      }
      for (int t = 0; t < std::max(1, trials); ++t) {
        const auto run = timed([&] {
          const auto s = constructions::random_subspace(TensorSpace({row.d, row.d}), row.max_d_s,
                                                        seed + static_cast<std::uint64_t>(t));
          return certify_bipartite(s, row.r, 2, opts);
        });
        record(std::to_string(row.d) + "x" + std::to_string(row.d), row.r, 2, row.max_d_s,
               run.certificate, run.elapsed_ms);
        if (!run.certificate.certified())
          mismatches.push_back("table 2 d=" + std::to_string(row.d) + " r=" +
                               std::to_string(row.r) + ": subspace not certified at level 2");
      }
    }
  } else if (table == 3) {
    for (const auto& row : constructions::ces_level_table()) {
      const int total = row.d_a * row.d_b * row.d_c;
      if (total > max_dim) continue;
      const TensorSpace space({row.d_a, row.d_b, row.d_c});
      if (constructions::bhat_ces_dimension(space) != row.d_s) {
        mismatches.push_back("table 3 dims (" + std::to_string(row.d_a) + "," +
                             std::to_string(row.d_b) + "," + std::to_string(row.d_c) +
                             "): dimension formula mismatch");
        continue;
      }
      const auto run = timed([&] {
        const auto s = constructions::bhat_ces(space);
        return certify_ces(to_float(s), row.level, opts);
      });
      const std::string dims = "(" + std::to_string(row.d_a) + "," + std::to_string(row.d_b) +
                               "," + std::to_string(row.d_c) + ")";
      record(dims, 1, row.level, row.d_s, run.certificate, run.elapsed_ms);
      if (!run.certificate.certified())
        mismatches.push_back("table 3 dims " + dims + ": not certified at level " +
                             std::to_string(row.level));
    }
  } else {
    std::cerr << "bench: --table must be 1, 2, or 3\n";
    return 1;
  }

  print_bench(rows);
  if (!mismatches.empty()) {
    std::cerr << "bench: " << mismatches.size() << " mismatch(es) against expected values:\n";
    for (const auto& m : mismatches) std::cerr << "  " << m << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entangled-subspace certification via hierarchy linear systems"};
  app.require_subcommand(1);

  int threads_flag = 0;
  std::uint64_t guardrail = 5'000'000;
  app.add_option("--threads", threads_flag, "worker threads for column generation");
  app.add_option("--guardrail-rows", guardrail, "refuse systems with more rows than this");

  CommonArgs certify_args;
  int certify_r = 1;
  auto* certify = app.add_subcommand("certify", "certify a bipartite subspace r-entangled");
  add_common(certify, certify_args);
  certify->add_option("--r", certify_r, "Schmidt-rank threshold (certifies rank >= r+1)");

  CommonArgs sn_args;
  int sn_r = 1;
  auto* sn = app.add_subcommand("schmidt-number",
                                "lower-bound the Schmidt number of a mixed state");
  add_common(sn, sn_args);
  sn->add_option("--r", sn_r, "certify Schmidt number >= r+1");

  CommonArgs ces_args;
  auto* ces = app.add_subcommand("ces", "certify a multipartite subspace completely entangled");
  add_common(ces, ces_args);

  CommonArgs ges_args;
  bool ges_stop = false;
  auto* ges = app.add_subcommand("ges", "certify a multipartite subspace genuinely entangled");
  add_common(ges, ges_args);
  ges->add_flag("--stop-at-first-failure", ges_stop, "skip remaining cuts after a failure");

  int bench_table = 1, bench_max_dim = 0, bench_trials = 1;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "reproduce the reference tables");
  bench->add_option("--table", bench_table, "which table: 1, 2, or 3")->required();
  bench->add_option("--max-dim", bench_max_dim,
                    "largest local dimension (tables 1-2) or total dimension (table 3); "
                    "defaults: 6 / 3 / 12");
  bench->add_option("--trials", bench_trials, "certifications per row (first is deterministic)");
  bench->add_option("--seed", bench_seed, "seed for the random trials");

  std::string random_dims = "4,4", random_out = "-";
  int random_dsub = 1;
  std::uint64_t random_seed = 0;
  auto* random_cmd = app.add_subcommand("random", "write a seeded Haar-random subspace file");
  random_cmd->add_option("--dims", random_dims, "comma-separated local dimensions")->required();
  random_cmd->add_option("--dsub", random_dsub, "subspace dimension")->required();
  random_cmd->add_option("--seed", random_seed, "random seed");
  random_cmd->add_option("--out", random_out, "output path (\"-\" for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const int threads = resolve_threads(threads_flag);
    for (CommonArgs* a : {&certify_args, &sn_args, &ces_args, &ges_args}) {
      a->opts.threads = threads;
      a->opts.guardrail_rows = guardrail;
    }
    ges_args.opts.ges_stop_at_first_failure = ges_stop;
    CertifyOptions bench_opts;
    bench_opts.threads = threads;
    bench_opts.guardrail_rows = guardrail;

    if (certify->parsed()) return run_certify(certify_args, certify_r);
    if (sn->parsed()) return run_schmidt_number(sn_args, sn_r);
    if (ces->parsed()) return run_multiparty(ces_args, false);
    if (ges->parsed()) return run_multiparty(ges_args, true);
    if (bench->parsed())
      return run_bench(bench_table, bench_max_dim, bench_trials, bench_seed, bench_opts);
    if (random_cmd->parsed()) return run_random(random_dims, random_dsub, random_seed, random_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const entcert::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
