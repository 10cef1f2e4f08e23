// oddext: command-line driver for the identity suite, the odd-order Hodge
// solver and the seeded div-curl / pairing experiments.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage, 3 parse, 4 incompatible
// data, 5 non-trivial kernel.

#include "oddext/analysis.hpp"
#include "oddext/form_io.hpp"
#include "oddext/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kParse = 3, kIncompatible = 4, kKernel = 5 };

struct ExperimentArgs {
  int n = 2;
  int q = 0;
  int m = 0;
  int bandwidth = 4;
  int trials = 10;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string output;
  double density = 0.25;
  bool avoid_exceptional = false;
};

void add_experiment_flags(CLI::App* cmd, ExperimentArgs& a, bool with_m) {
  cmd->add_option("--n", a.n, "Ambient dimension")->check(CLI::Range(2, 6));
  cmd->add_option("--q", a.q, "Form degree");
  if (with_m) cmd->add_option("--m", a.m, "Order parameter: S = d(d*d)^m")->check(CLI::NonNegativeNumber);
  cmd->add_option("--bandwidth", a.bandwidth, "Largest |k_j| of random data")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", a.trials, "Number of trials")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", a.seed, "Batch seed");
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output,-o", a.output, "Output file (default: stdout)");
  cmd->add_option("--density", a.density, "Fraction of populated spectral slots")->check(CLI::Range(0.0, 1.0));
}

int emit(const std::vector<oddext::ExperimentRecord>& records, const ExperimentArgs& a) {
  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output);
    if (!file) {
      std::cerr << "error: cannot write '" << a.output << "'\n";
      return kUsage;
    }
  }
  std::ostream& out = a.output.empty() ? std::cout : file;
  if (a.format == "json")
    oddext::write_json(records, out);
  else
    oddext::write_csv(records, out);
  return kOk;
}

int run_solve(const std::string& input, const std::string& output) {
  using namespace oddext;
  try {
    const auto sys = io::system_from_json(io::read_json_file(input));
    return std::visit(
        [&](const auto& system) {
          const auto solution = solve_odd(system);
          io::write_json_file(output, io::to_json(solution.v));
          io::write_json_file(output + ".report.json", io::to_json(solution.report));
          if (solution.report.flag_q1)
            std::cerr << "warning: q = 1 with g != 0; the L^1 bound on g does not apply (Hardy-space substitute)\n";
          if (solution.report.flag_qn1)
            std::cerr << "warning: q = n-1 with f != 0; the L^1 bound on f does not apply (Hardy-space substitute)\n";
          if (solution.report.failed) std::cerr << "warning: residual check failed\n";
          return static_cast<int>(kOk);
        },
        sys);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const DegreeMismatch& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const IncompatibleData& e) {
    std::cerr << "incompatible data: " << e.what() << '\n';
    return kIncompatible;
  } catch (const NonTrivialKernel& e) {
    std::cerr << "kernel: " << e.what() << '\n';
    return kKernel;
  }
}

void print_summary(const std::vector<oddext::ExperimentRecord>& records, const char* label) {
  const auto s = oddext::summarize(records);
  std::cerr << label << ": trials=" << records.size() << " ok=" << s.count << " errors=" << s.errors
            << " exceptional=" << s.exceptional << " max=" << s.max << " median=" << s.median << " q90=" << s.q90
            << " q99=" << s.q99 << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Odd-order exterior derivatives: identities, Hodge solver, div-curl experiments"};
  app.require_subcommand(1);

  oddext::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run the exact identity suite in both backends");
  verify->add_option("--n", verify_opts.n, "Ambient dimension")->check(CLI::Range(1, 6));
  verify->add_option("--max-q", verify_opts.max_q, "Largest degree (default: n)");
  verify->add_option("--max-m", verify_opts.max_m, "Largest m")->check(CLI::NonNegativeNumber);
  verify->add_option("--trials", verify_opts.trials, "Random instances per cell")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_opts.seed, "Seed");

  std::string solve_input, solve_output;
  auto* solve = app.add_subcommand("solve", "Solve d(d*d)^m v = f, (d*d)^m d* v = g from a system file");
  solve->add_option("input", solve_input, "SystemFile JSON")->required();
  solve->add_option("output", solve_output, "Output FormFile for v (report goes to <output>.report.json)")->required();

  ExperimentArgs ratio_args;
  auto* ratio = app.add_subcommand("ratio", "Div-curl ratio ||v||_{W^{2m,r}} / (||f||_1 + ||g||_1)");
  add_experiment_flags(ratio, ratio_args, true);
  ratio->add_flag("--avoid-exceptional", ratio_args.avoid_exceptional, "Zero g at q=1 and f at q=n-1");

  ExperimentArgs pairing_args;
  std::string variant = "LS";
  bool adjoint = false;
  auto* pairing = app.add_subcommand("pairing", "L^1-duality pairing |<f,h>| against its LS / LL bounds");
  add_experiment_flags(pairing, pairing_args, false);
  pairing->add_option("--variant", variant, "LS (grad h) or LL (d*h / dh)")->check(CLI::IsMember({"LS", "LL"}));
  pairing->add_flag("--adjoint", adjoint, "Pair coclosed g against h (2 <= q <= n)");

  ExperimentArgs extremize_args;
  int steps = 50;
  auto* extremize = app.add_subcommand("extremize", "Hill-climb for large div-curl ratios");
  add_experiment_flags(extremize, extremize_args, true);
  extremize->add_option("--steps", steps, "Number of evaluations")->check(CLI::PositiveNumber);
  extremize->add_flag("--avoid-exceptional", extremize_args.avoid_exceptional, "Zero g at q=1 and f at q=n-1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) {
      const auto report = oddext::run_verify(verify_opts);
      std::cout << report.text();
      return report.passed() ? kOk : kVerifyFailed;
    }
    if (*solve) return run_solve(solve_input, solve_output);

    oddext::ExperimentOptions options;
    if (*ratio) {
      options.density = ratio_args.density;
      options.avoid_exceptional = ratio_args.avoid_exceptional;
      const auto records = oddext::divcurl_ratio_experiment(ratio_args.n, ratio_args.q, ratio_args.m,
                                                            ratio_args.bandwidth, ratio_args.trials, ratio_args.seed,
                                                            options);
      print_summary(records, "ratio");
      return emit(records, ratio_args);
    }
    if (*pairing) {
      options.density = pairing_args.density;
      const auto records = oddext::pairing_experiment(
          pairing_args.n, pairing_args.q, pairing_args.trials, pairing_args.seed,
          variant == "LL" ? oddext::PairingVariant::LL : oddext::PairingVariant::LS,
          adjoint ? oddext::PairingSide::dstar : oddext::PairingSide::d, pairing_args.bandwidth, options);
      print_summary(records, "empirical constant");
      return emit(records, pairing_args);
    }
    if (*extremize) {
      options.density = extremize_args.density;
      options.avoid_exceptional = extremize_args.avoid_exceptional;
      const auto records = oddext::hillclimb_extremizer(extremize_args.n, extremize_args.q, extremize_args.m,
                                                        extremize_args.bandwidth, steps, extremize_args.seed, options);
      std::cerr << "best ratio: " << (records.empty() ? 0.0 : records.back().ratio) << '\n';
      return emit(records, extremize_args);
    }
  } catch (const oddext::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const oddext::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}
