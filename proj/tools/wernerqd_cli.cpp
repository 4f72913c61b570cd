// wernerqd: batch CSV front end for discord / negativity of the n-qubit Werner state.
//
// Exit status: 0 success, 1 verification failure, 2 usage error, 3 capacity error.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wernerqd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct CurveFlags {
  std::vector<int> n_list;
  double p_min = 0.0;
  double p_max = 1.0;
  int steps = 101;
  std::string mode = "analytic";
  int theta_steps = 32;
  int phi_steps = 32;
  std::string output = "-";

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n_list, "Qubit counts, comma separated")->required()->delimiter(',');
    cmd->add_option("--p-min", p_min, "Lower end of the p grid");
    cmd->add_option("--p-max", p_max, "Upper end of the p grid");
    cmd->add_option("--steps", steps, "Number of p grid points (endpoints included)");
    cmd->add_option("--mode", mode, "analytic, numeric or both");
    cmd->add_option("--theta-steps", theta_steps, "Measurement grid points in theta");
    cmd->add_option("--phi-steps", phi_steps, "Measurement grid points in phi");
    cmd->add_option("--output", output, "Output file, - for standard output");
  }

  wernerqd::SweepConfig config() const {
    const auto m = wernerqd::parse_mode(mode);
    if (!m) throw wernerqd::UsageError("unknown mode '" + mode + "'");
    wernerqd::SweepConfig c;
    c.n_list = n_list;
    c.p_min = p_min;
    c.p_max = p_max;
    c.steps = steps;
    c.mode = *m;
    c.grid = {theta_steps, phi_steps};
    c.output_path = output;
    return c;
  }
};

// Either std::cout or an owned file stream.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw wernerqd::UsageError("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum discord and logarithmic negativity of the n-qubit Werner state"};
  app.require_subcommand(1);

  CurveFlags discord_flags;
  auto* discord_cmd = app.add_subcommand("discord-curve", "CSV of discord (and N_L) against p");
  discord_flags.attach(discord_cmd);

  CurveFlags negativity_flags;
  auto* negativity_cmd = app.add_subcommand("negativity-curve", "CSV of logarithmic negativity against p");
  negativity_flags.attach(negativity_cmd);

  int verify_n = 6;
  int verify_theta = 32, verify_phi = 32;
  std::string verify_output = "-";
  double eig_tolerance = 1e-12;
  auto* verify_cmd = app.add_subcommand("verify", "Run every closed-form vs dense check up to --n qubits");
  verify_cmd->add_option("--n", verify_n, "Largest qubit count to check");
  verify_cmd->add_option("--theta-steps", verify_theta, "Measurement grid points in theta");
  verify_cmd->add_option("--phi-steps", verify_phi, "Measurement grid points in phi");
  verify_cmd->add_option("--output", verify_output, "Report file, - for standard output");
  // Test hook: loosening the eigensolver stop criterion must make verify fail.
  verify_cmd->add_option("--eig-tolerance", eig_tolerance)->group("");

  std::vector<int> bench_n;
  int bench_reps = 3;
  std::string bench_output = "-";
  auto* bench_cmd = app.add_subcommand("bench", "Wall time of closed-form vs dense evaluation");
  bench_cmd->add_option("--n", bench_n, "Qubit counts, comma separated")->required()->delimiter(',');
  bench_cmd->add_option("--reps", bench_reps, "Repetitions per timing");
  bench_cmd->add_option("--output", bench_output, "Output file, - for standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (discord_cmd->parsed()) {
      const auto config = discord_flags.config();
      const auto rows = wernerqd::discord_curve(config);
      Sink sink(config.output_path);
      wernerqd::write_curve_csv(sink.stream(), rows);
      for (const auto& r : rows)
        if (!r.gap_ok()) {
          std::cerr << "discord gap " << wernerqd::format_real(*r.abs_gap) << " at n=" << r.n
                    << " p=" << wernerqd::format_real(r.p) << " exceeds 1e-6\n";
          return kExitVerification;
        }
    } else if (negativity_cmd->parsed()) {
      const auto config = negativity_flags.config();
      const auto rows = wernerqd::negativity_curve(config);
      Sink sink(config.output_path);
      wernerqd::write_curve_csv(sink.stream(), rows);
    } else if (verify_cmd->parsed()) {
      wernerqd::VerifyOptions opts;
      opts.n_max = verify_n;
      opts.grid = {verify_theta, verify_phi};
      opts.eig.tolerance = eig_tolerance;
      if (verify_n < 2) throw wernerqd::UsageError("--n must be at least 2");
      if (verify_theta < 1 || verify_phi < 1) throw wernerqd::UsageError("measurement grid must be non-empty");
      const auto results = wernerqd::run_verify(opts);
      Sink sink(verify_output);
      wernerqd::write_verify_report(sink.stream(), results);
      if (!wernerqd::all_passed(results)) {
        for (const auto& r : results)
          if (!r.passed)
            std::cerr << "FAILED check=" << r.check << " n=" << r.n
                      << (r.at_p ? " p=" + wernerqd::format_real(*r.at_p) : std::string{})
                      << " worst=" << wernerqd::format_real(r.worst) << '\n';
        return kExitVerification;
      }
    } else if (bench_cmd->parsed()) {
      const auto rows = wernerqd::run_bench(bench_n, bench_reps);
      Sink sink(bench_output);
      wernerqd::write_bench_csv(sink.stream(), rows);
    }
  } catch (const wernerqd::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const wernerqd::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const wernerqd::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitOk;
}
