// rindler: resonance interaction between two uniformly accelerated atoms.
//
//   rindler point  [--channel scalar|em] [--a A] [--z Z] [--omega0 W0] [--state sym|antisym]
//                  [--lambda L] [--dipole-a x,y,z] [--dipole-b x,y,z] [--method closed|oracle]
//                  [--config file.json] [--tol-profile default|strict|fast]
//   rindler sweep  --vary z|a|omega0 --start S --stop T --num-points N [--spacing linear|log]
//                  [--methods closed,oracle] --out file.csv  (plus the point flags)
//   rindler verify [--a-values 0,...] [--tolerance T] [--report file.json] [--threads N]
//
// Natural units (hbar = c = k_B = 1): acceleration has the dimension of temperature.
// Exit status: 0 success, 1 verification failure, 2 input error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rindler/cli/config.hpp"
#include "rindler/cli/sweep.hpp"
#include "rindler/cli/verify.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kNumericalError = 3 };

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw rindler::DomainError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  return out;
}

rindler::Vec3 parse_vec3(const std::string& text, const char* flag) {
  const auto v = parse_list(text, flag);
  if (v.size() != 3) throw rindler::DomainError(std::string(flag) + " expects x,y,z");
  return {v[0], v[1], v[2]};
}

// Command-line values, applied over the config file so that flags win.
struct PointFlags {
  std::optional<std::string> channel, state, method, dipole_a, dipole_b, tol_profile, config;
  std::optional<double> a, z, omega0, lambda;

  void add_to(CLI::App* app) {
    app->add_option("--channel", channel, "scalar | em");
    app->add_option("--a", a, "proper acceleration (>= 0)");
    app->add_option("--z", z, "separation along z (> 0)");
    app->add_option("--omega0", omega0, "atomic transition frequency (> 0)");
    app->add_option("--state", state, "sym | antisym");
    app->add_option("--lambda", lambda, "scalar coupling");
    app->add_option("--dipole-a", dipole_a, "dipole of atom A as x,y,z");
    app->add_option("--dipole-b", dipole_b, "dipole of atom B as x,y,z");
    app->add_option("--method", method, "closed | oracle");
    app->add_option("--config", config, "JSON configuration file");
    app->add_option("--tol-profile", tol_profile, "default | strict | fast");
  }

  nlohmann::json overrides() const {
    nlohmann::json j = nlohmann::json::object();
    if (channel) j["channel"] = *channel;
    if (state) j["state"] = *state;
    if (method) j["method"] = *method;
    if (tol_profile) j["tol_profile"] = *tol_profile;
    if (a) j["a"] = *a;
    if (z) j["z"] = *z;
    if (omega0) j["omega0"] = *omega0;
    if (lambda) j["lambda"] = *lambda;
    if (dipole_a) {
      const auto v = parse_vec3(*dipole_a, "--dipole-a");
      j["dipole_a"] = {v[0], v[1], v[2]};
    }
    if (dipole_b) {
      const auto v = parse_vec3(*dipole_b, "--dipole-b");
      j["dipole_b"] = {v[0], v[1], v[2]};
    }
    return j;
  }
};

void print_result(const rindler::cli::PointOptions& p, const rindler::EnergyShiftResult& r) {
  using rindler::cli::format_number;
  const auto& c = p.cfg;
  std::cout << "channel        " << rindler::to_string(r.channel) << '\n'
            << "method         " << rindler::to_string(r.method) << '\n'
            << "state          " << rindler::to_string(c.symmetry) << '\n'
            << "a              " << format_number(c.a) << '\n'
            << "z              " << format_number(c.z) << '\n'
            << "omega0         " << format_number(c.omega0) << '\n';
  if (r.channel == rindler::Channel::scalar) {
    std::cout << "lambda         " << format_number(c.coupling_lambda) << '\n';
  } else {
    std::cout << "dipole_a       " << format_number(c.dipole_A[0]) << ',' << format_number(c.dipole_A[1]) << ','
              << format_number(c.dipole_A[2]) << '\n'
              << "dipole_b       " << format_number(c.dipole_B[0]) << ',' << format_number(c.dipole_B[1]) << ','
              << format_number(c.dipole_B[2]) << '\n';
  }
  std::cout << "delta_e        " << format_number(r.value) << '\n'
            << "error_estimate " << format_number(r.error_estimate) << '\n';
  for (const auto& s : r.regulator_report)
    std::cout << "  eps=" << format_number(s.epsilon) << " value=" << format_number(s.value) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance interaction between two uniformly accelerated atoms (natural units)"};
  app.require_subcommand(1);

  PointFlags point_flags;
  auto* point = app.add_subcommand("point", "evaluate the energy shift at one configuration");
  point_flags.add_to(point);

  PointFlags sweep_flags;
  std::optional<std::string> vary, spacing, methods, out;
  std::optional<double> start, stop;
  std::optional<int> num_points;
  unsigned sweep_threads = rindler::default_thread_count();
  auto* sweep = app.add_subcommand("sweep", "tabulate the energy shift over one parameter as CSV");
  sweep_flags.add_to(sweep);
  sweep->add_option("--vary", vary, "z | a | omega0");
  sweep->add_option("--start", start, "first grid value");
  sweep->add_option("--stop", stop, "last grid value");
  sweep->add_option("--num-points", num_points, "number of grid points (>= 2)");
  sweep->add_option("--spacing", spacing, "linear | log");
  sweep->add_option("--methods", methods, "comma list of closed, oracle");
  sweep->add_option("--out", out, "output CSV path");
  sweep->add_option("--threads", sweep_threads, "worker threads");

  std::optional<std::string> a_values, report_path;
  std::optional<double> tolerance;
  unsigned verify_threads = rindler::default_thread_count();
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--a-values", a_values, "restrict every acceleration grid to this comma list");
  verify->add_option("--tolerance", tolerance, "override every check tolerance");
  verify->add_option("--report", report_path, "write the machine-readable report (JSON) here");
  verify->add_option("--threads", verify_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  using namespace rindler;
  try {
    if (*point) {
      cli::PointOptions opts;
      if (point_flags.config) cli::apply_config(cli::read_config_file(*point_flags.config), &opts, nullptr);
      cli::apply_config(point_flags.overrides(), &opts, nullptr);
      opts.cfg.validate();
      const auto spec = cli::tolerance_profile(opts.tol_profile);
      const auto r = delta_e(opts.cfg, opts.channel, opts.method, spec);
      print_result(opts, r);
      return kOk;
    }
    if (*sweep) {
      cli::PointOptions tol;
      cli::SweepConfig cfg;
      if (sweep_flags.config) {
        const auto j = cli::read_config_file(*sweep_flags.config);
        cli::apply_config(j, &tol, &cfg);
      }
      cli::apply_config(sweep_flags.overrides(), &tol, &cfg);
      nlohmann::json extra = nlohmann::json::object();
      if (vary) extra["vary"] = *vary;
      if (start) extra["start"] = *start;
      if (stop) extra["stop"] = *stop;
      if (num_points) extra["num_points"] = *num_points;
      if (spacing) extra["spacing"] = *spacing;
      if (out) extra["out"] = *out;
      if (methods) {
        extra["methods"] = nlohmann::json::array();
        std::stringstream ss(*methods);
        for (std::string m; std::getline(ss, m, ',');) extra["methods"].push_back(m);
      }
      cli::apply_config(extra, nullptr, &cfg);
      if (sweep_flags.method && !methods) cfg.methods = {parse_method(*sweep_flags.method)};
      const auto rows = cli::run_sweep(cfg, cli::tolerance_profile(tol.tol_profile), sweep_threads);
      std::cerr << "wrote " << rows.size() << " rows to " << cfg.output_path << '\n';
      return kOk;
    }
    if (*verify) {
      cli::VerifyOptions opts;
      opts.threads = verify_threads;
      opts.tolerance_override = tolerance;
      if (a_values) opts.grid.restrict_acceleration(parse_list(*a_values, "--a-values"));
      const auto report = cli::run_verify(opts);
      report.print_table(std::cout);
      if (report_path) {
        std::ofstream f(*report_path, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + *report_path + "' for writing");
        f << report.to_json().dump(2) << '\n';
      }
      return report.passed() ? kOk : kVerifyFailed;
    }
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kInputError;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << " (partial value " << e.partial_value() << ", error estimate "
              << e.error_estimate() << ")\n";
    return kNumericalError;
  } catch (const OracleError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
  return kInputError;
}
