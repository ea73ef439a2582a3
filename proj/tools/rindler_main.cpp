// rindler: entanglement from accelerated measurements on the Dirac vacuum.
//
// Subcommands:
//   entropy-curve    entanglement entropy over an r / ratio / acceleration grid
//   state            post-measurement pair state with derived scalars
//   verify           run the invariant suites, emit a JSON report
//   expansion-error  exact vs small-ratio asymptotic entropy
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
// 3 I/O error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rindler/dump.hpp"
#include "rindler/entanglement.hpp"
#include "rindler/measurement.hpp"
#include "rindler/sweep.hpp"
#include "rindler/unruh.hpp"
#include "rindler/verify.hpp"

namespace {

constexpr const char* kToolName = "rindler-fermions";
constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct OutputOptions {
  std::string path = "-";
  std::string format = "csv";
  bool no_meta = false;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

int write_payload(const std::string& path, const std::string& payload) {
  if (path == "-") {
    std::cout << payload;
    return std::cout.good() ? kExitOk : kExitIo;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output path: " << path << "\n";
    return kExitIo;
  }
  file << payload;
  file.flush();
  if (!file.good()) {
    std::cerr << "error: write failed: " << path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

std::string render_csv(const rindler::SweepResult& table, const OutputOptions& out,
                       const std::string& command) {
  std::ostringstream os;
  if (!out.no_meta) {
    os << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
    os << "# command: " << command << '\n';
    os << "# generated: " << utc_timestamp() << '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << rindler::format_csv_number(row[c]);
    }
    os << '\n';
  }
  return os.str();
}

std::string render_json(const rindler::SweepResult& table, const OutputOptions& out,
                        const std::string& command) {
  nlohmann::json doc;
  if (!out.no_meta) {
    doc["meta"] = {{"tool", kToolName},
                   {"version", kToolVersion},
                   {"command", command},
                   {"generated", utc_timestamp()}};
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json entry;
    for (std::size_t c = 0; c < row.size(); ++c) entry[table.columns[c]] = row[c];
    rows.push_back(std::move(entry));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

int emit_table(const rindler::SweepResult& table, const OutputOptions& out,
               const std::string& command) {
  const std::string payload = out.format == "json" ? render_json(table, out, command)
                                                   : render_csv(table, out, command);
  return write_payload(out.path, payload);
}

struct CurveArgs {
  rindler::SweepConfig config;
  OutputOptions out;
  std::pair<double, double> r_range;
  std::pair<double, double> ratio_range;
  std::pair<double, double> a_range;
  bool has_r = false, has_ratio = false, has_physical = false;
};

int run_entropy_curve(CurveArgs& args, const std::string& command) {
  const int groups = int(args.has_r) + int(args.has_ratio) + int(args.has_physical);
  if (groups != 1) {
    std::cerr << "error: supply exactly one grid group "
                 "(--r-min/--r-max | --ratio-min/--ratio-max | --a-min/--a-max)\n";
    return kExitUsage;
  }
  if (args.has_r) {
    args.config.parameterization = rindler::Parameterization::by_r;
    std::tie(args.config.min, args.config.max) = args.r_range;
  } else if (args.has_ratio) {
    args.config.parameterization = rindler::Parameterization::by_ratio;
    std::tie(args.config.min, args.config.max) = args.ratio_range;
  } else {
    args.config.parameterization = rindler::Parameterization::by_physical;
    std::tie(args.config.min, args.config.max) = args.a_range;
  }
  return emit_table(rindler::entropy_curve(args.config), args.out, command);
}

struct StateArgs {
  double r = -1.0;
  double ratio = -1.0;
  bool has_r = false, has_ratio = false;
  int momentum = 1;
  std::string species = "particle";
  OutputOptions out{.format = "json"};
};

int run_state(StateArgs& args, const std::string& command) {
  if (args.has_r == args.has_ratio) {
    std::cerr << "error: supply exactly one of --r or --ratio\n";
    return kExitUsage;
  }
  if (args.has_ratio && !(args.ratio > 0.0)) {
    throw std::domain_error("ratio must be > 0");
  }
  const double r = args.has_r ? args.r : rindler::squeezing_parameter(args.ratio, 1.0);
  const rindler::Species species = rindler::species_from_string(args.species);
  const rindler::StateVector state =
      species == rindler::Species::particle
          ? rindler::post_state_particle(r, args.momentum)
          : rindler::post_state_antiparticle(r, args.momentum);
  const double entropy = rindler::closed_form_entropy(r);
  const double fidelity = rindler::bell_fidelity(state);

  if (args.out.format == "text") {
    std::ostringstream os;
    os << "register:";
    for (const auto& label : state.mode_register().modes()) {
      os << ' ' << rindler::to_string(label);
    }
    os << '\n';
    for (const auto& [bs, amp] : state.amplitudes()) {
      os << "  |" << bs.bits() << ">  " << rindler::format_csv_number(amp.real())
         << (amp.imag() < 0 ? " - " : " + ")
         << rindler::format_csv_number(std::abs(amp.imag())) << "i\n";
    }
    os << "r:             " << rindler::format_csv_number(r) << '\n';
    os << "entropy:       " << rindler::format_csv_number(entropy) << '\n';
    os << "bell_fidelity: " << rindler::format_csv_number(fidelity) << '\n';
    return write_payload(args.out.path, os.str());
  }

  nlohmann::json doc = rindler::state_dump(state);
  doc["scalars"] = {{"r", r}, {"entropy", entropy}, {"bell_fidelity", fidelity}};
  if (!args.out.no_meta) {
    doc["meta"] = {{"tool", kToolName},
                   {"version", kToolVersion},
                   {"command", command}};
  }
  return write_payload(args.out.path, doc.dump(2) + "\n");
}

struct VerifyArgs {
  std::string level = "quick";
  std::string output = "-";
};

int run_verify(VerifyArgs& args) {
  const rindler::VerifyLevel level =
      args.level == "full" ? rindler::VerifyLevel::full : rindler::VerifyLevel::quick;
  const auto checks = rindler::run_verification(level);
  const nlohmann::json report = rindler::verification_report(checks, level);
  const int io = write_payload(args.output, report.dump(2) + "\n");
  if (io != kExitOk) return io;
  bool all_pass = true;
  for (const auto& check : checks) {
    if (!check.pass) {
      all_pass = false;
      std::cerr << "FAILED: " << check.name << " (max deviation "
                << check.deviation << ", tolerance " << check.tolerance << ")\n";
    }
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

struct ExpansionArgs {
  std::vector<double> ratios;
  OutputOptions out;
};

int run_expansion_error(ExpansionArgs& args, const std::string& command) {
  return emit_table(rindler::expansion_error_table(args.ratios), args.out, command);
}

void add_output_options(CLI::App* cmd, OutputOptions& out, bool with_format_choice) {
  cmd->add_option("--output,-o", out.path, "Output path ('-' for stdout)");
  if (with_format_choice) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--no-meta", out.no_meta,
                  "Omit metadata header for byte-exact output");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) +
               ": entangled fermion pairs from accelerated vacuum measurements"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);
  const std::string command = join_args(argc, argv);

  CurveArgs curve;
  auto* curve_cmd = app.add_subcommand(
      "entropy-curve", "Entanglement entropy over a parameter grid");
  auto* r_min = curve_cmd->add_option("--r-min", curve.r_range.first, "Grid start in r");
  auto* r_max = curve_cmd->add_option("--r-max", curve.r_range.second, "Grid end in r");
  auto* ratio_min =
      curve_cmd->add_option("--ratio-min", curve.ratio_range.first, "Grid start in w/a");
  auto* ratio_max =
      curve_cmd->add_option("--ratio-max", curve.ratio_range.second, "Grid end in w/a");
  auto* a_min = curve_cmd->add_option("--a-min", curve.a_range.first,
                                      "Grid start in acceleration");
  auto* a_max =
      curve_cmd->add_option("--a-max", curve.a_range.second, "Grid end in acceleration");
  r_min->needs(r_max);
  r_max->needs(r_min);
  ratio_min->needs(ratio_max);
  ratio_max->needs(ratio_min);
  a_min->needs(a_max);
  a_max->needs(a_min);
  curve_cmd->add_option("--k", curve.config.k, "Longitudinal momentum (physical grid)");
  curve_cmd->add_option("--k-perp", curve.config.k_perp,
                        "Transverse momentum magnitude (physical grid)");
  curve_cmd->add_option("--m", curve.config.m, "Mass (physical grid)");
  curve_cmd->add_option("--steps", curve.config.steps, "Number of grid points (>= 2)")
      ->required();
  curve_cmd
      ->add_option("--spacing",
                   [&curve](const CLI::results_t& res) {
                     if (res[0] == "linear") {
                       curve.config.spacing = rindler::Spacing::linear;
                     } else if (res[0] == "log") {
                       curve.config.spacing = rindler::Spacing::log;
                     } else {
                       return false;
                     }
                     return true;
                   },
                   "Grid spacing: linear|log")
      ->expected(1);
  add_output_options(curve_cmd, curve.out, true);

  StateArgs state;
  auto* state_cmd =
      app.add_subcommand("state", "Post-measurement state with derived scalars");
  auto* opt_r = state_cmd->add_option("--r", state.r, "Squeezing parameter in (0, pi/4]");
  auto* opt_ratio = state_cmd->add_option("--ratio", state.ratio, "Frequency ratio w/a");
  state_cmd->add_option("--species", state.species, "particle|antiparticle")
      ->required()
      ->check(CLI::IsMember({"particle", "antiparticle"}));
  state_cmd->add_option("--momentum", state.momentum, "Momentum tag of the detection");
  state_cmd->add_option("--format", state.out.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  state_cmd->add_flag("--no-meta", state.out.no_meta, "Omit metadata");
  state_cmd->add_option("--output,-o", state.out.path, "Output path ('-' for stdout)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant check suites");
  verify_cmd->add_option("--level", verify.level, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--output,-o", verify.output, "Report path ('-' for stdout)");

  ExpansionArgs expansion;
  auto* expansion_cmd = app.add_subcommand(
      "expansion-error", "Exact vs asymptotic entropy at small w/a");
  expansion_cmd
      ->add_option("--ratios", expansion.ratios, "Comma-separated w/a ratios")
      ->required()
      ->delimiter(',');
  add_output_options(expansion_cmd, expansion.out, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    state.has_r = opt_r->count() > 0;
    state.has_ratio = opt_ratio->count() > 0;
    curve.has_r = r_min->count() > 0;
    curve.has_ratio = ratio_min->count() > 0;
    curve.has_physical = a_min->count() > 0;
    if (curve_cmd->parsed()) return run_entropy_curve(curve, command);
    if (state_cmd->parsed()) return run_state(state, command);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (expansion_cmd->parsed()) return run_expansion_error(expansion, command);
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
