#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("rindler_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliRun run_cli(const std::string& args, const std::string& binary = RINDLER_CLI_PATH,
               const std::string& env = "") {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = env + std::string("'") + binary + "' " + args + " > '" +
                          out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.out = slurp(out);
  run.err = slurp(err);
  return run;
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream is(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      // std::stod rejects subnormals; strtod returns them.
      row.push_back(std::strtod(cell.c_str(), nullptr));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("entropy-curve: r grid ends at the Bell point") {
  const fs::path out = scratch_dir() / "curve_r.csv";
  const auto run = run_cli(
      "entropy-curve --r-min 0.01 --r-max 0.7853981633974483 --steps 100 "
      "--format csv --no-meta --output '" +
      out.string() + "'");
  REQUIRE(run.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("r,entropy\n", 0) == 0);
  const auto rows = parse_csv_rows(text);
  REQUIRE(rows.size() == 100);
  CHECK(std::abs(rows.back()[0] - 0.7853981633974483) <= 1e-9);
  CHECK(std::abs(rows.back()[1] - 1.0) <= 1e-12);  // Bell endpoint
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i][1] < rows[i + 1][1]);
  }
}

TEST_CASE("entropy-curve: log-spaced ratio grid is monotone decreasing") {
  const fs::path out = scratch_dir() / "curve_ratio.csv";
  const auto run = run_cli(
      "entropy-curve --ratio-min 0.01 --ratio-max 10 --spacing log --steps 50 "
      "--no-meta --output '" +
      out.string() + "'");
  REQUIRE(run.exit_code == 0);
  const auto rows = parse_csv_rows(slurp(out));
  REQUIRE(rows.size() == 50);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i][2] > rows[i + 1][2]);  // columns: ratio, r, entropy
  }
}

TEST_CASE("entropy-curve: physical acceleration grid") {
  const fs::path out = scratch_dir() / "curve_a.csv";
  const auto run = run_cli(
      "entropy-curve --a-min 0.5 --a-max 10 --k 1 --k-perp 0 --m 1 --steps 20 "
      "--no-meta --output '" +
      out.string() + "'");
  REQUIRE(run.exit_code == 0);
  const auto rows = parse_csv_rows(slurp(out));
  REQUIRE(rows.size() == 20);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i][3] < rows[i + 1][3]);  // larger acceleration, more entanglement
  }
}

TEST_CASE("entropy-curve: extreme ratios underflow to zero entropy, not a crash") {
  const fs::path out = scratch_dir() / "curve_extreme.csv";
  const auto run = run_cli(
      "entropy-curve --ratio-min 100 --ratio-max 400 --steps 8 --no-meta "
      "--output '" +
      out.string() + "'");
  REQUIRE(run.exit_code == 0);
  const auto rows = parse_csv_rows(slurp(out));
  REQUIRE(rows.size() == 8);
  CHECK(rows.back()[2] == 0.0);
}

TEST_CASE("entropy-curve: degenerate dispersion on a physical grid exits 2") {
  CHECK(run_cli("entropy-curve --a-min 0.5 --a-max 2 --k 0 --k-perp 0 --m 0 "
                "--steps 5")
            .exit_code == 2);
}

TEST_CASE("entropy-curve: config validation exits 2") {
  CHECK(run_cli("entropy-curve --r-min 0.01 --r-max 0.5 --steps 1").exit_code == 2);
  CHECK(run_cli("entropy-curve --r-min 0.5 --r-max 0.1 --steps 10").exit_code == 2);
  CHECK(run_cli("entropy-curve --r-min 0 --r-max 0.5 --steps 10").exit_code == 2);
  CHECK(run_cli("entropy-curve --r-min 0.1 --r-max 0.9 --steps 10").exit_code == 2);
  CHECK(run_cli("entropy-curve --steps 10").exit_code == 2);
  CHECK(run_cli("entropy-curve --r-min 0.01 --r-max 0.5 --ratio-min 1 "
                "--ratio-max 2 --steps 10")
            .exit_code == 2);
  // --r-min without --r-max is a parse error
  CHECK(run_cli("entropy-curve --r-min 0.01 --steps 10").exit_code == 2);
}

TEST_CASE("entropy-curve: unwritable path exits 3") {
  const auto run = run_cli(
      "entropy-curve --r-min 0.01 --r-max 0.5 --steps 10 "
      "--output /nonexistent_dir_rindler/out.csv");
  CHECK(run.exit_code == 3);
}

TEST_CASE("entropy-curve: byte-identical reruns with --no-meta") {
  const fs::path out1 = scratch_dir() / "det1.csv";
  const fs::path out2 = scratch_dir() / "det2.csv";
  const std::string args =
      "entropy-curve --r-min 0.01 --r-max 0.7853981633974483 --steps 64 "
      "--format csv --no-meta --output '";
  REQUIRE(run_cli(args + out1.string() + "'").exit_code == 0);
  REQUIRE(run_cli(args + out2.string() + "'").exit_code == 0);
  const std::string a = slurp(out1);
  CHECK(!a.empty());
  CHECK(a == slurp(out2));

  SUBCASE("parallel run produces the same bytes") {
    const fs::path out3 = scratch_dir() / "det3.csv";
    REQUIRE(run_cli(args + out3.string() + "'", RINDLER_CLI_PATH,
                    "RINDLER_FERMIONS_THREADS=4 ")
                .exit_code == 0);
    CHECK(a == slurp(out3));
  }
  SUBCASE("meta header carries comments, data rows unchanged") {
    const fs::path out4 = scratch_dir() / "det4.csv";
    REQUIRE(run_cli("entropy-curve --r-min 0.01 --r-max 0.7853981633974483 "
                    "--steps 64 --format csv --output '" +
                    out4.string() + "'")
                .exit_code == 0);
    const std::string with_meta = slurp(out4);
    CHECK(with_meta.rfind("# tool: rindler-fermions", 0) == 0);
    const std::string stripped = with_meta.substr(with_meta.find("r,entropy"));
    CHECK(stripped == a);
  }
}

TEST_CASE("entropy-curve: json format") {
  const fs::path out = scratch_dir() / "curve.json";
  REQUIRE(run_cli("entropy-curve --r-min 0.1 --r-max 0.7853981633974483 "
                  "--steps 10 --format json --no-meta --output '" +
                  out.string() + "'")
              .exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(slurp(out));
  CHECK_FALSE(doc.contains("meta"));
  REQUIRE(doc.at("rows").size() == 10);
  CHECK(doc.at("rows").back().at("entropy").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));

  const fs::path out_meta = scratch_dir() / "curve_meta.json";
  REQUIRE(run_cli("entropy-curve --r-min 0.1 --r-max 0.5 --steps 5 "
                  "--format json --output '" +
                  out_meta.string() + "'")
              .exit_code == 0);
  const nlohmann::json doc_meta = nlohmann::json::parse(slurp(out_meta));
  CHECK(doc_meta.at("meta").at("tool") == "rindler-fermions");
}

TEST_CASE("entropy-curve: malformed thread cap exits 2") {
  CHECK(run_cli("entropy-curve --r-min 0.01 --r-max 0.5 --steps 10",
                RINDLER_CLI_PATH, "RINDLER_FERMIONS_THREADS=zero ")
            .exit_code == 2);
}

TEST_CASE("state: Bell limit") {
  const auto run =
      run_cli("state --r 0.7853981633974483 --species particle --no-meta");
  REQUIRE(run.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(run.out);
  REQUIRE(doc.at("amplitudes").size() == 2);
  CHECK(doc.at("amplitudes")[0].at("bits") == "00");
  CHECK(doc.at("amplitudes")[0].at("re").get<double>() ==
        doctest::Approx(0.7071068).epsilon(1e-6));
  CHECK(doc.at("amplitudes")[1].at("re").get<double>() ==
        doctest::Approx(0.7071068).epsilon(1e-6));
  CHECK(doc.at("scalars").at("entropy").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(doc.at("scalars").at("bell_fidelity").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("state: ratio parameterization emits sin/cos of r(1)") {
  const auto run = run_cli("state --ratio 1 --species particle --no-meta");
  REQUIRE(run.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(run.out);
  CHECK(doc.at("amplitudes")[0].at("re").get<double>() ==
        doctest::Approx(0.0431736249303325).epsilon(1e-10));
  CHECK(doc.at("amplitudes")[1].at("re").get<double>() ==
        doctest::Approx(0.9990675843557206).epsilon(1e-10));
  CHECK(doc.at("scalars").at("r").get<double>() ==
        doctest::Approx(0.04318704852478213).epsilon(1e-10));
}

TEST_CASE("state: antiparticle branch carries the minus sign") {
  const auto run = run_cli("state --r 0.3 --species antiparticle --no-meta");
  REQUIRE(run.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(run.out);
  CHECK(doc.at("register")[0] == "antiparticle:1:Minkowski");
  CHECK(doc.at("amplitudes")[1].at("re").get<double>() ==
        doctest::Approx(-0.9553364891256060).epsilon(1e-12));
}

TEST_CASE("state: domain and usage errors exit 2") {
  CHECK(run_cli("state --r 0 --species particle").exit_code == 2);
  CHECK(run_cli("state --r 1.0 --species particle").exit_code == 2);
  CHECK(run_cli("state --ratio -1 --species particle").exit_code == 2);
  CHECK(run_cli("state --species particle").exit_code == 2);
  CHECK(run_cli("state --r 0.3 --ratio 1 --species particle").exit_code == 2);
  CHECK(run_cli("state --r 0.3 --species boson").exit_code == 2);
}

TEST_CASE("state: text format") {
  const auto run = run_cli("state --r 0.3 --species particle --format text");
  REQUIRE(run.exit_code == 0);
  CHECK(run.out.find("bell_fidelity") != std::string::npos);
  CHECK(run.out.find("|11>") != std::string::npos);
}

TEST_CASE("verify: quick suite passes on a correct build") {
  const auto run = run_cli("verify --level quick");
  REQUIRE(run.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(run.out);
  CHECK(doc.at("pass") == true);
  CHECK(doc.at("level") == "quick");
  for (const auto& check : doc.at("checks")) {
    CHECK(check.at("pass") == true);
  }
}

TEST_CASE("verify: full suite includes the 4-mode checks") {
  const auto quick = run_cli("verify --level quick");
  const auto full = run_cli("verify --level full");
  REQUIRE(full.exit_code == 0);
  const nlohmann::json qdoc = nlohmann::json::parse(quick.out);
  const nlohmann::json fdoc = nlohmann::json::parse(full.out);
  CHECK(fdoc.at("checks").size() > qdoc.at("checks").size());
  bool has_commutation = false;
  bool has_multi_mode = false;
  for (const auto& check : fdoc.at("checks")) {
    const std::string name = check.at("name");
    has_commutation |= name == "measurement.commutation_4mode";
    has_multi_mode |= name == "measurement.multi_mode_order_independence";
  }
  CHECK(has_commutation);
  CHECK(has_multi_mode);
}

TEST_CASE("verify: injected parity fault fails the CAR check with exit 1") {
  const auto clean = run_cli("verify --level quick", RINDLER_FAULTY_CLI_PATH);
  CHECK(clean.exit_code == 0);  // hook dormant without the env var

  const auto run = run_cli("verify --level quick", RINDLER_FAULTY_CLI_PATH,
                           "RINDLER_FERMIONS_FAULT=parity-flip ");
  REQUIRE(run.exit_code == 1);
  const nlohmann::json doc = nlohmann::json::parse(run.out);
  CHECK(doc.at("pass") == false);
  bool car_failed = false;
  for (const auto& check : doc.at("checks")) {
    if (check.at("name") == "fock.car_anticommutators") {
      car_failed = check.at("pass") == false;
    }
  }
  CHECK(car_failed);
  CHECK(run.err.find("fock.car_anticommutators") != std::string::npos);
}

TEST_CASE("expansion-error: fourth-order convergence visible from the CLI") {
  const auto run =
      run_cli("expansion-error --ratios 0.01,0.02,0.1 --format csv --no-meta");
  REQUIRE(run.exit_code == 0);
  const auto rows = parse_csv_rows(run.out);
  REQUIRE(rows.size() == 3);
  const double q = rows[1][3] / rows[0][3];
  CHECK(q >= 14.0);
  CHECK(q <= 18.0);
  CHECK(rows[2][3] == doctest::Approx(3.3653889227e-3).epsilon(1e-6));
  CHECK(std::abs(rows[0][1] - rows[0][2]) == doctest::Approx(rows[0][3]).epsilon(1e-6));
}

TEST_CASE("expansion-error: nonpositive ratios exit 2") {
  CHECK(run_cli("expansion-error --ratios 0").exit_code == 2);
  CHECK(run_cli("expansion-error --ratios 0.1,-0.5").exit_code == 2);
}
