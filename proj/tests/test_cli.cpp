// Integration tests driving the installed CLI binary end to end.
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SPLITRISK_CLI_PATH
#define SPLITRISK_CLI_PATH "./splitrisk"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string cmd =
      std::string(SPLITRISK_CLI_PATH) + " " + args + " > " + out_path + " 2> cli_stderr.tmp";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("risk subcommand prints the closed form") {
  const auto r = run_cli("risk --kind B --n 10 --p 0.5 --measure mae");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("0.04541015625") != std::string::npos);
}

TEST_CASE("risk flags the not-analytic cells") {
  const auto r = run_cli("risk --kind RB --n 10 --p 0.3 --measure mae");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("not_analytic") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("risk --p 0 --kind B --n 10 --measure mae").exit_code == 2);
  CHECK(run_cli("risk --kind NOPE --n 10 --p 0.5").exit_code == 2);
  CHECK(run_cli("figure wrong-id").exit_code == 2);
  CHECK(run_cli("nonsense-subcommand").exit_code == 2);
}

TEST_CASE("data errors exit with 3") {
  CHECK(run_cli("casestudy --data missing.csv --value a --label b --positive Yes")
            .exit_code == 3);
}

TEST_CASE("simulate: byte-identical CSV across reruns and worker counts") {
  write("cli_sim.cfg",
        "distribution = uniform\n"
        "estimators = B, RB\n"
        "n = 10\n"
        "p = 0.25, 0.5\n"
        "replicates = 3000\n"
        "seed = 2024\n");
  CHECK(run_cli("simulate --config cli_sim.cfg --out cli_a.csv --workers 1").exit_code == 0);
  CHECK(run_cli("simulate --config cli_sim.cfg --out cli_b.csv --workers 8").exit_code == 0);
  const std::string a = slurp("cli_a.csv");
  CHECK(!a.empty());
  CHECK(a == slurp("cli_b.csv"));
  CHECK(a.find("distribution,transform,kind,n,p,mae,mse,bias,se,reps\n") == 0);
  CHECK(slurp("cli_a.csv.manifest.json").find("\"subcommand\": \"simulate\"") !=
        std::string::npos);
}

TEST_CASE("simulate --plot adds an SVG without changing the CSV") {
  write("cli_plot.cfg",
        "distribution = uniform\n"
        "estimators = B\n"
        "n = 10\n"
        "p = 0.25, 0.5, 0.75\n"
        "replicates = 500\n"
        "seed = 5\n");
  CHECK(run_cli("simulate --config cli_plot.cfg --out cli_p1.csv").exit_code == 0);
  CHECK(run_cli("simulate --config cli_plot.cfg --out cli_p2.csv --plot").exit_code == 0);
  CHECK(slurp("cli_p1.csv") == slurp("cli_p2.csv"));
  const std::string svg = slurp("cli_p2.csv.1.svg");
  CHECK(svg.find("<svg") == 0);
}

TEST_CASE("config errors exit with 2") {
  write("cli_bad.cfg", "no_such_key = 1\n");
  CHECK(run_cli("simulate --config cli_bad.cfg --out cli_x.csv").exit_code == 2);
  write("cli_bad2.cfg", "estimators = RB\ntransform = none\n");
  CHECK(run_cli("simulate --config cli_bad2.cfg --out cli_x.csv").exit_code == 2);
}

TEST_CASE("figure bundle reruns are byte-identical across worker counts") {
  CHECK(run_cli("figure rmse --out-dir .").exit_code == 0);
  const std::string rmse = slurp("figure_rmse.csv");
  CHECK(rmse.find("kind,n,p,rmse\n") == 0);
  // analytic table: 7 kinds x 4 n x 99 p rows plus header
  long lines = 0;
  for (char c : rmse) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 1 + 7 * 4 * 99);

  CHECK(run_cli("figure bitriangle --profile desk --seed 11 --workers 1 --out-dir .")
            .exit_code == 0);
  const std::string one = slurp("figure_bitriangle.csv");
  CHECK(run_cli("figure bitriangle --profile desk --seed 11 --workers 8 --out-dir .")
            .exit_code == 0);
  CHECK(one == slurp("figure_bitriangle.csv"));
  CHECK(!one.empty());
}

TEST_CASE("splitsets and circle subcommands emit their tables") {
  CHECK(run_cli("splitsets --orders 0 --n 10 --reps 300 --seed 3 --out cli_ss.csv")
            .exit_code == 0);
  const std::string ss = slurp("cli_ss.csv");
  CHECK(ss.find("order,n,scale,mae,se,ratio,se_ratio,reps\n") == 0);

  CHECK(run_cli("circle --n 10 --reps 100 --seed 3 --workers 2 --out cli_circ.csv")
            .exit_code == 0);
  const std::string circ = slurp("cli_circ.csv");
  CHECK(circ.find("n,scale,mae,se,ratio,se_ratio,reps\n") == 0);
  CHECK(circ.find("\n10,raw,") != std::string::npos);
}

TEST_CASE("casestudy subcommand on a small file") {
  std::ostringstream data;
  data << "amount,rain\n";
  for (int i = 0; i < 400; ++i) {
    const double v = (i % 40) / 10.0;
    data << v << "," << (v > 1.1 ? "Yes" : "No") << "\n";
  }
  write("cli_case.csv", data.str());
  CHECK(run_cli("casestudy --data cli_case.csv --value amount --label rain "
                "--positive Yes --n 10,50 --reps 400 --seed 9 --out cli_case_out.csv")
            .exit_code == 0);
  const std::string out = slurp("cli_case_out.csv");
  CHECK(out.find("n,split_x,split_u") == 0);
  CHECK(out.find("\n10,") != std::string::npos);
  CHECK(out.find("\n50,") != std::string::npos);
}
