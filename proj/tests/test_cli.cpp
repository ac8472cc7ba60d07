// End-to-end checks of the command-line tool: exit codes, pinned CSV
// schemas, byte-identical reruns, and the CSV matrix file mode. The binary
// path comes in through RANDASSIGN_CLI_PATH.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "randassign/asymptotics.hpp"
#include "randassign/distributions.hpp"
#include "randassign/output.hpp"

using namespace randassign;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::current_path() / "cli_scratch";
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// args is appended to the CLI path unless raw is set, in which case it is the
// whole shell command (for environment-variable prefixes).
CliResult run_cli(const std::string& args, bool raw = false) {
    static int counter = 0;
    const auto out_file = scratch_dir() / ("stdout_" + std::to_string(counter++) + ".txt");
    const std::string command = (raw ? args : std::string(RANDASSIGN_CLI_PATH) + " " + args) +
                                " > " + out_file.string() + " 2> /dev/null";
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WEXITSTATUS(status);
    result.out = slurp(out_file);
    return result;
}

}  // namespace

TEST_CASE("cli predict: values are the library's, bit for bit") {
    const CliResult r = run_cli("predict --dist exp:1 --n 100");
    CHECK(r.exit_code == 0);

    const PredictionRecord p = predict(DistributionSpec::exponential(1.0), 100);
    const std::string expected =
        "dist,n,g_of_inv_n,em_n_predicted,em_assignment_predicted,exact_em_n,notes\n"
        "exp:1,100," + format_real(p.g_of_inv_n) + "," + format_real(p.em_n_predicted) + "," +
        format_real(p.em_assignment_predicted) + "," + format_real(*p.exact_em_n) + ",\n";
    CHECK(r.out == expected);
    CHECK(r.out.find("4.60517018599") != std::string::npos);
    CHECK(r.out.find("460.517018599") != std::string::npos);
}

TEST_CASE("cli predict: normal at n = 2 prints the median 0") {
    const CliResult r = run_cli("predict --dist normal --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("normal,2,0,0,0,,") != std::string::npos);
}

TEST_CASE("cli predict: uniform01 violates the growth assumption, exit 2") {
    const CliResult r = run_cli("predict --dist uniform01 --n 10");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli: strict grammar, no aliases") {
    CHECK(run_cli("simulate --dist gauss --n 10 --reps 10 --stat exact-max --seed 1").exit_code ==
          2);
    CHECK(run_cli("simulate --dist normal --n 10 --reps 10 --stat best --seed 1").exit_code == 2);
    CHECK(run_cli("predict --dist exp --n 10").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("predict").exit_code == 2);
}

TEST_CASE("cli simulate: pinned CSV schema and determinism") {
    const std::string cmd = "simulate --dist normal --n 12 --reps 50 --stat exact-max --seed 7";
    const CliResult first = run_cli(cmd + " --format csv");
    CHECK(first.exit_code == 0);
    REQUIRE(!first.out.empty());
    const std::string header = first.out.substr(0, first.out.find('\n'));
    CHECK(header == "n,stat,mean,stddev,stderr,ci95_low,ci95_high,reps,seed");

    // byte-identical rerun, independent of worker count
    const CliResult second = run_cli(cmd + " --format csv --workers 1");
    const CliResult third = run_cli(cmd + " --format csv --workers 8");
    CHECK(first.out == second.out);
    CHECK(first.out == third.out);
}

TEST_CASE("cli simulate: --out file and stdout contents agree") {
    const auto out_path = scratch_dir() / "sim.csv";
    const std::string base = "simulate --dist exp:1 --n 6 --reps 40 --stat greedy-total --seed 3";
    const CliResult to_stdout = run_cli(base);
    const CliResult to_file = run_cli(base + " --out " + out_path.string());
    CHECK(to_stdout.exit_code == 0);
    CHECK(to_file.exit_code == 0);
    CHECK(slurp(out_path) == to_stdout.out);
}

TEST_CASE("cli simulate: jsonl carries the same values as csv") {
    const std::string base = "simulate --dist exp:1 --n 5 --reps 30 --stat iid-max --seed 9";
    const CliResult csv = run_cli(base + " --format csv");
    const CliResult jsonl = run_cli(base + " --format jsonl");
    CHECK(jsonl.exit_code == 0);
    // the mean printed in CSV appears verbatim in the JSON line
    std::istringstream rows(csv.out);
    std::string header, row;
    std::getline(rows, header);
    std::getline(rows, row);
    const std::size_t first_comma = row.find(',');
    const std::size_t second_comma = row.find(',', first_comma + 1);
    const std::size_t third_comma = row.find(',', second_comma + 1);
    const std::string mean = row.substr(second_comma + 1, third_comma - second_comma - 1);
    CHECK(jsonl.out.find("\"mean\":" + mean) != std::string::npos);
}

TEST_CASE("cli: RANDASSIGN_WORKERS sets the default worker count") {
    const std::string cmd = "simulate --dist exp:1 --n 8 --reps 60 --stat exact-max --seed 21";
    const CliResult plain = run_cli(cmd);
    const CliResult env3 = run_cli("RANDASSIGN_WORKERS=3 " + std::string(RANDASSIGN_CLI_PATH) +
                                       " " + cmd,
                                   /*raw=*/true);
    CHECK(env3.exit_code == 0);
    CHECK(env3.out == plain.out);  // worker count never changes the bytes
    const CliResult bad = run_cli("RANDASSIGN_WORKERS=zero " + std::string(RANDASSIGN_CLI_PATH) +
                                      " " + cmd,
                                  /*raw=*/true);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli simulate: exit 3 when the output path cannot be opened") {
    const CliResult r = run_cli(
        "simulate --dist exp:1 --n 4 --reps 10 --stat iid-max --seed 1 --out /nonexistent/x.csv");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli table: one row per (distribution, n), poisson notes the asymptotic") {
    const CliResult r = run_cli("table --ns 16,24 --reps 20 --seed 5");
    CHECK(r.exit_code == 0);
    std::istringstream rows(r.out);
    std::string header;
    std::getline(rows, header);
    CHECK(header == "dist,n,g_of_inv_n,predicted,mc_mean,mc_stderr,ratio,reps,seed,notes");
    int count = 0;
    bool poisson_note = false;
    bool exp_predicted = false;
    const PredictionRecord exp16 = predict(DistributionSpec::exponential(1.0), 16);
    const std::string exp16_prefix = "exp:1,16," + format_real(exp16.g_of_inv_n) + "," +
                                     format_real(exp16.em_assignment_predicted) + ",";
    std::string row;
    while (std::getline(rows, row)) {
        ++count;
        if (row.find("poisson:4") == 0 && row.find("asymptotic") != std::string::npos) {
            poisson_note = true;
        }
        if (row.rfind(exp16_prefix, 0) == 0) exp_predicted = true;
    }
    CHECK(count == 10);  // 5 distributions x 2 sizes
    CHECK(poisson_note);
    CHECK(exp_predicted);  // predicted column is n*g(1/n) from the library
}

TEST_CASE("cli parisi: exp rows against sum 1/k^2 plus one uniform row") {
    const CliResult r = run_cli("parisi --n-max 3 --reps 400 --seed 11");
    CHECK(r.exit_code == 0);
    std::istringstream rows(r.out);
    std::string header;
    std::getline(rows, header);
    CHECK(header == "dist,n,reps,mc_mean,mc_stderr,target,diff_stderr_units,seed,notes");
    std::string row;
    int exp_rows = 0, uniform_rows = 0;
    while (std::getline(rows, row)) {
        if (row.find("exp:1,") == 0) ++exp_rows;
        if (row.find("uniform01,3,") == 0) {
            ++uniform_rows;
            CHECK(row.find("pre-asymptotic") != std::string::npos);
            CHECK(row.find(format_real(mezard_parisi_expansion(3))) != std::string::npos);
        }
    }
    CHECK(exp_rows == 3);
    CHECK(uniform_rows == 1);
    CHECK(run_cli("parisi --n-max 65 --reps 100 --seed 1").exit_code == 2);
}

TEST_CASE("cli solve: CSV matrix file mode") {
    const auto matrix_path = scratch_dir() / "m.csv";
    {
        std::ofstream out(matrix_path, std::ios::binary);
        out << "5,4\n5,0\n";
    }
    // permutations on [[5,4],[5,0]]: identity gives 5+0=5, the swap 4+5=9
    const CliResult max_r = run_cli("solve --matrix " + matrix_path.string() + " --sense max");
    CHECK(max_r.exit_code == 0);
    CHECK(max_r.out.find("n,sense,value,permutation") == 0);
    CHECK(max_r.out.find("2,max,9,2 1") != std::string::npos);

    const CliResult min_r = run_cli("solve --matrix " + matrix_path.string() + " --sense min");
    CHECK(min_r.exit_code == 0);
    CHECK(min_r.out.find("2,min,5,1 2") != std::string::npos);
}

TEST_CASE("cli solve: missing file is I/O (3), malformed is validation (2)") {
    CHECK(run_cli("solve --matrix /nonexistent/m.csv --sense max").exit_code == 3);
    const auto bad_path = scratch_dir() / "bad.csv";
    {
        std::ofstream out(bad_path, std::ios::binary);
        out << "1,2\n3\n";
    }
    CHECK(run_cli("solve --matrix " + bad_path.string() + " --sense max").exit_code == 2);
}
