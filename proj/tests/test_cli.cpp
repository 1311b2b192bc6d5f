#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "paltile/eval.hpp"
#include "paltile/matrix_io.hpp"
#include "paltile/objectives.hpp"

using namespace paltile;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(PALTILE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("paltile_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& child) const { return (path / child).string(); }
};

std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("") == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("generate --n 10") == 1);
    TempDir tmp("usage");
    CHECK(run_cli("generate --n 0 --m 10 --rank 2 --q 0.5 --seed 1 --out " +
                  (tmp / "g")) == 2);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("generate --help") == 0);
    CHECK(run_cli("image factorize --help") == 0);
}

TEST_CASE("missing input files exit with code 2") {
    TempDir tmp("missing");
    CHECK(run_cli("factorize " + (tmp / "nope.txt") +
                  " --model panpal --seed 1 --out " + (tmp / "f")) == 2);
}

TEST_CASE("generate, factorize, and evaluate chain together") {
    TempDir tmp("chain");
    const std::string gen = tmp / "gen";
    const std::string fac = tmp / "fac";
    const std::string metrics = tmp / "metrics.csv";

    CHECK(run_cli("generate --n 60 --m 70 --rank 3 --q 0.15 --pplus 0.02 "
                  "--pminus 0.02 --seed 11 --out " + gen) == 0);
    for (const char* name :
         {"data.txt", "x_star.txt", "y_star.txt", "noise_pos.txt", "noise_neg.txt",
          "metadata.jsonl", "manifest.jsonl"})
        CHECK(fs::exists(fs::path(gen) / name));

    CHECK(run_cli("factorize " + gen + "/data.txt --model primp --seed 4 "
                  "--delta-r 2 --iters 800 --out " + fac) == 0);
    for (const char* name : {"x.txt", "y.txt", "trace.csv", "manifest.jsonl"})
        CHECK(fs::exists(fs::path(fac) / name));

    const std::string trace = slurp(fac + "/trace.csv");
    CHECK(trace.rfind("round,rank_offered,rank_valuable,cost,t_x,t_y\n", 0) == 0);

    CHECK(run_cli("evaluate --x " + fac + "/x.txt --y " + fac + "/y.txt --data " +
                  gen + "/data.txt --planted-x " + gen + "/x_star.txt --planted-y " +
                  gen + "/y_star.txt --metadata " + gen + "/metadata.jsonl "
                  "--run-id trial --model primp --metrics " + metrics) == 0);

    std::ifstream in(metrics);
    std::string header, row;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    CHECK(header ==
          "run_id,model,n,m,r_star,q,p_plus,p_minus,seed,rank_offered,rank_valuable,"
          "f_measure,precision,recall,pct_f_rss,pct_f_l1,pct_f_ct,wall_ms");

    const std::vector<std::string> fields = split_csv(row);
    REQUIRE(fields.size() == 18);
    CHECK(fields[0] == "trial");
    CHECK(fields[1] == "primp");
    CHECK(fields[2] == "60");
    CHECK(fields[3] == "70");
    CHECK(fields[4] == "3");
    CHECK(fields[8] == "11");  // seed from the generator metadata

    // The percentage columns match the library's relative costs exactly.
    const BinaryMatrix d = read_sparse(fs::path(gen) / "data.txt");
    const BinaryMatrix x = read_sparse(fs::path(fac) / "x.txt");
    const BinaryMatrix y = read_sparse(fs::path(fac) / "y.txt");
    CHECK(std::stod(fields[14]) ==
          doctest::Approx(relative_cost(CostKind::rss, x, y, d)).epsilon(1e-12));
    CHECK(std::stod(fields[15]) ==
          doctest::Approx(relative_cost(CostKind::l1, x, y, d)).epsilon(1e-12));
    CHECK(std::stod(fields[16]) ==
          doctest::Approx(relative_cost(CostKind::ct, x, y, d)).epsilon(1e-12));

    // A second evaluate appends a row without repeating the header.
    CHECK(run_cli("evaluate --x " + fac + "/x.txt --y " + fac + "/y.txt --data " +
                  gen + "/data.txt --planted-x " + gen + "/x_star.txt --planted-y " +
                  gen + "/y_star.txt --run-id again --model primp --seed 0 "
                  "--metrics " + metrics) == 0);
    std::ifstream again(metrics);
    std::size_t lines = 0;
    std::string l;
    while (std::getline(again, l)) ++lines;
    CHECK(lines == 3);
}

TEST_CASE("factorize without a seed or model is a usage error") {
    TempDir tmp("noseed");
    const std::string gen = tmp / "gen";
    REQUIRE(run_cli("generate --n 20 --m 20 --rank 2 --q 0.3 --seed 5 --out " + gen) == 0);
    CHECK(run_cli("factorize " + gen + "/data.txt --model panpal --out " +
                  (tmp / "a")) == 1);
    CHECK(run_cli("factorize " + gen + "/data.txt --seed 3 --out " + (tmp / "b")) == 1);

    // A config file can supply both; flags still win over the file.
    std::ofstream cfg(tmp / "run.cfg");
    cfg << "model = panpal\nseed = 3\niterations = 200\ndelta_r = 2\n";
    cfg.close();
    CHECK(run_cli("factorize " + gen + "/data.txt --config " + (tmp / "run.cfg") +
                  " --out " + (tmp / "c")) == 0);
    CHECK(run_cli("factorize " + gen + "/data.txt --config " + (tmp / "run.cfg") +
                  " --model primp --out " + (tmp / "d")) == 0);
    CHECK(fs::exists(fs::path(tmp / "d") / "x.txt"));
}

TEST_CASE("repeated factorize runs are byte-identical") {
    TempDir tmp("determ");
    const std::string gen = tmp / "gen";
    REQUIRE(run_cli("generate --n 40 --m 50 --rank 3 --q 0.2 --pplus 0.05 "
                    "--pminus 0.05 --seed 9 --out " + gen) == 0);
    const std::string a = tmp / "a";
    const std::string b = tmp / "b";
    const std::string common =
        gen + "/data.txt --model panpal --seed 17 --delta-r 2 --iters 500 --out ";
    REQUIRE(run_cli("factorize " + common + a) == 0);
    REQUIRE(run_cli("factorize " + common + b) == 0);
    for (const char* name : {"x.txt", "y.txt", "trace.csv"})
        CHECK(slurp(a + "/" + name) == slurp(b + "/" + name));
}
