#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "bexsam/freq.hpp"
#include "bexsam/genbench.hpp"
#include "bexsam/io.hpp"
#include "bexsam/model.hpp"
#include "bexsam/rng.hpp"
#include "doctest.h"
#include "support.hpp"

namespace {

std::string g_cli;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string read_or_empty(const char* path) {
    try {
        return bexsam::io::slurp(path);
    } catch (...) {
        return {};
    }
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = {}) {
    std::string cmd =
        env_prefix + "\"" + g_cli + "\" " + args + " >cli_out.tmp 2>cli_err.tmp";
    int rc = std::system(cmd.c_str());
    RunResult r;
    if (rc != -1 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
    r.out = read_or_empty("cli_out.tmp");
    r.err = read_or_empty("cli_err.tmp");
    return r;
}

// benchmark reports end in a wall-time column that legitimately varies
std::string drop_last_column(const std::string& text) {
    std::string out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t eol = text.find('\n', start);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(start, eol - start);
        std::size_t comma = line.rfind(',');
        if (comma != std::string::npos) line.resize(comma);
        out += line;
        out += '\n';
        start = eol + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("generate --d 3 --n 10").code == 2);   // --out is required
    CHECK(run_cli("generate --d 0 --n 10 --out cli_x").code == 2);
    CHECK(run_cli("discover cli_missing.csv").code == 2);
    CHECK(run_cli("discover --alpha nope cli_missing.csv").code == 2);
}

TEST_CASE("generate writes deterministic model and samples") {
    RunResult a = run_cli("generate --d 3 --n 1000 --seed 7 --noise 0.3 --out cli_g1");
    REQUIRE(a.code == 0);
    RunResult b = run_cli("generate --d 3 --n 1000 --seed 7 --noise 0.3 --out cli_g2");
    REQUIRE(b.code == 0);
    CHECK(bexsam::io::slurp("cli_g1.model") == bexsam::io::slurp("cli_g2.model"));
    CHECK(bexsam::io::slurp("cli_g1.csv") == bexsam::io::slurp("cli_g2.csv"));
    CHECK(bexsam::io::slurp("cli_g1.model").rfind("d=3\n", 0) == 0);
    CHECK(bexsam::io::slurp("cli_g1.csv").rfind("x1,x2,x3\n", 0) == 0);
}

TEST_CASE("the seed environment fallback matches an explicit seed") {
    RunResult a = run_cli("generate --d 3 --n 200 --seed 9 --out cli_e1");
    REQUIRE(a.code == 0);
    RunResult b =
        run_cli("generate --d 3 --n 200 --out cli_e2", "BEXSAM_SEED=9 ");
    REQUIRE(b.code == 0);
    CHECK(bexsam::io::slurp("cli_e1.csv") == bexsam::io::slurp("cli_e2.csv"));
    // an explicit flag wins over the environment
    RunResult c =
        run_cli("generate --d 3 --n 200 --seed 9 --out cli_e3", "BEXSAM_SEED=99 ");
    REQUIRE(c.code == 0);
    CHECK(bexsam::io::slurp("cli_e1.csv") == bexsam::io::slurp("cli_e3.csv"));
}

TEST_CASE("discover emits identical reports for csv and table inputs") {
    REQUIRE(run_cli("generate --d 3 --n 1000 --seed 7 --noise 0.3 --out cli_g1").code ==
            0);
    RunResult csv_run = run_cli("discover cli_g1.csv --out cli_r1.txt");
    REQUIRE(csv_run.code == 0);

    bexsam::io::Dataset data = bexsam::io::read_csv_file("cli_g1.csv");
    bexsam::FrequencyTable t =
        bexsam::FrequencyTable::from_rows(data.rows, data.d, data.names);
    bexsam::io::write_table_file("cli_t1.freq", t);
    RunResult tab_run = run_cli("discover cli_t1.freq --out cli_r2.txt");
    REQUIRE(tab_run.code == 0);

    CHECK(bexsam::io::slurp("cli_r1.txt") == bexsam::io::slurp("cli_r2.txt"));
    CHECK(csv_run.out == tab_run.out);
    CHECK(csv_run.out.find("causal order:") != std::string::npos);
}

TEST_CASE("a noisy two-variable copy yields the single directed edge") {
    bexsam::BexsamModel chain(
        {0, 1},
        {bexsam::AnfFunction::constant(false), bexsam::AnfFunction::variable(0)},
        {0.3, 0.2});
    bexsam::Rng rng(31);
    bexsam::io::Dataset data;
    data.d = 2;
    data.names = {"cause", "effect"};
    data.rows = bexsam::sample_dataset(chain, 5000, rng);
    bexsam::io::write_csv_file("cli_chain.csv", data);
    RunResult r = run_cli("discover cli_chain.csv --graph-out cli_chain.dot");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("causal order: cause effect") != std::string::npos);
    CHECK(r.out.find("  effect <- cause") != std::string::npos);
    CHECK(r.out.find("edges: 1") != std::string::npos);
    CHECK(bexsam::io::slurp("cli_chain.dot").find("\"cause\" -> \"effect\";") !=
          std::string::npos);
}

TEST_CASE("discover exit codes for malformed, incomplete and empty inputs") {
    bexsam::io::spill("cli_bad.csv", "a,b\n0,2\n");
    RunResult bad = run_cli("discover cli_bad.csv");
    CHECK(bad.code == 3);
    CHECK(bad.err.find("line 2") != std::string::npos);

    bexsam::io::spill("cli_holes.csv", "x1,x2\n0,0\n1,1\n0,0\n1,1\n");
    CHECK(run_cli("discover cli_holes.csv --strict").code == 4);
    RunResult lax = run_cli("discover cli_holes.csv");
    CHECK(lax.code == 0);
    CHECK(lax.out.find("complete: no") != std::string::npos);

    bexsam::io::spill("cli_empty.csv", "x1,x2\n");
    CHECK(run_cli("discover cli_empty.csv").code == 5);
}

TEST_CASE("discover writes graphs and table-format reports") {
    REQUIRE(run_cli("generate --d 3 --n 1000 --seed 7 --noise 0.3 --out cli_g1").code ==
            0);
    RunResult r =
        run_cli("discover cli_g1.csv --format table --graph-out cli_gr.dot");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("order,", 0) == 0);
    CHECK(bexsam::io::slurp("cli_gr.dot").rfind("digraph g {\n", 0) == 0);
}

TEST_CASE("skew-check prints marginal diagnostics") {
    bexsam::FrequencyTable t = bexsam::FrequencyTable::from_joint(
        bexsam::exact_joint(support::example_model()), 10000.0);
    bexsam::io::write_table_file("cli_skew.freq", t);
    RunResult r = run_cli("skew-check cli_skew.freq");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("all_ok: yes") != std::string::npos);
    CHECK(r.out.find("note:") != std::string::npos);  // 0.2 counts as small
}

TEST_CASE("benchmark reports are stable apart from wall time") {
    std::string args =
        "benchmark --d 2 --n 100 --trials 3 --seed 5 --format table";
    RunResult a = run_cli(args + " --out cli_b1.txt");
    REQUIRE(a.code == 0);
    RunResult b = run_cli(args + " --out cli_b2.txt");
    REQUIRE(b.code == 0);
    CHECK(drop_last_column(bexsam::io::slurp("cli_b1.txt")) ==
          drop_last_column(bexsam::io::slurp("cli_b2.txt")));
    CHECK(a.out.rfind("n,d,skipped", 0) == 0);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests [doctest args] <path-to-cli>\n");
        return 1;
    }
    g_cli = argv[argc - 1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv);
    return ctx.run();
}
