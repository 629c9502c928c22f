#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bexsam/discovery.hpp"
#include "bexsam/freq.hpp"
#include "bexsam/genbench.hpp"
#include "bexsam/model.hpp"
#include "bexsam/rng.hpp"

using namespace bexsam;

namespace {

volatile double g_sink = 0.0;

template <class F>
double time_ms(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* label, double serial_ms, double parallel_ms) {
    std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %.2fx\n", label,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

    Rng rng(42);
    GeneratorConfig cfg;
    cfg.d = 16;
    cfg.p_coef = 0.4;
    BexsamModel big = random_model(cfg, rng);

    report(
        "exact_joint d=16",
        time_ms([&] { g_sink = g_sink +exact_joint(big, Exec::serial).probs[0]; }, 3),
        time_ms([&] { g_sink = g_sink +exact_joint(big, Exec::parallel).probs[0]; }, 3));

    cfg.d = 10;
    BexsamModel mid = random_model(cfg, rng);
    std::vector<std::uint64_t> rows = sample_dataset(mid, 2'000'000, rng);

    report("build_table n=2e6",
           time_ms([&] { g_sink = g_sink +FrequencyTable::from_rows(rows, 10, {}, Exec::serial).total(); }, 3),
           time_ms([&] { g_sink = g_sink +FrequencyTable::from_rows(rows, 10, {}, Exec::parallel).total(); }, 3));

    FrequencyTable table = FrequencyTable::from_rows(rows, 10);

    report("score_sinks d=10",
           time_ms([&] { g_sink = g_sink +score_sinks(table, Exec::serial)[0].score; }, 20),
           time_ms([&] { g_sink = g_sink +score_sinks(table, Exec::parallel)[0].score; }, 20));

    int sink = find_sink(table);
    report("find_parent d=10",
           time_ms([&] { g_sink = g_sink +find_parent(table, sink, 0.05, Exec::serial)[0].is_parent; }, 20),
           time_ms([&] { g_sink = g_sink +find_parent(table, sink, 0.05, Exec::parallel)[0].is_parent; }, 20));

    GeneratorConfig bench;
    bench.d = 6;
    bench.n = 10000;
    bench.trials = 40;
    bench.seed = 7;
    report("run_trials d=6 n=1e4",
           time_ms(
               [&] {
                   GeneratorConfig c = bench;
                   c.exec = Exec::serial;
                   g_sink = g_sink +run_trials(c).mean_er_s;
               },
               1),
           time_ms(
               [&] {
                   GeneratorConfig c = bench;
                   c.exec = Exec::parallel;
                   g_sink = g_sink +run_trials(c).mean_er_s;
               },
               1));

    std::printf("checksum %.6f\n", g_sink);
    return 0;
}
