#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "bexsam/discovery.hpp"
#include "bexsam/exec.hpp"
#include "bexsam/model.hpp"
#include "bexsam/rng.hpp"

namespace bexsam {

// noise levels used when a config does not fix them explicitly
inline constexpr std::array<double, 8> kNoiseLevels = {0.1, 0.2, 0.3, 0.4,
                                                       0.6, 0.7, 0.8, 0.9};

struct GeneratorConfig {
    int d = 4;
    std::int64_t n = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    int trials = 100;
    // monomial inclusion probability; drawn uniformly per model when unset
    std::optional<double> p_coef;
    // monostate: per-variable draw from kNoiseLevels; double: shared value;
    // vector: one value per variable
    std::variant<std::monostate, double, std::vector<double>> noise;
    // attempts per trial before the trial is discarded as incomplete
    int retry_cap = 100;
    bool discard_incomplete = true;
    // diagnostic override: build models even when a noise level is exactly
    // 0.5, to measure how discovery degrades at the unidentifiable point
    bool allow_fair_noise = false;
    Exec exec = Exec::parallel;
};

// Draw order is fixed and versioned by test expectations: causal order
// (Fisher-Yates), then p_coef if unset, then per position k = 0..d-1 one
// uniform per monomial mask over the first k ordered variables (ascending
// mask, mask 0 is the constant term), then noise by ascending variable index.
BexsamModel random_model(const GeneratorConfig& config, Rng& rng);

// n bit-packed rows; per row, noise bits are drawn by ascending variable index
std::vector<std::uint64_t> sample_dataset(const BexsamModel& model, std::int64_t n,
                                          Rng& rng);

// fraction of true edges the estimated order makes impossible: nonzero cells
// in the strict upper triangle of the order-permuted true matrix over all
// nonzero cells; 0 when the true matrix has no edges
double er_o(const AdjacencyMatrix& truth, const std::vector<int>& order);

// fraction of mismatched cells between the matrices
double er_s(const AdjacencyMatrix& truth, const AdjacencyMatrix& estimate);

struct TrialResult {
    std::uint64_t trial = 0;
    bool discarded = false;
    int attempts = 0;
    double er_o = 0.0;
    double er_s = 0.0;
    double ct_ms = 0.0;  // discovery wall time; excluded from determinism checks
};

struct TrialReport {
    int d = 0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::vector<TrialResult> trials;
    int scored = 0;
    int discarded = 0;
    double mean_er_o = 0.0;
    double mean_er_s = 0.0;
    double mean_ct_ms = 0.0;
};

// One trial = one derived RNG stream: each attempt draws a fresh model and
// dataset; incomplete datasets are discarded and redrawn up to retry_cap
// attempts when discard_incomplete is set, otherwise scored as-is.
// Trials are independent, so the parallel path is bit-identical to serial.
TrialReport run_trials(const GeneratorConfig& config);

struct YStructureReport {
    int trials = 0;
    int directed_correct = 0;  // of 3 true edges per trial
    int directed_total = 0;
    int absent_correct = 0;  // of 9 orderings with no edge per trial
    int absent_total = 0;
};

// two roots feed a collider whose value drives a fourth variable; the
// collider combines its parents with AND, or with OR when use_or is set
YStructureReport y_structure_experiment(std::int64_t n, int trials, double alpha,
                                        bool use_or, std::uint64_t seed);

struct GridCell {
    int d = 0;
    std::int64_t n = 0;
    bool skipped = false;  // n < 2^d, too few rows to cover the table
    TrialReport report;
};

std::vector<GridCell> benchmark_grid(const GeneratorConfig& base,
                                     const std::vector<int>& ds,
                                     const std::vector<std::int64_t>& ns);

struct ScalingPoint {
    int d = 0;
    std::int64_t n = 0;
    bool skipped = false;
    double ms = 0.0;  // per run: parse csv text, build table, discover
};

// times the full pipeline on synthetic csv text with expected pattern counts;
// cells with n < 2^d are skipped like in benchmark_grid
std::vector<ScalingPoint> measure_scaling(const std::vector<int>& ds,
                                          const std::vector<std::int64_t>& ns,
                                          std::uint64_t seed);

}  // namespace bexsam
