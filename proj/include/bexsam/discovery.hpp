#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bexsam/exec.hpp"
#include "bexsam/freq.hpp"
#include "bexsam/model.hpp"

namespace bexsam {

// 0 log 0 is taken as 0; log base 2
double binary_entropy(double p);

// two-sided tail probability of a standard normal at |z|
double normal_two_sided_pvalue(double z);

struct SinkScore {
    int var = 0;
    double score = 0.0;          // weighted variance of conditional entropy
    int controls_used = 0;       // controls with positive mass
    int controls_total = 0;      // 2^(m-1)
    double weight_covered = 0.0; // mass under used controls / total mass
};

struct ControlTest {
    std::uint64_t control = 0;  // assignment over live vars minus sink and candidate
    bool skipped = false;       // a candidate slice has no mass
    double delta_p = 0.0;       // p̂(sink=1 | cand=1) - p̂(sink=1 | cand=0)
    double z = 0.0;
    double p_value = 1.0;
    bool rejected = false;      // selected by Benjamini-Hochberg
};

struct ParentTest {
    int candidate = 0;
    bool is_parent = false;
    bool undecidable = false;  // every control was skipped
    std::vector<ControlTest> controls;
};

struct StepDiagnostics {
    int sink = 0;
    std::vector<SinkScore> scores;  // empty for the final single-variable step
    std::vector<ParentTest> tests;
};

struct DiscoveryResult {
    std::vector<int> vars;                  // input live ids, input order
    std::vector<std::string> names;         // parallel to vars
    std::vector<int> order;                 // causal order, root-most first
    std::vector<std::vector<int>> parents;  // parallel to vars, ascending ids
    std::vector<StepDiagnostics> steps;     // in elimination order
    bool complete_input = true;

    // at(i, j) = 1 iff vars[j] is a parent of vars[i]
    AdjacencyMatrix adjacency() const;
};

struct DiscoverOptions {
    double alpha = 0.05;
    bool strict_completeness = false;
    Exec exec = Exec::parallel;
};

// score of one live variable: variance of the conditional entropy of the
// variable across all assignments of the other live variables, weighted by
// observed assignment mass; small means sink-like
SinkScore sink_score(const FrequencyTable& table, int var);

std::vector<SinkScore> score_sinks(const FrequencyTable& table,
                                   Exec exec = Exec::parallel);

// variable with the minimal score; ties go to the earliest live position
int find_sink(const FrequencyTable& table, Exec exec = Exec::parallel);

// pooled two-proportion z-test of the sink's rate between candidate = 1 and
// candidate = 0 under one fixed assignment of the remaining live variables
ControlTest parent_pvalue(const FrequencyTable& table, int sink, int candidate,
                          std::uint64_t control);

// indices (ascending) rejected by the Benjamini-Hochberg step-up rule
std::vector<std::size_t> bh_select(const std::vector<double>& pvalues, double alpha);

// one ParentTest per candidate (live order, sink excluded); a candidate is a
// parent iff at least one of its non-skipped controls is rejected
std::vector<ParentTest> find_parent(const FrequencyTable& table, int sink,
                                    double alpha = 0.05, Exec exec = Exec::parallel);

// full elimination loop: repeatedly find the sink, test its parents and
// marginalize it out; order is the reverse of elimination
DiscoveryResult discover(const FrequencyTable& table, DiscoverOptions opts = {});

}  // namespace bexsam
