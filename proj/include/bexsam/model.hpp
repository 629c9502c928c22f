#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bexsam/anf.hpp"
#include "bexsam/exec.hpp"

namespace bexsam {

// dense d x d matrix; at(i, j) == 1 iff x_j is a parent of x_i
struct AdjacencyMatrix {
    int d = 0;
    std::vector<std::uint8_t> cells;

    static AdjacencyMatrix zero(int d) {
        return AdjacencyMatrix{d, std::vector<std::uint8_t>(
                                      static_cast<std::size_t>(d) * d, 0)};
    }
    std::uint8_t at(int i, int j) const {
        return cells[static_cast<std::size_t>(i) * d + j];
    }
    std::uint8_t& at(int i, int j) {
        return cells[static_cast<std::size_t>(i) * d + j];
    }
    int edge_count() const {
        int n = 0;
        for (auto c : cells) n += c != 0;
        return n;
    }
    bool operator==(const AdjacencyMatrix&) const = default;
};

// Structural model over d binary variables: in causal order, each variable is
// its ANF function of strictly earlier variables XOR independent Bernoulli
// noise. Noise probabilities must avoid 0, 1 and exactly 0.5; values within
// `skew_warn_band` of 0.5 are accepted with a warning. `allow_fair` downgrades
// the 0.5 rejection to a warning so sweeps can probe the unidentifiable point.
class BexsamModel {
public:
    BexsamModel(std::vector<int> order, std::vector<AnfFunction> functions,
                std::vector<double> noise_probs, double skew_warn_band = 0.02,
                bool allow_fair = false);

    int dim() const noexcept { return d_; }
    // order_[k] = variable index at causal position k
    const std::vector<int>& order() const noexcept { return order_; }
    int position_of(int var) const { return position_[var]; }
    const AnfFunction& function_of(int var) const { return functions_[var]; }
    const std::vector<AnfFunction>& functions() const noexcept { return functions_; }
    double noise_prob(int var) const { return noise_probs_[var]; }
    const std::vector<double>& noise_probs() const noexcept { return noise_probs_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    int d_ = 0;
    std::vector<int> order_;
    std::vector<int> position_;
    std::vector<AnfFunction> functions_;
    std::vector<double> noise_probs_;
    std::vector<std::string> warnings_;
};

// evaluates the model on one noise pattern (bit i = noise of variable i)
std::uint64_t structural_sample(const BexsamModel& model, std::uint64_t noise);

AdjacencyMatrix true_adjacency(const BexsamModel& model);

struct JointDistribution {
    int d = 0;
    std::vector<double> probs;  // indexed by pattern, bit i = variable i

    double prob_of(std::uint64_t pattern) const { return probs[pattern]; }
};

inline constexpr int kMaxJointDim = 20;

// exact joint by multiplying per-variable conditionals over all 2^d patterns;
// throws CapacityError for d > kMaxJointDim
JointDistribution exact_joint(const BexsamModel& model, Exec exec = Exec::parallel);

// p(x_target = 1 | variables selected by given_mask equal given_values);
// throws InputError if the conditioning event has probability zero or the
// target is part of the conditioning set
double exact_conditional(const JointDistribution& joint, int target,
                         std::uint64_t given_values, std::uint64_t given_mask);
double exact_conditional(const BexsamModel& model, int target,
                         std::uint64_t given_values, std::uint64_t given_mask);

}  // namespace bexsam
