#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bexsam/exec.hpp"
#include "bexsam/model.hpp"

namespace bexsam {

// Dense table of pattern counts over the currently live variables.
// Cell index bit b holds the value of live()[b], so cell indices change
// meaning as variables are marginalized out. Counts are doubles so exact
// probability tables can be used in place of sampled data.
class FrequencyTable {
public:
    // rows hold bit-packed samples (bit i = variable i); d <= 24
    static FrequencyTable from_rows(const std::vector<std::uint64_t>& rows, int d,
                                    std::vector<std::string> names = {},
                                    Exec exec = Exec::parallel);
    // weights indexed by cell; live holds the original variable indices
    static FrequencyTable from_weights(std::vector<int> live,
                                       std::vector<double> weights,
                                       std::vector<std::string> names = {});
    static FrequencyTable from_joint(const JointDistribution& joint,
                                     double scale = 1.0,
                                     std::vector<std::string> names = {});

    int live_count() const noexcept { return static_cast<int>(live_.size()); }
    const std::vector<int>& live() const noexcept { return live_; }
    // names parallel live(); defaults are x1, x2, ... by original index
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<double>& counts() const noexcept { return counts_; }
    double count(std::uint64_t cell) const { return counts_[cell]; }
    double total() const noexcept { return total_; }

    // position of original variable `var` among the live ones, -1 if gone
    int position_of(int var) const noexcept;

    // sums out one live variable; counts merge pairwise, total is preserved
    FrequencyTable marginalize(int var) const;

    // p̂(target = 1 | control), where control bit q is the value of the q-th
    // remaining live variable (live order with the target removed);
    // nullopt when the control has zero observed mass
    std::optional<double> cond_prob(int target, std::uint64_t control) const;

    struct Completeness {
        bool complete = false;
        std::vector<std::uint64_t> missing;  // cells with zero count, ascending
    };
    Completeness completeness() const;

    // p̂(var = 1)
    double marginal_one(int var) const;

private:
    std::vector<int> live_;
    std::vector<std::string> names_;
    std::vector<double> counts_;
    double total_ = 0.0;
};

}  // namespace bexsam
