#pragma once

#include <string>
#include <vector>

#include "bexsam/freq.hpp"

namespace bexsam {

struct SkewEntry {
    int var = 0;
    std::string name;
    double p_hat = 0.0;
    bool skewed = false;      // |p_hat - 0.5| >= tau
    bool degenerate = false;  // p_hat is exactly 0 or 1
};

struct SkewReport {
    std::vector<SkewEntry> entries;
    bool all_ok = false;  // every variable skewed and none degenerate
};

// checks each live variable's marginal against the skew band around 0.5
SkewReport skewness_check(const FrequencyTable& table, double tau = 0.02);

// marginal p(x = 1) of x = e XOR f versus x = e OR f for independent
// Bernoulli e, f; the two are close when both inputs are rare
struct NoiseMarginals {
    double xor_one = 0.0;
    double or_one = 0.0;
};

NoiseMarginals noise_marginals(double p_e, double p_f);

}  // namespace bexsam
