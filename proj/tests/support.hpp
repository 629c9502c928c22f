#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bexsam/freq.hpp"
#include "bexsam/model.hpp"

namespace support {

// x1 = e1, x2 = x1 + e2, x3 = x1 x2 + e3, x4 = (x1 or x3) + e4, all p = 0.2
bexsam::BexsamModel example_model();

// joint built the slow way: enumerate noise patterns, push each through a
// locally written forward evaluation, accumulate pattern mass
bexsam::JointDistribution joint_by_noise_enumeration(const bexsam::BexsamModel& m);

// conditional by literal filtering over raw cells (no bit-insertion tricks)
std::optional<double> cond_prob_by_filter(const bexsam::FrequencyTable& t, int target,
                                          std::uint64_t control);

// weighted variance of conditional entropy, computed from cond_prob_by_filter;
// log2 variant mirrors the library, ln variant checks scale invariance of the
// argmin
double sink_score_log2_reference(const bexsam::FrequencyTable& t, int var);
double sink_score_ln(const bexsam::FrequencyTable& t, int var);

// seeded model banks used across tests; construction is frozen
// bank A: 50 models, d cycling 2..5, noise from the eight standard levels
std::vector<bexsam::BexsamModel> bank_a();
// bank B: 50 models, d cycling 2..4, noise limited to {0.1, 0.2, 0.3, 0.4}
std::vector<bexsam::BexsamModel> bank_b();

}  // namespace support
