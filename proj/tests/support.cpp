#include "support.hpp"

#include <cmath>

#include "bexsam/genbench.hpp"
#include "bexsam/rng.hpp"

namespace support {

using namespace bexsam;

BexsamModel example_model() {
    AnfFunction x1 = AnfFunction::variable(0);
    AnfFunction x2 = AnfFunction::variable(1);
    AnfFunction x3 = AnfFunction::variable(2);
    std::vector<AnfFunction> fs(4);
    fs[1] = x1;
    fs[2] = x1 & x2;
    fs[3] = x1 | x3;
    return BexsamModel({0, 1, 2, 3}, std::move(fs), {0.2, 0.2, 0.2, 0.2});
}

JointDistribution joint_by_noise_enumeration(const BexsamModel& m) {
    int d = m.dim();
    JointDistribution joint{d, std::vector<double>(std::size_t{1} << d, 0.0)};
    for (std::uint64_t noise = 0; noise < (std::uint64_t{1} << d); ++noise) {
        double pr = 1.0;
        for (int i = 0; i < d; ++i)
            pr *= ((noise >> i) & 1) ? m.noise_prob(i) : 1.0 - m.noise_prob(i);
        std::uint64_t x = 0;
        for (int k = 0; k < d; ++k) {
            int i = m.order()[k];
            std::uint64_t bit =
                static_cast<std::uint64_t>(m.function_of(i).eval(x)) ^ ((noise >> i) & 1);
            x |= bit << i;
        }
        joint.probs[x] += pr;
    }
    return joint;
}

std::optional<double> cond_prob_by_filter(const FrequencyTable& t, int target,
                                          std::uint64_t control) {
    int tp = t.position_of(target);
    int m = t.live_count();
    double ones = 0.0, all = 0.0;
    for (std::uint64_t cell = 0; cell < (std::uint64_t{1} << m); ++cell) {
        std::uint64_t c = 0;
        int q = 0;
        for (int b = 0; b < m; ++b) {
            if (b == tp) continue;
            c |= ((cell >> b) & 1) << q;
            ++q;
        }
        if (c != control) continue;
        all += t.count(cell);
        if ((cell >> tp) & 1) ones += t.count(cell);
    }
    if (!(all > 0.0)) return std::nullopt;
    return ones / all;
}

namespace {

double weight_of_control(const FrequencyTable& t, int target, std::uint64_t control) {
    int tp = t.position_of(target);
    int m = t.live_count();
    double w = 0.0;
    for (std::uint64_t cell = 0; cell < (std::uint64_t{1} << m); ++cell) {
        std::uint64_t c = 0;
        int q = 0;
        for (int b = 0; b < m; ++b) {
            if (b == tp) continue;
            c |= ((cell >> b) & 1) << q;
            ++q;
        }
        if (c == control) w += t.count(cell);
    }
    return w;
}

double score_with_entropy(const FrequencyTable& t, int var, double (*entropy)(double)) {
    int m = t.live_count();
    std::vector<double> ws, hs;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << (m - 1)); ++c) {
        auto p = cond_prob_by_filter(t, var, c);
        if (!p) continue;
        ws.push_back(weight_of_control(t, var, c));
        hs.push_back(entropy(*p));
    }
    double sw = 0.0, swh = 0.0;
    for (std::size_t k = 0; k < ws.size(); ++k) {
        sw += ws[k];
        swh += ws[k] * hs[k];
    }
    double mean = swh / sw;
    double acc = 0.0;
    for (std::size_t k = 0; k < ws.size(); ++k)
        acc += ws[k] * (hs[k] - mean) * (hs[k] - mean);
    return acc / sw;
}

double entropy_log2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -(p * std::log(p) + (1.0 - p) * std::log(1.0 - p)) / std::log(2.0);
}

double entropy_ln(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -(p * std::log(p) + (1.0 - p) * std::log(1.0 - p));
}

}  // namespace

double sink_score_log2_reference(const FrequencyTable& t, int var) {
    return score_with_entropy(t, var, entropy_log2);
}

double sink_score_ln(const FrequencyTable& t, int var) {
    return score_with_entropy(t, var, entropy_ln);
}

std::vector<BexsamModel> bank_a() {
    std::vector<BexsamModel> models;
    for (int k = 0; k < 50; ++k) {
        Rng rng = Rng::for_trial(0xA11CE, static_cast<std::uint64_t>(k));
        GeneratorConfig cfg;
        cfg.d = 2 + k % 4;
        models.push_back(random_model(cfg, rng));
    }
    return models;
}

std::vector<BexsamModel> bank_b() {
    std::vector<BexsamModel> models;
    for (int k = 0; k < 50; ++k) {
        Rng rng = Rng::for_trial(0xB0B, static_cast<std::uint64_t>(k));
        GeneratorConfig cfg;
        cfg.d = 2 + k % 3;
        std::vector<double> noise(static_cast<std::size_t>(cfg.d));
        for (auto& p : noise) p = kNoiseLevels[rng.below(4)];
        cfg.noise = noise;
        models.push_back(random_model(cfg, rng));
    }
    return models;
}

}  // namespace support
