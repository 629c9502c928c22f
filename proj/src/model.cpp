#include "bexsam/model.hpp"

#include <cmath>
#include <cstdio>

#include "bexsam/errors.hpp"

namespace bexsam {

BexsamModel::BexsamModel(std::vector<int> order, std::vector<AnfFunction> functions,
                         std::vector<double> noise_probs, double skew_warn_band,
                         bool allow_fair)
    : d_(static_cast<int>(order.size())),
      order_(std::move(order)),
      functions_(std::move(functions)),
      noise_probs_(std::move(noise_probs)) {
    if (d_ < 1 || d_ > 63) throw InputError("model dimension must be in [1, 63]");
    if (static_cast<int>(functions_.size()) != d_ ||
        static_cast<int>(noise_probs_.size()) != d_)
        throw InputError("order, functions and noise probabilities must agree in size");

    position_.assign(d_, -1);
    for (int k = 0; k < d_; ++k) {
        int v = order_[k];
        if (v < 0 || v >= d_ || position_[v] != -1)
            throw InputError("order must be a permutation of the variable indices");
        position_[v] = k;
    }

    for (int i = 0; i < d_; ++i) {
        double p = noise_probs_[i];
        if (!(p > 0.0 && p < 1.0))
            throw InputError("noise probability must lie strictly between 0 and 1");
        if (p == 0.5) {
            if (!allow_fair)
                throw InputError(
                    "noise probability 0.5 makes the variable unidentifiable");
            char buf[96];
            std::snprintf(buf, sizeof buf, "x%d has fair noise and is unidentifiable",
                          i + 1);
            warnings_.emplace_back(buf);
            continue;
        }
        if (std::fabs(p - 0.5) < skew_warn_band) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "noise probability %.6g of x%d is close to 0.5", p, i + 1);
            warnings_.emplace_back(buf);
        }
    }

    for (int i = 0; i < d_; ++i) {
        std::uint64_t sup = functions_[i].support();
        for (int j = 0; j < 64; ++j) {
            if (!((sup >> j) & 1)) continue;
            if (j >= d_) throw InputError("function reads a variable outside the model");
            if (position_[j] >= position_[i])
                throw InputError("function may only read causally earlier variables");
        }
    }
}

std::uint64_t structural_sample(const BexsamModel& model, std::uint64_t noise) {
    std::uint64_t x = 0;
    for (int k = 0; k < model.dim(); ++k) {
        int i = model.order()[k];
        std::uint64_t bit =
            static_cast<std::uint64_t>(model.function_of(i).eval(x)) ^ ((noise >> i) & 1);
        x |= bit << i;
    }
    return x;
}

AdjacencyMatrix true_adjacency(const BexsamModel& model) {
    int d = model.dim();
    AdjacencyMatrix b = AdjacencyMatrix::zero(d);
    for (int i = 0; i < d; ++i) {
        std::uint64_t sup = model.function_of(i).support();
        for (int j = 0; j < d; ++j)
            if ((sup >> j) & 1) b.at(i, j) = 1;
    }
    return b;
}

namespace {

double pattern_prob(const BexsamModel& model, std::uint64_t x) {
    double p = 1.0;
    for (int i = 0; i < model.dim(); ++i) {
        int predicted = model.function_of(i).eval(x);
        int actual = static_cast<int>((x >> i) & 1);
        double q = model.noise_prob(i);
        p *= (predicted == actual) ? 1.0 - q : q;
    }
    return p;
}

}  // namespace

JointDistribution exact_joint(const BexsamModel& model, Exec exec) {
    int d = model.dim();
    if (d > kMaxJointDim) throw CapacityError("exact joint is limited to 20 variables");
    std::int64_t cells = std::int64_t{1} << d;
    JointDistribution joint{d, std::vector<double>(static_cast<std::size_t>(cells), 0.0)};
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t x = 0; x < cells; ++x)
            joint.probs[static_cast<std::size_t>(x)] =
                pattern_prob(model, static_cast<std::uint64_t>(x));
    } else {
        for (std::int64_t x = 0; x < cells; ++x)
            joint.probs[static_cast<std::size_t>(x)] =
                pattern_prob(model, static_cast<std::uint64_t>(x));
    }
    return joint;
}

double exact_conditional(const JointDistribution& joint, int target,
                         std::uint64_t given_values, std::uint64_t given_mask) {
    if (target < 0 || target >= joint.d) throw InputError("target index out of range");
    std::uint64_t tbit = std::uint64_t{1} << target;
    if (given_mask & tbit)
        throw InputError("target may not appear in the conditioning set");
    double num = 0.0, den = 0.0;
    std::uint64_t cells = std::uint64_t{1} << joint.d;
    for (std::uint64_t x = 0; x < cells; ++x) {
        if ((x & given_mask) != (given_values & given_mask)) continue;
        den += joint.probs[x];
        if (x & tbit) num += joint.probs[x];
    }
    if (den <= 0.0) throw InputError("conditioning event has probability zero");
    return num / den;
}

double exact_conditional(const BexsamModel& model, int target,
                         std::uint64_t given_values, std::uint64_t given_mask) {
    return exact_conditional(exact_joint(model), target, given_values, given_mask);
}

}  // namespace bexsam
