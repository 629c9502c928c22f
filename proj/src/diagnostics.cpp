#include "bexsam/diagnostics.hpp"

#include <cmath>

#include "bexsam/errors.hpp"

namespace bexsam {

SkewReport skewness_check(const FrequencyTable& table, double tau) {
    if (!(tau >= 0.0 && tau < 0.5)) throw InputError("skew band must lie in [0, 0.5)");
    if (!(table.total() > 0.0)) throw InputError("table has no mass");
    SkewReport report;
    report.all_ok = true;
    for (int b = 0; b < table.live_count(); ++b) {
        SkewEntry e;
        e.var = table.live()[b];
        e.name = table.names()[b];
        e.p_hat = table.marginal_one(e.var);
        e.degenerate = e.p_hat <= 0.0 || e.p_hat >= 1.0;
        e.skewed = std::fabs(e.p_hat - 0.5) >= tau;
        if (!e.skewed || e.degenerate) report.all_ok = false;
        report.entries.push_back(std::move(e));
    }
    return report;
}

NoiseMarginals noise_marginals(double p_e, double p_f) {
    if (!(p_e >= 0.0 && p_e <= 1.0 && p_f >= 0.0 && p_f <= 1.0))
        throw InputError("probabilities must lie in [0, 1]");
    NoiseMarginals m;
    m.xor_one = p_e + p_f - 2.0 * p_e * p_f;
    m.or_one = p_e + p_f - p_e * p_f;
    return m;
}

}  // namespace bexsam
