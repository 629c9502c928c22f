#include "bexsam/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bexsam/errors.hpp"

namespace bexsam {

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double normal_two_sided_pvalue(double z) {
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

namespace {

std::uint64_t insert_zero(std::uint64_t c, int t) {
    std::uint64_t low = c & ((std::uint64_t{1} << t) - 1);
    return ((c >> t) << (t + 1)) | low;
}

SinkScore score_position(const FrequencyTable& t, int pos) {
    int m = t.live_count();
    SinkScore s;
    s.var = t.live()[pos];
    s.controls_total = 1 << (m - 1);
    std::uint64_t half = std::uint64_t{1} << (m - 1);
    std::uint64_t bit = std::uint64_t{1} << pos;

    double sum_w = 0.0, sum_wh = 0.0;
    for (std::uint64_t c = 0; c < half; ++c) {
        std::uint64_t base = insert_zero(c, pos);
        double w = t.count(base) + t.count(base | bit);
        if (!(w > 0.0)) continue;
        double h = binary_entropy(t.count(base | bit) / w);
        sum_w += w;
        sum_wh += w * h;
        ++s.controls_used;
    }
    double mean = sum_wh / sum_w;
    double sum_wd = 0.0;
    for (std::uint64_t c = 0; c < half; ++c) {
        std::uint64_t base = insert_zero(c, pos);
        double w = t.count(base) + t.count(base | bit);
        if (!(w > 0.0)) continue;
        double dev = binary_entropy(t.count(base | bit) / w) - mean;
        sum_wd += w * dev * dev;
    }
    s.score = sum_wd / sum_w;
    s.weight_covered = sum_w / t.total();
    return s;
}

int select_min_score(const std::vector<SinkScore>& scores) {
    int best = 0;
    for (int k = 1; k < static_cast<int>(scores.size()); ++k)
        if (scores[k].score < scores[best].score) best = k;
    return scores[best].var;
}

ControlTest control_test(const FrequencyTable& t, int pos_sink, int pos_cand,
                         std::uint64_t control) {
    int pa = std::min(pos_sink, pos_cand);
    int pb = std::max(pos_sink, pos_cand);
    std::uint64_t base = insert_zero(insert_zero(control, pa), pb);
    std::uint64_t bs = std::uint64_t{1} << pos_sink;
    std::uint64_t bc = std::uint64_t{1} << pos_cand;

    double s0c0 = t.count(base);
    double s1c0 = t.count(base | bs);
    double s0c1 = t.count(base | bc);
    double s1c1 = t.count(base | bs | bc);
    double n1 = s0c1 + s1c1;
    double n0 = s0c0 + s1c0;

    ControlTest r;
    r.control = control;
    if (!(n1 > 0.0) || !(n0 > 0.0)) {
        r.skipped = true;
        return r;
    }
    r.delta_p = s1c1 / n1 - s1c0 / n0;
    double pooled = (s1c1 + s1c0) / (n1 + n0);
    double sigma = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n0));
    if (sigma > 0.0) {
        r.z = r.delta_p / sigma;
        r.p_value = normal_two_sided_pvalue(r.z);
    } else {
        r.z = 0.0;
        r.p_value = (r.delta_p == 0.0) ? 1.0 : 0.0;
    }
    return r;
}

ParentTest test_candidate(const FrequencyTable& t, int pos_sink, int pos_cand,
                          double alpha) {
    int m = t.live_count();
    ParentTest pt;
    pt.candidate = t.live()[pos_cand];
    std::uint64_t n_controls = std::uint64_t{1} << (m - 2);
    pt.controls.reserve(n_controls);
    std::vector<double> pvals;
    std::vector<std::size_t> pval_slot;
    for (std::uint64_t c = 0; c < n_controls; ++c) {
        ControlTest ct = control_test(t, pos_sink, pos_cand, c);
        if (!ct.skipped) {
            pvals.push_back(ct.p_value);
            pval_slot.push_back(pt.controls.size());
        }
        pt.controls.push_back(ct);
    }
    if (pvals.empty()) {
        pt.undecidable = true;
        return pt;
    }
    for (std::size_t k : bh_select(pvals, alpha)) {
        pt.controls[pval_slot[k]].rejected = true;
        pt.is_parent = true;
    }
    return pt;
}

int index_of(const std::vector<int>& v, int x) {
    return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin());
}

}  // namespace

SinkScore sink_score(const FrequencyTable& table, int var) {
    int pos = table.position_of(var);
    if (pos < 0) throw InputError("variable is not live in this table");
    if (!(table.total() > 0.0)) throw DiscoveryError("table has no mass");
    return score_position(table, pos);
}

std::vector<SinkScore> score_sinks(const FrequencyTable& table, Exec exec) {
    if (!(table.total() > 0.0)) throw DiscoveryError("table has no mass");
    int m = table.live_count();
    std::vector<SinkScore> out(static_cast<std::size_t>(m));
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int pos = 0; pos < m; ++pos)
            out[static_cast<std::size_t>(pos)] = score_position(table, pos);
    } else {
        for (int pos = 0; pos < m; ++pos)
            out[static_cast<std::size_t>(pos)] = score_position(table, pos);
    }
    return out;
}

int find_sink(const FrequencyTable& table, Exec exec) {
    return select_min_score(score_sinks(table, exec));
}

ControlTest parent_pvalue(const FrequencyTable& table, int sink, int candidate,
                          std::uint64_t control) {
    int ps = table.position_of(sink);
    int pc = table.position_of(candidate);
    if (ps < 0 || pc < 0) throw InputError("variable is not live in this table");
    if (ps == pc) throw InputError("sink and candidate must differ");
    int m = table.live_count();
    if (m >= 2 && (control >> (m - 2)) != 0)
        throw InputError("control has bits beyond the live set");
    return control_test(table, ps, pc, control);
}

std::vector<std::size_t> bh_select(const std::vector<double>& pvalues, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
    std::size_t m = pvalues.size();
    if (m == 0) return {};
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (pvalues[a] != pvalues[b]) return pvalues[a] < pvalues[b];
        return a < b;
    });
    std::size_t r = 0;
    for (std::size_t k = 1; k <= m; ++k)
        if (pvalues[idx[k - 1]] <= alpha * static_cast<double>(k) / static_cast<double>(m))
            r = k;
    std::vector<std::size_t> rejected(idx.begin(), idx.begin() + r);
    std::sort(rejected.begin(), rejected.end());
    return rejected;
}

std::vector<ParentTest> find_parent(const FrequencyTable& table, int sink,
                                    double alpha, Exec exec) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
    int ps = table.position_of(sink);
    if (ps < 0) throw InputError("variable is not live in this table");
    if (!(table.total() > 0.0)) throw DiscoveryError("table has no mass");
    int m = table.live_count();
    std::vector<int> cand_pos;
    for (int pos = 0; pos < m; ++pos)
        if (pos != ps) cand_pos.push_back(pos);

    std::vector<ParentTest> out(cand_pos.size());
    int n = static_cast<int>(cand_pos.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n; ++k)
            out[static_cast<std::size_t>(k)] =
                test_candidate(table, ps, cand_pos[static_cast<std::size_t>(k)], alpha);
    } else {
        for (int k = 0; k < n; ++k)
            out[static_cast<std::size_t>(k)] =
                test_candidate(table, ps, cand_pos[static_cast<std::size_t>(k)], alpha);
    }
    return out;
}

AdjacencyMatrix DiscoveryResult::adjacency() const {
    int d = static_cast<int>(vars.size());
    AdjacencyMatrix b = AdjacencyMatrix::zero(d);
    for (int i = 0; i < d; ++i)
        for (int p : parents[static_cast<std::size_t>(i)])
            b.at(i, index_of(vars, p)) = 1;
    return b;
}

DiscoveryResult discover(const FrequencyTable& table, DiscoverOptions opts) {
    if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
        throw InputError("alpha must lie in (0, 1)");
    if (table.live_count() < 1) throw InputError("table has no variables");
    if (!(table.total() > 0.0)) throw DiscoveryError("table has no mass");

    auto comp = table.completeness();
    if (!comp.complete && opts.strict_completeness)
        throw CompletenessError("dataset leaves " + std::to_string(comp.missing.size()) +
                                " pattern(s) unobserved");

    DiscoveryResult res;
    res.vars = table.live();
    res.names = table.names();
    res.parents.assign(res.vars.size(), {});
    res.complete_input = comp.complete;

    FrequencyTable t = table;
    std::vector<int> eliminated;
    while (true) {
        StepDiagnostics step;
        if (t.live_count() == 1) {
            step.sink = t.live()[0];
            eliminated.push_back(step.sink);
            res.steps.push_back(std::move(step));
            break;
        }
        step.scores = score_sinks(t, opts.exec);
        step.sink = select_min_score(step.scores);
        step.tests = find_parent(t, step.sink, opts.alpha, opts.exec);

        auto& plist = res.parents[static_cast<std::size_t>(index_of(res.vars, step.sink))];
        for (const ParentTest& pt : step.tests)
            if (pt.is_parent) plist.push_back(pt.candidate);
        std::sort(plist.begin(), plist.end());

        eliminated.push_back(step.sink);
        int sink = step.sink;
        res.steps.push_back(std::move(step));
        t = t.marginalize(sink);
    }
    res.order.assign(eliminated.rbegin(), eliminated.rend());
    return res;
}

}  // namespace bexsam
