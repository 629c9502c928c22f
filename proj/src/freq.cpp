#include "bexsam/freq.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bexsam/errors.hpp"

namespace bexsam {

namespace {

constexpr int kMaxTableDim = 24;

std::vector<std::string> default_names(const std::vector<int>& live) {
    std::vector<std::string> names;
    names.reserve(live.size());
    for (int id : live) names.push_back("x" + std::to_string(id + 1));
    return names;
}

// inserts a zero bit at position t, shifting higher bits up
std::uint64_t insert_zero(std::uint64_t c, int t) {
    std::uint64_t low = c & ((std::uint64_t{1} << t) - 1);
    return ((c >> t) << (t + 1)) | low;
}

double sum_in_index_order(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

FrequencyTable FrequencyTable::from_rows(const std::vector<std::uint64_t>& rows, int d,
                                         std::vector<std::string> names, Exec exec) {
    if (d < 1 || d > kMaxTableDim)
        throw CapacityError("dense tables support 1 to 24 variables");
    std::size_t cells = std::size_t{1} << d;
    for (std::uint64_t r : rows)
        if (r >= cells) throw InputError("sample row has bits outside the variable set");

    FrequencyTable t;
    t.live_.resize(d);
    for (int i = 0; i < d; ++i) t.live_[i] = i;
    if (names.empty())
        t.names_ = default_names(t.live_);
    else if (static_cast<int>(names.size()) == d)
        t.names_ = std::move(names);
    else
        throw InputError("need one name per variable");

    t.counts_.assign(cells, 0.0);
    int threads = 1;
#ifdef _OPENMP
    if (exec == Exec::parallel) threads = omp_get_max_threads();
#else
    (void)exec;
#endif
    if (threads <= 1) {
        for (std::uint64_t r : rows) t.counts_[r] += 1.0;
    } else {
        // per-thread integer histograms merged in thread order; counts are
        // exact in double, so the merge is bit-identical to the serial path
        std::vector<std::vector<double>> locals(
            static_cast<std::size_t>(threads), std::vector<double>(cells, 0.0));
        std::int64_t n = static_cast<std::int64_t>(rows.size());
#pragma omp parallel num_threads(threads)
        {
#ifdef _OPENMP
            int tid = omp_get_thread_num();
#else
            int tid = 0;
#endif
            std::int64_t chunk = (n + threads - 1) / threads;
            std::int64_t lo = tid * chunk;
            std::int64_t hi = std::min(n, lo + chunk);
            auto& local = locals[static_cast<std::size_t>(tid)];
            for (std::int64_t k = lo; k < hi; ++k) local[rows[static_cast<std::size_t>(k)]] += 1.0;
        }
        for (const auto& local : locals)
            for (std::size_t c = 0; c < cells; ++c) t.counts_[c] += local[c];
    }
    t.total_ = sum_in_index_order(t.counts_);
    return t;
}

FrequencyTable FrequencyTable::from_weights(std::vector<int> live,
                                            std::vector<double> weights,
                                            std::vector<std::string> names) {
    int m = static_cast<int>(live.size());
    if (m < 1 || m > kMaxTableDim)
        throw CapacityError("dense tables support 1 to 24 variables");
    for (int id : live)
        if (id < 0 || id > 63) throw InputError("variable index out of range");
    {
        std::vector<int> sorted = live;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError("live variables must be distinct");
    }
    if (weights.size() != (std::size_t{1} << m))
        throw InputError("need one weight per cell");
    for (double w : weights)
        if (!(w >= 0.0)) throw InputError("weights must be nonnegative");

    FrequencyTable t;
    if (names.empty())
        t.names_ = default_names(live);
    else if (names.size() == live.size())
        t.names_ = std::move(names);
    else
        throw InputError("need one name per variable");
    t.live_ = std::move(live);
    t.counts_ = std::move(weights);
    t.total_ = sum_in_index_order(t.counts_);
    return t;
}

FrequencyTable FrequencyTable::from_joint(const JointDistribution& joint, double scale,
                                          std::vector<std::string> names) {
    std::vector<int> live(static_cast<std::size_t>(joint.d));
    for (int i = 0; i < joint.d; ++i) live[static_cast<std::size_t>(i)] = i;
    std::vector<double> weights = joint.probs;
    for (double& w : weights) w *= scale;
    return from_weights(std::move(live), std::move(weights), std::move(names));
}

int FrequencyTable::position_of(int var) const noexcept {
    for (int b = 0; b < live_count(); ++b)
        if (live_[b] == var) return b;
    return -1;
}

FrequencyTable FrequencyTable::marginalize(int var) const {
    int t = position_of(var);
    if (t < 0) throw InputError("variable is not live in this table");
    int m = live_count();
    FrequencyTable out;
    out.live_.reserve(m - 1);
    out.names_.reserve(m - 1);
    for (int b = 0; b < m; ++b) {
        if (b == t) continue;
        out.live_.push_back(live_[b]);
        out.names_.push_back(names_[b]);
    }
    std::uint64_t half = std::uint64_t{1} << (m - 1);
    std::uint64_t bit = std::uint64_t{1} << t;
    out.counts_.resize(half);
    for (std::uint64_t c = 0; c < half; ++c) {
        std::uint64_t base = insert_zero(c, t);
        out.counts_[c] = counts_[base] + counts_[base | bit];
    }
    out.total_ = total_;
    return out;
}

std::optional<double> FrequencyTable::cond_prob(int target, std::uint64_t control) const {
    int t = position_of(target);
    if (t < 0) throw InputError("variable is not live in this table");
    int m = live_count();
    if (control >> (m - 1)) throw InputError("control has bits beyond the live set");
    std::uint64_t base = insert_zero(control, t);
    double n0 = counts_[base];
    double n1 = counts_[base | (std::uint64_t{1} << t)];
    double w = n0 + n1;
    if (!(w > 0.0)) return std::nullopt;
    return n1 / w;
}

FrequencyTable::Completeness FrequencyTable::completeness() const {
    Completeness r;
    for (std::uint64_t cell = 0; cell < counts_.size(); ++cell)
        if (!(counts_[cell] > 0.0)) r.missing.push_back(cell);
    r.complete = r.missing.empty();
    return r;
}

double FrequencyTable::marginal_one(int var) const {
    int t = position_of(var);
    if (t < 0) throw InputError("variable is not live in this table");
    if (!(total_ > 0.0)) throw InputError("table has no mass");
    std::uint64_t bit = std::uint64_t{1} << t;
    double s = 0.0;
    for (std::uint64_t c = 0; c < counts_.size(); ++c)
        if (c & bit) s += counts_[c];
    return s / total_;
}

}  // namespace bexsam
