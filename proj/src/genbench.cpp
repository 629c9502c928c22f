#include "bexsam/genbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bexsam/errors.hpp"
#include "bexsam/freq.hpp"
#include "bexsam/io.hpp"

namespace bexsam {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

}  // namespace

BexsamModel random_model(const GeneratorConfig& config, Rng& rng) {
    int d = config.d;
    if (d < 1 || d > kMaxJointDim)
        throw InputError("generator supports 1 to 20 variables");

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    double pc = config.p_coef ? *config.p_coef : rng.uniform01();
    if (!(pc >= 0.0 && pc <= 1.0))
        throw InputError("monomial probability must lie in [0, 1]");

    std::vector<AnfFunction> functions(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        std::vector<std::uint64_t> monomials;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            bool keep = rng.bernoulli(pc);
            if (!keep) continue;
            std::uint64_t mono = 0;
            for (int b = 0; b < k; ++b)
                if ((mask >> b) & 1) mono |= std::uint64_t{1} << order[static_cast<std::size_t>(b)];
            monomials.push_back(mono);
        }
        functions[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
            AnfFunction(std::move(monomials));
    }

    std::vector<double> noise(static_cast<std::size_t>(d));
    if (std::holds_alternative<std::monostate>(config.noise)) {
        for (int i = 0; i < d; ++i)
            noise[static_cast<std::size_t>(i)] = kNoiseLevels[rng.below(kNoiseLevels.size())];
    } else if (const double* p = std::get_if<double>(&config.noise)) {
        std::fill(noise.begin(), noise.end(), *p);
    } else {
        const auto& v = std::get<std::vector<double>>(config.noise);
        if (static_cast<int>(v.size()) != d)
            throw InputError("need one noise probability per variable");
        noise = v;
    }
    return BexsamModel(std::move(order), std::move(functions), std::move(noise), 0.02,
                       config.allow_fair_noise);
}

std::vector<std::uint64_t> sample_dataset(const BexsamModel& model, std::int64_t n,
                                          Rng& rng) {
    if (n < 1) throw InputError("need at least one sample");
    int d = model.dim();
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
    for (std::int64_t h = 0; h < n; ++h) {
        std::uint64_t noise = 0;
        for (int i = 0; i < d; ++i)
            noise |= static_cast<std::uint64_t>(rng.bernoulli(model.noise_prob(i))) << i;
        rows[static_cast<std::size_t>(h)] = structural_sample(model, noise);
    }
    return rows;
}

double er_o(const AdjacencyMatrix& truth, const std::vector<int>& order) {
    int d = truth.d;
    if (static_cast<int>(order.size()) != d)
        throw InputError("order and matrix disagree in size");
    int total = truth.edge_count();
    if (total == 0) return 0.0;
    int bad = 0;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            if (truth.at(order[static_cast<std::size_t>(a)],
                         order[static_cast<std::size_t>(b)]))
                ++bad;
    return static_cast<double>(bad) / static_cast<double>(total);
}

double er_s(const AdjacencyMatrix& truth, const AdjacencyMatrix& estimate) {
    if (truth.d != estimate.d) throw InputError("matrices disagree in size");
    int d = truth.d;
    int bad = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if ((truth.at(i, j) != 0) != (estimate.at(i, j) != 0)) ++bad;
    return static_cast<double>(bad) / (static_cast<double>(d) * d);
}

namespace {

TrialResult run_one_trial(const GeneratorConfig& cfg, std::uint64_t trial) {
    Rng rng = Rng::for_trial(cfg.seed, trial);
    TrialResult r;
    r.trial = trial;

    std::optional<BexsamModel> model;
    std::optional<FrequencyTable> table;
    for (int attempt = 1; attempt <= cfg.retry_cap; ++attempt) {
        r.attempts = attempt;
        BexsamModel m = random_model(cfg, rng);
        std::vector<std::uint64_t> rows = sample_dataset(m, cfg.n, rng);
        FrequencyTable t = FrequencyTable::from_rows(rows, cfg.d, {}, Exec::serial);
        if (t.completeness().complete || !cfg.discard_incomplete) {
            model = std::move(m);
            table = std::move(t);
            break;
        }
    }
    if (!model) {
        r.discarded = true;
        return r;
    }

    AdjacencyMatrix truth = true_adjacency(*model);
    auto t0 = std::chrono::steady_clock::now();
    DiscoveryResult res = discover(*table, {cfg.alpha, false, Exec::serial});
    r.ct_ms = ms_since(t0);
    r.er_o = er_o(truth, res.order);
    r.er_s = er_s(truth, res.adjacency());
    return r;
}

}  // namespace

TrialReport run_trials(const GeneratorConfig& config) {
    if (config.trials < 1) throw InputError("need at least one trial");
    if (config.n < 1) throw InputError("need at least one sample per trial");
    if (config.retry_cap < 1) throw InputError("retry cap must be positive");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw InputError("alpha must lie in (0, 1)");

    TrialReport rep;
    rep.d = config.d;
    rep.n = config.n;
    rep.seed = config.seed;
    rep.trials.resize(static_cast<std::size_t>(config.trials));
    int trials = config.trials;
    if (config.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t)
            rep.trials[static_cast<std::size_t>(t)] =
                run_one_trial(config, static_cast<std::uint64_t>(t));
    } else {
        for (int t = 0; t < trials; ++t)
            rep.trials[static_cast<std::size_t>(t)] =
                run_one_trial(config, static_cast<std::uint64_t>(t));
    }

    for (const TrialResult& r : rep.trials) {
        if (r.discarded) {
            ++rep.discarded;
            continue;
        }
        ++rep.scored;
        rep.mean_er_o += r.er_o;
        rep.mean_er_s += r.er_s;
        rep.mean_ct_ms += r.ct_ms;
    }
    if (rep.scored > 0) {
        rep.mean_er_o /= rep.scored;
        rep.mean_er_s /= rep.scored;
        rep.mean_ct_ms /= rep.scored;
    }
    return rep;
}

YStructureReport y_structure_experiment(std::int64_t n, int trials, double alpha,
                                        bool use_or, std::uint64_t seed) {
    if (n < 1) throw InputError("need at least one sample");
    if (trials < 1) throw InputError("need at least one trial");

    constexpr int kEdges[3][2] = {{2, 0}, {2, 1}, {3, 2}};
    YStructureReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
        std::optional<FrequencyTable> table;
        // redraw noise levels and data until the table is complete so every
        // trial contributes the same number of judgments
        for (int attempt = 0; attempt < 1000 && !table; ++attempt) {
            std::vector<double> noise(4);
            for (auto& p : noise) p = kNoiseLevels[rng.below(kNoiseLevels.size())];
            AnfFunction a = AnfFunction::variable(0);
            AnfFunction b = AnfFunction::variable(1);
            std::vector<AnfFunction> fs(4);
            fs[2] = use_or ? (a | b) : (a & b);
            fs[3] = AnfFunction::variable(2);
            BexsamModel model({0, 1, 2, 3}, std::move(fs), std::move(noise));
            auto rows = sample_dataset(model, n, rng);
            FrequencyTable ft = FrequencyTable::from_rows(rows, 4, {}, Exec::serial);
            if (ft.completeness().complete) table = std::move(ft);
        }
        if (!table) throw DiscoveryError("could not draw a complete dataset");

        DiscoveryResult res = discover(*table, {alpha, false, Exec::serial});
        AdjacencyMatrix est = res.adjacency();
        for (auto [i, j] : kEdges) {
            ++rep.directed_total;
            if (est.at(i, j)) ++rep.directed_correct;
        }
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                bool is_edge = false;
                for (auto [ei, ej] : kEdges) is_edge |= (i == ei && j == ej);
                if (is_edge) continue;
                ++rep.absent_total;
                if (!est.at(i, j)) ++rep.absent_correct;
            }
        }
    }
    return rep;
}

std::vector<GridCell> benchmark_grid(const GeneratorConfig& base,
                                     const std::vector<int>& ds,
                                     const std::vector<std::int64_t>& ns) {
    std::vector<GridCell> cells;
    for (std::int64_t n : ns) {
        for (int d : ds) {
            GridCell cell;
            cell.d = d;
            cell.n = n;
            if (d >= 63 || n < (std::int64_t{1} << d)) {
                cell.skipped = true;
            } else {
                GeneratorConfig cfg = base;
                cfg.d = d;
                cfg.n = n;
                cfg.seed = splitmix64(base.seed ^
                                      splitmix64((static_cast<std::uint64_t>(d) << 40) ^
                                                 static_cast<std::uint64_t>(n)));
                cell.report = run_trials(cfg);
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

namespace {

volatile std::uint64_t g_timing_sink = 0;

}  // namespace

std::vector<ScalingPoint> measure_scaling(const std::vector<int>& ds,
                                          const std::vector<std::int64_t>& ns,
                                          std::uint64_t seed) {
    std::vector<ScalingPoint> out;
    for (int d : ds) {
        GeneratorConfig cfg;
        cfg.d = d;
        cfg.p_coef = 0.5;
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(d));
        BexsamModel model = random_model(cfg, rng);
        JointDistribution joint = exact_joint(model, Exec::serial);

        for (std::int64_t n : ns) {
            ScalingPoint pt;
            pt.d = d;
            pt.n = n;
            if (n < (std::int64_t{1} << d)) {
                pt.skipped = true;
                out.push_back(pt);
                continue;
            }
            io::Dataset data;
            data.d = d;
            for (int i = 0; i < d; ++i) data.names.push_back("x" + std::to_string(i + 1));
            for (std::size_t c = 0; c < joint.probs.size(); ++c) {
                auto copies = std::llround(static_cast<double>(n) * joint.probs[c]);
                for (std::int64_t k = 0; k < copies; ++k)
                    data.rows.push_back(static_cast<std::uint64_t>(c));
            }
            std::ostringstream os;
            io::write_csv(os, data);
            std::string csv = os.str();

            auto run_once = [&csv]() {
                std::istringstream is(csv);
                io::Dataset in = io::read_csv(is);
                FrequencyTable t =
                    FrequencyTable::from_rows(in.rows, in.d, in.names, Exec::serial);
                DiscoveryResult res = discover(t, {0.05, false, Exec::serial});
                g_timing_sink = g_timing_sink + static_cast<std::uint64_t>(res.order[0]) + 1;
            };

            run_once();  // warm up and calibrate
            auto c0 = std::chrono::steady_clock::now();
            run_once();
            double once_ms = ms_since(c0);
            int reps = std::max(1, static_cast<int>(std::ceil(20.0 / std::max(0.001, once_ms))));
            double best = 0.0;
            for (int batch = 0; batch < 3; ++batch) {
                auto b0 = std::chrono::steady_clock::now();
                for (int k = 0; k < reps; ++k) run_once();
                double per = ms_since(b0) / reps;
                if (batch == 0 || per < best) best = per;
            }
            pt.ms = best;
            out.push_back(pt);
        }
    }
    return out;
}

}  // namespace bexsam
