#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bexsam/diagnostics.hpp"
#include "bexsam/discovery.hpp"
#include "bexsam/errors.hpp"
#include "bexsam/genbench.hpp"
#include "bexsam/io.hpp"

namespace {

using namespace bexsam;

io::Format parse_format(const std::string& s) {
    if (s == "text") return io::Format::text;
    if (s == "table") return io::Format::table;
    throw InputError("--format must be text or table");
}

// --seed wins, then BEXSAM_SEED, then 0
std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed) {
    if (seed_given) return seed;
    const char* env = std::getenv("BEXSAM_SEED");
    if (!env || !*env) return 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw InputError("BEXSAM_SEED must be an unsigned integer");
    return v;
}

std::variant<std::monostate, double, std::vector<double>> parse_noise(
    const std::string& spec) {
    if (spec.empty()) return std::monostate{};
    std::vector<double> vals;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw InputError("--noise expects numbers, got '" + tok + "'");
        vals.push_back(v);
    }
    if (vals.empty()) throw InputError("--noise must not be empty");
    if (vals.size() == 1) return vals[0];
    return vals;
}

FrequencyTable load_table(const std::string& path) {
    std::string content = io::slurp(path);
    std::istringstream is(content);
    if (io::looks_like_table(content)) return io::read_table(is);
    io::Dataset data = io::read_csv(is);
    return FrequencyTable::from_rows(data.rows, data.d, data.names);
}

struct Args {
    int d = 4;
    bool d_given = false;
    std::int64_t n = 1000;
    bool n_given = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double alpha = 0.05;
    int trials = 100;
    std::optional<double> p_coef;
    std::string noise;
    bool allow_fair = false;
    bool strict = false;
    std::string out;
    std::string graph_out;
    std::string format = "text";
    double tau = 0.02;
    std::string input;
};

int run_generate(const Args& a) {
    GeneratorConfig cfg;
    cfg.d = a.d;
    cfg.n = a.n;
    cfg.seed = resolve_seed(a.seed_given, a.seed);
    cfg.p_coef = a.p_coef;
    cfg.noise = parse_noise(a.noise);
    if (a.out.empty()) throw InputError("generate needs --out <prefix>");

    Rng rng(cfg.seed);
    BexsamModel model = random_model(cfg, rng);
    for (const auto& w : model.warnings()) std::cerr << "warning: " << w << "\n";
    std::vector<std::uint64_t> rows = sample_dataset(model, cfg.n, rng);

    std::string model_path = a.out + ".model";
    std::string csv_path = a.out + ".csv";
    io::write_model_file(model_path, model);
    io::Dataset data;
    data.d = cfg.d;
    for (int i = 0; i < cfg.d; ++i) data.names.push_back("x" + std::to_string(i + 1));
    data.rows = std::move(rows);
    io::write_csv_file(csv_path, data);

    FrequencyTable t = FrequencyTable::from_rows(data.rows, data.d, data.names);
    auto comp = t.completeness();
    if (!comp.complete)
        std::cerr << "warning: dataset leaves " << comp.missing.size()
                  << " pattern(s) unobserved\n";
    std::cout << "model: " << model_path << "\n";
    std::cout << "samples: " << csv_path << "\n";
    return 0;
}

int run_discover(const Args& a) {
    FrequencyTable table = load_table(a.input);
    DiscoverOptions opts;
    opts.alpha = a.alpha;
    opts.strict_completeness = a.strict;
    DiscoveryResult res = discover(table, opts);
    std::string report = io::render_discovery_report(res, a.alpha, parse_format(a.format));
    std::cout << report;
    if (!a.out.empty()) io::spill(a.out, report);
    if (!a.graph_out.empty())
        io::spill(a.graph_out, io::render_dot(res.names, res.adjacency()));
    return 0;
}

int run_benchmark(const Args& a) {
    std::vector<int> ds = a.d_given ? std::vector<int>{a.d}
                                    : std::vector<int>{2, 4, 6, 8, 10};
    std::vector<std::int64_t> ns =
        a.n_given ? std::vector<std::int64_t>{a.n}
                  : std::vector<std::int64_t>{1000, 10000, 100000};
    GeneratorConfig base;
    base.seed = resolve_seed(a.seed_given, a.seed);
    base.alpha = a.alpha;
    base.trials = a.trials;
    base.p_coef = a.p_coef;
    base.noise = parse_noise(a.noise);
    base.allow_fair_noise = a.allow_fair;
    std::vector<GridCell> cells = benchmark_grid(base, ds, ns);
    std::string report = io::render_grid(cells, parse_format(a.format), true);
    std::cout << report;
    if (!a.out.empty()) io::spill(a.out, report);
    return 0;
}

int run_skew_check(const Args& a) {
    FrequencyTable table = load_table(a.input);
    SkewReport rep = skewness_check(table, a.tau);
    std::cout << io::render_skew_report(rep, a.tau, parse_format(a.format));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary structural causal discovery toolkit"};
    app.require_subcommand(1);
    Args a;

    CLI::App* gen = app.add_subcommand("generate", "draw a random model and dataset");
    gen->add_option("--d", a.d, "number of variables")->check(CLI::Range(1, 20));
    gen->add_option("--n", a.n, "number of samples")->check(CLI::PositiveNumber);
    auto* gen_seed = gen->add_option("--seed", a.seed, "rng seed");
    gen->add_option("--p-coef", a.p_coef, "monomial inclusion probability");
    gen->add_option("--noise", a.noise, "noise probability, single value or comma list");
    gen->add_option("--out", a.out, "output path prefix")->required();

    CLI::App* dis = app.add_subcommand("discover", "estimate order and parent sets");
    dis->add_option("input", a.input, "csv dataset or frequency table")->required();
    dis->add_option("--alpha", a.alpha, "test level");
    dis->add_flag("--strict", a.strict, "fail on incomplete datasets");
    dis->add_option("--out", a.out, "also write the report here");
    dis->add_option("--graph-out", a.graph_out, "write the graph in dot form");
    dis->add_option("--format", a.format, "text or table");

    CLI::App* ben = app.add_subcommand("benchmark", "error rates over random models");
    ben->add_option("--d", a.d, "single dimension instead of the default grid")
        ->check(CLI::Range(1, 20));
    ben->add_option("--n", a.n, "single sample count instead of the default grid")
        ->check(CLI::PositiveNumber);
    auto* ben_seed = ben->add_option("--seed", a.seed, "rng seed");
    ben->add_option("--trials", a.trials, "trials per cell")->check(CLI::PositiveNumber);
    ben->add_option("--alpha", a.alpha, "test level");
    ben->add_option("--p-coef", a.p_coef, "monomial inclusion probability");
    ben->add_option("--noise", a.noise, "noise probability, single value or comma list");
    ben->add_flag("--allow-fair-noise", a.allow_fair,
                  "permit noise exactly 0.5 to probe the unidentifiable point");
    ben->add_option("--out", a.out, "also write the report here");
    ben->add_option("--format", a.format, "text or table");

    CLI::App* skw = app.add_subcommand("skew-check", "marginal skewness diagnostics");
    skw->add_option("input", a.input, "csv dataset or frequency table")->required();
    skw->add_option("--tau", a.tau, "minimum distance from 0.5");
    skw->add_option("--format", a.format, "text or table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    a.d_given = ben->count("--d") > 0 || gen->count("--d") > 0;
    a.n_given = ben->count("--n") > 0 || gen->count("--n") > 0;
    a.seed_given = gen_seed->count() > 0 || ben_seed->count() > 0;

    try {
        if (app.got_subcommand(gen)) return run_generate(a);
        if (app.got_subcommand(dis)) return run_discover(a);
        if (app.got_subcommand(ben)) return run_benchmark(a);
        return run_skew_check(a);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CompletenessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}
