#include "bexsam/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "bexsam/errors.hpp"

namespace bexsam::io {

namespace {

std::vector<std::string> read_lines(std::istream& is) {
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(is, raw)) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        lines.push_back(raw);
    }
    return lines;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

long long parse_int(const std::string& tok, std::size_t ln) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError("expected an integer, got '" + tok + "'", ln);
    return v;
}

double parse_double(const std::string& tok, std::size_t ln) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError("expected a number, got '" + tok + "'", ln);
    return v;
}

std::string strip_prefix(const std::string& line, const std::string& prefix,
                         std::size_t ln) {
    if (line.rfind(prefix, 0) != 0)
        throw ParseError("expected '" + prefix + "...'", ln);
    return line.substr(prefix.size());
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

void require_unique_names(const std::vector<std::string>& names, std::size_t ln) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw ParseError("empty variable name", ln);
        if (!seen.insert(n).second)
            throw ParseError("duplicate variable name '" + n + "'", ln);
    }
}

std::string quote_dot(const std::string& name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

int index_of(const std::vector<int>& v, int x) {
    return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin());
}

}  // namespace

std::string fmt_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string fmt_exact(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, p);
}

// --- model files -----------------------------------------------------------

namespace {

std::string monomial_to_string(std::uint64_t mask) {
    if (mask == 0) return "1";
    if (mask == 1) return "1&1";  // lone x1, kept distinct from the constant
    std::vector<std::string> ids;
    for (int b = 0; b < 64; ++b)
        if ((mask >> b) & 1) ids.push_back(std::to_string(b + 1));
    return join(ids, "&");
}

std::string anf_to_string(const AnfFunction& f) {
    if (f.is_constant_zero()) return "0";
    std::vector<std::string> parts;
    for (std::uint64_t m : f.monomials()) parts.push_back(monomial_to_string(m));
    return join(parts, ";");
}

std::uint64_t parse_monomial(const std::string& tok, int d, std::size_t ln) {
    if (tok == "1") return 0;  // the constant term
    std::uint64_t mask = 0;
    for (const std::string& part : split(tok, '&')) {
        long long id = parse_int(part, ln);
        if (id < 1 || id > d)
            throw ParseError("variable id " + std::to_string(id) + " out of range", ln);
        mask |= std::uint64_t{1} << (id - 1);
    }
    return mask;
}

AnfFunction parse_anf(const std::string& spec, int d, std::size_t ln) {
    if (spec == "0") return AnfFunction();
    if (spec.empty()) throw ParseError("empty function spec", ln);
    std::vector<std::uint64_t> monomials;
    std::set<std::uint64_t> seen;
    for (const std::string& tok : split(spec, ';')) {
        std::uint64_t m = parse_monomial(tok, d, ln);
        if (!seen.insert(m).second)
            throw ParseError("duplicate monomial '" + tok + "'", ln);
        monomials.push_back(m);
    }
    return AnfFunction(std::move(monomials));
}

}  // namespace

BexsamModel read_model(std::istream& is) {
    std::vector<std::string> lines = read_lines(is);
    if (lines.size() < 2) throw ParseError("model file needs a d= and an order= line", 1);

    long long d = parse_int(strip_prefix(lines[0], "d=", 1), 1);
    if (d < 1 || d > 63) throw ParseError("d must lie in [1, 63]", 1);

    std::vector<std::string> order_toks = split(strip_prefix(lines[1], "order=", 2), ',');
    if (static_cast<long long>(order_toks.size()) != d)
        throw ParseError("order must list exactly d variables", 2);
    std::vector<int> order;
    std::vector<int> position(static_cast<std::size_t>(d), -1);
    for (const auto& tok : order_toks) {
        long long id = parse_int(tok, 2);
        if (id < 1 || id > d) throw ParseError("order id out of range", 2);
        if (position[static_cast<std::size_t>(id - 1)] != -1)
            throw ParseError("order repeats variable " + std::to_string(id), 2);
        position[static_cast<std::size_t>(id - 1)] = static_cast<int>(order.size());
        order.push_back(static_cast<int>(id - 1));
    }

    if (lines.size() != static_cast<std::size_t>(2 + d))
        throw ParseError("expected exactly d var lines",
                         lines.size() < static_cast<std::size_t>(2 + d)
                             ? lines.size() + 1
                             : static_cast<std::size_t>(2 + d) + 1);

    std::vector<AnfFunction> functions(static_cast<std::size_t>(d));
    std::vector<double> probs(static_cast<std::size_t>(d), 0.0);
    std::vector<bool> present(static_cast<std::size_t>(d), false);
    for (std::size_t k = 0; k < static_cast<std::size_t>(d); ++k) {
        std::size_t ln = 3 + k;
        std::vector<std::string> fields = split(lines[2 + k], ' ');
        if (fields.size() != 3)
            throw ParseError("expected 'var=<id> p=<float> anf=<spec>'", ln);
        long long id = parse_int(strip_prefix(fields[0], "var=", ln), ln);
        if (id < 1 || id > d) throw ParseError("var id out of range", ln);
        std::size_t i = static_cast<std::size_t>(id - 1);
        if (present[i])
            throw ParseError("variable " + std::to_string(id) + " appears twice", ln);
        present[i] = true;

        double p = parse_double(strip_prefix(fields[1], "p=", ln), ln);
        if (!(p > 0.0 && p < 1.0))
            throw ParseError("p must lie strictly between 0 and 1", ln);
        if (p == 0.5) throw ParseError("p=0.5 makes the variable unidentifiable", ln);
        probs[i] = p;

        AnfFunction f = parse_anf(strip_prefix(fields[2], "anf=", ln),
                                  static_cast<int>(d), ln);
        std::uint64_t sup = f.support();
        for (int b = 0; b < static_cast<int>(d); ++b)
            if (((sup >> b) & 1) &&
                position[static_cast<std::size_t>(b)] >=
                    position[static_cast<std::size_t>(id - 1)])
                throw ParseError("function of variable " + std::to_string(id) +
                                     " reads variable " + std::to_string(b + 1) +
                                     " which is not earlier in the order",
                                 ln);
        functions[i] = std::move(f);
    }
    return BexsamModel(std::move(order), std::move(functions), std::move(probs));
}

void write_model(std::ostream& os, const BexsamModel& model) {
    os << "d=" << model.dim() << "\n";
    std::vector<std::string> ids;
    for (int v : model.order()) ids.push_back(std::to_string(v + 1));
    os << "order=" << join(ids, ",") << "\n";
    for (int i = 0; i < model.dim(); ++i)
        os << "var=" << i + 1 << " p=" << fmt_exact(model.noise_prob(i))
           << " anf=" << anf_to_string(model.function_of(i)) << "\n";
}

BexsamModel read_model_file(const std::string& path) {
    std::istringstream is(slurp(path));
    return read_model(is);
}

void write_model_file(const std::string& path, const BexsamModel& model) {
    std::ostringstream os;
    write_model(os, model);
    spill(path, os.str());
}

// --- frequency tables ------------------------------------------------------

FrequencyTable read_table(std::istream& is) {
    std::vector<std::string> lines = read_lines(is);
    if (lines.empty()) throw ParseError("table file is empty", 1);
    std::vector<std::string> names = split(strip_prefix(lines[0], "vars=", 1), ',');
    require_unique_names(names, 1);
    int m = static_cast<int>(names.size());
    if (m > 24) throw CapacityError("dense tables support 1 to 24 variables");

    std::vector<double> weights(std::size_t{1} << m, 0.0);
    std::vector<bool> seen(weights.size(), false);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::size_t ln = k + 1;
        std::vector<std::string> fields = split(lines[k], ',');
        if (fields.size() != 2) throw ParseError("expected '<pattern>,<count>'", ln);
        const std::string& pat = fields[0];
        if (static_cast<int>(pat.size()) != m)
            throw ParseError("pattern must have one character per variable", ln);
        std::uint64_t cell = 0;
        for (int b = 0; b < m; ++b) {
            if (pat[static_cast<std::size_t>(b)] == '1')
                cell |= std::uint64_t{1} << b;
            else if (pat[static_cast<std::size_t>(b)] != '0')
                throw ParseError("pattern characters must be 0 or 1", ln);
        }
        if (seen[cell]) throw ParseError("duplicate pattern '" + pat + "'", ln);
        seen[cell] = true;
        double c = parse_double(fields[1], ln);
        if (!(c >= 0.0)) throw ParseError("counts must be nonnegative", ln);
        weights[cell] = c;
    }
    std::vector<int> live(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b) live[static_cast<std::size_t>(b)] = b;
    return FrequencyTable::from_weights(std::move(live), std::move(weights),
                                        std::move(names));
}

void write_table(std::ostream& os, const FrequencyTable& table) {
    os << "vars=" << join(table.names(), ",") << "\n";
    int m = table.live_count();
    for (std::uint64_t cell = 0; cell < table.counts().size(); ++cell) {
        double c = table.count(cell);
        if (!(c > 0.0)) continue;
        std::string pat(static_cast<std::size_t>(m), '0');
        for (int b = 0; b < m; ++b)
            if ((cell >> b) & 1) pat[static_cast<std::size_t>(b)] = '1';
        os << pat << "," << fmt_exact(c) << "\n";
    }
}

FrequencyTable read_table_file(const std::string& path) {
    std::istringstream is(slurp(path));
    return read_table(is);
}

void write_table_file(const std::string& path, const FrequencyTable& table) {
    std::ostringstream os;
    write_table(os, table);
    spill(path, os.str());
}

// --- sample csv -------------------------------------------------------------

Dataset read_csv(std::istream& is) {
    std::vector<std::string> lines = read_lines(is);
    if (lines.empty()) throw ParseError("csv file is empty", 1);
    Dataset data;
    data.names = split(lines[0], ',');
    require_unique_names(data.names, 1);
    data.d = static_cast<int>(data.names.size());
    if (data.d > 63) throw CapacityError("csv supports at most 63 variables");

    data.rows.reserve(lines.size() - 1);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::size_t ln = k + 1;
        std::vector<std::string> fields = split(lines[k], ',');
        if (static_cast<int>(fields.size()) != data.d)
            throw ParseError("expected one value per column", ln);
        std::uint64_t row = 0;
        for (int b = 0; b < data.d; ++b) {
            const std::string& f = fields[static_cast<std::size_t>(b)];
            if (f == "1")
                row |= std::uint64_t{1} << b;
            else if (f != "0")
                throw ParseError("cells must be 0 or 1, got '" + f + "'", ln);
        }
        data.rows.push_back(row);
    }
    return data;
}

void write_csv(std::ostream& os, const Dataset& data) {
    if (static_cast<int>(data.names.size()) != data.d)
        throw InputError("need one name per column");
    os << join(data.names, ",") << "\n";
    for (std::uint64_t row : data.rows) {
        for (int b = 0; b < data.d; ++b) {
            if (b) os << ',';
            os << (((row >> b) & 1) ? '1' : '0');
        }
        os << "\n";
    }
}

Dataset read_csv_file(const std::string& path) {
    std::istringstream is(slurp(path));
    return read_csv(is);
}

void write_csv_file(const std::string& path, const Dataset& data) {
    std::ostringstream os;
    write_csv(os, data);
    spill(path, os.str());
}

bool looks_like_table(const std::string& content) {
    return content.rfind("vars=", 0) == 0;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << content;
    f.flush();
    if (!f) throw InputError("failed writing " + path);
}

// --- rendering ---------------------------------------------------------------

std::string render_dot(const std::vector<std::string>& names,
                       const AdjacencyMatrix& adjacency) {
    if (static_cast<int>(names.size()) != adjacency.d)
        throw InputError("need one name per variable");
    std::string out = "digraph g {\n";
    for (const auto& n : names) out += "  " + quote_dot(n) + ";\n";
    for (int i = 0; i < adjacency.d; ++i)
        for (int j = 0; j < adjacency.d; ++j)
            if (adjacency.at(i, j))
                out += "  " + quote_dot(names[static_cast<std::size_t>(j)]) + " -> " +
                       quote_dot(names[static_cast<std::size_t>(i)]) + ";\n";
    out += "}\n";
    return out;
}

namespace {

std::string name_of(const DiscoveryResult& r, int var) {
    return r.names[static_cast<std::size_t>(index_of(r.vars, var))];
}

std::string name_list(const DiscoveryResult& r, const std::vector<int>& vars,
                      const std::string& sep) {
    std::vector<std::string> names;
    for (int v : vars) names.push_back(name_of(r, v));
    return join(names, sep);
}

}  // namespace

std::string render_discovery_report(const DiscoveryResult& result, double alpha,
                                    Format format) {
    std::string out;
    if (format == Format::table) {
        out += "order," + name_list(result, result.order, ";") + "\n";
        out += "child,parents\n";
        for (std::size_t i = 0; i < result.vars.size(); ++i)
            out += result.names[i] + "," +
                   name_list(result, result.parents[i], ";") + "\n";
        return out;
    }
    out += "variables: " + join(result.names, " ") + "\n";
    out += "complete: " + std::string(result.complete_input ? "yes" : "no") + "\n";
    out += "alpha: " + fmt_g(alpha) + "\n";
    out += "causal order: " + name_list(result, result.order, " ") + "\n";
    int edges = 0;
    out += "parents:\n";
    for (std::size_t i = 0; i < result.vars.size(); ++i) {
        const auto& ps = result.parents[i];
        edges += static_cast<int>(ps.size());
        out += "  " + result.names[i] + " <- " +
               (ps.empty() ? "(none)" : name_list(result, ps, " ")) + "\n";
    }
    out += "edges: " + std::to_string(edges) + "\n";
    for (std::size_t s = 0; s < result.steps.size(); ++s) {
        const StepDiagnostics& step = result.steps[s];
        out += "step " + std::to_string(s + 1) + ": sink=" + name_of(result, step.sink);
        std::string score = "-";
        for (const SinkScore& sc : step.scores)
            if (sc.var == step.sink) score = fmt_g(sc.score);
        out += " score=" + score;
        if (!step.tests.empty()) {
            out += " min_p:";
            for (const ParentTest& pt : step.tests) {
                double best = 2.0;
                for (const ControlTest& ct : pt.controls)
                    if (!ct.skipped && ct.p_value < best) best = ct.p_value;
                out += " " + name_of(result, pt.candidate) + "=" +
                       (pt.undecidable ? "-" : fmt_g(best));
            }
        }
        std::vector<int> parents;
        for (const ParentTest& pt : step.tests)
            if (pt.is_parent) parents.push_back(pt.candidate);
        std::sort(parents.begin(), parents.end());
        out += " parents: " +
               (parents.empty() ? "(none)" : name_list(result, parents, " ")) + "\n";
    }
    return out;
}

std::string render_skew_report(const SkewReport& report, double tau, Format format) {
    std::string out;
    if (format == Format::table) {
        out += "var,p_hat,skewed,degenerate\n";
        for (const SkewEntry& e : report.entries)
            out += e.name + "," + fmt_g(e.p_hat) + "," + (e.skewed ? "1" : "0") + "," +
                   (e.degenerate ? "1" : "0") + "\n";
        return out;
    }
    out += "tau: " + fmt_g(tau) + "\n";
    std::size_t w = 3;
    for (const SkewEntry& e : report.entries) w = std::max(w, e.name.size());
    out += "var" + std::string(w - 3, ' ') + "  p_hat     skewed  degenerate\n";
    bool small_marginal = false;
    for (const SkewEntry& e : report.entries) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-*s  %-8s  %-6s  %s\n", static_cast<int>(w),
                      e.name.c_str(), fmt_g(e.p_hat).c_str(), e.skewed ? "yes" : "NO",
                      e.degenerate ? "yes" : "no");
        out += buf;
        if (e.p_hat > 0.0 && e.p_hat <= 0.25) small_marginal = true;
    }
    out += std::string("all_ok: ") + (report.all_ok ? "yes" : "no") + "\n";
    if (small_marginal)
        out += "note: some marginals are small; x = e XOR f and x = e OR f then have "
               "nearly equal marginals (gap p_e*p_f), so the noise placement is hard "
               "to tell apart from counts alone\n";
    return out;
}

std::string render_trials(const TrialReport& report, Format format,
                          bool include_timings) {
    std::string out;
    if (format == Format::table) {
        out += std::string("trial,er_o,er_s,") + (include_timings ? "ct_ms," : "") +
               "discarded\n";
        for (const TrialResult& t : report.trials) {
            out += std::to_string(t.trial) + "," + fmt_g(t.er_o) + "," + fmt_g(t.er_s);
            if (include_timings) out += "," + fmt_g(t.ct_ms);
            out += std::string(",") + (t.discarded ? "1" : "0") + "\n";
        }
    }
    out += "d," + std::to_string(report.d) + "\n";
    out += "n," + std::to_string(report.n) + "\n";
    out += "seed," + std::to_string(report.seed) + "\n";
    out += "trials," + std::to_string(report.trials.size()) + "\n";
    out += "scored," + std::to_string(report.scored) + "\n";
    out += "discarded," + std::to_string(report.discarded) + "\n";
    out += "mean_er_o," + fmt_g(report.mean_er_o) + "\n";
    out += "mean_er_s," + fmt_g(report.mean_er_s) + "\n";
    if (include_timings) out += "mean_ct_ms," + fmt_g(report.mean_ct_ms) + "\n";
    return out;
}

std::string render_grid(const std::vector<GridCell>& cells, Format format,
                        bool include_timings) {
    if (format == Format::table) {
        std::string out = std::string("n,d,skipped,trials,scored,discarded,") +
                          "mean_er_o,mean_er_s" + (include_timings ? ",mean_ct_ms" : "") +
                          "\n";
        for (const GridCell& c : cells) {
            out += std::to_string(c.n) + "," + std::to_string(c.d) + ",";
            if (c.skipped) {
                out += "1,0,0,0,,";
                if (include_timings) out += ",";
            } else {
                out += "0," + std::to_string(c.report.trials.size()) + "," +
                       std::to_string(c.report.scored) + "," +
                       std::to_string(c.report.discarded) + "," +
                       fmt_g(c.report.mean_er_o) + "," + fmt_g(c.report.mean_er_s);
                if (include_timings) out += "," + fmt_g(c.report.mean_ct_ms);
            }
            out += "\n";
        }
        return out;
    }

    std::vector<int> ds;
    std::vector<std::int64_t> ns;
    for (const GridCell& c : cells) {
        if (std::find(ds.begin(), ds.end(), c.d) == ds.end()) ds.push_back(c.d);
        if (std::find(ns.begin(), ns.end(), c.n) == ns.end()) ns.push_back(c.n);
    }
    auto cell_text = [&](const GridCell& c) -> std::string {
        if (c.skipped) return "-";
        std::string s = fmt_g(c.report.mean_er_o) + "/" + fmt_g(c.report.mean_er_s);
        if (include_timings) s += "/" + fmt_g(c.report.mean_ct_ms) + "ms";
        return s;
    };

    std::vector<std::vector<std::string>> table;
    std::vector<std::string> head{"n\\d"};
    for (int d : ds) head.push_back(std::to_string(d));
    table.push_back(head);
    for (std::int64_t n : ns) {
        std::vector<std::string> row{std::to_string(n)};
        for (int d : ds) {
            std::string s = "-";
            for (const GridCell& c : cells)
                if (c.d == d && c.n == n) s = cell_text(c);
            row.push_back(s);
        }
        table.push_back(row);
    }

    std::vector<std::size_t> widths(table[0].size(), 0);
    for (const auto& row : table)
        for (std::size_t k = 0; k < row.size(); ++k)
            widths[k] = std::max(widths[k], row[k].size());
    std::string out;
    for (const auto& row : table) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += "  ";
            out += std::string(widths[k] - row[k].size(), ' ') + row[k];
        }
        out += "\n";
    }
    return out;
}

}  // namespace bexsam::io
