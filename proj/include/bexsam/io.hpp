#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bexsam/diagnostics.hpp"
#include "bexsam/discovery.hpp"
#include "bexsam/freq.hpp"
#include "bexsam/genbench.hpp"
#include "bexsam/model.hpp"

namespace bexsam::io {

// %.6g with a fixed buffer; all report numbers go through this
std::string fmt_g(double x);
// shortest round-trip representation (model probabilities, table weights)
std::string fmt_exact(double x);

// --- model files ---------------------------------------------------------
// d=<int>
// order=<comma-joined 1-based ids>
// var=<id> p=<float> anf=<monomial;...>
// A monomial is "1" for the constant term or '&'-joined 1-based ids; the
// single-variable monomial of x1 is written "1&1" to keep it distinct from
// the constant. "anf=0" is the constant-zero function.
BexsamModel read_model(std::istream& is);
void write_model(std::ostream& os, const BexsamModel& model);
BexsamModel read_model_file(const std::string& path);
void write_model_file(const std::string& path, const BexsamModel& model);

// --- frequency tables ----------------------------------------------------
// vars=<comma-joined names>
// <pattern>,<count>   pattern chars first-variable-leftmost; absent cells = 0
FrequencyTable read_table(std::istream& is);
void write_table(std::ostream& os, const FrequencyTable& table);
FrequencyTable read_table_file(const std::string& path);
void write_table_file(const std::string& path, const FrequencyTable& table);

// --- sample csv ----------------------------------------------------------
struct Dataset {
    int d = 0;
    std::vector<std::string> names;
    std::vector<std::uint64_t> rows;  // bit i = value of column i
};

// header of column names, then one 0/1 cell per column, comma-separated
Dataset read_csv(std::istream& is);
void write_csv(std::ostream& os, const Dataset& data);
Dataset read_csv_file(const std::string& path);
void write_csv_file(const std::string& path, const Dataset& data);

// a table file starts with its header keyword, a csv file with column names
bool looks_like_table(const std::string& content);
std::string slurp(const std::string& path);
void spill(const std::string& path, const std::string& content);

// --- rendering -----------------------------------------------------------
enum class Format { text, table };

std::string render_dot(const std::vector<std::string>& names,
                       const AdjacencyMatrix& adjacency);

// deterministic: depends only on the result and alpha, not on input paths
std::string render_discovery_report(const DiscoveryResult& result, double alpha,
                                    Format format);

std::string render_skew_report(const SkewReport& report, double tau, Format format);

std::string render_trials(const TrialReport& report, Format format,
                          bool include_timings);

std::string render_grid(const std::vector<GridCell>& cells, Format format,
                        bool include_timings);

}  // namespace bexsam::io
