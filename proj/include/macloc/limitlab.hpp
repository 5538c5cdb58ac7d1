#pragma once

#include "macloc/grassloc.hpp"
#include "macloc/macdonald.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace macloc {

inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Literal parsers

// Integer-coefficient Laurent polynomial in z, q, t, u: signed terms,
// '*' products, '^' powers (negative allowed), parentheses.  No division.
// Throws std::invalid_argument with the offending position.
VirtualChar parse_poly(const std::string& text, const Ctx& ctx);

// Symmetric-function literal: basis letter + partition, integer-coefficient
// sums of products, e.g. "e[1]*e[1] - 2*m[1,1]", "1", "h[2,1]".
SymFn<Rat> parse_symfn(const std::string& text);

// Kernel literal: "hall" (M = 1), "macdonald" (truncated (1-t)/(1-q)),
// or "poly: <Laurent polynomial>".
VirtualChar parse_kernel(const std::string& text, const Ctx& ctx);

// Partition literal "2,1"; "" or "0" is the empty partition.
Partition parse_partition(const std::string& text);

// Bundle-character spec "A=0;B=geom;C=-z": each side is "geom"
// (z + z^2 + ... to the window cap) or a Laurent-polynomial literal.
struct ESpec {
    std::string A = "0", B = "0", C = "0";
};
ESpec parse_espec(const std::string& text);
VirtualChar espec_char(const std::string& field, const Ctx& ctx);

// ---------------------------------------------------------------------------
// Experiment plumbing

struct ExperimentConfig {
    std::string kind;              // limit | norm-ns | norm-nsa | chi-gap | selftest
    int n = 2;
    std::string mu;                // partition literal
    std::string kernel = "macdonald";
    std::string f = "1";
    std::string espec = "A=0;B=geom;C=-z";
    int k = 2;                     // weight-set degree for chi-gap (Z = 1+z+...+z^k)
    int m_from = 0, m_to = 0;
    int zdeg = 16, qtdeg = 10, wdeg = 2;
    std::string format = "json";   // json | csv | text
    std::string out;               // output path; empty = stdout

    void validate() const;         // throws std::invalid_argument
};

struct CaseRecord {
    std::string label;
    int m = 0;
    nlohmann::ordered_json lhs;        // serialized series (or detail object)
    int first_disagreement = -1;       // -1 = not applicable
    bool at_cap = false;               // no disagreement visible in the window
    bool pass = true;
    double wall_sec = 0.0;
    std::string note;
};

struct ConvergenceReport {
    ExperimentConfig cfg;
    std::vector<CaseRecord> cases;
    nlohmann::ordered_json rhs;        // limit / reference series
    std::string verdict;
    bool pass = false;
    bool config_error = false;
    std::vector<std::string> errors;
};

nlohmann::ordered_json serialize_series(const TruncSeries& s);

ConvergenceReport run_limit_pairing(const ExperimentConfig& cfg);
ConvergenceReport run_norm_ns(const ExperimentConfig& cfg);
ConvergenceReport run_norm_nsa(const ExperimentConfig& cfg);
ConvergenceReport run_chi_gap(const ExperimentConfig& cfg);
ConvergenceReport run_selftest(const ExperimentConfig& cfg);
ConvergenceReport run_experiment(const ExperimentConfig& cfg); // dispatch on kind

// Renders per cfg.format; json is canonical, csv flattens per-case rows,
// text is human-oriented.  Deterministic for a fixed config.
std::string render_report(const ConvergenceReport& rep);

// Exit code per the CLI contract: 0 pass, 1 verification failure,
// 2 precondition/config error.
int report_exit_code(const ConvergenceReport& rep);

} // namespace macloc
