#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lt/prover.hpp"

namespace lt {

const std::map<std::string, std::string>& embedded_files();
const std::string& embedded_file(const std::string& name);

// One line per theorem: label|formula|status[|effort|subproblems|substitutions].
// Blank lines and lines starting with '#' are skipped; the first line may be the header.
struct ReportRow {
    std::string label;
    std::string formula;
    std::string status;  // "proved" or "unproved"
    std::optional<Statistics> stats;
};

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<ReportRow> parse_report(const std::string& text);
const std::vector<ReportRow>& builtin_corpus();

struct BatchReport {
    std::vector<ProofResult> results;

    int proved() const;
    int unproved() const { return static_cast<int>(results.size()) - proved(); }
    std::string summary() const;  // "N proved / M unproved"
    std::vector<ReportRow> rows() const;
};

// Proves in order; each proved theorem joins the store before the next attempt.
BatchReport run_batch(Prover& prover, TheoremStore& store, const std::vector<ReportRow>& theorems);

std::string format_report(const std::vector<ReportRow>& rows);

// Compares label, formula and status; returns one line per difference.
std::vector<std::string> diff_reports(const std::vector<ReportRow>& expected, const std::vector<ReportRow>& actual);

}  // namespace lt
