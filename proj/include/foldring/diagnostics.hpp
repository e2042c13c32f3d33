#pragma once

// Findings and error types shared by every module.
//
// Two failure channels are kept apart on purpose:
//   * exceptions (parameter_error, dimension_error, surgery_error) signal
//     inputs that are structurally unusable -- wrong shapes, impossible
//     dimension combinations, invalid surgery data.  The CLI maps these to
//     exit code 2.
//   * findings collected in a Report signal semantic defects in otherwise
//     well-formed data -- a ring that fails associativity, a homology table
//     out of step with its ring.  The CLI maps a nonempty report to exit
//     code 1.  An empty report means "verified".

#include <stdexcept>
#include <string>
#include <vector>

namespace foldring {

// Structurally unusable input: bad lengths, non-symmetric forms, bad flags.
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Shape mismatch in an algebraic operation (matrix/class dimensions).
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A surgery step whose preconditions fail; the message names the violated
// relation.
struct surgery_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One semantic defect.  `code` is a stable machine-readable tag, `detail`
// names the offending elements in human-readable form.
struct Finding {
    std::string code;
    std::string detail;
};

inline bool operator==(const Finding& x, const Finding& y) {
    return x.code == y.code && x.detail == y.detail;
}

// A verification result: defects plus informational notes.  Notes never
// affect the verdict; they record conventions the checker applied.
struct Report {
    std::vector<Finding> findings;
    std::vector<std::string> notes;

    bool ok() const { return findings.empty(); }

    void add(std::string code, std::string detail) {
        findings.push_back(Finding{std::move(code), std::move(detail)});
    }

    void note(std::string text) { notes.push_back(std::move(text)); }

    void merge(const Report& other) {
        findings.insert(findings.end(), other.findings.begin(), other.findings.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    }
};

inline std::string format_report(const Report& report) {
    std::string out;
    for (const auto& f : report.findings) {
        out += f.code;
        out += ": ";
        out += f.detail;
        out += '\n';
    }
    return out;
}

} // namespace foldring
