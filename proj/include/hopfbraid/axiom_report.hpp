#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfbraid/tensor.hpp"

namespace hopfbraid {

// A basis input on which two maps disagree, and the first output coordinate
// where they differ.
struct Witness {
    std::string input;
    std::string output;
    std::string lhs_value;
    std::string rhs_value;

    std::string describe() const;
};

struct AxiomResult {
    std::string name;
    bool holds = true;
    std::optional<Witness> witness;
    std::string note;
};

class AxiomReport {
public:
    void add(AxiomResult result) { results_.push_back(std::move(result)); }
    void append(const AxiomReport& other);

    bool ok() const;
    const std::vector<AxiomResult>& results() const { return results_; }
    // nullptr when no axiom of that name was checked
    const AxiomResult* find(const std::string& name) const;
    bool holds(const std::string& name) const;
    const AxiomResult* first_failure() const;

    std::string summary() const;

private:
    std::vector<AxiomResult> results_;
};

// Compares lhs and rhs (same shape) and records a witness on mismatch.
AxiomResult compare_maps(std::string name, const LinMap& lhs, const LinMap& rhs);

// Thrown by constructors whose postconditions are verified.
class AxiomFailure : public std::runtime_error {
public:
    explicit AxiomFailure(AxiomReport report);
    const AxiomReport& report() const { return report_; }

private:
    AxiomReport report_;
};

}  // namespace hopfbraid
