#include "hopfbraid/axiom_report.hpp"

#include <algorithm>

namespace hopfbraid {

std::string Witness::describe() const {
    return "on input " + input + ", coefficient of " + output + ": lhs=" + lhs_value + " rhs=" + rhs_value;
}

void AxiomReport::append(const AxiomReport& other) {
    results_.insert(results_.end(), other.results_.begin(), other.results_.end());
}

bool AxiomReport::ok() const {
    return std::all_of(results_.begin(), results_.end(), [](const AxiomResult& r) { return r.holds; });
}

const AxiomResult* AxiomReport::find(const std::string& name) const {
    for (const auto& r : results_)
        if (r.name == name) return &r;
    return nullptr;
}

bool AxiomReport::holds(const std::string& name) const {
    const AxiomResult* r = find(name);
    if (!r) throw std::out_of_range("axiom not checked: " + name);
    return r->holds;
}

const AxiomResult* AxiomReport::first_failure() const {
    for (const auto& r : results_)
        if (!r.holds) return &r;
    return nullptr;
}

std::string AxiomReport::summary() const {
    std::string out;
    for (const auto& r : results_) {
        out += (r.holds ? "  ok    " : "  FAIL  ") + r.name;
        if (!r.note.empty()) out += " (" + r.note + ")";
        if (r.witness) out += ": " + r.witness->describe();
        out += "\n";
    }
    return out;
}

AxiomResult compare_maps(std::string name, const LinMap& lhs, const LinMap& rhs) {
    if (lhs.domain_dim() != rhs.domain_dim() || lhs.codomain_dim() != rhs.codomain_dim())
        throw DimensionMismatch("axiom '" + name + "': sides have different shapes " + describe(lhs.domain()) + " -> " +
                                describe(lhs.codomain()) + " vs " + describe(rhs.domain()) + " -> " +
                                describe(rhs.codomain()));
    AxiomResult res{std::move(name), true, std::nullopt, {}};
    auto diff = SparseMatrix::first_difference(lhs.matrix(), rhs.matrix());
    if (diff) {
        auto [row, col] = *diff;
        res.holds = false;
        res.witness = Witness{describe_basis(lhs.domain(), col), describe_basis(lhs.codomain(), row),
                              lhs.matrix().at(row, col).to_string(), rhs.matrix().at(row, col).to_string()};
    }
    return res;
}

AxiomFailure::AxiomFailure(AxiomReport report)
    : std::runtime_error("axiom check failed:\n" + report.summary()), report_(std::move(report)) {}

}  // namespace hopfbraid
