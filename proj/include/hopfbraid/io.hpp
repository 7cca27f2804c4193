#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopfbraid/braided_system.hpp"
#include "hopfbraid/homology.hpp"
#include "hopfbraid/rmatrix.hpp"

namespace hopfbraid::io {

using nlohmann::json;

// Malformed files, schema violations and inconsistent inputs. The message
// names the file and the offending field.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-fatal notes collected while loading, e.g. F_p coefficients reduced mod p.
struct Diagnostics {
    std::vector<std::string> warnings;
};

// Reads and parses a JSON file; parse errors carry line and column.
json read_json(const std::filesystem::path& path);
// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_text(const json& j);
void write_json(const std::filesystem::path& path, const json& j);

// {"kind":"Q"} or {"kind":"Fp","p":<prime>}
json field_to_json(const Field& f);
Field field_from_json(const json& j, const std::string& where);
// "Q" or "Fp:<p>", as accepted by --field
Field field_from_flag(const std::string& text);

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Field& f, const json& j, const std::string& where, Diagnostics& diag);

// Dense rows of scalar strings.
json matrix_to_json(const SparseMatrix& m);
SparseMatrix matrix_from_json(const Field& f, const json& j, std::size_t rows, std::size_t cols,
                              const std::string& where, Diagnostics& diag);

json space_to_json(const Space& s);

// Bialgebra: field, dim, basis, mul, unit, comul, counit, optional antipode
// and label.
json bialgebra_to_json(const Bialgebra& b);
Bialgebra bialgebra_from_json(const json& j, const std::string& where, Diagnostics& diag);
BialgebraRef load_bialgebra(const std::filesystem::path& path, Diagnostics& diag);

// How a module or R-matrix file names its bialgebra: a path relative to the
// file, or the bialgebra inline.
struct BaseReference {
    std::optional<std::string> path;
};

// A module file: action always, coaction for YD modules, mul/unit for YD
// module algebras.
struct ModuleFile {
    BialgebraRef base;
    Space space;
    LinMap action;
    std::optional<LinMap> coaction;
    std::optional<LinMap> mu;
    std::optional<LinMap> nu;

    HModule module() const { return {base, space, action}; }
    // InputError when the coaction is absent
    YDModule yd() const;
    // InputError when coaction, mul or unit is absent
    YDModuleAlgebra yd_algebra() const;
};

json module_to_json(const YDModule& m, const BaseReference& ref);
json module_to_json(const YDModuleAlgebra& m, const BaseReference& ref);
json module_to_json(const HModule& m, const BaseReference& ref);
ModuleFile module_from_json(const json& j, const std::filesystem::path& dir, const std::string& where,
                            Diagnostics& diag);
ModuleFile load_module(const std::filesystem::path& path, Diagnostics& diag);

json rmatrix_to_json(const RMatrix& r, const BaseReference& ref);
RMatrix rmatrix_from_json(const json& j, const std::filesystem::path& dir, const std::string& where,
                          Diagnostics& diag);
RMatrix load_rmatrix(const std::filesystem::path& path, Diagnostics& diag);

// components: [{dim, label, basis}], sigma: {"i,j": matrix} with 1-based i <= j.
json system_to_json(const BraidedSystem& s);
BraidedSystem system_from_json(const json& j, const std::string& where, Diagnostics& diag);
BraidedSystem load_system(const std::filesystem::path& path, Diagnostics& diag);

// {"field", "maps": [matrix...]} for a family of maps between two systems.
std::vector<LinMap> maps_from_json(const json& j, const BraidedSystem& from, const BraidedSystem& to,
                                   const std::string& where, Diagnostics& diag);
json maps_to_json(const Field& f, std::span<const LinMap> maps);

// {"elements": [names], "table": [[index]]}
MonoidTable monoid_from_json(const json& j, const std::string& where);
json monoid_to_json(const MonoidTable& t);

json homology_report_to_json(const HomologyReport& r, const Field& f, int line);

json axiom_report_to_json(const AxiomReport& r);

// Throws InputError unless `module_base` equals `expected`; on success returns
// `expected`, so modules loaded from separate files can share one base.
BialgebraRef require_same_base(const BialgebraRef& expected, const BialgebraRef& module_base, const std::string& what);

}  // namespace hopfbraid::io
