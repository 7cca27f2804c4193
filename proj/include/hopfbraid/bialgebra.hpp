#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfbraid/axiom_report.hpp"
#include "hopfbraid/tensor.hpp"

namespace hopfbraid {

// Structure maps by matrices: mu: H(x)H -> H, nu: k -> H, delta: H -> H(x)H,
// eps: H -> k, and optionally the antipode s: H -> H.
struct Bialgebra {
    Space space;
    LinMap mu;
    LinMap nu;
    LinMap delta;
    LinMap eps;
    std::optional<LinMap> antipode;

    const Field& field() const { return mu.field(); }
    std::size_t dim() const { return space.dim; }

    friend bool operator==(const Bialgebra& a, const Bialgebra& b);
};

using BialgebraRef = std::shared_ptr<const Bialgebra>;

// Builds the maps from structure constants:
// mul[i][j][k] = coefficient of e_k in e_i e_j,
// comul[i][j][k] = coefficient of e_j (x) e_k in delta(e_i),
// antipode[i][j] = coefficient of e_j in s(e_i).
Bialgebra bialgebra_from_constants(const Field& field, Space space,
                                   const std::vector<std::vector<std::vector<Scalar>>>& mul,
                                   const std::vector<Scalar>& unit,
                                   const std::vector<std::vector<std::vector<Scalar>>>& comul,
                                   const std::vector<Scalar>& counit,
                                   const std::optional<std::vector<std::vector<Scalar>>>& antipode = std::nullopt);

enum class BialgebraLevel { Algebra, Coalgebra, Bialgebra, Hopf };

AxiomReport check_bialgebra(const Bialgebra& b, BialgebraLevel level);

// Associativity and unit of an arbitrary (mu, nu) on `space`.
AxiomReport check_uaa(const Space& space, const LinMap& mu, const LinMap& nu);

// Solves mu(s (x) id)delta = nu eps for s, then checks mu(id (x) s)delta = nu eps.
// `diagnostic` receives a reason when the result is absent.
std::optional<LinMap> solve_antipode(const Bialgebra& b, std::string* diagnostic = nullptr);

Bialgebra dual_bialgebra(const Bialgebra& b);

struct Opposites {
    LinMap mu_op;
    LinMap delta_op;
};
Opposites opposites(const Bialgebra& b);

// Multiplication of H(x)H: (mu (x) mu)(id (x) flip (x) id).
LinMap mu_tensor_square(const Bialgebra& b);

// Multiplication table of a finite monoid on elements 0..n-1.
struct MonoidTable {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> product;  // product[a][b] = a*b

    std::size_t size() const { return names.size(); }
};

// Raises std::invalid_argument naming the failed axiom.
std::size_t monoid_identity(const MonoidTable& t);
void validate_monoid(const MonoidTable& t);
void validate_group(const MonoidTable& t);
std::size_t group_inverse(const MonoidTable& t, std::size_t g);

MonoidTable cyclic_group(std::size_t n);
MonoidTable symmetric_group_s3();
MonoidTable dihedral_group_d4();

Bialgebra group_algebra(const Field& field, const MonoidTable& table);
Bialgebra monoid_algebra(const Field& field, const MonoidTable& table);

}  // namespace hopfbraid
