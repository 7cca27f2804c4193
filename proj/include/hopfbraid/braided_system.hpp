#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hopfbraid/yd_module.hpp"

namespace hopfbraid {

// Ordered components V_0..V_{r-1} with sigma(i, j): V_i (x) V_j -> V_j (x) V_i
// for every i <= j. Indices are 0-based here.
class BraidedSystem {
public:
    using Key = std::pair<std::size_t, std::size_t>;

    // Checks that every sigma(i, j), i <= j, is present with the right shape.
    BraidedSystem(std::vector<Space> components, std::map<Key, LinMap> sigma);

    std::size_t rank() const { return components_.size(); }
    const std::vector<Space>& components() const { return components_; }
    const Space& component(std::size_t i) const { return components_.at(i); }
    const LinMap& sigma(std::size_t i, std::size_t j) const;
    const std::map<Key, LinMap>& sigmas() const { return sigma_; }
    void set_sigma(std::size_t i, std::size_t j, LinMap map);
    const Field& field() const { return sigma_.begin()->second.field(); }

private:
    std::vector<Space> components_;
    std::map<Key, LinMap> sigma_;
};

// Number of cYBE instances i <= j <= k for rank r.
std::size_t cybe_instance_count(std::size_t rank);

// (s_jk (x) Id)(Id (x) s_ik)(s_ij (x) Id) = (Id (x) s_ij)(s_ik (x) Id)(Id (x) s_jk)
// on V_i (x) V_j (x) V_k. Named "cYBE i,j,k A(x)B(x)C" with 1-based indices.
AxiomResult cybe_instance(const BraidedSystem& s, std::size_t i, std::size_t j, std::size_t k);

// Every instance, in lexicographic order of (i, j, k). Runs on
// HOPFBRAID_THREADS worker threads (default: hardware concurrency).
AxiomReport verify_cybe(const BraidedSystem& s);

// (f_j (x) f_i) s_ij = t_ij (f_i (x) f_j) for all i <= j.
AxiomReport check_braided_morphism(std::span<const LinMap> maps, const BraidedSystem& from, const BraidedSystem& to);

struct UAA {
    Space space;
    LinMap mu;
    LinMap nu;
};

enum class AssSide { Left, Right };

// Left: x (x) y -> 1 (x) xy. Right: x (x) y -> xy (x) 1.
LinMap sigma_ass(const UAA& a, AssSide side);

enum class SystemVariant { YDAlg, YD };

// One middle component before any verification: its H-action, its coaction and,
// when present, the algebra structure used for the diagonal braiding.
struct SystemComponent {
    Space space;
    LinMap action;
    LinMap coaction;
    std::optional<LinMap> mu;
    std::optional<LinMap> nu;
};

// Braiding on (H, M_1..M_r, H*) from raw structure maps, nothing verified.
// Diagonal on a middle component: nu (x) mu when mu is set, identity otherwise.
BraidedSystem assemble_yd_system(const Bialgebra& h, const std::vector<SystemComponent>& mods);

// Checks the inputs (bialgebra axioms, YD or YD-algebra axioms, shared base),
// builds the system and verifies every cYBE instance. AxiomFailure on any
// failed check; std::invalid_argument on a base mismatch.
BraidedSystem build_yd_system(const BialgebraRef& h, const std::vector<YDModule>& mods);
BraidedSystem build_yd_system(const BialgebraRef& h, const std::vector<YDModuleAlgebra>& mods, SystemVariant variant);

struct InvertibilityEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t rank = 0;
    std::size_t dim = 0;
    std::optional<LinMap> inverse;

    bool invertible() const { return inverse.has_value(); }
};

std::vector<InvertibilityEntry> invertibility_report(const BraidedSystem& s);

struct UAASystemResult {
    // naturality of each xi_ij with respect to the products, plus cYBE on
    // triples i < j < k
    AxiomReport condition;
    // verify_cybe of the completed system
    AxiomReport cybe;
    BraidedSystem system;

    bool equivalence_holds() const { return condition.ok() == cybe.ok(); }
};

// xi maps (i, j), i < j, to V_i (x) V_j -> V_j (x) V_i. The inputs must be
// UAAs and each xi must be natural with respect to the units; otherwise
// AxiomFailure is thrown before anything else is checked.
UAASystemResult validate_uaa_system(const std::vector<UAA>& uaas, const std::map<BraidedSystem::Key, LinMap>& xi);

// Replaces components lo..hi (0-based, inclusive) by their tensor product with
// identity as its diagonal braiding; mixed braidings are composites of the
// original ones. Throws AxiomFailure if the result fails the cYBE.
BraidedSystem glue(const BraidedSystem& s, std::size_t lo, std::size_t hi);

struct PrecisionRow {
    std::string instance;
    std::string axiom;
    bool side_condition = false;
    bool cybe_holds = false;
    bool axiom_holds = false;

    bool consistent() const { return !side_condition || cybe_holds == axiom_holds; }
};

struct PrecisionReport {
    std::vector<PrecisionRow> rows;

    bool consistent() const;
};

// The six pairings of a cYBE instance on (H, V, H*) with a structure axiom,
// each evaluated independently.
PrecisionReport precision_harness(const BialgebraRef& h, const Space& v, const LinMap& action, const LinMap& coaction,
                                  const LinMap& mu, const LinMap& nu);

struct HarnessInputs {
    Space space;
    LinMap action;
    LinMap coaction;
    LinMap mu;
    LinMap nu;
};

// Random structure maps on a space of dimension `dim` >= 1 whose basis vector 0
// is the unit. All side conditions of the harness hold by construction; the
// remaining coefficients are uniform (over Q: integers in [-3, 3]).
HarnessInputs random_harness_inputs(const Bialgebra& h, std::size_t dim, std::mt19937_64& rng);

}  // namespace hopfbraid
