#pragma once

#include <optional>

#include "hopfbraid/bialgebra.hpp"

namespace hopfbraid {

// Left H-module: action H(x)M -> M.
struct HModule {
    BialgebraRef base;
    Space space;
    LinMap action;
};

// Left module, right comodule: action H(x)M -> M, coaction M -> M(x)H.
struct YDModule {
    BialgebraRef base;
    Space space;
    LinMap action;
    LinMap coaction;

    HModule module() const { return {base, space, action}; }
};

struct YDModuleAlgebra {
    YDModule yd;
    LinMap mu;
    LinMap nu;
};

enum class YDLevel { Module, Comodule, YD, YDAlgebra };

AxiomReport check_module(const HModule& m);
AxiomReport check_comodule(const BialgebraRef& base, const Space& space, const LinMap& coaction);
// Module, comodule and compatibility axioms up to `level`. YDAlgebra needs the
// overload taking a YDModuleAlgebra.
AxiomReport check_yd(const YDModule& m, YDLevel level);
AxiomReport check_yd(const YDModuleAlgebra& m, YDLevel level);

// The compatibility condition alone, on raw maps.
AxiomResult yd_compatibility(const Bialgebra& h, const LinMap& action, const LinMap& coaction);
// The four algebra compatibilities, on raw maps.
AxiomReport yd_algebra_compatibility(const Bialgebra& h, const LinMap& action, const LinMap& coaction,
                                     const LinMap& mu, const LinMap& nu);

// action[i][a][b] = coefficient of m_b in e_i . m_a,
// coaction[a][b][i] = coefficient of m_b (x) e_i in delta(m_a).
YDModule yd_from_constants(BialgebraRef base, Space space, const std::vector<std::vector<std::vector<Scalar>>>& action,
                           const std::vector<std::vector<std::vector<Scalar>>>& coaction);

// kG with conjugation action and coaction h -> h (x) h.
YDModule regular_yd_group_algebra(const Field& field, const MonoidTable& group);
// H over itself with the adjoint action and the coproduct as coaction. Throws
// AxiomFailure if the result is not a YD module (e.g. H not cocommutative).
YDModule regular_yd(BialgebraRef base);

YDModule unit_yd(BialgebraRef base);

enum class BraidingVariant { Standard, Ring };
enum class TensorFlavor { Standard, Twisted };

struct Braiding {
    LinMap forward;
    std::optional<LinMap> inverse;
};

// Standard: m (x) n -> n(0) (x) n(1) . m.
// Ring:     m (x) n -> m(1) . n (x) m(0).
// The inverse is returned, and verified on both sides, when the base has an
// antipode.
Braiding yd_braiding(const YDModule& m, const YDModule& n, BraidingVariant variant);

// Raw forms for arbitrary structure maps.
// (Id_N (x) action_m)(coaction_n (x) Id_M) flip_{M,N}
LinMap standard_braiding_map(const LinMap& action_m, const LinMap& coaction_n);
// flip_{V,W} (Id_V (x) action_w)(coaction_v (x) Id_W)
LinMap ring_braiding_map(const LinMap& coaction_v, const LinMap& action_w);

YDModule tensor_yd(const YDModule& m, const YDModule& n, TensorFlavor flavor);

// M (+) k with the adjoined vector (last basis index) as unit and zero product on M.
YDModuleAlgebra formal_unit_extend(const YDModule& m);

// N* over H* with action dual to the coaction and coaction dual to the action.
YDModule dual_yd(const YDModule& n);
// Same, reusing an already dualized base.
YDModule dual_yd(const YDModule& n, BialgebraRef dual_base);

// H acting on H* by h . l = l(1)(h) l(2), i.e. (h . l)(x) = l(x h).
LinMap dual_regular_action(const Bialgebra& b);

bool same_base(const BialgebraRef& a, const BialgebraRef& b);

}  // namespace hopfbraid
