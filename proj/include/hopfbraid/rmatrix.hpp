#pragma once

#include <optional>
#include <vector>

#include "hopfbraid/yd_module.hpp"

namespace hopfbraid {

// An element of H (x) H, coefficients indexed major * dim + minor.
struct RMatrix {
    BialgebraRef base;
    std::vector<Scalar> vector;
    std::optional<std::vector<Scalar>> inverse;

    // k -> H (x) H
    LinMap as_map() const;
    std::optional<LinMap> inverse_map() const;
};

RMatrix unit_r(BialgebraRef base);

// Element of H^{(x)n} seen as a map k -> H^{(x)n}.
LinMap element_map(const Bialgebra& h, std::size_t factors, const std::vector<Scalar>& coefficients);

// Componentwise product on H^{(x)n}.
LinMap mu_tensor_power(const Bialgebra& h, std::size_t factors);

enum class RLevel { Weak, Strong, QuantumYBE };

// Weak: the coproduct, counit and intertwining axioms. Strong adds the mirrored
// coproduct and counit axioms. QuantumYBE checks R23 R13 R12 = R12 R13 R23.
// The stored inverse, if any, is checked at every level.
AxiomReport check_r(const RMatrix& r, RLevel level);

// m -> R2 . m (x) R1
LinMap coaction_from_r(const HModule& m, const RMatrix& r);
YDModule yd_from_r(const HModule& m, const RMatrix& r);

// m (x) n -> R2 . n (x) R1 . m, with the inverse when r carries one. Both the
// agreement with the YD braiding of (N, delta^R) and the two-sided inverse are
// verified; AxiomFailure on mismatch.
Braiding r_braiding(const HModule& m, const HModule& n, const RMatrix& r);

// Fills inverse = (s (x) id) R and verifies it. Throws std::invalid_argument
// when the base has no antipode and AxiomFailure when the check fails.
RMatrix antipode_inverse_r(const RMatrix& r);

}  // namespace hopfbraid
