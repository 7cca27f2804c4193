#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfbraid/braided_system.hpp"

namespace hopfbraid {

// A family of maps V_i -> k, one per component of a braided system.
struct BraidedCharacter {
    std::vector<LinMap> maps;
};

// (z_j (x) z_i) s_ij = z_i (x) z_j for all i <= j.
AxiomReport check_character(const BraidedSystem& s, const BraidedCharacter& c);

struct EpsCharacters {
    BraidedCharacter counit;       // eps_H on H, zero elsewhere
    BraidedCharacter dual_counit;  // evaluation at 1_H on H*, zero elsewhere
};

// For a system (H, M_1..M_r, H*) as produced by build_yd_system over h.
EpsCharacters eps_characters(const Bialgebra& h, const BraidedSystem& s);

// A multi-degree: how many factors of each kind a summand carries.
using MultiDegree = std::vector<std::size_t>;

// Blocks of a graded map, keyed by (source, target) degree indices of the
// complex it belongs to. Absent blocks are zero.
using DegreeMap = std::map<std::pair<std::size_t, std::size_t>, LinMap>;

struct GradedComplex {
    Field field = Field::rationals();
    std::size_t truncation = 0;
    std::vector<MultiDegree> degrees;
    std::vector<Factors> spaces;
    DegreeMap d;
    DegreeMap d_prime;

    std::size_t total(std::size_t index) const;
    std::optional<std::size_t> index_of(const MultiDegree& deg) const;
    std::size_t dim(std::size_t index) const { return total_dim(spaces.at(index)); }
    std::string degree_name(std::size_t index) const;
};

// (a o b) blockwise.
DegreeMap compose_graded(const GradedComplex& c, const DegreeMap& a, const DegreeMap& b);
DegreeMap add_graded(const DegreeMap& a, const DegreeMap& b);
DegreeMap scale_graded(const DegreeMap& a, const Scalar& s);

// The left and right multi-braided differentials on all ordered tensor
// products of total degree <= max_total_degree:
// d: sum_i (-1)^(i-1) zeta(factor i moved to the front through the braiding),
// d_prime: sum_i (-1)^(i+1) xi(factor i moved to the end).
GradedComplex generic_differentials(const BraidedSystem& s, const BraidedCharacter& zeta, const BraidedCharacter& xi,
                                    std::size_t max_total_degree);

// On H^n (x) M (x) (H*)^m, degrees (n, m): d lowers m (the left differential
// for the dual counit), d_prime lowers n (the right differential for the
// counit). Expanded term by term from structure constants; the identities are
// verified before returning (AxiomFailure naming the degree otherwise).
GradedComplex yd_bidifferential(const BialgebraRef& h, const YDModule& m, std::size_t max_total_degree);

enum class PiMap {
    ContractFirstDual,  // pairs l_1 with h_(2).. a_(1)
    ContractLastDual,   // lets l_m act on b through h_(1)..
    ContractLastH,      // h_n acts on a, paired with l_(1)..
    ContractFirstH,     // h_1 paired with l_(2).. b_(1)
};

struct PiMaps {
    DegreeMap contract_first_dual;
    DegreeMap contract_last_dual;
    DegreeMap contract_last_h;
    DegreeMap contract_first_h;

    const DegreeMap& get(PiMap which) const;
};

struct BarCobar {
    GradedComplex skeleton;  // degrees (n, m) on H^n (x) M (x) (H*)^m (x) N*, empty d and d_prime
    DegreeMap bar;           // sum_i (-1)^i multiply h_i h_(i+1)
    DegreeMap cobar;         // sum_i (-1)^i multiply l_i l_(i+1)
    PiMaps pi;
};

// Bar, cobar and the four contraction maps on H^n (x) M (x) (H*)^m (x) N*.
// N* carries the H*-structures dual to those of n.
BarCobar bar_cobar(const BialgebraRef& h, const YDModule& m, const YDModule& n, std::size_t max_total_degree);

// Line 1..4 of the table of bidifferentials on H^n (x) M (x) (H*)^m (x) N*,
// left column as d and right column as d_prime, signs taken on the source
// degree (n, m). Inputs are checked and the identities verified; AxiomFailure
// otherwise.
GradedComplex table1_complex(const BialgebraRef& h, const YDModule& m, const YDModule& n, int line,
                             std::size_t max_total_degree);
// Same without verifying the result.
GradedComplex table1_unchecked(const BarCobar& parts, int line);

// d d = 0, d' d' = 0 and d d' + d' d = 0 from every source degree with total
// >= 2. Results are named "<identity> from <degree>".
AxiomReport verify_bicomplex(const GradedComplex& c);

// The three identity names used by verify_bicomplex, for filtering.
inline constexpr const char* kDSquared = "d d = 0";
inline constexpr const char* kDPrimeSquared = "d' d' = 0";
inline constexpr const char* kAnticommute = "d d' + d' d = 0";

enum class Differential { D, DPrime, Total };

struct HomologyRow {
    std::size_t degree = 0;
    std::size_t chain_dim = 0;
    std::size_t rank_d = 0;        // of d on this total degree
    std::size_t rank_d_prime = 0;  // of d' on this total degree
    std::size_t rank = 0;          // of the chosen differential
    std::size_t homology_dim = 0;
};

struct HomologyReport {
    std::size_t truncation = 0;
    Differential which = Differential::Total;
    bool cohomology = false;
    // degrees 0 .. truncation - 1; the last degree's group is not reported
    std::vector<HomologyRow> rows;
    bool d_squared = false;
    bool d_prime_squared = false;
    bool anticommute = false;
    // alternating sums over degrees 0..truncation of the truncated complex
    long long euler_chains = 0;
    long long euler_homology = 0;

    bool euler_holds() const { return euler_chains == euler_homology; }
    // std::out_of_range "insufficient truncation" for degree >= truncation
    std::size_t dim(std::size_t degree) const;
};

// Dimensions by total degree. The chosen differential must square to zero
// (and anticommute, for Total); std::invalid_argument otherwise. Cohomology
// uses the transposed matrices.
HomologyReport homology_dims(const GradedComplex& c, Differential which, bool cohomology);

// Assembled matrix of a graded map from total degree k to k - 1, in the block
// order of c.degrees.
SparseMatrix total_degree_matrix(const GradedComplex& c, const DegreeMap& map, std::size_t k);

// The six pairs of contraction maps commute on every degree.
AxiomReport pi_commutation_suite(const BialgebraRef& h, const YDModule& m, const YDModule& n,
                                 std::size_t max_total_degree);
AxiomReport pi_commutation_suite(const BarCobar& parts);

}  // namespace hopfbraid
