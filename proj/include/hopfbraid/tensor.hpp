#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hopfbraid/sparse_matrix.hpp"

namespace hopfbraid {

// A finite-dimensional vector space with a fixed ordered basis.
struct Space {
    std::size_t dim = 1;
    std::string label;
    std::vector<std::string> basis_names;  // empty means e0, e1, ...

    Space() = default;
    Space(std::size_t dim, std::string label, std::vector<std::string> names = {});

    std::string basis_name(std::size_t i) const;
    // Same dimension, label and names with a trailing '*'.
    Space dual() const;
};

// An ordered tensor product of spaces. The empty list is the ground field.
using Factors = std::vector<Space>;

std::size_t total_dim(std::span<const Space> factors);
std::string describe(std::span<const Space> factors);

// Mixed-radix decoding of a global index, leftmost factor most significant.
std::vector<std::size_t> split_index(std::span<const Space> factors, std::size_t index);
std::size_t join_index(std::span<const Space> factors, std::span<const std::size_t> digits);
std::string describe_basis(std::span<const Space> factors, std::size_t index);

// A linear map between tensor products. The matrix has one column per basis
// vector of the domain; column j holds the image of basis vector j.
class LinMap {
public:
    LinMap(Factors domain, Factors codomain, SparseMatrix matrix);

    static LinMap zero(const Field& field, Factors domain, Factors codomain);

    const Factors& domain() const { return domain_; }
    const Factors& codomain() const { return codomain_; }
    const SparseMatrix& matrix() const { return matrix_; }
    const Field& field() const { return matrix_.field(); }

    std::size_t domain_dim() const { return matrix_.cols(); }
    std::size_t codomain_dim() const { return matrix_.rows(); }

    LinMap scaled(const Scalar& s) const;
    LinMap operator-() const;
    // Relabels the factor lists; total dimensions must agree.
    LinMap retyped(Factors domain, Factors codomain) const;

    // Requires matching domains and codomains by total dimension.
    friend LinMap operator+(const LinMap& a, const LinMap& b);
    friend LinMap operator-(const LinMap& a, const LinMap& b);
    friend bool operator==(const LinMap& a, const LinMap& b) { return a.matrix_ == b.matrix_; }

private:
    Factors domain_;
    Factors codomain_;
    SparseMatrix matrix_;
};

LinMap identity(const Field& field, Factors spaces);
LinMap identity(const Field& field, const Space& space);

// outer(inner(x))
LinMap compose(const LinMap& outer, const LinMap& inner);
// maps[0] o maps[1] o ... o maps[n-1]; the last entry is applied first.
LinMap compose_chain(std::span<const LinMap> maps);
LinMap compose_chain(std::initializer_list<LinMap> maps);

LinMap tensor(const LinMap& a, const LinMap& b);
LinMap tensor_maps(std::span<const LinMap> maps);
LinMap tensor_maps(std::initializer_list<LinMap> maps);

// v (x) w -> w (x) v for blocks of factors.
LinMap flip(const Field& field, const Factors& left, const Factors& right);
LinMap flip(const Field& field, const Space& left, const Space& right);

// Reorders factors: output slot k carries input factor perm[k].
LinMap permute_factors(const Field& field, const Factors& spaces, std::span<const std::size_t> perm);

// Id^{slot} (x) phi (x) Id^{rest} acting on `context`, with phi reading the
// factors context[slot .. slot + |dom phi|). Zero-based slot.
LinMap embed_at(const LinMap& phi, std::size_t slot, const Factors& context);

// Dual with respect to the nested pairing that matches the first factor of
// the dual with the last factor of the original. Reverses both factor lists
// and transposes.
LinMap rainbow_dual(const LinMap& f);

Factors dual_factors(const Factors& spaces);

// V* (x) V -> k
LinMap evaluation_left(const Field& field, const Space& space);
// V (x) V* -> k
LinMap evaluation_right(const Field& field, const Space& space);

// Builds a map from the image of each domain basis vector.
template <typename ImageOf>
LinMap map_from_images(const Field& field, Factors domain, Factors codomain, ImageOf&& image_of) {
    std::size_t cols = total_dim(domain);
    SparseMatrix m(field, total_dim(codomain), cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (const auto& [row, value] : image_of(j)) m.add_to(row, j, value);
    }
    return LinMap(std::move(domain), std::move(codomain), std::move(m));
}

}  // namespace hopfbraid
