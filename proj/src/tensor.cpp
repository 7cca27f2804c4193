#include "hopfbraid/tensor.hpp"

#include <algorithm>

namespace hopfbraid {

Space::Space(std::size_t d, std::string l, std::vector<std::string> names)
    : dim(d), label(std::move(l)), basis_names(std::move(names)) {
    if (dim == 0) throw std::invalid_argument("space '" + label + "' must have positive dimension");
    if (!basis_names.empty() && basis_names.size() != dim)
        throw std::invalid_argument("space '" + label + "': basis name count differs from dimension");
    auto sorted = basis_names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("space '" + label + "': basis names are not distinct");
}

std::string Space::basis_name(std::size_t i) const {
    if (i < basis_names.size()) return basis_names[i];
    return "e" + std::to_string(i);
}

Space Space::dual() const {
    auto toggle = [](const std::string& s) { return s.ends_with('*') ? s.substr(0, s.size() - 1) : s + "*"; };
    std::vector<std::string> names;
    names.reserve(basis_names.size());
    for (const auto& n : basis_names) names.push_back(toggle(n));
    return Space(dim, toggle(label), std::move(names));
}

std::size_t total_dim(std::span<const Space> factors) {
    std::size_t d = 1;
    for (const auto& s : factors) d *= s.dim;
    return d;
}

std::string describe(std::span<const Space> factors) {
    if (factors.empty()) return "k";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "(x)";
        out += factors[i].label.empty() ? "V" + std::to_string(factors[i].dim) : factors[i].label;
    }
    return out;
}

std::vector<std::size_t> split_index(std::span<const Space> factors, std::size_t index) {
    std::vector<std::size_t> digits(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
        digits[k] = index % factors[k].dim;
        index /= factors[k].dim;
    }
    return digits;
}

std::size_t join_index(std::span<const Space> factors, std::span<const std::size_t> digits) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) idx = idx * factors[k].dim + digits[k];
    return idx;
}

std::string describe_basis(std::span<const Space> factors, std::size_t index) {
    if (factors.empty()) return "1";
    auto digits = split_index(factors, index);
    std::string out;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k) out += " (x) ";
        out += factors[k].basis_name(digits[k]);
    }
    return out;
}

LinMap::LinMap(Factors domain, Factors codomain, SparseMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.cols() != total_dim(domain_) || matrix_.rows() != total_dim(codomain_))
        throw DimensionMismatch("matrix shape " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                                " does not fit " + describe(domain_) + " -> " + describe(codomain_));
}

LinMap LinMap::zero(const Field& field, Factors domain, Factors codomain) {
    SparseMatrix m(field, total_dim(codomain), total_dim(domain));
    return LinMap(std::move(domain), std::move(codomain), std::move(m));
}

LinMap LinMap::scaled(const Scalar& s) const { return LinMap(domain_, codomain_, matrix_.scaled(s)); }

LinMap LinMap::operator-() const { return scaled(-field().one()); }

LinMap LinMap::retyped(Factors domain, Factors codomain) const {
    return LinMap(std::move(domain), std::move(codomain), matrix_);
}

LinMap operator+(const LinMap& a, const LinMap& b) {
    if (a.domain_dim() != b.domain_dim() || a.codomain_dim() != b.codomain_dim())
        throw DimensionMismatch("adding maps " + describe(a.domain()) + " -> " + describe(a.codomain()) + " and " +
                                describe(b.domain()) + " -> " + describe(b.codomain()));
    return LinMap(a.domain_, a.codomain_, a.matrix_ + b.matrix_);
}

LinMap operator-(const LinMap& a, const LinMap& b) { return a + (-b); }

LinMap identity(const Field& field, Factors spaces) {
    std::size_t d = total_dim(spaces);
    Factors cod = spaces;
    return LinMap(std::move(spaces), std::move(cod), SparseMatrix::identity(field, d));
}

LinMap identity(const Field& field, const Space& space) { return identity(field, Factors{space}); }

LinMap compose(const LinMap& outer, const LinMap& inner) {
    if (outer.domain_dim() != inner.codomain_dim())
        throw DimensionMismatch("cannot compose " + describe(outer.domain()) + " -> " + describe(outer.codomain()) +
                                " after " + describe(inner.domain()) + " -> " + describe(inner.codomain()));
    return LinMap(inner.domain(), outer.codomain(), outer.matrix() * inner.matrix());
}

LinMap compose_chain(std::span<const LinMap> maps) {
    if (maps.empty()) throw std::invalid_argument("compose_chain needs at least one map");
    LinMap acc = maps.back();
    for (std::size_t k = maps.size() - 1; k-- > 0;) acc = compose(maps[k], acc);
    return acc;
}

LinMap compose_chain(std::initializer_list<LinMap> maps) {
    return compose_chain(std::span<const LinMap>(maps.begin(), maps.size()));
}

LinMap tensor(const LinMap& a, const LinMap& b) {
    Factors dom = a.domain();
    dom.insert(dom.end(), b.domain().begin(), b.domain().end());
    Factors cod = a.codomain();
    cod.insert(cod.end(), b.codomain().begin(), b.codomain().end());
    return LinMap(std::move(dom), std::move(cod), kronecker(a.matrix(), b.matrix()));
}

LinMap tensor_maps(std::span<const LinMap> maps) {
    if (maps.empty()) throw std::invalid_argument("tensor_maps needs at least one map");
    LinMap acc = maps.front();
    for (std::size_t k = 1; k < maps.size(); ++k) acc = tensor(acc, maps[k]);
    return acc;
}

LinMap tensor_maps(std::initializer_list<LinMap> maps) {
    return tensor_maps(std::span<const LinMap>(maps.begin(), maps.size()));
}

LinMap permute_factors(const Field& field, const Factors& spaces, std::span<const std::size_t> perm) {
    if (perm.size() != spaces.size()) throw DimensionMismatch("permutation length differs from factor count");
    Factors cod;
    cod.reserve(spaces.size());
    for (std::size_t k : perm) cod.push_back(spaces.at(k));
    std::size_t n = total_dim(spaces);
    SparseMatrix m(field, n, n);
    std::vector<std::size_t> out_digits(spaces.size());
    for (std::size_t j = 0; j < n; ++j) {
        auto digits = split_index(spaces, j);
        for (std::size_t k = 0; k < perm.size(); ++k) out_digits[k] = digits[perm[k]];
        m.set(join_index(cod, out_digits), j, field.one());
    }
    return LinMap(spaces, std::move(cod), std::move(m));
}

LinMap flip(const Field& field, const Factors& left, const Factors& right) {
    Factors all = left;
    all.insert(all.end(), right.begin(), right.end());
    std::vector<std::size_t> perm;
    for (std::size_t k = 0; k < right.size(); ++k) perm.push_back(left.size() + k);
    for (std::size_t k = 0; k < left.size(); ++k) perm.push_back(k);
    return permute_factors(field, all, perm);
}

LinMap flip(const Field& field, const Space& left, const Space& right) {
    return flip(field, Factors{left}, Factors{right});
}

LinMap embed_at(const LinMap& phi, std::size_t slot, const Factors& context) {
    const Factors& dom = phi.domain();
    if (slot + dom.size() > context.size())
        throw DimensionMismatch("embed_at: " + describe(dom) + " does not fit at slot " + std::to_string(slot) +
                                " of " + describe(context));
    for (std::size_t k = 0; k < dom.size(); ++k) {
        if (dom[k].dim != context[slot + k].dim)
            throw DimensionMismatch("embed_at: factor " + describe(std::span(&dom[k], 1)) + " does not match " +
                                    describe(std::span(&context[slot + k], 1)) + " at slot " +
                                    std::to_string(slot + k));
    }
    const Field& field = phi.field();
    Factors before(context.begin(), context.begin() + static_cast<std::ptrdiff_t>(slot));
    Factors after(context.begin() + static_cast<std::ptrdiff_t>(slot + dom.size()), context.end());
    LinMap out = tensor(identity(field, before), phi);
    out = tensor(out, identity(field, after));
    Factors full_dom = before;
    full_dom.insert(full_dom.end(), dom.begin(), dom.end());
    full_dom.insert(full_dom.end(), after.begin(), after.end());
    Factors full_cod = before;
    full_cod.insert(full_cod.end(), phi.codomain().begin(), phi.codomain().end());
    full_cod.insert(full_cod.end(), after.begin(), after.end());
    return out.retyped(std::move(full_dom), std::move(full_cod));
}

Factors dual_factors(const Factors& spaces) {
    Factors out;
    out.reserve(spaces.size());
    for (auto it = spaces.rbegin(); it != spaces.rend(); ++it) out.push_back(it->dual());
    return out;
}

LinMap rainbow_dual(const LinMap& f) {
    Factors dom = dual_factors(f.codomain());
    Factors cod = dual_factors(f.domain());
    // Reversing the factor order of a space is a fixed permutation of its
    // global indices; dual[rev(v), rev(w)] = f[w, v].
    auto reverse_index = [](const Factors& spaces, std::size_t idx) {
        auto digits = split_index(spaces, idx);
        std::size_t out = 0;
        for (std::size_t k = digits.size(); k-- > 0;) out = out * spaces[k].dim + digits[k];
        return out;
    };
    SparseMatrix m(f.field(), total_dim(cod), total_dim(dom));
    for (std::size_t w = 0; w < f.matrix().rows(); ++w) {
        std::size_t col = reverse_index(f.codomain(), w);
        for (const auto& e : f.matrix().row(w)) m.set(reverse_index(f.domain(), e.col), col, e.value);
    }
    return LinMap(std::move(dom), std::move(cod), std::move(m));
}

LinMap evaluation_left(const Field& field, const Space& space) {
    SparseMatrix m(field, 1, space.dim * space.dim);
    for (std::size_t i = 0; i < space.dim; ++i) m.set(0, i * space.dim + i, field.one());
    return LinMap({space.dual(), space}, {}, std::move(m));
}

LinMap evaluation_right(const Field& field, const Space& space) {
    SparseMatrix m(field, 1, space.dim * space.dim);
    for (std::size_t i = 0; i < space.dim; ++i) m.set(0, i * space.dim + i, field.one());
    return LinMap({space, space.dual()}, {}, std::move(m));
}

}  // namespace hopfbraid
