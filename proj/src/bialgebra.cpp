#include "hopfbraid/bialgebra.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace hopfbraid {

bool operator==(const Bialgebra& a, const Bialgebra& b) {
    if (a.dim() != b.dim() || !(a.field() == b.field())) return false;
    if (!(a.mu == b.mu && a.nu == b.nu && a.delta == b.delta && a.eps == b.eps)) return false;
    if (a.antipode.has_value() != b.antipode.has_value()) return false;
    return !a.antipode || *a.antipode == *b.antipode;
}

Bialgebra bialgebra_from_constants(const Field& field, Space space,
                                   const std::vector<std::vector<std::vector<Scalar>>>& mul,
                                   const std::vector<Scalar>& unit,
                                   const std::vector<std::vector<std::vector<Scalar>>>& comul,
                                   const std::vector<Scalar>& counit,
                                   const std::optional<std::vector<std::vector<Scalar>>>& antipode) {
    const std::size_t d = space.dim;
    auto check_len = [d](std::size_t n, const char* what) {
        if (n != d) throw DimensionMismatch(std::string(what) + " has length " + std::to_string(n) + ", expected " + std::to_string(d));
    };
    check_len(mul.size(), "mul");
    check_len(comul.size(), "comul");
    check_len(unit.size(), "unit");
    check_len(counit.size(), "counit");
    SparseMatrix mu(field, d, d * d), nu(field, d, 1), delta(field, d * d, d), eps(field, 1, d);
    for (std::size_t i = 0; i < d; ++i) {
        check_len(mul[i].size(), "mul[i]");
        check_len(comul[i].size(), "comul[i]");
        for (std::size_t j = 0; j < d; ++j) {
            check_len(mul[i][j].size(), "mul[i][j]");
            check_len(comul[i][j].size(), "comul[i][j]");
            for (std::size_t k = 0; k < d; ++k) {
                mu.set(k, i * d + j, mul[i][j][k]);
                delta.set(j * d + k, i, comul[i][j][k]);
            }
        }
        nu.set(i, 0, unit[i]);
        eps.set(0, i, counit[i]);
    }
    std::optional<LinMap> s;
    if (antipode) {
        check_len(antipode->size(), "antipode");
        SparseMatrix sm(field, d, d);
        for (std::size_t i = 0; i < d; ++i) {
            check_len((*antipode)[i].size(), "antipode[i]");
            for (std::size_t j = 0; j < d; ++j) sm.set(j, i, (*antipode)[i][j]);
        }
        s = LinMap({space}, {space}, std::move(sm));
    }
    return Bialgebra{space,
                     LinMap({space, space}, {space}, std::move(mu)),
                     LinMap({}, {space}, std::move(nu)),
                     LinMap({space}, {space, space}, std::move(delta)),
                     LinMap({space}, {}, std::move(eps)),
                     std::move(s)};
}

AxiomReport check_uaa(const Space& space, const LinMap& mu, const LinMap& nu) {
    const Field& f = mu.field();
    LinMap id = identity(f, space);
    AxiomReport rep;
    rep.add(compare_maps("associativity", compose(mu, tensor(mu, id)), compose(mu, tensor(id, mu))));
    rep.add(compare_maps("left unit", compose(mu, tensor(nu, id)), id));
    rep.add(compare_maps("right unit", compose(mu, tensor(id, nu)), id));
    return rep;
}

namespace {

AxiomReport check_counital_coalgebra(const Bialgebra& b) {
    const Field& f = b.field();
    LinMap id = identity(f, b.space);
    AxiomReport rep;
    rep.add(compare_maps("coassociativity", compose(tensor(b.delta, id), b.delta), compose(tensor(id, b.delta), b.delta)));
    rep.add(compare_maps("left counit", compose(tensor(b.eps, id), b.delta), id));
    rep.add(compare_maps("right counit", compose(tensor(id, b.eps), b.delta), id));
    return rep;
}

AxiomReport check_compatibility(const Bialgebra& b) {
    const Field& f = b.field();
    AxiomReport rep;
    rep.add(compare_maps("delta multiplicative", compose(b.delta, b.mu),
                         compose_chain({mu_tensor_square(b), tensor(b.delta, b.delta)})));
    rep.add(compare_maps("delta unital", compose(b.delta, b.nu), tensor(b.nu, b.nu)));
    rep.add(compare_maps("eps multiplicative", compose(b.eps, b.mu), tensor(b.eps, b.eps)));
    rep.add(compare_maps("eps unital", compose(b.eps, b.nu), identity(f, Factors{})));
    return rep;
}

LinMap convolution_unit(const Bialgebra& b) { return compose(b.nu, b.eps); }

}  // namespace

AxiomReport check_bialgebra(const Bialgebra& b, BialgebraLevel level) {
    AxiomReport rep;
    bool alg = level != BialgebraLevel::Coalgebra;
    bool coalg = level != BialgebraLevel::Algebra;
    if (alg) rep.append(check_uaa(b.space, b.mu, b.nu));
    if (coalg) rep.append(check_counital_coalgebra(b));
    if (level == BialgebraLevel::Bialgebra || level == BialgebraLevel::Hopf) rep.append(check_compatibility(b));
    if (level == BialgebraLevel::Hopf) {
        if (!b.antipode) {
            rep.add({"antipode", false, std::nullopt, "antipode missing"});
        } else {
            LinMap id = identity(b.field(), b.space);
            LinMap unit = convolution_unit(b);
            AxiomResult left = compare_maps("antipode left", compose_chain({b.mu, tensor(*b.antipode, id), b.delta}), unit);
            AxiomResult right = compare_maps("antipode right", compose_chain({b.mu, tensor(id, *b.antipode), b.delta}), unit);
            if (!left.holds) left.note = "antipode wrong";
            if (!right.holds) right.note = "antipode wrong";
            rep.add(std::move(left));
            rep.add(std::move(right));
        }
    }
    return rep;
}

std::optional<LinMap> solve_antipode(const Bialgebra& b, std::string* diagnostic) {
    const Field& f = b.field();
    const std::size_t d = b.dim();
    // Unknown s[a, j] sits at index a*d + j. The entry (k, i) of mu(s (x) id)delta
    // is sum over j1, j2, a of delta[(j1, j2), i] s[a, j1] mu[k, (a, j2)].
    SparseMatrix system(f, d * d, d * d);
    SparseMatrix rhs(f, d * d, 1);
    LinMap unit = convolution_unit(b);
    const SparseMatrix& mu = b.mu.matrix();
    SparseMatrix delta_t = b.delta.matrix().transpose();  // row i lists delta(e_i)
    for (std::size_t i = 0; i < d; ++i) {
        for (const auto& de : delta_t.row(i)) {
            std::size_t j1 = de.col / d, j2 = de.col % d;
            for (std::size_t k = 0; k < d; ++k) {
                for (std::size_t a = 0; a < d; ++a) {
                    Scalar c = mu.at(k, a * d + j2);
                    if (c.is_zero()) continue;
                    system.add_to(k * d + i, a * d + j1, de.value * c);
                }
            }
        }
        for (std::size_t k = 0; k < d; ++k) rhs.set(k * d + i, 0, unit.matrix().at(k, i));
    }
    auto sol = solve_linear(system, rhs);
    if (!sol) {
        if (diagnostic) *diagnostic = "left antipode equation has no solution";
        return std::nullopt;
    }
    SparseMatrix s(f, d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t j = 0; j < d; ++j) s.set(a, j, sol->at(a * d + j, 0));
    LinMap candidate({b.space}, {b.space}, std::move(s));
    LinMap right = compose_chain({b.mu, tensor(identity(f, b.space), candidate), b.delta});
    if (!(right == unit)) {
        if (diagnostic) *diagnostic = "left convolution inverse of the identity is not a right inverse";
        return std::nullopt;
    }
    return candidate;
}

Bialgebra dual_bialgebra(const Bialgebra& b) {
    Space ds = b.space.dual();
    auto relabel = [&](const LinMap& m) {
        Factors dom(m.domain().size(), ds), cod(m.codomain().size(), ds);
        return m.retyped(std::move(dom), std::move(cod));
    };
    std::optional<LinMap> s;
    if (b.antipode) s = relabel(rainbow_dual(*b.antipode));
    return Bialgebra{ds, relabel(rainbow_dual(b.delta)), relabel(rainbow_dual(b.eps)), relabel(rainbow_dual(b.mu)),
                     relabel(rainbow_dual(b.nu)), std::move(s)};
}

Opposites opposites(const Bialgebra& b) {
    LinMap c = flip(b.field(), b.space, b.space);
    return {compose(b.mu, c), compose(c, b.delta)};
}

LinMap mu_tensor_square(const Bialgebra& b) {
    const Field& f = b.field();
    const Space& h = b.space;
    LinMap middle = tensor_maps({identity(f, h), flip(f, h, h), identity(f, h)});
    return compose(tensor(b.mu, b.mu), middle);
}

std::size_t monoid_identity(const MonoidTable& t) {
    const std::size_t n = t.size();
    for (std::size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) ok = t.product[e][x] == x && t.product[x][e] == x;
        if (ok) return e;
    }
    throw std::invalid_argument("table has no two-sided identity");
}

void validate_monoid(const MonoidTable& t) {
    const std::size_t n = t.size();
    if (n == 0) throw std::invalid_argument("empty table");
    if (t.product.size() != n) throw std::invalid_argument("table is not square");
    for (const auto& row : t.product) {
        if (row.size() != n) throw std::invalid_argument("table is not square");
        for (std::size_t v : row)
            if (v >= n) throw std::invalid_argument("table entry out of range (closure fails)");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (t.product[t.product[a][b]][c] != t.product[a][t.product[b][c]])
                    throw std::invalid_argument("associativity fails on (" + t.names[a] + ", " + t.names[b] + ", " +
                                                t.names[c] + ")");
    monoid_identity(t);
}

std::size_t group_inverse(const MonoidTable& t, std::size_t g) {
    std::size_t e = monoid_identity(t);
    for (std::size_t h = 0; h < t.size(); ++h)
        if (t.product[g][h] == e && t.product[h][g] == e) return h;
    throw std::invalid_argument("inverses fail: element " + t.names[g] + " has no inverse");
}

void validate_group(const MonoidTable& t) {
    validate_monoid(t);
    for (std::size_t g = 0; g < t.size(); ++g) group_inverse(t, g);
}

MonoidTable cyclic_group(std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclic group needs n >= 1");
    MonoidTable t;
    for (std::size_t i = 0; i < n; ++i) t.names.push_back(i == 0 ? "e" : (i == 1 ? "g" : "g^" + std::to_string(i)));
    t.product.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t.product[a][b] = (a + b) % n;
    return t;
}

namespace {

using Perm3 = std::array<int, 3>;

MonoidTable permutation_table(const std::vector<Perm3>& elems, const std::vector<std::string>& names) {
    MonoidTable t{names, {}};
    t.product.assign(elems.size(), std::vector<std::size_t>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a) {
        for (std::size_t b = 0; b < elems.size(); ++b) {
            Perm3 ab{};
            // (ab)(x) = a(b(x))
            for (int x = 0; x < 3; ++x) ab[x] = elems[a][elems[b][x]];
            auto it = std::find(elems.begin(), elems.end(), ab);
            t.product[a][b] = static_cast<std::size_t>(it - elems.begin());
        }
    }
    return t;
}

}  // namespace

MonoidTable symmetric_group_s3() {
    // images of (1,2,3), zero-based
    std::vector<Perm3> elems{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    return permutation_table(elems, {"e", "(12)", "(13)", "(23)", "(123)", "(132)"});
}

MonoidTable dihedral_group_d4() {
    // r^i s^j with s r s = r^{-1}; index 2*i + j
    MonoidTable t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) {
            std::string n = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
            if (j) n += "s";
            t.names.push_back(n.empty() ? "e" : n);
        }
    t.product.assign(8, std::vector<std::size_t>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int i1 = a / 2, j1 = a % 2, i2 = b / 2, j2 = b % 2;
            // r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
            int i = ((i1 + (j1 ? -i2 : i2)) % 4 + 4) % 4;
            int j = (j1 + j2) % 2;
            t.product[a][b] = static_cast<std::size_t>(2 * i + j);
        }
    return t;
}

namespace {

Bialgebra semigroup_bialgebra(const Field& field, const MonoidTable& table, bool with_antipode) {
    const std::size_t n = table.size();
    Space space(n, "H", table.names);
    SparseMatrix mu(field, n, n * n), nu(field, n, 1), delta(field, n * n, n), eps(field, 1, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) mu.set(table.product[a][b], a * n + b, field.one());
        delta.set(a * n + a, a, field.one());
        eps.set(0, a, field.one());
    }
    nu.set(monoid_identity(table), 0, field.one());
    std::optional<LinMap> s;
    if (with_antipode) {
        SparseMatrix sm(field, n, n);
        for (std::size_t g = 0; g < n; ++g) sm.set(group_inverse(table, g), g, field.one());
        s = LinMap({space}, {space}, std::move(sm));
    }
    return Bialgebra{space,
                     LinMap({space, space}, {space}, std::move(mu)),
                     LinMap({}, {space}, std::move(nu)),
                     LinMap({space}, {space, space}, std::move(delta)),
                     LinMap({space}, {}, std::move(eps)),
                     std::move(s)};
}

}  // namespace

Bialgebra group_algebra(const Field& field, const MonoidTable& table) {
    validate_group(table);
    return semigroup_bialgebra(field, table, true);
}

Bialgebra monoid_algebra(const Field& field, const MonoidTable& table) {
    validate_monoid(table);
    return semigroup_bialgebra(field, table, false);
}

}  // namespace hopfbraid
