#include "hopfbraid/rmatrix.hpp"

namespace hopfbraid {

LinMap element_map(const Bialgebra& h, std::size_t factors, const std::vector<Scalar>& coefficients) {
    Factors cod(factors, h.space);
    if (coefficients.size() != total_dim(cod))
        throw DimensionMismatch("element of " + describe(cod) + " needs " + std::to_string(total_dim(cod)) +
                                " coefficients, got " + std::to_string(coefficients.size()));
    SparseMatrix m(h.field(), coefficients.size(), 1);
    for (std::size_t i = 0; i < coefficients.size(); ++i) m.set(i, 0, coefficients[i]);
    return LinMap({}, std::move(cod), std::move(m));
}

LinMap RMatrix::as_map() const { return element_map(*base, 2, vector); }

std::optional<LinMap> RMatrix::inverse_map() const {
    if (!inverse) return std::nullopt;
    return element_map(*base, 2, *inverse);
}

RMatrix unit_r(BialgebraRef base) {
    LinMap nn = tensor(base->nu, base->nu);
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < nn.codomain_dim(); ++i) v.push_back(nn.matrix().at(i, 0));
    return RMatrix{std::move(base), std::move(v), std::nullopt};
}

LinMap mu_tensor_power(const Bialgebra& h, std::size_t factors) {
    // (a1..an)(b1..bn) -> interleave to a1 b1 a2 b2 ... then multiply pairs
    Factors in(2 * factors, h.space);
    std::vector<std::size_t> perm;
    for (std::size_t k = 0; k < factors; ++k) {
        perm.push_back(k);
        perm.push_back(factors + k);
    }
    std::vector<LinMap> mus(factors, h.mu);
    return compose(tensor_maps(mus), permute_factors(h.field(), in, perm));
}

namespace {

LinMap middle_flip(const Bialgebra& h) {
    const Field& f = h.field();
    LinMap id = identity(f, h.space);
    return tensor_maps({id, flip(f, h.space, h.space), id});
}

AxiomReport check_inverse(const RMatrix& r) {
    AxiomReport rep;
    auto inv = r.inverse_map();
    if (!inv) return rep;
    const Bialgebra& h = *r.base;
    LinMap m2 = mu_tensor_square(h);
    LinMap rr = r.as_map();
    LinMap unit = tensor(h.nu, h.nu);
    rep.add(compare_maps("inverse right", compose(m2, tensor(rr, *inv)), unit));
    rep.add(compare_maps("inverse left", compose(m2, tensor(*inv, rr)), unit));
    return rep;
}

}  // namespace

AxiomReport check_r(const RMatrix& r, RLevel level) {
    const Bialgebra& h = *r.base;
    const Field& f = h.field();
    LinMap id = identity(f, h.space);
    LinMap rr = r.as_map();
    LinMap rr2 = tensor(rr, rr);
    Opposites op = opposites(h);
    AxiomReport rep;
    if (level == RLevel::Weak || level == RLevel::Strong) {
        rep.add(compare_maps("R coproduct left", compose(tensor(h.delta, id), rr),
                             compose_chain({tensor_maps({id, id, h.mu}), middle_flip(h), rr2})));
        rep.add(compare_maps("R counit left", compose(tensor(h.eps, id), rr).retyped({}, {h.space}), h.nu));
        LinMap m2 = mu_tensor_square(h);
        rep.add(compare_maps("R intertwines coproduct", compose(m2, tensor(rr, h.delta)).retyped({h.space}, {h.space, h.space}),
                             compose(m2, tensor(op.delta_op, rr)).retyped({h.space}, {h.space, h.space})));
    }
    if (level == RLevel::Strong) {
        rep.add(compare_maps("R coproduct right", compose(tensor(id, h.delta), rr),
                             compose_chain({tensor_maps({op.mu_op, id, id}), middle_flip(h), rr2})));
        rep.add(compare_maps("R counit right", compose(tensor(id, h.eps), rr).retyped({}, {h.space}), h.nu));
    }
    if (level == RLevel::QuantumYBE) {
        LinMap r12 = tensor(rr, h.nu);
        LinMap r23 = tensor(h.nu, rr);
        LinMap r13 = compose(tensor(id, flip(f, h.space, h.space)), r12);
        LinMap m3 = mu_tensor_power(h, 3);
        auto times = [&](const LinMap& x, const LinMap& y) { return compose(m3, tensor(x, y)); };
        rep.add(compare_maps("quantum Yang-Baxter", times(times(r23, r13), r12), times(times(r12, r13), r23)));
    }
    rep.append(check_inverse(r));
    return rep;
}

LinMap coaction_from_r(const HModule& m, const RMatrix& r) {
    const Bialgebra& h = *r.base;
    const Field& f = h.field();
    LinMap id_m = identity(f, m.space);
    return compose_chain({flip(f, h.space, m.space), tensor(identity(f, h.space), m.action), tensor(r.as_map(), id_m)})
        .retyped({m.space}, {m.space, h.space});
}

YDModule yd_from_r(const HModule& m, const RMatrix& r) {
    return YDModule{m.base, m.space, m.action, coaction_from_r(m, r)};
}

Braiding r_braiding(const HModule& m, const HModule& n, const RMatrix& r) {
    const Bialgebra& h = *r.base;
    const Field& f = h.field();
    LinMap id_h = identity(f, h.space);
    LinMap id_n = identity(f, n.space);
    LinMap act_both = compose(tensor(m.action, n.action), tensor_maps({id_h, flip(f, h.space, m.space), id_n}));
    Braiding out{compose_chain({flip(f, m.space, n.space), act_both, tensor(r.as_map(), identity(f, Factors{m.space, n.space}))})
                     .retyped({m.space, n.space}, {n.space, m.space}),
                 std::nullopt};
    AxiomReport rep;
    rep.add(compare_maps("R-braiding equals YD braiding", out.forward,
                         standard_braiding_map(m.action, coaction_from_r(n, r))));
    if (auto inv = r.inverse_map()) {
        out.inverse = compose(act_both, tensor(*inv, flip(f, n.space, m.space))).retyped({n.space, m.space}, {m.space, n.space});
        rep.add(compare_maps("R-braiding inverse left", compose(*out.inverse, out.forward),
                             identity(f, Factors{m.space, n.space})));
        rep.add(compare_maps("R-braiding inverse right", compose(out.forward, *out.inverse),
                             identity(f, Factors{n.space, m.space})));
    }
    if (!rep.ok()) throw AxiomFailure(std::move(rep));
    return out;
}

RMatrix antipode_inverse_r(const RMatrix& r) {
    const Bialgebra& h = *r.base;
    std::optional<LinMap> s = h.antipode;
    if (!s) s = solve_antipode(h);
    if (!s) throw std::invalid_argument("no antipode: the base bialgebra is not a Hopf algebra");
    LinMap inv = compose(tensor(*s, identity(h.field(), h.space)), r.as_map());
    RMatrix out = r;
    out.inverse.emplace();
    for (std::size_t i = 0; i < inv.codomain_dim(); ++i) out.inverse->push_back(inv.matrix().at(i, 0));
    AxiomReport rep = check_inverse(out);
    if (!rep.ok()) throw AxiomFailure(std::move(rep));
    return out;
}

}  // namespace hopfbraid
