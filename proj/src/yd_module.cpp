#include "hopfbraid/yd_module.hpp"

#include <algorithm>

namespace hopfbraid {

namespace {

void require_same_base(const YDModule& m, const YDModule& n) {
    if (!same_base(m.base, n.base)) throw std::invalid_argument("YD modules over different bialgebras");
}

LinMap unit_action(const Bialgebra& h, const Space& space) {
    // nu (x) Id: M -> H (x) M
    return tensor(h.nu, identity(h.field(), space)).retyped({space}, {h.space, space});
}

}  // namespace

bool same_base(const BialgebraRef& a, const BialgebraRef& b) { return a == b || (a && b && *a == *b); }

AxiomReport check_module(const HModule& m) {
    const Bialgebra& h = *m.base;
    const Field& f = h.field();
    LinMap id_m = identity(f, m.space);
    AxiomReport rep;
    rep.add(compare_maps("action associativity", compose(m.action, tensor(h.mu, id_m)),
                         compose(m.action, tensor(identity(f, h.space), m.action))));
    rep.add(compare_maps("action unit", compose(m.action, unit_action(h, m.space)), id_m));
    return rep;
}

AxiomReport check_comodule(const BialgebraRef& base, const Space& space, const LinMap& coaction) {
    const Bialgebra& h = *base;
    const Field& f = h.field();
    LinMap id_m = identity(f, space);
    LinMap id_h = identity(f, h.space);
    AxiomReport rep;
    rep.add(compare_maps("coaction coassociativity", compose(tensor(coaction, id_h), coaction),
                         compose(tensor(id_m, h.delta), coaction)));
    rep.add(compare_maps("coaction counit", compose(tensor(id_m, h.eps), coaction).retyped({space}, {space}), id_m));
    return rep;
}

AxiomResult yd_compatibility(const Bialgebra& h, const LinMap& action, const LinMap& coaction) {
    const Field& f = h.field();
    const Space& m = action.codomain().at(0);
    LinMap id_m = identity(f, m);
    LinMap id_h = identity(f, h.space);
    LinMap c_hm = flip(f, h.space, m);
    LinMap lhs = compose_chain({tensor(id_m, h.mu), tensor(coaction, id_h), c_hm, tensor(id_h, action), tensor(h.delta, id_m)});
    LinMap rhs = compose_chain({tensor(action, h.mu), tensor_maps({id_h, c_hm, id_h}), tensor(h.delta, coaction)});
    return compare_maps("yd compatibility", lhs, rhs);
}

AxiomReport yd_algebra_compatibility(const Bialgebra& h, const LinMap& action, const LinMap& coaction,
                                     const LinMap& mu, const LinMap& nu) {
    const Field& f = h.field();
    const Space& v = action.codomain().at(0);
    LinMap id_v = identity(f, v);
    LinMap id_h = identity(f, h.space);
    LinMap c_hv = flip(f, h.space, v);
    LinMap delta_op = compose(flip(f, h.space, h.space), h.delta);
    AxiomReport rep;
    rep.add(compare_maps("coaction multiplicative", compose(coaction, mu),
                         compose_chain({tensor(mu, h.mu), tensor_maps({id_v, c_hv, id_h}), tensor(coaction, coaction)})));
    rep.add(compare_maps("action multiplicative", compose(action, tensor(id_h, mu)),
                         compose_chain({mu, tensor(action, action), tensor_maps({id_h, c_hv, id_v}),
                                        tensor_maps({delta_op, id_v, id_v})})));
    rep.add(compare_maps("coaction unital", compose(coaction, nu), tensor(nu, h.nu)));
    rep.add(compare_maps("action unital", compose(action, tensor(id_h, nu)), tensor(h.eps, nu)));
    return rep;
}

AxiomReport check_yd(const YDModule& m, YDLevel level) {
    if (level == YDLevel::YDAlgebra) throw std::invalid_argument("yd_algebra level needs an algebra structure");
    AxiomReport rep;
    if (level == YDLevel::Module || level == YDLevel::YD) rep.append(check_module(m.module()));
    if (level == YDLevel::Comodule || level == YDLevel::YD) rep.append(check_comodule(m.base, m.space, m.coaction));
    if (level == YDLevel::YD) rep.add(yd_compatibility(*m.base, m.action, m.coaction));
    return rep;
}

AxiomReport check_yd(const YDModuleAlgebra& m, YDLevel level) {
    if (level != YDLevel::YDAlgebra) return check_yd(m.yd, level);
    AxiomReport rep = check_yd(m.yd, YDLevel::YD);
    rep.append(check_uaa(m.yd.space, m.mu, m.nu));
    rep.append(yd_algebra_compatibility(*m.yd.base, m.yd.action, m.yd.coaction, m.mu, m.nu));
    return rep;
}

YDModule yd_from_constants(BialgebraRef base, Space space, const std::vector<std::vector<std::vector<Scalar>>>& action,
                           const std::vector<std::vector<std::vector<Scalar>>>& coaction) {
    const Field& f = base->field();
    const std::size_t dh = base->dim(), dm = space.dim;
    auto bad = [](const char* what) { return DimensionMismatch(std::string(what) + " has the wrong shape"); };
    if (action.size() != dh) throw bad("action");
    if (coaction.size() != dm) throw bad("coaction");
    SparseMatrix lam(f, dm, dh * dm), del(f, dm * dh, dm);
    for (std::size_t i = 0; i < dh; ++i) {
        if (action[i].size() != dm) throw bad("action[i]");
        for (std::size_t a = 0; a < dm; ++a) {
            if (action[i][a].size() != dm) throw bad("action[i][a]");
            for (std::size_t b = 0; b < dm; ++b) lam.set(b, i * dm + a, action[i][a][b]);
        }
    }
    for (std::size_t a = 0; a < dm; ++a) {
        if (coaction[a].size() != dm) throw bad("coaction[a]");
        for (std::size_t b = 0; b < dm; ++b) {
            if (coaction[a][b].size() != dh) throw bad("coaction[a][b]");
            for (std::size_t i = 0; i < dh; ++i) del.set(b * dh + i, a, coaction[a][b][i]);
        }
    }
    const Space hs = base->space;
    return YDModule{std::move(base), space, LinMap({hs, space}, {space}, std::move(lam)),
                    LinMap({space}, {space, hs}, std::move(del))};
}

YDModule regular_yd_group_algebra(const Field& field, const MonoidTable& group) {
    auto base = std::make_shared<const Bialgebra>(group_algebra(field, group));
    const std::size_t n = group.size();
    Space m(n, "M", group.names);
    SparseMatrix lam(field, n, n * n), del(field, n * n, n);
    for (std::size_t g = 0; g < n; ++g) {
        std::size_t ginv = group_inverse(group, g);
        for (std::size_t h = 0; h < n; ++h) lam.set(group.product[group.product[g][h]][ginv], g * n + h, field.one());
        del.set(g * n + g, g, field.one());
    }
    const Space hs = base->space;
    return YDModule{std::move(base), m, LinMap({hs, m}, {m}, std::move(lam)), LinMap({m}, {m, hs}, std::move(del))};
}

YDModule regular_yd(BialgebraRef base) {
    const Bialgebra& h = *base;
    if (!h.antipode) throw std::invalid_argument("regular YD structure needs an antipode");
    const Field& f = h.field();
    Space m(h.dim(), "M", h.space.basis_names);
    LinMap id_h = identity(f, h.space);
    // h (x) x -> h(1) x s(h(2))
    LinMap action = compose_chain({h.mu, tensor(h.mu, id_h), tensor_maps({id_h, id_h, *h.antipode}),
                                   tensor(id_h, flip(f, h.space, h.space)), tensor(h.delta, id_h)});
    YDModule out{base, m, action.retyped({h.space, m}, {m}), h.delta.retyped({m}, {m, h.space})};
    AxiomReport rep = check_yd(out, YDLevel::YD);
    if (!rep.ok()) throw AxiomFailure(std::move(rep));
    return out;
}

YDModule unit_yd(BialgebraRef base) {
    const Bialgebra& h = *base;
    Space unit(1, "I", {"1"});
    LinMap action = h.eps.retyped({h.space, unit}, {unit});
    LinMap coaction = h.nu.retyped({unit}, {unit, h.space});
    return YDModule{std::move(base), unit, std::move(action), std::move(coaction)};
}

LinMap standard_braiding_map(const LinMap& action_m, const LinMap& coaction_n) {
    const Field& f = action_m.field();
    const Space& m = action_m.codomain().at(0);
    const Space& n = coaction_n.domain().at(0);
    return compose_chain({tensor(identity(f, n), action_m), tensor(coaction_n, identity(f, m)), flip(f, m, n)});
}

LinMap ring_braiding_map(const LinMap& coaction_v, const LinMap& action_w) {
    const Field& f = action_w.field();
    const Space& v = coaction_v.domain().at(0);
    const Space& w = action_w.codomain().at(0);
    return compose_chain({flip(f, v, w), tensor(identity(f, v), action_w), tensor(coaction_v, identity(f, w))});
}

Braiding yd_braiding(const YDModule& m, const YDModule& n, BraidingVariant variant) {
    require_same_base(m, n);
    const Bialgebra& h = *m.base;
    const Field& f = h.field();
    LinMap id_m = identity(f, m.space), id_n = identity(f, n.space);
    Braiding out{variant == BraidingVariant::Standard ? standard_braiding_map(m.action, n.coaction)
                                                      : ring_braiding_map(m.coaction, n.action),
                 std::nullopt};
    if (!h.antipode) return out;
    const LinMap& s = *h.antipode;
    if (variant == BraidingVariant::Standard) {
        // n (x) m -> s(n(1)) . m (x) n(0)
        out.inverse = compose_chain({flip(f, n.space, m.space), tensor(id_n, m.action),
                                     tensor_maps({id_n, s, id_m}), tensor(n.coaction, id_m)});
    } else {
        // n (x) m -> m(0) (x) s(m(1)) . n
        out.inverse = compose_chain({tensor(id_m, n.action), tensor_maps({id_m, s, id_n}), tensor(m.coaction, id_n),
                                     flip(f, n.space, m.space)});
    }
    AxiomReport rep;
    rep.add(compare_maps("braiding inverse left", compose(*out.inverse, out.forward), identity(f, Factors{m.space, n.space})));
    rep.add(compare_maps("braiding inverse right", compose(out.forward, *out.inverse), identity(f, Factors{n.space, m.space})));
    if (!rep.ok()) throw AxiomFailure(std::move(rep));
    return out;
}

YDModule tensor_yd(const YDModule& m, const YDModule& n, TensorFlavor flavor) {
    require_same_base(m, n);
    const Bialgebra& h = *m.base;
    const Field& f = h.field();
    std::vector<std::string> names;
    for (std::size_t a = 0; a < m.space.dim; ++a)
        for (std::size_t b = 0; b < n.space.dim; ++b) names.push_back(m.space.basis_name(a) + "." + n.space.basis_name(b));
    Space mn(m.space.dim * n.space.dim, m.space.label + "(x)" + n.space.label, std::move(names));
    LinMap id_m = identity(f, m.space), id_n = identity(f, n.space), id_h = identity(f, h.space);
    LinMap c_hh = flip(f, h.space, h.space);
    bool twisted = flavor == TensorFlavor::Twisted;
    LinMap comul = twisted ? compose(c_hh, h.delta) : h.delta;
    LinMap mul = twisted ? h.mu : compose(h.mu, c_hh);
    LinMap action = compose_chain({tensor(m.action, n.action), tensor_maps({id_h, flip(f, h.space, m.space), id_n}),
                                   tensor_maps({comul, id_m, id_n})});
    LinMap coaction = compose_chain({tensor_maps({id_m, id_n, mul}), tensor_maps({id_m, flip(f, h.space, n.space), id_h}),
                                     tensor(m.coaction, n.coaction)});
    return YDModule{m.base, mn, action.retyped({h.space, mn}, {mn}), coaction.retyped({mn}, {mn, h.space})};
}

YDModuleAlgebra formal_unit_extend(const YDModule& m) {
    const Bialgebra& h = *m.base;
    const Field& f = h.field();
    const std::size_t dm = m.space.dim, dh = h.dim(), unit = dm;
    std::vector<std::string> names;
    for (std::size_t a = 0; a < dm; ++a) names.push_back(m.space.basis_name(a));
    std::string unit_name = "1";
    while (std::find(names.begin(), names.end(), unit_name) != names.end()) unit_name += "~";
    names.push_back(unit_name);
    Space ext(dm + 1, m.space.label + "~", std::move(names));
    SparseMatrix lam(f, dm + 1, dh * (dm + 1)), del(f, (dm + 1) * dh, dm + 1);
    // Indices of M's basis are unchanged inside M~, so H(x)M~ and M~(x)H only
    // need the column/row offsets recomputed.
    SparseMatrix lam_t = m.action.matrix().transpose();
    for (std::size_t i = 0; i < dh; ++i) {
        for (std::size_t a = 0; a < dm; ++a)
            for (const auto& e : lam_t.row(i * dm + a)) lam.set(e.col, i * (dm + 1) + a, e.value);
        lam.set(unit, i * (dm + 1) + unit, h.eps.matrix().at(0, i));
    }
    SparseMatrix del_t = m.coaction.matrix().transpose();
    for (std::size_t a = 0; a < dm; ++a)
        for (const auto& e : del_t.row(a)) del.set(e.col, a, e.value);
    for (std::size_t i = 0; i < dh; ++i) del.set(unit * dh + i, unit, h.nu.matrix().at(i, 0));
    SparseMatrix mu(f, dm + 1, (dm + 1) * (dm + 1)), nu(f, dm + 1, 1);
    for (std::size_t x = 0; x <= dm; ++x) {
        mu.set(x, unit * (dm + 1) + x, f.one());
        mu.set(x, x * (dm + 1) + unit, f.one());
    }
    nu.set(unit, 0, f.one());
    YDModule yd{m.base, ext, LinMap({h.space, ext}, {ext}, std::move(lam)), LinMap({ext}, {ext, h.space}, std::move(del))};
    return YDModuleAlgebra{std::move(yd), LinMap({ext, ext}, {ext}, std::move(mu)), LinMap({}, {ext}, std::move(nu))};
}

YDModule dual_yd(const YDModule& n, BialgebraRef dual_base) {
    Space nd = n.space.dual();
    const Space& hd = dual_base->space;
    LinMap action = rainbow_dual(n.coaction).retyped({hd, nd}, {nd});
    LinMap coaction = rainbow_dual(n.action).retyped({nd}, {nd, hd});
    return YDModule{std::move(dual_base), nd, std::move(action), std::move(coaction)};
}

YDModule dual_yd(const YDModule& n) {
    return dual_yd(n, std::make_shared<const Bialgebra>(dual_bialgebra(*n.base)));
}

LinMap dual_regular_action(const Bialgebra& b) {
    const Field& f = b.field();
    Space hd = b.space.dual();
    LinMap delta_dual = rainbow_dual(b.mu).retyped({hd}, {hd, hd});
    return compose(tensor(evaluation_right(f, b.space), identity(f, hd)), tensor(identity(f, b.space), delta_dual))
        .retyped({b.space, hd}, {hd});
}

}  // namespace hopfbraid
