#include "hopfbraid/braided_system.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace hopfbraid {

namespace {

void require_shape(const LinMap& m, const Space& a, const Space& b, std::size_t i, std::size_t j) {
    const std::size_t n = a.dim * b.dim;
    if (m.domain_dim() != n || m.codomain_dim() != n)
        throw DimensionMismatch("sigma " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " must be " +
                                std::to_string(n) + "x" + std::to_string(n) + ", got " +
                                std::to_string(m.codomain_dim()) + "x" + std::to_string(m.domain_dim()));
}

std::size_t thread_count(std::size_t jobs) {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HOPFBRAID_THREADS")) {
        try {
            n = std::max<std::size_t>(1, std::stoul(env));
        } catch (const std::exception&) {
            // keep the default on garbage
        }
    }
    return std::min(n, std::max<std::size_t>(jobs, 1));
}

}  // namespace

BraidedSystem::BraidedSystem(std::vector<Space> components, std::map<Key, LinMap> sigma)
    : components_(std::move(components)), sigma_(std::move(sigma)) {
    if (components_.empty()) throw std::invalid_argument("braided system needs at least one component");
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = i; j < rank(); ++j) {
            auto it = sigma_.find({i, j});
            if (it == sigma_.end())
                throw std::invalid_argument("sigma " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " missing");
            require_shape(it->second, components_[i], components_[j], i, j);
            it->second = it->second.retyped({components_[i], components_[j]}, {components_[j], components_[i]});
        }
    for (const auto& [key, map] : sigma_)
        if (key.first > key.second || key.second >= rank())
            throw std::invalid_argument("sigma " + std::to_string(key.first + 1) + "," + std::to_string(key.second + 1) +
                                        " is not an index pair i <= j of this system");
    const Field& f = field();
    for (const auto& [key, map] : sigma_)
        if (!(map.field() == f)) throw FieldMismatch("braided system mixes " + f.name() + " and " + map.field().name());
}

const LinMap& BraidedSystem::sigma(std::size_t i, std::size_t j) const {
    auto it = sigma_.find({i, j});
    if (it == sigma_.end()) throw std::out_of_range("no sigma " + std::to_string(i + 1) + "," + std::to_string(j + 1));
    return it->second;
}

void BraidedSystem::set_sigma(std::size_t i, std::size_t j, LinMap map) {
    if (i > j || j >= rank()) throw std::out_of_range("no sigma " + std::to_string(i + 1) + "," + std::to_string(j + 1));
    require_shape(map, components_[i], components_[j], i, j);
    sigma_.insert_or_assign({i, j}, map.retyped({components_[i], components_[j]}, {components_[j], components_[i]}));
}

std::size_t cybe_instance_count(std::size_t r) { return r * (r + 1) * (r + 2) / 6; }

AxiomResult cybe_instance(const BraidedSystem& s, std::size_t i, std::size_t j, std::size_t k) {
    if (!(i <= j && j <= k && k < s.rank())) throw std::out_of_range("cYBE instance needs i <= j <= k < rank");
    const Field& f = s.field();
    const LinMap id_i = identity(f, s.component(i));
    const LinMap id_j = identity(f, s.component(j));
    const LinMap id_k = identity(f, s.component(k));
    const LinMap& s_ij = s.sigma(i, j);
    const LinMap& s_ik = s.sigma(i, k);
    const LinMap& s_jk = s.sigma(j, k);
    LinMap lhs = compose_chain({tensor(s_jk, id_i), tensor(id_j, s_ik), tensor(s_ij, id_k)});
    LinMap rhs = compose_chain({tensor(id_k, s_ij), tensor(s_ik, id_j), tensor(id_i, s_jk)});
    Factors spaces{s.component(i), s.component(j), s.component(k)};
    return compare_maps("cYBE " + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                            " " + describe(spaces),
                        lhs, rhs);
}

AxiomReport verify_cybe(const BraidedSystem& s) {
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = i; j < s.rank(); ++j)
            for (std::size_t k = j; k < s.rank(); ++k) triples.push_back({i, j, k});
    std::vector<std::optional<AxiomResult>> results(triples.size());
    const std::size_t workers = thread_count(triples.size());
    auto run = [&](std::size_t start) {
        for (std::size_t t = start; t < triples.size(); t += workers)
            results[t] = cybe_instance(s, triples[t][0], triples[t][1], triples[t][2]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    AxiomReport rep;
    for (auto& r : results) rep.add(std::move(*r));
    return rep;
}

AxiomReport check_braided_morphism(std::span<const LinMap> maps, const BraidedSystem& from, const BraidedSystem& to) {
    if (from.rank() != to.rank() || maps.size() != from.rank())
        throw std::invalid_argument("morphism needs equal ranks and one map per component");
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].domain_dim() != from.component(i).dim || maps[i].codomain_dim() != to.component(i).dim)
            throw DimensionMismatch("map " + std::to_string(i + 1) + " does not fit components " +
                                    from.component(i).label + " -> " + to.component(i).label);
    AxiomReport rep;
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (std::size_t j = i; j < maps.size(); ++j) {
            LinMap fi = maps[i].retyped({from.component(i)}, {to.component(i)});
            LinMap fj = maps[j].retyped({from.component(j)}, {to.component(j)});
            rep.add(compare_maps("morphism " + std::to_string(i + 1) + "," + std::to_string(j + 1),
                                 compose(tensor(fj, fi), from.sigma(i, j)), compose(to.sigma(i, j), tensor(fi, fj))));
        }
    return rep;
}

LinMap sigma_ass(const UAA& a, AssSide side) {
    LinMap mu = a.mu.retyped({a.space, a.space}, {a.space});
    LinMap nu = a.nu.retyped({}, {a.space});
    return side == AssSide::Left ? tensor(nu, mu) : tensor(mu, nu);
}

BraidedSystem assemble_yd_system(const Bialgebra& h, const std::vector<SystemComponent>& mods) {
    const Field& f = h.field();
    const Space hd = h.space.dual();
    const std::size_t r = mods.size();
    const std::size_t last = r + 1;
    Bialgebra dual = dual_bialgebra(h);
    LinMap coproduct = h.delta.retyped({h.space}, {h.space, h.space});
    LinMap on_dual = dual_regular_action(h);

    std::vector<Space> comps{h.space};
    for (const auto& m : mods) comps.push_back(m.space);
    comps.push_back(hd);

    std::map<BraidedSystem::Key, LinMap> sigma;
    sigma.emplace(BraidedSystem::Key{0, 0}, sigma_ass(UAA{h.space, h.mu, h.nu}, AssSide::Right));
    sigma.emplace(BraidedSystem::Key{last, last}, sigma_ass(UAA{hd, dual.mu, dual.nu}, AssSide::Left));
    sigma.emplace(BraidedSystem::Key{0, last}, ring_braiding_map(coproduct, on_dual));
    for (std::size_t a = 0; a < r; ++a) {
        const SystemComponent& m = mods[a];
        LinMap action = m.action.retyped({h.space, m.space}, {m.space});
        LinMap coaction = m.coaction.retyped({m.space}, {m.space, h.space});
        sigma.emplace(BraidedSystem::Key{0, a + 1}, ring_braiding_map(coproduct, action));
        sigma.emplace(BraidedSystem::Key{a + 1, last}, ring_braiding_map(coaction, on_dual));
        sigma.emplace(BraidedSystem::Key{a + 1, a + 1}, m.mu ? sigma_ass(UAA{m.space, *m.mu, *m.nu}, AssSide::Left)
                                                              : identity(f, Factors{m.space, m.space}));
        for (std::size_t b = a + 1; b < r; ++b)
            sigma.emplace(BraidedSystem::Key{a + 1, b + 1},
                          ring_braiding_map(coaction, mods[b].action.retyped({h.space, mods[b].space}, {mods[b].space})));
    }
    return BraidedSystem(std::move(comps), std::move(sigma));
}

namespace {

void require_base(const BialgebraRef& h, const BialgebraRef& other) {
    if (!same_base(h, other)) throw std::invalid_argument("module is over a different bialgebra than the system");
}

BraidedSystem checked_build(const Bialgebra& h, AxiomReport inputs, const std::vector<SystemComponent>& comps) {
    inputs.append(check_bialgebra(h, BialgebraLevel::Bialgebra));
    if (!inputs.ok()) throw AxiomFailure(std::move(inputs));
    BraidedSystem s = assemble_yd_system(h, comps);
    AxiomReport cybe = verify_cybe(s);
    if (!cybe.ok()) throw AxiomFailure(std::move(cybe));
    return s;
}

}  // namespace

BraidedSystem build_yd_system(const BialgebraRef& h, const std::vector<YDModule>& mods) {
    AxiomReport inputs;
    std::vector<SystemComponent> comps;
    for (const auto& m : mods) {
        require_base(h, m.base);
        inputs.append(check_yd(m, YDLevel::YD));
        comps.push_back({m.space, m.action, m.coaction, std::nullopt, std::nullopt});
    }
    return checked_build(*h, std::move(inputs), comps);
}

BraidedSystem build_yd_system(const BialgebraRef& h, const std::vector<YDModuleAlgebra>& mods, SystemVariant variant) {
    AxiomReport inputs;
    std::vector<SystemComponent> comps;
    for (const auto& m : mods) {
        require_base(h, m.yd.base);
        if (variant == SystemVariant::YDAlg) {
            inputs.append(check_yd(m, YDLevel::YDAlgebra));
            comps.push_back({m.yd.space, m.yd.action, m.yd.coaction, m.mu, m.nu});
        } else {
            inputs.append(check_yd(m.yd, YDLevel::YD));
            comps.push_back({m.yd.space, m.yd.action, m.yd.coaction, std::nullopt, std::nullopt});
        }
    }
    return checked_build(*h, std::move(inputs), comps);
}

std::vector<InvertibilityEntry> invertibility_report(const BraidedSystem& s) {
    std::vector<InvertibilityEntry> out;
    for (const auto& [key, map] : s.sigmas()) {
        InvertibilityEntry e{key.first, key.second, rank(map.matrix()), map.domain_dim(), std::nullopt};
        if (e.rank == e.dim)
            if (auto inv = inverse(map.matrix())) e.inverse = LinMap(map.codomain(), map.domain(), std::move(*inv));
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

std::string pair_name(std::size_t i, std::size_t j) { return std::to_string(i + 1) + "," + std::to_string(j + 1); }

}  // namespace

UAASystemResult validate_uaa_system(const std::vector<UAA>& uaas, const std::map<BraidedSystem::Key, LinMap>& xi) {
    if (uaas.empty()) throw std::invalid_argument("no algebras given");
    const Field& f = uaas.front().mu.field();
    const std::size_t r = uaas.size();

    AxiomReport pre;
    for (std::size_t i = 0; i < r; ++i) {
        AxiomReport u = check_uaa(uaas[i].space, uaas[i].mu, uaas[i].nu);
        for (AxiomResult res : u.results()) {
            res.name = "algebra " + std::to_string(i + 1) + " " + res.name;
            pre.add(std::move(res));
        }
    }
    std::map<BraidedSystem::Key, LinMap> sigma;
    for (std::size_t i = 0; i < r; ++i) {
        const UAA& a = uaas[i];
        sigma.emplace(BraidedSystem::Key{i, i}, sigma_ass(a, AssSide::Left));
        for (std::size_t j = i + 1; j < r; ++j) {
            auto it = xi.find({i, j});
            if (it == xi.end()) throw std::invalid_argument("xi " + pair_name(i, j) + " missing");
            const UAA& b = uaas[j];
            require_shape(it->second, a.space, b.space, i, j);
            LinMap x = it->second.retyped({a.space, b.space}, {b.space, a.space});
            LinMap id_a = identity(f, a.space), id_b = identity(f, b.space);
            LinMap nu_a = a.nu.retyped({}, {a.space}), nu_b = b.nu.retyped({}, {b.space});
            pre.add(compare_maps("xi " + pair_name(i, j) + " natural wrt unit " + std::to_string(i + 1),
                                 compose(x, tensor(nu_a, id_b)), tensor(id_b, nu_a)));
            pre.add(compare_maps("xi " + pair_name(i, j) + " natural wrt unit " + std::to_string(j + 1),
                                 compose(x, tensor(id_a, nu_b)), tensor(nu_b, id_a)));
            sigma.emplace(BraidedSystem::Key{i, j}, x);
        }
    }
    if (!pre.ok()) throw AxiomFailure(std::move(pre));

    std::vector<Space> comps;
    for (const auto& a : uaas) comps.push_back(a.space);
    BraidedSystem system(std::move(comps), std::move(sigma));

    AxiomReport condition;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            const UAA& a = uaas[i];
            const UAA& b = uaas[j];
            const LinMap& x = system.sigma(i, j);
            LinMap id_a = identity(f, a.space), id_b = identity(f, b.space);
            LinMap mu_a = a.mu.retyped({a.space, a.space}, {a.space});
            LinMap mu_b = b.mu.retyped({b.space, b.space}, {b.space});
            condition.add(compare_maps("xi " + pair_name(i, j) + " natural wrt product " + std::to_string(i + 1),
                                       compose(x, tensor(mu_a, id_b)),
                                       compose_chain({tensor(id_b, mu_a), tensor(x, id_a), tensor(id_a, x)})));
            condition.add(compare_maps("xi " + pair_name(i, j) + " natural wrt product " + std::to_string(j + 1),
                                       compose(x, tensor(id_a, mu_b)),
                                       compose_chain({tensor(mu_b, id_a), tensor(id_b, x), tensor(x, id_b)})));
        }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            for (std::size_t k = j + 1; k < r; ++k) condition.add(cybe_instance(system, i, j, k));

    AxiomReport cybe = verify_cybe(system);
    return UAASystemResult{std::move(condition), std::move(cybe), std::move(system)};
}

BraidedSystem glue(const BraidedSystem& s, std::size_t lo, std::size_t hi) {
    if (!(lo <= hi && hi < s.rank())) throw std::out_of_range("glue needs lo <= hi < rank");
    const Field& f = s.field();
    const std::size_t width = hi - lo + 1;
    Factors block(s.components().begin() + static_cast<std::ptrdiff_t>(lo),
                  s.components().begin() + static_cast<std::ptrdiff_t>(hi + 1));
    std::string label;
    std::vector<std::string> names;
    for (const auto& c : block) label += (label.empty() ? "" : "(x)") + c.label;
    // basis names a.b.c from the factor names
    for (std::size_t t = 0; t < total_dim(block); ++t) {
        std::vector<std::size_t> digits = split_index(block, t);
        std::string name;
        for (std::size_t d = 0; d < digits.size(); ++d) name += (d ? "." : "") + block[d].basis_name(digits[d]);
        names.push_back(std::move(name));
    }
    Space glued(total_dim(block), label, std::move(names));

    // old index -> new index for the untouched components
    auto new_index = [&](std::size_t old) { return old < lo ? old : old - width + 1; };
    std::vector<Space> comps;
    for (std::size_t i = 0; i < lo; ++i) comps.push_back(s.component(i));
    comps.push_back(glued);
    for (std::size_t i = hi + 1; i < s.rank(); ++i) comps.push_back(s.component(i));

    std::map<BraidedSystem::Key, LinMap> sigma;
    for (const auto& [key, map] : s.sigmas()) {
        auto [i, j] = key;
        bool i_out = i < lo || i > hi, j_out = j < lo || j > hi;
        if (i_out && j_out) sigma.emplace(BraidedSystem::Key{new_index(i), new_index(j)}, map);
    }
    sigma.emplace(BraidedSystem::Key{lo, lo}, identity(f, Factors{glued, glued}));
    for (std::size_t i = 0; i < lo; ++i) {
        // V_i moves right through the block, one factor at a time
        Factors ctx{s.component(i)};
        ctx.insert(ctx.end(), block.begin(), block.end());
        LinMap acc = identity(f, ctx);
        for (std::size_t t = 0; t < width; ++t) {
            acc = compose(embed_at(s.sigma(i, lo + t), t, ctx), acc);
            std::swap(ctx[t], ctx[t + 1]);
        }
        sigma.emplace(BraidedSystem::Key{i, lo}, acc.retyped({s.component(i), glued}, {glued, s.component(i)}));
    }
    for (std::size_t k = hi + 1; k < s.rank(); ++k) {
        // V_k moves left through the block, last factor first
        Factors ctx = block;
        ctx.push_back(s.component(k));
        LinMap acc = identity(f, ctx);
        for (std::size_t t = width; t-- > 0;) {
            acc = compose(embed_at(s.sigma(lo + t, k), t, ctx), acc);
            std::swap(ctx[t], ctx[t + 1]);
        }
        sigma.emplace(BraidedSystem::Key{lo, new_index(k)},
                      acc.retyped({glued, s.component(k)}, {s.component(k), glued}));
    }
    BraidedSystem out(std::move(comps), std::move(sigma));
    AxiomReport rep = verify_cybe(out);
    if (!rep.ok()) throw AxiomFailure(std::move(rep));
    return out;
}

bool PrecisionReport::consistent() const {
    return std::all_of(rows.begin(), rows.end(), [](const PrecisionRow& r) { return r.consistent(); });
}

PrecisionReport precision_harness(const BialgebraRef& h, const Space& v, const LinMap& action, const LinMap& coaction,
                                  const LinMap& mu, const LinMap& nu) {
    const Bialgebra& b = *h;
    LinMap act = action.retyped({b.space, v}, {v});
    LinMap coact = coaction.retyped({v}, {v, b.space});
    LinMap m = mu.retyped({v, v}, {v});
    LinMap n = nu.retyped({}, {v});
    BraidedSystem s = assemble_yd_system(b, {SystemComponent{v, act, coact, m, n}});

    AxiomReport module = check_module(HModule{h, v, act});
    AxiomReport comodule = check_comodule(h, v, coact);
    AxiomReport algebra = yd_algebra_compatibility(b, act, coact, m, n);
    AxiomReport uaa = check_uaa(v, m, n);

    PrecisionReport out;
    auto row = [&](std::size_t i, std::size_t j, std::size_t k, std::string axiom, bool side, bool holds) {
        AxiomResult inst = cybe_instance(s, i, j, k);
        out.rows.push_back(PrecisionRow{inst.name, std::move(axiom), side, inst.holds, holds});
    };
    row(0, 1, 2, "yd compatibility", true, yd_compatibility(b, act, coact).holds);
    row(0, 0, 1, "action associativity", module.holds("action unit"), module.holds("action associativity"));
    row(1, 2, 2, "coaction coassociativity", comodule.holds("coaction counit"),
        comodule.holds("coaction coassociativity"));
    row(0, 1, 1, "action multiplicative", algebra.holds("action unital"), algebra.holds("action multiplicative"));
    row(1, 1, 2, "coaction multiplicative", algebra.holds("coaction unital"), algebra.holds("coaction multiplicative"));
    row(1, 1, 1, "associativity", uaa.holds("left unit") && uaa.holds("right unit"), uaa.holds("associativity"));
    return out;
}

namespace {

Scalar random_scalar(const Field& f, std::mt19937_64& rng) {
    if (f.is_prime()) {
        std::uniform_int_distribution<std::uint64_t> d(0, f.characteristic() - 1);
        return f.from_int(static_cast<std::int64_t>(d(rng)));
    }
    std::uniform_int_distribution<std::int64_t> d(-3, 3);
    return f.from_int(d(rng));
}

// Index of some nonzero coefficient of a column vector (or row functional).
std::size_t pivot_of(const SparseMatrix& m, bool column) {
    for (std::size_t i = 0; i < (column ? m.rows() : m.cols()); ++i)
        if (!(column ? m.at(i, 0) : m.at(0, i)).is_zero()) return i;
    throw std::invalid_argument("zero unit or counit");
}

}  // namespace

HarnessInputs random_harness_inputs(const Bialgebra& h, std::size_t dim, std::mt19937_64& rng) {
    if (dim == 0) throw std::invalid_argument("harness space must have dimension >= 1");
    const Field& f = h.field();
    const std::size_t dh = h.dim();
    Space v(dim, "V");

    // unit e0, the rest of the product random
    SparseMatrix mu(f, dim, dim * dim);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            for (std::size_t c = 0; c < dim; ++c) {
                Scalar val = a == 0 ? (b == c ? f.one() : f.zero())
                             : b == 0 ? (a == c ? f.one() : f.zero())
                                      : random_scalar(f, rng);
                mu.set(c, a * dim + b, val);
            }
    SparseMatrix nu(f, dim, 1);
    nu.set(0, 0, f.one());

    // action: 1_H acts as identity, e0 spans a trivial submodule
    const SparseMatrix& unit = h.nu.matrix();
    const SparseMatrix& counit = h.eps.matrix();
    const std::size_t u0 = pivot_of(unit, true);
    SparseMatrix act(f, dim, dh * dim);
    for (std::size_t i = 0; i < dh; ++i) act.set(0, i * dim, counit.at(0, i));
    for (std::size_t a = 1; a < dim; ++a) {
        for (std::size_t i = 0; i < dh; ++i)
            if (i != u0)
                for (std::size_t b = 0; b < dim; ++b) act.set(b, i * dim + a, random_scalar(f, rng));
        // solve sum_i unit_i act(e_i, e_a) = e_a for the pivot column
        Scalar inv = unit.at(u0, 0).inverse();
        for (std::size_t b = 0; b < dim; ++b) {
            Scalar rest = b == a ? f.one() : f.zero();
            for (std::size_t i = 0; i < dh; ++i)
                if (i != u0) rest = rest - unit.at(i, 0) * act.at(b, i * dim + a);
            act.set(b, u0 * dim + a, rest * inv);
        }
    }

    // coaction: counit respected, e0 -> e0 (x) 1_H
    const std::size_t c0 = pivot_of(counit, false);
    SparseMatrix coact(f, dim * dh, dim);
    for (std::size_t i = 0; i < dh; ++i) coact.set(i, 0, unit.at(i, 0));
    for (std::size_t a = 1; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            Scalar rest = b == a ? f.one() : f.zero();
            for (std::size_t i = 0; i < dh; ++i)
                if (i != c0) {
                    Scalar x = random_scalar(f, rng);
                    coact.set(b * dh + i, a, x);
                    rest = rest - counit.at(0, i) * x;
                }
            coact.set(b * dh + c0, a, rest * counit.at(0, c0).inverse());
        }
    }
    return HarnessInputs{v, LinMap({h.space, v}, {v}, std::move(act)), LinMap({v}, {v, h.space}, std::move(coact)),
                         LinMap({v, v}, {v}, std::move(mu)), LinMap({}, {v}, std::move(nu))};
}

}  // namespace hopfbraid
