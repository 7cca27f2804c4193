#include "hopfbraid/homology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <array>
#include <stdexcept>

namespace hopfbraid {

AxiomReport check_character(const BraidedSystem& s, const BraidedCharacter& c) {
    if (c.maps.size() != s.rank()) throw std::invalid_argument("character needs one map per component");
    AxiomReport rep;
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = i; j < s.rank(); ++j) {
            LinMap zi = c.maps[i].retyped({s.component(i)}, {});
            LinMap zj = c.maps[j].retyped({s.component(j)}, {});
            rep.add(compare_maps("character " + std::to_string(i + 1) + "," + std::to_string(j + 1),
                                 compose(tensor(zj, zi), s.sigma(i, j)), tensor(zi, zj)));
        }
    return rep;
}

EpsCharacters eps_characters(const Bialgebra& h, const BraidedSystem& s) {
    if (s.rank() < 2 || s.component(0).dim != h.dim() || s.component(s.rank() - 1).dim != h.dim())
        throw std::invalid_argument("system is not of the form (H, M_1..M_r, H*) over this bialgebra");
    const Field& f = h.field();
    EpsCharacters out;
    for (std::size_t i = 0; i < s.rank(); ++i) {
        out.counit.maps.push_back(LinMap::zero(f, {s.component(i)}, {}));
        out.dual_counit.maps.push_back(LinMap::zero(f, {s.component(i)}, {}));
    }
    out.counit.maps.front() = h.eps.retyped({s.component(0)}, {});
    out.dual_counit.maps.back() = rainbow_dual(h.nu).retyped({s.component(s.rank() - 1)}, {});
    return out;
}

std::size_t GradedComplex::total(std::size_t index) const {
    const MultiDegree& deg = degrees.at(index);
    return std::accumulate(deg.begin(), deg.end(), std::size_t{0});
}

std::optional<std::size_t> GradedComplex::index_of(const MultiDegree& deg) const {
    auto it = std::find(degrees.begin(), degrees.end(), deg);
    if (it == degrees.end()) return std::nullopt;
    return static_cast<std::size_t>(it - degrees.begin());
}

std::string GradedComplex::degree_name(std::size_t index) const {
    std::string out = "(";
    for (std::size_t k = 0; k < degrees.at(index).size(); ++k) out += (k ? "," : "") + std::to_string(degrees[index][k]);
    return out + ")";
}

namespace {

void accumulate_block(DegreeMap& target, std::size_t src, std::size_t tgt, const LinMap& block) {
    auto it = target.find({src, tgt});
    if (it == target.end())
        target.emplace(std::make_pair(src, tgt), block);
    else
        it->second = it->second + block;
}

}  // namespace

DegreeMap compose_graded(const GradedComplex&, const DegreeMap& a, const DegreeMap& b) {
    std::multimap<std::size_t, std::pair<std::size_t, const LinMap*>> by_source;
    for (const auto& [key, map] : a) by_source.emplace(key.first, std::make_pair(key.second, &map));
    DegreeMap out;
    for (const auto& [key, inner] : b) {
        auto [lo, hi] = by_source.equal_range(key.second);
        for (auto it = lo; it != hi; ++it) accumulate_block(out, key.first, it->second.first, compose(*it->second.second, inner));
    }
    return out;
}

DegreeMap add_graded(const DegreeMap& a, const DegreeMap& b) {
    DegreeMap out = a;
    for (const auto& [key, map] : b) accumulate_block(out, key.first, key.second, map);
    return out;
}

DegreeMap scale_graded(const DegreeMap& a, const Scalar& s) {
    DegreeMap out;
    for (const auto& [key, map] : a) out.emplace(key, map.scaled(s));
    return out;
}

namespace {

void enumerate_degrees(std::size_t rank, std::size_t max_total, MultiDegree& cur, std::vector<MultiDegree>& out) {
    if (cur.size() == rank) {
        out.push_back(cur);
        return;
    }
    std::size_t used = std::accumulate(cur.begin(), cur.end(), std::size_t{0});
    for (std::size_t k = 0; used + k <= max_total; ++k) {
        cur.push_back(k);
        enumerate_degrees(rank, max_total, cur, out);
        cur.pop_back();
    }
}

// All multi-degrees of total <= max_total, sorted by total, then lexicographically.
std::vector<MultiDegree> degrees_up_to(std::size_t rank, std::size_t max_total) {
    std::vector<MultiDegree> out;
    MultiDegree cur;
    enumerate_degrees(rank, max_total, cur, out);
    auto total = [](const MultiDegree& d) { return std::accumulate(d.begin(), d.end(), std::size_t{0}); };
    std::stable_sort(out.begin(), out.end(), [&](const MultiDegree& a, const MultiDegree& b) {
        return total(a) != total(b) ? total(a) < total(b) : a < b;
    });
    return out;
}

Scalar sign(const Field& f, std::size_t exponent) { return exponent % 2 ? -f.one() : f.one(); }

}  // namespace

GradedComplex generic_differentials(const BraidedSystem& s, const BraidedCharacter& zeta, const BraidedCharacter& xi,
                                    std::size_t max_total_degree) {
    if (zeta.maps.size() != s.rank() || xi.maps.size() != s.rank())
        throw std::invalid_argument("characters need one map per component");
    const Field& f = s.field();
    GradedComplex c;
    c.field = f;
    c.truncation = max_total_degree;
    c.degrees = degrees_up_to(s.rank(), max_total_degree);
    std::vector<std::vector<std::size_t>> kinds;
    for (const MultiDegree& deg : c.degrees) {
        Factors spaces;
        std::vector<std::size_t> kind;
        for (std::size_t t = 0; t < deg.size(); ++t)
            for (std::size_t k = 0; k < deg[t]; ++k) {
                spaces.push_back(s.component(t));
                kind.push_back(t);
            }
        c.spaces.push_back(std::move(spaces));
        kinds.push_back(std::move(kind));
    }

    for (std::size_t src = 0; src < c.degrees.size(); ++src) {
        const std::size_t n = kinds[src].size();
        for (std::size_t p = 0; p < n; ++p) {
            const std::size_t kind = kinds[src][p];
            MultiDegree lower = c.degrees[src];
            --lower[kind];
            const std::size_t tgt = *c.index_of(lower);
            const Scalar sg = sign(f, p);

            if (!zeta.maps[kind].matrix().is_zero()) {
                Factors ctx = c.spaces[src];
                std::vector<std::size_t> kd = kinds[src];
                LinMap acc = identity(f, ctx);
                for (std::size_t q = p; q > 0; --q) {
                    acc = compose(embed_at(s.sigma(kd[q - 1], kd[q]), q - 1, ctx), acc);
                    std::swap(ctx[q - 1], ctx[q]);
                    std::swap(kd[q - 1], kd[q]);
                }
                LinMap z = zeta.maps[kind].retyped({ctx[0]}, {});
                acc = compose(embed_at(z, 0, ctx), acc).retyped(c.spaces[src], c.spaces[tgt]);
                accumulate_block(c.d, src, tgt, acc.scaled(sg));
            }
            if (!xi.maps[kind].matrix().is_zero()) {
                Factors ctx = c.spaces[src];
                std::vector<std::size_t> kd = kinds[src];
                LinMap acc = identity(f, ctx);
                for (std::size_t q = p; q + 1 < n; ++q) {
                    acc = compose(embed_at(s.sigma(kd[q], kd[q + 1]), q, ctx), acc);
                    std::swap(ctx[q], ctx[q + 1]);
                    std::swap(kd[q], kd[q + 1]);
                }
                LinMap x = xi.maps[kind].retyped({ctx[n - 1]}, {});
                acc = compose(embed_at(x, n - 1, ctx), acc).retyped(c.spaces[src], c.spaces[tgt]);
                accumulate_block(c.d_prime, src, tgt, acc.scaled(sg));
            }
        }
    }
    return c;
}

namespace {

using Terms = std::vector<std::pair<std::size_t, Scalar>>;
// columns[j]: nonzero (row, value) pairs of column j
using Columns = std::vector<Terms>;

Columns columns_of(const LinMap& m) {
    SparseMatrix t = m.matrix().transpose();
    Columns out(t.rows());
    for (std::size_t j = 0; j < t.rows(); ++j)
        for (const auto& e : t.row(j)) out[j].push_back({e.col, e.value});
    return out;
}

using Word = std::vector<std::size_t>;
using WordSum = std::map<Word, Scalar>;

void add_term(WordSum& sum, const Word& w, const Scalar& c) {
    auto [it, fresh] = sum.try_emplace(w, c);
    if (!fresh) it->second = it->second + c;
}

// Iterated coproduct into `parts` factors, splitting the first factor each time.
WordSum iterated_coproduct(const Columns& delta, std::size_t dim, std::size_t x, std::size_t parts, const Field& f) {
    WordSum cur{{Word{x}, f.one()}};
    for (std::size_t step = 1; step < parts; ++step) {
        WordSum next;
        for (const auto& [w, c] : cur)
            for (const auto& [row, v] : delta[w[0]]) {
                Word nw{row / dim, row % dim};
                nw.insert(nw.end(), w.begin() + 1, w.end());
                add_term(next, nw, c * v);
            }
        cur = std::move(next);
    }
    return cur;
}

// Degrees (n, m) with n + m <= max and spaces H^n (x) M (x) (H*)^m (x) tail.
GradedComplex bidegree_skeleton(const Field& f, const Space& hs, const Space& ms, const Space& hd, const std::optional<Space>& tail,
                                std::size_t max_total) {
    GradedComplex c;
    c.field = f;
    c.truncation = max_total;
    c.degrees = degrees_up_to(2, max_total);
    for (const auto& deg : c.degrees) {
        Factors sp(deg[0], hs);
        sp.push_back(ms);
        sp.insert(sp.end(), deg[1], hd);
        if (tail) sp.push_back(*tail);
        c.spaces.push_back(std::move(sp));
    }
    return c;
}

void require_ok(AxiomReport rep) {
    if (!rep.ok()) throw AxiomFailure(std::move(rep));
}

}  // namespace

GradedComplex yd_bidifferential(const BialgebraRef& hp, const YDModule& m, std::size_t max_total_degree) {
    const Bialgebra& h = *hp;
    if (!same_base(hp, m.base)) throw std::invalid_argument("module is over a different bialgebra");
    {
        AxiomReport inputs = check_bialgebra(h, BialgebraLevel::Bialgebra);
        inputs.append(check_yd(m, YDLevel::YD));
        require_ok(std::move(inputs));
    }
    const Field& f = h.field();
    const std::size_t dh = h.dim();
    const std::size_t dm = m.space.dim;
    Bialgebra dual = dual_bialgebra(h);
    const Space hd = h.space.dual();
    GradedComplex c = bidegree_skeleton(f, h.space, m.space, hd, std::nullopt, max_total_degree);

    const Columns mu_h = columns_of(h.mu);
    const Columns delta_h = columns_of(h.delta);
    const Columns mu_d = columns_of(dual.mu);
    const Columns delta_d = columns_of(dual.delta);
    const Columns act = columns_of(m.action);
    const Columns coact = columns_of(m.coaction);

    for (std::size_t src = 0; src < c.degrees.size(); ++src) {
        const std::size_t n = c.degrees[src][0], mm = c.degrees[src][1];
        const Factors& dom = c.spaces[src];

        if (mm >= 1) {
            const std::size_t tgt = *c.index_of({n, mm - 1});
            LinMap block = map_from_images(f, dom, c.spaces[tgt], [&](std::size_t col) {
                Word w = split_index(dom, col);
                const Word hs(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
                const std::size_t a = w[n];
                const Word ls(w.begin() + static_cast<std::ptrdiff_t>(n + 1), w.end());
                WordSum out;
                // <l1(1), a(1)> <l1(2), hn(2)> ... <l1(n+1), h1(2)> h1(1)..hn(1) (x) a(0) (x) l2..lm
                WordSum pieces = iterated_coproduct(delta_d, dh, ls[0], n + 1, f);
                const Scalar s1 = sign(f, n + 1);
                for (const auto& [row, ca] : coact[a]) {
                    const std::size_t a0 = row / dh, a1 = row % dh;
                    // expand the coproducts of h_1..h_n
                    std::vector<std::pair<Word, Word>> firsts_seconds{{{}, {}}};
                    std::vector<Scalar> coefs{ca};
                    for (std::size_t i = 0; i < n; ++i) {
                        std::vector<std::pair<Word, Word>> next;
                        std::vector<Scalar> next_coefs;
                        for (std::size_t t = 0; t < firsts_seconds.size(); ++t)
                            for (const auto& [r2, ch] : delta_h[hs[i]]) {
                                auto fs = firsts_seconds[t];
                                fs.first.push_back(r2 / dh);
                                fs.second.push_back(r2 % dh);
                                next.push_back(std::move(fs));
                                next_coefs.push_back(coefs[t] * ch);
                            }
                        firsts_seconds = std::move(next);
                        coefs = std::move(next_coefs);
                    }
                    for (std::size_t t = 0; t < firsts_seconds.size(); ++t) {
                        Word key{a1};
                        for (std::size_t i = n; i-- > 0;) key.push_back(firsts_seconds[t].second[i]);
                        auto it = pieces.find(key);
                        if (it == pieces.end()) continue;
                        Word ow = firsts_seconds[t].first;
                        ow.push_back(a0);
                        ow.insert(ow.end(), ls.begin() + 1, ls.end());
                        add_term(out, ow, s1 * coefs[t] * it->second);
                    }
                }
                // sum_i (-1)^(n+i+1) ... (l_i l_(i+1)) ...
                for (std::size_t i = 1; i < mm; ++i)
                    for (const auto& [prod, cp] : mu_d[ls[i - 1] * dh + ls[i]]) {
                        Word ow(hs);
                        ow.push_back(a);
                        for (std::size_t k = 0; k < mm; ++k) {
                            if (k == i) continue;
                            ow.push_back(k == i - 1 ? prod : ls[k]);
                        }
                        add_term(out, ow, sign(f, n + i + 1) * cp);
                    }
                Terms terms;
                for (const auto& [ow, cv] : out) terms.push_back({join_index(c.spaces[tgt], ow), cv});
                return terms;
            });
            if (!block.matrix().is_zero()) c.d.emplace(std::make_pair(src, tgt), std::move(block));
        }

        if (n >= 1) {
            const std::size_t tgt = *c.index_of({n - 1, mm});
            LinMap block = map_from_images(f, dom, c.spaces[tgt], [&](std::size_t col) {
                Word w = split_index(dom, col);
                const Word hs(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
                const std::size_t a = w[n];
                const Word ls(w.begin() + static_cast<std::ptrdiff_t>(n + 1), w.end());
                WordSum out;
                // <l1(1), hn(m)> ... <lm(1), hn(1)> h1..h_(n-1) (x) hn(m+1) a (x) l1(2)..lm(2)
                const Scalar s1 = sign(f, n - 1);
                for (const auto& [q, cq] : iterated_coproduct(delta_h, dh, hs[n - 1], mm + 1, f)) {
                    std::vector<Word> tails{{}};
                    std::vector<Scalar> coefs{s1 * cq};
                    for (std::size_t j = 1; j <= mm; ++j) {
                        std::vector<Word> next;
                        std::vector<Scalar> next_coefs;
                        for (const auto& [row, cl] : delta_d[ls[j - 1]]) {
                            if (row / dh != q[mm - j]) continue;
                            for (std::size_t t = 0; t < tails.size(); ++t) {
                                Word nt = tails[t];
                                nt.push_back(row % dh);
                                next.push_back(std::move(nt));
                                next_coefs.push_back(coefs[t] * cl);
                            }
                        }
                        tails = std::move(next);
                        coefs = std::move(next_coefs);
                    }
                    for (const auto& [ra, cact] : act[q[mm] * dm + a])
                        for (std::size_t t = 0; t < tails.size(); ++t) {
                            Word ow(hs.begin(), hs.end() - 1);
                            ow.push_back(ra);
                            ow.insert(ow.end(), tails[t].begin(), tails[t].end());
                            add_term(out, ow, coefs[t] * cact);
                        }
                }
                // sum_i (-1)^(i-1) ... (h_i h_(i+1)) ...
                for (std::size_t i = 1; i < n; ++i)
                    for (const auto& [prod, cp] : mu_h[hs[i - 1] * dh + hs[i]]) {
                        Word ow;
                        for (std::size_t k = 0; k < n; ++k) {
                            if (k == i) continue;
                            ow.push_back(k == i - 1 ? prod : hs[k]);
                        }
                        ow.push_back(a);
                        ow.insert(ow.end(), ls.begin(), ls.end());
                        add_term(out, ow, sign(f, i - 1) * cp);
                    }
                Terms terms;
                for (const auto& [ow, cv] : out) terms.push_back({join_index(c.spaces[tgt], ow), cv});
                return terms;
            });
            if (!block.matrix().is_zero()) c.d_prime.emplace(std::make_pair(src, tgt), std::move(block));
        }
    }
    require_ok(verify_bicomplex(c));
    return c;
}

namespace {

// a_1..a_n -> a_1 ... a_n; unit for n = 0
LinMap product_of(const Field& f, const Space& s, const LinMap& mu, const LinMap& nu, std::size_t n) {
    if (n == 0) return nu.retyped({}, {s});
    LinMap acc = identity(f, s);
    Factors dom{s};
    LinMap m = mu.retyped({s, s}, {s});
    for (std::size_t k = 1; k < n; ++k) {
        acc = compose(m, tensor(acc, identity(f, s)));
        dom.push_back(s);
        acc = acc.retyped(dom, {s});
    }
    return acc;
}

// a_1..a_n -> a_1(1)..a_n(1) (x) a_1(2)..a_n(2)
LinMap split_coproduct(const Field& f, const Space& s, const LinMap& delta, std::size_t n) {
    if (n == 0) return identity(f, Factors{});
    std::vector<LinMap> parts(n, delta.retyped({s}, {s, s}));
    LinMap all = tensor_maps(parts);
    std::vector<std::size_t> perm(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        perm[k] = 2 * k;
        perm[n + k] = 2 * k + 1;
    }
    return compose(permute_factors(f, Factors(2 * n, s), perm), all);
}

// Moves factor `from` to position `to` (positions in the result).
LinMap move_factor(const Field& f, const Factors& ctx, std::size_t from, std::size_t to) {
    std::vector<std::size_t> perm(ctx.size());
    std::iota(perm.begin(), perm.end(), 0);
    perm.erase(perm.begin() + static_cast<std::ptrdiff_t>(from));
    perm.insert(perm.begin() + static_cast<std::ptrdiff_t>(to), from);
    return permute_factors(f, ctx, perm);
}

// compose outer after inner, tracking the codomain as the next context
struct Chain {
    LinMap acc;
    Factors ctx;

    void then_at(const LinMap& phi, std::size_t slot) {
        LinMap step = embed_at(phi, slot, ctx);
        acc = compose(step, acc);
        ctx = step.codomain();
    }
    void then(const LinMap& full) {
        acc = compose(full, acc);
        ctx = full.codomain();
    }
};

template <typename Fn>
DegreeMap signed_by_degree(const GradedComplex& c, const DegreeMap& map, Fn&& exponent) {
    DegreeMap out;
    for (const auto& [key, block] : map) {
        const MultiDegree& deg = c.degrees[key.first];
        out.emplace(key, exponent(deg[0], deg[1]) % 2 ? -block : block);
    }
    return out;
}

}  // namespace

const DegreeMap& PiMaps::get(PiMap which) const {
    switch (which) {
        case PiMap::ContractFirstDual: return contract_first_dual;
        case PiMap::ContractLastDual: return contract_last_dual;
        case PiMap::ContractLastH: return contract_last_h;
        case PiMap::ContractFirstH: return contract_first_h;
    }
    throw std::invalid_argument("unknown contraction map");
}

BarCobar bar_cobar(const BialgebraRef& hp, const YDModule& m, const YDModule& nmod, std::size_t max_total_degree) {
    const Bialgebra& h = *hp;
    if (!same_base(hp, m.base) || !same_base(hp, nmod.base)) throw std::invalid_argument("modules are over a different bialgebra");
    const Field& f = h.field();
    auto dual_base = std::make_shared<const Bialgebra>(dual_bialgebra(h));
    const Space hs = h.space;
    const Space hd = h.space.dual();
    YDModule nd = dual_yd(nmod, dual_base);
    const Space ns = nd.space;
    const Space ms = m.space;

    LinMap mu_h = h.mu.retyped({hs, hs}, {hs});
    LinMap delta_h = h.delta.retyped({hs}, {hs, hs});
    LinMap mu_d = dual_base->mu.retyped({hd, hd}, {hd});
    LinMap nu_d = dual_base->nu.retyped({}, {hd});
    LinMap delta_d = dual_base->delta.retyped({hd}, {hd, hd});
    LinMap act_m = m.action.retyped({hs, ms}, {ms});
    LinMap coact_m = m.coaction.retyped({ms}, {ms, hs});
    LinMap act_nd = nd.action.retyped({hd, ns}, {ns});
    LinMap coact_nd = nd.coaction.retyped({ns}, {ns, hd});
    LinMap on_dual = dual_regular_action(h).retyped({hs, hd}, {hd});
    LinMap ev = evaluation_right(f, hs).retyped({hs, hd}, {});

    BarCobar out;
    GradedComplex& c = out.skeleton;
    c = bidegree_skeleton(f, hs, ms, hd, ns, max_total_degree);

    for (std::size_t src = 0; src < c.degrees.size(); ++src) {
        const std::size_t n = c.degrees[src][0], mm = c.degrees[src][1];
        const Factors& ctx = c.spaces[src];
        auto target = [&](std::size_t dn, std::size_t dmm) { return *c.index_of({n - dn, mm - dmm}); };

        if (n >= 2) {
            LinMap acc = LinMap::zero(f, ctx, c.spaces[target(1, 0)]);
            for (std::size_t i = 1; i < n; ++i) acc = acc + embed_at(mu_h, i - 1, ctx).scaled(sign(f, i));
            out.bar.emplace(std::make_pair(src, target(1, 0)), acc);
        }
        if (mm >= 2) {
            LinMap acc = LinMap::zero(f, ctx, c.spaces[target(0, 1)]);
            for (std::size_t i = 1; i < mm; ++i) acc = acc + embed_at(mu_d, n + 1 + i - 1, ctx).scaled(sign(f, i));
            out.cobar.emplace(std::make_pair(src, target(0, 1)), acc);
        }
        if (mm >= 1) {
            // <l_1, h_1(2)..h_n(2) a(1)> h_1(1)..h_n(1) (x) a(0) (x) l_2..l_m (x) b
            Factors hn(n, hs);
            Factors front = hn;
            front.push_back(ms);
            LinMap step = tensor(split_coproduct(f, hs, delta_h, n), coact_m);
            std::vector<std::size_t> perm;
            for (std::size_t k = 0; k < n; ++k) perm.push_back(k);
            perm.push_back(2 * n);
            for (std::size_t k = 0; k < n; ++k) perm.push_back(n + k);
            perm.push_back(2 * n + 1);
            step = compose(permute_factors(f, step.codomain(), perm), step);
            step = compose(tensor(identity(f, front), product_of(f, hs, mu_h, h.nu, n + 1)), step);
            Chain ch{identity(f, ctx), ctx};
            ch.then_at(step.retyped(front, [&] { Factors x = front; x.push_back(hs); return x; }()), 0);
            ch.then_at(ev, n + 1);
            out.pi.contract_first_dual.emplace(std::make_pair(src, target(0, 1)), ch.acc.retyped(ctx, c.spaces[target(0, 1)]));

            // <l_m(1), h_1(1)..h_n(1)> h_1(2)..h_n(2) (x) a (x) l_1..l_(m-1) (x) l_m(2) b
            LinMap g = split_coproduct(f, hs, delta_h, n);
            std::vector<std::size_t> swap_halves;
            for (std::size_t k = 0; k < n; ++k) swap_halves.push_back(n + k);
            for (std::size_t k = 0; k < n; ++k) swap_halves.push_back(k);
            g = compose(permute_factors(f, g.codomain(), swap_halves), g);
            g = compose(tensor(identity(f, hn), product_of(f, hs, mu_h, h.nu, n)), g);
            Chain cl{identity(f, ctx), ctx};
            cl.then_at(g, 0);
            // H factor at index n goes right before the last H*
            cl.then(move_factor(f, cl.ctx, n, n + 1 + (mm - 1)));
            cl.then_at(on_dual, n + 1 + (mm - 1));
            cl.then_at(act_nd, n + 1 + (mm - 1));
            out.pi.contract_last_dual.emplace(std::make_pair(src, target(0, 1)), cl.acc.retyped(ctx, c.spaces[target(0, 1)]));
        }
        if (n >= 1) {
            // <l_1(1)..l_m(1), h_n(1)> h_1..h_(n-1) (x) h_n(2) a (x) l_1(2)..l_m(2) (x) b
            Factors dm(mm, hd);
            LinMap k = split_coproduct(f, hd, delta_d, mm);
            k = compose(tensor(product_of(f, hd, mu_d, nu_d, mm), identity(f, dm)), k);
            Chain cl{identity(f, ctx), ctx};
            cl.then_at(k, n + 1);
            cl.then_at(delta_h, n - 1);
            cl.then_at(act_m, n);
            cl.then(move_factor(f, cl.ctx, n, n - 1));
            cl.then_at(ev, n);
            out.pi.contract_last_h.emplace(std::make_pair(src, target(1, 0)), cl.acc.retyped(ctx, c.spaces[target(1, 0)]));

            // <l_1(2)..l_m(2) b(1), h_1> h_2..h_n (x) a (x) l_1(1)..l_m(1) (x) b(0)
            LinMap j = tensor(split_coproduct(f, hd, delta_d, mm), coact_nd);
            std::vector<std::size_t> perm;
            for (std::size_t t = 0; t < mm; ++t) perm.push_back(t);
            perm.push_back(2 * mm);
            for (std::size_t t = 0; t < mm; ++t) perm.push_back(mm + t);
            perm.push_back(2 * mm + 1);
            j = compose(permute_factors(f, j.codomain(), perm), j);
            Factors kept = dm;
            kept.push_back(ns);
            j = compose(tensor(identity(f, kept), product_of(f, hd, mu_d, nu_d, mm + 1)), j);
            Chain cr{identity(f, ctx), ctx};
            cr.then_at(j, n + 1);
            cr.then(move_factor(f, cr.ctx, 0, cr.ctx.size() - 2));
            cr.then_at(ev, cr.ctx.size() - 2);
            out.pi.contract_first_h.emplace(std::make_pair(src, target(1, 0)), cr.acc.retyped(ctx, c.spaces[target(1, 0)]));
        }
    }
    return out;
}

GradedComplex table1_unchecked(const BarCobar& parts, int line) {
    if (line < 1 || line > 4) throw std::invalid_argument("line must be 1..4");
    GradedComplex c = parts.skeleton;
    auto n_exp = [](std::size_t n, std::size_t) { return n; };
    auto nm_exp = [](std::size_t n, std::size_t m) { return n + m; };
    c.d = parts.bar;
    c.d_prime = signed_by_degree(c, parts.cobar, n_exp);
    if (line == 2 || line == 4) {
        c.d = add_graded(c.d, signed_by_degree(c, parts.pi.contract_last_h, n_exp));
        c.d_prime = add_graded(c.d_prime, signed_by_degree(c, parts.pi.contract_first_dual, n_exp));
    }
    if (line == 3 || line == 4) {
        c.d = add_graded(c.d, parts.pi.contract_first_h);
        c.d_prime = add_graded(c.d_prime, signed_by_degree(c, parts.pi.contract_last_dual, nm_exp));
    }
    return c;
}

GradedComplex table1_complex(const BialgebraRef& h, const YDModule& m, const YDModule& n, int line,
                             std::size_t max_total_degree) {
    if (line < 1 || line > 4) throw std::invalid_argument("line must be 1..4");
    {
        AxiomReport inputs = check_bialgebra(*h, BialgebraLevel::Bialgebra);
        inputs.append(check_yd(m, YDLevel::YD));
        inputs.append(check_yd(n, YDLevel::YD));
        require_ok(std::move(inputs));
    }
    GradedComplex c = table1_unchecked(bar_cobar(h, m, n, max_total_degree), line);
    require_ok(verify_bicomplex(c));
    return c;
}

AxiomReport verify_bicomplex(const GradedComplex& c) {
    const DegreeMap dd = compose_graded(c, c.d, c.d);
    const DegreeMap pp = compose_graded(c, c.d_prime, c.d_prime);
    const DegreeMap anti = add_graded(compose_graded(c, c.d, c.d_prime), compose_graded(c, c.d_prime, c.d));
    AxiomReport rep;
    for (std::size_t src = 0; src < c.degrees.size(); ++src) {
        if (c.total(src) < 2) continue;
        for (const auto& [name, map] : {std::pair{kDSquared, &dd}, std::pair{kDPrimeSquared, &pp}, std::pair{kAnticommute, &anti}}) {
            AxiomResult res{std::string(name) + " from " + c.degree_name(src), true, std::nullopt, ""};
            for (const auto& [key, block] : *map) {
                if (key.first != src || block.matrix().is_zero()) continue;
                AxiomResult cmp = compare_maps(res.name, block, LinMap::zero(block.field(), block.domain(), block.codomain()));
                cmp.note = "lands in " + c.degree_name(key.second);
                res = std::move(cmp);
                break;
            }
            rep.add(std::move(res));
        }
    }
    return rep;
}

SparseMatrix total_degree_matrix(const GradedComplex& c, const DegreeMap& map, std::size_t k) {
    if (k == 0) throw std::out_of_range("no differential out of degree 0");
    std::vector<std::size_t> offset(c.degrees.size(), 0);
    std::size_t rows = 0, cols = 0;
    for (std::size_t i = 0; i < c.degrees.size(); ++i) {
        if (c.total(i) == k - 1) {
            offset[i] = rows;
            rows += c.dim(i);
        } else if (c.total(i) == k) {
            offset[i] = cols;
            cols += c.dim(i);
        }
    }
    SparseMatrix out(c.field, rows, cols);
    for (const auto& [key, block] : map)
        if (c.total(key.first) == k && c.total(key.second) == k - 1)
            out.add_block(offset[key.second], offset[key.first], block.matrix());
    return out;
}

std::size_t HomologyReport::dim(std::size_t degree) const {
    if (degree >= truncation)
        throw std::out_of_range("insufficient truncation: degree " + std::to_string(degree) + " needs truncation > " +
                                std::to_string(degree) + ", have " + std::to_string(truncation));
    return rows.at(degree).homology_dim;
}

HomologyReport homology_dims(const GradedComplex& c, Differential which, bool cohomology) {
    AxiomReport ids = verify_bicomplex(c);
    auto all_hold = [&](const char* prefix) {
        for (const auto& r : ids.results())
            if (r.name.starts_with(prefix) && !r.holds) return false;
        return true;
    };
    HomologyReport rep;
    rep.truncation = c.truncation;
    rep.which = which;
    rep.cohomology = cohomology;
    rep.d_squared = all_hold(kDSquared);
    rep.d_prime_squared = all_hold(kDPrimeSquared);
    rep.anticommute = all_hold(kAnticommute);
    const bool usable = which == Differential::D        ? rep.d_squared
                        : which == Differential::DPrime ? rep.d_prime_squared
                                                        : rep.d_squared && rep.d_prime_squared && rep.anticommute;
    if (!usable) throw std::invalid_argument("chosen differential does not square to zero on this truncation");

    const std::size_t top = c.truncation;
    std::vector<std::size_t> chain(top + 1, 0);
    for (std::size_t i = 0; i < c.degrees.size(); ++i)
        if (c.total(i) <= top) chain[c.total(i)] += c.dim(i);
    const DegreeMap total_map = add_graded(c.d, c.d_prime);
    const DegreeMap& chosen = which == Differential::D ? c.d : which == Differential::DPrime ? c.d_prime : total_map;

    // rank_of[k] = rank of the map C_k -> C_(k-1); zero for k = 0 and past the top
    std::vector<std::size_t> rank_of(top + 2, 0), rank_d(top + 1, 0), rank_dp(top + 1, 0);
    for (std::size_t k = 1; k <= top; ++k) {
        SparseMatrix dk = total_degree_matrix(c, chosen, k);
        rank_of[k] = rank(cohomology ? dk.transpose() : dk);
        rank_d[k] = rank(total_degree_matrix(c, c.d, k));
        rank_dp[k] = rank(total_degree_matrix(c, c.d_prime, k));
    }
    for (std::size_t k = 0; k <= top; ++k) {
        // the top group of the truncated complex has no incoming boundaries
        const std::size_t from_above = k < top ? rank_of[k + 1] : 0;
        const std::size_t hk = chain[k] - rank_of[k] - from_above;
        const long long sg = k % 2 ? -1 : 1;
        rep.euler_chains += sg * static_cast<long long>(chain[k]);
        rep.euler_homology += sg * static_cast<long long>(hk);
        if (k < top) rep.rows.push_back(HomologyRow{k, chain[k], rank_d[k], rank_dp[k], rank_of[k], hk});
    }
    return rep;
}

AxiomReport pi_commutation_suite(const BarCobar& parts) {
    const GradedComplex& c = parts.skeleton;
    const std::array<std::pair<PiMap, const char*>, 4> maps{{{PiMap::ContractFirstDual, "first-dual"},
                                                             {PiMap::ContractLastDual, "last-dual"},
                                                             {PiMap::ContractLastH, "last-H"},
                                                             {PiMap::ContractFirstH, "first-H"}}};
    AxiomReport rep;
    for (std::size_t a = 0; a < maps.size(); ++a)
        for (std::size_t b = a + 1; b < maps.size(); ++b) {
            const DegreeMap& pa = parts.pi.get(maps[a].first);
            const DegreeMap& pb = parts.pi.get(maps[b].first);
            const DegreeMap ab = compose_graded(c, pa, pb);
            const DegreeMap ba = compose_graded(c, pb, pa);
            std::set<std::pair<std::size_t, std::size_t>> keys;
            for (const auto& kv : ab) keys.insert(kv.first);
            for (const auto& kv : ba) keys.insert(kv.first);
            AxiomResult res{std::string("commute ") + maps[a].second + ", " + maps[b].second, true, std::nullopt, ""};
            for (const auto& key : keys) {
                auto ia = ab.find(key);
                auto ib = ba.find(key);
                const LinMap& ref = ia != ab.end() ? ia->second : ib->second;
                const LinMap lhs = ia != ab.end() ? ia->second : LinMap::zero(ref.field(), ref.domain(), ref.codomain());
                const LinMap rhs = ib != ba.end() ? ib->second : LinMap::zero(ref.field(), ref.domain(), ref.codomain());
                AxiomResult cmp = compare_maps(res.name, lhs, rhs);
                if (cmp.holds) continue;
                res = std::move(cmp);
                res.note = "from " + c.degree_name(key.first);
                break;
            }
            rep.add(std::move(res));
        }
    return rep;
}

AxiomReport pi_commutation_suite(const BialgebraRef& h, const YDModule& m, const YDModule& n,
                                 std::size_t max_total_degree) {
    return pi_commutation_suite(bar_cobar(h, m, n, max_total_degree));
}

}  // namespace hopfbraid
