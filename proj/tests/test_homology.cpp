#include <doctest.h>

#include <map>
#include <random>

#include "hopfbraid/homology.hpp"
#include "support.hpp"

using namespace hopfbraid;
using namespace testsupport;

namespace {

BialgebraRef group_ref(const Field& f, const MonoidTable& g) {
    return std::make_shared<const Bialgebra>(group_algebra(f, g));
}

YDModule regular_over(const BialgebraRef& h, const MonoidTable& g) {
    YDModule m = regular_yd_group_algebra(h->field(), g);
    m.base = h;
    return m;
}

LinMap block_or_zero(const GradedComplex& c, const DegreeMap& map, std::size_t src, std::size_t tgt) {
    auto it = map.find({src, tgt});
    if (it != map.end()) return it->second.retyped(c.spaces[src], c.spaces[tgt]);
    return LinMap::zero(c.field, c.spaces[src], c.spaces[tgt]);
}

bool graded_is_zero(const DegreeMap& m) {
    for (const auto& [key, block] : m)
        if (!block.matrix().is_zero()) return false;
    return true;
}

// Both maps agree on every block, absent blocks read as zero.
bool graded_equal(const GradedComplex& c, const DegreeMap& a, const DegreeMap& b) {
    for (const auto& [key, block] : a)
        if (block_or_zero(c, a, key.first, key.second) != block_or_zero(c, b, key.first, key.second)) return false;
    for (const auto& [key, block] : b)
        if (block_or_zero(c, a, key.first, key.second) != block_or_zero(c, b, key.first, key.second)) return false;
    return true;
}

struct GroupSetup {
    MonoidTable g;
    BialgebraRef h;
    YDModule reg;
    std::size_t top;
};

std::vector<GroupSetup> group_setups(const Field& f) {
    std::vector<GroupSetup> out;
    for (auto [g, top] : {std::pair{cyclic_group(2), std::size_t{4}}, std::pair{symmetric_group_s3(), std::size_t{3}}}) {
        auto h = group_ref(f, g);
        out.push_back({g, h, regular_over(h, g), top});
    }
    return out;
}

}  // namespace

TEST_CASE("counit characters") {
    const Field f = q();
    for (const auto& gs : group_setups(f)) {
        BraidedSystem s = build_yd_system(gs.h, {gs.reg});
        EpsCharacters ch = eps_characters(*gs.h, s);
        CHECK(check_character(s, ch.counit).ok());
        CHECK(check_character(s, ch.dual_counit).ok());
        CHECK(ch.counit.maps[1].matrix().is_zero());
        CHECK(ch.dual_counit.maps[0].matrix().is_zero());
    }
    SUBCASE("an indicator of a non-identity element is not a character") {
        auto g = symmetric_group_s3();
        auto h = group_ref(f, g);
        BraidedSystem s = build_yd_system(h, {regular_over(h, g)});
        EpsCharacters ch = eps_characters(*h, s);
        BraidedCharacter bad = ch.counit;
        SparseMatrix row(f, 1, 6);
        row.set(0, 1, f.one());
        bad.maps[0] = LinMap({h->space}, {}, row);
        AxiomReport rep = check_character(s, bad);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.first_failure()->name == "character 1,1");
        CHECK(rep.first_failure()->witness.has_value());
    }
}

TEST_CASE("generic differentials in low degree") {
    const Field f = q();
    auto g = cyclic_group(3);
    auto h = group_ref(f, g);
    BraidedSystem s = build_yd_system(h, {regular_over(h, g)});
    EpsCharacters ch = eps_characters(*h, s);
    GradedComplex c = generic_differentials(s, ch.dual_counit, ch.counit, 2);
    // ten multi-degrees of total <= 2 in three kinds
    CHECK(c.degrees.size() == 10);
    const std::size_t one_dual = *c.index_of({0, 0, 1});
    const std::size_t one_h = *c.index_of({1, 0, 0});
    const std::size_t empty = *c.index_of({0, 0, 0});
    CHECK(block_or_zero(c, c.d, one_dual, empty) == ch.dual_counit.maps[2]);
    CHECK(block_or_zero(c, c.d_prime, one_h, empty) == ch.counit.maps[0]);
    CHECK_FALSE(c.d.contains({*c.index_of({0, 1, 0}), empty}));
    CHECK(verify_bicomplex(c).ok());
}

TEST_CASE("rank-1 system with the left associativity braiding gives the bar differential") {
    const Field f = q();
    auto h = group_ref(f, symmetric_group_s3());
    const Space& a = h->space;
    UAA alg{a, h->mu, h->nu};
    std::map<BraidedSystem::Key, LinMap> sig;
    sig.emplace(BraidedSystem::Key{0, 0}, sigma_ass(alg, AssSide::Left));
    BraidedSystem s({a}, sig);
    BraidedCharacter eps{{h->eps}};
    GradedComplex c = generic_differentials(s, eps, BraidedCharacter{{LinMap::zero(f, {a}, {})}}, 4);
    CHECK(c.d_prime.empty());
    for (std::size_t n = 1; n <= 4; ++n) {
        const std::size_t src = *c.index_of({n});
        const std::size_t tgt = *c.index_of({n - 1});
        const Factors& ctx = c.spaces[src];
        LinMap bar = LinMap::zero(f, ctx, c.spaces[tgt]);
        for (std::size_t i = 1; i < n; ++i) bar = bar + embed_at(h->mu, i - 1, ctx).scaled(num(f, i % 2 ? -1 : 1));
        const LinMap first = embed_at(h->eps, 0, ctx);
        CHECK(block_or_zero(c, c.d, src, tgt) - first == bar);
    }
    CHECK(verify_bicomplex(c).ok());
}

TEST_CASE("generic differentials agree with the expanded formulas") {
    const Field f = q();
    for (const auto& gs : group_setups(f)) {
        CAPTURE(gs.g.size());
        GradedComplex yd = yd_bidifferential(gs.h, gs.reg, gs.top);
        BraidedSystem s = build_yd_system(gs.h, {gs.reg});
        EpsCharacters ch = eps_characters(*gs.h, s);
        GradedComplex gen = generic_differentials(s, ch.dual_counit, ch.counit, gs.top);
        std::size_t compared = 0;
        for (std::size_t i = 0; i < yd.degrees.size(); ++i) {
            const std::size_t n = yd.degrees[i][0], m = yd.degrees[i][1];
            if (n + m + 1 > gs.top) continue;
            const std::size_t gi = *gen.index_of({n, 1, m});
            if (m > 0) {
                const std::size_t t = *yd.index_of({n, m - 1}), gt = *gen.index_of({n, 1, m - 1});
                CHECK(block_or_zero(yd, yd.d, i, t) == block_or_zero(gen, gen.d, gi, gt).retyped(yd.spaces[i], yd.spaces[t]));
                ++compared;
            }
            if (n > 0) {
                const std::size_t t = *yd.index_of({n - 1, m}), gt = *gen.index_of({n - 1, 1, m});
                CHECK(block_or_zero(yd, yd.d_prime, i, t) ==
                      block_or_zero(gen, gen.d_prime, gi, gt).retyped(yd.spaces[i], yd.spaces[t]));
                ++compared;
            }
        }
        CHECK(compared > 0);
    }
}

TEST_CASE("expanded formulas on kS3 in degree (1,1) against the group table") {
    const Field f = q();
    auto g = symmetric_group_s3();
    auto h = group_ref(f, g);
    GradedComplex c = yd_bidifferential(h, regular_over(h, g), 2);
    const std::size_t src = *c.index_of({1, 1});
    const LinMap d = block_or_zero(c, c.d, src, *c.index_of({1, 0}));
    const LinMap dp = block_or_zero(c, c.d_prime, src, *c.index_of({0, 1}));
    for (std::size_t x = 0; x < 6; ++x)
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t l = 0; l < 6; ++l) {
                // d(x (x) a (x) delta_l) = [l = x a] x (x) a, pairing l(1) with a
                for (std::size_t y = 0; y < 6; ++y)
                    for (std::size_t b = 0; b < 6; ++b) {
                        const bool hit = y == x && b == a && l == g.product[x][a];
                        CHECK(entry(d, {y, b}, {x, a, l}) == (hit ? f.one() : f.zero()));
                    }
                // d'(x (x) a (x) delta_l) = x a x^-1 (x) delta_(l x^-1)
                const std::size_t xi = group_inverse(g, x);
                for (std::size_t b = 0; b < 6; ++b)
                    for (std::size_t k = 0; k < 6; ++k) {
                        const bool hit = b == g.product[g.product[x][a]][xi] && k == g.product[l][xi];
                        CHECK(entry(dp, {b, k}, {x, a, l}) == (hit ? f.one() : f.zero()));
                    }
            }
}

TEST_CASE("expanded formulas satisfy the bicomplex identities") {
    const Field f = q();
    for (const auto& gs : group_setups(f)) {
        GradedComplex c = yd_bidifferential(gs.h, gs.reg, gs.top);
        AxiomReport rep = verify_bicomplex(c);
        CHECK(rep.ok());
        CHECK(rep.find(std::string(kAnticommute) + " from (1,1)") != nullptr);
        // d lowers the second degree only, d' the first
        for (const auto& [key, block] : c.d) {
            CHECK(c.degrees[key.second][0] == c.degrees[key.first][0]);
            CHECK(c.degrees[key.second][1] + 1 == c.degrees[key.first][1]);
        }
        for (const auto& [key, block] : c.d_prime) {
            CHECK(c.degrees[key.second][0] + 1 == c.degrees[key.first][0]);
            CHECK(c.degrees[key.second][1] == c.degrees[key.first][1]);
        }
    }
}

TEST_CASE("integer combinations of the two differentials square to zero") {
    const Field f = q();
    auto g = cyclic_group(2);
    auto h = group_ref(f, g);
    GradedComplex c = yd_bidifferential(h, regular_over(h, g), 4);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, -3}}) {
        CAPTURE(a);
        CAPTURE(b);
        DegreeMap comb = add_graded(scale_graded(c.d, num(f, a)), scale_graded(c.d_prime, num(f, b)));
        CHECK(graded_is_zero(compose_graded(c, comb, comb)));
    }
}

TEST_CASE("the four lines of the table") {
    const Field f = q();
    for (const auto& gs : group_setups(f)) {
        CAPTURE(gs.g.size());
        for (int line = 1; line <= 4; ++line) {
            CAPTURE(line);
            CHECK_NOTHROW(table1_complex(gs.h, gs.reg, unit_yd(gs.h), line, gs.top));
        }
        BarCobar parts = bar_cobar(gs.h, gs.reg, gs.reg, 3);
        for (int line = 1; line <= 4; ++line) CHECK(verify_bicomplex(table1_unchecked(parts, line)).ok());
    }
    SUBCASE("over the dual of kS3") {
        auto g = symmetric_group_s3();
        auto h = group_ref(f, g);
        auto hd = std::make_shared<const Bialgebra>(dual_bialgebra(*h));
        YDModule m = dual_yd(regular_over(h, g), hd);
        REQUIRE(check_yd(m, YDLevel::YD).ok());
        BarCobar parts = bar_cobar(hd, m, m, 3);
        for (int line = 1; line <= 4; ++line) CHECK(verify_bicomplex(table1_unchecked(parts, line)).ok());
    }
    CHECK_THROWS_AS(table1_unchecked(bar_cobar(group_ref(f, cyclic_group(2)), unit_yd(group_ref(f, cyclic_group(2))),
                                               unit_yd(group_ref(f, cyclic_group(2))), 1),
                                     5),
                    std::invalid_argument);
}

TEST_CASE("line 2 with trivial N is the negated YD bicomplex with the roles swapped") {
    const Field f = q();
    for (const auto& gs : group_setups(f)) {
        GradedComplex yd = yd_bidifferential(gs.h, gs.reg, gs.top);
        GradedComplex t = table1_complex(gs.h, gs.reg, unit_yd(gs.h), 2, gs.top);
        REQUIRE(t.degrees == yd.degrees);
        // the tables agree on blocks but carry the extra trivial factor
        GradedComplex view = yd;
        view.spaces = t.spaces;
        CHECK(graded_equal(view, t.d, scale_graded(yd.d_prime, -f.one())));
        CHECK(graded_equal(view, t.d_prime, scale_graded(yd.d, -f.one())));
    }
}

TEST_CASE("a sign error in one term is caught with its degree") {
    const Field f = q();
    auto g = symmetric_group_s3();
    auto h = group_ref(f, g);
    BarCobar parts = bar_cobar(h, regular_over(h, g), unit_yd(h), 3);
    parts.pi.contract_first_h = scale_graded(parts.pi.contract_first_h, -f.one());
    AxiomReport rep = verify_bicomplex(table1_unchecked(parts, 3));
    REQUIRE_FALSE(rep.ok());
    const AxiomResult* bad = rep.first_failure();
    CHECK(bad->witness.has_value());
    CHECK(bad->name.find(" from (") != std::string::npos);
    CHECK_FALSE(bad->note.empty());
}

TEST_CASE("contraction maps commute pairwise") {
    const Field f = q();
    for (const auto& gs : group_setups(f)) {
        AxiomReport rep = pi_commutation_suite(gs.h, gs.reg, gs.reg, 3);
        CHECK(rep.results().size() == 6);
        CHECK(rep.ok());
    }
    SUBCASE("a perturbed contraction fails") {
        auto g = cyclic_group(2);
        auto h = group_ref(f, g);
        BarCobar parts = bar_cobar(h, regular_over(h, g), unit_yd(h), 3);
        const std::size_t src = *parts.skeleton.index_of({2, 1});
        const std::size_t tgt = *parts.skeleton.index_of({1, 1});
        LinMap& blk = parts.pi.contract_last_h.at({src, tgt});
        blk = blk.scaled(num(f, 2));
        AxiomReport rep = pi_commutation_suite(parts);
        CHECK_FALSE(rep.ok());
        CHECK(rep.first_failure()->witness.has_value());
    }
}

TEST_CASE("homology of a complex with zero differentials") {
    const Field f = q();
    auto g = cyclic_group(2);
    auto h = group_ref(f, g);
    BraidedSystem s = build_yd_system(h, {regular_over(h, g)});
    BraidedCharacter none;
    for (std::size_t i = 0; i < 3; ++i) none.maps.push_back(LinMap::zero(f, {s.component(i)}, {}));
    GradedComplex c = generic_differentials(s, none, none, 3);
    CHECK(c.d.empty());
    HomologyReport rep = homology_dims(c, Differential::Total, false);
    // ordered words H^a M^b (H*)^c with a + b + c = k, each of dimension 2^k
    const std::vector<std::size_t> expected{1, 6, 24};
    REQUIRE(rep.rows.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(rep.rows[k].chain_dim == expected[k]);
        CHECK(rep.dim(k) == expected[k]);
    }
    CHECK(rep.euler_holds());
}

TEST_CASE("line 1 over the trivial bialgebra is acyclic above degree 0") {
    const Field f = q();
    auto h = group_ref(f, cyclic_group(1));
    const std::size_t top = 5;
    GradedComplex c = table1_complex(h, unit_yd(h), unit_yd(h), 1, top);
    HomologyReport rep = homology_dims(c, Differential::Total, false);
    REQUIRE(rep.rows.size() == top);
    for (std::size_t k = 0; k < top; ++k) {
        CAPTURE(k);
        CHECK(rep.rows[k].chain_dim == k + 1);
        CHECK(rep.dim(k) == (k == 0 ? 1u : 0u));
    }
    // bar alone: one-dimensional chains, multiplication signs alternate
    HomologyReport bar_only = homology_dims(c, Differential::D, false);
    CHECK(bar_only.dim(0) == 1);
    CHECK(bar_only.euler_holds());
}

TEST_CASE("homology of line 4 over kZ/2") {
    const Field f = q();
    auto g = cyclic_group(2);
    auto h = group_ref(f, g);
    const std::size_t top = 4;
    GradedComplex c = table1_complex(h, regular_over(h, g), unit_yd(h), 4, top);
    HomologyReport rep = homology_dims(c, Differential::Total, false);
    REQUIRE(rep.rows.size() == top);
    DegreeMap total = add_graded(c.d, c.d_prime);
    std::vector<std::size_t> ranks(top + 2, 0);
    for (std::size_t k = 1; k <= top; ++k) ranks[k] = dense_rank(total_degree_matrix(c, total, k));
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < top; ++k) {
        CHECK(rep.rows[k].rank == ranks[k]);
        CHECK(rep.dim(k) == rep.rows[k].chain_dim - ranks[k] - ranks[k + 1]);
        dims.push_back(rep.dim(k));
    }
    CHECK(dims == std::vector<std::size_t>{1, 0, 0, 0});
    CHECK(rep.euler_holds());
    CHECK(rep.d_squared);
    CHECK(rep.anticommute);

    HomologyReport co = homology_dims(c, Differential::Total, true);
    for (std::size_t k = 0; k < top; ++k) CHECK(co.dim(k) == rep.dim(k));
    CHECK(co.cohomology);

    CHECK_THROWS_AS(rep.dim(top), std::out_of_range);
    try {
        rep.dim(top + 3);
    } catch (const std::out_of_range& e) {
        CHECK(std::string(e.what()).find("insufficient truncation") != std::string::npos);
    }
}

TEST_CASE("homology refuses a differential that does not square to zero") {
    const Field f = q();
    auto g = symmetric_group_s3();
    auto h = group_ref(f, g);
    BarCobar parts = bar_cobar(h, regular_over(h, g), unit_yd(h), 3);
    parts.pi.contract_first_h = scale_graded(parts.pi.contract_first_h, -f.one());
    GradedComplex c = table1_unchecked(parts, 3);
    CHECK_THROWS_AS(homology_dims(c, Differential::Total, false), std::invalid_argument);
    // d' = cobar + contraction of the last dual does not involve the flipped term
    CHECK_NOTHROW(homology_dims(c, Differential::DPrime, false));
}

TEST_CASE("property: homology is invariant under a change of basis in each degree") {
    const Field f = f5();
    auto g = cyclic_group(2);
    auto h = group_ref(f, g);
    const std::size_t top = 3;
    GradedComplex c = table1_complex(h, regular_over(h, g), regular_over(h, g), 4, top);
    const HomologyReport base = homology_dims(c, Differential::Total, false);
    std::mt19937_64 rng(20261019);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<SparseMatrix> p, p_inv;
        for (std::size_t i = 0; i < c.degrees.size(); ++i) {
            p.push_back(random_invertible(f, c.dim(i), rng));
            p_inv.push_back(*inverse(p.back()));
        }
        auto conjugate = [&](const DegreeMap& m) {
            DegreeMap out;
            for (const auto& [key, block] : m)
                out.emplace(key, LinMap(block.domain(), block.codomain(), p[key.second] * block.matrix() * p_inv[key.first]));
            return out;
        };
        GradedComplex moved = c;
        moved.d = conjugate(c.d);
        moved.d_prime = conjugate(c.d_prime);
        CHECK(verify_bicomplex(moved).ok());
        HomologyReport rep = homology_dims(moved, Differential::Total, false);
        for (std::size_t k = 0; k < top; ++k) CHECK(rep.dim(k) == base.dim(k));
    }
}
