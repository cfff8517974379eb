#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "stonevn/bool_space.hpp"
#include "stonevn/errors.hpp"
#include "stonevn/sampling.hpp"

using namespace stonevn;

TEST_CASE("partition counts are the Bell numbers from an independent triangle") {
    const auto bell = oracles::bell_triangle(8);
    REQUIRE(bell.size() == 9);
    CHECK(bell[3] == 5);
    CHECK(bell[4] == 15);
    CHECK(bell[6] == 203);
    CHECK(bell[8] == 4140);
    for (std::size_t n = 0; n <= 6; ++n)
        CHECK(all_equiv_relations(n).size() == bell[n]);
    CHECK(all_equiv_relations(8).size() == bell[8]);
    CHECK_THROWS_AS(all_equiv_relations(9), ResourceError);
}

TEST_CASE("equivalence relations normalize, compare, and refine correctly") {
    const auto r = EquivRelation::from_blocks(4, {{2, 0}, {3}, {1}});
    CHECK(r.block_count() == 3);
    CHECK(r.related(0, 2));
    CHECK(!r.related(0, 1));
    CHECK(r == EquivRelation::from_blocks(4, {{0, 2}, {1}, {3}}));
    CHECK(EquivRelation::discrete(4).refines(r));
    CHECK(r.refines(EquivRelation::total(4)));
    CHECK(!r.refines(EquivRelation::discrete(4)));

    CHECK_THROWS_AS(EquivRelation::from_blocks(4, {{0, 1}, {2}}), ContractError);     // misses 3
    CHECK_THROWS_AS(EquivRelation::from_blocks(3, {{0, 1}, {1, 2}}), ContractError);  // overlap
    CHECK_THROWS_AS(EquivRelation::from_blocks(3, {{0, 3}, {1, 2}}), ContractError);  // out of range
}

TEST_CASE("quotients collapse blocks and name points by their members") {
    const FiniteBoolSpace space({"p", "q", "r"});
    const auto rel = EquivRelation::from_blocks(3, {{0, 1}, {2}});
    const Quotient q = quotient(space, rel);
    CHECK(q.space.points == std::vector<std::string>{"p|q", "r"});
    CHECK(q.projection(0) == q.projection(1));
    CHECK(q.projection(2) != q.projection(0));

    // Quotient by the discrete relation is a renaming bijection; by the
    // total relation everything lands on one point.
    CHECK(quotient(space, EquivRelation::discrete(3)).space.size() == 3);
    CHECK(quotient(space, EquivRelation::total(3)).space.size() == 1);
}

TEST_CASE("transition maps exist exactly for refinements") {
    const FiniteBoolSpace space({"p", "q", "r"});
    const auto finer = EquivRelation::from_blocks(3, {{0}, {1}, {2}});
    const auto coarser = EquivRelation::from_blocks(3, {{0, 1}, {2}});
    const ContinuousMap t = transition(space, finer, coarser);
    CHECK(t.domain.size() == 3);
    CHECK(t.codomain.size() == 2);
    CHECK(t(0) == t(1));
    CHECK_THROWS_AS(transition(space, coarser, finer), ContractError);
}

TEST_CASE("two-level chain has the expected limit threads") {
    const FiniteBoolSpace lower({"0", "1"});
    const FiniteBoolSpace upper({"00", "01", "10", "11"});
    InverseSystem system;
    system.levels = {upper, lower};
    system.add_arrow(0, 1, ContinuousMap(upper, lower, {0, 0, 1, 1}));
    const LimitResult result = limit(system);
    REQUIRE(result.threads.size() == 4); // one thread per upper point
    CHECK(result.space.size() == 4);
    for (const auto& thread : result.threads) {
        const std::size_t up = thread.components[0];
        const std::size_t down = thread.components[1];
        CHECK((up / 2) == down); // arrow sends 00,01 -> 0 and 10,11 -> 1
    }
    // Projections commute with the arrow.
    CHECK(compose(system.arrows[0].map, result.projections[0]) == result.projections[1]);
}

TEST_CASE("incoherent systems are rejected with a witness") {
    const FiniteBoolSpace a({"x", "y"});
    const FiniteBoolSpace b({"u"});
    InverseSystem system;
    system.levels = {a, b, b};
    system.add_arrow(0, 1, ContinuousMap(a, b, {0, 0}));
    system.add_arrow(0, 2, ContinuousMap(a, b, {0, 0}));
    system.add_arrow(1, 2, ContinuousMap(b, b, {0}));
    CHECK_NOTHROW(system.validate());

    // A second, disagreeing arrow between the same levels is incoherent.
    const FiniteBoolSpace c({"u", "v"});
    InverseSystem bad;
    bad.levels = {c, c};
    bad.add_arrow(0, 1, ContinuousMap(c, c, {0, 1}));
    bad.add_arrow(0, 1, ContinuousMap(c, c, {1, 0}));
    CHECK_THROWS_AS(bad.validate(), ContractError);
}

TEST_CASE("limit of a diagram with an empty level is empty") {
    InverseSystem system;
    system.levels = {FiniteBoolSpace({"p"}), FiniteBoolSpace()};
    // No arrows: the limit is the product; the empty factor kills it.
    CHECK(limit(system).space.size() == 0);
}

TEST_CASE("profinite embedding is a homeomorphism for every small space") {
    for (std::size_t n = 0; n <= 5; ++n) {
        const ProfiniteEmbedding emb = profinite_embedding(indexed_space(n));
        CHECK(emb.homeomorphism.passed());
        CHECK(emb.limit.space.size() == n);
        CHECK(emb.embedding.is_bijective());
    }
    // 3 points: full partition lattice has Bell(3) = 5 levels.
    CHECK(profinite_embedding(indexed_space(3)).system.relations.size() == 5);
}

TEST_CASE("pullback relations and induced quotient maps") {
    const FiniteBoolSpace dom({"p", "q", "r"});
    const FiniteBoolSpace cod({"u", "v"});
    const ContinuousMap f(dom, cod, {0, 0, 1});
    const auto rel = EquivRelation::total(2);
    const auto pulled = pullback_relation(f, rel);
    CHECK(pulled == EquivRelation::total(3));

    const auto discrete_pull = pullback_relation(f, EquivRelation::discrete(2));
    CHECK(discrete_pull == EquivRelation::from_blocks(3, {{0, 1}, {2}}));

    const ContinuousMap induced = induced_quotient_map(f, EquivRelation::discrete(2));
    CHECK(induced.domain.size() == 2);
    CHECK(induced.codomain.size() == 2);
    CHECK(induced.is_bijective());
}

TEST_CASE("induced limit maps cover identity, collapse, and empty domains") {
    const FiniteBoolSpace dom = indexed_space(3);
    const LimitMap ident = induced_limit_map(ContinuousMap::identity(dom));
    CHECK(ident.coherence.passed());
    CHECK(ident.map == ContinuousMap::identity(ident.source.limit.space));

    const FiniteBoolSpace one({"z"});
    const LimitMap collapse = induced_limit_map(ContinuousMap(dom, one, {0, 0, 0}));
    CHECK(collapse.coherence.passed());
    CHECK(collapse.target.limit.space.size() == 1);

    const LimitMap from_empty = induced_limit_map(ContinuousMap(FiniteBoolSpace(), one, {}));
    CHECK(from_empty.coherence.passed());
    CHECK(from_empty.source.limit.space.size() == 0);
}
