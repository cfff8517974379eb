#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "stonevn/bool_alg.hpp"
#include "stonevn/errors.hpp"
#include "stonevn/rng.hpp"
#include "stonevn/sampling.hpp"

using namespace stonevn;

TEST_CASE("element operations are the set operations on atoms") {
    const BoolAlg algebra({"a", "b", "c"});
    const BAElement x = element_of(algebra, {"a", "c"});
    const BAElement y = element_of(algebra, {"b", "c"});
    CHECK(meet(x, y) == element_of(algebra, {"c"}));
    CHECK(join(x, y) == top(algebra));
    CHECK(complement(x) == element_of(algebra, {"b"}));
    CHECK(leq(element_of(algebra, {"c"}), x));
    CHECK(!leq(x, y));
    CHECK(all_elements(algebra).size() == 8);
    CHECK_THROWS_AS(element_of(algebra, {"z"}), ContractError);
}

TEST_CASE("boolean algebra laws hold on every element pair of a 3-atom algebra") {
    const BoolAlg algebra({"a", "b", "c"});
    const auto elements = all_elements(algebra);
    for (const auto& x : elements) {
        CHECK(join(x, complement(x)) == top(algebra));
        CHECK(meet(x, complement(x)) == bottom(algebra));
        CHECK(complement(complement(x)) == x);
        for (const auto& y : elements) {
            CHECK(meet(x, y) == meet(y, x));
            CHECK(join(x, y) == join(y, x));
            CHECK(complement(meet(x, y)) == join(complement(x), complement(y)));
            CHECK(meet(x, join(x, y)) == x); // absorption
        }
    }
}

TEST_CASE("ultrafilters match brute-force family enumeration") {
    for (std::size_t atom_count = 1; atom_count <= 3; ++atom_count) {
        const BoolAlg algebra = indexed_algebra(atom_count);
        const auto fast = ultrafilters(algebra);
        const auto slow = oracles::brute_force_ultrafilters(algebra);
        REQUIRE(fast.size() == atom_count); // principal ultrafilters only
        REQUIRE(slow.size() == fast.size());

        // Each library ultrafilter's membership table appears among the
        // brute-force families, and vice versa (sets of masks are equal).
        const auto elements = all_elements(algebra);
        std::vector<std::vector<bool>> fast_masks;
        for (const auto& u : fast) {
            std::vector<bool> mask;
            mask.reserve(elements.size());
            for (const auto& x : elements) mask.push_back(u.contains(x));
            fast_masks.push_back(std::move(mask));
        }
        auto sorted_fast = fast_masks;
        auto sorted_slow = slow;
        std::sort(sorted_fast.begin(), sorted_fast.end());
        std::sort(sorted_slow.begin(), sorted_slow.end());
        CHECK(sorted_fast == sorted_slow);
    }
}

TEST_CASE("stone space points are the ultrafilters, named by their atoms") {
    const BoolAlg algebra({"a", "b", "c"});
    const FiniteBoolSpace space = stone(algebra);
    CHECK(space.points == std::vector<std::string>{"a", "b", "c"});

    // The degenerate algebra (no atoms) has no ultrafilters to build a space
    // from; constructing its stone space is a contract violation.
    const BoolAlg degenerate(std::vector<std::string>{});
    CHECK_THROWS_AS(stone(degenerate), ContractError);
}

TEST_CASE("clopen algebra of a space and the empty-space degenerate case") {
    const FiniteBoolSpace space({"p", "q"});
    const BoolAlg algebra = clopen(space);
    CHECK(algebra.atoms == space.points);

    const FiniteBoolSpace empty(std::vector<std::string>{});
    const BoolAlg degenerate = clopen(empty);
    CHECK(degenerate.atom_count() == 0);
    CHECK(degenerate.degenerate_from_empty_space);
    CHECK(top(degenerate) == bottom(degenerate)); // 0 = 1 collapses
}

TEST_CASE("hom laws and composition") {
    const BoolAlg dom({"a", "b", "c"});
    const BoolAlg cod({"u", "v"});
    // dual: u <- a, v <- c.
    const BAHom h(dom, cod, {0, 2});
    CHECK(h(element_of(dom, {"a"})) == element_of(cod, {"u"}));
    CHECK(h(element_of(dom, {"b"})) == bottom(cod));
    CHECK(h(element_of(dom, {"a", "c"})) == top(cod));
    CHECK(hom_laws_check(h).passed());

    const BAHom ident = BAHom::identity(dom);
    CHECK(compose(h, ident) == h);
    const BoolAlg cod2({"z"});
    const BAHom g(cod, cod2, {1});
    CHECK(compose(g, h).dual_atom_map == std::vector<std::size_t>{2});
}

TEST_CASE("stone and clopen round trip on algebras and spaces") {
    for (std::size_t n = 1; n <= 4; ++n)
        CHECK(stone_roundtrip_algebra_check(indexed_algebra(n)).passed());
    for (std::size_t n = 0; n <= 4; ++n)
        CHECK(stone_roundtrip_space_check(indexed_space(n)).passed());

    Rng rng(31);
    for (int i = 0; i < 25; ++i) {
        const std::size_t atoms = rng.below(8) + 1;
        CHECK(stone_roundtrip_algebra_check(indexed_algebra(atoms, "x")).passed());
    }
}

TEST_CASE("morphism-level round trip: clopen of stone of a hom is the hom") {
    Rng rng(37);
    for (int i = 0; i < 25; ++i) {
        const BoolAlg dom = indexed_algebra(rng.below(5) + 1, "a");
        const BoolAlg cod = indexed_algebra(rng.below(5) + 1, "b");
        const BAHom h = random_ba_hom(dom, cod, rng);
        CHECK(clopen_map(stone_map(h)) == h);
        CHECK(hom_laws_check(h).passed());
    }
}
