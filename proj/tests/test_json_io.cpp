#include <doctest.h>

#include <string>

#include "stonevn/errors.hpp"
#include "stonevn/json_io.hpp"

using namespace stonevn;

namespace {

Json parsed(const std::string& text) { return parse_json_text(text, "test document"); }

} // namespace

TEST_CASE("ring documents round trip canonically") {
    const std::string text = R"({"field":"Q","points":["s1","s2"]})";
    const RingDoc doc = parse_ring(parsed(text));
    const auto ring = doc.as_rational();
    CHECK(ring.points == std::vector<std::string>{"s1", "s2"});
    const Json emitted = ring_json(ring);
    CHECK(canonical_dump(emitted) == canonical_dump(parsed(canonical_dump(emitted))));
    CHECK(parse_ring(emitted).points == doc.points);

    CHECK_THROWS_AS(parse_ring(parsed(R"({"field":"Z","points":[]})")), ParseError);
    CHECK_THROWS_AS(parse_ring(parsed(R"({"points":["s1"]})")), ParseError);
    CHECK_THROWS_AS(parse_ring(parsed(R"({"field":"Q","points":["s1"],"extra":1})")), ParseError);
    CHECK_THROWS_AS(doc.as_real(), ParseError); // declared Q, asked for R
}

TEST_CASE("element documents accept strings and numbers, emit strings") {
    const auto ring = parse_ring(parsed(R"({"field":"Q","points":["s1","s2"]})")).as_rational();
    const auto a = parse_element(parsed(R"({"coords":{"s1":"2/4","s2":-3}})"), ring);
    CHECK(a.coords[0] == Rational::parse("1/2"));
    CHECK(a.coords[1] == Rational::parse("-3"));
    CHECK(canonical_dump(element_json(a)) ==
          "{\n  \"coords\": {\n    \"s1\": \"1/2\",\n    \"s2\": \"-3\"\n  }\n}\n");
    CHECK(parse_element(element_json(a), ring) == a);

    CHECK_THROWS_AS(parse_element(parsed(R"({"coords":{"s1":"1"}})"), ring), ParseError);
    CHECK_THROWS_AS(parse_element(parsed(R"({"coords":{"s1":"1","sX":"1"}})"), ring), ParseError);
    CHECK_THROWS_AS(parse_element(parsed(R"({"coords":{"s1":"1","s2":true}})"), ring), ParseError);
}

TEST_CASE("hom documents round trip and validate points") {
    const auto dom = parse_ring(parsed(R"({"field":"Q","points":["s1","s2"]})")).as_rational();
    const auto cod = parse_ring(parsed(R"({"field":"Q","points":["t1"]})")).as_rational();
    const auto f = parse_hom(parsed(R"({"dual":{"t1":"s2"}})"), dom, cod);
    CHECK(f.dual_map == std::vector<std::size_t>{1});
    CHECK(parse_hom(hom_json(f), dom, cod) == f);
    CHECK_THROWS_AS(parse_hom(parsed(R"({"dual":{"t1":"nope"}})"), dom, cod), ParseError);
    CHECK_THROWS_AS(parse_hom(parsed(R"({"dual":{}})"), dom, cod), ParseError);
}

TEST_CASE("algebra, element, and hom documents for boolean algebras") {
    const BoolAlg algebra = parse_algebra(parsed(R"({"atoms":["a","b","c"]})"));
    CHECK(algebra.atoms.size() == 3);
    CHECK(parse_algebra(algebra_json(algebra)) == algebra);

    const BAElement x = parse_ba_element(parsed(R"({"subset":["c","a"]})"), algebra);
    CHECK(x.member == std::vector<bool>{true, false, true});
    // Canonical order follows the algebra's atom order regardless of input order.
    CHECK(canonical_dump(ba_element_json(x)).find("\"a\",\n    \"c\"") != std::string::npos);
    CHECK(parse_ba_element(ba_element_json(x), algebra) == x);
    CHECK_THROWS_AS(parse_ba_element(parsed(R"({"subset":["z"]})"), algebra), ParseError);

    const BoolAlg target = parse_algebra(parsed(R"({"atoms":["u"]})"));
    const BAHom h = parse_ba_hom(parsed(R"({"dual_atoms":{"u":"b"}})"), algebra, target);
    CHECK(h.dual_atom_map == std::vector<std::size_t>{1});
    CHECK(parse_ba_hom(ba_hom_json(h), algebra, target) == h);
}

TEST_CASE("space, map, and partition documents") {
    const FiniteBoolSpace space = parse_space(parsed(R"({"points":["p","q","r"]})"));
    CHECK(space.size() == 3);
    CHECK(parse_space(space_json(space)) == space);
    CHECK(parse_space(parsed(R"({"points":[]})")).size() == 0);

    const FiniteBoolSpace cod = parse_space(parsed(R"({"points":["u"]})"));
    const ContinuousMap f = parse_map(parsed(R"({"map":{"p":"u","q":"u","r":"u"}})"), space, cod);
    CHECK(parse_map(map_json(f), space, cod) == f);
    CHECK_THROWS_AS(parse_map(parsed(R"({"map":{"p":"u"}})"), space, cod), ParseError);

    const EquivRelation rel =
        parse_partition(parsed(R"({"blocks":[["p","q"],["r"]]})"), space);
    CHECK(rel.block_count() == 2);
    CHECK(parse_partition(partition_json(rel, space), space) == rel);
    CHECK_THROWS_AS(parse_partition(parsed(R"({"blocks":[["p"]]})"), space), ParseError);
    CHECK_THROWS_AS(parse_partition(parsed(R"({"blocks":[["p","p"],["q","r"]]})"), space),
                    ParseError);
}

TEST_CASE("inverse system documents round trip") {
    const std::string text = R"({
      "levels":[{"points":["00","01","10","11"]},{"points":["0","1"]}],
      "arrows":[{"from":0,"to":1,"map":{"00":"0","01":"0","10":"1","11":"1"}}]
    })";
    const InverseSystem system = parse_system(parsed(text));
    REQUIRE(system.levels.size() == 2);
    REQUIRE(system.arrows.size() == 1);
    CHECK(system.arrows[0].map.point_map == std::vector<std::size_t>{0, 0, 1, 1});

    const Json emitted = system_json(system);
    const InverseSystem again = parse_system(emitted);
    CHECK(again.levels[0] == system.levels[0]);
    CHECK(again.arrows[0].map == system.arrows[0].map);
    CHECK(canonical_dump(system_json(again)) == canonical_dump(emitted));

    CHECK_THROWS_AS(parse_system(parsed(R"({"levels":[],"arrows":[{"from":0,"to":0,"map":{}}]})")),
                    ParseError);
}

TEST_CASE("reports serialize with their failure samples and warnings") {
    CheckReport r("demo");
    r.pass(3);
    r.fail("first bad thing");
    r.warn("heads up");
    const Json doc = report_json(r);
    CHECK(doc.at("name") == "demo");
    CHECK(doc.at("checks") == 4);
    CHECK(doc.at("failures") == 1);
    CHECK(doc.at("passed") == false);
    CHECK(doc.at("failure_samples").size() == 1);
    CHECK(doc.at("warnings").size() == 1);
}

TEST_CASE("json parse errors carry position information") {
    try {
        parse_json_text("{\"a\": }", "broken");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("broken") != std::string::npos);
    }
    CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), ResourceError);
}
