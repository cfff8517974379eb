#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stonevn/bool_alg.hpp"
#include "stonevn/bool_space.hpp"
#include "stonevn/product_ring.hpp"
#include "stonevn/report.hpp"
#include "stonevn/verify.hpp"

namespace stonevn {

using Json = nlohmann::json;

// Wire formats. All serialization is canonical — objects with sorted keys,
// two-space indentation, one trailing newline — so identical values produce
// identical bytes and fixtures diff cleanly. Parsers are strict: unknown
// keys, missing keys, or values of the wrong shape are ParseErrors.

enum class ScalarTag { rational, real };

// {"field":"Q","points":["s1","s2"]}  (field "R" for the floating backend)
struct RingDoc {
    ScalarTag tag = ScalarTag::rational;
    std::vector<std::string> points;

    ProductRing<Rational> as_rational() const;
    ProductRing<RealApprox> as_real() const;
};

RingDoc parse_ring(const Json& doc);
Json ring_json(const std::vector<std::string>& points, ScalarTag tag);
template <ScalarField K>
Json ring_json(const ProductRing<K>& ring);

// {"coords":{"s1":"2","s2":"-1/3"}} — scalar values serialized as strings;
// numeric literals are accepted on input.
template <ScalarField K>
RingElement<K> parse_element(const Json& doc, const ProductRing<K>& ring);
template <ScalarField K>
Json element_json(const RingElement<K>& a);

// {"dual":{"t1":"s2"}} — one entry per codomain point, valued in domain
// point names.
template <ScalarField K>
RingHom<K> parse_hom(const Json& doc, const ProductRing<K>& domain,
                     const ProductRing<K>& codomain);
template <ScalarField K>
Json hom_json(const RingHom<K>& f);

// {"atoms":["a","b","c"]}
BoolAlg parse_algebra(const Json& doc);
Json algebra_json(const BoolAlg& algebra);

// {"subset":["a","c"]}
BAElement parse_ba_element(const Json& doc, const BoolAlg& algebra);
Json ba_element_json(const BAElement& x);

// {"dual_atoms":{"t":"a"}}
BAHom parse_ba_hom(const Json& doc, const BoolAlg& domain, const BoolAlg& codomain);
Json ba_hom_json(const BAHom& h);

// {"points":["p","q"]}
FiniteBoolSpace parse_space(const Json& doc);
Json space_json(const FiniteBoolSpace& space);

// {"map":{"p":"q"}} — one entry per domain point.
ContinuousMap parse_map(const Json& doc, const FiniteBoolSpace& domain,
                        const FiniteBoolSpace& codomain);
Json map_json(const ContinuousMap& f);

// {"blocks":[["a","b"],["c"]]}
EquivRelation parse_partition(const Json& doc, const FiniteBoolSpace& space);
Json partition_json(const EquivRelation& relation, const FiniteBoolSpace& space);

// {"levels":[{"points":[...]},...],"arrows":[{"from":1,"to":0,"map":{...}}]}
InverseSystem parse_system(const Json& doc);
Json system_json(const InverseSystem& system);

Json report_json(const CheckReport& report);
Json criteria_json(const std::vector<CriterionResult>& criteria);

// Wraps the underlying JSON parser, converting its errors (with byte
// offsets) into ParseError.
Json parse_json_text(const std::string& text, const std::string& what);
Json load_json_file(const std::string& path);

std::string canonical_dump(const Json& doc);

} // namespace stonevn
