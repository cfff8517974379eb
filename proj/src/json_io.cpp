#include "stonevn/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stonevn/errors.hpp"

namespace stonevn {
namespace {

// Strict object access: exactly the expected keys, no extras.
void require_keys(const Json& doc, const std::vector<std::string>& keys,
                  const std::string& what) {
    if (!doc.is_object()) throw ParseError(what + ": expected a JSON object");
    for (const std::string& k : keys)
        if (!doc.contains(k)) throw ParseError(what + ": missing key \"" + k + "\"");
    for (const auto& [k, v] : doc.items()) {
        (void)v;
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ParseError(what + ": unknown key \"" + k + "\"");
    }
}

std::vector<std::string> string_array(const Json& doc, const std::string& what) {
    if (!doc.is_array()) throw ParseError(what + ": expected an array of strings");
    std::vector<std::string> out;
    out.reserve(doc.size());
    for (const Json& item : doc) {
        if (!item.is_string()) throw ParseError(what + ": expected an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

// Scalars serialize as strings; parsing also accepts raw JSON numbers.
template <ScalarField K>
K parse_scalar(const Json& value, const std::string& what) {
    std::string text;
    if (value.is_string())
        text = value.get<std::string>();
    else if (value.is_number())
        text = value.dump();
    else
        throw ParseError(what + ": expected a scalar as string or number");
    return K::parse(text);
}

std::size_t lookup_point(const std::vector<std::string>& points, const std::string& name,
                         const std::string& what) {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == name) return i;
    throw ParseError(what + ": unknown point \"" + name + "\"");
}

// Parses an object whose keys must be exactly `names`, returning the value
// per name in name order.
std::vector<Json> per_name_values(const Json& doc, const std::vector<std::string>& names,
                                  const std::string& what) {
    if (!doc.is_object()) throw ParseError(what + ": expected a JSON object");
    if (doc.size() != names.size())
        throw ParseError(what + ": expected " + std::to_string(names.size()) +
                         " entries, found " + std::to_string(doc.size()));
    std::vector<Json> out;
    out.reserve(names.size());
    for (const std::string& n : names) {
        if (!doc.contains(n)) throw ParseError(what + ": missing entry for \"" + n + "\"");
        out.push_back(doc.at(n));
    }
    return out;
}

} // namespace

ProductRing<Rational> RingDoc::as_rational() const {
    if (tag != ScalarTag::rational)
        throw ParseError("ring has field \"R\" where the exact field \"Q\" is required");
    return ProductRing<Rational>(points);
}

ProductRing<RealApprox> RingDoc::as_real() const {
    if (tag != ScalarTag::real)
        throw ParseError("ring has field \"Q\" where the floating field \"R\" is required");
    return ProductRing<RealApprox>(points);
}

RingDoc parse_ring(const Json& doc) {
    require_keys(doc, {"field", "points"}, "ring");
    RingDoc out;
    const Json& field = doc.at("field");
    if (!field.is_string()) throw ParseError("ring: \"field\" must be \"Q\" or \"R\"");
    const std::string tag = field.get<std::string>();
    if (tag == "Q")
        out.tag = ScalarTag::rational;
    else if (tag == "R")
        out.tag = ScalarTag::real;
    else
        throw ParseError("ring: \"field\" must be \"Q\" or \"R\", found \"" + tag + "\"");
    out.points = string_array(doc.at("points"), "ring points");
    return out;
}

Json ring_json(const std::vector<std::string>& points, ScalarTag tag) {
    Json doc;
    doc["field"] = (tag == ScalarTag::rational) ? "Q" : "R";
    doc["points"] = points;
    return doc;
}

template <ScalarField K>
Json ring_json(const ProductRing<K>& ring) {
    const ScalarTag tag =
        std::is_same_v<K, Rational> ? ScalarTag::rational : ScalarTag::real;
    return ring_json(ring.points, tag);
}

template <ScalarField K>
RingElement<K> parse_element(const Json& doc, const ProductRing<K>& ring) {
    require_keys(doc, {"coords"}, "element");
    const std::vector<Json> values = per_name_values(doc.at("coords"), ring.points, "coords");
    std::vector<K> coords;
    coords.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        coords.push_back(parse_scalar<K>(values[i], "coordinate \"" + ring.points[i] + "\""));
    return ring.element(std::move(coords));
}

template <ScalarField K>
Json element_json(const RingElement<K>& a) {
    Json coords = Json::object();
    for (std::size_t i = 0; i < a.owner.size(); ++i)
        coords[a.owner.points[i]] = a.coords[i].str();
    Json doc;
    doc["coords"] = std::move(coords);
    return doc;
}

template <ScalarField K>
RingHom<K> parse_hom(const Json& doc, const ProductRing<K>& domain,
                     const ProductRing<K>& codomain) {
    require_keys(doc, {"dual"}, "hom");
    const std::vector<Json> values = per_name_values(doc.at("dual"), codomain.points, "dual");
    std::vector<std::size_t> dual;
    dual.reserve(values.size());
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (!values[t].is_string())
            throw ParseError("dual: entry for \"" + codomain.points[t] +
                             "\" must name a domain point");
        dual.push_back(
            lookup_point(domain.points, values[t].get<std::string>(), "dual"));
    }
    return RingHom<K>(domain, codomain, std::move(dual));
}

template <ScalarField K>
Json hom_json(const RingHom<K>& f) {
    Json dual = Json::object();
    for (std::size_t t = 0; t < f.codomain.size(); ++t)
        dual[f.codomain.points[t]] = f.domain.points[f.dual_map[t]];
    Json doc;
    doc["dual"] = std::move(dual);
    return doc;
}

BoolAlg parse_algebra(const Json& doc) {
    require_keys(doc, {"atoms"}, "algebra");
    return BoolAlg(string_array(doc.at("atoms"), "atoms"));
}

Json algebra_json(const BoolAlg& algebra) {
    Json doc;
    doc["atoms"] = algebra.atoms;
    return doc;
}

BAElement parse_ba_element(const Json& doc, const BoolAlg& algebra) {
    require_keys(doc, {"subset"}, "algebra element");
    try {
        return element_of(algebra, string_array(doc.at("subset"), "subset"));
    } catch (const ContractError& e) {
        throw ParseError(std::string("subset: ") + e.what());
    }
}

Json ba_element_json(const BAElement& x) {
    Json subset = Json::array();
    for (std::size_t i = 0; i < x.owner.atom_count(); ++i)
        if (x.member[i]) subset.push_back(x.owner.atoms[i]);
    Json doc;
    doc["subset"] = std::move(subset);
    return doc;
}

BAHom parse_ba_hom(const Json& doc, const BoolAlg& domain, const BoolAlg& codomain) {
    require_keys(doc, {"dual_atoms"}, "algebra hom");
    const std::vector<Json> values =
        per_name_values(doc.at("dual_atoms"), codomain.atoms, "dual_atoms");
    std::vector<std::size_t> dual;
    dual.reserve(values.size());
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (!values[t].is_string())
            throw ParseError("dual_atoms: entry for \"" + codomain.atoms[t] +
                             "\" must name a domain atom");
        dual.push_back(lookup_point(domain.atoms, values[t].get<std::string>(), "dual_atoms"));
    }
    return BAHom(domain, codomain, std::move(dual));
}

Json ba_hom_json(const BAHom& h) {
    Json dual = Json::object();
    for (std::size_t t = 0; t < h.codomain.atom_count(); ++t)
        dual[h.codomain.atoms[t]] = h.domain.atoms[h.dual_atom_map[t]];
    Json doc;
    doc["dual_atoms"] = std::move(dual);
    return doc;
}

FiniteBoolSpace parse_space(const Json& doc) {
    require_keys(doc, {"points"}, "space");
    return FiniteBoolSpace(string_array(doc.at("points"), "points"));
}

Json space_json(const FiniteBoolSpace& space) {
    Json doc;
    doc["points"] = space.points;
    return doc;
}

ContinuousMap parse_map(const Json& doc, const FiniteBoolSpace& domain,
                        const FiniteBoolSpace& codomain) {
    require_keys(doc, {"map"}, "map");
    const std::vector<Json> values = per_name_values(doc.at("map"), domain.points, "map");
    std::vector<std::size_t> pm;
    pm.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i].is_string())
            throw ParseError("map: entry for \"" + domain.points[i] +
                             "\" must name a codomain point");
        pm.push_back(lookup_point(codomain.points, values[i].get<std::string>(), "map"));
    }
    return ContinuousMap(domain, codomain, std::move(pm));
}

Json map_json(const ContinuousMap& f) {
    Json pm = Json::object();
    for (std::size_t i = 0; i < f.domain.size(); ++i)
        pm[f.domain.points[i]] = f.codomain.points[f.point_map[i]];
    Json doc;
    doc["map"] = std::move(pm);
    return doc;
}

EquivRelation parse_partition(const Json& doc, const FiniteBoolSpace& space) {
    require_keys(doc, {"blocks"}, "partition");
    const Json& blocks_doc = doc.at("blocks");
    if (!blocks_doc.is_array()) throw ParseError("partition: \"blocks\" must be an array");
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(blocks_doc.size());
    for (const Json& block : blocks_doc) {
        std::vector<std::size_t> indices;
        for (const std::string& name : string_array(block, "block"))
            indices.push_back(lookup_point(space.points, name, "block"));
        blocks.push_back(std::move(indices));
    }
    try {
        return EquivRelation::from_blocks(space.size(), std::move(blocks));
    } catch (const ContractError& e) {
        throw ParseError(std::string("partition: ") + e.what());
    }
}

Json partition_json(const EquivRelation& relation, const FiniteBoolSpace& space) {
    if (relation.ground_size != space.size())
        throw ContractError("partition belongs to a space of a different size");
    Json blocks = Json::array();
    for (const auto& block : relation.blocks) {
        Json names = Json::array();
        for (const std::size_t i : block) names.push_back(space.points[i]);
        blocks.push_back(std::move(names));
    }
    Json doc;
    doc["blocks"] = std::move(blocks);
    return doc;
}

InverseSystem parse_system(const Json& doc) {
    require_keys(doc, {"levels", "arrows"}, "system");
    const Json& levels_doc = doc.at("levels");
    if (!levels_doc.is_array()) throw ParseError("system: \"levels\" must be an array");
    InverseSystem system;
    for (const Json& level : levels_doc) system.levels.push_back(parse_space(level));

    const Json& arrows_doc = doc.at("arrows");
    if (!arrows_doc.is_array()) throw ParseError("system: \"arrows\" must be an array");
    for (const Json& arrow : arrows_doc) {
        require_keys(arrow, {"from", "to", "map"}, "arrow");
        const Json& from_doc = arrow.at("from");
        const Json& to_doc = arrow.at("to");
        if (!from_doc.is_number_unsigned() || !to_doc.is_number_unsigned())
            throw ParseError("arrow: \"from\" and \"to\" must be level indices");
        const std::size_t from = from_doc.get<std::size_t>();
        const std::size_t to = to_doc.get<std::size_t>();
        if (from >= system.levels.size() || to >= system.levels.size())
            throw ParseError("arrow: level index out of range");
        system.add_arrow(from, to,
                         parse_map(Json{{"map", arrow.at("map")}}, system.levels[from],
                                   system.levels[to]));
    }
    return system;
}

Json system_json(const InverseSystem& system) {
    Json levels = Json::array();
    for (const FiniteBoolSpace& level : system.levels) levels.push_back(space_json(level));
    Json arrows = Json::array();
    for (const InverseSystem::Arrow& arrow : system.arrows) {
        Json a;
        a["from"] = arrow.from;
        a["to"] = arrow.to;
        a["map"] = map_json(arrow.map).at("map");
        arrows.push_back(std::move(a));
    }
    Json doc;
    doc["levels"] = std::move(levels);
    doc["arrows"] = std::move(arrows);
    return doc;
}

Json report_json(const CheckReport& report) {
    Json doc;
    doc["name"] = report.name;
    doc["checks"] = report.checks;
    doc["failures"] = report.failures;
    doc["passed"] = report.passed();
    doc["failure_samples"] = report.failure_samples;
    doc["warnings"] = report.warnings;
    return doc;
}

Json criteria_json(const std::vector<CriterionResult>& criteria) {
    Json rows = Json::array();
    bool all_passed = true;
    for (const CriterionResult& c : criteria) {
        Json row = report_json(c.report);
        row["number"] = c.number;
        row.erase("name");
        row["title"] = c.title;
        all_passed = all_passed && c.report.passed();
        rows.push_back(std::move(row));
    }
    Json doc;
    doc["criteria"] = std::move(rows);
    doc["passed"] = all_passed;
    return doc;
}

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(what + ": " + e.what(), e.byte);
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

std::string canonical_dump(const Json& doc) { return doc.dump(2) + "\n"; }

// Explicit instantiations for the two scalar backends.
template Json ring_json<Rational>(const ProductRing<Rational>&);
template Json ring_json<RealApprox>(const ProductRing<RealApprox>&);
template RingElement<Rational> parse_element<Rational>(const Json&, const ProductRing<Rational>&);
template RingElement<RealApprox> parse_element<RealApprox>(const Json&,
                                                           const ProductRing<RealApprox>&);
template Json element_json<Rational>(const RingElement<Rational>&);
template Json element_json<RealApprox>(const RingElement<RealApprox>&);
template RingHom<Rational> parse_hom<Rational>(const Json&, const ProductRing<Rational>&,
                                               const ProductRing<Rational>&);
template RingHom<RealApprox> parse_hom<RealApprox>(const Json&, const ProductRing<RealApprox>&,
                                                   const ProductRing<RealApprox>&);
template Json hom_json<Rational>(const RingHom<Rational>&);
template Json hom_json<RealApprox>(const RingHom<RealApprox>&);

} // namespace stonevn
