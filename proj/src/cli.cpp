#include "stonevn/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stonevn/bool_alg.hpp"
#include "stonevn/bool_space.hpp"
#include "stonevn/duality.hpp"
#include "stonevn/errors.hpp"
#include "stonevn/idempotent_algebra.hpp"
#include "stonevn/json_io.hpp"
#include "stonevn/product_ring.hpp"
#include "stonevn/ring_checks.hpp"
#include "stonevn/rng.hpp"
#include "stonevn/sampling.hpp"
#include "stonevn/verify.hpp"

namespace stonevn {
namespace {

struct GlobalFlags {
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::size_t max_points = 20;
    std::string format = "json";
};

// ---------------------------------------------------------------------------
// Output rendering. JSON mode is the canonical serialization; pretty mode is
// a plain indented rendering of the same document, for reading at a terminal.
// Both are deterministic: keys arrive sorted from the JSON layer.
// ---------------------------------------------------------------------------

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

bool all_scalars(const Json& array) {
    return std::all_of(array.begin(), array.end(), [](const Json& v) { return is_scalar(v); });
}

void render_pretty(std::ostream& out, const Json& v, std::size_t indent) {
    const std::string pad(indent, ' ');
    if (is_scalar(v)) {
        out << pad << scalar_text(v) << "\n";
        return;
    }
    if (v.is_array()) {
        if (v.empty()) {
            out << pad << "(empty)\n";
            return;
        }
        if (all_scalars(v)) {
            out << pad << "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out << ", ";
                out << scalar_text(v[i]);
            }
            out << "]\n";
            return;
        }
        for (const auto& item : v) {
            out << pad << "-\n";
            render_pretty(out, item, indent + 2);
        }
        return;
    }
    if (v.empty()) {
        out << pad << "(empty)\n";
        return;
    }
    for (const auto& [key, value] : v.items()) {
        if (is_scalar(value)) {
            out << pad << key << ": " << scalar_text(value) << "\n";
        } else if (value.is_array() && (value.empty() || all_scalars(value))) {
            out << pad << key << ": ";
            render_pretty(out, value, 0);
        } else {
            out << pad << key << ":\n";
            render_pretty(out, value, indent + 2);
        }
    }
}

void emit(std::ostream& out, const Json& doc, const GlobalFlags& flags) {
    if (flags.format == "pretty")
        render_pretty(out, doc, 0);
    else
        out << canonical_dump(doc);
}

// ---------------------------------------------------------------------------
// Input helpers.
// ---------------------------------------------------------------------------

RingDoc load_ring(const std::string& path) { return parse_ring(load_json_file(path)); }

ProductRing<Rational> load_rational_ring(const std::string& path, const char* verb) {
    const RingDoc doc = load_ring(path);
    if (doc.tag != ScalarTag::rational)
        throw ParseError(std::string(verb) + " needs the exact backend: ring field must be \"Q\"");
    return doc.as_rational();
}

void check_point_bound(std::size_t size, std::size_t max_points, const char* what) {
    if (size > max_points)
        throw ResourceError(std::string(what) + " over " + std::to_string(size) +
                            " points exceeds --max-points " + std::to_string(max_points));
}

// Runs fn with the ring decoded over whichever scalar backend the file
// declares. fn must be a generic lambda.
template <typename Fn>
int with_ring(const RingDoc& doc, Fn&& fn) {
    if (doc.tag == ScalarTag::rational) return fn(doc.as_rational());
    return fn(doc.as_real());
}

Json object_check_json(const NaturalIsoReport::ObjectCheck& oc) {
    return Json{{"object", oc.object},
                {"size", oc.size},
                {"bijective", oc.bijective},
                {"ops_preserved", oc.ops_preserved},
                {"passed", oc.bijective && oc.ops_preserved}};
}

int exit_for(const CheckReport& report) { return report.passed() ? 0 : 1; }

// ---------------------------------------------------------------------------
// Per-verb handlers. Each returns the process exit code.
// ---------------------------------------------------------------------------

int cmd_quasi_inverse(const GlobalFlags& flags, const std::string& ring_path,
                      const std::string& element_path, std::ostream& out) {
    return with_ring(load_ring(ring_path), [&](const auto& ring) {
        const auto a = parse_element(load_json_file(element_path), ring);
        emit(out, element_json(quasi_inverse(a)), flags);
        return 0;
    });
}

int cmd_idempotent_of(const GlobalFlags& flags, const std::string& ring_path,
                      const std::string& element_path, std::ostream& out) {
    return with_ring(load_ring(ring_path), [&](const auto& ring) {
        const auto a = parse_element(load_json_file(element_path), ring);
        const auto witness = idempotent_of(a);
        emit(out,
             Json{{"e", element_json(witness.generator.value)},
                  {"y", element_json(witness.y)},
                  {"z", element_json(witness.z)}},
             flags);
        return 0;
    });
}

int cmd_idempotents(const GlobalFlags& flags, const std::string& ring_path, std::ostream& out) {
    return with_ring(load_ring(ring_path), [&](const auto& ring) {
        Json list = Json::array();
        for (const auto& e : idempotents(ring, flags.max_points))
            list.push_back(element_json(e.value));
        emit(out, Json{{"idempotents", std::move(list)}}, flags);
        return 0;
    });
}

int cmd_localize(const GlobalFlags& flags, const std::string& ring_path,
                 const std::string& element_path, std::ostream& out) {
    return with_ring(load_ring(ring_path), [&](const auto& ring) {
        const auto a = parse_element(load_json_file(element_path), ring);
        const auto loc = localize_at_element(ring, a);
        emit(out,
             Json{{"ring", ring_json(loc.ring)},
                  {"map", hom_json(loc.map)},
                  {"inverted", element_json(loc.inverted.value)}},
             flags);
        return 0;
    });
}

int cmd_spec(const GlobalFlags& flags, const std::string& ring_path, std::ostream& out) {
    const auto ring = load_rational_ring(ring_path, "spec");
    check_point_bound(ring.size(), flags.max_points, "spectrum");
    emit(out, space_json(spectrum(ring)), flags);
    return 0;
}

int cmd_d_inf(const GlobalFlags& flags, const std::string& ring_path,
              const std::string& element_path, std::ostream& out) {
    const auto ring = load_rational_ring(ring_path, "d-inf");
    check_point_bound(ring.size(), flags.max_points, "spectrum");
    const auto a = parse_element(load_json_file(element_path), ring);
    const std::vector<bool> open = support_clopen(a);
    Json subset = Json::array();
    for (std::size_t i = 0; i < open.size(); ++i)
        if (open[i]) subset.push_back(ring.points[i]);
    emit(out, Json{{"subset", std::move(subset)}}, flags);
    return 0;
}

int cmd_residue_check(const GlobalFlags& flags, const std::string& ring_path,
                      const std::string& point_name, std::ostream& out) {
    const auto ring = load_rational_ring(ring_path, "residue-check");
    const auto index = ring.index_of(point_name);
    if (!index) throw ParseError("point \"" + point_name + "\" is not in the ring");
    Rng rng(flags.seed);
    const CheckReport report = residue_field_check(ring, *index, rng, rational_gen());
    emit(out, report_json(report), flags);
    return exit_for(report);
}

int cmd_ba_ops(const GlobalFlags& flags, const std::string& algebra_path,
               const std::string& x_path, const std::string& y_path, std::ostream& out) {
    const BoolAlg algebra = parse_algebra(load_json_file(algebra_path));
    const BAElement x = parse_ba_element(load_json_file(x_path), algebra);
    const BAElement y = parse_ba_element(load_json_file(y_path), algebra);
    emit(out,
         Json{{"meet", ba_element_json(meet(x, y))},
              {"join", ba_element_json(join(x, y))},
              {"complement", ba_element_json(complement(x))}},
         flags);
    return 0;
}

int cmd_stone(const GlobalFlags& flags, const std::string& algebra_path, std::ostream& out) {
    const BoolAlg algebra = parse_algebra(load_json_file(algebra_path));
    emit(out, space_json(stone(algebra)), flags);
    return 0;
}

int cmd_clopen(const GlobalFlags& flags, const std::string& space_path, std::ostream& out) {
    const FiniteBoolSpace space = parse_space(load_json_file(space_path));
    emit(out, algebra_json(clopen(space)), flags);
    return 0;
}

int cmd_j(const GlobalFlags& flags, const std::string& ring_path,
          const std::string& element_path, std::ostream& out) {
    const auto ring = load_rational_ring(ring_path, "j");
    const auto a = parse_element(load_json_file(element_path), ring);
    const auto e = Idempotent<Rational>::of(a);
    emit(out, ba_element_json(clopen_of_idempotent(e)), flags);
    return 0;
}

int cmd_quotient(const GlobalFlags& flags, const std::string& space_path,
                 const std::string& partition_path, std::ostream& out) {
    const FiniteBoolSpace space = parse_space(load_json_file(space_path));
    const EquivRelation relation = parse_partition(load_json_file(partition_path), space);
    const Quotient q = quotient(space, relation);
    emit(out, Json{{"space", space_json(q.space)}, {"projection", map_json(q.projection)}},
         flags);
    return 0;
}

int cmd_limit(const GlobalFlags& flags, const std::string& system_path, std::ostream& out) {
    const InverseSystem system = parse_system(load_json_file(system_path));
    const LimitResult result = limit(system);
    Json threads = Json::array();
    for (const auto& thread : result.threads) {
        Json row = Json::array();
        for (std::size_t level = 0; level < thread.components.size(); ++level)
            row.push_back(system.levels[level].points[thread.components[level]]);
        threads.push_back(std::move(row));
    }
    Json projections = Json::array();
    for (const auto& p : result.projections) projections.push_back(map_json(p));
    emit(out,
         Json{{"space", space_json(result.space)},
              {"threads", std::move(threads)},
              {"projections", std::move(projections)}},
         flags);
    return 0;
}

int cmd_delta(const GlobalFlags& flags, const std::string& space_path, std::ostream& out) {
    const FiniteBoolSpace space = parse_space(load_json_file(space_path));
    const ProfiniteEmbedding emb = profinite_embedding(space, flags.seed, flags.max_points);
    emit(out,
         Json{{"levels", emb.system.relations.size()},
              {"limit", space_json(emb.limit.space)},
              {"embedding", map_json(emb.embedding)},
              {"homeomorphism", report_json(emb.homeomorphism)}},
         flags);
    return exit_for(emb.homeomorphism);
}

int cmd_delta_map(const GlobalFlags& flags, const std::string& source_path,
                  const std::string& target_path, const std::string& map_path,
                  std::ostream& out) {
    const FiniteBoolSpace source = parse_space(load_json_file(source_path));
    const FiniteBoolSpace target = parse_space(load_json_file(target_path));
    const ContinuousMap f = parse_map(load_json_file(map_path), source, target);
    const LimitMap lm = induced_limit_map(f);
    emit(out,
         Json{{"source_limit", space_json(lm.source.limit.space)},
              {"target_limit", space_json(lm.target.limit.space)},
              {"map", map_json(lm.map)},
              {"coherence", report_json(lm.coherence)}},
         flags);
    return exit_for(lm.coherence);
}

ScalarTag parse_field_flag(const std::string& field) {
    if (field == "Q") return ScalarTag::rational;
    if (field == "R") return ScalarTag::real;
    throw ParseError("--field must be Q or R");
}

int cmd_khat(const GlobalFlags& flags, const std::string& space_path, const std::string& field,
             std::ostream& out) {
    const FiniteBoolSpace space = parse_space(load_json_file(space_path));
    check_point_bound(space.size(), flags.max_points, "function ring");
    if (parse_field_flag(field) == ScalarTag::rational)
        emit(out, ring_json(function_ring<Rational>(space)), flags);
    else
        emit(out, ring_json(function_ring<RealApprox>(space)), flags);
    return 0;
}

int cmd_kcheck(const GlobalFlags& flags, const std::string& algebra_path,
               const std::string& field, std::ostream& out) {
    const BoolAlg algebra = parse_algebra(load_json_file(algebra_path));
    check_point_bound(algebra.atoms.size(), flags.max_points, "function ring");
    if (parse_field_flag(field) == ScalarTag::rational)
        emit(out, ring_json(function_ring_of_algebra<Rational>(algebra)), flags);
    else
        emit(out, ring_json(function_ring_of_algebra<RealApprox>(algebra)), flags);
    return 0;
}

int cmd_epsilon(const GlobalFlags& flags, const std::string& space_path, std::ostream& out) {
    const FiniteBoolSpace space = parse_space(load_json_file(space_path));
    check_point_bound(space.size(), flags.max_points, "space recovery");
    const auto oc = space_recovery_component<Rational>(space);
    emit(out, object_check_json(oc), flags);
    return (oc.bijective && oc.ops_preserved) ? 0 : 1;
}

int cmd_theta(const GlobalFlags& flags, const std::string& algebra_path, std::ostream& out) {
    const BoolAlg algebra = parse_algebra(load_json_file(algebra_path));
    const auto oc = algebra_recovery_component<Rational>(algebra, default_ring_join<Rational>(),
                                                         flags.max_points);
    emit(out, object_check_json(oc), flags);
    return (oc.bijective && oc.ops_preserved) ? 0 : 1;
}

int cmd_verify(const GlobalFlags& flags, std::ostream& out, std::ostream& err) {
    AcceptanceOptions options;
    options.seed = flags.seed;
    options.tolerance = flags.tolerance;
    const std::vector<CriterionResult> criteria = run_acceptance(options);

    emit(out, criteria_json(criteria), flags);

    std::size_t failed = 0;
    for (const auto& c : criteria) {
        err << "[" << std::setw(2) << c.number << "/" << criteria.size() << "] "
            << (c.report.passed() ? "PASS" : "FAIL") << "  " << c.title << "  ("
            << c.report.checks << " checks)\n";
        if (!c.report.passed()) {
            ++failed;
            for (const auto& sample : c.report.failure_samples)
                err << "        " << sample << "\n";
        }
        for (const auto& warning : c.report.warnings) err << "        warning: " << warning << "\n";
    }
    if (failed == 0)
        err << "all " << criteria.size() << " criteria passed\n";
    else
        err << failed << " of " << criteria.size() << " criteria failed\n";
    return failed == 0 ? 0 : 1;
}

int cmd_check_smooth_axioms(const GlobalFlags& flags, std::ostream& out) {
    CheckReport report("smooth structure axioms");
    for (std::size_t m = 1; m <= 4; ++m) {
        const ProductRing<RealApprox> ring = indexed_ring<RealApprox>(m, "x");
        Rng rng(mix_seed(flags.seed, m));
        report.merge(projection_axiom_check(ring, 250, rng));
        report.merge(composition_axiom_check(ring, 250, flags.tolerance, rng));
    }
    emit(out, report_json(report), flags);
    return exit_for(report);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    GlobalFlags flags;
    int rc = 0;

    CLI::App app{"stonevn — exact workbench for products of fields, their idempotent "
                 "Boolean algebras, finite Stone duality, and profinite presentations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", flags.seed, "seed for all randomized checks")->capture_default_str();
    app.add_option("--tolerance", flags.tolerance,
                   "relative tolerance for floating-point comparisons")
        ->capture_default_str();
    app.add_option("--max-points", flags.max_points, "bound on enumerated point sets")
        ->capture_default_str();
    app.add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"json", "pretty"}))
        ->capture_default_str();

    // Holders for per-subcommand option values. One struct keeps the lambdas
    // below small; each subcommand only reads the fields it registered.
    struct Paths {
        std::string ring, element, algebra, x, y, space, partition, system;
        std::string source, target, map, point, field = "Q";
    } paths;

    auto* quasi = app.add_subcommand("quasi-inverse", "unique b with a = a*a*b and b = b*b*a");
    quasi->add_option("--ring", paths.ring, "ring file")->required();
    quasi->add_option("--element", paths.element, "element file")->required();
    quasi->callback([&] { rc = cmd_quasi_inverse(flags, paths.ring, paths.element, out); });

    auto* idem_of = app.add_subcommand(
        "idempotent-of", "idempotent generator e of (a), with witnesses e*y = a and a*z = e");
    idem_of->add_option("--ring", paths.ring, "ring file")->required();
    idem_of->add_option("--element", paths.element, "element file")->required();
    idem_of->callback([&] { rc = cmd_idempotent_of(flags, paths.ring, paths.element, out); });

    auto* idems = app.add_subcommand("idempotents", "all idempotents, in subset-mask order");
    idems->add_option("--ring", paths.ring, "ring file")->required();
    idems->callback([&] { rc = cmd_idempotents(flags, paths.ring, out); });

    auto* localize = app.add_subcommand("localize", "localization of the ring at an element");
    localize->add_option("--ring", paths.ring, "ring file")->required();
    localize->add_option("--element", paths.element, "element file")->required();
    localize->callback([&] { rc = cmd_localize(flags, paths.ring, paths.element, out); });

    auto* spec_cmd = app.add_subcommand("spec", "prime spectrum as a finite discrete space");
    spec_cmd->add_option("--ring", paths.ring, "ring file (field Q)")->required();
    spec_cmd->callback([&] { rc = cmd_spec(flags, paths.ring, out); });

    auto* dinf = app.add_subcommand("d-inf", "basic open set of an element: primes not containing it");
    dinf->add_option("--ring", paths.ring, "ring file (field Q)")->required();
    dinf->add_option("--element", paths.element, "element file")->required();
    dinf->callback([&] { rc = cmd_d_inf(flags, paths.ring, paths.element, out); });

    auto* residue = app.add_subcommand("residue-check",
                                       "verify the residue field at a prime is the scalar field");
    residue->add_option("--ring", paths.ring, "ring file (field Q)")->required();
    residue->add_option("--point", paths.point, "point name of the prime")->required();
    residue->callback([&] { rc = cmd_residue_check(flags, paths.ring, paths.point, out); });

    auto* baops = app.add_subcommand("ba-ops", "meet, join, and complement in a Boolean algebra");
    baops->add_option("--algebra", paths.algebra, "algebra file")->required();
    baops->add_option("--x", paths.x, "first element file")->required();
    baops->add_option("--y", paths.y, "second element file")->required();
    baops->callback([&] { rc = cmd_ba_ops(flags, paths.algebra, paths.x, paths.y, out); });

    auto* stone_cmd = app.add_subcommand("stone", "ultrafilter space of a Boolean algebra");
    stone_cmd->add_option("--algebra", paths.algebra, "algebra file")->required();
    stone_cmd->callback([&] { rc = cmd_stone(flags, paths.algebra, out); });

    auto* clopen_cmd = app.add_subcommand("clopen", "Boolean algebra of clopen sets of a space");
    clopen_cmd->add_option("--space", paths.space, "space file")->required();
    clopen_cmd->callback([&] { rc = cmd_clopen(flags, paths.space, out); });

    auto* j_cmd = app.add_subcommand("j", "clopen subset of the spectrum matching an idempotent");
    j_cmd->add_option("--ring", paths.ring, "ring file (field Q)")->required();
    j_cmd->add_option("--element", paths.element, "idempotent element file")->required();
    j_cmd->callback([&] { rc = cmd_j(flags, paths.ring, paths.element, out); });

    auto* quot = app.add_subcommand("quotient", "quotient space by a partition, with projection");
    quot->add_option("--space", paths.space, "space file")->required();
    quot->add_option("--partition", paths.partition, "partition file")->required();
    quot->callback([&] { rc = cmd_quotient(flags, paths.space, paths.partition, out); });

    auto* limit_cmd = app.add_subcommand("limit", "inverse limit of a finite system: coherent threads");
    limit_cmd->add_option("--system", paths.system, "inverse system file")->required();
    limit_cmd->callback([&] { rc = cmd_limit(flags, paths.system, out); });

    auto* delta_cmd = app.add_subcommand(
        "delta", "embed a space into the limit of its quotients and verify a homeomorphism");
    delta_cmd->add_option("--space", paths.space, "space file")->required();
    delta_cmd->callback([&] { rc = cmd_delta(flags, paths.space, out); });

    auto* delta_map_cmd =
        app.add_subcommand("delta-map", "induced map between profinite presentations");
    delta_map_cmd->add_option("--source", paths.source, "source space file")->required();
    delta_map_cmd->add_option("--target", paths.target, "target space file")->required();
    delta_map_cmd->add_option("--map", paths.map, "map file (source -> target)")->required();
    delta_map_cmd->callback(
        [&] { rc = cmd_delta_map(flags, paths.source, paths.target, paths.map, out); });

    auto* khat_cmd = app.add_subcommand("khat", "ring of scalar-valued functions on a space");
    khat_cmd->add_option("--space", paths.space, "space file")->required();
    khat_cmd->add_option("--field", paths.field, "scalar backend: Q or R")->capture_default_str();
    khat_cmd->callback([&] { rc = cmd_khat(flags, paths.space, paths.field, out); });

    auto* kcheck_cmd =
        app.add_subcommand("kcheck", "function ring on the ultrafilter space of an algebra");
    kcheck_cmd->add_option("--algebra", paths.algebra, "algebra file")->required();
    kcheck_cmd->add_option("--field", paths.field, "scalar backend: Q or R")->capture_default_str();
    kcheck_cmd->callback([&] { rc = cmd_kcheck(flags, paths.algebra, paths.field, out); });

    auto* eps = app.add_subcommand(
        "epsilon", "compare a space with the spectrum of its function ring");
    eps->add_option("--space", paths.space, "space file")->required();
    eps->callback([&] { rc = cmd_epsilon(flags, paths.space, out); });

    auto* theta_cmd = app.add_subcommand(
        "theta", "compare an algebra with the idempotents of its function ring");
    theta_cmd->add_option("--algebra", paths.algebra, "algebra file")->required();
    theta_cmd->callback([&] { rc = cmd_theta(flags, paths.algebra, out); });

    auto* verify_cmd = app.add_subcommand(
        "verify", "run the full acceptance battery; JSON report on stdout, summary on stderr");
    verify_cmd->callback([&] { rc = cmd_verify(flags, out, err); });

    auto* smooth = app.add_subcommand("check-smooth-axioms",
                                      "projection and composition axioms over the float backend");
    smooth->callback([&] { rc = cmd_check_smooth_axioms(flags, out); });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace stonevn
