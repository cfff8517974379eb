#include "stonevn/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stonevn/bool_alg.hpp"
#include "stonevn/bool_space.hpp"
#include "stonevn/duality.hpp"
#include "stonevn/idempotent_algebra.hpp"
#include "stonevn/ring_checks.hpp"
#include "stonevn/rng.hpp"
#include "stonevn/sampling.hpp"

namespace stonevn {
namespace {

// ---------------------------------------------------------------------------
// Shared infrastructure
// ---------------------------------------------------------------------------

RingJoinFn<Rational> active_join(const AcceptanceOptions& options) {
    if (options.mutate_break_join)
        return [](const RingElement<Rational>& a, const RingElement<Rational>& b) { return a + b; };
    return default_ring_join<Rational>();
}

// The seeded element corpus shared by the first three criteria: products of
// sizes 0 through 12, a thousand elements each.
struct Corpus {
    std::vector<ProductRing<Rational>> rings;
    std::vector<std::vector<RingElement<Rational>>> elements;
};

constexpr std::size_t corpus_max_size = 12;
constexpr std::size_t corpus_elements_per_ring = 1000;

Corpus build_corpus(std::uint64_t seed) {
    Corpus corpus;
    for (std::size_t m = 0; m <= corpus_max_size; ++m) {
        Rng rng(mix_seed(seed, 100 + m));
        ProductRing<Rational> ring = indexed_ring<Rational>(m);
        std::vector<RingElement<Rational>> elems;
        elems.reserve(corpus_elements_per_ring);
        for (std::size_t i = 0; i < corpus_elements_per_ring; ++i)
            elems.push_back(random_rational_element(ring, rng));
        corpus.rings.push_back(std::move(ring));
        corpus.elements.push_back(std::move(elems));
    }
    return corpus;
}

// Bell numbers by the binomial recurrence B(n+1) = sum_k C(n,k) B(k) — a
// route to the partition counts that shares nothing with the enumerator.
std::vector<unsigned long long> bell_numbers(std::size_t up_to) {
    std::vector<unsigned long long> bell{1};
    std::vector<unsigned long long> row{1}; // current row of Pascal's triangle
    for (std::size_t n = 0; n < up_to; ++n) {
        unsigned long long next = 0;
        for (std::size_t k = 0; k <= n; ++k) next += row[k] * bell[k];
        bell.push_back(next);
        std::vector<unsigned long long> next_row(n + 2, 1);
        for (std::size_t k = 1; k <= n; ++k) next_row[k] = row[k - 1] + row[k];
        row = std::move(next_row);
    }
    return bell;
}

// Every point map between spaces of the given sizes, little-endian odometer
// order. No maps exist from a nonempty space into the empty one.
std::vector<std::vector<std::size_t>> all_point_maps(std::size_t dom, std::size_t cod) {
    std::vector<std::vector<std::size_t>> out;
    if (dom == 0) {
        out.push_back({});
        return out;
    }
    if (cod == 0) return out;
    std::vector<std::size_t> pm(dom, 0);
    while (true) {
        out.push_back(pm);
        std::size_t i = 0;
        while (i < dom && ++pm[i] == cod) pm[i++] = 0;
        if (i == dom) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

CheckReport criterion_quasi_inverse(const Corpus& corpus, const QuasiInverseOracle& oracle) {
    CheckReport r("quasi-inverse laws on the random corpus");
    for (std::size_t m = 0; m < corpus.rings.size(); ++m) {
        for (const RingElement<Rational>& a : corpus.elements[m]) {
            const RingElement<Rational> b = quasi_inverse(a);
            r.require_lazy(a == a * a * b, [&] {
                return "a = a*a*b fails over size " + std::to_string(m);
            });
            r.require_lazy(b == b * b * a, [&] {
                return "b = b*b*a fails over size " + std::to_string(m);
            });
            if (oracle)
                r.require_lazy(b == oracle(a), [&] {
                    return "quasi-inverse disagrees with the independent oracle over size " +
                           std::to_string(m);
                });
        }
        // Anchor values: zero and one are their own quasi-inverses.
        const ProductRing<Rational>& ring = corpus.rings[m];
        r.require(quasi_inverse(ring.zero()) == ring.zero(), "quasi-inverse of 0 is not 0");
        r.require(quasi_inverse(ring.one()) == ring.one(), "quasi-inverse of 1 is not 1");
    }
    return r;
}

CheckReport criterion_regularity_witnesses(const Corpus& corpus) {
    CheckReport r("three regularity conditions with explicit witnesses");
    for (std::size_t m = 0; m < corpus.rings.size(); ++m)
        for (const RingElement<Rational>& a : corpus.elements[m])
            r.merge(regularity_witness_check(a));
    for (std::size_t m = 0; m <= 5; ++m)
        r.merge(generator_uniqueness_check(indexed_ring<Rational>(m)));
    return r;
}

CheckReport criterion_reduced_spectrum(const Corpus& corpus) {
    CheckReport r("reducedness and the spectrum via ideal enumeration");
    for (std::size_t m = 0; m < corpus.rings.size(); ++m) {
        r.merge(nilpotent_scan(
            corpus.elements[m],
            [](const RingElement<Rational>& a, const RingElement<Rational>& b) { return a * b; },
            [](const RingElement<Rational>& a) { return a.is_zero(); }));
    }
    for (std::size_t m = 0; m <= 4; ++m)
        r.merge(spectrum_collapse_check(indexed_ring<Rational>(m)));
    return r;
}

CheckReport criterion_localization(std::uint64_t seed) {
    CheckReport r("localization at idempotents and elements");
    Rng rng(mix_seed(seed, 4));
    const auto gen = rational_gen();
    for (std::size_t m = 0; m <= 6; ++m) {
        const ProductRing<Rational> ring = indexed_ring<Rational>(m);
        for (const Idempotent<Rational>& e : idempotents(ring))
            r.merge(localization_check(ring, e, rng, gen, 8));
        for (std::size_t i = 0; i < 25; ++i) {
            const RingElement<Rational> a = random_rational_element(ring, rng);
            r.merge(localization_universal_check(ring, a, rng, 4));
        }
    }
    return r;
}

CheckReport criterion_idempotent_clopen_iso(const RingJoinFn<Rational>& join_fn) {
    CheckReport r("idempotents against clopens of the spectrum");
    for (std::size_t m = 0; m <= 5; ++m) {
        const ProductRing<Rational> ring = indexed_ring<Rational>(m);
        r.merge(idempotent_dictionary_check(ring, join_fn));
        r.merge(clopen_spectrum_iso_check(ring, join_fn));
    }
    return r;
}

CheckReport criterion_idempotent_clopen_naturality(std::uint64_t seed,
                                                   const RingJoinFn<Rational>& join_fn) {
    CheckReport r("naturality of the idempotent-clopen comparison");
    Rng rng(mix_seed(seed, 6));
    for (std::size_t i = 0; i < 200; ++i) {
        const auto dom = indexed_ring<Rational>(static_cast<std::size_t>(rng.int_in(1, 6)), "s");
        const auto cod = indexed_ring<Rational>(static_cast<std::size_t>(rng.int_in(1, 6)), "t");
        const RingHom<Rational> f = random_hom(dom, cod, rng);
        r.merge(clopen_spectrum_naturality_check(f, join_fn));
    }
    return r;
}

CheckReport criterion_stone_roundtrips(std::uint64_t seed) {
    CheckReport r("stone duality round trips");
    for (std::size_t n = 1; n <= 4; ++n)
        r.merge(stone_roundtrip_algebra_check(indexed_algebra(n)));

    Rng rng(mix_seed(seed, 7));
    for (std::size_t i = 0; i < 100; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.int_in(1, 8));
        const std::string prefix(1, static_cast<char>('a' + rng.below(26)));
        r.merge(stone_roundtrip_algebra_check(indexed_algebra(n, prefix)));
    }

    for (std::size_t n = 0; n <= 8; ++n)
        r.merge(stone_roundtrip_space_check(indexed_space(n)));

    // Morphism level: the round trip fixes homs on the nose, and both
    // functors reverse composition.
    for (std::size_t i = 0; i < 100; ++i) {
        const BoolAlg b1 = indexed_algebra(static_cast<std::size_t>(rng.int_in(1, 6)), "a");
        const BoolAlg b2 = indexed_algebra(static_cast<std::size_t>(rng.int_in(1, 6)), "b");
        const BoolAlg b3 = indexed_algebra(static_cast<std::size_t>(rng.int_in(1, 6)), "c");
        const BAHom h = random_ba_hom(b1, b2, rng);
        const BAHom g = random_ba_hom(b2, b3, rng);
        r.require(clopen_map(stone_map(h)) == h, "clopen(stone(h)) is not h");
        r.require(stone_map(compose(g, h)) == compose(stone_map(h), stone_map(g)),
                  "stone does not reverse composition");

        const FiniteBoolSpace x1 = indexed_space(static_cast<std::size_t>(rng.int_in(1, 6)), "p");
        const FiniteBoolSpace x2 = indexed_space(static_cast<std::size_t>(rng.int_in(1, 6)), "q");
        const FiniteBoolSpace x3 = indexed_space(static_cast<std::size_t>(rng.int_in(1, 6)), "r");
        const ContinuousMap u = random_map(x1, x2, rng);
        const ContinuousMap v = random_map(x2, x3, rng);
        r.require(clopen_map(compose(v, u)) == compose(clopen_map(u), clopen_map(v)),
                  "clopen does not reverse composition");
    }
    return r;
}

CheckReport criterion_profinite_presentation() {
    CheckReport r("profinite presentation of finite spaces");
    const std::vector<unsigned long long> bell = bell_numbers(8);
    r.require(bell[3] == 5 && bell[4] == 15, "recurrence misses the pinned Bell values");
    for (std::size_t n = 0; n <= 6; ++n) {
        const FiniteBoolSpace space = indexed_space(n);
        const ProfiniteEmbedding pe = profinite_embedding(space);
        r.merge(pe.homeomorphism);
        r.require(pe.limit.space.size() == n, "limit of the quotient system has the wrong size");
        r.require(pe.system.relations.size() == bell[n],
                  "partition count disagrees with the Bell recurrence at n = " + std::to_string(n));
        r.require(all_equiv_relations(n).size() == bell[n],
                  "partition enumeration disagrees with the Bell recurrence");
    }
    for (std::size_t n = 7; n <= 8; ++n)
        r.require(all_equiv_relations(n).size() == bell[n],
                  "partition enumeration disagrees with the Bell recurrence at n = " +
                      std::to_string(n));
    return r;
}

CheckReport criterion_profinite_functor(std::uint64_t seed) {
    CheckReport r("functoriality of the profinite construction");

    // Identity law.
    for (std::size_t n = 1; n <= 3; ++n) {
        const FiniteBoolSpace space = indexed_space(n);
        const LimitMap lm = induced_limit_map(ContinuousMap::identity(space));
        r.merge(lm.coherence);
        r.require(lm.map == ContinuousMap::identity(lm.source.limit.space),
                  "identity map does not induce the identity on limits");
    }

    // Exhaustive on small spaces: defining squares and naturality over the
    // comparison embeddings.
    for (std::size_t m = 0; m <= 3; ++m) {
        for (std::size_t n = 0; n <= 3; ++n) {
            const FiniteBoolSpace x = indexed_space(m, "p");
            const FiniteBoolSpace y = indexed_space(n, "q");
            for (const auto& pm : all_point_maps(m, n)) {
                const ContinuousMap f(x, y, pm);
                const LimitMap lm = induced_limit_map(f);
                r.merge(lm.coherence);
                r.require(compose(lm.map, lm.source.embedding) ==
                              compose(lm.target.embedding, f),
                          "embedding naturality square fails");
            }
        }
    }

    // Exhaustive composition law on small spaces.
    for (std::size_t m = 1; m <= 3; ++m) {
        for (std::size_t n = 1; n <= 3; ++n) {
            for (std::size_t p = 1; p <= 3; ++p) {
                const FiniteBoolSpace x = indexed_space(m, "p");
                const FiniteBoolSpace y = indexed_space(n, "q");
                const FiniteBoolSpace z = indexed_space(p, "r");
                for (const auto& pf : all_point_maps(m, n)) {
                    const ContinuousMap f(x, y, pf);
                    const LimitMap lf = induced_limit_map(f);
                    for (const auto& pg : all_point_maps(n, p)) {
                        const ContinuousMap g(y, z, pg);
                        const LimitMap lg = induced_limit_map(g);
                        const LimitMap lgf = induced_limit_map(compose(g, f));
                        r.require(lgf.map == compose(lg.map, lf.map),
                                  "composition law fails on limits");
                    }
                }
            }
        }
    }

    // Random maps on larger spaces: naturality and the defining squares.
    Rng rng(mix_seed(seed, 9));
    for (std::size_t i = 0; i < 100; ++i) {
        const FiniteBoolSpace x = indexed_space(static_cast<std::size_t>(rng.int_in(1, 5)), "p");
        const FiniteBoolSpace y = indexed_space(static_cast<std::size_t>(rng.int_in(1, 5)), "q");
        const ContinuousMap f = random_map(x, y, rng);
        const LimitMap lm = induced_limit_map(f);
        r.merge(lm.coherence);
        r.require(compose(lm.map, lm.source.embedding) == compose(lm.target.embedding, f),
                  "embedding naturality square fails on a random map");
    }
    for (std::size_t i = 0; i < 34; ++i) {
        const FiniteBoolSpace x = indexed_space(static_cast<std::size_t>(rng.int_in(1, 5)), "p");
        const FiniteBoolSpace y = indexed_space(static_cast<std::size_t>(rng.int_in(1, 5)), "q");
        const FiniteBoolSpace z = indexed_space(static_cast<std::size_t>(rng.int_in(1, 5)), "r");
        const ContinuousMap f = random_map(x, y, rng);
        const ContinuousMap g = random_map(y, z, rng);
        r.require(induced_limit_map(compose(g, f)).map ==
                      compose(induced_limit_map(g).map, induced_limit_map(f).map),
                  "composition law fails on limits for a random pair");
    }

    // Pullback monotonicity, exhaustive on small spaces.
    for (std::size_t m = 1; m <= 4; ++m) {
        for (std::size_t n = 1; n <= 4; ++n) {
            const FiniteBoolSpace x = indexed_space(m, "p");
            const FiniteBoolSpace y = indexed_space(n, "q");
            const std::vector<EquivRelation> rels = all_equiv_relations(n);
            for (const auto& pm : all_point_maps(m, n)) {
                const ContinuousMap f(x, y, pm);
                for (const EquivRelation& fine : rels) {
                    const EquivRelation pulled_fine = pullback_relation(f, fine);
                    for (const EquivRelation& coarse : rels) {
                        if (!fine.refines(coarse)) continue;
                        r.require_lazy(
                            pulled_fine.refines(pullback_relation(f, coarse)),
                            [] { return std::string("pullback is not monotone"); });
                    }
                }
            }
        }
    }

    // Factorization of pullbacks through composites, exhaustive.
    for (std::size_t m = 1; m <= 4; ++m) {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t p = 1; p <= 4; ++p) {
                const FiniteBoolSpace x = indexed_space(m, "p");
                const FiniteBoolSpace y = indexed_space(n, "q");
                const FiniteBoolSpace z = indexed_space(p, "r");
                const std::vector<EquivRelation> rels = all_equiv_relations(p);
                for (const auto& pg : all_point_maps(n, p)) {
                    const ContinuousMap g(y, z, pg);
                    for (const EquivRelation& rel : rels) {
                        const EquivRelation through_g = pullback_relation(g, rel);
                        for (const auto& pf : all_point_maps(m, n)) {
                            const ContinuousMap f(x, y, pf);
                            r.require_lazy(pullback_relation(compose(g, f), rel) ==
                                               pullback_relation(f, through_g),
                                           [] {
                                               return std::string(
                                                   "composite pullback does not factor");
                                           });
                        }
                    }
                }
            }
        }
    }
    return r;
}

CheckReport criterion_space_recovery(std::uint64_t seed) {
    CheckReport r("spaces recovered from their function rings");
    NaturalIsoReport iso;
    iso.name = "points against primes of the function ring";
    for (std::size_t n = 0; n <= 64; ++n)
        iso.objects.push_back(space_recovery_component<Rational>(indexed_space(n)));
    Rng rng(mix_seed(seed, 10));
    for (std::size_t i = 0; i < 50; ++i) {
        const FiniteBoolSpace x = indexed_space(static_cast<std::size_t>(rng.int_in(1, 64)), "p");
        const FiniteBoolSpace y = indexed_space(static_cast<std::size_t>(rng.int_in(1, 64)), "q");
        iso.squares.push_back(space_recovery_square<Rational>(random_map(x, y, rng)));
    }
    r.merge(iso.summary());

    for (std::size_t m = 0; m <= 4; ++m)
        for (std::size_t n = 0; n <= 4; ++n)
            r.merge(function_ring_faithful_check<Rational>(indexed_space(m, "p"),
                                                           indexed_space(n, "q")));

    for (std::size_t n = 0; n <= 4; ++n) {
        Rng colimit_rng(mix_seed(seed, 1000 + n));
        r.merge(colimit_certification<Rational>(indexed_space(n), colimit_rng));
    }
    return r;
}

CheckReport criterion_algebra_recovery(std::uint64_t seed, const RingJoinFn<Rational>& join_fn) {
    CheckReport r("algebras recovered from their function rings");
    NaturalIsoReport iso;
    iso.name = "atoms against ultrafilter indicators";
    for (std::size_t n = 1; n <= 4; ++n)
        iso.objects.push_back(algebra_recovery_component<Rational>(indexed_algebra(n), join_fn));

    Rng rng(mix_seed(seed, 11));
    for (std::size_t i = 0; i < 20; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.int_in(5, 8));
        const std::string prefix(1, static_cast<char>('a' + rng.below(26)));
        iso.objects.push_back(
            algebra_recovery_component<Rational>(indexed_algebra(n, prefix), join_fn));
    }

    // Exhaustive naturality squares between small algebras.
    for (std::size_t m = 1; m <= 4; ++m) {
        for (std::size_t n = 1; n <= 4; ++n) {
            const BoolAlg dom = indexed_algebra(m, "a");
            const BoolAlg cod = indexed_algebra(n, "b");
            for (const auto& dual : all_point_maps(n, m))
                iso.squares.push_back(algebra_recovery_square<Rational>(BAHom(dom, cod, dual)));
        }
    }
    // Sampled squares on larger algebras.
    for (std::size_t i = 0; i < 100; ++i) {
        const BoolAlg dom = indexed_algebra(static_cast<std::size_t>(rng.int_in(1, 8)), "a");
        const BoolAlg cod = indexed_algebra(static_cast<std::size_t>(rng.int_in(1, 8)), "b");
        iso.squares.push_back(algebra_recovery_square<Rational>(random_ba_hom(dom, cod, rng)));
    }
    r.merge(iso.summary());
    return r;
}

CheckReport criterion_smooth_axioms(std::uint64_t seed, double tolerance) {
    CheckReport r("smooth structure axioms");
    Rng rng(mix_seed(seed, 12));
    for (std::size_t m = 1; m <= 4; ++m) {
        const ProductRing<RealApprox> ring = indexed_ring<RealApprox>(m);
        r.merge(projection_axiom_check(ring, 250, rng));
        r.merge(composition_axiom_check(ring, 250, tolerance, rng));
    }
    return r;
}

CheckReport criterion_equalizers(std::uint64_t seed) {
    CheckReport r("equalizers are regular subrings");
    Rng rng(mix_seed(seed, 13));
    const auto gen = rational_gen();
    for (std::size_t i = 0; i < 100; ++i) {
        const auto dom = indexed_ring<Rational>(static_cast<std::size_t>(rng.int_in(1, 6)), "s");
        const auto cod = indexed_ring<Rational>(static_cast<std::size_t>(rng.int_in(1, 6)), "t");
        const RingHom<Rational> f = random_hom(dom, cod, rng);
        const RingHom<Rational> g = random_hom(dom, cod, rng);
        r.merge(equalizer_closure_check(equalizer(f, g), rng, gen, 50));
    }
    return r;
}

std::vector<CriterionResult> run_selected(const AcceptanceOptions& options,
                                          const QuasiInverseOracle& oracle,
                                          const std::vector<int>& numbers);

CheckReport criterion_mutation_sensitivity(const AcceptanceOptions& options,
                                           const QuasiInverseOracle& oracle) {
    CheckReport r("mutation sensitivity of the join formula");
    AcceptanceOptions mutated = options;
    mutated.mutate_break_join = true;
    const std::vector<int> affected{1, 2, 3, 4, 5, 6, 11};
    const std::vector<CriterionResult> results = run_selected(mutated, oracle, affected);
    for (const CriterionResult& c : results) {
        const bool join_dependent = c.number == 5 || c.number == 6 || c.number == 11;
        if (join_dependent)
            r.require(!c.report.passed(),
                      "criterion " + std::to_string(c.number) +
                          " still passes with the join formula broken");
        else
            r.require(c.report.passed(),
                      "criterion " + std::to_string(c.number) +
                          " is spuriously affected by the join formula");
    }
    return r;
}

std::vector<CriterionResult> run_selected(const AcceptanceOptions& options,
                                          const QuasiInverseOracle& oracle,
                                          const std::vector<int>& numbers) {
    const bool needs_corpus =
        std::any_of(numbers.begin(), numbers.end(), [](int n) { return n <= 3; });
    Corpus corpus;
    if (needs_corpus) corpus = build_corpus(options.seed);
    const RingJoinFn<Rational> join_fn = active_join(options);

    std::vector<CriterionResult> out;
    for (const int n : numbers) {
        CheckReport report;
        switch (n) {
            case 1: report = criterion_quasi_inverse(corpus, oracle); break;
            case 2: report = criterion_regularity_witnesses(corpus); break;
            case 3: report = criterion_reduced_spectrum(corpus); break;
            case 4: report = criterion_localization(options.seed); break;
            case 5: report = criterion_idempotent_clopen_iso(join_fn); break;
            case 6: report = criterion_idempotent_clopen_naturality(options.seed, join_fn); break;
            case 7: report = criterion_stone_roundtrips(options.seed); break;
            case 8: report = criterion_profinite_presentation(); break;
            case 9: report = criterion_profinite_functor(options.seed); break;
            case 10: report = criterion_space_recovery(options.seed); break;
            case 11: report = criterion_algebra_recovery(options.seed, join_fn); break;
            case 12: report = criterion_smooth_axioms(options.seed, options.tolerance); break;
            case 13: report = criterion_equalizers(options.seed); break;
            case 14: report = criterion_mutation_sensitivity(options, oracle); break;
            default: throw ContractError("unknown criterion number " + std::to_string(n));
        }
        out.push_back(CriterionResult{n, report.name, std::move(report)});
    }
    return out;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const QuasiInverseOracle& oracle) {
    std::vector<int> numbers;
    for (int n = 1; n <= 13; ++n) numbers.push_back(n);
    if (!options.mutate_break_join) numbers.push_back(14);
    return run_selected(options, oracle, numbers);
}

CheckReport full_pipeline_verify(const AcceptanceOptions& options,
                                 const QuasiInverseOracle& oracle) {
    CheckReport total("acceptance pipeline");
    for (const CriterionResult& c : run_acceptance(options, oracle)) {
        if (c.report.vacuous())
            total.warn("criterion " + std::to_string(c.number) + " (" + c.title +
                       ") produced no checks");
        total.merge(c.report);
    }
    return total;
}

} // namespace stonevn
