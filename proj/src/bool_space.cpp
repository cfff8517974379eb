#include "stonevn/bool_space.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stonevn/errors.hpp"

namespace stonevn {

FiniteBoolSpace::FiniteBoolSpace(std::vector<std::string> names) : points(std::move(names)) {
    for (const auto& p : points)
        if (p.empty()) throw ContractError("space point with empty name");
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ContractError("space point names must be unique");
}

std::optional<std::size_t> FiniteBoolSpace::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == name) return i;
    return std::nullopt;
}

ContinuousMap::ContinuousMap(FiniteBoolSpace dom, FiniteBoolSpace cod,
                             std::vector<std::size_t> map)
    : domain(std::move(dom)), codomain(std::move(cod)), point_map(std::move(map)) {
    if (point_map.size() != domain.size())
        throw ContractError("map must assign an image to every domain point");
    for (std::size_t v : point_map)
        if (v >= codomain.size())
            throw ContractError("map image outside the codomain");
}

ContinuousMap ContinuousMap::identity(const FiniteBoolSpace& space) {
    std::vector<std::size_t> map(space.size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    return ContinuousMap(space, space, std::move(map));
}

std::size_t ContinuousMap::operator()(std::size_t i) const {
    if (i >= point_map.size()) throw ContractError("point index outside the domain");
    return point_map[i];
}

bool ContinuousMap::is_bijective() const {
    if (domain.size() != codomain.size()) return false;
    std::vector<bool> hit(codomain.size(), false);
    for (std::size_t v : point_map) {
        if (hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f) {
    if (f.codomain != g.domain)
        throw ContractError("maps do not compose: codomain/domain mismatch");
    std::vector<std::size_t> map(f.domain.size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = g.point_map[f.point_map[i]];
    return ContinuousMap(f.domain, g.codomain, std::move(map));
}

// ---------------------------------------------------------------------------
// Equivalence relations
// ---------------------------------------------------------------------------

EquivRelation EquivRelation::from_blocks(std::size_t ground_size,
                                         std::vector<std::vector<std::size_t>> blocks) {
    EquivRelation r;
    r.ground_size = ground_size;
    r.block_of.assign(ground_size, static_cast<std::size_t>(-1));
    for (auto& b : blocks) {
        if (b.empty()) throw ContractError("partition with an empty block");
        std::sort(b.begin(), b.end());
        for (std::size_t x : b) {
            if (x >= ground_size) throw ContractError("partition block mentions a missing point");
            if (r.block_of[x] != static_cast<std::size_t>(-1))
                throw ContractError("partition blocks are not disjoint");
            r.block_of[x] = 0; // provisional; reassigned after sorting blocks
        }
    }
    for (std::size_t x = 0; x < ground_size; ++x)
        if (r.block_of[x] == static_cast<std::size_t>(-1))
            throw ContractError("partition does not cover every point");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    r.blocks = std::move(blocks);
    for (std::size_t bi = 0; bi < r.blocks.size(); ++bi)
        for (std::size_t x : r.blocks[bi]) r.block_of[x] = bi;
    return r;
}

EquivRelation EquivRelation::discrete(std::size_t ground_size) {
    std::vector<std::vector<std::size_t>> blocks(ground_size);
    for (std::size_t i = 0; i < ground_size; ++i) blocks[i] = {i};
    return from_blocks(ground_size, std::move(blocks));
}

EquivRelation EquivRelation::total(std::size_t ground_size) {
    if (ground_size == 0) return from_blocks(0, {});
    std::vector<std::size_t> all(ground_size);
    for (std::size_t i = 0; i < ground_size; ++i) all[i] = i;
    return from_blocks(ground_size, {all});
}

bool EquivRelation::refines(const EquivRelation& coarser) const {
    if (ground_size != coarser.ground_size)
        throw ContractError("relations live on different ground sets");
    for (const auto& b : blocks) {
        const std::size_t target = coarser.block_of[b.front()];
        for (std::size_t x : b)
            if (coarser.block_of[x] != target) return false;
    }
    return true;
}

std::vector<std::size_t> EquivRelation::rgs_key() const {
    std::vector<std::size_t> key(ground_size);
    std::vector<std::size_t> rename(blocks.size(), static_cast<std::size_t>(-1));
    std::size_t next = 0;
    for (std::size_t x = 0; x < ground_size; ++x) {
        std::size_t& r = rename[block_of[x]];
        if (r == static_cast<std::size_t>(-1)) r = next++;
        key[x] = r;
    }
    return key;
}

std::vector<EquivRelation> all_equiv_relations(std::size_t ground_size) {
    if (ground_size > 8)
        throw ResourceError("partition enumeration capped at 8 points (Bell(8) = 4140), got " +
                            std::to_string(ground_size));
    std::vector<EquivRelation> out;
    if (ground_size == 0) {
        out.push_back(EquivRelation::from_blocks(0, {}));
        return out;
    }
    // Restricted growth strings in lexicographic order: a[0] = 0 and
    // a[i] <= 1 + max(a[0..i-1]). Each string is a partition with point i in
    // block a[i]; the recursion emits them in ascending string order.
    std::vector<std::size_t> a(ground_size, 0);
    const auto emit = [&]() {
        std::size_t nblocks = 0;
        for (std::size_t v : a) nblocks = std::max(nblocks, v + 1);
        std::vector<std::vector<std::size_t>> blocks(nblocks);
        for (std::size_t i = 0; i < ground_size; ++i) blocks[a[i]].push_back(i);
        out.push_back(EquivRelation::from_blocks(ground_size, std::move(blocks)));
    };
    const auto rec = [&](auto&& self, std::size_t i, std::size_t maxv) -> void {
        if (i == ground_size) {
            emit();
            return;
        }
        for (std::size_t v = 0; v <= maxv + 1; ++v) {
            a[i] = v;
            self(self, i + 1, std::max(maxv, v));
        }
    };
    rec(rec, 1, 0);
    return out;
}

Quotient quotient(const FiniteBoolSpace& space, const EquivRelation& relation) {
    if (relation.ground_size != space.size())
        throw ContractError("relation does not live on this space");
    std::vector<std::string> names;
    names.reserve(relation.block_count());
    for (const auto& b : relation.blocks) {
        std::string name;
        for (std::size_t x : b) {
            if (!name.empty()) name += '|';
            name += space.points[x];
        }
        names.push_back(std::move(name));
    }
    FiniteBoolSpace q(std::move(names));
    return Quotient{q, ContinuousMap(space, q, relation.block_of)};
}

ContinuousMap transition(const FiniteBoolSpace& space, const EquivRelation& finer,
                         const EquivRelation& coarser) {
    if (!finer.refines(coarser))
        throw ContractError("transition requested along a non-refinement");
    const Quotient from = quotient(space, finer);
    const Quotient to = quotient(space, coarser);
    std::vector<std::size_t> map(finer.block_count());
    for (std::size_t bi = 0; bi < finer.block_count(); ++bi)
        map[bi] = coarser.block_of[finer.blocks[bi].front()];
    return ContinuousMap(from.space, to.space, std::move(map));
}

EquivRelation pullback_relation(const ContinuousMap& f, const EquivRelation& codomain_relation) {
    if (codomain_relation.ground_size != f.codomain.size())
        throw ContractError("relation does not live on the codomain of the map");
    // x ~ y iff f(x) ~' f(y): group domain points by the block of their image.
    std::map<std::size_t, std::vector<std::size_t>> grouped;
    for (std::size_t x = 0; x < f.domain.size(); ++x)
        grouped[codomain_relation.block_of[f.point_map[x]]].push_back(x);
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(grouped.size());
    for (auto& [_, b] : grouped) blocks.push_back(std::move(b));
    return EquivRelation::from_blocks(f.domain.size(), std::move(blocks));
}

ContinuousMap induced_quotient_map(const ContinuousMap& f,
                                   const EquivRelation& codomain_relation) {
    const EquivRelation pulled = pullback_relation(f, codomain_relation);
    const Quotient from = quotient(f.domain, pulled);
    const Quotient to = quotient(f.codomain, codomain_relation);
    std::vector<std::size_t> map(pulled.block_count());
    std::vector<bool> hit(codomain_relation.block_count(), false);
    for (std::size_t bi = 0; bi < pulled.block_count(); ++bi) {
        const std::size_t image = codomain_relation.block_of[f.point_map[pulled.blocks[bi].front()]];
        map[bi] = image;
        if (hit[image])
            throw ContractError("induced quotient map failed to be injective"); // unreachable
        hit[image] = true;
    }
    return ContinuousMap(from.space, to.space, std::move(map));
}

// ---------------------------------------------------------------------------
// Inverse systems
// ---------------------------------------------------------------------------

void InverseSystem::add_arrow(std::size_t from, std::size_t to, ContinuousMap map) {
    if (from >= levels.size() || to >= levels.size())
        throw ContractError("arrow endpoints outside the level list");
    if (map.domain != levels[from] || map.codomain != levels[to])
        throw ContractError("arrow map endpoints disagree with its levels");
    arrows.push_back(Arrow{from, to, std::move(map)});
}

void InverseSystem::validate() const {
    for (const auto& a : arrows) {
        if (a.from >= levels.size() || a.to >= levels.size())
            throw ContractError("arrow endpoints outside the level list");
        if (a.map.domain != levels[a.from] || a.map.codomain != levels[a.to])
            throw ContractError("arrow map endpoints disagree with its levels");
        if (a.from == a.to) {
            for (std::size_t p = 0; p < a.map.point_map.size(); ++p)
                if (a.map.point_map[p] != p)
                    throw ContractError("self-arrow at level " + std::to_string(a.from) +
                                        " is not the identity");
        }
    }

    // Path independence: saturate the stored arrows under composition; any
    // two ways of getting between the same pair of levels must agree.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> composite;
    // provenance: which composition produced this entry, for the error witness
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> via;

    const auto route = [](std::size_t i, std::size_t through, std::size_t k) {
        if (through == i) // a stored arrow, not a composite
            return std::to_string(i) + " -> " + std::to_string(k);
        return std::to_string(i) + " -> " + std::to_string(through) + " -> " + std::to_string(k);
    };

    const auto reconcile = [&](std::size_t i, std::size_t k, std::vector<std::size_t> pm,
                               std::size_t through) {
        if (i == k) {
            for (std::size_t p = 0; p < pm.size(); ++p)
                if (pm[p] != p)
                    throw ContractError("incoherent system: the composite " +
                                        route(i, through, k) +
                                        " is not the identity (witness point index " +
                                        std::to_string(p) + ")");
            return false;
        }
        const auto key = std::make_pair(i, k);
        auto it = composite.find(key);
        if (it == composite.end()) {
            composite.emplace(key, std::move(pm));
            via[key] = {i, through};
            return true;
        }
        if (it->second != pm) {
            std::size_t p = 0;
            while (p < pm.size() && pm[p] == it->second[p]) ++p;
            throw ContractError("incoherent system: routes " + route(i, through, k) + " and " +
                                route(i, via[key].second, k) + " disagree (witness: level " +
                                std::to_string(i) + " point index " + std::to_string(p) + ")");
        }
        return false;
    };

    for (const auto& a : arrows) {
        if (a.from == a.to) continue;
        reconcile(a.from, a.to, a.map.point_map, a.from);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        // Snapshot keys to avoid iterating a container we mutate.
        std::vector<std::pair<std::size_t, std::size_t>> keys;
        keys.reserve(composite.size());
        for (const auto& [k, _] : composite) keys.push_back(k);
        for (const auto& [i, j] : keys) {
            const auto first = composite.at({i, j}); // copy: reconcile may insert
            for (const auto& [jk, second] : composite) {
                if (jk.first != j) continue;
                const std::size_t k = jk.second;
                std::vector<std::size_t> pm(first.size());
                for (std::size_t p = 0; p < pm.size(); ++p) pm[p] = second[first[p]];
                if (reconcile(i, k, std::move(pm), j)) changed = true;
            }
        }
    }
}

LimitResult limit(const InverseSystem& system) {
    system.validate();
    const std::size_t nlevels = system.levels.size();

    // Constraints per level against already-assigned levels, both directions.
    struct Constraint {
        std::size_t other;
        const ContinuousMap* map;
        bool outgoing; // true: this -> other must hit the other's choice
    };
    std::vector<std::vector<Constraint>> touching(nlevels);
    for (const auto& a : system.arrows) {
        if (a.from == a.to) continue;
        touching[a.from].push_back(Constraint{a.to, &a.map, true});
        touching[a.to].push_back(Constraint{a.from, &a.map, false});
    }

    // Assign most-constraining levels first; for quotient towers the finest
    // level then forces all the others, making the search linear.
    std::vector<std::size_t> order(nlevels);
    for (std::size_t i = 0; i < nlevels; ++i) order[i] = i;
    std::vector<std::size_t> out_degree(nlevels, 0);
    for (const auto& a : system.arrows)
        if (a.from != a.to) ++out_degree[a.from];
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (out_degree[x] != out_degree[y]) return out_degree[x] > out_degree[y];
        if (system.levels[x].size() != system.levels[y].size())
            return system.levels[x].size() > system.levels[y].size();
        return x < y;
    });

    constexpr std::size_t max_threads = std::size_t{1} << 20;
    std::vector<std::size_t> assigned(nlevels, static_cast<std::size_t>(-1));
    std::vector<std::vector<std::size_t>> found;

    const auto consistent = [&](std::size_t level, std::size_t p) {
        for (const auto& c : touching[level]) {
            const std::size_t o = assigned[c.other];
            if (o == static_cast<std::size_t>(-1)) continue;
            if (c.outgoing) {
                if (c.map->point_map[p] != o) return false;
            } else {
                if (c.map->point_map[o] != p) return false;
            }
        }
        return true;
    };

    const auto dfs = [&](auto&& self, std::size_t pos) -> void {
        if (pos == nlevels) {
            if (found.size() >= max_threads)
                throw ResourceError("limit has more threads than the enumeration bound");
            found.push_back(assigned);
            return;
        }
        const std::size_t level = order[pos];
        for (std::size_t p = 0; p < system.levels[level].size(); ++p) {
            if (!consistent(level, p)) continue;
            assigned[level] = p;
            self(self, pos + 1);
            assigned[level] = static_cast<std::size_t>(-1);
        }
    };
    dfs(dfs, 0);

    // Canonical order: lexicographic in original level order.
    std::sort(found.begin(), found.end());

    LimitResult result;
    std::vector<std::string> names;
    names.reserve(found.size());
    for (std::size_t t = 0; t < found.size(); ++t) names.push_back("t" + std::to_string(t));
    result.space = FiniteBoolSpace(std::move(names));
    result.threads.reserve(found.size());
    for (auto& f : found) result.threads.push_back(LimitPoint{std::move(f)});
    for (std::size_t i = 0; i < nlevels; ++i) {
        std::vector<std::size_t> pm(result.threads.size());
        for (std::size_t t = 0; t < result.threads.size(); ++t)
            pm[t] = result.threads[t].components[i];
        result.projections.push_back(ContinuousMap(result.space, system.levels[i], std::move(pm)));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Profinite presentation
// ---------------------------------------------------------------------------

PartitionSystem partition_system(const FiniteBoolSpace& space, std::uint64_t seed,
                                 std::size_t max_points, std::size_t full_lattice_bound,
                                 std::size_t sample_size) {
    if (space.size() > max_points)
        throw ResourceError("partition system over " + std::to_string(space.size()) +
                            " points exceeds bound " + std::to_string(max_points));
    const std::size_t n = space.size();

    std::vector<EquivRelation> relations;
    if (n <= full_lattice_bound) {
        relations = all_equiv_relations(n);
    } else {
        // Sampled tower. The discrete and total relations are always present:
        // the discrete one separates points (and forces every thread), the
        // total one is the terminal level.
        std::set<std::vector<std::size_t>> seen;
        const auto push = [&](EquivRelation r) {
            if (seen.insert(r.rgs_key()).second) relations.push_back(std::move(r));
        };
        push(EquivRelation::discrete(n));
        push(EquivRelation::total(n));
        Rng rng(mix_seed(seed, 0x9a57));
        std::size_t attempts = 0;
        while (relations.size() < sample_size && attempts < sample_size * 64) {
            ++attempts;
            std::vector<std::size_t> rgs(n, 0);
            std::size_t maxv = 0;
            for (std::size_t i = 1; i < n; ++i) {
                rgs[i] = rng.below(maxv + 2);
                maxv = std::max(maxv, rgs[i]);
            }
            std::size_t nblocks = maxv + 1;
            std::vector<std::vector<std::size_t>> blocks(nblocks);
            for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]].push_back(i);
            push(EquivRelation::from_blocks(n, std::move(blocks)));
        }
    }

    PartitionSystem ps;
    ps.relations = relations;
    for (const auto& r : relations) ps.system.levels.push_back(quotient(space, r).space);
    for (std::size_t i = 0; i < relations.size(); ++i) {
        for (std::size_t j = 0; j < relations.size(); ++j) {
            if (i == j) continue;
            if (relations[i].refines(relations[j]))
                ps.system.add_arrow(i, j, transition(space, relations[i], relations[j]));
        }
    }
    return ps;
}

ProfiniteEmbedding profinite_embedding(const FiniteBoolSpace& space, std::uint64_t seed,
                                       std::size_t max_points) {
    ProfiniteEmbedding out{partition_system(space, seed, max_points), LimitResult{},
                           ContinuousMap(FiniteBoolSpace(), FiniteBoolSpace(), {}),
                           CheckReport("profinite embedding is a homeomorphism")};
    out.limit = limit(out.system.system);

    std::map<std::vector<std::size_t>, std::size_t> thread_index;
    for (std::size_t t = 0; t < out.limit.threads.size(); ++t)
        thread_index[out.limit.threads[t].components] = t;

    std::vector<std::size_t> pm(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        std::vector<std::size_t> components(out.system.relations.size());
        for (std::size_t i = 0; i < out.system.relations.size(); ++i)
            components[i] = out.system.relations[i].block_of[x];
        const auto it = thread_index.find(components);
        if (it == thread_index.end())
            throw ContractError("a point's quotient classes do not form a thread"); // unreachable
        pm[x] = it->second;
    }
    out.embedding = ContinuousMap(space, out.limit.space, std::move(pm));

    // Bijectivity is the whole topological content here: both sides are
    // finite and discrete, so any bijection is a homeomorphism.
    std::vector<std::size_t> hits(out.limit.threads.size(), 0);
    for (std::size_t x = 0; x < space.size(); ++x) ++hits[out.embedding.point_map[x]];
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = x + 1; y < space.size(); ++y)
            out.homeomorphism.require_lazy(
                out.embedding.point_map[x] != out.embedding.point_map[y], [&] {
                    return "points " + space.points[x] + " and " + space.points[y] +
                           " share every quotient class";
                });
    out.homeomorphism.require(out.limit.threads.size() == space.size(),
                              "thread count " + std::to_string(out.limit.threads.size()) +
                                  " differs from point count " + std::to_string(space.size()));
    for (std::size_t t = 0; t < hits.size(); ++t)
        out.homeomorphism.require_lazy(hits[t] > 0, [&] {
            return "thread " + out.limit.space.points[t] + " is not hit by any point";
        });
    return out;
}

LimitMap induced_limit_map(const ContinuousMap& f) {
    // Needs the complete quotient lattice on both sides, so the cap matches
    // the full-lattice bound of the profinite presentation.
    constexpr std::size_t bound = 6;
    if (f.domain.size() > bound || f.codomain.size() > bound)
        throw ResourceError("induced limit map needs the full partition lattice; capped at " +
                            std::to_string(bound) + " points");

    LimitMap out{profinite_embedding(f.domain), profinite_embedding(f.codomain),
                 ContinuousMap(FiniteBoolSpace(), FiniteBoolSpace(), {}),
                 CheckReport("induced limit map satisfies its defining squares")};

    // Index the source relations by canonical key so pullbacks can be found.
    std::map<std::vector<std::size_t>, std::size_t> source_level;
    for (std::size_t i = 0; i < out.source.system.relations.size(); ++i)
        source_level[out.source.system.relations[i].rgs_key()] = i;

    std::map<std::vector<std::size_t>, std::size_t> target_thread;
    for (std::size_t t = 0; t < out.target.limit.threads.size(); ++t)
        target_thread[out.target.limit.threads[t].components] = t;

    const std::size_t ntarget = out.target.system.relations.size();
    // For each target relation: the source level of its pullback and the
    // induced block-level map.
    std::vector<std::size_t> pulled_level(ntarget);
    std::vector<ContinuousMap> induced;
    induced.reserve(ntarget);
    for (std::size_t j = 0; j < ntarget; ++j) {
        const EquivRelation pulled = pullback_relation(f, out.target.system.relations[j]);
        const auto it = source_level.find(pulled.rgs_key());
        if (it == source_level.end())
            throw ContractError("pullback relation missing from the source lattice"); // unreachable
        pulled_level[j] = it->second;
        induced.push_back(induced_quotient_map(f, out.target.system.relations[j]));
    }

    std::vector<std::size_t> pm(out.source.limit.threads.size());
    for (std::size_t t = 0; t < out.source.limit.threads.size(); ++t) {
        std::vector<std::size_t> components(ntarget);
        for (std::size_t j = 0; j < ntarget; ++j)
            components[j] =
                induced[j].point_map[out.source.limit.threads[t].components[pulled_level[j]]];
        const auto it = target_thread.find(components);
        if (it == target_thread.end())
            throw ContractError("image of a thread is not a thread"); // unreachable
        pm[t] = it->second;
    }
    out.map = ContinuousMap(out.source.limit.space, out.target.limit.space, std::move(pm));

    // Defining squares: for every target relation R', projecting the mapped
    // thread to level R' equals mapping the thread's pullback component
    // through the induced quotient map.
    for (std::size_t j = 0; j < ntarget; ++j) {
        const ContinuousMap lhs = compose(out.target.limit.projections[j], out.map);
        const ContinuousMap rhs = compose(induced[j], out.source.limit.projections[pulled_level[j]]);
        out.coherence.require(lhs.point_map == rhs.point_map,
                              "square at target relation " + std::to_string(j) + " fails");
    }
    // Uniqueness of the induced map: the target projections are jointly
    // injective (threads are exactly their component tuples), so any map
    // satisfying the squares is this one.
    out.coherence.require(target_thread.size() == out.target.limit.threads.size(),
                          "target projections are not jointly injective");
    return out;
}

} // namespace stonevn
