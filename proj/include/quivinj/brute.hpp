#pragma once

// Brute-force oracles and seeded random generators.  Nothing here shares
// code paths with the structured algorithms beyond element enumeration and
// matrix application, so agreement between the two is meaningful.

#include <random>
#include <set>

#include "rep.hpp"

namespace quivinj::brute {

using Rng = std::mt19937_64;

inline FinModule random_module(Rng& rng, const BaseRing& R, int max_rank, std::uint64_t max_card = 64) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<int> e;
        int r = static_cast<int>(rng() % (max_rank + 1));
        for (int i = 0; i < r; ++i) e.push_back(1 + static_cast<int>(rng() % R.length()));
        FinModule M = FinModule::from_factors(R, e);
        if (M.cardinality() <= max_card) return M;
    }
    return FinModule::zero(R);
}

inline Vec random_element(Rng& rng, const FinModule& M) {
    Vec x(M.rank());
    for (auto& e : x) e = static_cast<Elem>(rng() % static_cast<std::uint64_t>(M.ring().size()));
    return normalize(M, x);
}

inline ModuleMap random_map(Rng& rng, const FinModule& M, const FinModule& N) {
    HomModule H = hom_module(M, N);
    return H.to_map(random_element(rng, H.module()));
}

/// Random automorphism, by rejection from random endomorphisms.
inline ModuleMap random_automorphism(Rng& rng, const FinModule& M) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        ModuleMap f = random_map(rng, M, M);
        if (is_iso(f)) return f;
    }
    return ModuleMap::identity(M);
}

/// Random representation of a finite quiver.
inline Representation random_rep(Rng& rng, const BaseRing& R, const Quiver& Q, int max_rank, std::uint64_t max_card = 16) {
    std::map<std::string, FinModule> mods;
    std::map<std::string, ModuleMap> maps;
    for (const auto& v : Q.vertices()) mods[v] = random_module(rng, R, max_rank, max_card);
    for (const auto& a : Q.arrows()) maps[a.id] = random_map(rng, mods[a.src], mods[a.tgt]);
    return Representation::finite(R, Q, mods, maps);
}

/// Random constant-tail representation of a descriptor quiver on a window of the given depth.
inline Representation random_window_rep(Rng& rng, const BaseRing& R, const Quiver& Q, int depth, int max_rank,
                                        std::uint64_t max_card = 16) {
    if (Q.is_finite()) return random_rep(rng, R, Q, max_rank, max_card);
    Quiver W = materialize(Q, depth);
    std::map<std::string, FinModule> mods;
    std::map<std::string, ModuleMap> maps;
    for (const auto& v : W.vertices()) mods[v] = random_module(rng, R, max_rank, max_card);
    for (const auto& a : W.arrows()) maps[a.id] = random_map(rng, mods[a.src], mods[a.tgt]);
    return Representation(R, Q, uniform_depths(Q, depth), mods, maps);
}

/// Random rooted tree on n vertices "0".."n-1", arrows from parent to child.
inline Quiver random_tree(Rng& rng, int n) {
    std::vector<std::string> v;
    std::vector<Arrow> a;
    for (int i = 0; i < n; ++i) v.push_back(std::to_string(i));
    for (int i = 1; i < n; ++i) {
        int p = static_cast<int>(rng() % i);
        a.push_back({"t" + std::to_string(i), v[p], v[i]});
    }
    return Quiver(v, a);
}

/// Random acyclic quiver on n vertices; arrows go from lower to higher index.
inline Quiver random_dag(Rng& rng, int n, int arrows) {
    std::vector<std::string> v;
    std::vector<Arrow> a;
    for (int i = 0; i < n; ++i) v.push_back(std::to_string(i));
    for (int j = 0; j < arrows && n > 1; ++j) {
        int s = static_cast<int>(rng() % (n - 1));
        int t = s + 1 + static_cast<int>(rng() % (n - 1 - s));
        a.push_back({"d" + std::to_string(j), v[s], v[t]});
    }
    return Quiver(v, a);
}

// ---------------------------------------------------------------------------
// Hom by enumeration of candidate tuples

/// Calls fn(components) for every natural transformation X -> Y found by
/// trying every tuple of vertexwise module maps.
template <class Fn>
void for_each_natural_tuple(const Representation& X0, const Representation& Y0, Fn&& fn, std::uint64_t budget = kDefaultBudget) {
    auto [X, Y] = align(X0, Y0);
    const auto& vs = X.vertices();
    std::vector<HomModule> local;
    std::vector<std::vector<Vec>> choices;
    std::uint64_t total = 1;
    for (const auto& v : vs) {
        local.emplace_back(X.module(v), Y.module(v));
        total = detail::sat_mul(total, local.back().module().cardinality());
        if (total > budget) throw BudgetExceeded("candidate tuples exceed budget");
        choices.push_back(elements(local.back().module(), budget));
    }
    std::map<std::string, ModuleMap> comp;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vs.size()) {
            for (const auto& a : X.window().arrows())
                if (compose(Y.map(a.id), comp.at(a.src)) != compose(comp.at(a.tgt), X.map(a.id))) return;
            fn(RepMorphism{X, Y, comp});
            return;
        }
        for (const Vec& h : choices[i]) {
            comp[vs[i]] = local[i].to_map(h);
            rec(i + 1);
        }
    };
    rec(0);
}

inline std::uint64_t hom_count(const Representation& X, const Representation& Y, std::uint64_t budget = kDefaultBudget) {
    std::uint64_t n = 0;
    for_each_natural_tuple(X, Y, [&](const RepMorphism&) { ++n; }, budget);
    return n;
}

/// Every element (v, x) of a representation window.
inline std::vector<std::pair<std::string, Vec>> all_elements(const Representation& X) {
    std::vector<std::pair<std::string, Vec>> out;
    for (const auto& v : X.vertices())
        for (const Vec& x : elements(X.module(v))) out.push_back({v, x});
    return out;
}

/// Element set of a subrepresentation, as a canonical key.
inline std::set<std::pair<std::string, Vec>> element_set(const SubRepresentation& S) {
    std::set<std::pair<std::string, Vec>> out;
    for (const auto& v : S.sub.vertices())
        for (const Vec& x : elements(S.sub.module(v))) out.insert({v, S.inclusion.component(v).apply(x)});
    return out;
}

/// Every subrepresentation, found by closing sets of generators; small inputs only.
inline std::vector<SubRepresentation> all_subreps(const Representation& X, std::uint64_t budget = 4096) {
    std::vector<SubRepresentation> out;
    std::set<std::set<std::pair<std::string, Vec>>> seen;
    std::vector<SubRepresentation> frontier{generated_subrep(X, {})};
    seen.insert(element_set(frontier.front()));
    out.push_back(frontier.front());
    auto els = all_elements(X);
    while (!frontier.empty()) {
        std::vector<SubRepresentation> next;
        for (const auto& S : frontier) {
            auto have = element_set(S);
            std::vector<std::pair<std::string, Vec>> gens;
            for (const auto& v : S.sub.vertices())
                for (std::size_t j = 0; j < S.sub.module(v).rank(); ++j)
                    gens.push_back({v, S.inclusion.component(v).matrix().column(j)});
            for (const auto& e : els) {
                if (have.count(e)) continue;
                auto g = gens;
                g.push_back(e);
                SubRepresentation T = generated_subrep(X, g);
                if (seen.insert(element_set(T)).second) {
                    if (seen.size() > budget) throw BudgetExceeded("too many subrepresentations");
                    out.push_back(T);
                    next.push_back(T);
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace quivinj::brute
