#pragma once

// Right adjoints of evaluation and the representations they produce.
//
// e_*^v(M)(u) is the product of copies of M indexed by the paths u -> v, in
// lexicographic path order; an arrow a: u -> u' sends the coordinate of a
// path q out of u' to the coordinate of the path a.q out of u.  For a ray's
// vertex at infinity the seed sits on every vertex that reaches the ray,
// with identities along it.

#include <random>
#include <set>

#include "certificate.hpp"
#include "rep.hpp"

namespace quivinj {

namespace detail {

/// X(p) for a path p, as a composite of arrow maps.
inline ModuleMap path_map(const Representation& X, const Path& p) {
    ModuleMap f = ModuleMap::identity(X.module(p.src));
    for (const auto& id : p.arrows) f = compose(X.map(id), f);
    return f;
}

inline void require_acyclic(const Quiver& W) {
    auto cyc = cyclic_vertices(W);
    if (!cyc.empty())
        throw Error(ErrorKind::UnboundedPathSet, "right adjoint needs an acyclic quiver (cycle through " + *cyc.begin() + ")");
}

inline std::vector<Arrow> ray_arrows_between(const Quiver& Q, const std::string& ray, int from, int to) {
    std::vector<Arrow> out;
    for (int i = from + 1; i <= to; ++i) out.push_back(ray_arrow_full(Q, ray, i));
    return out;
}

inline Path ray_path(const Quiver& Q, const std::string& ray, int from, int to) {
    Path p{ray_vertex(Q, ray, from), ray_vertex(Q, ray, to), {}};
    for (const Arrow& a : ray_arrows_between(Q, ray, from, to)) p.arrows.push_back(a.id);
    return p;
}

/// Window depths large enough that every path into v lies inside the window
/// and every outgoing ray ends in a vertex with no path to v.
inline RayDepths star_depths(const Quiver& Q, const std::string& v) {
    RayDepths d = uniform_depths(Q, 1);
    if (auto loc = locate_on_ray(Q, v)) d[loc->first] = loc->second + 1;
    return d;
}

/// Copies of M indexed by paths, and the arrow maps between them.
struct PathProduct {
    std::map<std::string, std::vector<Path>> paths;
    std::map<std::string, DirectSum> sums;
};

inline PathProduct path_product(const BaseRing& R, const Quiver& W, const std::string& v, const FinModule& M) {
    PathProduct pp;
    for (const auto& u : W.vertices()) {
        pp.paths[u] = paths(W, u, v);
        pp.sums.emplace(u, direct_sum(R, std::vector<FinModule>(pp.paths[u].size(), M)));
    }
    return pp;
}

inline ModuleMap path_product_map(const PathProduct& pp, const Arrow& a, const FinModule& M) {
    const auto& from = pp.paths.at(a.src);
    const auto& to = pp.paths.at(a.tgt);
    std::map<std::vector<std::string>, std::size_t> index;
    for (std::size_t i = 0; i < from.size(); ++i) index[from[i].arrows] = i;
    std::vector<std::vector<ModuleMap>> blocks(to.size(), std::vector<ModuleMap>(from.size(), ModuleMap::zero(M, M)));
    for (std::size_t j = 0; j < to.size(); ++j) {
        std::vector<std::string> ext{a.id};
        ext.insert(ext.end(), to[j].arrows.begin(), to[j].arrows.end());
        blocks[j][index.at(ext)] = ModuleMap::identity(M);
    }
    return block_map(pp.sums.at(a.src), pp.sums.at(a.tgt), blocks);
}

inline std::optional<std::string> ray_target(const Quiver& Q, const std::string& target) {
    std::string id = target.rfind("inf:", 0) == 0 ? target.substr(4) : target;
    for (const RayInfo& r : rays(Q))
        if (r.id == id) return id;
    return std::nullopt;
}

}  // namespace detail

/// e_*^v(M) for a vertex v.
inline Representation e_star_vertex(const BaseRing& R, const Quiver& Q, const std::string& v, const FinModule& M) {
    detail::require_ray_family(Q);
    if (!has_vertex(Q, v)) throw Error(ErrorKind::UnknownVertex, v);
    RayDepths depths = detail::star_depths(Q, v);
    Quiver W = materialize(Q, depths);
    detail::require_acyclic(W);
    auto pp = detail::path_product(R, W, v, M);
    std::map<std::string, FinModule> mods;
    std::map<std::string, ModuleMap> maps;
    for (const auto& u : W.vertices()) mods[u] = pp.sums.at(u).sum;
    for (const auto& a : W.arrows()) maps[a.id] = detail::path_product_map(pp, a, M);
    return Representation(R, Q, depths, mods, maps);
}

/// e_*^w(M) for the vertex at infinity w of an outgoing ray.
inline Representation e_star_ray(const BaseRing& R, const Quiver& Q, const std::string& ray, const FinModule& M) {
    RayInfo info = ray_info(Q, ray);
    if (info.incoming) throw Error(ErrorKind::Unsupported, "no vertex at infinity on incoming ray " + ray);
    RayDepths depths = uniform_depths(Q, 1);
    Quiver W = materialize(Q, depths);
    detail::require_acyclic(W);
    auto pp = detail::path_product(R, W, info.attach, M);
    std::map<std::string, FinModule> mods;
    std::map<std::string, ModuleMap> maps;
    for (const auto& u : W.vertices()) mods[u] = pp.sums.at(u).sum;
    for (const auto& a : W.arrows()) maps[a.id] = detail::path_product_map(pp, a, M);
    // the attachment vertex has only the trivial path to itself, so its module is M
    mods[ray_vertex(Q, ray, 1)] = M;
    maps[ray_arrow(Q, ray, 1)] = ModuleMap::identity(M);
    return Representation(R, Q, depths, mods, maps);
}

/// e_*(M) at a vertex or at a ray's vertex at infinity (given as the ray id or "inf:<ray>").
inline Representation e_star(const BaseRing& R, const Quiver& Q, const std::string& target, const FinModule& M) {
    if (has_vertex(Q, target)) return e_star_vertex(R, Q, target, M);
    if (auto ray = detail::ray_target(Q, target)) return e_star_ray(R, Q, *ray, M);
    throw Error(ErrorKind::UnknownVertex, target);
}

/// Principal projective e_!^u(R): free on the paths out of u (finite acyclic quivers).
inline Representation principal_projective(const BaseRing& R, const Quiver& Q, const std::string& u) {
    if (!Q.is_finite()) throw Error(ErrorKind::Unsupported, "principal projectives on finite quivers only");
    detail::require_acyclic(Q);
    FinModule F = FinModule::free(R, 1);
    std::map<std::string, std::vector<Path>> ps;
    std::map<std::string, DirectSum> sums;
    std::map<std::string, FinModule> mods;
    for (const auto& w : Q.vertices()) {
        ps[w] = paths(Q, u, w);
        sums.emplace(w, direct_sum(R, std::vector<FinModule>(ps[w].size(), F)));
        mods[w] = sums.at(w).sum;
    }
    std::map<std::string, ModuleMap> maps;
    for (const auto& a : Q.arrows()) {
        const auto& from = ps[a.src];
        const auto& to = ps[a.tgt];
        std::map<std::vector<std::string>, std::size_t> index;
        for (std::size_t i = 0; i < to.size(); ++i) index[to[i].arrows] = i;
        std::vector<std::vector<ModuleMap>> blocks(to.size(), std::vector<ModuleMap>(from.size(), ModuleMap::zero(F, F)));
        for (std::size_t j = 0; j < from.size(); ++j) {
            auto ext = from[j].arrows;
            ext.push_back(a.id);
            blocks[index.at(ext)][j] = ModuleMap::identity(F);
        }
        maps[a.id] = block_map(sums.at(a.src), sums.at(a.tgt), blocks);
    }
    return Representation::finite(R, Q, mods, maps);
}

/// The morphism X -> e_*^v(M) corresponding to u: X(v) -> M.
inline RepMorphism adjoint_transpose(const Representation& X0, const std::string& v, const ModuleMap& u) {
    detail::require_constant_tails(X0);
    if (u.domain() != X0.module(v)) throw Error(ErrorKind::ShapeMismatch, "transpose: map must start at X(v)");
    const FinModule& M = u.codomain();
    auto [X, E] = align(X0, e_star_vertex(X0.ring(), X0.quiver(), v, M));
    std::map<std::string, ModuleMap> comp;
    for (const auto& w : X.vertices()) {
        auto ps = paths(X.window(), w, v);
        DirectSum ds = direct_sum(X.ring(), std::vector<FinModule>(ps.size(), M));
        ModuleMap c = ModuleMap::zero(X.module(w), E.module(w));
        for (std::size_t j = 0; j < ps.size(); ++j) c = add(c, compose(ds.injections[j], compose(u, detail::path_map(X, ps[j]))));
        comp[w] = c;
    }
    return {X, E, comp};
}

/// The morphism X -> e_*^w(M) (w at infinity on `ray`) corresponding to u: colim X -> M,
/// for a constant tail where the colimit is the end module.
inline RepMorphism adjoint_transpose_ray(const Representation& X0, const std::string& ray, const ModuleMap& u) {
    detail::require_constant_tails(X0);
    RayInfo info = ray_info(X0.quiver(), ray);
    const FinModule& M = u.codomain();
    auto [X, E] = align(X0.extended(RayDepths{{ray, 1}}), e_star_ray(X0.ring(), X0.quiver(), ray, M));
    if (u.domain() != X.module(X.end_vertex(ray))) throw Error(ErrorKind::ShapeMismatch, "transpose: map must start at the ray end");
    int end = X.depth(ray);
    ModuleMap tail = compose(u, detail::path_map(X, detail::ray_path(X.quiver(), ray, 0, end)));
    std::map<std::string, ModuleMap> comp;
    for (const auto& w : X.vertices()) {
        auto loc = locate_on_ray(X.quiver(), w);
        if (loc && loc->first == ray) {
            comp[w] = compose(u, detail::path_map(X, detail::ray_path(X.quiver(), ray, loc->second, end)));
            continue;
        }
        auto ps = paths(X.window(), w, info.attach);
        DirectSum ds = direct_sum(X.ring(), std::vector<FinModule>(ps.size(), M));
        ModuleMap c = ModuleMap::zero(X.module(w), E.module(w));
        for (std::size_t j = 0; j < ps.size(); ++j) c = add(c, compose(ds.injections[j], compose(tail, detail::path_map(X, ps[j]))));
        comp[w] = c;
    }
    return {X, E, comp};
}

/// Colimit along an outgoing ray.  Constant tails give the end module; a
/// periodic tail gives the stable image of one full period.
inline FinModule colim_along_ray(const Representation& X, const std::string& ray) {
    RayInfo info = ray_info(X.quiver(), ray);
    if (info.incoming) throw Error(ErrorKind::Unsupported, "colimit along incoming ray " + ray);
    const FinModule& E = X.module(X.end_vertex(ray));
    auto p = X.periodic().find(ray);
    if (p == X.periodic().end()) return E;
    ModuleMap F = ModuleMap::identity(E);
    for (const auto& f : p->second.maps) F = compose(f, F);
    // images of F^j decrease and settle within length(E) steps
    ModuleMap G = ModuleMap::identity(E);
    for (int j = 0; j < std::max(1, E.length()); ++j) G = compose(F, G);
    return image(G).module;
}

// ---------------------------------------------------------------------------
// Adjunction check

struct AdjunctionCheck {
    std::uint64_t lhs = 0;  // |Hom(X, e_*^v M)|
    std::uint64_t rhs = 0;  // |Hom(X(v), M)|
    bool bijective = false;
    bool round_trip = false;
    bool natural = false;
    Certificate certificate;
    bool ok() const { return bijective && round_trip && natural; }
};

/// Checks Hom(X, e_*^v M) -> Hom(X(v), M), eta |-> (trivial-path coordinate) o eta_v,
/// element by element, plus naturality in X on a seeded endomorphism probe.
inline AdjunctionCheck verify_adjunction(const Representation& X0, const std::string& v, const FinModule& M,
                                         std::uint64_t budget = kDefaultBudget, std::uint64_t seed = 0) {
    const BaseRing& R = X0.ring();
    Representation E = e_star_vertex(R, X0.quiver(), v, M);
    HomSpace H(X0, E);
    const Representation& X = H.source();
    HomModule L = hom_module(X.module(v), M);
    AdjunctionCheck out;
    out.lhs = H.cardinality();
    out.rhs = L.module().cardinality();
    if (out.lhs > budget || out.rhs > budget)
        throw BudgetExceeded("adjunction sides have " + std::to_string(out.lhs) + " and " + std::to_string(out.rhs) + " elements");

    std::size_t loops = paths(X.window(), v, v).size();
    ModuleMap trivial = direct_sum(R, std::vector<FinModule>(loops, M)).projections.at(0);
    auto forward = [&](const RepMorphism& eta) { return compose(trivial, eta.component(v)); };

    std::vector<RepMorphism> all;
    std::set<Vec> images;
    for_each_element(H.module(), [&](const Vec& k) {
        all.push_back(H.decode(k));
        images.insert(L.from_map(forward(all.back())));
    }, budget);
    out.bijective = out.lhs == out.rhs && images.size() == out.lhs;

    out.round_trip = true;
    for_each_element(L.module(), [&](const Vec& h) {
        ModuleMap u = L.to_map(h);
        RepMorphism eta = adjoint_transpose(X, v, u);
        if (!is_natural(eta) || forward(eta) != u) out.round_trip = false;
    }, budget);

    // naturality in X: forward(eta o alpha) == forward(eta) o alpha_v
    HomSpace End(X, X);
    std::mt19937_64 rng(seed);
    Vec k(End.module().rank());
    for (auto& c : k) c = static_cast<Elem>(rng() % static_cast<std::uint64_t>(R.size()));
    RepMorphism alpha = End.decode(normalize(End.module(), k));
    out.natural = true;
    for (const auto& eta : all)
        if (forward(compose(eta, alpha)) != compose(forward(eta), alpha.component(v))) out.natural = false;

    out.certificate.kind = CertificateKind::Bijection;
    out.certificate.note("|Hom(X, e_*(" + v + ", M))| = " + std::to_string(out.lhs));
    out.certificate.note("|Hom(X(" + v + "), M)| = " + std::to_string(out.rhs));
    out.certificate.add("naturality probe at " + v, alpha.component(v).matrix());
    return out;
}

// ---------------------------------------------------------------------------
// Embedding into an injective

struct InjectiveEmbedding {
    Representation injective;
    RepMorphism embedding;
    std::vector<std::pair<std::string, FinModule>> summands;  // (target, seed)
};

/// X -> (+)_v e_*^v(hull X(v)) (+) (+)_rays e_*^w(hull of the ray end), a monomorphism.
inline InjectiveEmbedding injective_embedding(const Representation& X) {
    detail::require_constant_tails(X);
    std::vector<Representation> parts;
    std::vector<RepMorphism> legs;
    InjectiveEmbedding out;
    for (const auto& v : X.vertices()) {
        if (X.module(v).is_zero()) continue;
        Hull h = injective_hull(X.module(v));
        legs.push_back(adjoint_transpose(X, v, h.embedding));
        parts.push_back(legs.back().cod);
        out.summands.push_back({v, h.module});
    }
    for (const RayInfo& r : rays(X.quiver())) {
        if (r.incoming) continue;
        Representation Xr = X.extended(RayDepths{{r.id, 1}});
        const FinModule& end = Xr.module(Xr.end_vertex(r.id));
        if (end.is_zero()) continue;
        Hull h = injective_hull(end);
        legs.push_back(adjoint_transpose_ray(X, r.id, h.embedding));
        parts.push_back(legs.back().cod);
        out.summands.push_back({"inf:" + r.id, h.module});
    }
    if (parts.empty()) {
        out.injective = Representation::zero(X.ring(), X.quiver());
        out.embedding = zero_morphism(X, out.injective);
        return out;
    }
    RepDirectSum D = direct_sum(parts);
    RepMorphism total = compose(D.injections[0], legs[0]);
    for (std::size_t i = 1; i < legs.size(); ++i) {
        RepMorphism t = compose(D.injections[i], legs[i]);
        auto [a, b] = std::pair{extended(total, t.dom.depths()), extended(t, total.dom.depths())};
        total = add(a, b);
    }
    out.injective = D.sum;
    out.embedding = total;
    if (!is_mono(out.embedding)) throw Error(ErrorKind::Internal, "injective embedding is not a monomorphism");
    return out;
}

}  // namespace quivinj
