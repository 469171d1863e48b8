#pragma once

// Representations of quivers by finite modules.
//
// Over a descriptor quiver a representation is stored as a finite window
// (core plus the first few positions of every ray) together with a rule for
// the rest of each ray.  The normal form rule is constant continuation:
// every position past the window end carries the end module, and the arrows
// there act as identities.  A zero tail is the special case of a zero end
// module.  Morphisms between constant-tail representations with the same
// window are determined by their window components (naturality forces the
// component past the end to repeat the end component), so every Hom,
// kernel, cokernel and extension question is answered exactly on the window.
// Periodic tails are carried for the colimit and torsion computations only.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "module.hpp"
#include "quiver.hpp"

namespace quivinj {

enum class TailKind { EventuallyZero, EventuallyIso, EventuallyPeriodic };

inline const char* to_string(TailKind k) {
    switch (k) {
    case TailKind::EventuallyZero: return "eventually_zero";
    case TailKind::EventuallyIso: return "eventually_iso";
    case TailKind::EventuallyPeriodic: return "eventually_periodic";
    }
    return "?";
}

/// User-facing tail rule.  Positions 0..prefix_length-1 of a ray (position 0
/// being the attachment vertex) are given explicitly.
///  - EventuallyZero: positions >= prefix_length are 0.
///  - EventuallyIso(E): positions >= prefix_length carry E with identity arrows.
///  - EventuallyPeriodic(f_0..f_{p-1}): positions >= prefix_length-1 carry the
///    last explicit module M and the arrows past it cycle through the f_i.
struct TailSpec {
    int prefix_length = 1;
    TailKind kind = TailKind::EventuallyZero;
    std::optional<FinModule> module;
    std::vector<ModuleMap> period;
};

/// Arrows past position `start` of a ray cycle through `maps` (endomorphisms).
struct PeriodicTail {
    int start = 0;
    std::vector<ModuleMap> maps;
};

class Representation {
public:
    Representation() = default;

    /// Builds from a fully specified window; validates shapes.
    Representation(BaseRing ring, Quiver base, RayDepths depths, std::map<std::string, FinModule> modules,
                   std::map<std::string, ModuleMap> maps, std::map<std::string, PeriodicTail> periodic = {})
        : ring_(std::move(ring)), base_(std::move(base)), depths_(std::move(depths)), modules_(std::move(modules)),
          maps_(std::move(maps)), periodic_(std::move(periodic)) {
        detail::require_ray_family(base_);
        for (const RayInfo& r : rays(base_)) depths_.emplace(r.id, 0);
        window_ = materialize(base_, depths_);
        validate();
    }

    /// Representation of a finite quiver.
    static Representation finite(const BaseRing& ring, const Quiver& Q, std::map<std::string, FinModule> modules,
                                 std::map<std::string, ModuleMap> maps) {
        if (Q.descriptor()) throw Error(ErrorKind::TailUnderspecified, "descriptor quiver needs a tail rule");
        return Representation(ring, Q, {}, std::move(modules), std::move(maps));
    }

    static Representation zero(const BaseRing& ring, const Quiver& Q) {
        std::map<std::string, FinModule> mods;
        std::map<std::string, ModuleMap> maps;
        Quiver W = materialize(Q, 0);
        for (const auto& v : W.vertices()) mods[v] = FinModule::zero(ring);
        for (const auto& a : W.arrows()) maps[a.id] = ModuleMap::zero(FinModule::zero(ring), FinModule::zero(ring));
        return Representation(ring, Q, uniform_depths(Q, 0), mods, maps);
    }

    const BaseRing& ring() const { return ring_; }
    const Quiver& quiver() const { return base_; }
    const Quiver& window() const { return window_; }
    const RayDepths& depths() const { return depths_; }
    int depth(const std::string& ray) const { return depths_.at(ray); }
    const std::map<std::string, PeriodicTail>& periodic() const { return periodic_; }
    bool has_periodic_tail() const { return !periodic_.empty(); }
    const std::vector<std::string>& vertices() const { return window_.vertices(); }

    std::string end_vertex(const std::string& ray) const { return ray_vertex(base_, ray, depths_.at(ray)); }

    const FinModule& module(const std::string& v) const {
        auto it = modules_.find(v);
        if (it != modules_.end()) return it->second;
        auto loc = locate_on_ray(base_, v);
        if (!loc) throw Error(ErrorKind::UnknownVertex, v);
        return modules_.at(end_vertex(loc->first));
    }

    ModuleMap map(const std::string& arrow_id) const {
        auto it = maps_.find(arrow_id);
        if (it != maps_.end()) return it->second;
        auto loc = locate_ray_arrow(base_, arrow_id);
        if (!loc) throw Error(ErrorKind::InvalidArgument, "unknown arrow " + arrow_id);
        auto [ray, pos] = *loc;
        const FinModule& E = modules_.at(end_vertex(ray));
        auto p = periodic_.find(ray);
        if (p == periodic_.end()) return ModuleMap::identity(E);
        const auto& maps = p->second.maps;
        return maps[static_cast<std::size_t>(pos - p->second.start - 1) % maps.size()];
    }

    /// Same representation on a deeper window.
    Representation extended(const RayDepths& target) const {
        RayDepths nd = depths_;
        bool grow = false;
        for (auto& [ray, d] : nd) {
            auto it = target.find(ray);
            if (it != target.end() && it->second > d) { d = it->second; grow = true; }
        }
        if (!grow) return *this;
        std::map<std::string, FinModule> mods = modules_;
        std::map<std::string, ModuleMap> maps = maps_;
        for (const RayInfo& r : rays(base_))
            for (int i = depths_.at(r.id) + 1; i <= nd.at(r.id); ++i) {
                mods[ray_vertex(base_, r.id, i)] = module(ray_vertex(base_, r.id, i));
                std::string aid = ray_arrow(base_, r.id, i);
                maps[aid] = map(aid);
            }
        return Representation(ring_, base_, nd, mods, maps, periodic_);
    }
    Representation extended(int depth) const { return extended(uniform_depths(base_, depth)); }

    /// Total number of elements on the window.
    std::uint64_t window_cardinality() const {
        std::uint64_t n = 1;
        for (const auto& [v, M] : modules_) n = detail::sat_mul(n, M.cardinality());
        return n;
    }

    bool is_zero() const {
        return std::all_of(modules_.begin(), modules_.end(), [](const auto& kv) { return kv.second.is_zero(); });
    }

    friend bool operator==(const Representation& a, const Representation& b) {
        return a.ring_ == b.ring_ && a.base_ == b.base_ && a.depths_ == b.depths_ && a.modules_ == b.modules_ &&
               a.maps_ == b.maps_ && a.periodic_.size() == b.periodic_.size();
    }

    const std::map<std::string, FinModule>& modules() const { return modules_; }
    const std::map<std::string, ModuleMap>& maps() const { return maps_; }

private:
    void validate() const {
        for (const auto& v : window_.vertices()) {
            auto it = modules_.find(v);
            if (it == modules_.end()) throw Error(ErrorKind::ShapeMismatch, "no module at vertex " + v);
            if (it->second.ring() != ring_) throw Error(ErrorKind::ShapeMismatch, "module at " + v + " over another ring");
        }
        if (modules_.size() != window_.vertices().size()) throw Error(ErrorKind::ShapeMismatch, "module at unknown vertex");
        for (const auto& a : window_.arrows()) {
            auto it = maps_.find(a.id);
            if (it == maps_.end()) throw Error(ErrorKind::ShapeMismatch, "no map on arrow " + a.id);
            if (it->second.domain() != modules_.at(a.src) || it->second.codomain() != modules_.at(a.tgt))
                throw Error(ErrorKind::ShapeMismatch, "map on arrow " + a.id + " has the wrong domain or codomain");
        }
        if (maps_.size() != window_.arrows().size()) throw Error(ErrorKind::ShapeMismatch, "map on unknown arrow");
        for (const auto& [ray, p] : periodic_) {
            const FinModule& E = modules_.at(end_vertex(ray));
            if (p.maps.empty()) throw Error(ErrorKind::TailUnderspecified, "empty period on ray " + ray);
            for (const auto& f : p.maps)
                if (f.domain() != E || f.codomain() != E)
                    throw Error(ErrorKind::ShapeMismatch, "periodic maps must be endomorphisms of the end module");
        }
    }

    BaseRing ring_;
    Quiver base_;
    RayDepths depths_;
    Quiver window_;
    std::map<std::string, FinModule> modules_;
    std::map<std::string, ModuleMap> maps_;
    std::map<std::string, PeriodicTail> periodic_;
};

/// Validated representation from explicit assignments and per-ray tail rules
/// (key "*" applies to every ray without its own entry).
inline Representation make_representation(const BaseRing& ring, const Quiver& Q, std::map<std::string, FinModule> modules,
                                          std::map<std::string, ModuleMap> maps,
                                          const std::map<std::string, TailSpec>& tails = {}) {
    if (Q.is_finite()) return Representation::finite(ring, Q, std::move(modules), std::move(maps));
    detail::require_ray_family(Q);
    RayDepths depths;
    std::map<std::string, PeriodicTail> periodic;
    for (const RayInfo& r : rays(Q)) {
        auto it = tails.find(r.id);
        if (it == tails.end()) it = tails.find("*");
        if (it == tails.end()) throw Error(ErrorKind::TailUnderspecified, "no tail rule for ray " + r.id);
        const TailSpec& t = it->second;
        int n0 = t.prefix_length;
        if (n0 < 1) throw Error(ErrorKind::TailUnderspecified, "prefix length must be at least 1");
        for (int i = 0; i < n0; ++i)
            if (!modules.count(ray_vertex(Q, r.id, i)))
                throw Error(ErrorKind::ShapeMismatch, "no module at vertex " + ray_vertex(Q, r.id, i));
        const FinModule& last = modules.at(ray_vertex(Q, r.id, n0 - 1));
        std::string edge = ray_arrow(Q, r.id, n0);
        auto edge_map = [&](const FinModule& E) {
            if (maps.count(edge)) return;
            if (E.is_zero() || last.is_zero()) {
                maps[edge] = r.incoming ? ModuleMap::zero(E, last) : ModuleMap::zero(last, E);
            } else if (E == last) {
                maps[edge] = ModuleMap::identity(E);
            } else {
                throw Error(ErrorKind::TailUnderspecified, "no map on arrow " + edge + " into the tail");
            }
        };
        switch (t.kind) {
        case TailKind::EventuallyZero: {
            FinModule Z = FinModule::zero(ring);
            modules[ray_vertex(Q, r.id, n0)] = Z;
            edge_map(Z);
            depths[r.id] = n0;
            break;
        }
        case TailKind::EventuallyIso: {
            if (!t.module) throw Error(ErrorKind::TailUnderspecified, "eventually-iso tail without a module");
            modules[ray_vertex(Q, r.id, n0)] = *t.module;
            edge_map(*t.module);
            depths[r.id] = n0;
            break;
        }
        case TailKind::EventuallyPeriodic: {
            if (t.period.empty()) throw Error(ErrorKind::TailUnderspecified, "periodic tail without maps");
            depths[r.id] = n0 - 1;
            periodic[r.id] = PeriodicTail{n0 - 1, t.period};
            break;
        }
        }
    }
    return Representation(ring, Q, depths, std::move(modules), std::move(maps), std::move(periodic));
}

// ---------------------------------------------------------------------------
// Morphisms

struct RepMorphism {
    Representation dom;
    Representation cod;
    std::map<std::string, ModuleMap> comp;  // one per window vertex

    const ModuleMap& component(const std::string& v) const {
        auto it = comp.find(v);
        if (it != comp.end()) return it->second;
        auto loc = locate_on_ray(dom.quiver(), v);
        if (!loc) throw Error(ErrorKind::UnknownVertex, v);
        return comp.at(dom.end_vertex(loc->first));
    }

    friend bool operator==(const RepMorphism& a, const RepMorphism& b) {
        return a.dom == b.dom && a.cod == b.cod && a.comp == b.comp;
    }
};

namespace detail {

inline void require_constant_tails(const Representation& X) {
    if (X.has_periodic_tail()) throw Error(ErrorKind::Unsupported, "operation not available on periodic tails");
}

}  // namespace detail

/// Extends both representations to a common window.
inline std::pair<Representation, Representation> align(const Representation& X, const Representation& Y) {
    if (!(X.quiver() == Y.quiver())) throw Error(ErrorKind::ShapeMismatch, "representations over different quivers");
    if (X.ring() != Y.ring()) throw Error(ErrorKind::ShapeMismatch, "representations over different rings");
    RayDepths d = X.depths();
    for (const auto& [r, k] : Y.depths()) d[r] = std::max(d[r], k);
    return {X.extended(d), Y.extended(d)};
}

inline RepMorphism extended(const RepMorphism& f, const RayDepths& depths) {
    RepMorphism g{f.dom.extended(depths), f.cod.extended(depths), {}};
    for (const auto& v : g.dom.vertices()) g.comp[v] = f.component(v);
    return g;
}

inline bool is_natural(const RepMorphism& f) {
    for (const auto& a : f.dom.window().arrows())
        if (compose(f.cod.map(a.id), f.component(a.src)) != compose(f.component(a.tgt), f.dom.map(a.id))) return false;
    return true;
}

inline RepMorphism make_morphism(const Representation& X, const Representation& Y, std::map<std::string, ModuleMap> comp) {
    if (!(X.quiver() == Y.quiver()) || X.depths() != Y.depths())
        throw Error(ErrorKind::ShapeMismatch, "morphism needs representations on a common window");
    for (const auto& v : X.vertices()) {
        auto it = comp.find(v);
        if (it == comp.end()) throw Error(ErrorKind::ShapeMismatch, "no component at " + v);
        if (it->second.domain() != X.module(v) || it->second.codomain() != Y.module(v))
            throw Error(ErrorKind::ShapeMismatch, "component at " + v + " has the wrong shape");
    }
    RepMorphism f{X, Y, std::move(comp)};
    if (!is_natural(f)) throw Error(ErrorKind::ShapeMismatch, "components are not natural");
    return f;
}

inline RepMorphism identity_morphism(const Representation& X) {
    std::map<std::string, ModuleMap> c;
    for (const auto& v : X.vertices()) c[v] = ModuleMap::identity(X.module(v));
    return {X, X, c};
}

inline RepMorphism zero_morphism(const Representation& X0, const Representation& Y0) {
    auto [X, Y] = align(X0, Y0);
    std::map<std::string, ModuleMap> c;
    for (const auto& v : X.vertices()) c[v] = ModuleMap::zero(X.module(v), Y.module(v));
    return {X, Y, c};
}

/// g o f, aligning windows as needed.
inline RepMorphism compose(const RepMorphism& g0, const RepMorphism& f0) {
    RayDepths d = f0.dom.depths();
    for (const auto& [r, k] : g0.dom.depths()) d[r] = std::max(d[r], k);
    RepMorphism f = extended(f0, d), g = extended(g0, d);
    if (!(f.cod == g.dom)) throw Error(ErrorKind::ShapeMismatch, "compose: codomain/domain differ");
    std::map<std::string, ModuleMap> c;
    for (const auto& v : f.dom.vertices()) c[v] = compose(g.component(v), f.component(v));
    return {f.dom, g.cod, c};
}

inline RepMorphism add(const RepMorphism& f, const RepMorphism& g) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw Error(ErrorKind::ShapeMismatch, "add morphisms");
    std::map<std::string, ModuleMap> c;
    for (const auto& v : f.dom.vertices()) c[v] = add(f.component(v), g.component(v));
    return {f.dom, f.cod, c};
}

inline RepMorphism subtract(const RepMorphism& f, const RepMorphism& g) {
    std::map<std::string, ModuleMap> c;
    for (const auto& v : f.dom.vertices()) c[v] = subtract(f.component(v), g.component(v));
    return {f.dom, f.cod, c};
}

inline bool is_zero(const RepMorphism& f) {
    return std::all_of(f.comp.begin(), f.comp.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

inline bool is_mono(const RepMorphism& f) {
    return std::all_of(f.comp.begin(), f.comp.end(), [](const auto& kv) { return is_mono(kv.second); });
}
inline bool is_epi(const RepMorphism& f) {
    return std::all_of(f.comp.begin(), f.comp.end(), [](const auto& kv) { return is_epi(kv.second); });
}
inline bool is_iso(const RepMorphism& f) { return is_mono(f) && is_epi(f); }

// ---------------------------------------------------------------------------
// Source and sink maps

namespace detail {

/// X on a window holding every arrow incident to v (attachment vertices included).
inline Representation covering_window(const Representation& X, const std::string& v) {
    if (!X.quiver().descriptor()) return X;
    RayDepths d = uniform_depths(X.quiver(), 1);
    if (auto loc = locate_on_ray(X.quiver(), v)) d[loc->first] = loc->second + 1;
    return X.extended(d);
}

}  // namespace detail

struct SourceMap {
    ModuleMap map;                // X(v) -> prod_{s(a)=v} X(t(a))
    DirectSum product;            // the codomain with its projections
    std::vector<Arrow> arrows;    // factor order (by arrow id)
};

inline SourceMap source_map_full(const Representation& X0, const std::string& v) {
    Representation X = detail::covering_window(X0, v);
    std::vector<Arrow> outs = X.window().out_arrows(v);
    std::vector<FinModule> parts;
    for (const auto& a : outs) parts.push_back(X.module(a.tgt));
    DirectSum P = direct_sum(X.ring(), parts);
    const FinModule& M = X.module(v);
    std::vector<Vec> images;
    for (std::size_t j = 0; j < M.rank(); ++j) {
        Vec img(P.sum.rank(), 0);
        for (std::size_t s = 0; s < outs.size(); ++s) {
            Vec y = X.map(outs[s].id).apply(basis_vector(M, j));
            for (std::size_t i = 0; i < y.size(); ++i) img[P.position[s][i]] = y[i];
        }
        images.push_back(img);
    }
    return {map_from_images(M, P.sum, images), P, outs};
}

inline ModuleMap source_map(const Representation& X, const std::string& v) { return source_map_full(X, v).map; }

struct SinkMap {
    ModuleMap map;     // (+)_{t(a)=v} X(s(a)) -> X(v)
    DirectSum sum;
    std::vector<Arrow> arrows;
};

inline SinkMap sink_map_full(const Representation& X0, const std::string& v) {
    Representation X = detail::covering_window(X0, v);
    std::vector<Arrow> ins = X.window().in_arrows(v);
    std::vector<FinModule> parts;
    for (const auto& a : ins) parts.push_back(X.module(a.src));
    DirectSum S = direct_sum(X.ring(), parts);
    const FinModule& M = X.module(v);
    std::vector<Vec> images(S.sum.rank());
    for (std::size_t s = 0; s < ins.size(); ++s) {
        ModuleMap f = X.map(ins[s].id);
        for (std::size_t j = 0; j < parts[s].rank(); ++j) images[S.position[s][j]] = f.matrix().column(j);
    }
    return {map_from_images(S.sum, M, images), S, ins};
}

inline ModuleMap sink_map(const Representation& X, const std::string& v) { return sink_map_full(X, v).map; }

// ---------------------------------------------------------------------------
// Kernels, cokernels, images, direct sums

struct SubRepresentation {
    Representation sub;
    RepMorphism inclusion;
};

struct QuotientRepresentation {
    Representation quotient;
    RepMorphism projection;
};

namespace detail {

/// Arrow maps of a subrepresentation: X(a) restricted to S_s, factored through S_t.
inline std::map<std::string, ModuleMap> restricted_maps(const Representation& X, const std::map<std::string, Subobject>& S) {
    std::map<std::string, ModuleMap> maps;
    for (const auto& a : X.window().arrows()) {
        const Subobject& s = S.at(a.src);
        const Subobject& t = S.at(a.tgt);
        ModuleMap through = compose(X.map(a.id), s.inclusion);
        std::vector<Vec> images;
        for (std::size_t j = 0; j < s.module.rank(); ++j) {
            auto y = linear_solve(t.inclusion, through.matrix().column(j));
            if (!y) throw Error(ErrorKind::Internal, "subobject not closed under arrow " + a.id);
            images.push_back(*y);
        }
        maps[a.id] = map_from_images(s.module, t.module, images);
    }
    return maps;
}

inline SubRepresentation build_sub(const Representation& X, const std::map<std::string, Subobject>& S) {
    std::map<std::string, FinModule> mods;
    std::map<std::string, ModuleMap> incl;
    for (const auto& [v, s] : S) {
        mods[v] = s.module;
        incl[v] = s.inclusion;
    }
    Representation sub(X.ring(), X.quiver(), X.depths(), mods, restricted_maps(X, S));
    return {sub, RepMorphism{sub, X, incl}};
}

inline QuotientRepresentation build_quotient(const Representation& Y, const std::map<std::string, Quotient>& Qt) {
    std::map<std::string, FinModule> mods;
    std::map<std::string, ModuleMap> proj, maps;
    for (const auto& [v, q] : Qt) {
        mods[v] = q.module;
        proj[v] = q.projection;
    }
    for (const auto& a : Y.window().arrows()) {
        const Quotient& s = Qt.at(a.src);
        const Quotient& t = Qt.at(a.tgt);
        ModuleMap through = compose(t.projection, Y.map(a.id));
        std::vector<Vec> images;
        for (std::size_t j = 0; j < s.module.rank(); ++j) {
            auto y = linear_solve(s.projection, basis_vector(s.module, j));
            images.push_back(through.apply(*y));
        }
        maps[a.id] = map_from_images(s.module, t.module, images);
    }
    Representation q(Y.ring(), Y.quiver(), Y.depths(), mods, maps);
    return {q, RepMorphism{Y, q, proj}};
}

}  // namespace detail

inline SubRepresentation kernel(const RepMorphism& f) {
    detail::require_constant_tails(f.dom);
    std::map<std::string, Subobject> S;
    for (const auto& v : f.dom.vertices()) S.emplace(v, kernel(f.component(v)));
    return detail::build_sub(f.dom, S);
}

inline SubRepresentation image(const RepMorphism& f) {
    detail::require_constant_tails(f.cod);
    std::map<std::string, Subobject> S;
    for (const auto& v : f.cod.vertices()) S.emplace(v, image(f.component(v)));
    return detail::build_sub(f.cod, S);
}

inline QuotientRepresentation cokernel(const RepMorphism& f) {
    detail::require_constant_tails(f.cod);
    std::map<std::string, Quotient> Qt;
    for (const auto& v : f.cod.vertices()) Qt.emplace(v, cokernel(f.component(v)));
    return detail::build_quotient(f.cod, Qt);
}

inline QuotientRepresentation quotient(const SubRepresentation& S) { return cokernel(S.inclusion); }

/// Smallest subrepresentation containing the given elements (vertex, element).
inline SubRepresentation generated_subrep(const Representation& X, const std::vector<std::pair<std::string, Vec>>& gens) {
    detail::require_constant_tails(X);
    std::map<std::string, std::vector<Vec>> g;
    for (const auto& v : X.vertices()) g[v];
    for (const auto& [v, x] : gens) {
        if (!X.window().has_vertex(v)) throw Error(ErrorKind::UnknownVertex, v + " outside the window");
        g[v].push_back(normalize(X.module(v), x));
    }
    std::map<std::string, Subobject> S;
    for (const auto& v : X.vertices()) S.emplace(v, span(X.module(v), g[v]));
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : X.window().arrows()) {
            const Subobject& s = S.at(a.src);
            std::vector<Vec> add = g[a.tgt];
            for (std::size_t j = 0; j < s.module.rank(); ++j) add.push_back(X.map(a.id).apply(s.inclusion.matrix().column(j)));
            Subobject t = span(X.module(a.tgt), add);
            if (t.module != S.at(a.tgt).module) {
                g[a.tgt] = add;
                S.at(a.tgt) = t;
                changed = true;
            }
        }
    }
    return detail::build_sub(X, S);
}

struct RepDirectSum {
    Representation sum;
    std::vector<RepMorphism> injections;
    std::vector<RepMorphism> projections;
};

inline RepDirectSum direct_sum(const std::vector<Representation>& parts0) {
    if (parts0.empty()) throw Error(ErrorKind::InvalidArgument, "direct sum of nothing");
    RayDepths d = parts0.front().depths();
    for (const auto& X : parts0) {
        detail::require_constant_tails(X);
        if (!(X.quiver() == parts0.front().quiver())) throw Error(ErrorKind::ShapeMismatch, "direct sum over different quivers");
        for (const auto& [r, k] : X.depths()) d[r] = std::max(d[r], k);
    }
    std::vector<Representation> parts;
    for (const auto& X : parts0) parts.push_back(X.extended(d));
    const Representation& X0 = parts.front();
    const BaseRing& R = X0.ring();
    std::map<std::string, DirectSum> at;
    std::map<std::string, FinModule> mods;
    for (const auto& v : X0.vertices()) {
        std::vector<FinModule> ms;
        for (const auto& X : parts) ms.push_back(X.module(v));
        at.emplace(v, direct_sum(R, ms));
        mods[v] = at.at(v).sum;
    }
    std::map<std::string, ModuleMap> maps;
    for (const auto& a : X0.window().arrows()) {
        std::vector<std::vector<ModuleMap>> blocks(parts.size(), std::vector<ModuleMap>(parts.size()));
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = 0; j < parts.size(); ++j)
                blocks[i][j] = i == j ? parts[i].map(a.id) : ModuleMap::zero(parts[j].module(a.src), parts[i].module(a.tgt));
        maps[a.id] = block_map(at.at(a.src), at.at(a.tgt), blocks);
    }
    RepDirectSum out{Representation(R, X0.quiver(), d, mods, maps), {}, {}};
    for (std::size_t s = 0; s < parts.size(); ++s) {
        std::map<std::string, ModuleMap> inj, proj;
        for (const auto& v : X0.vertices()) {
            inj[v] = at.at(v).injections[s];
            proj[v] = at.at(v).projections[s];
        }
        out.injections.push_back({parts[s], out.sum, inj});
        out.projections.push_back({out.sum, parts[s], proj});
    }
    return out;
}

inline Representation direct_sum(const Representation& X, const Representation& Y) { return direct_sum({X, Y}).sum; }

// ---------------------------------------------------------------------------
// Hom spaces

/// Hom(X, Y) as the kernel of
///   (+)_v Hom(X_v, Y_v) -> (+)_a Hom(X_{s(a)}, Y_{t(a)}),  phi |-> Y(a) phi_s - phi_t X(a).
class HomSpace {
public:
    HomSpace(const Representation& X0, const Representation& Y0) {
        std::tie(X_, Y_) = align(X0, Y0);
        detail::require_constant_tails(X_);
        detail::require_constant_tails(Y_);
        const BaseRing& R = X_.ring();
        std::vector<FinModule> vparts, aparts;
        for (const auto& v : X_.vertices()) {
            local_.emplace_back(X_.module(v), Y_.module(v));
            vparts.push_back(local_.back().module());
        }
        std::vector<HomModule> arrow_homs;
        for (const auto& a : X_.window().arrows()) {
            arrow_homs.emplace_back(X_.module(a.src), Y_.module(a.tgt));
            aparts.push_back(arrow_homs.back().module());
        }
        total_ = direct_sum(R, vparts);
        DirectSum target = direct_sum(R, aparts);
        std::map<std::string, std::size_t> vi;
        for (std::size_t i = 0; i < X_.vertices().size(); ++i) vi[X_.vertices()[i]] = i;
        std::vector<Vec> images;
        for (std::size_t g = 0; g < total_.sum.rank(); ++g) {
            Vec e = basis_vector(total_.sum, g);
            Vec img(target.sum.rank(), 0);
            for (std::size_t ai = 0; ai < X_.window().arrows().size(); ++ai) {
                const Arrow& a = X_.window().arrows()[ai];
                ModuleMap ps = local_[vi[a.src]].to_map(total_.projections[vi[a.src]].apply(e));
                ModuleMap pt = local_[vi[a.tgt]].to_map(total_.projections[vi[a.tgt]].apply(e));
                ModuleMap d = subtract(compose(Y_.map(a.id), ps), compose(pt, X_.map(a.id)));
                Vec h = arrow_homs[ai].from_map(d);
                for (std::size_t i = 0; i < h.size(); ++i) img[target.position[ai][i]] = h[i];
            }
            images.push_back(img);
        }
        natural_ = kernel(map_from_images(total_.sum, target.sum, images));
    }

    const Representation& source() const { return X_; }
    const Representation& target() const { return Y_; }
    const FinModule& module() const { return natural_.module; }
    std::uint64_t cardinality() const { return natural_.module.cardinality(); }

    RepMorphism decode(const Vec& k) const {
        Vec t = natural_.inclusion.apply(k);
        std::map<std::string, ModuleMap> c;
        for (std::size_t i = 0; i < X_.vertices().size(); ++i)
            c[X_.vertices()[i]] = local_[i].to_map(total_.projections[i].apply(t));
        return {X_, Y_, c};
    }

    /// Coordinates of a natural transformation inside the Hom module.
    Vec encode(const RepMorphism& f0) const {
        RepMorphism f = extended(f0, X_.depths());
        Vec t(total_.sum.rank(), 0);
        for (std::size_t i = 0; i < X_.vertices().size(); ++i) {
            Vec h = local_[i].from_map(f.component(X_.vertices()[i]));
            for (std::size_t j = 0; j < h.size(); ++j) t[total_.position[i][j]] = h[j];
        }
        auto k = linear_solve(natural_.inclusion, t);
        if (!k) throw Error(ErrorKind::InvalidArgument, "morphism is not natural");
        return *k;
    }

private:
    Representation X_, Y_;
    std::vector<HomModule> local_;
    DirectSum total_;
    Subobject natural_;
};

/// Every morphism X -> Y, in a deterministic order.
inline std::vector<RepMorphism> hom_reps(const Representation& X, const Representation& Y, std::uint64_t budget = kDefaultBudget) {
    HomSpace H(X, Y);
    if (H.cardinality() > budget)
        throw BudgetExceeded("Hom has " + std::to_string(H.cardinality()) + " elements, budget " + std::to_string(budget));
    std::vector<RepMorphism> out;
    for_each_element(H.module(), [&](const Vec& k) { out.push_back(H.decode(k)); }, budget);
    return out;
}

/// |Hom(X, Y)| without enumerating.
inline std::uint64_t hom_cardinality(const Representation& X, const Representation& Y) { return HomSpace(X, Y).cardinality(); }

}  // namespace quivinj
