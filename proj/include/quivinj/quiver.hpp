#pragma once

// Quivers: finite ones, and three closed-form infinite families described
// by a finite core plus rays.  A ray attached at v is the chain
// v -> r#1 -> r#2 -> ... (or the reverse chain for the opposite quiver).
// Infinite quivers are only ever handled through finite windows of the rays.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ring.hpp"

namespace quivinj {

struct Arrow {
    std::string id;
    std::string src;
    std::string tgt;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

enum class DescriptorKind { AInfPlus, AInfBoth, BarrenForest, BranchingTree };

inline const char* to_string(DescriptorKind k) {
    switch (k) {
    case DescriptorKind::AInfPlus: return "a_inf_plus";
    case DescriptorKind::AInfBoth: return "a_inf_both";
    case DescriptorKind::BarrenForest: return "barren_forest";
    case DescriptorKind::BranchingTree: return "branching_tree";
    }
    return "?";
}

struct RayAttachment {
    std::string attach;
    std::string id;
    friend bool operator==(const RayAttachment&, const RayAttachment&) = default;
};

struct Descriptor {
    DescriptorKind kind = DescriptorKind::AInfPlus;
    std::vector<RayAttachment> rays;  // barren_forest only
    int branching = 2;                // branching_tree only
    bool opposite = false;            // arrows reversed
    friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

class Quiver {
public:
    Quiver() = default;

    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows, std::optional<Descriptor> descriptor = std::nullopt)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)), descriptor_(std::move(descriptor)) {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (!vindex_.emplace(vertices_[i], i).second)
                throw Error(ErrorKind::InvalidArgument, "duplicate vertex " + vertices_[i]);
        out_.resize(vertices_.size());
        in_.resize(vertices_.size());
        for (std::size_t a = 0; a < arrows_.size(); ++a) {
            const Arrow& ar = arrows_[a];
            if (!aindex_.emplace(ar.id, a).second) throw Error(ErrorKind::InvalidArgument, "duplicate arrow " + ar.id);
            auto s = vindex_.find(ar.src), t = vindex_.find(ar.tgt);
            if (s == vindex_.end() || t == vindex_.end())
                throw Error(ErrorKind::UnknownVertex, "arrow " + ar.id + " has an unknown endpoint");
            out_[s->second].push_back(a);
            in_[t->second].push_back(a);
        }
        // deterministic order: by arrow id
        auto by_id = [&](std::size_t x, std::size_t y) { return arrows_[x].id < arrows_[y].id; };
        for (auto& l : out_) std::sort(l.begin(), l.end(), by_id);
        for (auto& l : in_) std::sort(l.begin(), l.end(), by_id);
        if (descriptor_) validate_descriptor();
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::optional<Descriptor>& descriptor() const { return descriptor_; }
    bool is_finite() const { return !descriptor_.has_value(); }

    bool has_vertex(const std::string& v) const { return vindex_.count(v) > 0; }
    bool has_arrow(const std::string& a) const { return aindex_.count(a) > 0; }
    std::size_t vertex_index(const std::string& v) const {
        auto it = vindex_.find(v);
        if (it == vindex_.end()) throw Error(ErrorKind::UnknownVertex, v);
        return it->second;
    }
    const Arrow& arrow(const std::string& id) const {
        auto it = aindex_.find(id);
        if (it == aindex_.end()) throw Error(ErrorKind::InvalidArgument, "unknown arrow " + id);
        return arrows_[it->second];
    }
    /// Arrows leaving v, sorted by id.
    std::vector<Arrow> out_arrows(const std::string& v) const {
        std::vector<Arrow> r;
        for (std::size_t a : out_[vertex_index(v)]) r.push_back(arrows_[a]);
        return r;
    }
    std::vector<Arrow> in_arrows(const std::string& v) const {
        std::vector<Arrow> r;
        for (std::size_t a : in_[vertex_index(v)]) r.push_back(arrows_[a]);
        return r;
    }

    friend bool operator==(const Quiver& a, const Quiver& b) {
        return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_ && a.descriptor_ == b.descriptor_;
    }

private:
    void validate_descriptor() const {
        const Descriptor& d = *descriptor_;
        if (d.kind == DescriptorKind::BarrenForest) {
            for (const auto& r : d.rays)
                if (!has_vertex(r.attach)) throw Error(ErrorKind::UnknownVertex, "ray " + r.id + " attaches to " + r.attach);
        } else if (!vertices_.empty() || !arrows_.empty()) {
            throw Error(ErrorKind::InvalidArgument, std::string(to_string(d.kind)) + " descriptor takes no explicit vertices");
        }
        if (d.kind == DescriptorKind::BranchingTree && d.branching < 1)
            throw Error(ErrorKind::InvalidArgument, "branching must be >= 1");
    }

    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::optional<Descriptor> descriptor_;
    std::unordered_map<std::string, std::size_t> vindex_, aindex_;
    std::vector<std::vector<std::size_t>> out_, in_;
};

// ---------------------------------------------------------------------------
// Standard quivers

namespace quivers {

/// 1 -> 2 -> ... -> n, arrows a1..a{n-1}.
inline Quiver linear(int n) {
    std::vector<std::string> v;
    std::vector<Arrow> a;
    for (int i = 1; i <= n; ++i) v.push_back(std::to_string(i));
    for (int i = 1; i < n; ++i) a.push_back({"a" + std::to_string(i), std::to_string(i), std::to_string(i + 1)});
    return Quiver(v, a);
}

inline Quiver single_loop() { return Quiver({"v"}, {{"a", "v", "v"}}); }

/// 1 -> 2, 1 -> 3.
inline Quiver two_branch() { return Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "1", "3"}}); }

/// 1 -> 3 <- 2.
inline Quiver cospan() { return Quiver({"1", "2", "3"}, {{"a", "1", "3"}, {"b", "2", "3"}}); }

/// Two parallel arrows 1 => 2.
inline Quiver kronecker() { return Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}}); }

inline Quiver a_inf_plus() { return Quiver({}, {}, Descriptor{DescriptorKind::AInfPlus, {}, 2, false}); }
inline Quiver a_inf_both() { return Quiver({}, {}, Descriptor{DescriptorKind::AInfBoth, {}, 2, false}); }

/// Root branching to 2, each branching to 2, then four infinite chains.
inline Quiver figure_tree() {
    return Quiver({"root", "a", "b", "c", "d", "e", "f"},
                  {{"ra", "root", "a"}, {"rb", "root", "b"}, {"ac", "a", "c"}, {"ad", "a", "d"}, {"be", "b", "e"},
                   {"bf", "b", "f"}},
                  Descriptor{DescriptorKind::BarrenForest, {{"c", "rc"}, {"d", "rd"}, {"e", "re"}, {"f", "rf"}}, 2, false});
}

inline Quiver complete_tree(int branching) {
    return Quiver({}, {}, Descriptor{DescriptorKind::BranchingTree, {}, branching, false});
}

}  // namespace quivers

// ---------------------------------------------------------------------------
// Rays and windows

struct RayInfo {
    std::string id;
    std::string attach;
    bool incoming = false;  // true when the chain flows toward the attachment vertex
};

namespace detail {

inline bool is_ray_family(const Quiver& Q) {
    return Q.descriptor() && Q.descriptor()->kind != DescriptorKind::BranchingTree;
}

inline void require_ray_family(const Quiver& Q) {
    if (Q.descriptor() && !is_ray_family(Q))
        throw Error(ErrorKind::Unsupported, "branching tree descriptors carry no representations");
}

}  // namespace detail

/// The finite part: explicit vertices, or the base vertex "0" for the A-infinity families.
inline Quiver core_quiver(const Quiver& Q) {
    if (!Q.descriptor()) return Q;
    detail::require_ray_family(Q);
    if (Q.descriptor()->kind != DescriptorKind::BarrenForest) return Quiver({"0"}, {});
    std::vector<Arrow> arrows = Q.arrows();
    if (Q.descriptor()->opposite)
        for (auto& a : arrows) std::swap(a.src, a.tgt);
    return Quiver(Q.vertices(), arrows);
}

inline std::vector<RayInfo> rays(const Quiver& Q) {
    if (!Q.descriptor()) return {};
    const Descriptor& d = *Q.descriptor();
    bool flip = d.opposite;
    switch (d.kind) {
    case DescriptorKind::AInfPlus: return {{"w", "0", flip}};
    case DescriptorKind::AInfBoth: return {{"w+", "0", flip}, {"w-", "0", !flip}};
    case DescriptorKind::BarrenForest: {
        std::vector<RayInfo> r;
        for (const auto& ray : d.rays) r.push_back({ray.id, ray.attach, flip});
        return r;
    }
    case DescriptorKind::BranchingTree: break;
    }
    throw Error(ErrorKind::Unsupported, "branching tree descriptors have no finite rays");
}

inline RayInfo ray_info(const Quiver& Q, const std::string& id) {
    for (const RayInfo& r : rays(Q))
        if (r.id == id) return r;
    throw Error(ErrorKind::InvalidArgument, "unknown ray " + id);
}

/// Name of the vertex at position i >= 1 along a ray (position 0 is the attachment).
inline std::string ray_vertex(const Quiver& Q, const std::string& ray, int i) {
    RayInfo r = ray_info(Q, ray);
    if (i <= 0) return r.attach;
    switch (Q.descriptor()->kind) {
    case DescriptorKind::AInfPlus: return std::to_string(i);
    case DescriptorKind::AInfBoth: return ray == "w+" ? std::to_string(i) : std::to_string(-i);
    default: return ray + "#" + std::to_string(i);
    }
}

/// Name of the arrow joining positions i-1 and i of a ray.
inline std::string ray_arrow(const Quiver& Q, const std::string& ray, int i) {
    switch (Q.descriptor()->kind) {
    case DescriptorKind::AInfPlus: return "a" + std::to_string(i - 1);
    case DescriptorKind::AInfBoth: return ray == "w+" ? "a" + std::to_string(i - 1) : "a" + std::to_string(-i);
    default: return ray + ">" + std::to_string(i);
    }
}

/// Arrow between positions i-1 and i, oriented according to the ray direction.
inline Arrow ray_arrow_full(const Quiver& Q, const std::string& ray, int i) {
    RayInfo r = ray_info(Q, ray);
    std::string near = ray_vertex(Q, ray, i - 1), far = ray_vertex(Q, ray, i);
    if (r.incoming) return {ray_arrow(Q, ray, i), far, near};
    return {ray_arrow(Q, ray, i), near, far};
}

using RayDepths = std::map<std::string, int>;

inline RayDepths uniform_depths(const Quiver& Q, int depth) {
    RayDepths d;
    for (const RayInfo& r : rays(Q)) d[r.id] = depth;
    return d;
}

/// Finite window: the core plus positions 1..depth of each ray.
inline Quiver materialize(const Quiver& Q, const RayDepths& depths) {
    if (!Q.descriptor()) return Q;
    Quiver core = core_quiver(Q);
    std::vector<std::string> v = core.vertices();
    std::vector<Arrow> a = core.arrows();
    for (const RayInfo& r : rays(Q)) {
        auto it = depths.find(r.id);
        int d = it == depths.end() ? 0 : it->second;
        for (int i = 1; i <= d; ++i) {
            v.push_back(ray_vertex(Q, r.id, i));
            a.push_back(ray_arrow_full(Q, r.id, i));
        }
    }
    return Quiver(v, a);
}

inline Quiver materialize(const Quiver& Q, int depth) { return materialize(Q, uniform_depths(Q, depth)); }

/// Which ray (and position) a vertex name lies on; nullopt for core vertices.
inline std::optional<std::pair<std::string, int>> locate_on_ray(const Quiver& Q, const std::string& v) {
    if (!detail::is_ray_family(Q)) return std::nullopt;
    if (core_quiver(Q).has_vertex(v)) return std::nullopt;
    const Descriptor& d = *Q.descriptor();
    if (d.kind == DescriptorKind::AInfPlus || d.kind == DescriptorKind::AInfBoth) {
        int i = 0;
        try {
            std::size_t used = 0;
            i = std::stoi(v, &used);
            if (used != v.size()) throw Error(ErrorKind::UnknownVertex, v);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::UnknownVertex, v);
        }
        if (i > 0) return std::make_pair(std::string(d.kind == DescriptorKind::AInfPlus ? "w" : "w+"), i);
        if (i < 0 && d.kind == DescriptorKind::AInfBoth) return std::make_pair(std::string("w-"), -i);
        throw Error(ErrorKind::UnknownVertex, v);
    }
    auto hash = v.rfind('#');
    if (hash != std::string::npos) {
        std::string ray = v.substr(0, hash);
        for (const RayInfo& r : rays(Q))
            if (r.id == ray) {
                try {
                    int i = std::stoi(v.substr(hash + 1));
                    if (i >= 1) return std::make_pair(ray, i);
                } catch (const std::logic_error&) {
                }
            }
    }
    throw Error(ErrorKind::UnknownVertex, v);
}

/// Ray and position of a ray arrow id (the arrow joining positions i-1 and i).
inline std::optional<std::pair<std::string, int>> locate_ray_arrow(const Quiver& Q, const std::string& id) {
    if (!detail::is_ray_family(Q) || core_quiver(Q).has_arrow(id)) return std::nullopt;
    const Descriptor& d = *Q.descriptor();
    try {
        if (d.kind == DescriptorKind::AInfPlus || d.kind == DescriptorKind::AInfBoth) {
            if (id.size() < 2 || id[0] != 'a') return std::nullopt;
            std::size_t used = 0;
            int i = std::stoi(id.substr(1), &used);
            if (used != id.size() - 1) return std::nullopt;
            if (i >= 0) return std::make_pair(std::string(d.kind == DescriptorKind::AInfPlus ? "w" : "w+"), i + 1);
            if (d.kind == DescriptorKind::AInfBoth) return std::make_pair(std::string("w-"), -i);
            return std::nullopt;
        }
        auto gt = id.rfind('>');
        if (gt == std::string::npos) return std::nullopt;
        std::string ray = id.substr(0, gt);
        int i = std::stoi(id.substr(gt + 1));
        for (const RayInfo& r : rays(Q))
            if (r.id == ray && i >= 1) return std::make_pair(ray, i);
    } catch (const std::logic_error&) {
    }
    return std::nullopt;
}

inline bool has_vertex(const Quiver& Q, const std::string& v) {
    if (!Q.descriptor()) return Q.has_vertex(v);
    try {
        return core_quiver(Q).has_vertex(v) || locate_on_ray(Q, v).has_value();
    } catch (const Error&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Paths

struct Path {
    std::string src;
    std::string tgt;
    std::vector<std::string> arrows;  // in traversal order
    std::size_t length() const { return arrows.size(); }
    bool is_trivial() const { return arrows.empty(); }
    friend bool operator==(const Path&, const Path&) = default;
};

namespace detail {

/// Vertices lying on a directed cycle.
inline std::set<std::string> cyclic_vertices(const Quiver& Q) {
    // Tarjan-free approach: v is cyclic iff v reaches itself by a nonempty path
    std::set<std::string> out;
    for (const auto& v : Q.vertices()) {
        std::set<std::string> seen;
        std::vector<std::string> stack;
        for (const auto& a : Q.out_arrows(v)) stack.push_back(a.tgt);
        while (!stack.empty()) {
            std::string u = stack.back();
            stack.pop_back();
            if (u == v) { out.insert(v); break; }
            if (!seen.insert(u).second) continue;
            for (const auto& a : Q.out_arrows(u)) stack.push_back(a.tgt);
        }
    }
    return out;
}

inline std::set<std::string> reachable_from(const Quiver& Q, const std::string& w, bool forward) {
    std::set<std::string> seen{w};
    std::vector<std::string> stack{w};
    while (!stack.empty()) {
        std::string u = stack.back();
        stack.pop_back();
        for (const auto& a : forward ? Q.out_arrows(u) : Q.in_arrows(u)) {
            const std::string& n = forward ? a.tgt : a.src;
            if (seen.insert(n).second) stack.push_back(n);
        }
    }
    return seen;
}

inline int window_depth_for(const Quiver& Q, const std::string& v) {
    auto loc = locate_on_ray(Q, v);
    return loc ? loc->second : 0;
}

}  // namespace detail

/// All paths from w to v in lexicographic order of arrow-id sequences
/// (the trivial path first when w == v).
inline std::vector<Path> paths(const Quiver& Qin, const std::string& w, const std::string& v,
                               std::optional<int> bound = std::nullopt) {
    Quiver Q = Qin;
    if (Qin.descriptor()) {
        detail::require_ray_family(Qin);
        if (!has_vertex(Qin, w) || !has_vertex(Qin, v)) throw Error(ErrorKind::UnknownVertex, w + " or " + v);
        // a path between two window vertices never leaves the window that contains both
        Q = materialize(Qin, std::max(detail::window_depth_for(Qin, w), detail::window_depth_for(Qin, v)));
    }
    if (!Q.has_vertex(w) || !Q.has_vertex(v)) throw Error(ErrorKind::UnknownVertex, w + " or " + v);
    if (!bound) {
        auto fwd = detail::reachable_from(Q, w, true);
        auto bwd = detail::reachable_from(Q, v, false);
        for (const auto& c : detail::cyclic_vertices(Q))
            if (fwd.count(c) && bwd.count(c))
                throw Error(ErrorKind::UnboundedPathSet, "cycle through " + c + " on a route from " + w + " to " + v);
    }
    std::vector<Path> out;
    std::vector<std::string> cur;
    std::function<void(const std::string&)> dfs = [&](const std::string& u) {
        if (u == v) out.push_back({w, v, cur});
        if (bound && static_cast<int>(cur.size()) >= *bound) return;
        for (const auto& a : Q.out_arrows(u)) {
            cur.push_back(a.id);
            dfs(a.tgt);
            cur.pop_back();
        }
    };
    dfs(w);
    return out;
}

// ---------------------------------------------------------------------------
// Stratification: V_0 = sinks, V_alpha = vertices whose arrows all land in
// earlier stages.

struct Stratification {
    std::vector<std::vector<std::string>> stages;
    std::vector<std::string> residual;
    /// Descriptor quivers: every vertex further out on an outgoing ray is residual.
    bool residual_includes_outgoing_rays = false;
    /// Descriptor quivers: incoming rays keep adding one vertex per stage beyond the listed ones.
    bool stages_continue_along_incoming_rays = false;

    bool right_rooted() const { return residual.empty() && !residual_includes_outgoing_rays; }
};

namespace detail {

inline Stratification stratify_finite(const Quiver& Q, const std::set<std::string>& never_settles) {
    Stratification s;
    std::set<std::string> placed;
    std::set<std::string> remaining(Q.vertices().begin(), Q.vertices().end());
    while (true) {
        std::vector<std::string> stage;
        for (const auto& v : Q.vertices()) {
            if (placed.count(v) || never_settles.count(v)) continue;
            auto outs = Q.out_arrows(v);
            if (std::all_of(outs.begin(), outs.end(), [&](const Arrow& a) { return placed.count(a.tgt) > 0; }))
                stage.push_back(v);
        }
        if (stage.empty()) break;
        for (const auto& v : stage) placed.insert(v);
        s.stages.push_back(stage);
    }
    for (const auto& v : Q.vertices())
        if (!placed.count(v)) s.residual.push_back(v);
    return s;
}

}  // namespace detail

/// For descriptor quivers the stages are those of the window of the given depth.
inline Stratification stratify(const Quiver& Q, int window_depth = 1) {
    if (!Q.descriptor()) return detail::stratify_finite(Q, {});
    const Descriptor& d = *Q.descriptor();
    if (d.kind == DescriptorKind::BranchingTree) {
        Stratification s;
        if (d.opposite) {
            s.stages_continue_along_incoming_rays = true;
        } else {
            s.residual_includes_outgoing_rays = true;
            s.residual.push_back("root");
        }
        return s;
    }
    Quiver W = materialize(Q, window_depth);
    std::set<std::string> never;
    for (const RayInfo& r : rays(Q))
        if (!r.incoming) never.insert(ray_vertex(Q, r.id, window_depth));
    Stratification s = detail::stratify_finite(W, never);
    for (const RayInfo& r : rays(Q)) {
        if (r.incoming) s.stages_continue_along_incoming_rays = true;
        else s.residual_includes_outgoing_rays = true;
    }
    return s;
}

inline bool is_right_rooted(const Quiver& Q) { return stratify(Q).right_rooted(); }

// ---------------------------------------------------------------------------
// Opposite quiver

inline Quiver opposite(const Quiver& Q) {
    std::vector<Arrow> arrows = Q.arrows();
    if (!Q.descriptor()) {
        for (auto& a : arrows) std::swap(a.src, a.tgt);
        return Quiver(Q.vertices(), arrows);
    }
    Descriptor d = *Q.descriptor();
    d.opposite = !d.opposite;
    return Quiver(Q.vertices(), arrows, d);
}

inline bool is_left_rooted(const Quiver& Q) { return is_right_rooted(opposite(Q)); }

// ---------------------------------------------------------------------------
// Trees

struct RayAtInfinity {
    std::string ray;
    std::string attach;
    std::string vertex_at_infinity;
};

struct TreeStructure {
    std::string root;
    std::map<std::string, Path> path_from_root;  // finite vertices of the core
    std::vector<RayAtInfinity> rays;
};

namespace detail {

/// Root of a finite (core) tree, or throws "not a tree".
inline std::string tree_root(const Quiver& Q) {
    std::vector<std::string> roots;
    for (const auto& v : Q.vertices()) {
        auto ins = Q.in_arrows(v);
        if (ins.size() > 1) throw Error(ErrorKind::NotATree, "vertex " + v + " has several incoming arrows");
        if (ins.empty()) roots.push_back(v);
    }
    if (roots.size() != 1) throw Error(ErrorKind::NotATree, std::to_string(roots.size()) + " roots");
    if (reachable_from(Q, roots[0], true).size() != Q.vertices().size())
        throw Error(ErrorKind::NotATree, "not every vertex is reachable from the root");
    return roots[0];
}

inline std::vector<std::vector<std::string>> forest_components(const Quiver& Q) {
    std::map<std::string, std::string> parent;
    for (const auto& v : Q.vertices()) parent[v] = v;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) -> std::string {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& a : Q.arrows()) parent[find(a.src)] = find(a.tgt);
    std::map<std::string, std::vector<std::string>> comps;
    for (const auto& v : Q.vertices()) comps[find(v)].push_back(v);
    std::vector<std::vector<std::string>> out;
    for (auto& [k, c] : comps) out.push_back(c);
    return out;
}

inline Quiver induced(const Quiver& Q, const std::vector<std::string>& vs) {
    std::set<std::string> keep(vs.begin(), vs.end());
    std::vector<Arrow> a;
    for (const auto& ar : Q.arrows())
        if (keep.count(ar.src) && keep.count(ar.tgt)) a.push_back(ar);
    return Quiver(vs, a);
}

}  // namespace detail

inline TreeStructure tree_structure(const Quiver& Q) {
    if (Q.descriptor()) {
        const Descriptor& d = *Q.descriptor();
        if (d.opposite || d.kind == DescriptorKind::AInfBoth)
            throw Error(ErrorKind::NotATree, "no vertex without incoming arrows");
        if (d.kind == DescriptorKind::BranchingTree)
            throw Error(ErrorKind::Unsupported, "branching tree has infinitely many rays");
    }
    Quiver core = core_quiver(Q);
    TreeStructure t;
    t.root = detail::tree_root(core);
    for (const auto& v : core.vertices()) {
        auto ps = paths(core, t.root, v);
        t.path_from_root[v] = ps.front();
    }
    for (const RayInfo& r : rays(Q)) t.rays.push_back({r.id, r.attach, "inf:" + r.id});
    return t;
}

struct BarrenResult {
    bool barren = false;
    std::optional<int> stabilization_index;  // 1-based level from which n_i is constant
    std::vector<std::uint64_t> state_sizes;   // n_1, n_2, ... (enough levels to show the pattern)
};

inline BarrenResult is_barren(const Quiver& Q) {
    BarrenResult r;
    if (Q.descriptor() && Q.descriptor()->kind == DescriptorKind::BranchingTree) {
        if (Q.descriptor()->opposite) throw Error(ErrorKind::NotATree, "no root");
        std::uint64_t b = Q.descriptor()->branching, n = 1;
        for (int i = 1; i <= 6; ++i, n *= b) r.state_sizes.push_back(n);
        r.barren = b == 1;
        if (r.barren) r.stabilization_index = 1;
        return r;
    }
    TreeStructure t = tree_structure(Q);
    Quiver core = core_quiver(Q);
    int core_depth = 0;
    for (const auto& [v, p] : t.path_from_root) core_depth = std::max<int>(core_depth, p.length());
    // levels of the window one past the deepest attachment
    int levels = core_depth + 3;
    std::vector<std::uint64_t> n(levels, 0);
    for (const auto& [v, p] : t.path_from_root) ++n[p.length()];
    for (const RayInfo& ray : rays(Q)) {
        int base = t.path_from_root.at(ray.attach).length();
        for (int l = base + 1; l < levels; ++l) ++n[l];
    }
    if (rays(Q).empty()) {
        // finite tree: beyond the last level n_i = 0
        while (!n.empty() && n.back() == 0) n.pop_back();
        n.push_back(0);
    }
    r.state_sizes = n;
    r.barren = true;
    std::size_t k = n.size() - 1;
    while (k > 0 && n[k - 1] == n.back()) --k;
    r.stabilization_index = static_cast<int>(k) + 1;
    return r;
}

// ---------------------------------------------------------------------------
// Source-injective classification: sufficient conditions only.

enum class SourceInjectiveReason { RightRooted, BarrenForest, AInfBoth };

inline const char* to_string(SourceInjectiveReason r) {
    switch (r) {
    case SourceInjectiveReason::RightRooted: return "right-rooted";
    case SourceInjectiveReason::BarrenForest: return "barren-forest";
    case SourceInjectiveReason::AInfBoth: return "a-inf-both";
    }
    return "?";
}

struct SourceInjectiveVerdict {
    std::optional<SourceInjectiveReason> yes;  // nullopt means Unknown
    std::string annotation;
    bool is_yes() const { return yes.has_value(); }
    std::string label() const { return yes ? std::string("yes(") + to_string(*yes) + ")" : "unknown"; }
};

inline const char* kLoopAnnotation =
    "local conditions do not suffice on the single-loop quiver: k[x,x^-1] is injective at the vertex "
    "with a split source map, yet it is not divisible as a k[x]-module";

inline SourceInjectiveVerdict classify_source_injective(const Quiver& Q) {
    SourceInjectiveVerdict v;
    if (Q.descriptor()) {
        const Descriptor& d = *Q.descriptor();
        if (d.kind == DescriptorKind::AInfBoth) {
            v.yes = SourceInjectiveReason::AInfBoth;
            return v;
        }
    }
    if (stratify(Q).right_rooted()) {
        v.yes = SourceInjectiveReason::RightRooted;
        return v;
    }
    if (Q.descriptor() && !Q.descriptor()->opposite) {
        const Descriptor& d = *Q.descriptor();
        bool forest = true;
        if (d.kind == DescriptorKind::BarrenForest) {
            Quiver core = core_quiver(Q);
            try {
                for (const auto& comp : detail::forest_components(core)) detail::tree_root(detail::induced(core, comp));
            } catch (const Error&) {
                forest = false;
            }
        } else if (d.kind == DescriptorKind::BranchingTree) {
            forest = is_barren(Q).barren;
        }
        if (forest) {
            v.yes = SourceInjectiveReason::BarrenForest;
            return v;
        }
    }
    if (Q.is_finite() && Q.vertices().size() == 1 && Q.arrows().size() == 1) v.annotation = kLoopAnnotation;
    else v.annotation = "no sufficient condition applies";
    return v;
}

}  // namespace quivinj
