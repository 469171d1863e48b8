#pragma once

// Injective representations: the vertexwise test, a Baer-style oracle,
// extension of morphisms into injectives, decomposition over trees, and the
// one-sided line (torsion, envelopes, splitting).

#include <set>

#include "adjoint.hpp"
#include "brute.hpp"

namespace quivinj {

enum class InjectivityState { Injective, NotInjective, LocalPassButQuiverUnknown };

inline const char* to_string(InjectivityState s) {
    switch (s) {
    case InjectivityState::Injective: return "injective";
    case InjectivityState::NotInjective: return "not_injective";
    case InjectivityState::LocalPassButQuiverUnknown: return "local_pass_quiver_unknown";
    }
    return "?";
}

struct VertexCheck {
    std::string vertex;
    bool module_injective = false;
    bool source_split = false;
    std::optional<ModuleMap> section;
    std::string reason;  // empty when both conditions hold
};

struct InjectivityVerdict {
    InjectivityState state = InjectivityState::NotInjective;
    std::vector<VertexCheck> vertices;
    std::string failure;  // first failing condition
    SourceInjectiveVerdict quiver;
    Certificate certificate;

    bool local_pass() const { return state != InjectivityState::NotInjective; }
    bool is_injective() const { return state == InjectivityState::Injective; }
};

namespace detail {

/// Window that shows every distinct source map: one step past each constant
/// tail, one full period past each periodic tail.
inline Representation test_window(const Representation& X) {
    RayDepths d = X.depths();
    for (auto& [ray, k] : d) {
        auto p = X.periodic().find(ray);
        k = p == X.periodic().end() ? k + 1 : p->second.start + static_cast<int>(p->second.maps.size());
    }
    return X.extended(d);
}

}  // namespace detail

/// Every X(v) injective and every source map split surjective.
inline InjectivityVerdict local_injectivity_test(const Representation& X) {
    InjectivityVerdict out;
    out.quiver = classify_source_injective(X.quiver());
    out.certificate.kind = CertificateKind::SectionMatrix;
    Representation W = detail::test_window(X);
    for (const auto& v : W.vertices()) {
        VertexCheck c{v, module_classify(W.module(v)).is_injective, false, std::nullopt, ""};
        SplitWitness s = split_epi_witness(source_map(W, v));
        c.source_split = s.ok();
        c.section = s.section;
        if (!c.module_injective) c.reason = "X(" + v + ") = " + W.module(v).describe() + " is not injective";
        else if (!s.ok()) c.reason = "source map at " + v + ": " + s.reason;
        if (c.section) out.certificate.add("section at " + v, c.section->matrix());
        if (!c.reason.empty() && out.failure.empty()) out.failure = c.reason;
        out.vertices.push_back(std::move(c));
    }
    if (!out.failure.empty()) out.state = InjectivityState::NotInjective;
    else if (out.quiver.is_yes()) out.state = InjectivityState::Injective;
    else out.state = InjectivityState::LocalPassButQuiverUnknown;
    return out;
}

// ---------------------------------------------------------------------------
// Baer-style oracle: every morphism from a subrepresentation of a principal
// projective (and of the whole path algebra, when small) extends.

struct BaerTestSet {
    std::vector<std::pair<Representation, std::vector<SubRepresentation>>> tests;
    bool includes_algebra = false;
};

inline BaerTestSet baer_test_set(const BaseRing& R, const Quiver& Q, std::uint64_t algebra_limit = 256) {
    BaerTestSet out;
    std::vector<Representation> ps;
    for (const auto& u : Q.vertices()) ps.push_back(principal_projective(R, Q, u));
    for (const auto& P : ps) out.tests.push_back({P, brute::all_subreps(P)});
    Representation A = direct_sum(ps).sum;
    if (A.window_cardinality() <= algebra_limit) {
        out.tests.push_back({A, brute::all_subreps(A)});
        out.includes_algebra = true;
    }
    return out;
}

struct BaerResult {
    bool injective = true;
    std::string witness;  // a subobject whose morphisms do not all extend
};

inline BaerResult baer_oracle(const Representation& X, const BaerTestSet& tests) {
    for (const auto& [P, subs] : tests.tests) {
        HomSpace HP(P, X);
        for (std::size_t s = 0; s < subs.size(); ++s) {
            HomSpace HS(subs[s].sub, X);
            std::vector<Vec> images;
            for (std::size_t i = 0; i < HP.module().rank(); ++i)
                images.push_back(HS.encode(compose(HP.decode(basis_vector(HP.module(), i)), subs[s].inclusion)));
            if (!is_epi(map_from_images(HP.module(), HS.module(), images)))
                return {false, "subrepresentation #" + std::to_string(s) + " of a projective of total size " +
                                   std::to_string(P.window_cardinality())};
        }
    }
    return {};
}

inline BaerResult baer_oracle(const Representation& X) {
    return baer_oracle(X, baer_test_set(X.ring(), X.quiver()));
}

// ---------------------------------------------------------------------------
// Extension along monomorphisms

/// t: X -> E with t o g = h, for g: S -> X mono and E injective over a quiver
/// the classifier accepts.  Works sinks-first over the window stratification:
/// t_v = sigma tau + iota_K gamma, where tau collects the already-built
/// components along the arrows out of v, sigma is a section of the source
/// map of E, K its kernel and gamma extends the K-part of h_v.
inline RepMorphism extend_morphism(const RepMorphism& g0, const RepMorphism& h0) {
    const Representation& E0 = h0.cod;
    InjectivityVerdict ver = local_injectivity_test(E0);
    if (!ver.local_pass()) throw Error(ErrorKind::NotInjective, "E fails local criteria: " + ver.failure);
    if (!ver.is_injective()) throw Error(ErrorKind::QuiverUnknown, "quiver unsupported: " + ver.quiver.annotation);
    for (const Representation* Y : {&g0.dom, &g0.cod, &E0}) detail::require_constant_tails(*Y);
    if (!is_mono(g0)) throw Error(ErrorKind::InvalidArgument, "extension needs a monomorphism");

    RayDepths d = g0.dom.depths();
    for (const Representation* Y : {&g0.cod, &E0, &h0.dom})
        for (const auto& [r, k] : Y->depths()) d[r] = std::max(d[r], k);
    RepMorphism g = extended(g0, d), h = extended(h0, d);
    if (!(g.dom == h.dom)) throw Error(ErrorKind::ShapeMismatch, "g and h must share their domain");
    const Representation& X = g.cod;
    const Representation& E = h.cod;
    const Quiver& W = X.window();
    const BaseRing& R = X.ring();

    Stratification st = stratify(W);
    if (!st.right_rooted()) throw Error(ErrorKind::Internal, "window is not right-rooted");
    std::map<std::string, ModuleMap> t;
    for (const auto& stage : st.stages) {
        for (const auto& v : stage) {
            const ModuleMap& gv = g.component(v);
            const ModuleMap& hv = h.component(v);
            auto outs = W.out_arrows(v);
            if (outs.empty()) {
                auto tv = extend_along(gv, hv);
                if (!tv) throw Error(ErrorKind::Internal, "no extension at sink " + v);
                t[v] = *tv;
                continue;
            }
            std::vector<FinModule> parts;
            for (const auto& a : outs) parts.push_back(E.module(a.tgt));
            DirectSum P = direct_sum(R, parts);
            const FinModule& Ev = E.module(v);
            const FinModule& Xv = X.module(v);
            std::vector<Vec> fimg, timg;
            for (std::size_t j = 0; j < Ev.rank(); ++j) {
                Vec y(P.sum.rank(), 0);
                for (std::size_t s = 0; s < outs.size(); ++s) {
                    Vec z = E.map(outs[s].id).apply(basis_vector(Ev, j));
                    for (std::size_t i = 0; i < z.size(); ++i) y[P.position[s][i]] = z[i];
                }
                fimg.push_back(y);
            }
            for (std::size_t j = 0; j < Xv.rank(); ++j) {
                Vec y(P.sum.rank(), 0);
                for (std::size_t s = 0; s < outs.size(); ++s) {
                    Vec z = t.at(outs[s].tgt).apply(X.map(outs[s].id).apply(basis_vector(Xv, j)));
                    for (std::size_t i = 0; i < z.size(); ++i) y[P.position[s][i]] = z[i];
                }
                timg.push_back(y);
            }
            ModuleMap f = map_from_images(Ev, P.sum, fimg);
            ModuleMap tau = map_from_images(Xv, P.sum, timg);
            SplitWitness sw = split_epi_witness(f);
            if (!sw.ok()) throw Error(ErrorKind::Internal, "source map of E does not split at " + v);
            const ModuleMap& sigma = *sw.section;
            Subobject K = kernel(f);
            // p_K: E_v -> K along im(sigma)
            ModuleMap rest = subtract(ModuleMap::identity(Ev), compose(sigma, f));
            std::vector<Vec> pk;
            for (std::size_t j = 0; j < Ev.rank(); ++j) {
                auto y = linear_solve(K.inclusion, rest.matrix().column(j));
                if (!y) throw Error(ErrorKind::Internal, "kernel projection at " + v);
                pk.push_back(*y);
            }
            ModuleMap pK = map_from_images(Ev, K.module, pk);
            auto gamma = extend_along(gv, compose(pK, hv));
            if (!gamma) throw Error(ErrorKind::Internal, "kernel part does not extend at " + v);
            t[v] = add(compose(sigma, tau), compose(K.inclusion, *gamma));
        }
    }
    RepMorphism out{X, E, t};
    if (!is_natural(out) || !(compose(out, g) == h)) throw Error(ErrorKind::Internal, "extension check failed");
    return out;
}

/// A monomorphism g: G -> I into an injective with h = id_G that admits no
/// extension, certifying that G is not injective; nullopt when the inclusion splits.
struct NonExtendablePair {
    RepMorphism mono;
    RepMorphism map;
    Certificate certificate;
};

inline std::optional<NonExtendablePair> non_extendable_pair(const Representation& G) {
    InjectiveEmbedding I = injective_embedding(G);
    HomSpace from(I.injective, G);
    HomSpace to(I.embedding.dom, G);
    std::vector<Vec> images;
    for (std::size_t i = 0; i < from.module().rank(); ++i)
        images.push_back(to.encode(compose(from.decode(basis_vector(from.module(), i)), I.embedding)));
    ModuleMap restrict = map_from_images(from.module(), to.module(), images);
    RepMorphism id = identity_morphism(to.source());
    if (linear_solve(restrict, to.encode(id))) return std::nullopt;
    NonExtendablePair out{I.embedding, id, {}};
    out.certificate.kind = CertificateKind::NonExtendable;
    out.certificate.note("the identity of G is not in the image of Hom(I, G) -> Hom(G, G)");
    out.certificate.add("restriction Hom(I,G) -> Hom(G,G)", restrict.matrix());
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition over trees (field base)

struct DecompositionEntry {
    std::string target;  // vertex, or "inf:<ray>"
    FinModule seed;
    int multiplicity = 0;
    friend bool operator==(const DecompositionEntry&, const DecompositionEntry&) = default;
};

struct TreeDecomposition {
    std::vector<DecompositionEntry> entries;
    Representation rebuilt;
    RepMorphism iso;  // X -> rebuilt
    Certificate certificate;
};

namespace detail {

inline void require_forest(const Quiver& Q) {
    if (Q.descriptor()) {
        const Descriptor& d = *Q.descriptor();
        if (d.opposite || d.kind == DescriptorKind::AInfBoth || d.kind == DescriptorKind::BranchingTree)
            throw Error(ErrorKind::NotATree, "decomposition needs a rooted forest with outgoing rays");
    }
    Quiver core = core_quiver(Q);
    for (const auto& comp : forest_components(core)) tree_root(induced(core, comp));
}

}  // namespace detail

/// X as a sum of e_*^v(k): multiplicity dim Ker(source map) at finite v and
/// the stable dimension at each ray's vertex at infinity.
inline TreeDecomposition decompose_injective_tree(const Representation& X) {
    const BaseRing& R = X.ring();
    if (!R.is_field()) throw Error(ErrorKind::NonFieldBase, "decomposition needs a field");
    detail::require_forest(X.quiver());
    detail::require_constant_tails(X);
    InjectivityVerdict ver = local_injectivity_test(X);
    if (!ver.is_injective()) throw Error(ErrorKind::NotInjective, "not injective: " + ver.failure);

    FinModule k = FinModule::vector_space(R, 1);
    TreeDecomposition out;
    std::vector<RepMorphism> legs;
    auto coordinate = [&](const FinModule& M, const ModuleMap& r, std::size_t i) {
        Matrix m(1, M.rank());
        for (std::size_t c = 0; c < M.rank(); ++c) m(0, c) = r.entry(i, c);
        return ModuleMap(M, k, m);
    };
    for (const auto& v : X.vertices()) {
        Subobject K = kernel(source_map(X, v));
        if (K.module.is_zero()) continue;
        ModuleMap r = *split_mono_witness(K.inclusion).section;
        out.entries.push_back({v, k, static_cast<int>(K.module.rank())});
        for (std::size_t i = 0; i < K.module.rank(); ++i) legs.push_back(adjoint_transpose(X, v, coordinate(X.module(v), r, i)));
    }
    for (const RayInfo& ray : rays(X.quiver())) {
        const FinModule& end = X.module(X.end_vertex(ray.id));
        if (end.is_zero()) continue;
        out.entries.push_back({"inf:" + ray.id, k, static_cast<int>(end.rank())});
        ModuleMap id = ModuleMap::identity(end);
        for (std::size_t i = 0; i < end.rank(); ++i) legs.push_back(adjoint_transpose_ray(X, ray.id, coordinate(end, id, i)));
    }
    out.certificate.kind = CertificateKind::IsomorphismPair;
    if (legs.empty()) {
        out.rebuilt = Representation::zero(R, X.quiver());
        out.iso = zero_morphism(X, out.rebuilt);
        return out;
    }
    std::vector<Representation> parts;
    for (const auto& l : legs) parts.push_back(l.cod);
    RepDirectSum D = direct_sum(parts);
    RepMorphism total = compose(D.injections[0], legs[0]);
    for (std::size_t i = 1; i < legs.size(); ++i) total = add(total, compose(D.injections[i], legs[i]));
    if (!is_iso(total)) throw Error(ErrorKind::Internal, "decomposition map is not an isomorphism");
    out.rebuilt = D.sum;
    out.iso = total;
    for (const auto& v : total.dom.vertices()) {
        const ModuleMap& c = total.component(v);
        std::vector<Vec> inv;
        for (std::size_t j = 0; j < c.codomain().rank(); ++j) inv.push_back(*linear_solve(c, basis_vector(c.codomain(), j)));
        out.certificate.add("forward at " + v, c.matrix());
        out.certificate.add("inverse at " + v, map_from_images(c.codomain(), c.domain(), inv).matrix());
    }
    return out;
}

// ---------------------------------------------------------------------------
// The one-sided line 0 -> 1 -> 2 -> ...

namespace detail {

inline void require_line(const Representation& X) {
    const Quiver& Q = X.quiver();
    if (!Q.descriptor() || Q.descriptor()->kind != DescriptorKind::AInfPlus || Q.descriptor()->opposite)
        throw Error(ErrorKind::Unsupported, "needs the one-sided line with arrows n -> n+1");
}

inline ModuleMap line_path(const Representation& X, int from, int to) {
    return path_map(X, ray_path(X.quiver(), "w", from, to));
}

}  // namespace detail

/// Criterion on the line: every G_n injective, every G_n -> G_{n+1} onto with injective kernel.
struct LineCriterion {
    bool holds = true;
    std::string failure;
};

inline LineCriterion line_criterion(const Representation& G) {
    detail::require_line(G);
    Representation W = detail::test_window(G);
    int last = W.depth("w");
    for (int n = 0; n <= last; ++n) {
        std::string v = std::to_string(n);
        if (!module_classify(W.module(v)).is_injective) return {false, "G_" + v + " is not injective"};
        if (n == last) break;
        ModuleMap f = W.map("a" + v);
        if (!is_epi(f)) return {false, "G_" + v + " -> G_" + std::to_string(n + 1) + " is not surjective"};
        if (!module_classify(kernel(f).module).is_injective) return {false, "kernel at " + v + " is not injective"};
    }
    return {};
}

/// t(X)_n = elements of X_n killed by some X_n -> X_m.  Constant tails use
/// the kernel into the window end; a one-map periodic tail f uses the
/// preimage of Ker f^L with L the length of the end module, where the chain
/// Ker f^j has stopped growing.
inline SubRepresentation torsion_subrep(const Representation& X) {
    detail::require_line(X);
    const BaseRing& R = X.ring();
    int end = X.depth("w");
    auto p = X.periodic().find("w");
    std::map<std::string, Subobject> S;
    if (p == X.periodic().end()) {
        for (int n = 0; n <= end; ++n) S.emplace(std::to_string(n), kernel(detail::line_path(X, n, end)));
        return detail::build_sub(X, S);
    }
    if (p->second.maps.size() != 1)
        throw Error(ErrorKind::Unsupported, "torsion along a periodic tail needs period length 1");
    const ModuleMap& f = p->second.maps.front();
    const FinModule& M = f.domain();
    ModuleMap power = ModuleMap::identity(M);
    for (int j = 0; j < M.length(); ++j) power = compose(f, power);
    Subobject Kinf = kernel(power);
    Quotient q = cokernel(Kinf.inclusion);
    for (int n = 0; n <= end; ++n) S.emplace(std::to_string(n), kernel(compose(q.projection, detail::line_path(X, n, end))));
    std::map<std::string, FinModule> mods;
    std::map<std::string, ModuleMap> incl;
    for (const auto& [v, s] : S) {
        mods[v] = s.module;
        incl[v] = s.inclusion;
    }
    std::vector<Vec> fk;
    for (std::size_t j = 0; j < Kinf.module.rank(); ++j)
        fk.push_back(*linear_solve(Kinf.inclusion, f.apply(Kinf.inclusion.matrix().column(j))));
    ModuleMap fres = map_from_images(Kinf.module, Kinf.module, fk);
    Representation sub(R, X.quiver(), X.depths(), mods, detail::restricted_maps(X, S),
                       {{"w", PeriodicTail{p->second.start, {fres}}}});
    return {sub, RepMorphism{sub, X, incl}};
}

/// Every nonzero element of X generates a subrepresentation meeting im(f).
struct EssentialResult {
    bool essential = true;
    std::optional<std::pair<std::string, Vec>> witness;  // element whose span misses im(f)
};

namespace detail {

inline bool has_cycle(const Quiver& W) {
    try {
        require_acyclic(W);
        return false;
    } catch (const Error&) {
        return true;
    }
}

/// Elements w with pi w = 0 killed by every window arrow out of v.  Past the
/// window the arrows are identities, so such a w spans a cyclic subobject
/// whose nonzero elements are unit multiples of w.
inline Subobject terminal_elements(const Representation& X, const std::string& v) {
    const FinModule& M = X.module(v);
    const BaseRing& R = X.ring();
    Matrix pi(M.rank(), M.rank());
    for (std::size_t i = 0; i < M.rank(); ++i) pi(i, i) = R.pi_pow(1);
    Subobject K = kernel(ModuleMap(M, M, pi));
    for (const Arrow& a : X.window().out_arrows(v)) {
        Subobject L = kernel(compose(X.map(a.id), K.inclusion));
        K = {L.module, compose(K.inclusion, L.inclusion)};
    }
    return K;
}

}  // namespace detail

/// On acyclic windows with constant tails every nonzero cyclic subobject
/// contains a terminal element (keep pushing along arrows and multiplying by
/// pi until the next step would vanish), and a terminal element's span meets
/// im(f) only if the element lies in it.  So im(f) is essential iff it holds
/// every terminal element; otherwise cyclic subobjects are enumerated.
inline EssentialResult essential_check(const RepMorphism& f, std::uint64_t budget = kDefaultBudget) {
    if (!is_mono(f)) throw Error(ErrorKind::InvalidArgument, "essential check needs a monomorphism");
    const Representation& X = f.cod;
    if (!X.has_periodic_tail() && !detail::has_cycle(X.window())) {
        for (const auto& v : X.vertices()) {
            Subobject T = detail::terminal_elements(X, v);
            Subobject I = image(f.component(v));
            for (std::size_t j = 0; j < T.module.rank(); ++j) {
                Vec w = T.inclusion.matrix().column(j);
                if (!linear_solve(I.inclusion, w)) return {false, std::pair{v, w}};
            }
        }
        return {};
    }
    if (X.window_cardinality() > budget) throw BudgetExceeded("essential check over " + std::to_string(X.window_cardinality()) + " elements");
    std::map<std::string, Subobject> im;
    for (const auto& v : X.vertices()) im.emplace(v, image(f.component(v)));
    for (const auto& v : X.vertices()) {
        EssentialResult bad;
        for_each_element(X.module(v), [&](const Vec& x) {
            if (!bad.essential || is_zero_element(x)) return;
            SubRepresentation C = generated_subrep(X, {{v, x}});
            for (const auto& w : X.vertices()) {
                const Subobject& A = im.at(w);
                const ModuleMap& B = C.inclusion.component(w);
                std::vector<Vec> gens;
                for (std::size_t j = 0; j < A.module.rank(); ++j) gens.push_back(A.inclusion.matrix().column(j));
                for (std::size_t j = 0; j < B.domain().rank(); ++j) gens.push_back(B.matrix().column(j));
                std::uint64_t both = span(X.module(w), gens).module.cardinality();
                // |A n B| = |A| |B| / |A + B|
                if (A.module.cardinality() * B.domain().cardinality() > both) return;
            }
            bad = {false, std::pair{v, x}};
        }, budget);
        if (!bad.essential) return bad;
    }
    return {};
}

/// Envelope on the line from modules E_0..E_{m-1}: the source is
/// (+)_{i>=n} E_i with projections, the envelope E / (E_0 + ... + E_{n-1})
/// with E the injective hull of the whole sum.
struct LineEnvelope {
    Representation source;
    Representation envelope;
    RepMorphism embedding;
    InjectivityVerdict verdict;
    bool essential = false;
};

inline LineEnvelope line_envelope(const BaseRing& R, const std::vector<FinModule>& E, std::uint64_t budget = kDefaultBudget) {
    const int m = static_cast<int>(E.size());
    Quiver Q = quivers::a_inf_plus();
    DirectSum all = direct_sum(R, E);
    Hull H = injective_hull(all.sum);
    std::vector<Quotient> bar;
    std::vector<DirectSum> src;
    for (int n = 0; n <= m; ++n) {
        std::vector<Vec> gens;
        for (int i = 0; i < n; ++i) {
            ModuleMap inc = compose(H.embedding, all.injections[i]);
            for (std::size_t j = 0; j < E[i].rank(); ++j) gens.push_back(inc.matrix().column(j));
        }
        bar.push_back(quotient(H.module, gens));
        src.push_back(direct_sum(R, std::vector<FinModule>(E.begin() + n, E.end())));
    }
    std::map<std::string, FinModule> smods, emods;
    std::map<std::string, ModuleMap> smaps, emaps, comp;
    for (int n = 0; n <= m; ++n) {
        std::string v = std::to_string(n);
        smods[v] = src[n].sum;
        emods[v] = bar[n].module;
        // j_n: the summands E_i (i >= n) through the hull into the quotient
        ModuleMap j = ModuleMap::zero(src[n].sum, bar[n].module);
        for (int i = n; i < m; ++i)
            j = add(j, compose(bar[n].projection, compose(H.embedding, compose(all.injections[i], src[n].projections[i - n]))));
        comp[v] = j;
        if (n == m) break;
        std::string a = "a" + v;
        std::vector<std::vector<ModuleMap>> blocks(m - n - 1, std::vector<ModuleMap>(m - n));
        for (int r = 0; r < m - n - 1; ++r)
            for (int c = 0; c < m - n; ++c)
                blocks[r][c] = r + 1 == c ? ModuleMap::identity(E[n + c]) : ModuleMap::zero(E[n + c], E[n + 1 + r]);
        smaps[a] = block_map(src[n], src[n + 1], blocks);
        std::vector<Vec> img;
        for (std::size_t b = 0; b < bar[n].module.rank(); ++b)
            img.push_back(bar[n + 1].projection.apply(*linear_solve(bar[n].projection, basis_vector(bar[n].module, b))));
        emaps[a] = map_from_images(bar[n].module, bar[n + 1].module, img);
    }
    RayDepths d{{"w", m}};
    LineEnvelope out;
    out.source = Representation(R, Q, d, smods, smaps);
    out.envelope = Representation(R, Q, d, emods, emaps);
    out.embedding = RepMorphism{out.source, out.envelope, comp};
    if (!is_natural(out.embedding) || !is_mono(out.embedding)) throw Error(ErrorKind::Internal, "envelope embedding");
    out.verdict = local_injectivity_test(out.envelope);
    out.essential = essential_check(out.embedding, budget).essential;
    return out;
}

/// G = t(G) (+) G' for injective G on the line: G' is the identity chain on
/// the colimit; the retraction onto t(G) comes from extending its identity.
struct LineSplit {
    SubRepresentation torsion;
    Representation torsion_free;
    RepMorphism iso;  // G -> t(G) (+) G'
};

inline LineSplit line_split(const Representation& G) {
    detail::require_line(G);
    detail::require_constant_tails(G);
    InjectivityVerdict ver = local_injectivity_test(G);
    if (!ver.is_injective()) throw Error(ErrorKind::NotInjective, "not injective: " + ver.failure);
    LineSplit out;
    out.torsion = torsion_subrep(G);
    int end = G.depth("w");
    const FinModule& C = G.module(G.end_vertex("w"));
    Representation Gp(G.ring(), G.quiver(), {{"w", 0}}, {{"0", C}}, {});
    out.torsion_free = Gp.extended(end);
    std::map<std::string, ModuleMap> pc;
    for (int n = 0; n <= end; ++n) pc[std::to_string(n)] = detail::line_path(G, n, end);
    RepMorphism pi{G, out.torsion_free, pc};
    RepMorphism rho = extend_morphism(out.torsion.inclusion, identity_morphism(out.torsion.sub));
    RepDirectSum D = direct_sum({out.torsion.sub, out.torsion_free});
    out.iso = add(compose(D.injections[0], rho), compose(D.injections[1], pi));
    if (!is_iso(out.iso)) throw Error(ErrorKind::Internal, "splitting map is not an isomorphism");
    return out;
}

}  // namespace quivinj
