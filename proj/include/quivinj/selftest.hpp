#pragma once

// The acceptance corpus: eleven seeded checks, each reporting one line.
// Shared by the acceptance test binary and `quivinj selftest`.

#include <chrono>
#include <functional>
#include <future>

#include "brute.hpp"
#include "homdim.hpp"

namespace quivinj::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::int64_t millis = 0;
};

namespace detail {

inline std::vector<std::string> star_targets(const Quiver& Q) {
    std::vector<std::string> t = Q.is_finite() ? Q.vertices() : materialize(Q, 2).vertices();
    for (const RayInfo& r : rays(Q))
        if (!r.incoming) t.push_back("inf:" + r.id);
    return t;
}

inline Representation random_injective(brute::Rng& rng, const BaseRing& R, const Quiver& Q, int pieces) {
    std::vector<std::string> targets = star_targets(Q);
    std::vector<Representation> parts{Representation::zero(R, Q)};
    for (int i = 0; i < pieces; ++i) {
        parts.push_back(e_star(R, Q, targets[rng() % targets.size()], FinModule::free(R, 1)));
    }
    return direct_sum(parts).sum;
}

inline SubRepresentation random_sub(brute::Rng& rng, const Representation& X) {
    std::vector<std::pair<std::string, Vec>> gens;
    int n = static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
        const std::string& v = X.vertices()[rng() % X.vertices().size()];
        gens.push_back({v, brute::random_element(rng, X.module(v))});
    }
    return generated_subrep(X, gens);
}

inline RepMorphism random_morphism(brute::Rng& rng, const Representation& X, const Representation& Y) {
    HomSpace H(X, Y);
    return H.decode(brute::random_element(rng, H.module()));
}

// every F_2 representation with the given vertex dimensions
inline void for_each_f2_rep(const Quiver& Q, const std::map<std::string, int>& dims,
                            const std::function<void(const Representation&)>& fn) {
    BaseRing F = BaseRing::gf(2);
    std::map<std::string, FinModule> mods;
    for (const auto& [v, d] : dims) mods[v] = FinModule::vector_space(F, static_cast<std::size_t>(d));
    std::size_t bits = 0;
    for (const auto& a : Q.arrows()) bits += static_cast<std::size_t>(dims.at(a.src) * dims.at(a.tgt));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        std::map<std::string, ModuleMap> maps;
        std::size_t b = 0;
        for (const auto& a : Q.arrows()) {
            Matrix m(mods[a.tgt].rank(), mods[a.src].rank());
            for (auto& x : m.data) x = static_cast<Elem>((mask >> b++) & 1);
            maps[a.id] = ModuleMap(mods[a.src], mods[a.tgt], m);
        }
        fn(Representation::finite(F, Q, mods, maps));
    }
}

// vertex modules of at most 16 elements whose arrow matrices have at most 10 entries in all
inline std::vector<std::map<std::string, int>> small_dimension_vectors(const Quiver& Q) {
    std::vector<std::map<std::string, int>> out;
    const auto& vs = Q.vertices();
    std::vector<int> d(vs.size(), 0);
    auto bits = [&](const std::vector<int>& dims) {
        int b = 0;
        for (const auto& a : Q.arrows()) b += dims[Q.vertex_index(a.src)] * dims[Q.vertex_index(a.tgt)];
        return b;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vs.size()) {
            int top = 0;
            for (int x : d) top = std::max(top, x);
            if (top <= 4 && bits(d) <= 10) {
                std::map<std::string, int> m;
                for (std::size_t j = 0; j < vs.size(); ++j) m[vs[j]] = d[j];
                out.push_back(m);
            }
            return;
        }
        for (d[i] = 0; d[i] <= 4; ++d[i]) rec(i + 1);
    };
    rec(0);
    return out;
}

// does id_G factor through the mono, i.e. is id_G in the image of Hom(I, G) -> Hom(G, G)?
inline bool identity_lifts(const RepMorphism& mono, const Representation& G) {
    HomSpace from(mono.cod, G), to(mono.dom, G);
    std::vector<Vec> images;
    for (std::size_t i = 0; i < from.module().rank(); ++i)
        images.push_back(to.encode(compose(from.decode(basis_vector(from.module(), i)), mono)));
    ModuleMap restrict = map_from_images(from.module(), to.module(), images);
    return linear_solve(restrict, to.encode(identity_morphism(mono.dom))).has_value();
}

inline bool extension_ok(const RepMorphism& g, const RepMorphism& h, const RepMorphism& t) {
    return is_natural(t) && compose(t, g) == extended(h, t.dom.depths());
}

struct Tally {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string first_failure;
    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok && failures++ == 0) first_failure = what;
    }
    std::string summary(const std::string& noun) const {
        std::string s = std::to_string(cases) + " " + noun + ", " + std::to_string(failures) + " failures";
        if (failures) s += "; first: " + first_failure;
        return s;
    }
};

inline BaseRing F2() { return BaseRing::gf(2); }
inline BaseRing F3() { return BaseRing::gf(3); }
inline BaseRing Z4() { return BaseRing::zmod(2, 2); }
inline BaseRing Z8() { return BaseRing::zmod(2, 3); }

inline Representation a2(const BaseRing& R, const FinModule& M1, const FinModule& M2, const Matrix& m) {
    return Representation::finite(R, quivers::linear(2), {{"1", M1}, {"2", M2}}, {{"a1", ModuleMap(M1, M2, m)}});
}

// the line representations used by the criterion and torsion checks
inline std::vector<Representation> line_suite(std::uint64_t seed) {
    brute::Rng rng(seed);
    BaseRing R = Z4();
    Quiver L = quivers::a_inf_plus();
    FinModule M = FinModule::free(R, 1), H = FinModule::from_factors(R, {1});
    std::vector<Representation> out;
    // constant chain
    out.push_back(make_representation(R, L, {{"0", M}}, {}, {{"*", TailSpec{1, TailKind::EventuallyIso, M, {}}}}));
    // dies after one step, and a non-injective constant chain
    out.push_back(make_representation(R, L, {{"0", M}}, {}, {{"*", TailSpec{1, TailKind::EventuallyZero, std::nullopt, {}}}}));
    out.push_back(make_representation(R, L, {{"0", H}}, {}, {{"*", TailSpec{1, TailKind::EventuallyIso, H, {}}}}));
    for (int i = 0; i < 12; ++i) out.push_back(random_injective(rng, R, L, 1 + static_cast<int>(rng() % 3)));
    for (int i = 0; i < 18; ++i) out.push_back(brute::random_window_rep(rng, R, L, 1 + static_cast<int>(rng() % 2), 2, 16));
    return out;
}

}  // namespace detail

// Each criterion returns its detail line and sets `pass`.

inline std::string criterion_local_vs_baer(std::uint64_t seed, bool& pass) {
    using namespace detail;
    Tally exhaustive, random;
    std::vector<Quiver> qs{quivers::linear(2), quivers::linear(3), quivers::two_branch(), quivers::cospan()};
    // one worker per quiver
    std::vector<std::future<Tally>> jobs;
    for (const Quiver& Q : qs)
        jobs.push_back(std::async(std::launch::async, [Q] {
            Tally t;
            BaerTestSet tests = baer_test_set(F2(), Q);
            for (const auto& dims : small_dimension_vectors(Q))
                for_each_f2_rep(Q, dims, [&](const Representation& X) {
                    t.check(local_injectivity_test(X).is_injective() == baer_oracle(X, tests).injective, "F2 case");
                });
            return t;
        }));
    for (auto& j : jobs) {
        Tally t = j.get();
        if (t.failures && !exhaustive.failures) exhaustive.first_failure = t.first_failure;
        exhaustive.cases += t.cases;
        exhaustive.failures += t.failures;
    }
    brute::Rng rng(seed);
    std::vector<BaerTestSet> tests;
    for (const Quiver& Q : qs) tests.push_back(baer_test_set(Z4(), Q));
    for (int i = 0; i < 500; ++i) {
        const Quiver& Q = qs[i % qs.size()];
        Representation X = i % 3 == 0 ? random_injective(rng, Z4(), Q, 1 + static_cast<int>(rng() % 2))
                                      : brute::random_rep(rng, Z4(), Q, 2, 16);
        random.check(local_injectivity_test(X).is_injective() == baer_oracle(X, tests[i % qs.size()]).injective,
                     "Z/4 case " + std::to_string(i));
    }
    pass = exhaustive.failures == 0 && random.failures == 0;
    return exhaustive.summary("exhaustive F2 cases") + "; " + random.summary("random Z/4 cases");
}

inline std::string criterion_adjunction(std::uint64_t seed, bool& pass) {
    using namespace detail;
    brute::Rng rng(seed);
    Tally t;
    for (int i = 0; i < 100; ++i) {
        BaseRing R = i % 3 == 0 ? F3() : Z4();
        Quiver Q = i % 2 ? brute::random_tree(rng, 2 + static_cast<int>(rng() % 3))
                         : brute::random_dag(rng, 3, 1 + static_cast<int>(rng() % 4));
        Representation X = brute::random_rep(rng, R, Q, 2, 16);
        std::string v = Q.vertices()[rng() % Q.vertices().size()];
        FinModule M = brute::random_module(rng, R, 2, 16);
        AdjunctionCheck c = verify_adjunction(X, v, M, 1u << 20, seed + static_cast<std::uint64_t>(i));
        t.check(c.ok() && c.lhs == c.rhs, "instance " + std::to_string(i));
    }
    pass = t.failures == 0;
    return t.summary("instances");
}

inline std::string criterion_decomposition(std::uint64_t seed, bool& pass) {
    using namespace detail;
    brute::Rng rng(seed);
    Tally t;
    for (int i = 0; i < 200; ++i) {
        BaseRing R = i % 2 ? F3() : F2();
        Quiver Q;
        if (i % 4 == 3) {
            Q = quivers::a_inf_plus();
        } else {
            Quiver T = brute::random_tree(rng, 2 + static_cast<int>(rng() % 7));
            if (i % 4 == 2) {
                std::string at = T.vertices()[rng() % T.vertices().size()];
                Q = Quiver(T.vertices(), T.arrows(), Descriptor{DescriptorKind::BarrenForest, {{at, "r"}}, 2, false});
            } else {
                Q = T;
            }
        }
        std::vector<std::string> targets = star_targets(Q);
        std::map<std::pair<std::string, std::string>, int> want;
        std::vector<Representation> parts{Representation::zero(R, Q)};
        for (int p = 0; p < 1 + static_cast<int>(rng() % 4); ++p) {
            const std::string& tg = targets[rng() % targets.size()];
            FinModule k = FinModule::vector_space(R, 1);
            ++want[{tg, k.describe()}];
            parts.push_back(e_star(R, Q, tg, k));
        }
        TreeDecomposition d = decompose_injective_tree(direct_sum(parts).sum);
        std::map<std::pair<std::string, std::string>, int> got;
        for (const auto& e : d.entries) got[{e.target, e.seed.describe()}] += static_cast<int>(e.multiplicity);
        t.check(got == want && is_iso(d.iso) && is_natural(d.iso), "sum " + std::to_string(i));
    }
    pass = t.failures == 0;
    return t.summary("direct sums");
}

inline std::string criterion_line_criterion(std::uint64_t seed, bool& pass) {
    using namespace detail;
    brute::Rng rng(seed + 1);
    Tally accepted, rejected;
    for (const Representation& G : line_suite(seed)) {
        if (line_criterion(G).holds) {
            Tally pairs;
            for (int i = 0; i < 50; ++i) {
                Representation X = brute::random_window_rep(rng, G.ring(), G.quiver(), 1 + static_cast<int>(rng() % 2), 2, 16);
                SubRepresentation S = random_sub(rng, X);
                RepMorphism h = random_morphism(rng, S.sub, G);
                pairs.check(extension_ok(S.inclusion, h, extend_morphism(S.inclusion, h)), "pair");
            }
            accepted.check(pairs.failures == 0, "accepted G: " + pairs.summary("pairs"));
        } else {
            auto pair = non_extendable_pair(G);
            rejected.check(pair && is_mono(pair->mono) && !identity_lifts(pair->mono, G), "rejected G without a pair");
        }
    }
    pass = accepted.failures == 0 && rejected.failures == 0 && accepted.cases > 0 && rejected.cases > 0;
    return accepted.summary("accepted (50 pairs each)") + "; " + rejected.summary("rejected with pairs");
}

inline std::string criterion_envelopes(std::uint64_t, bool& pass) {
    using namespace detail;
    BaseRing R = Z4();
    std::vector<FinModule> choices{FinModule::zero(R), FinModule::free(R, 1), FinModule::free(R, 2)};
    Tally t;
    for (int code = 0; code < 81; ++code) {
        std::vector<FinModule> E;
        for (int i = 0, c = code; i < 4; ++i, c /= 3) E.push_back(choices[static_cast<std::size_t>(c % 3)]);
        LineEnvelope e = line_envelope(R, E);
        t.check(e.verdict.is_injective() && line_criterion(e.envelope).holds && e.essential && is_mono(e.embedding),
                "family " + std::to_string(code));
    }
    pass = t.failures == 0;
    return t.summary("families");
}

inline std::string criterion_torsion(std::uint64_t seed, bool& pass) {
    using namespace detail;
    Tally t;
    for (const Representation& G : line_suite(seed)) {
        if (!line_criterion(G).holds) continue;
        Representation tg = torsion_subrep(G).sub;
        t.check(line_criterion(tg).holds && local_injectivity_test(tg).is_injective(), "torsion part not injective");
    }
    pass = t.failures == 0 && t.cases > 0;
    return t.summary("injective line representations");
}

inline std::string criterion_flat_duality(std::uint64_t seed, bool& pass) {
    using namespace detail;
    brute::Rng rng(seed);
    Tally t;
    int flat = 0;
    for (int i = 0; i < 500; ++i) {
        BaseRing R = i % 2 ? Z4() : F2();
        Quiver Q = i % 5 == 0 ? quivers::cospan()
                 : i % 5 == 1 ? quivers::two_branch()
                              : brute::random_dag(rng, 2 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 5));
        Representation F = i % 4 == 0 ? dual_representation(random_injective(rng, R, opposite(Q), 1 + static_cast<int>(rng() % 2)))
                                      : brute::random_rep(rng, R, Q, 2, 16);
        FlatVerdict v = is_flat_representation(F);
        flat += v.flat;
        t.check(v.agree, "case " + std::to_string(i));
    }
    pass = t.failures == 0;
    return t.summary("cases") + " (" + std::to_string(flat) + " flat)";
}

inline std::string criterion_injdim(std::uint64_t seed, bool& pass) {
    using namespace detail;
    brute::Rng rng(seed);
    Tally t;
    for (int i = 0; i < 200; ++i) {
        BaseRing R = i % 3 == 0 ? F2() : i % 3 == 1 ? Z4() : Z8();
        Quiver Q = i % 3 == 0 ? quivers::linear(3) : i % 3 == 1 ? quivers::two_branch() : quivers::cospan();
        std::map<std::string, FinModule> mods;
        std::map<std::string, ModuleMap> maps;
        for (const auto& v : Q.vertices()) mods[v] = FinModule::free(R, rng() % 3);
        for (const auto& a : Q.arrows()) maps[a.id] = brute::random_map(rng, mods[a.src], mods[a.tgt]);
        DimensionReport d = injdim_representation(Representation::finite(R, Q, mods, maps));
        t.check(d.vertex_sup && d.exact && *d.exact <= *d.vertex_sup + 1, "case " + std::to_string(i));
    }
    DimensionReport w = injdim_representation(a2(Z4(), FinModule::free(Z4(), 1), FinModule::free(Z4(), 1), Matrix::from_rows({{2}})));
    bool witness = w.vertex_sup == 0 && w.exact == 1;
    pass = t.failures == 0 && witness;
    return t.summary("cases") + "; witness sup " + (w.vertex_sup ? std::to_string(*w.vertex_sup) : "inf") + ", exact " +
           (w.exact ? std::to_string(*w.exact) : "inf");
}

inline std::string criterion_gorenstein(std::uint64_t seed, bool& pass) {
    using namespace detail;
    BaseRing R = Z4();
    FinModule h = FinModule::from_factors(R, {1}), f = FinModule::free(R, 1);
    Representation A = a2(R, h, h, Matrix::identity(1));
    Representation B = a2(R, f, f, Matrix::from_rows({{2}}));
    Representation C = a2(R, FinModule::zero(R), f, Matrix(1, 0));
    GorensteinVerdict a_gi = gorenstein_injective_test(A, true);
    bool a = a_gi.holds && a_gi.witness && a_gi.witness->ok() && gorenstein_flat_test(A).holds &&
             !local_injectivity_test(A).is_injective();
    bool b = !gorenstein_injective_test(B).holds && !gorenstein_flat_test(B).holds && !gorenstein_projective_test(B).holds &&
             !is_flat_representation(B).flat && !local_injectivity_test(B).is_injective();
    bool c = gorenstein_projective_test(C).holds && is_flat_representation(C).flat;
    brute::Rng rng(seed);
    Tally t;
    for (int i = 0; i < 200; ++i) {
        BaseRing S = i % 2 ? Z4() : Z8();
        Quiver Q = i % 3 == 0 ? quivers::linear(2) : i % 3 == 1 ? quivers::cospan() : quivers::a_inf_plus();
        Representation X = Q.is_finite() ? brute::random_rep(rng, S, Q, 2, 64) : brute::random_window_rep(rng, S, Q, 2, 2, 64);
        GorensteinVerdict v = gorenstein_flat_test(X);
        t.check(v.cross_check && *v.cross_check == v.holds, "case " + std::to_string(i));
    }
    pass = a && b && c && t.failures == 0;
    return std::string("examples ") + (a ? "ok" : "WRONG") + "/" + (b ? "ok" : "WRONG") + "/" + (c ? "ok" : "WRONG") + "; " +
           t.summary("flat cross-checks");
}

inline std::string criterion_a2_extension(std::uint64_t seed, bool& pass) {
    using namespace detail;
    brute::Rng rng(seed);
    Tally t;
    Quiver Q = quivers::linear(2);
    for (int i = 0; i < 100; ++i) {
        BaseRing R = i % 2 ? Z4() : F3();
        Representation X = brute::random_rep(rng, R, Q, 2, 16);
        Representation E = random_injective(rng, R, Q, 1 + static_cast<int>(rng() % 3));
        SubRepresentation S = random_sub(rng, X);
        RepMorphism h = random_morphism(rng, S.sub, E);
        t.check(extension_ok(S.inclusion, h, extend_morphism(S.inclusion, h)), "problem " + std::to_string(i));
    }
    pass = t.failures == 0;
    return t.summary("problems");
}

inline std::string criterion_classifier(std::uint64_t seed, bool& pass) {
    brute::Rng rng(seed);
    auto is = [](const Quiver& Q, SourceInjectiveReason r) {
        auto v = classify_source_injective(Q);
        return v.yes && *v.yes == r;
    };
    bool ok = is(quivers::linear(2), SourceInjectiveReason::RightRooted);
    for (int i = 0; i < 20; ++i) ok = ok && is(brute::random_tree(rng, 2 + static_cast<int>(rng() % 7)), SourceInjectiveReason::RightRooted);
    ok = ok && is(quivers::a_inf_plus(), SourceInjectiveReason::BarrenForest);
    ok = ok && is(quivers::figure_tree(), SourceInjectiveReason::BarrenForest);
    ok = ok && is(quivers::a_inf_both(), SourceInjectiveReason::AInfBoth);
    auto loop = classify_source_injective(quivers::single_loop());
    ok = ok && !loop.yes && loop.annotation == kLoopAnnotation;
    pass = ok;
    return "A2, 20 random trees, a_inf_plus, figure tree, a_inf_both, loop: " + loop.label();
}

struct Entry {
    int id;
    const char* name;
    std::string (*run)(std::uint64_t, bool&);
};

inline const std::vector<Entry>& criteria() {
    static const std::vector<Entry> all{
        {1, "local test agrees with the Baer oracle", criterion_local_vs_baer},
        {2, "adjunction bijection", criterion_adjunction},
        {3, "tree decomposition recovers summands", criterion_decomposition},
        {4, "line criterion: accepted extend, rejected have a pair", criterion_line_criterion},
        {5, "line envelopes are injective and essential", criterion_envelopes},
        {6, "torsion part of an injective line rep is injective", criterion_torsion},
        {7, "flat iff dual injective", criterion_flat_duality},
        {8, "injective dimension within sup + 1", criterion_injdim},
        {9, "Gorenstein verdicts and flat cross-check", criterion_gorenstein},
        {10, "extension over A2", criterion_a2_extension},
        {11, "quiver classifier", criterion_classifier},
    };
    return all;
}

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Runs every criterion; `on_result` sees each one as it finishes.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed,
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
    std::vector<CriterionResult> out;
    for (const Entry& e : criteria()) {
        CriterionResult r{e.id, e.name, false, "", 0};
        auto start = std::chrono::steady_clock::now();
        try {
            r.detail = e.run(seed + static_cast<std::uint64_t>(e.id), r.pass);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("threw: ") + ex.what();
        }
        r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace quivinj::selftest
