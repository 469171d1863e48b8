#include <gtest/gtest.h>

#include "quivinj/brute.hpp"
#include "quivinj/injclass.hpp"

using namespace quivinj;

namespace {

BaseRing F2() { return BaseRing::gf(2); }
BaseRing F3() { return BaseRing::gf(3); }
BaseRing Z4() { return BaseRing::zmod(2, 2); }
FinModule mod(const BaseRing& R, std::vector<int> e) { return FinModule::from_factors(R, std::move(e)); }

Representation a2(const BaseRing& R, const FinModule& M1, const FinModule& M2, const Matrix& m) {
    return Representation::finite(R, quivers::linear(2), {{"1", M1}, {"2", M2}}, {{"a1", ModuleMap(M1, M2, m)}});
}

Representation line(const BaseRing& R, std::vector<FinModule> mods, std::vector<ModuleMap> maps, TailSpec tail) {
    std::map<std::string, FinModule> m;
    std::map<std::string, ModuleMap> a;
    for (std::size_t i = 0; i < mods.size(); ++i) m[std::to_string(i)] = mods[i];
    for (std::size_t i = 0; i < maps.size(); ++i) a["a" + std::to_string(i)] = maps[i];
    tail.prefix_length = static_cast<int>(mods.size());
    return make_representation(R, quivers::a_inf_plus(), m, a, {{"*", tail}});
}

TailSpec iso_tail(const FinModule& E) { return TailSpec{1, TailKind::EventuallyIso, E, {}}; }
TailSpec zero_tail() { return TailSpec{1, TailKind::EventuallyZero, std::nullopt, {}}; }

// random injective: a direct sum of right adjoints applied to free seeds
Representation random_injective(brute::Rng& rng, const BaseRing& R, const Quiver& Q, int pieces) {
    std::vector<std::string> targets = materialize(Q, 2).vertices();
    for (const RayInfo& r : rays(Q))
        if (!r.incoming) targets.push_back("inf:" + r.id);
    std::vector<Representation> parts{Representation::zero(R, Q)};
    for (int i = 0; i < pieces; ++i)
        parts.push_back(e_star(R, Q, targets[rng() % targets.size()], FinModule::free(R, 1)));
    return direct_sum(parts).sum;
}

Vec random_vec(brute::Rng& rng, const FinModule& M) { return brute::random_element(rng, M); }

// random subrepresentation generated by a couple of random elements
SubRepresentation random_sub(brute::Rng& rng, const Representation& X) {
    std::vector<std::pair<std::string, Vec>> gens;
    int n = static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
        const std::string& v = X.vertices()[rng() % X.vertices().size()];
        gens.push_back({v, random_vec(rng, X.module(v))});
    }
    return generated_subrep(X, gens);
}

RepMorphism random_morphism(brute::Rng& rng, const Representation& X, const Representation& Y) {
    HomSpace H(X, Y);
    return H.decode(random_vec(rng, H.module()));
}

}  // namespace

TEST(LocalTest, Examples) {
    BaseRing F = F2();
    FinModule k = FinModule::vector_space(F, 1);
    Representation X = a2(F, k, k, Matrix::identity(1));
    EXPECT_EQ(local_injectivity_test(X).state, InjectivityState::Injective);
    EXPECT_TRUE(baer_oracle(X).injective);

    Representation Y = a2(F, FinModule::zero(F), k, Matrix(1, 0));
    InjectivityVerdict vy = local_injectivity_test(Y);
    EXPECT_EQ(vy.state, InjectivityState::NotInjective);
    EXPECT_NE(vy.failure.find("source map at 1"), std::string::npos);
    EXPECT_FALSE(baer_oracle(Y).injective);

    BaseRing R = Z4();
    FinModule z2 = mod(R, {1});
    InjectivityVerdict vz = local_injectivity_test(a2(R, z2, z2, Matrix::identity(1)));
    EXPECT_EQ(vz.state, InjectivityState::NotInjective);
    EXPECT_NE(vz.failure.find("not injective"), std::string::npos);
}

TEST(LocalTest, LoopPassesLocallyButStaysUnknown) {
    BaseRing F = F2();
    FinModule k = FinModule::vector_space(F, 1);
    Representation X = Representation::finite(F, quivers::single_loop(), {{"v", k}}, {{"a", ModuleMap::identity(k)}});
    InjectivityVerdict v = local_injectivity_test(X);
    EXPECT_EQ(v.state, InjectivityState::LocalPassButQuiverUnknown);
    EXPECT_NE(v.quiver.annotation.find("is not divisible as a k[x]-module"), std::string::npos);
}

TEST(LocalTest, AgreesWithBaerOnRandomInputs) {
    brute::Rng rng(21);
    for (const BaseRing& R : {F2(), Z4()}) {
        for (const Quiver& Q : {quivers::linear(2), quivers::linear(3), quivers::two_branch(), quivers::cospan()}) {
            BaerTestSet tests = baer_test_set(R, Q);
            int injective = 0;
            for (int trial = 0; trial < 40; ++trial) {
                Representation X = trial % 3 == 0 ? random_injective(rng, R, Q, 1 + static_cast<int>(rng() % 2))
                                                  : brute::random_rep(rng, R, Q, 2, 16);
                bool local = local_injectivity_test(X).is_injective();
                EXPECT_EQ(local, baer_oracle(X, tests).injective);
                injective += local;
            }
            EXPECT_GT(injective, 0);
        }
    }
}

TEST(LocalTest, LineCriterionAgrees) {
    brute::Rng rng(22);
    BaseRing R = Z4();
    for (int trial = 0; trial < 60; ++trial) {
        Representation X = trial % 2 ? random_injective(rng, R, quivers::a_inf_plus(), 2)
                                     : brute::random_window_rep(rng, R, quivers::a_inf_plus(), 2, 2, 16);
        EXPECT_EQ(local_injectivity_test(X).is_injective(), line_criterion(X).holds);
    }
    FinModule k = FinModule::vector_space(F2(), 1);
    Representation G = line(F2(), {FinModule::zero(F2()), k}, {ModuleMap::zero(FinModule::zero(F2()), k)}, iso_tail(k));
    EXPECT_FALSE(local_injectivity_test(G).local_pass());
    EXPECT_NE(line_criterion(G).failure.find("not surjective"), std::string::npos);
}

TEST(Extend, Example) {
    BaseRing R = Z4();
    FinModule M = mod(R, {2});
    Representation X = a2(R, M, M, Matrix::identity(1));
    SubRepresentation S = generated_subrep(X, {{"1", Vec{2}}});
    EXPECT_EQ(S.sub.module("1").cardinality(), 2u);
    RepMorphism t = extend_morphism(S.inclusion, S.inclusion);
    EXPECT_EQ(t, identity_morphism(X));
}

TEST(Extend, RandomProblems) {
    brute::Rng rng(23);
    std::vector<Quiver> qs{quivers::linear(2), quivers::linear(3), quivers::two_branch(), quivers::cospan(),
                           quivers::a_inf_plus(), quivers::a_inf_both(), quivers::figure_tree(),
                           opposite(quivers::a_inf_plus())};
    for (const BaseRing& R : {F3(), Z4()}) {
        for (const Quiver& Q : qs) {
            for (int trial = 0; trial < 8; ++trial) {
                Representation X = brute::random_window_rep(rng, R, Q, 1 + static_cast<int>(rng() % 2), 2, 9);
                Representation E = random_injective(rng, R, Q, 1 + static_cast<int>(rng() % 3));
                ASSERT_TRUE(local_injectivity_test(E).is_injective());
                SubRepresentation S = random_sub(rng, X);
                RepMorphism h = random_morphism(rng, S.sub, E);
                RepMorphism t = extend_morphism(S.inclusion, h);
                EXPECT_TRUE(is_natural(t));
                EXPECT_EQ(compose(t, S.inclusion), extended(h, t.dom.depths()));
            }
        }
    }
}

TEST(Extend, Refusals) {
    BaseRing F = F2();
    FinModule k = FinModule::vector_space(F, 1);
    Representation Y = a2(F, FinModule::zero(F), k, Matrix(1, 0));
    RepMorphism id = identity_morphism(Y);
    try {
        extend_morphism(id, id);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInjective);
    }
    Representation L = Representation::finite(F, quivers::single_loop(), {{"v", k}}, {{"a", ModuleMap::identity(k)}});
    try {
        extend_morphism(identity_morphism(L), identity_morphism(L));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::QuiverUnknown);
    }
}

TEST(NonExtendable, MatchesVerdict) {
    brute::Rng rng(24);
    for (const Quiver& Q : {quivers::linear(3), quivers::two_branch(), quivers::a_inf_plus()}) {
        for (int trial = 0; trial < 15; ++trial) {
            Representation G = trial % 3 ? brute::random_window_rep(rng, Z4(), Q, 2, 2, 16)
                                         : random_injective(rng, Z4(), Q, 2);
            bool injective = local_injectivity_test(G).is_injective();
            auto pair = non_extendable_pair(G);
            EXPECT_EQ(injective, !pair.has_value());
            if (pair) {
                EXPECT_TRUE(is_mono(pair->mono));
            }
        }
    }
}

TEST(Decompose, Examples) {
    BaseRing F = F2();
    FinModule k = FinModule::vector_space(F, 1);
    Representation X = a2(F, FinModule::vector_space(F, 2), k, Matrix::from_rows({{1, 0}}));
    TreeDecomposition d = decompose_injective_tree(X);
    std::vector<DecompositionEntry> want{{"1", k, 1}, {"2", k, 1}};
    EXPECT_EQ(d.entries, want);
    EXPECT_TRUE(is_iso(d.iso));
    EXPECT_EQ(d.certificate.kind, CertificateKind::IsomorphismPair);

    EXPECT_TRUE(decompose_injective_tree(Representation::zero(F, quivers::linear(3))).entries.empty());

    Representation line_k = e_star(F, quivers::a_inf_plus(), "w", k);
    std::vector<DecompositionEntry> ray{{"inf:w", k, 1}};
    EXPECT_EQ(decompose_injective_tree(line_k).entries, ray);

    try {
        decompose_injective_tree(a2(F, FinModule::zero(F), k, Matrix(1, 0)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInjective);
    }
    try {
        decompose_injective_tree(a2(Z4(), mod(Z4(), {2}), mod(Z4(), {2}), Matrix::identity(1)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonFieldBase);
    }
}

TEST(Decompose, RecoversBuiltMultiplicities) {
    brute::Rng rng(25);
    for (const BaseRing& R : {F2(), F3()}) {
        FinModule k = FinModule::vector_space(R, 1);
        for (int trial = 0; trial < 30; ++trial) {
            Quiver Q = trial % 3 == 0 ? quivers::figure_tree()
                     : trial % 3 == 1 ? quivers::a_inf_plus()
                                      : brute::random_tree(rng, 2 + static_cast<int>(rng() % 4));
            std::vector<std::string> targets = Q.is_finite() ? Q.vertices() : materialize(Q, 2).vertices();
            for (const RayInfo& r : rays(Q)) targets.push_back("inf:" + r.id);
            std::map<std::string, int> want;
            std::vector<Representation> parts{Representation::zero(R, Q)};
            for (int i = 0; i < 1 + static_cast<int>(rng() % 4); ++i) {
                const std::string& t = targets[rng() % targets.size()];
                ++want[t];
                parts.push_back(e_star(R, Q, t, k));
            }
            Representation X = direct_sum(parts).sum;
            TreeDecomposition d = decompose_injective_tree(X);
            std::map<std::string, int> got;
            for (const auto& e : d.entries) got[e.target] += e.multiplicity;
            EXPECT_EQ(got, want);
            EXPECT_TRUE(is_iso(d.iso));
            EXPECT_TRUE(is_natural(d.iso));
        }
    }
}

TEST(Decompose, RandomInjectivesOnTrees) {
    // any local-test-injective rep over a random tree decomposes, and the
    // multiplicities add up to the window dimension count at the root side
    brute::Rng rng(26);
    BaseRing F = F2();
    int decomposed = 0;
    for (int trial = 0; trial < 200 && decomposed < 40; ++trial) {
        Quiver Q = brute::random_tree(rng, 2 + static_cast<int>(rng() % 3));
        Representation X = brute::random_rep(rng, F, Q, 2, 8);
        if (!local_injectivity_test(X).is_injective()) continue;
        ++decomposed;
        TreeDecomposition d = decompose_injective_tree(X);
        EXPECT_TRUE(is_iso(d.iso));
        std::uint64_t total = 0;
        for (const auto& e : d.entries) total += e.multiplicity;
        std::uint64_t kernels = 0;
        for (const auto& v : Q.vertices()) kernels += kernel(source_map(X, v)).module.rank();
        EXPECT_EQ(total, kernels);
    }
    EXPECT_GT(decomposed, 10);
}

TEST(Torsion, Examples) {
    BaseRing R = Z4();
    FinModule M = mod(R, {2});
    Representation inj = line(R, {M}, {}, iso_tail(M));
    EXPECT_TRUE(torsion_subrep(inj).sub.is_zero());
    Representation dies = line(R, {M, M}, {ModuleMap::identity(M)}, zero_tail());
    SubRepresentation t = torsion_subrep(dies);
    EXPECT_EQ(t.sub.module("0"), M);
    EXPECT_EQ(t.sub.module("1"), M);

    ModuleMap two(M, M, Matrix::from_rows({{2}}));
    ModuleMap three(M, M, Matrix::from_rows({{3}}));
    Representation nil = make_representation(R, quivers::a_inf_plus(), {{"0", M}}, {},
                                             {{"*", TailSpec{1, TailKind::EventuallyPeriodic, std::nullopt, {two}}}});
    EXPECT_EQ(torsion_subrep(nil).sub.module("0"), M);
    EXPECT_EQ(torsion_subrep(nil).sub.module("7"), M);
    Representation unit = make_representation(R, quivers::a_inf_plus(), {{"0", M}}, {},
                                              {{"*", TailSpec{1, TailKind::EventuallyPeriodic, std::nullopt, {three}}}});
    EXPECT_TRUE(torsion_subrep(unit).sub.is_zero());
}

TEST(Torsion, AgainstFarImages) {
    // t(X)_n by brute force: elements whose image twenty steps further out vanishes
    brute::Rng rng(27);
    BaseRing R = Z4();
    for (int trial = 0; trial < 40; ++trial) {
        Representation X = brute::random_window_rep(rng, R, quivers::a_inf_plus(), 3, 2, 16);
        SubRepresentation t = torsion_subrep(X);
        Representation far = X.extended(23);
        for (int n = 0; n <= 3; ++n) {
            ModuleMap p = detail::path_map(far, detail::ray_path(far.quiver(), "w", n, n + 20));
            std::uint64_t killed = 0;
            for (const Vec& x : elements(X.module(std::to_string(n)))) killed += is_zero_element(p.apply(x));
            EXPECT_EQ(t.sub.module(std::to_string(n)).cardinality(), killed);
        }
        // idempotent, and the quotient has injective maps
        EXPECT_EQ(torsion_subrep(t.sub).sub.window_cardinality(), t.sub.window_cardinality());
        QuotientRepresentation q = quotient(t);
        for (const auto& a : q.quotient.window().arrows()) EXPECT_TRUE(is_mono(q.quotient.map(a.id)));
    }
}

TEST(Envelope, Example) {
    BaseRing R = Z4();
    FinModule M = mod(R, {2});
    LineEnvelope e = line_envelope(R, {M, M});
    EXPECT_EQ(e.envelope.module("0"), mod(R, {2, 2}));
    EXPECT_EQ(e.envelope.module("1"), M);
    EXPECT_TRUE(e.envelope.module("2").is_zero());
    EXPECT_TRUE(e.envelope.module("9").is_zero());
    EXPECT_EQ(e.source.module("0"), mod(R, {2, 2}));
    EXPECT_TRUE(e.verdict.is_injective());
    EXPECT_TRUE(e.essential);
    EXPECT_TRUE(is_iso(e.embedding));
}

TEST(Envelope, EssentialAgainstSubrepEnumeration) {
    // essential iff every nonzero subrepresentation of the envelope meets the image
    brute::Rng rng(28);
    BaseRing R = Z4();
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<FinModule> E;
        for (int i = 0; i < 1 + static_cast<int>(rng() % 2); ++i) E.push_back(brute::random_module(rng, R, 1, 4));
        LineEnvelope e = line_envelope(R, E);
        std::map<std::string, Subobject> im;
        for (const auto& v : e.envelope.vertices()) im.emplace(v, image(e.embedding.component(v)));
        bool essential = true;
        for (const auto& S : brute::all_subreps(e.envelope)) {
            if (S.sub.is_zero()) continue;
            bool meets = false;
            for (const auto& v : e.envelope.vertices())
                for (const Vec& x : elements(S.sub.module(v))) {
                    Vec y = S.inclusion.component(v).apply(x);
                    if (!is_zero_element(y) && linear_solve(im.at(v).inclusion, y)) meets = true;
                }
            if (!meets) essential = false;
        }
        EXPECT_EQ(e.essential, essential);
        // injective summands give an envelope; Z/2 at stage 0 leaves an unreached Z/2 tail
        bool all_injective = std::all_of(E.begin(), E.end(), [](const FinModule& m) { return module_classify(m).is_injective; });
        if (all_injective) {
            EXPECT_TRUE(e.essential);
            EXPECT_TRUE(e.verdict.is_injective());
        }
    }
}

TEST(Split, IdentityChainAndRandomInjectives) {
    BaseRing F = F2();
    FinModule k = FinModule::vector_space(F, 1);
    Representation G = line(F, {k}, {}, iso_tail(k));
    LineSplit s = line_split(G);
    EXPECT_TRUE(s.torsion.sub.is_zero());
    EXPECT_EQ(s.torsion_free.module("5"), k);

    brute::Rng rng(29);
    BaseRing R = Z4();
    for (int trial = 0; trial < 20; ++trial) {
        Representation H = random_injective(rng, R, quivers::a_inf_plus(), 1 + static_cast<int>(rng() % 3));
        LineSplit sp = line_split(H);
        EXPECT_TRUE(is_iso(sp.iso));
        EXPECT_TRUE(local_injectivity_test(sp.torsion.sub).is_injective());
        EXPECT_EQ(sp.torsion_free.module("40"), H.module(H.end_vertex("w")));
    }
    Representation bad = line(F, {FinModule::zero(F), k}, {ModuleMap::zero(FinModule::zero(F), k)}, iso_tail(k));
    EXPECT_THROW(line_split(bad), Error);
}

TEST(Essential, TerminalElementsAgainstSubrepEnumeration) {
    // the terminal-element shortcut and the cyclic enumeration (loop quiver) against all subrepresentations
    brute::Rng rng(30);
    std::vector<Quiver> qs{quivers::linear(3), quivers::two_branch(), quivers::cospan(), quivers::kronecker(),
                           quivers::single_loop(), quivers::a_inf_plus()};
    int essential = 0;
    for (int trial = 0; trial < 90; ++trial) {
        BaseRing R = trial % 2 ? Z4() : F2();
        const Quiver& Q = qs[trial % qs.size()];
        Representation X = Q.is_finite() ? brute::random_rep(rng, R, Q, 2, 16) : brute::random_window_rep(rng, R, Q, 2, 1, 4);
        SubRepresentation S = random_sub(rng, X);
        bool want = true;
        for (const auto& T : brute::all_subreps(X)) {
            if (T.sub.is_zero()) continue;
            bool meets = false;
            for (const auto& v : X.vertices())
                for (const Vec& x : elements(T.sub.module(v))) {
                    Vec y = T.inclusion.component(v).apply(x);
                    if (!is_zero_element(y) && linear_solve(S.inclusion.component(v), y)) meets = true;
                }
            want = want && meets;
        }
        EssentialResult got = essential_check(S.inclusion);
        EXPECT_EQ(got.essential, want) << trial;
        essential += want;
    }
    EXPECT_GT(essential, 5);
}
