#include <gtest/gtest.h>

#include "quivinj/brute.hpp"

using namespace quivinj;

namespace {

BaseRing F2() { return BaseRing::gf(2); }
BaseRing Z4() { return BaseRing::zmod(2, 2); }
FinModule mod(const BaseRing& R, std::vector<int> e) { return FinModule::from_factors(R, std::move(e)); }

Representation a2(const BaseRing& R, const FinModule& M1, const FinModule& M2, const Matrix& m) {
    return Representation::finite(R, quivers::linear(2), {{"1", M1}, {"2", M2}}, {{"a1", ModuleMap(M1, M2, m)}});
}

}  // namespace

TEST(MakeRepresentation, Examples) {
    FinModule k = FinModule::vector_space(F2(), 1);
    EXPECT_NO_THROW(a2(F2(), k, k, Matrix::identity(1)));
    try {
        a2(Z4(), mod(Z4(), {2}), mod(Z4(), {1}), Matrix::from_rows({{1}, {1}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
    }
    FinModule Z4m = mod(Z4(), {2});
    Representation X = make_representation(Z4(), quivers::a_inf_plus(), {{"0", Z4m}}, {},
                                           {{"*", TailSpec{1, TailKind::EventuallyIso, Z4m, {}}}});
    EXPECT_EQ(X.module("17"), Z4m);
    EXPECT_EQ(X.map("a9"), ModuleMap::identity(Z4m));
    try {
        make_representation(Z4(), quivers::a_inf_plus(), {{"0", Z4m}}, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TailUnderspecified);
    }
}

TEST(MakeRepresentation, ZeroAndPeriodicTails) {
    FinModule Z4m = mod(Z4(), {2});
    Representation X = make_representation(Z4(), quivers::a_inf_plus(), {{"0", Z4m}, {"1", Z4m}}, {{"a0", ModuleMap::identity(Z4m)}},
                                           {{"*", TailSpec{2, TailKind::EventuallyZero, std::nullopt, {}}}});
    EXPECT_TRUE(X.module("2").is_zero());
    EXPECT_TRUE(X.module("40").is_zero());
    ModuleMap two(Z4m, Z4m, Matrix::from_rows({{2}}));
    Representation P = make_representation(Z4(), quivers::a_inf_plus(), {{"0", Z4m}}, {},
                                           {{"*", TailSpec{1, TailKind::EventuallyPeriodic, std::nullopt, {two}}}});
    EXPECT_EQ(P.map("a0"), two);
    EXPECT_EQ(P.map("a5"), two);
    EXPECT_TRUE(P.has_periodic_tail());
}

TEST(SourceMap, Examples) {
    BaseRing F = F2();
    Representation X = a2(F, FinModule::vector_space(F, 2), FinModule::vector_space(F, 1), Matrix::from_rows({{1, 0}}));
    EXPECT_EQ(source_map(X, "1").matrix(), Matrix::from_rows({{1, 0}}));
    ModuleMap f2 = source_map(X, "2");
    EXPECT_TRUE(f2.codomain().is_zero());
    EXPECT_EQ(f2.domain().rank(), 1u);
    FinModule Z4m = mod(Z4(), {2});
    Representation L = Representation::finite(Z4(), quivers::single_loop(), {{"v", Z4m}},
                                              {{"a", ModuleMap(Z4m, Z4m, Matrix::from_rows({{2}}))}});
    EXPECT_EQ(source_map(L, "v").matrix(), Matrix::from_rows({{2}}));
}

TEST(SinkMap, Examples) {
    BaseRing F = F2();
    FinModule k = FinModule::vector_space(F, 1);
    Representation X = a2(F, k, k, Matrix::identity(1));
    EXPECT_EQ(sink_map(X, "2"), ModuleMap::identity(k));
    EXPECT_TRUE(sink_map(X, "1").domain().is_zero());
    FinModule k2 = FinModule::vector_space(F, 2);
    Matrix f = Matrix::from_rows({{1, 0}, {1, 1}}), g = Matrix::from_rows({{0, 1}, {1, 0}});
    Representation K = Representation::finite(F, quivers::kronecker(), {{"1", k2}, {"2", k2}},
                                              {{"a", ModuleMap(k2, k2, f)}, {"b", ModuleMap(k2, k2, g)}});
    EXPECT_EQ(sink_map(K, "2").matrix(), Matrix::from_rows({{1, 0, 0, 1}, {1, 1, 1, 0}}));
}

TEST(MorphismOps, KernelExample) {
    FinModule Z4m = mod(Z4(), {2});
    Representation X = a2(Z4(), Z4m, Z4m, Matrix::identity(1));
    Representation Y = a2(Z4(), Z4m, Z4m, Matrix::from_rows({{2}}));
    RepMorphism eta = make_morphism(X, Y, {{"1", ModuleMap::identity(Z4m)}, {"2", ModuleMap(Z4m, Z4m, Matrix::from_rows({{2}}))}});
    auto K = kernel(eta);
    EXPECT_TRUE(K.sub.module("1").is_zero());
    EXPECT_EQ(K.sub.module("2"), mod(Z4(), {1}));
    EXPECT_TRUE(is_natural(K.inclusion));
    EXPECT_TRUE(kernel(identity_morphism(X)).sub.is_zero());
    auto C = cokernel(zero_morphism(X, Y));
    EXPECT_EQ(C.quotient, Y);
}

TEST(HomReps, Examples) {
    BaseRing F = F2();
    FinModule k = FinModule::vector_space(F, 1);
    Representation X = a2(F, k, k, Matrix::identity(1));
    EXPECT_EQ(hom_reps(X, X).size(), 2u);
    Representation Z = Representation::zero(F, quivers::linear(2));
    auto h = hom_reps(X, Z);
    ASSERT_EQ(h.size(), 1u);
    EXPECT_TRUE(is_zero(h[0]));
    h = hom_reps(Z, X);
    ASSERT_EQ(h.size(), 1u);
    EXPECT_TRUE(is_zero(h[0]));
}

TEST(HomReps, BudgetExceeded) {
    BaseRing F = BaseRing::gf(4);
    FinModule k3 = FinModule::vector_space(F, 3);
    Representation X = Representation::finite(F, quivers::linear(1), {{"1", k3}}, {});
    EXPECT_THROW(hom_reps(X, X, 1000), BudgetExceeded);
}

TEST(HomReps, AgreesWithTupleEnumeration) {
    brute::Rng rng(31);
    std::vector<Quiver> qs = {quivers::linear(2), quivers::linear(3), quivers::two_branch(), quivers::cospan(),
                              quivers::kronecker(), quivers::single_loop()};
    for (BaseRing R : {F2(), Z4(), BaseRing::gf(3)}) {
        for (int trial = 0; trial < 40; ++trial) {
            const Quiver& Q = qs[rng() % qs.size()];
            Representation X = brute::random_rep(rng, R, Q, 2, 16), Y = brute::random_rep(rng, R, Q, 2, 16);
            auto homs = hom_reps(X, Y);
            EXPECT_EQ(homs.size(), brute::hom_count(X, Y));
            for (const auto& f : homs) EXPECT_TRUE(is_natural(f));
            std::set<std::map<std::string, std::vector<Elem>>> distinct;
            for (const auto& f : homs) {
                std::map<std::string, std::vector<Elem>> key;
                for (const auto& [v, m] : f.comp) key[v] = m.matrix().data;
                distinct.insert(key);
            }
            EXPECT_EQ(distinct.size(), homs.size());
        }
    }
}

TEST(HomReps, DirectSumMultiplies) {
    brute::Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        BaseRing R = trial % 2 ? Z4() : F2();
        Quiver Q = trial % 3 ? quivers::linear(2) : quivers::two_branch();
        Representation X = brute::random_rep(rng, R, Q, 1), X2 = brute::random_rep(rng, R, Q, 1), Y = brute::random_rep(rng, R, Q, 2);
        EXPECT_EQ(hom_cardinality(direct_sum(X, X2), Y), hom_cardinality(X, Y) * hom_cardinality(X2, Y));
        EXPECT_EQ(brute::hom_count(direct_sum(X, X2), Y), brute::hom_count(X, Y) * brute::hom_count(X2, Y));
    }
}

TEST(MorphismOps, UniversalPropertiesByEnumeration) {
    brute::Rng rng(41);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        BaseRing R = trial % 2 ? Z4() : F2();
        Quiver Q = trial % 3 ? quivers::linear(2) : quivers::cospan();
        Representation X = brute::random_rep(rng, R, Q, 1, 4), Y = brute::random_rep(rng, R, Q, 1, 4),
                       Z = brute::random_rep(rng, R, Q, 1, 4);
        if (X.window_cardinality() * Y.window_cardinality() * Z.window_cardinality() > 256) continue;
        auto homs = hom_reps(X, Y);
        const RepMorphism& f = homs[rng() % homs.size()];
        auto K = kernel(f);
        auto C = cokernel(f);
        EXPECT_TRUE(is_zero(compose(f, K.inclusion)));
        EXPECT_TRUE(is_zero(compose(C.projection, f)));
        // every g with f g = 0 factors uniquely through the kernel
        std::uint64_t killed = 0;
        for (const auto& g : hom_reps(Z, X)) {
            if (!is_zero(compose(f, g))) continue;
            ++killed;
            for (const auto& v : Z.vertices()) {
                ModuleMap gv = g.component(v);
                for (std::size_t j = 0; j < gv.domain().rank(); ++j)
                    EXPECT_TRUE(linear_solve(K.inclusion.component(v), gv.matrix().column(j)).has_value());
            }
        }
        EXPECT_EQ(killed, hom_cardinality(Z, K.sub));
        std::uint64_t coker = 0;
        for (const auto& g : hom_reps(Y, Z))
            if (is_zero(compose(g, f))) ++coker;
        EXPECT_EQ(coker, hom_cardinality(C.quotient, Z));
        ++checked;
    }
    EXPECT_GT(checked, 20);
}

TEST(Tails, DeeperWindowsGiveTheSameAnswers) {
    brute::Rng rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        BaseRing R = Z4();
        FinModule E = brute::random_module(rng, R, 2, 16), F = brute::random_module(rng, R, 2, 16);
        FinModule P = brute::random_module(rng, R, 2, 16);
        Representation X = make_representation(R, quivers::a_inf_plus(), {{"0", P}}, {{"a0", brute::random_map(rng, P, E)}},
                                               {{"*", TailSpec{1, TailKind::EventuallyIso, E, {}}}});
        Representation Y = make_representation(R, quivers::a_inf_plus(), {{"0", F}}, {},
                                               {{"*", TailSpec{1, TailKind::EventuallyIso, F, {}}}});
        for (int d : {1, 2}) {
            Representation Xd = X.extended(d), Xd5 = X.extended(d + 5);
            EXPECT_EQ(hom_cardinality(Xd, Y), hom_cardinality(Xd5, Y));
            EXPECT_EQ(hom_cardinality(Y, Xd), hom_cardinality(Y, Xd5));
            for (const std::string v : {"0", "1", "2"}) {
                EXPECT_EQ(source_map(Xd, v), source_map(Xd5, v));
                EXPECT_EQ(Xd.module(v), Xd5.module(v));
            }
        }
        // the window Hom agrees with enumeration on a deep finite truncation
        EXPECT_EQ(hom_cardinality(X, Y), brute::hom_count(X.extended(3), Y.extended(3), std::uint64_t{1} << 24));
    }
}
