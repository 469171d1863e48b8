#include <gtest/gtest.h>

#include "quivinj/brute.hpp"
#include "quivinj/json_io.hpp"

using namespace quivinj;

namespace {

BaseRing Z4() { return BaseRing::zmod(2, 2); }

Representation roundtrip(const Representation& X) { return representation_from_json(representation_to_json(X)); }

}  // namespace

TEST(JsonQuiver, MinimalFile) {
    Quiver Q = quiver_from_json(parse_json_text(R"({"vertices":[1,2],"arrows":[{"id":"a","src":1,"tgt":2}]})"));
    EXPECT_EQ(Q.vertices().size(), 2u);
    EXPECT_EQ(Q.arrows().size(), 1u);
    EXPECT_EQ(Q.arrow("a").src, "1");
    EXPECT_EQ(quiver_from_json(quiver_to_json(Q)), Q);
}

TEST(JsonQuiver, ValidationAndParseErrors) {
    try {
        quiver_from_json(parse_json_text(R"({"vertices":["1"],"arrows":[{"id":"a","src":"1","tgt":"9"}]})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownVertex);
        EXPECT_NE(std::string(e.what()).find("unknown vertex"), std::string::npos);
    }
    try {
        parse_json_text("{\n  \"vertices\": [\n  1,,\n]}");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    try {
        quiver_from_json(parse_json_text(R"({"arrows":[{"id":"a","src":"1"}]})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("arrows[0].tgt"), std::string::npos);
    }
    EXPECT_THROW(quiver_from_json(parse_json_text(R"({"descriptor":{"kind":"spiral"}})")), Error);
}

TEST(JsonQuiver, DescriptorsRoundTrip) {
    for (const Quiver& Q : {quivers::a_inf_plus(), quivers::a_inf_both(), quivers::figure_tree(), quivers::complete_tree(3),
                            opposite(quivers::a_inf_plus()), quivers::single_loop(), quivers::kronecker()}) {
        Json j = quiver_to_json(Q);
        EXPECT_EQ(quiver_from_json(j), Q);
        EXPECT_EQ(quiver_to_json(quiver_from_json(j)).dump(), j.dump());
    }
}

TEST(JsonRep, DescriptorWithTail) {
    const char* text = R"({
      "descriptor": {"kind": "a_inf_plus"},
      "ring": "zmod:2^2",
      "modules": {"0": [1], "1": [2]},
      "maps": {"a0": [[2]]},
      "tail": {"prefix_length": 2, "kind": "eventually_iso", "module": [2]}
    })";
    Representation X = representation_from_json(parse_json_text(text));
    EXPECT_FALSE(X.quiver().is_finite());
    EXPECT_EQ(X.module("7"), FinModule::free(Z4(), 1));
    EXPECT_EQ(X.map("a0").matrix(), Matrix::from_rows({{2}}));
    EXPECT_EQ(roundtrip(X), X);

    // ring override, free-rank shorthand, zero tail
    const char* z = R"({"descriptor":{"kind":"a_inf_plus"},"modules":{"0":1},"tail":{"*":{"kind":"eventually_zero"}}})";
    Representation Y = representation_from_json(parse_json_text(z), BaseRing::gf(3));
    EXPECT_EQ(Y.ring(), BaseRing::gf(3));
    EXPECT_TRUE(Y.module("1").is_zero());
}

TEST(JsonRep, Errors) {
    EXPECT_THROW(representation_from_json(parse_json_text(R"({"vertices":["1"],"ring":"zmod:2^2","modules":{}})")), Error);
    try {
        representation_from_json(parse_json_text(
            R"({"vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"}],"ring":"gf:2","modules":{"1":[1],"2":[1]},"maps":{"a":[[1,1]]}})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("maps.a"), std::string::npos);
    }
    try {
        representation_from_json(parse_json_text(R"({"descriptor":{"kind":"a_inf_plus"},"ring":"gf:2","modules":{"0":[1]}})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("tail"), std::string::npos);
    }
}

TEST(JsonRep, RandomRoundTrips) {
    brute::Rng rng(41);
    std::vector<Quiver> qs{quivers::linear(3), quivers::cospan(), quivers::kronecker(), quivers::single_loop(),
                           quivers::a_inf_plus(), quivers::a_inf_both(), quivers::figure_tree(), opposite(quivers::a_inf_plus())};
    for (int trial = 0; trial < 80; ++trial) {
        BaseRing R = trial % 3 == 0 ? BaseRing::gf(4) : trial % 3 == 1 ? Z4() : BaseRing::zmod(3, 2);
        const Quiver& Q = qs[trial % qs.size()];
        Representation X = brute::random_window_rep(rng, R, Q, static_cast<int>(rng() % 3), 2, 81);
        Json j = representation_to_json(X);
        Representation Y = representation_from_json(j);
        EXPECT_EQ(representation_to_json(Y).dump(), j.dump());
        // same representation, possibly on a deeper window
        EXPECT_EQ(Y, X.extended(Y.depths()));
    }
}

TEST(JsonRep, PeriodicTail) {
    BaseRing R = Z4();
    FinModule M = FinModule::free(R, 1);
    ModuleMap two(M, M, Matrix::from_rows({{2}}));
    Representation X = make_representation(R, quivers::a_inf_plus(), {{"0", M}}, {},
                                           {{"*", TailSpec{1, TailKind::EventuallyPeriodic, std::nullopt, {two, ModuleMap::identity(M)}}}});
    Json j = representation_to_json(X);
    Representation Y = representation_from_json(j);
    EXPECT_EQ(Y.map("a3").matrix(), Matrix::identity(1));
    EXPECT_EQ(Y.map("a4").matrix(), Matrix::from_rows({{2}}));
    EXPECT_EQ(representation_to_json(Y).dump(), j.dump());
}

TEST(JsonReport, CertificateAndHash) {
    Certificate c;
    c.kind = CertificateKind::SectionMatrix;
    c.add("section at 1", Matrix::identity(2));
    c.note("checked");
    Json j = certificate_to_json(c);
    EXPECT_EQ(j["kind"], "section_matrix");
    EXPECT_EQ(j["matrices"][0]["matrix"], Json::parse("[[1,0],[0,1]]"));
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
