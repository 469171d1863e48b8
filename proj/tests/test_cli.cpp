#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "quivinj/json_io.hpp"

using quivinj::Json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    std::string cmd = std::string(QUIVINJ_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(QUIVINJ_DATA) + "/" + name; }

Json run_json(const std::string& args, int expect_code) {
    CliRun r = run("--json " + args);
    EXPECT_EQ(r.code, expect_code) << args << "\n" << r.out;
    return Json::parse(r.out);
}

}  // namespace

TEST(Cli, InjectTestDefinite) {
    Json j = run_json("inject-test " + data("a2_k_id_k.json"), 0);
    EXPECT_EQ(j["schema_version"], quivinj::kSchemaVersion);
    EXPECT_EQ(j["result"]["verdict"], "injective");
    EXPECT_TRUE(j.contains("certificate"));
    EXPECT_TRUE(j.contains("basis"));
    EXPECT_EQ(j["input_hash"], quivinj::fnv1a_hex(quivinj::read_file(data("a2_k_id_k.json"))));

    Json n = run_json("inject-test " + data("a2_zero_k.json"), 0);
    EXPECT_EQ(n["result"]["verdict"], "not_injective");
}

TEST(Cli, UndecidedQuiver) {
    Json c = run_json("classify " + data("loop.json"), 2);
    EXPECT_EQ(c["result"]["verdict"], "unknown");
    EXPECT_NE(c["result"]["annotation"].get<std::string>().find("single-loop"), std::string::npos);
    Json t = run_json("inject-test " + data("loop.json"), 2);
    EXPECT_EQ(t["result"]["verdict"], "local_pass_quiver_unknown");
    EXPECT_EQ(run("dims " + data("loop.json")).code, 2);
}

TEST(Cli, Classify) {
    EXPECT_EQ(run_json("classify " + data("line_constant.json"), 0)["result"]["verdict"], "yes(barren-forest)");
    EXPECT_EQ(run_json("classify " + data("a2_k_id_k.json"), 0)["result"]["verdict"], "yes(right-rooted)");
}

TEST(Cli, HomologicalCommands) {
    Json f = run_json("flat-test " + data("zero_to_z4.json"), 0);
    EXPECT_EQ(f["result"]["verdict"], "flat");
    EXPECT_EQ(f["result"]["dual_injective"], true);

    Json g = run_json("gorenstein --witness " + data("z2_id_z2.json"), 0);
    EXPECT_EQ(g["result"]["injective"]["holds"], true);
    EXPECT_EQ(g["result"]["flat"]["holds"], true);
    EXPECT_EQ(g["result"]["injective"]["witness"]["ok"], true);
    Json b = run_json("gorenstein --class injective " + data("z4_times_two.json"), 0);
    EXPECT_EQ(b["result"]["injective"]["holds"], false);
    EXPECT_FALSE(b["result"].contains("flat"));

    Json d = run_json("dims " + data("z4_times_two.json"), 0);
    EXPECT_EQ(d["result"]["injdim"]["vertex_sup"], 0);
    EXPECT_EQ(d["result"]["injdim"]["exact"], 1);

    Json dual = run_json("dual " + data("z4_times_two.json"), 0);
    EXPECT_EQ(dual["result"]["double_dual_iso"], true);
    EXPECT_EQ(dual["result"]["dual"]["descriptor"], nullptr);
    EXPECT_EQ(dual["result"]["dual"]["arrows"][0]["src"], "2");

    Json dec = run_json("decompose " + data("a2_k_id_k.json"), 0);
    EXPECT_EQ(dec["result"]["summands"].size(), 1u);
    EXPECT_EQ(dec["result"]["summands"][0]["target"], "2");
    EXPECT_EQ(dec["certificate"]["kind"], "isomorphism_pair");
}

TEST(Cli, AdjunctionAndExtension) {
    Json a = run_json("adjunction-check --vertex 2 --module [2] " + data("z4_times_two.json"), 0);
    EXPECT_EQ(a["result"]["ok"], true);
    EXPECT_EQ(a["result"]["hom_into_adjoint"], a["result"]["hom_at_vertex"]);
    EXPECT_EQ(run("--budget 1 adjunction-check --vertex 2 --module [2] " + data("z4_times_two.json")).code, 3);

    Json e = run_json("extend " + data("extend_a2.json"), 0);
    EXPECT_EQ(e["certificate"]["kind"], "extension");
    EXPECT_TRUE(e["result"]["extension"].contains("1"));
}

TEST(Cli, RingOverrideAndOutFile) {
    std::string out = (std::filesystem::temp_directory_path() / "quivinj_cli_report.json").string();
    CliRun r = run("--ring gf:3 --out " + out + " inject-test " + data("a2_k_id_k.json"));
    EXPECT_EQ(r.code, 0);
    Json j = Json::parse(quivinj::read_file(out));
    EXPECT_EQ(j["result"]["verdict"], "injective");
    std::filesystem::remove(out);
    EXPECT_EQ(run("--ring zmod:6 inject-test " + data("a2_k_id_k.json")).code, 1);
}

TEST(Cli, Errors) {
    Json d = run_json("classify " + data("dangling_arrow.json"), 1);
    EXPECT_NE(d["error"]["message"].get<std::string>().find("unknown vertex"), std::string::npos);
    Json m = run_json("inject-test " + data("malformed.json"), 1);
    EXPECT_NE(m["error"]["message"].get<std::string>().find("line 3"), std::string::npos);
    EXPECT_NE(run("frobnicate").code, 0);
    EXPECT_NE(run("inject-test /nonexistent.json").code, 0);
    Json t = run_json("decompose " + data("z4_times_two.json"), 1);
    EXPECT_EQ(t["error"]["kind"], "non-field base");
}

TEST(Cli, Deterministic) {
    CliRun a = run("--json --seed 7 adjunction-check --vertex 1 --module 1 " + data("z2_id_z2.json"));
    CliRun b = run("--json --seed 7 adjunction-check --vertex 1 --module 1 " + data("z2_id_z2.json"));
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}
