// quivinj: command-line front end.
//
// Exit codes: 0 definite verdict, 1 error, 2 undecided (quiver outside the
// supported classes), 3 budget exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "quivinj/json_io.hpp"
#include "quivinj/selftest.hpp"

using namespace quivinj;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kDefinite = 0, kError = 1, kUndecided = 2, kBudget = 3 };

struct Options {
    std::string ring;
    std::uint64_t budget = kDefaultBudget;
    std::string out;
    std::uint64_t seed = selftest::kDefaultSeed;
    bool json = false;
};

struct Report {
    Json body;
    std::string summary;
    int exit = kDefinite;
};

struct Input {
    std::string hash;
    Json json;
};

Input load(const std::string& path) {
    std::string text = read_file(path);
    return {fnv1a_hex(text), parse_json_text(text)};
}

std::optional<BaseRing> ring_override(const Options& o) {
    if (o.ring.empty()) return std::nullopt;
    return BaseRing::parse(o.ring);
}

Representation load_rep(const Json& j, const Options& o) { return representation_from_json(j, ring_override(o)); }

// lifts "certificate" out of a verdict so every report carries it at the top level
Json split_certificate(Json& result) {
    Json c = result.contains("certificate") ? result["certificate"] : certificate_to_json(Certificate{});
    result.erase("certificate");
    return c;
}

Report classify(const Json& in) {
    Quiver Q = quiver_from_json(in);
    SourceInjectiveVerdict v = classify_source_injective(Q);
    Report r;
    r.body["result"] = to_json(v);
    r.body["result"]["right_rooted"] = is_right_rooted(Q);
    r.body["result"]["left_rooted"] = is_left_rooted(Q);
    r.body["certificate"] = certificate_to_json(Certificate{});
    r.body["basis"] = "source-injective quiver classes: right-rooted quivers, barren forests, the two-sided line";
    r.summary = v.label() + (v.annotation.empty() ? "" : " (" + v.annotation + ")");
    r.exit = v.is_yes() ? kDefinite : kUndecided;
    return r;
}

Report inject_test(const Representation& X) {
    InjectivityVerdict v = local_injectivity_test(X);
    Report r;
    Json res = to_json(v);
    r.body["certificate"] = split_certificate(res);
    r.body["result"] = res;
    r.body["basis"] = "local criterion: injective vertex modules and split-epi source maps";
    r.summary = std::string(to_string(v.state)) + (v.failure.empty() ? "" : ": " + v.failure);
    r.exit = v.state == InjectivityState::LocalPassButQuiverUnknown ? kUndecided : kDefinite;
    return r;
}

Report decompose(const Representation& X) {
    TreeDecomposition d = decompose_injective_tree(X);
    Report r;
    Json res = to_json(d);
    r.body["certificate"] = split_certificate(res);
    r.body["result"] = res;
    r.body["basis"] = "injectives over trees split into right adjoints of evaluation at vertices and ray ends";
    std::string s;
    for (const auto& e : d.entries) s += (s.empty() ? "" : " + ") + std::to_string(e.multiplicity) + " x e_*^" + e.target + "(" + e.seed.describe() + ")";
    r.summary = s.empty() ? "0" : s;
    return r;
}

Report dual(const Representation& X) {
    Representation D = dual_representation(X);
    Report r;
    r.body["result"]["dual"] = representation_to_json(D);
    Certificate c;
    c.kind = CertificateKind::IsomorphismPair;
    RepMorphism ev = double_dual_evaluation(X);
    for (const auto& [v, m] : ev.comp) c.add("double dual evaluation at " + v, m.matrix());
    r.body["result"]["double_dual_iso"] = is_iso(ev);
    r.body["certificate"] = certificate_to_json(c);
    r.body["basis"] = "character dual exchanges representations of Q and its opposite";
    r.summary = representation_to_json(D).dump();
    return r;
}

Report flat_test(const Representation& X) {
    FlatVerdict v = is_flat_representation(X);
    Report r;
    Json res = to_json(v);
    r.body["certificate"] = split_certificate(res);
    r.body["result"] = res;
    r.body["basis"] = "flat over a left-rooted quiver iff the character dual is injective over the opposite quiver";
    r.summary = std::string(v.flat ? "flat" : "not flat: " + v.failure) + (v.agree ? "" : " (dual route disagrees)");
    return r;
}

Report gorenstein(const Representation& X, const std::string& which, bool witness) {
    Report r;
    Json res = Json::object(), cert = Json::object();
    std::string s;
    auto put = [&](const std::string& name, GorensteinVerdict v) {
        Json j = to_json(v);
        cert[name] = split_certificate(j);
        res[name] = j;
        s += (s.empty() ? "" : ", ") + name + (v.holds ? "" : " NOT");
    };
    if (which == "injective" || which == "all") put("injective", gorenstein_injective_test(X, witness));
    if (which == "projective" || which == "all") put("projective", gorenstein_projective_test(X));
    if (which == "flat" || which == "all") put("flat", gorenstein_flat_test(X));
    r.body["result"] = res;
    r.body["certificate"] = {{"kind", "per_class"}, {"classes", cert}};
    r.body["basis"] = "Gorenstein classes over quasi-Frobenius base rings: onto source maps, mono sink maps";
    r.summary = "Gorenstein: " + s;
    return r;
}

Report dims(const Representation& X) {
    DimensionReport d = injdim_representation(X);
    GinjdimReport g = ginjdim_bound(X);
    Report r;
    Json dj = to_json(d), gj = to_json(g);
    r.body["certificate"] = {{"kind", "per_dimension"}, {"injdim", split_certificate(dj)}, {"ginjdim", split_certificate(gj)}};
    r.body["result"] = {{"injdim", dj}, {"ginjdim", gj}};
    r.body["basis"] = "injective dimension at most the vertexwise supremum plus one; Gorenstein injective dimension at most one";
    auto show = [](const std::optional<int>& x) { return x ? std::to_string(*x) : std::string("inf"); };
    r.summary = "injdim " + show(d.exact) + " (vertex sup " + show(d.vertex_sup) + "), Gorenstein injdim " + show(g.exact);
    return r;
}

Report adjunction(const Representation& X, const std::string& vertex, const std::string& module, const Options& o) {
    FinModule M = module_from_json(X.ring(), parse_json_text(module), "--module");
    AdjunctionCheck c = verify_adjunction(X, vertex, M, o.budget, o.seed);
    Report r;
    Json res = to_json(c);
    r.body["certificate"] = split_certificate(res);
    r.body["result"] = res;
    r.body["basis"] = "evaluation at a vertex is left adjoint to the path-product construction";
    r.summary = std::string(c.ok() ? "bijection verified" : "adjunction check FAILED") + ": " + std::to_string(c.lhs) + " = " +
                std::to_string(c.rhs);
    r.exit = c.ok() ? kDefinite : kError;
    return r;
}

// {"sub": rep, "ambient": rep, "target": rep, "mono": {v: matrix}, "map": {v: matrix}}
Report extend(const Json& in, const Options& o) {
    auto ring = ring_override(o);
    Representation S = representation_from_json(detail::require_field(in, "sub", ""), ring);
    Representation X = representation_from_json(detail::require_field(in, "ambient", ""), ring);
    Representation E = representation_from_json(detail::require_field(in, "target", ""), ring);
    RepMorphism g = morphism_from_json(detail::require_field(in, "mono", ""), S, X, "mono");
    RepMorphism h = morphism_from_json(detail::require_field(in, "map", ""), S, E, "map");
    RepMorphism t = extend_morphism(g, h);
    Report r;
    Certificate c;
    c.kind = CertificateKind::Extension;
    for (const auto& [v, m] : t.comp) c.add("extension at " + v, m.matrix());
    c.note("t o g = h and naturality verified");
    r.body["result"]["extension"] = morphism_to_json(t);
    r.body["certificate"] = certificate_to_json(c);
    r.body["basis"] = "extension along monomorphisms into injectives, sinks first";
    r.summary = "extension: " + morphism_to_json(t).dump();
    return r;
}

Report run_selftest(const Options& o, bool verbose) {
    Report r;
    Json lines = Json::array();
    bool all = true;
    selftest::run_acceptance(o.seed, [&](const selftest::CriterionResult& c) {
        all = all && c.pass;
        lines.push_back({{"criterion", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        std::string line = std::string(c.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(c.id) + " (" + c.name + "): " + c.detail;
        if (verbose) std::cerr << line << "\n";
        r.summary += line + "\n";
    });
    r.body["result"] = {{"criteria", lines}, {"all_pass", all}};
    r.body["certificate"] = certificate_to_json(Certificate{});
    r.body["basis"] = "acceptance corpus";
    if (!r.summary.empty()) r.summary.pop_back();
    r.exit = all ? kDefinite : kError;
    return r;
}

int emit(const std::string& command, const std::string& hash, Report r, const Options& o) {
    Json report;
    report["schema_version"] = kSchemaVersion;
    report["tool"] = "quivinj";
    report["version"] = kVersion;
    report["command"] = command;
    report["input_hash"] = hash;
    report["seed"] = std::to_string(o.seed);
    report["exit_code"] = r.exit;
    for (auto it = r.body.begin(); it != r.body.end(); ++it) report[it.key()] = it.value();
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "error: cannot write " << o.out << "\n";
            return kError;
        }
        f << report.dump(2) << "\n";
    }
    if (o.json) std::cout << report.dump(2) << "\n";
    else std::cout << r.summary << "\n";
    return r.exit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Injectivity, flatness and Gorenstein tests for quiver representations over finite chain rings"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--ring", o.ring, "base ring: zmod:<p>^<k> or gf:<q> (overrides the file)");
    app.add_option("--budget", o.budget, "enumeration budget");
    app.add_option("--out", o.out, "write the JSON report here");
    app.add_option("--seed", o.seed, "seed for randomized probes");
    app.add_flag("--json", o.json, "print the JSON report");

    std::string file, vertex, module = "1", which = "all";
    bool witness = false;
    auto with_file = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("input", file, "JSON input")->required()->check(CLI::ExistingFile);
        return s;
    };
    CLI::App* c_classify = with_file("classify", "classify the quiver of a quiver or representation file");
    CLI::App* c_inject = with_file("inject-test", "local injectivity test");
    CLI::App* c_decompose = with_file("decompose", "decompose an injective over a tree (field base)");
    CLI::App* c_dual = with_file("dual", "character dual over the opposite quiver");
    CLI::App* c_flat = with_file("flat-test", "flatness over a left-rooted quiver");
    CLI::App* c_gor = with_file("gorenstein", "Gorenstein injective / projective / flat tests");
    c_gor->add_option("--class", which, "injective, projective, flat or all")->check(CLI::IsMember({"injective", "projective", "flat", "all"}));
    c_gor->add_flag("--witness", witness, "build a complete resolution for Gorenstein injectives");
    CLI::App* c_dims = with_file("dims", "injective and Gorenstein injective dimension");
    CLI::App* c_adj = with_file("adjunction-check", "verify Hom(X, e_*^v M) = Hom(X(v), M)");
    c_adj->add_option("--vertex", vertex, "vertex v, or inf:<ray>")->required();
    c_adj->add_option("--module", module, "M as an exponent array like [1,2], or a free rank");
    CLI::App* c_extend = with_file("extend", "extend a map along a monomorphism into an injective");
    CLI::App* c_self = app.add_subcommand("selftest", "run the acceptance corpus");

    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (c_self->parsed()) return emit(command, fnv1a_hex(""), run_selftest(o, o.json), o);
        Input in = load(file);
        Report r;
        if (c_classify->parsed()) r = classify(in.json);
        else if (c_inject->parsed()) r = inject_test(load_rep(in.json, o));
        else if (c_decompose->parsed()) r = decompose(load_rep(in.json, o));
        else if (c_dual->parsed()) r = dual(load_rep(in.json, o));
        else if (c_flat->parsed()) r = flat_test(load_rep(in.json, o));
        else if (c_gor->parsed()) r = gorenstein(load_rep(in.json, o), which, witness);
        else if (c_dims->parsed()) r = dims(load_rep(in.json, o));
        else if (c_adj->parsed()) r = adjunction(load_rep(in.json, o), vertex, module, o);
        else if (c_extend->parsed()) r = extend(in.json, o);
        return emit(command, in.hash, std::move(r), o);
    } catch (const Error& e) {
        int code = e.kind() == ErrorKind::BudgetExceeded ? kBudget : e.kind() == ErrorKind::QuiverUnknown ? kUndecided : kError;
        if (o.json) {
            Json report{{"schema_version", kSchemaVersion}, {"tool", "quivinj"}, {"version", kVersion}, {"command", command},
                        {"exit_code", code}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
            std::cout << report.dump(2) << "\n";
        }
        std::cerr << "error: " << e.what() << "\n";
        return code;
    }
}
