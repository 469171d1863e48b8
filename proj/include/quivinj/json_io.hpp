#pragma once

// JSON for quivers, representations, certificates and verdicts.
// Parsing validates everything through the domain constructors; serializing
// writes a normalized form, so serialize(parse(x)) is a fixed point.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "homdim.hpp"

namespace quivinj {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::Parse, "field '" + field + "': " + what);
}

inline const Json& require_field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) field_error(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) field_error(where.empty() ? key : where + "." + key, "missing");
    return *it;
}

// vertex and arrow names may be written as numbers
inline std::string name_of(const Json& j, const std::string& field) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    field_error(field, "expected a string or integer name");
}

inline DescriptorKind descriptor_kind(const std::string& s) {
    for (DescriptorKind k : {DescriptorKind::AInfPlus, DescriptorKind::AInfBoth, DescriptorKind::BarrenForest,
                             DescriptorKind::BranchingTree})
        if (s == to_string(k)) return k;
    field_error("descriptor.kind", "unknown kind '" + s + "'");
}

inline TailKind tail_kind(const std::string& s) {
    for (TailKind k : {TailKind::EventuallyZero, TailKind::EventuallyIso, TailKind::EventuallyPeriodic})
        if (s == to_string(k)) return k;
    field_error("tail.kind", "unknown kind '" + s + "'");
}

// byte offset -> 1-based line number
inline std::size_t line_of(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

}  // namespace detail

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Quivers

inline Json quiver_to_json(const Quiver& Q) {
    Json j;
    j["vertices"] = Q.vertices();
    Json arrows = Json::array();
    for (const auto& a : Q.arrows()) arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
    j["arrows"] = arrows;
    if (const auto& d = Q.descriptor()) {
        Json dj;
        dj["kind"] = to_string(d->kind);
        if (d->kind == DescriptorKind::BarrenForest) {
            Json rs = Json::array();
            for (const auto& r : d->rays) rs.push_back({{"attach", r.attach}, {"id", r.id}});
            dj["rays"] = rs;
        }
        if (d->kind == DescriptorKind::BranchingTree) dj["branching"] = d->branching;
        if (d->opposite) dj["opposite"] = true;
        j["descriptor"] = dj;
    }
    return j;
}

inline Quiver quiver_from_json(const Json& j) {
    if (!j.is_object()) detail::field_error("quiver", "expected an object");
    std::vector<std::string> vs;
    std::vector<Arrow> as;
    if (auto it = j.find("vertices"); it != j.end()) {
        if (!it->is_array()) detail::field_error("vertices", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) vs.push_back(detail::name_of((*it)[i], "vertices[" + std::to_string(i) + "]"));
    }
    if (auto it = j.find("arrows"); it != j.end()) {
        if (!it->is_array()) detail::field_error("arrows", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            std::string f = "arrows[" + std::to_string(i) + "]";
            const Json& a = (*it)[i];
            as.push_back({detail::name_of(detail::require_field(a, "id", f), f + ".id"),
                          detail::name_of(detail::require_field(a, "src", f), f + ".src"),
                          detail::name_of(detail::require_field(a, "tgt", f), f + ".tgt")});
        }
    }
    std::optional<Descriptor> desc;
    if (auto it = j.find("descriptor"); it != j.end() && !it->is_null()) {
        const Json& dj = *it;
        const Json& kind = detail::require_field(dj, "kind", "descriptor");
        if (!kind.is_string()) detail::field_error("descriptor.kind", "expected a string");
        Descriptor d;
        d.kind = detail::descriptor_kind(kind.get<std::string>());
        if (auto r = dj.find("rays"); r != dj.end()) {
            if (!r->is_array()) detail::field_error("descriptor.rays", "expected an array");
            for (std::size_t i = 0; i < r->size(); ++i) {
                std::string f = "descriptor.rays[" + std::to_string(i) + "]";
                d.rays.push_back({detail::name_of(detail::require_field((*r)[i], "attach", f), f + ".attach"),
                                  detail::name_of(detail::require_field((*r)[i], "id", f), f + ".id")});
            }
        }
        if (auto b = dj.find("branching"); b != dj.end()) {
            if (!b->is_number_integer()) detail::field_error("descriptor.branching", "expected an integer");
            d.branching = b->get<int>();
        }
        if (auto o = dj.find("opposite"); o != dj.end()) {
            if (!o->is_boolean()) detail::field_error("descriptor.opposite", "expected a boolean");
            d.opposite = o->get<bool>();
        }
        desc = d;
    }
    return Quiver(std::move(vs), std::move(as), std::move(desc));
}

// ---------------------------------------------------------------------------
// Modules, matrices, representations

inline Json module_to_json(const FinModule& M) { return M.exponents(); }

inline FinModule module_from_json(const BaseRing& R, const Json& j, const std::string& field) {
    if (j.is_number_integer()) {
        if (j.get<long long>() < 0) detail::field_error(field, "negative rank");
        return FinModule::free(R, j.get<std::size_t>());
    }
    if (!j.is_array()) detail::field_error(field, "expected an exponent array or a free rank");
    std::vector<int> e;
    for (const auto& x : j) {
        if (!x.is_number_integer()) detail::field_error(field, "exponents must be integers");
        int a = x.get<int>();
        if (a < 0 || a > R.length()) detail::field_error(field, "exponent " + std::to_string(a) + " outside 0.." + std::to_string(R.length()));
        e.push_back(a);
    }
    return FinModule::from_factors(R, std::move(e));
}

inline Json matrix_to_json(const Matrix& m) { return m.to_rows(); }

inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& field) {
    if (!j.is_array()) detail::field_error(field, "expected a row-major array of rows");
    if (j.size() != rows) detail::field_error(field, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            detail::field_error(field, "row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[i][c].is_number_integer()) detail::field_error(field, "entries must be integers");
            m(i, c) = j[i][c].get<Elem>();
        }
    }
    return m;
}

inline ModuleMap map_from_json(const Json& j, const FinModule& dom, const FinModule& cod, const std::string& field) {
    Matrix m = matrix_from_json(j, cod.rank(), dom.rank(), field);
    try {
        return ModuleMap(dom, cod, m);
    } catch (const Error& e) {
        throw Error(e.kind(), field + ": " + e.what());
    }
}

/// Normalized form: the quiver fields, the ring, every window module and map,
/// and one explicit tail rule per ray.
inline Json representation_to_json(const Representation& X0) {
    RayDepths d = X0.depths();
    for (auto& [r, k] : d) k = std::max(k, X0.periodic().count(r) ? 0 : 1);
    Representation X = X0.extended(d);
    Json j = quiver_to_json(X.quiver());
    j["ring"] = X.ring().descriptor();
    Json mods = Json::object(), maps = Json::object();
    for (const auto& [v, M] : X.modules()) mods[v] = module_to_json(M);
    for (const auto& [a, f] : X.maps()) maps[a] = matrix_to_json(f.matrix());
    j["modules"] = mods;
    j["maps"] = maps;
    if (!X.quiver().is_finite()) {
        Json tails = Json::object();
        for (const RayInfo& r : rays(X.quiver())) {
            Json t;
            int depth = X.depth(r.id);
            auto p = X.periodic().find(r.id);
            if (p != X.periodic().end()) {
                t["prefix_length"] = depth + 1;
                t["kind"] = to_string(TailKind::EventuallyPeriodic);
                Json period = Json::array();
                for (const auto& f : p->second.maps) period.push_back(matrix_to_json(f.matrix()));
                t["period"] = period;
            } else {
                const FinModule& E = X.module(X.end_vertex(r.id));
                t["prefix_length"] = depth;
                t["kind"] = to_string(E.is_zero() ? TailKind::EventuallyZero : TailKind::EventuallyIso);
                if (!E.is_zero()) t["module"] = module_to_json(E);
            }
            tails[r.id] = t;
        }
        j["tail"] = tails;
    }
    return j;
}

namespace detail {

inline TailSpec tail_from_json(const BaseRing& R, const Json& t, const std::string& field,
                               const std::map<std::string, FinModule>& modules, const Quiver& Q, const std::string& ray) {
    TailSpec s;
    if (auto p = t.find("prefix_length"); p != t.end()) {
        if (!p->is_number_integer()) field_error(field + ".prefix_length", "expected an integer");
        s.prefix_length = p->get<int>();
    }
    const Json& kind = require_field(t, "kind", field);
    if (!kind.is_string()) field_error(field + ".kind", "expected a string");
    s.kind = tail_kind(kind.get<std::string>());
    if (auto m = t.find("module"); m != t.end()) s.module = module_from_json(R, *m, field + ".module");
    if (s.kind == TailKind::EventuallyPeriodic) {
        const Json& period = require_field(t, "period", field);
        if (!period.is_array()) field_error(field + ".period", "expected an array of matrices");
        // periodic maps act on the last prefix module
        std::string last = ray == "*" ? "" : ray_vertex(Q, ray, s.prefix_length - 1);
        auto it = modules.find(last);
        if (it == modules.end()) field_error(field, "periodic tail needs the module at its last prefix vertex");
        for (std::size_t i = 0; i < period.size(); ++i)
            s.period.push_back(map_from_json(period[i], it->second, it->second, field + ".period[" + std::to_string(i) + "]"));
    }
    return s;
}

}  // namespace detail

/// `ring_override` replaces (or supplies) the file's "ring" entry.
inline Representation representation_from_json(const Json& j, const std::optional<BaseRing>& ring_override = std::nullopt) {
    Quiver Q = quiver_from_json(j);
    BaseRing R;
    if (ring_override) {
        R = *ring_override;
    } else {
        const Json& r = detail::require_field(j, "ring", "");
        if (!r.is_string()) detail::field_error("ring", "expected a descriptor string");
        R = BaseRing::parse(r.get<std::string>());
    }
    std::map<std::string, FinModule> mods;
    std::map<std::string, ModuleMap> maps;
    const Json& mj = detail::require_field(j, "modules", "");
    if (!mj.is_object()) detail::field_error("modules", "expected an object keyed by vertex");
    for (auto it = mj.begin(); it != mj.end(); ++it) mods[it.key()] = module_from_json(R, it.value(), "modules." + it.key());

    // the full window is known only once tails are read, so arrows are resolved against it
    std::map<std::string, TailSpec> tails;
    if (!Q.is_finite()) {
        const Json& tj = detail::require_field(j, "tail", "");
        if (!tj.is_object()) detail::field_error("tail", "expected an object");
        if (tj.contains("kind")) {
            tails["*"] = detail::tail_from_json(R, tj, "tail", mods, Q, rays(Q).size() == 1 ? rays(Q).front().id : "*");
        } else {
            for (auto it = tj.begin(); it != tj.end(); ++it) {
                std::string ray = it.key();
                if (ray == "*" && rays(Q).size() == 1) ray = rays(Q).front().id;
                if (ray != "*") ray_info(Q, ray);
                tails[it.key()] = detail::tail_from_json(R, it.value(), "tail." + it.key(), mods, Q, ray);
            }
        }
        // the first tail module is an endpoint of the arrow into the tail
        for (const RayInfo& r : rays(Q)) {
            auto t = tails.find(r.id);
            if (t == tails.end()) t = tails.find("*");
            if (t == tails.end() || t->second.kind == TailKind::EventuallyPeriodic || t->second.prefix_length < 1) continue;
            std::string v = ray_vertex(Q, r.id, t->second.prefix_length);
            if (t->second.kind == TailKind::EventuallyZero) mods[v] = FinModule::zero(R);
            else if (t->second.module) mods[v] = *t->second.module;
        }
    }
    if (auto it = j.find("maps"); it != j.end()) {
        if (!it->is_object()) detail::field_error("maps", "expected an object keyed by arrow");
        for (auto m = it->begin(); m != it->end(); ++m) {
            std::string f = "maps." + m.key();
            std::optional<Arrow> a;
            if (Q.has_arrow(m.key())) a = Q.arrow(m.key());
            else if (!Q.is_finite())
                if (auto loc = locate_ray_arrow(Q, m.key())) a = ray_arrow_full(Q, loc->first, loc->second);
            if (!a) detail::field_error(f, "unknown arrow");
            auto s = mods.find(a->src), t = mods.find(a->tgt);
            if (s == mods.end() || t == mods.end()) detail::field_error(f, "an endpoint has no module");
            maps[m.key()] = map_from_json(m.value(), s->second, t->second, f);
        }
    }
    return make_representation(R, Q, std::move(mods), std::move(maps), tails);
}

inline Json morphism_to_json(const RepMorphism& f) {
    Json c = Json::object();
    for (const auto& [v, m] : f.comp) c[v] = matrix_to_json(m.matrix());
    return c;
}

inline RepMorphism morphism_from_json(const Json& j, const Representation& dom, const Representation& cod, const std::string& field) {
    if (!j.is_object()) detail::field_error(field, "expected an object keyed by vertex");
    RayDepths d = dom.depths();
    for (const auto& [r, k] : cod.depths()) d[r] = std::max(d[r], k);
    Representation A = dom.extended(d), B = cod.extended(d);
    std::map<std::string, ModuleMap> comp;
    for (const auto& v : A.vertices()) {
        auto it = j.find(v);
        if (it == j.end()) comp[v] = ModuleMap::zero(A.module(v), B.module(v));
        else comp[v] = map_from_json(*it, A.module(v), B.module(v), field + "." + v);
    }
    return make_morphism(A, B, comp);
}

// ---------------------------------------------------------------------------
// Certificates and verdicts

inline Json certificate_to_json(const Certificate& c) {
    Json j;
    j["kind"] = to_string(c.kind);
    Json ms = Json::array();
    for (const auto& [label, m] : c.matrices) ms.push_back({{"label", label}, {"matrix", matrix_to_json(m)}});
    j["matrices"] = ms;
    j["notes"] = c.notes;
    return j;
}

inline Json to_json(const SourceInjectiveVerdict& v) {
    Json j;
    j["verdict"] = v.label();
    if (!v.annotation.empty()) j["annotation"] = v.annotation;
    return j;
}

inline Json to_json(const InjectivityVerdict& v) {
    Json j;
    j["verdict"] = to_string(v.state);
    if (!v.failure.empty()) j["failure"] = v.failure;
    Json vs = Json::array();
    for (const auto& c : v.vertices) {
        Json cj{{"vertex", c.vertex}, {"module_injective", c.module_injective}, {"source_split", c.source_split}};
        if (!c.reason.empty()) cj["reason"] = c.reason;
        vs.push_back(cj);
    }
    j["vertices"] = vs;
    j["quiver"] = to_json(v.quiver);
    j["certificate"] = certificate_to_json(v.certificate);
    return j;
}

inline Json to_json(const TreeDecomposition& d) {
    Json j;
    Json es = Json::array();
    for (const auto& e : d.entries)
        es.push_back({{"target", e.target}, {"seed", module_to_json(e.seed)}, {"multiplicity", e.multiplicity}});
    j["summands"] = es;
    j["rebuilt"] = representation_to_json(d.rebuilt);
    j["certificate"] = certificate_to_json(d.certificate);
    return j;
}

inline Json to_json(const FlatVerdict& v) {
    Json j{{"verdict", v.flat ? "flat" : "not_flat"}, {"dual_injective", v.dual_injective}, {"agree", v.agree}};
    if (!v.failure.empty()) j["failure"] = v.failure;
    j["certificate"] = certificate_to_json(v.certificate);
    return j;
}

namespace detail {
inline Json optional_int(const std::optional<int>& x) { return x ? Json(*x) : Json("infinite"); }
}  // namespace detail

inline Json to_json(const DimensionReport& r) {
    Json j;
    j["vertex_sup"] = detail::optional_int(r.vertex_sup);
    j["bound"] = detail::optional_int(r.bound);
    j["exact"] = detail::optional_int(r.exact);
    j["within_bound"] = r.within_bound;
    j["certificate"] = certificate_to_json(r.certificate);
    return j;
}

inline Json to_json(const CompleteResolution& c) {
    Json j;
    Json terms = Json::array();
    for (const auto& t : c.terms) terms.push_back(representation_to_json(t));
    j["terms"] = terms;
    Json audits = Json::array();
    for (const auto& a : c.audits) audits.push_back({{"position", a.position}, {"exact", a.exact}, {"hom_exact", a.hom_exact}});
    j["audits"] = audits;
    j["ok"] = c.ok();
    return j;
}

inline Json to_json(const GorensteinVerdict& v) {
    Json j{{"holds", v.holds}};
    if (!v.failure.empty()) j["failure"] = v.failure;
    if (v.cross_check) j["cross_check"] = *v.cross_check;
    if (v.witness) j["witness"] = to_json(*v.witness);
    j["certificate"] = certificate_to_json(v.certificate);
    return j;
}

inline Json to_json(const GinjdimReport& r) {
    Json j;
    j["vertex_sup"] = r.vertex_sup;
    j["bound"] = r.bound;
    j["exact"] = detail::optional_int(r.exact);
    j["cokernel_gorenstein_injective"] = r.cokernel_gorenstein_injective;
    j["certificate"] = certificate_to_json(r.certificate);
    return j;
}

inline Json to_json(const AdjunctionCheck& c) {
    Json j{{"hom_into_adjoint", std::to_string(c.lhs)}, {"hom_at_vertex", std::to_string(c.rhs)},
           {"bijective", c.bijective}, {"round_trip", c.round_trip}, {"natural", c.natural}, {"ok", c.ok()}};
    j["certificate"] = certificate_to_json(c.certificate);
    return j;
}

}  // namespace quivinj
