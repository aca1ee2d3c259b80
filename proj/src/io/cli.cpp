#include "mcdeform/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mcdeform/builtins.hpp"
#include "mcdeform/cone.hpp"
#include "mcdeform/error.hpp"
#include "mcdeform/maurer_cartan.hpp"
#include "mcdeform/path_object.hpp"

namespace mcdeform {

namespace {

struct Loaded {
    Document doc;
    std::string source;
    std::string digest;
};

class Session {
public:
    explicit Session(const CliOptions& o) : opt_(o), max_dim_(max_dim_from_env()) {
        for (const auto& [slot, ref] : o.slots) load_slot(slot, ref);
        for (const auto& ref : o.positional) load_positional(ref);
    }

    json inputs() const {
        json out = json::object();
        for (const auto& [slot, l] : docs_) out[slot] = {{"source", l.source}, {"digest", l.digest}, {"kind", document_kind(l.doc)}};
        return out;
    }

    bool has(const std::string& slot) const { return docs_.count(slot) != 0; }

    const Loaded& slot(const std::string& name) const {
        auto it = docs_.find(name);
        if (it == docs_.end()) throw Error(ErrorCode::MissingDocument, "command needs --" + name);
        return it->second;
    }

    template <class T>
    const T& get(const std::string& name) const {
        const Loaded& l = slot(name);
        if (auto p = std::get_if<T>(&l.doc)) return *p;
        throw Error(ErrorCode::SchemaError, "--" + name + ": expected a document of a different kind, got '" +
                                                document_kind(l.doc) + "'");
    }

    DglaPtr dgla() const { return get<DglaPtr>("dgla"); }
    const PairDoc& pair() const { return get<PairDoc>("pair"); }

    void guard(std::size_t dim, const std::string& what) const {
        if (dim > max_dim_)
            throw Error(ErrorCode::ResourceLimit, what + ": total dimension " + std::to_string(dim) +
                                                      " exceeds MCDEFORM_MAX_DIM=" + std::to_string(max_dim_));
    }

    /// Tensor algebra and coordinates of an element slot owned by `owner`.
    std::pair<TensorDgla, Vector> element(const std::string& name, const DglaPtr& l, const std::string& owner) const {
        const ElementDoc& e = get<ElementDoc>(name);
        check_owner(name, e.owner, owner);
        if (!e.coefficients) throw Error(ErrorCode::InvalidInput, "--" + name + ": element has no coefficient algebra");
        guard(l->dim() * e.coefficients->dim(), "--" + name);
        TensorDgla t = tensor_dgla(l, e.coefficients);
        Vector v = resolve_terms(*t.dgla->space(), e.terms, name + ".terms");
        return {std::move(t), std::move(v)};
    }

    static void check_owner(const std::string& name, const std::string& got, const std::string& want) {
        if (got != want)
            throw Error(ErrorCode::InconsistentInput,
                        "--" + name + ": owner " + got + " does not match the supplied document " + want);
    }

private:
    void put(const std::string& slot, Document doc, const std::string& source) {
        std::visit(
            [&](const auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, DglaPtr>) guard(d->dim(), source);
                else if constexpr (std::is_same_v<T, PairDoc>)
                    guard(d.h.source()->dim() + d.g.source()->dim() + d.h.target()->dim(), source);
                else if constexpr (std::is_same_v<T, DglaMorphism>)
                    guard(d.source()->dim() + d.target()->dim(), source);
            },
            doc);
        std::string dg = digest(doc);
        docs_.insert_or_assign(slot, Loaded{std::move(doc), source, std::move(dg)});
    }

    Document load(const std::string& slot, const std::string& ref) const {
        if (ref.rfind("builtin:", 0) == 0) {
            const std::string name = ref.substr(8);
            if (slot == "pair") {
                BuiltinPair p = builtin_pair(name);
                return PairDoc{p.name, p.h, p.g};
            }
            if (slot == "morphism") {
                const auto dot = name.rfind('.');
                if (dot == std::string::npos || (name.substr(dot) != ".h" && name.substr(dot) != ".g"))
                    throw Error(ErrorCode::MissingDocument, "built-in morphisms are named PAIR.h or PAIR.g, got '" + name + "'");
                BuiltinPair p = builtin_pair(name.substr(0, dot));
                return name.substr(dot) == ".h" ? p.h : p.g;
            }
            if (slot == "dgla" || slot == "positional") return builtin_dgla(name);
            throw Error(ErrorCode::MissingDocument, "--" + slot + ": no built-in documents of this kind");
        }
        std::ifstream in(ref, std::ios::binary);
        if (!in) throw Error(ErrorCode::MissingDocument, "cannot open '" + ref + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        try {
            return parse_document(ss.str(), opt_.command != "validate");
        } catch (const Error& e) {
            throw Error(e.code(), std::string(ref) + ": " + e.what());
        }
    }

    void load_slot(const std::string& slot, const std::string& ref) { put(slot, load(slot, ref), ref); }

    void load_positional(const std::string& ref) {
        Document d = load("positional", ref);
        std::string slot = document_kind(d);
        if (slot == "small-extension") slot = "extension";
        if (slot == "h-element") slot = "h-element";
        if (slot == "element" && has("element")) slot = "element2";
        if (has(slot)) throw UsageError("two documents for slot '" + slot + "' (second: " + ref + ")");
        put(slot, std::move(d), ref);
    }

    const CliOptions& opt_;
    std::size_t max_dim_;
    std::map<std::string, Loaded> docs_;
};

json terms_json(const GradedSpace& s, const Vector& v) {
    json out = json::object();
    for (const auto& [k, c] : terms_of(s, v)) out[k] = format_scalar(c);
    return out;
}

json report_json(const ValidationReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"axiom", x.axiom}, {"witness", x.witness}, {"detail", x.detail}});
    return {{"ok", r.ok()}, {"violations", v}};
}

json cohomology_json(const CohomologyResult& h) {
    json arr = json::array();
    for (const auto& [deg, c] : h.degrees()) {
        json classes = json::array();
        for (std::size_t k = 0; k < c.dim; ++k) classes.push_back(h.class_label(deg, k));
        arr.push_back({{"degree", deg}, {"dim", c.dim}, {"classes", classes}});
    }
    return arr;
}

std::map<int, std::size_t> dims_of(const CohomologyResult& h) {
    std::map<int, std::size_t> out;
    for (const auto& [deg, c] : h.degrees()) out[deg] = c.dim;
    return out;
}

json dims_json(const std::map<int, std::size_t>& d) {
    json arr = json::array();
    for (const auto& [deg, n] : d)
        if (n) arr.push_back({{"degree", deg}, {"dim", n}});
    return arr;
}

bool same_dims(std::map<int, std::size_t> a, std::map<int, std::size_t> b) {
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(b, [](const auto& kv) { return kv.second == 0; });
    return a == b;
}

json class_json(const ObstructionClass& c) {
    json coords = json::object();
    for (const auto& [label, v] : c.labelled()) coords[label] = format_scalar(v);
    return {{"zero", c.is_zero()}, {"h2_dim", c.coords.rows()}, {"kernel", c.j_labels}, {"coordinates", coords}};
}

SmallExtension tower_step(const CliOptions& o) {
    if (!o.tower) throw UsageError("command needs --tower N");
    if (*o.tower < 2) throw UsageError("--tower must be at least 2");
    return small_extension_tower(*o.tower - 1).back();
}

void check_coefficients(const AlgebraPtr& got, const AlgebraPtr& want, const std::string& slot) {
    if (!got || to_json(Document(got)) != to_json(Document(want)))
        throw Error(ErrorCode::BaseMismatch, "--" + slot + ": coefficients '" + (got ? got->name() : "none") +
                                                 "' differ from the extension target '" + want->name() + "'");
}

std::string extension_name(const SmallExtension& e) { return e.b->name() + " -> " + e.a->name(); }

struct PairTriple {
    TensorPair tp;
    McTriple t;
};

PairTriple load_triple(const Session& s) {
    const PairDoc& p = s.pair();
    const TripleDoc& d = s.get<TripleDoc>("triple");
    Session::check_owner("triple", d.owner, s.slot("pair").digest);
    s.guard((p.h.source()->dim() + p.g.source()->dim() + p.h.target()->dim()) * d.coefficients->dim(), "--triple");
    TensorPair tp = tensor_pair(p.h, p.g, d.coefficients);
    McTriple t{resolve_terms(*tp.lt.dgla->space(), d.x, "triple.x"), resolve_terms(*tp.nt.dgla->space(), d.y, "triple.y"),
               resolve_terms(*tp.mt.dgla->space(), d.p, "triple.p")};
    return {std::move(tp), std::move(t)};
}

json triple_json(const TensorPair& tp, const McTriple& t) {
    return {{"x", terms_json(*tp.lt.dgla->space(), t.x)},
            {"y", terms_json(*tp.nt.dgla->space(), t.y)},
            {"p", terms_json(*tp.mt.dgla->space(), t.p)}};
}

json cmd_validate(const Session& s, const CliOptions& o, int& exit_code) {
    json out = json::array();
    for (const auto& slot : {"dgla", "morphism", "pair", "algebra", "extension"}) {
        if (!s.has(slot)) continue;
        const Loaded& l = s.slot(slot);
        ValidationReport r;
        std::string name;
        std::visit(
            [&](const auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, DglaPtr>) {
                    name = d->name();
                    r = validate_dgla(*d);
                } else if constexpr (std::is_same_v<T, DglaMorphism>) {
                    name = d.source()->name() + " -> " + d.target()->name();
                    r.append(validate_dgla(*d.source()));
                    r.append(validate_dgla(*d.target()));
                    r.append(validate_morphism(d));
                } else if constexpr (std::is_same_v<T, PairDoc>) {
                    name = d.name;
                    r.append(validate_dgla(*d.h.source()));
                    r.append(validate_dgla(*d.g.source()));
                    r.append(validate_dgla(*d.h.target()));
                    r.append(validate_morphism(d.h));
                    r.append(validate_morphism(d.g));
                } else if constexpr (std::is_same_v<T, AlgebraPtr>) {
                    name = d->name();
                    r = validate_artin(*d);
                } else if constexpr (std::is_same_v<T, SmallExtension>) {
                    name = extension_name(d);
                    r.append(validate_artin(*d.b));
                    r.append(validate_artin(*d.a));
                    r.append(validate_small_extension(d));
                }
            },
            l.doc);
        json entry = report_json(r);
        entry["slot"] = slot;
        entry["name"] = name;
        out.push_back(entry);
        if (!r.ok()) exit_code = 1;
    }
    if (out.empty()) throw Error(ErrorCode::MissingDocument, "validate needs a dgla, morphism, pair, algebra or extension");
    (void)o;
    return {{"documents", out}};
}

json cmd_cohomology(const Session& s) {
    DglaPtr l = s.dgla();
    return {{"name", l->name()}, {"cohomology", cohomology_json(compute_cohomology(l->complex()))}};
}

json cmd_cone(const Session& s) {
    const DglaMorphism& h = s.get<DglaMorphism>("morphism");
    ConeComplex c = cone_single(h);
    const Matrix& d = c.complex.differential().matrix();
    return {{"d_squared_zero", (d * d).is_zero()},
            {"dim", c.complex.space()->total_dim()},
            {"cohomology", cohomology_json(compute_cohomology(c.complex))}};
}

json cmd_pair_cone(const Session& s) {
    const PairDoc& p = s.pair();
    ConeComplex c = cone_pair(p.h, p.g);
    const Matrix& d = c.complex.differential().matrix();
    CohomologyResult hc = compute_cohomology(c.complex);

    LongExactSequenceReport les = long_exact_sequence_check(p.h, p.g);
    json nodes = json::array();
    for (const auto& n : les.nodes)
        nodes.push_back({{"degree", n.degree}, {"name", n.name}, {"dim", n.dim}, {"rank_in", n.rank_in},
                         {"rank_out", n.rank_out}, {"exact", n.exact()}});

    SwapMap sw = swap_iso(p.h, p.g);
    SwapMap back = swap_iso(p.g, p.h);
    const Matrix sq = back.map.matrix() * sw.map.matrix();

    json gamma;
    try {
        GammaMap gm = gamma_quotient_map(p.h, p.g);
        CohomologyResult ht = compute_cohomology(gm.target.complex);
        bool bij = true;
        for (const auto& [deg, m] : induced_on_cohomology(gm.map, hc, ht))
            bij = bij && m.rows() == m.cols() && rank(m) == m.rows();
        gamma = {{"applicable", true}, {"bijective", bij}};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInjective) throw;
        gamma = {{"applicable", false}, {"reason", e.what()}};
    }
    return {{"name", p.name},
            {"d_squared_zero", (d * d).is_zero()},
            {"cohomology", cohomology_json(hc)},
            {"long_exact_sequence", {{"exact", les.exact()}, {"nodes", nodes}}},
            {"swap_squares_to_identity", sq == Matrix::identity(sq.rows())},
            {"gamma", gamma}};
}

json cmd_tangent(const Session& s, const CliOptions& o) {
    TangentDims t;
    std::string name;
    if (s.has("pair")) {
        t = tangent_dims(s.pair().h, s.pair().g, o.shift);
        name = s.pair().name;
    } else {
        t = tangent_dims(s.dgla(), o.shift);
        name = s.dgla()->name();
    }
    return {{"name", name}, {"shift", o.shift}, {"degree", 1 + o.shift}, {"direct", t.direct},
            {"cohomological", t.cohomological}, {"agree", t.agree()}};
}

json cmd_mc(const Session& s, bool residual_only) {
    if (s.has("triple")) {
        if (residual_only) throw UsageError("mc-residual takes --dgla and --element");
        PairTriple pt = load_triple(s);
        return {{"triple", report_json(mc_pair_check(pt.tp, pt.t))}};
    }
    DglaPtr l = s.dgla();
    auto [t, x] = s.element("element", l, s.slot("dgla").digest);
    Vector r = mc_residual(t, x);
    json out = {{"residual", terms_json(*t.dgla->space(), r)}};
    if (!residual_only) out["mc"] = is_zero(r);
    return out;
}

json cmd_gauge_apply(const Session& s) {
    DglaPtr l = s.dgla();
    const std::string owner = s.slot("dgla").digest;
    auto [t, x] = s.element("element", l, owner);
    auto [ta, a] = s.element("param", l, owner);
    if (ta.coeff->name() != t.coeff->name() || ta.dim() != t.dim())
        throw Error(ErrorCode::BaseMismatch, "--param and --element have different coefficient algebras");
    Vector y = gauge_apply(t, a, x);
    json out = {{"result", terms_json(*t.dgla->space(), y)}};
    out["mc_in"] = is_mc(t, x);
    out["mc_out"] = is_mc(t, y);
    return out;
}

json cmd_gauge_equiv(const Session& s, const CliOptions& o) {
    DglaPtr l = s.dgla();
    const std::string owner = s.slot("dgla").digest;
    auto [t, x] = s.element("element", l, owner);
    auto [t2, y] = s.element("element2", l, owner);
    if (t2.coeff->name() != t.coeff->name() || t2.dim() != t.dim())
        throw Error(ErrorCode::BaseMismatch, "--element and --element2 have different coefficient algebras");
    GaugeEquivBudget b;
    b.max_nodes = o.budget;
    GaugeEquivResult r = gauge_equiv_decide(t, x, y, b);
    static const char* names[] = {"Equivalent", "NotEquivalent", "Undecided"};
    json out = {{"status", names[static_cast<int>(r.status)]}, {"certificate", r.certificate}, {"nodes", r.nodes}};
    out["witness"] = r.witness ? terms_json(*t.dgla->space(), *r.witness) : json(nullptr);
    return out;
}

json cmd_bch(const Session& s) {
    DglaPtr l = s.dgla();
    const std::string owner = s.slot("dgla").digest;
    auto [t, a] = s.element("param", l, owner);
    auto [t2, b] = s.element("param2", l, owner);
    if (t2.coeff->name() != t.coeff->name() || t2.dim() != t.dim())
        throw Error(ErrorCode::BaseMismatch, "--param and --param2 have different coefficient algebras");
    return {{"product", terms_json(*t.dgla->space(), bch_product(t, a, b))}};
}

json cmd_obstruction(const Session& s, const CliOptions& o, bool lift) {
    SmallExtension e = tower_step(o);
    json out = {{"extension", extension_name(e)}};
    if (s.has("triple")) {
        const PairDoc& p = s.pair();
        const TripleDoc& d = s.get<TripleDoc>("triple");
        check_coefficients(d.coefficients, e.a, "triple");
        PairTriple pt = load_triple(s);
        ObstructionClass c = obstruction_pair(e, p.h, p.g, pt.t);
        out["class"] = class_json(c);
        if (lift) {
            auto r = lift_pair_if_unobstructed(e, p.h, p.g, pt.t, c);
            if (r) {
                TensorPair tb = tensor_pair(p.h, p.g, e.b);
                out["status"] = "Lifted";
                out["lift"] = triple_json(tb, *r);
            } else {
                out["status"] = "NoLift";
                out["lift"] = nullptr;
            }
        }
        return out;
    }
    DglaPtr l = s.dgla();
    const ElementDoc& d = s.get<ElementDoc>("element");
    check_coefficients(d.coefficients, e.a, "element");
    auto [t, x] = s.element("element", l, s.slot("dgla").digest);
    ObstructionClass c = obstruction_single(e, l, x);
    out["class"] = class_json(c);
    if (lift) {
        auto r = lift_if_unobstructed(e, l, x, c);
        if (r) {
            TensorDgla tb = tensor_dgla(l, e.b);
            out["status"] = "Lifted";
            out["lift"] = terms_json(*tb.dgla->space(), *r);
        } else {
            out["status"] = "NoLift";
            out["lift"] = nullptr;
        }
    }
    return out;
}

json cmd_h_trunc(const Session& s, const CliOptions& o) {
    const PairDoc& p = s.pair();
    if (o.trunc < 1) throw UsageError("--trunc must be at least 1");
    const auto cone = dims_of(compute_cohomology(cone_pair(p.h, p.g).complex));
    json levels = json::array();
    std::map<int, std::size_t> prev;
    bool stable = true;
    for (unsigned n = 1; n <= o.trunc; ++n) {
        const auto dims = dims_of(truncated_H_cohomology(p.h, p.g, n));
        levels.push_back({{"trunc", n}, {"dims", dims_json(dims)}, {"matches_cone", same_dims(dims, cone)}});
        if (n == o.trunc && n > 1) stable = same_dims(dims, prev);
        prev = dims;
    }
    return {{"name", p.name}, {"cone", dims_json(cone)}, {"levels", levels},
            {"stable_at_last_step", o.trunc > 1 ? json(stable) : json(nullptr)}};
}

json cmd_h_embed(const Session& s) {
    const PairDoc& p = s.pair();
    const HElementDoc& d = s.get<HElementDoc>("h-element");
    Session::check_owner("h-element", d.owner, s.slot("pair").digest);
    HPairElement x{resolve_terms(*p.h.source()->space(), d.l, "l"), resolve_terms(*p.g.source()->space(), d.n, "n"),
                   resolve_poly(*p.h.target()->space(), d.m, "m")};
    ValidationReport r = membership_H(p.h, p.g, x);
    json out = {{"membership", report_json(r)}};
    if (!r.ok()) return out;
    KElement k = barycentric_embed(p.h, p.g, x);
    const Dgla& m = *p.h.target();
    ValidationReport rk = membership_K(m, p.h.matrix(), p.g.matrix(), k);
    out["k"] = {{"l", terms_json(*p.h.source()->space(), k.l)},
                {"n", terms_json(*p.g.source()->space(), k.n)},
                {"m1", format_poly(m, k.m1)},
                {"m2", format_poly(m, k.m2)},
                {"membership", report_json(rk)}};
    return out;
}

json cmd_examples(const CliOptions& o) {
    if (o.show) {
        const std::string& n = *o.show;
        for (const auto& d : builtin_dgla_names())
            if (d == n) return {{"document", to_json(Document(builtin_dgla(n)))}};
        for (const auto& p : builtin_pair_names())
            if (p == n) {
                BuiltinPair b = builtin_pair(n);
                return {{"document", to_json(Document(PairDoc{b.name, b.h, b.g}))}};
            }
        throw Error(ErrorCode::MissingDocument, "no built-in object named '" + n + "'");
    }
    json dglas = json::array();
    for (const auto& n : builtin_dgla_names()) {
        DglaPtr l = builtin_dgla(n);
        dglas.push_back({{"name", n}, {"window", {l->space()->dmin(), l->space()->dmax()}}, {"dim", l->dim()}});
    }
    json pairs = json::array();
    for (const auto& n : builtin_pair_names()) {
        BuiltinPair b = builtin_pair(n);
        pairs.push_back({{"name", n},
                         {"h", b.h.source()->name() + " -> " + b.h.target()->name()},
                         {"g", b.g.source()->name() + " -> " + b.g.target()->name()},
                         {"window", {b.h.target()->space()->dmin(), b.h.target()->space()->dmax()}}});
    }
    return {{"dglas", dglas}, {"pairs", pairs}};
}

json options_json(const CliOptions& o) {
    json out = {{"json", o.json}, {"budget", o.budget}, {"trunc", o.trunc}, {"shift", o.shift}};
    out["tower"] = o.tower ? json(*o.tower) : json(nullptr);
    out["slots"] = o.slots;
    out["positional"] = o.positional;
    if (o.command == "examples") {
        out["list"] = o.list;
        out["show"] = o.show ? json(*o.show) : json(nullptr);
    }
    return out;
}

void flatten(const json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        if (j.empty()) out += prefix + ": {}\n";
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        if (j.empty()) out += prefix + ": []\n";
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out += prefix + ": " + j.get<std::string>() + "\n";
    } else {
        out += prefix + ": " + j.dump() + "\n";
    }
}

}  // namespace

std::vector<std::string> command_names() {
    return {"validate",    "cohomology",  "cone", "pair-cone", "tangent", "mc-check", "mc-residual", "gauge-apply",
            "gauge-equiv", "bch",         "obstruction", "lift", "h-trunc", "h-embed", "examples"};
}

std::size_t max_dim_from_env() {
    const char* v = std::getenv("MCDEFORM_MAX_DIM");
    if (!v || !*v) return 512;
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (*end != '\0' || n == 0) throw UsageError(std::string("MCDEFORM_MAX_DIM must be a positive integer, got '") + v + "'");
    return static_cast<std::size_t>(n);
}

std::string SessionReport::render(bool as_json) const {
    if (as_json) return canonical_dump(body);
    // a shown document prints as itself so it can be saved and edited
    if (body.contains("results") && body["results"].contains("document")) return canonical_dump(body["results"]["document"]);
    std::string out;
    flatten(body, "", out);
    return out;
}

SessionReport run_command(const CliOptions& o) {
    SessionReport rep;
    rep.body = {{"command", o.command}, {"options", options_json(o)}, {"exact_arithmetic", true}};
    try {
        const auto names = command_names();
        if (std::find(names.begin(), names.end(), o.command) == names.end())
            throw Error(ErrorCode::UnknownCommand, "unknown command '" + o.command + "'");
        if (o.command == "examples") {
            rep.body["inputs"] = json::object();
            rep.body["results"] = cmd_examples(o);
            return rep;
        }
        Session s(o);
        rep.body["inputs"] = s.inputs();
        json r;
        const std::string& c = o.command;
        if (c == "validate") r = cmd_validate(s, o, rep.exit_code);
        else if (c == "cohomology") r = cmd_cohomology(s);
        else if (c == "cone") r = cmd_cone(s);
        else if (c == "pair-cone") r = cmd_pair_cone(s);
        else if (c == "tangent") r = cmd_tangent(s, o);
        else if (c == "mc-check") r = cmd_mc(s, false);
        else if (c == "mc-residual") r = cmd_mc(s, true);
        else if (c == "gauge-apply") r = cmd_gauge_apply(s);
        else if (c == "gauge-equiv") r = cmd_gauge_equiv(s, o);
        else if (c == "bch") r = cmd_bch(s);
        else if (c == "obstruction") r = cmd_obstruction(s, o, false);
        else if (c == "lift") r = cmd_obstruction(s, o, true);
        else if (c == "h-trunc") r = cmd_h_trunc(s, o);
        else r = cmd_h_embed(s);
        rep.body["results"] = r;
    } catch (const UsageError& e) {
        rep.body["error"] = {{"code", "UsageError"}, {"message", e.what()}};
        rep.exit_code = 2;
    } catch (const Error& e) {
        rep.body["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
        rep.exit_code = e.code() == ErrorCode::UnknownCommand || e.code() == ErrorCode::MissingDocument ? 2 : 1;
    }
    return rep;
}

}  // namespace mcdeform
