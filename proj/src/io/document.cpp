#include "mcdeform/document.hpp"

#include <openssl/evp.h>

#include <set>

#include "mcdeform/cone.hpp"
#include "mcdeform/error.hpp"

namespace mcdeform {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::SchemaError, path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) schema(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj.items())
        if (!ok.count(k)) schema(path.empty() ? k : path + "." + k, "unknown field");
}

const json& need(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) schema(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) schema(path, "expected a string");
    return j.get<std::string>();
}

long long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema(path, "expected an integer");
    return j.get<long long>();
}

const json& get_array(const json& j, const std::string& path) {
    if (!j.is_array()) schema(path, "expected an array");
    return j;
}

// Rewraps constructor failures as schema errors located at `path`.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) throw;
        schema(path, e.what());
    }
}

Terms parse_terms(const json& j, const std::string& path) {
    if (!j.is_object()) schema(path, "expected an object of label: \"p/q\"");
    Terms out;
    for (const auto& [k, v] : j.items()) {
        const std::string field = join(path, k);
        Scalar c = parse_scalar(get_string(v, field), field);
        if (c != 0) out[k] = c;
    }
    return out;
}

json terms_json(const Terms& t) {
    json out = json::object();
    for (const auto& [k, v] : t) out[k] = format_scalar(v);
    return out;
}

SpacePtr parse_space(const json& obj, const std::string& path) {
    const std::string wpath = join(path, "window");
    const json& w = get_array(need(obj, path, "window"), wpath);
    if (w.size() != 2) schema(wpath, "expected [dmin, dmax]");
    const int dmin = static_cast<int>(get_int(w[0], at(wpath, 0)));
    const int dmax = static_cast<int>(get_int(w[1], at(wpath, 1)));
    const int width = dmax >= dmin ? dmax - dmin + 1 : 0;
    if (width > 64) schema(wpath, "degree window wider than 64");
    std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(width));
    std::vector<bool> seen(labels.size(), false);
    const std::string bpath = join(path, "basis");
    const json& basis = get_array(need(obj, path, "basis"), bpath);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string p = at(bpath, i);
        check_keys(basis[i], p, {"degree", "labels"});
        const int deg = static_cast<int>(get_int(need(basis[i], p, "degree"), join(p, "degree")));
        if (deg < dmin || deg > dmax) schema(join(p, "degree"), "degree " + std::to_string(deg) + " outside window");
        const std::size_t k = static_cast<std::size_t>(deg - dmin);
        if (seen[k]) schema(join(p, "degree"), "degree " + std::to_string(deg) + " declared twice");
        seen[k] = true;
        const std::string lpath = join(p, "labels");
        const json& ls = get_array(need(basis[i], p, "labels"), lpath);
        for (std::size_t r = 0; r < ls.size(); ++r) {
            std::string l = get_string(ls[r], at(lpath, r));
            if (l.empty()) schema(at(lpath, r), "empty label");
            labels[k].push_back(std::move(l));
        }
    }
    return located(bpath, [&] { return GradedSpace::make(dmin, dmax, std::move(labels)); });
}

void space_json(json& obj, const GradedSpace& s) {
    obj["window"] = json::array({s.dmin(), s.dmax()});
    json basis = json::array();
    for (int d = s.dmin(); d <= s.dmax(); ++d) basis.push_back({{"degree", d}, {"labels", s.labels(d)}});
    obj["basis"] = basis;
}

std::size_t label_index(const GradedSpace& s, const std::string& label, const std::string& path) {
    auto k = s.find(label);
    if (!k) schema(path, "unknown label '" + label + "'");
    return *k;
}

// Linear map given column by column: [{source, terms}].
Matrix parse_linear(const json& j, const std::string& path, const GradedSpace& src, const GradedSpace& tgt) {
    const json& arr = get_array(j, path);
    Matrix m(tgt.total_dim(), src.total_dim());
    std::vector<bool> seen(src.total_dim(), false);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = at(path, i);
        check_keys(arr[i], p, {"source", "terms"});
        const std::size_t c = label_index(src, get_string(need(arr[i], p, "source"), join(p, "source")), join(p, "source"));
        if (seen[c]) schema(join(p, "source"), "entry for '" + src.label(c) + "' given twice");
        seen[c] = true;
        m.set_col(c, resolve_terms(tgt, parse_terms(need(arr[i], p, "terms"), join(p, "terms")), join(p, "terms")));
    }
    return m;
}

json linear_json(const Matrix& m, const GradedSpace& src, const GradedSpace& tgt) {
    json arr = json::array();
    for (std::size_t c = 0; c < src.total_dim(); ++c) {
        Vector v = m.col(c);
        if (is_zero(v)) continue;
        arr.push_back({{"source", src.label(c)}, {"terms", terms_json(terms_of(tgt, v))}});
    }
    return arr;
}

// [{left, right, terms}] over `space`; returns the resolved triples.
struct Entry {
    std::size_t left;
    std::size_t right;
    Vector value;
    std::string path;
};

std::vector<Entry> parse_pairs(const json& j, const std::string& path, const GradedSpace& s) {
    const json& arr = get_array(j, path);
    std::vector<Entry> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = at(path, i);
        check_keys(arr[i], p, {"left", "right", "terms"});
        const std::size_t l = label_index(s, get_string(need(arr[i], p, "left"), join(p, "left")), join(p, "left"));
        const std::size_t r = label_index(s, get_string(need(arr[i], p, "right"), join(p, "right")), join(p, "right"));
        Vector v = resolve_terms(s, parse_terms(need(arr[i], p, "terms"), join(p, "terms")), join(p, "terms"));
        out.push_back({l, r, std::move(v), p});
    }
    return out;
}

DglaPtr parse_dgla_body(const json& obj, const std::string& path) {
    check_keys(obj, path, {"name", "window", "basis", "differential", "bracket"});
    const std::string name = get_string(need(obj, path, "name"), join(path, "name"));
    SpacePtr space = parse_space(obj, path);
    Matrix d = parse_linear(need(obj, path, "differential"), join(path, "differential"), *space, *space);
    std::vector<BracketEntry> entries;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& e : parse_pairs(need(obj, path, "bracket"), join(path, "bracket"), *space)) {
        std::size_t i = e.left, j = e.right;
        Vector v = std::move(e.value);
        if (i > j) {
            const int s = space->degree_of(i) * space->degree_of(j);
            v = s % 2 == 0 ? negate(v) : v;
            std::swap(i, j);
        }
        if (!seen.insert({i, j}).second)
            schema(e.path, "bracket [" + space->label(i) + ", " + space->label(j) + "] given twice");
        if (!is_zero(v)) entries.push_back({i, j, std::move(v)});
    }
    return located(path.empty() ? "bracket" : path, [&] {
        return std::make_shared<const Dgla>(name, space, std::move(d), std::move(entries));
    });
}

json dgla_body(const Dgla& l) {
    json obj;
    obj["name"] = l.name();
    const GradedSpace& s = *l.space();
    space_json(obj, s);
    obj["differential"] = linear_json(l.differential(), s, s);
    json br = json::array();
    for (const auto& e : l.entries())
        br.push_back({{"left", s.label(e.left)}, {"right", s.label(e.right)}, {"terms", terms_json(terms_of(s, e.value))}});
    obj["bracket"] = br;
    return obj;
}

DglaMorphism parse_morphism_body(const json& obj, const std::string& path) {
    check_keys(obj, path, {"source", "target", "map"});
    DglaPtr src = parse_dgla_body(need(obj, path, "source"), join(path, "source"));
    DglaPtr tgt = parse_dgla_body(need(obj, path, "target"), join(path, "target"));
    Matrix m = parse_linear(need(obj, path, "map"), join(path, "map"), *src->space(), *tgt->space());
    return DglaMorphism(src, tgt, std::move(m));
}

json morphism_body(const DglaMorphism& f) {
    return {{"source", dgla_body(*f.source())},
            {"target", dgla_body(*f.target())},
            {"map", linear_json(f.matrix(), *f.source()->space(), *f.target()->space())}};
}

AlgebraPtr parse_algebra_body(const json& obj, const std::string& path) {
    check_keys(obj, path, {"name", "window", "basis", "differential", "product"});
    const std::string name = get_string(need(obj, path, "name"), join(path, "name"));
    SpacePtr space = parse_space(obj, path);
    Matrix d = parse_linear(need(obj, path, "differential"), join(path, "differential"), *space, *space);
    const std::size_t n = space->total_dim();
    std::vector<Vector> products(n * n, zeros(n));
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& e : parse_pairs(need(obj, path, "product"), join(path, "product"), *space)) {
        if (!seen.insert({e.left, e.right}).second)
            schema(e.path, "product " + space->label(e.left) + "·" + space->label(e.right) + " given twice");
        products[e.left * n + e.right] = std::move(e.value);
    }
    return located(path.empty() ? "product" : path, [&] {
        return std::make_shared<const NilpotentAlgebra>(name, space, std::move(d), std::move(products));
    });
}

json algebra_body(const NilpotentAlgebra& a) {
    json obj;
    obj["name"] = a.name();
    const GradedSpace& s = *a.space();
    space_json(obj, s);
    obj["differential"] = linear_json(a.differential(), s, s);
    json pr = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Vector& v = a.basis_product(i, j);
            if (is_zero(v)) continue;
            pr.push_back({{"left", s.label(i)}, {"right", s.label(j)}, {"terms", terms_json(terms_of(s, v))}});
        }
    obj["product"] = pr;
    return obj;
}

SmallExtension parse_extension_body(const json& obj, const std::string& path) {
    check_keys(obj, path, {"source", "target", "alpha", "kernel", "section"});
    SmallExtension e;
    e.b = parse_algebra_body(need(obj, path, "source"), join(path, "source"));
    e.a = parse_algebra_body(need(obj, path, "target"), join(path, "target"));
    const GradedSpace& sb = *e.b->space();
    const GradedSpace& sa = *e.a->space();
    e.alpha = parse_linear(need(obj, path, "alpha"), join(path, "alpha"), sb, sa);
    e.section = parse_linear(need(obj, path, "section"), join(path, "section"), sa, sb);
    const std::string kpath = join(path, "kernel");
    const json& ker = get_array(need(obj, path, "kernel"), kpath);
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < ker.size(); ++i)
        cols.push_back(resolve_terms(sb, parse_terms(ker[i], at(kpath, i)), at(kpath, i)));
    e.kernel = Matrix::from_columns(sb.total_dim(), cols);
    return e;
}

json extension_body(const SmallExtension& e) {
    const GradedSpace& sb = *e.b->space();
    const GradedSpace& sa = *e.a->space();
    json ker = json::array();
    for (std::size_t c = 0; c < e.kernel.cols(); ++c) ker.push_back(terms_json(terms_of(sb, e.kernel.col(c))));
    return {{"source", algebra_body(*e.b)},
            {"target", algebra_body(*e.a)},
            {"alpha", linear_json(e.alpha, sb, sa)},
            {"section", linear_json(e.section, sa, sb)},
            {"kernel", ker}};
}

AlgebraPtr parse_coefficients(const json& obj, const std::string& path) {
    const json& c = need(obj, path, "coefficients");
    if (c.is_null()) return nullptr;
    return parse_algebra_body(c, join(path, "coefficients"));
}

json coefficients_json(const AlgebraPtr& a) { return a ? algebra_body(*a) : json(nullptr); }

std::string parse_owner(const json& obj) {
    std::string o = get_string(need(obj, "", "owner"), "owner");
    if (o.rfind("sha256:", 0) != 0 || o.size() != 7 + 64) schema("owner", "expected sha256:<64 hex digits>");
    return o;
}

PolyTerms parse_poly_terms(const json& j, const std::string& path) {
    check_keys(j, path, {"t", "dt"});
    PolyTerms out;
    for (const char* part : {"t", "dt"}) {
        auto& dst = std::string(part) == "t" ? out.t : out.dt;
        const std::string ppath = join(path, part);
        const json& arr = get_array(need(j, path, part), ppath);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = at(ppath, i);
            check_keys(arr[i], p, {"exponent", "terms"});
            const long long k = get_int(need(arr[i], p, "exponent"), join(p, "exponent"));
            if (k < 0 || k > 64) schema(join(p, "exponent"), "exponent out of range");
            if (dst.count(static_cast<unsigned>(k))) schema(join(p, "exponent"), "exponent given twice");
            Terms t = parse_terms(need(arr[i], p, "terms"), join(p, "terms"));
            if (!t.empty()) dst[static_cast<unsigned>(k)] = std::move(t);
        }
    }
    return out;
}

json poly_terms_json(const PolyTerms& m) {
    json out;
    for (const char* part : {"t", "dt"}) {
        const auto& src = std::string(part) == "t" ? m.t : m.dt;
        json arr = json::array();
        for (const auto& [k, t] : src)
            if (!t.empty()) arr.push_back({{"exponent", k}, {"terms", terms_json(t)}});
        out[part] = arr;
    }
    return out;
}

std::string first_violation(const ValidationReport& r) {
    const Violation& v = r.violations.front();
    std::string w;
    for (std::size_t i = 0; i < v.witness.size(); ++i) w += (i ? ", " : "") + v.witness[i];
    return v.axiom + " at (" + w + ")" + (v.detail.empty() ? "" : ": " + v.detail);
}

void require(const ValidationReport& r, const std::string& what) {
    if (!r.ok()) throw Error(ErrorCode::AxiomViolation, what + ": " + first_violation(r));
}

void validate_document(const Document& doc) {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, DglaPtr>) {
                require(validate_dgla(*d), d->name());
            } else if constexpr (std::is_same_v<T, DglaMorphism>) {
                require(validate_dgla(*d.source()), d.source()->name());
                require(validate_dgla(*d.target()), d.target()->name());
                require(validate_morphism(d), "map");
            } else if constexpr (std::is_same_v<T, PairDoc>) {
                for (const DglaMorphism* f : {&d.h, &d.g}) {
                    require(validate_dgla(*f->source()), f->source()->name());
                    require(validate_morphism(*f), f == &d.h ? "h" : "g");
                }
                require(validate_dgla(*d.h.target()), d.h.target()->name());
            } else if constexpr (std::is_same_v<T, AlgebraPtr>) {
                require(validate_artin(*d), d->name());
            } else if constexpr (std::is_same_v<T, SmallExtension>) {
                require(validate_artin(*d.b), d.b->name());
                require(validate_artin(*d.a), d.a->name());
                require(validate_small_extension(d), "small extension");
            } else if constexpr (std::is_same_v<T, ElementDoc> || std::is_same_v<T, TripleDoc>) {
                if (d.coefficients) require(validate_artin(*d.coefficients), d.coefficients->name());
            }
        },
        doc);
}

Document parse_body(const std::string& kind, const json& j) {
    if (kind == "dgla") return parse_dgla_body(j, "");
    if (kind == "morphism") return parse_morphism_body(j, "");
    if (kind == "algebra") return parse_algebra_body(j, "");
    if (kind == "small-extension") return parse_extension_body(j, "");
    if (kind == "pair") {
        check_keys(j, "", {"name", "h", "g"});
        const std::string name = get_string(need(j, "", "name"), "name");
        DglaMorphism h = parse_morphism_body(need(j, "", "h"), "h");
        DglaMorphism g = parse_morphism_body(need(j, "", "g"), "g");
        if (dgla_body(*h.target()) != dgla_body(*g.target()))
            throw Error(ErrorCode::TargetMismatch, "g.target: differs from h.target ('" + h.target()->name() +
                                                       "' vs '" + g.target()->name() + "')");
        // share one target object
        DglaMorphism g2(g.source(), h.target(), g.matrix());
        return PairDoc{name, std::move(h), std::move(g2)};
    }
    if (kind == "element") {
        check_keys(j, "", {"owner", "coefficients", "terms"});
        ElementDoc e;
        e.owner = parse_owner(j);
        e.coefficients = parse_coefficients(j, "");
        e.terms = parse_terms(need(j, "", "terms"), "terms");
        return e;
    }
    if (kind == "triple") {
        check_keys(j, "", {"owner", "coefficients", "x", "y", "p"});
        TripleDoc t;
        t.owner = parse_owner(j);
        t.coefficients = parse_coefficients(j, "");
        if (!t.coefficients) schema("coefficients", "a triple needs a coefficient algebra");
        t.x = parse_terms(need(j, "", "x"), "x");
        t.y = parse_terms(need(j, "", "y"), "y");
        t.p = parse_terms(need(j, "", "p"), "p");
        return t;
    }
    if (kind == "h-element") {
        check_keys(j, "", {"owner", "l", "n", "m"});
        HElementDoc h;
        h.owner = parse_owner(j);
        h.l = parse_terms(need(j, "", "l"), "l");
        h.n = parse_terms(need(j, "", "n"), "n");
        h.m = parse_poly_terms(need(j, "", "m"), "m");
        return h;
    }
    schema("kind", "unknown document kind '" + kind + "'");
}

}  // namespace

std::string document_kind(const Document& doc) {
    return std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, DglaPtr>) return "dgla";
            else if constexpr (std::is_same_v<T, DglaMorphism>) return "morphism";
            else if constexpr (std::is_same_v<T, PairDoc>) return "pair";
            else if constexpr (std::is_same_v<T, AlgebraPtr>) return "algebra";
            else if constexpr (std::is_same_v<T, SmallExtension>) return "small-extension";
            else if constexpr (std::is_same_v<T, ElementDoc>) return "element";
            else if constexpr (std::is_same_v<T, TripleDoc>) return "triple";
            else return "h-element";
        },
        doc);
}

Document parse_document(const std::string& text, bool validate) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                                e.what());
    }
    if (!j.is_object()) schema("(root)", "expected an object");
    const std::string format = get_string(need(j, "", "format"), "format");
    if (format != kFormatTag) schema("format", "unsupported format '" + format + "'");
    const std::string conv = get_string(need(j, "", "convention"), "convention");
    if (conv != kConeConvention) schema("convention", "unsupported convention '" + conv + "'");
    const std::string kind = get_string(need(j, "", "kind"), "kind");
    json body = j;
    for (const char* k : {"format", "convention", "kind"}) body.erase(k);
    Document doc = parse_body(kind, body);
    if (validate) validate_document(doc);
    return doc;
}

json to_json(const Document& doc) {
    json body = std::visit(
        [](const auto& d) -> json {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, DglaPtr>) return dgla_body(*d);
            else if constexpr (std::is_same_v<T, DglaMorphism>) return morphism_body(d);
            else if constexpr (std::is_same_v<T, PairDoc>)
                return {{"name", d.name}, {"h", morphism_body(d.h)}, {"g", morphism_body(d.g)}};
            else if constexpr (std::is_same_v<T, AlgebraPtr>) return algebra_body(*d);
            else if constexpr (std::is_same_v<T, SmallExtension>) return extension_body(d);
            else if constexpr (std::is_same_v<T, ElementDoc>)
                return {{"owner", d.owner}, {"coefficients", coefficients_json(d.coefficients)},
                        {"terms", terms_json(d.terms)}};
            else if constexpr (std::is_same_v<T, TripleDoc>)
                return {{"owner", d.owner}, {"coefficients", coefficients_json(d.coefficients)},
                        {"x", terms_json(d.x)}, {"y", terms_json(d.y)}, {"p", terms_json(d.p)}};
            else
                return {{"owner", d.owner}, {"l", terms_json(d.l)}, {"n", terms_json(d.n)},
                        {"m", poly_terms_json(d.m)}};
        },
        doc);
    body["format"] = kFormatTag;
    body["convention"] = kConeConvention;
    body["kind"] = document_kind(doc);
    return body;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string serialize(const Document& doc) { return canonical_dump(to_json(doc)); }

std::string digest(const Document& doc) {
    const std::string text = to_json(doc).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::InvalidInput, "sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

Vector resolve_terms(const GradedSpace& space, const Terms& terms, const std::string& field) {
    Vector v = zeros(space.total_dim());
    for (const auto& [label, c] : terms) v[label_index(space, label, join(field, label))] = c;
    return v;
}

Terms terms_of(const GradedSpace& space, const Vector& v) {
    Terms out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out[space.label(i)] = v[i];
    return out;
}

PolyElement resolve_poly(const GradedSpace& space, const PolyTerms& m, const std::string& field) {
    PolyElement x;
    for (const auto& [k, t] : m.t) x.t[k] = resolve_terms(space, t, join(field, "t^" + std::to_string(k)));
    for (const auto& [k, t] : m.dt) x.dt[k] = resolve_terms(space, t, join(field, "t^" + std::to_string(k) + "dt"));
    x.prune();
    return x;
}

PolyTerms poly_terms_of(const GradedSpace& space, const PolyElement& x) {
    PolyTerms out;
    for (const auto& [k, v] : x.t) out.t[k] = terms_of(space, v);
    for (const auto& [k, v] : x.dt) out.dt[k] = terms_of(space, v);
    return out;
}

}  // namespace mcdeform
