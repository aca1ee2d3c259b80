#include "mcdeform/builtins.hpp"

#include "mcdeform/error.hpp"

namespace mcdeform {

namespace {

struct Term {
    std::string label;
    Scalar coeff;
};

// Small builder working on labels.
class Builder {
public:
    Builder(std::string name, int dmin, int dmax, std::vector<std::vector<std::string>> labels)
        : name_(std::move(name)), space_(GradedSpace::make(dmin, dmax, std::move(labels))),
          d_(space_->total_dim(), space_->total_dim()) {}

    Builder& d(const std::string& src, std::vector<Term> terms) {
        const std::size_t c = idx(src);
        for (const auto& t : terms) d_(idx(t.label), c) = t.coeff;
        return *this;
    }
    Builder& bracket(const std::string& a, const std::string& b, std::vector<Term> terms) {
        std::size_t i = idx(a), j = idx(b);
        Vector v = zeros(space_->total_dim());
        for (const auto& t : terms) v[idx(t.label)] = t.coeff;
        if (i > j) {
            // store [e_j, e_i] = -(-1)^{|a||b|} [e_i, e_j]
            const int s = space_->degree_of(i) * space_->degree_of(j);
            v = scale(s % 2 == 0 ? Scalar(-1) : Scalar(1), v);
            std::swap(i, j);
        }
        entries_.push_back({i, j, std::move(v)});
        return *this;
    }
    DglaPtr build() { return std::make_shared<const Dgla>(name_, space_, d_, entries_); }

private:
    std::size_t idx(const std::string& l) const {
        auto k = space_->find(l);
        if (!k) throw Error(ErrorCode::InvalidInput, "unknown label '" + l + "'");
        return *k;
    }
    std::string name_;
    SpacePtr space_;
    Matrix d_;
    std::vector<BracketEntry> entries_;
};

DglaPtr make_heis0() {
    return Builder("heis0", 0, 0, {{"p", "q", "z"}}).bracket("p", "q", {{"z", 1}}).build();
}

DglaPtr make_heis() {
    return Builder("heis", 0, 1, {{"a", "b", "c"}, {"x", "y", "w"}})
        .bracket("a", "b", {{"c", 1}})
        .bracket("a", "x", {{"y", 1}})
        .bracket("b", "y", {{"w", 1}})
        .bracket("c", "x", {{"w", -1}})
        .build();
}

DglaPtr make_obstructed() {
    return Builder("obstructed", 1, 2, {{"x"}, {"y"}}).bracket("x", "x", {{"y", 2}}).build();
}

DglaPtr make_acyclic() { return Builder("acyclic", 0, 1, {{"u"}, {"v"}}).d("u", {{"v", 1}}).build(); }

DglaPtr make_abelian2() {
    return Builder("abelian2", 0, 2, {{"c"}, {"e1", "e2", "e3"}, {"w", "w2"}}).d("e3", {{"w", 1}}).build();
}

DglaPtr make_endw() {
    // f = E01 (degree -1), p = E00, q = E11, e = E10 (degree 1); d = [e, -]
    return Builder("endw", -1, 1, {{"f"}, {"p", "q"}, {"e"}})
        .d("f", {{"p", 1}, {"q", 1}})
        .d("p", {{"e", 1}})
        .d("q", {{"e", -1}})
        .bracket("f", "p", {{"f", -1}})
        .bracket("f", "q", {{"f", 1}})
        .bracket("f", "e", {{"p", 1}, {"q", 1}})
        .bracket("p", "e", {{"e", -1}})
        .bracket("q", "e", {{"e", 1}})
        .build();
}

}  // namespace

std::vector<std::string> builtin_dgla_names() {
    return {"heis0", "heis", "obstructed", "acyclic", "abelian2", "endw", "zero"};
}

DglaPtr builtin_dgla(const std::string& name) {
    if (name == "heis0") return make_heis0();
    if (name == "heis") return make_heis();
    if (name == "obstructed") return make_obstructed();
    if (name == "acyclic") return make_acyclic();
    if (name == "abelian2") return make_abelian2();
    if (name == "endw") return make_endw();
    if (name == "zero") return zero_dgla("zero");
    throw Error(ErrorCode::MissingDocument, "no built-in DGLA named '" + name + "'");
}

std::vector<std::string> builtin_pair_names() {
    return {"id-obstructed", "obstructed-n0", "acyclic-id", "heis-sub", "endw-id", "target-zero", "sources-zero"};
}

BuiltinPair builtin_pair(const std::string& name) {
    if (name == "id-obstructed" || name == "acyclic-id" || name == "endw-id") {
        const std::string base = name == "id-obstructed" ? "obstructed" : name == "acyclic-id" ? "acyclic" : "endw";
        auto l = builtin_dgla(base);
        return {name, DglaMorphism::identity(l), DglaMorphism::identity(l)};
    }
    if (name == "obstructed-n0") {
        auto m = builtin_dgla("obstructed");
        return {name, DglaMorphism::identity(m), DglaMorphism::zero(zero_dgla("zero"), m)};
    }
    if (name == "heis-sub") {
        auto m = builtin_dgla("heis");
        // span{b, c} in degree 0, span{y, w} in degree 1
        Matrix b0(3, 2), b1(3, 2);
        b0(1, 0) = 1;
        b0(2, 1) = 1;
        b1(1, 0) = 1;
        b1(2, 1) = 1;
        SubDgla sub = sub_dgla(*m, {{0, b0}, {1, b1}}, "heis-sub");
        return {name, DglaMorphism(sub.dgla, m, sub.inclusion), DglaMorphism::identity(m)};
    }
    if (name == "target-zero") {
        auto z = zero_dgla("zero");
        return {name, DglaMorphism::zero(builtin_dgla("heis0"), z), DglaMorphism::zero(builtin_dgla("acyclic"), z)};
    }
    if (name == "sources-zero") {
        auto m = builtin_dgla("obstructed");
        auto z = zero_dgla("zero");
        return {name, DglaMorphism::zero(z, m), DglaMorphism::zero(z, m)};
    }
    throw Error(ErrorCode::MissingDocument, "no built-in pair named '" + name + "'");
}

}  // namespace mcdeform
