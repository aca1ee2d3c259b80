#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "mcdeform/artin.hpp"
#include "mcdeform/dgla.hpp"
#include "mcdeform/path_object.hpp"

namespace mcdeform {

using json = nlohmann::json;

inline constexpr const char* kFormatTag = "mcdeform-v1";

/// Coordinates keyed by basis label; resolved against a space on use.
using Terms = std::map<std::string, Scalar>;

/// Element of L ⊗ m_A (or of L itself when `coefficients` is null).
struct ElementDoc {
    std::string owner;          // "sha256:..." of the owning DGLA document
    AlgebraPtr coefficients;
    Terms terms;
};

/// MC triple (x, y, p) over a pair.
struct TripleDoc {
    std::string owner;          // digest of the pair document
    AlgebraPtr coefficients;
    Terms x;
    Terms y;
    Terms p;
};

struct PolyTerms {
    std::map<unsigned, Terms> t;
    std::map<unsigned, Terms> dt;
};

/// (l, n, m) in L ⊕ N ⊕ M[t,dt].
struct HElementDoc {
    std::string owner;          // digest of the pair document
    Terms l;
    Terms n;
    PolyTerms m;
};

struct PairDoc {
    std::string name;
    DglaMorphism h;
    DglaMorphism g;
};

using Document = std::variant<DglaPtr, DglaMorphism, PairDoc, AlgebraPtr, SmallExtension, ElementDoc, TripleDoc,
                              HElementDoc>;

/// "dgla", "morphism", "pair", "algebra", "small-extension", "element",
/// "triple", "h-element".
std::string document_kind(const Document& doc);

/// Parses JSON text. SyntaxError carries line and column; SchemaError names
/// the field path. With `validate`, the axiom checks of the matching module
/// run and the first violation is raised as AxiomViolation.
Document parse_document(const std::string& text, bool validate = true);

json to_json(const Document& doc);
/// Keys sorted, two-space indent, trailing newline.
std::string serialize(const Document& doc);
std::string canonical_dump(const json& j);

/// "sha256:<hex>" of the compact canonical form.
std::string digest(const Document& doc);

/// Coordinates of `terms` in `space`; SchemaError names the unknown label.
Vector resolve_terms(const GradedSpace& space, const Terms& terms, const std::string& field);
Terms terms_of(const GradedSpace& space, const Vector& v);
PolyElement resolve_poly(const GradedSpace& space, const PolyTerms& m, const std::string& field);
PolyTerms poly_terms_of(const GradedSpace& space, const PolyElement& x);

}  // namespace mcdeform
