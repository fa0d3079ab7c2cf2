#ifndef DORE_SPEC_PARSER_HPP
#define DORE_SPEC_PARSER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dore/dcv.hpp"

namespace dore {

// Parsed and resolved declarative spec: ground field, one ring presentation,
// named map families, the parameter/tail block, extension and candidate
// declarations, and check directives.
//
// Grammar (line oriented, '#' comments):
//   field Q | field F <p>
//   ring <name> gens <g1> <g2> ... [order <g1> < <g2> ...]
//   rel <word> = <ring-expr>
//   map <family><comp> <gen> = <ring-expr>     (comp: 11/12/21/22 or 1/2)
//   param p12 = <scalar> | param p11 = <scalar>
//   tau0 = <ring-expr> | tau1 = ... | tau2 = ...
//   extension <name> = double(<ring>, <sigma-family>, <delta-family|zero>, P, tau)
//   dcv <name> [target <ext>] q1 = <ext-expr> q2 = <ext-expr> source(<k> = <v>, ...)
//   search <name> [target <ext>] degree <n> pool <s1> <s2> ... shape q1 = <monos>
//          shape q2 = <monos> source(<k> = <v>, ...)
//   check extension <name> | check dcv <name> | check iterated <name> |
//   check graded <name> | check change-basis <name> | check basis <name> |
//   check search <name>   [--max-degree <d>] [--scope scalars|generators|basis]
//
// Source keys: p12, p11, tau0, tau1, tau2 (value or 'solve'), sigma, delta
// (family names; delta may be 'zero').
class SpecDocument {
public:
    Field field;

    std::string ring_name;
    RingPtr ring;

    struct SigmaFamily {
        // images[i][j][gen], zero when unspecified
        std::vector<RingElement> images[2][2];
        SigmaPtr built;
    };
    struct DeltaFamily {
        std::vector<RingElement> images[2];
    };
    std::map<std::string, SigmaFamily> sigma_families;
    std::map<std::string, DeltaFamily> delta_families;

    std::optional<Scalar> p12, p11;
    std::optional<RingElement> tau[3];

    struct ExtensionDecl {
        std::string name;
        std::string sigma_family;
        std::string delta_family; // "zero" allowed
        AlgebraPtr algebra;       // built without the well-definedness gate
    };
    std::vector<ExtensionDecl> extensions;

    struct DcvDecl {
        std::string name;
        std::string target;
        ExtElement q1, q2;
        SourceTemplateData source; // unset fields marked 'solve'
        std::string sigma_family, delta_family;
    };
    std::vector<DcvDecl> dcvs;

    struct SearchDecl {
        std::string name;
        std::string target;
        std::size_t degree = 1;
        std::vector<Scalar> pool;
        std::vector<ExpPair> q1_monomials, q2_monomials;
        SourceTemplateData source;
        std::string sigma_family, delta_family;
    };
    std::vector<SearchDecl> searches;

    struct CheckDirective {
        std::string kind;    // extension, dcv, iterated, graded, change-basis, basis, search
        std::string subject;
        std::optional<std::size_t> max_degree;
        std::optional<DcvScope> scope;
    };
    std::vector<CheckDirective> checks;

    const ExtensionDecl& extension(const std::string& name) const;
    const DcvDecl& dcv(const std::string& name) const;
    const SearchDecl& search(const std::string& name) const;
};

SpecDocument parse_spec(const std::string& text);

// Canonical rendering; parsing it again yields an identical document
// (render-parse idempotence is the round-trip contract).
std::string render_spec(const SpecDocument& doc);

} // namespace dore

#endif
