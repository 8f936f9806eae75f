#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "dpd/polyvector.hpp"
#include "dpd/presentation.hpp"
#include "dpd/representation.hpp"

namespace dpd {

struct ParseError : std::runtime_error {
    ParseError(const std::string& file, int line, const std::string& expected)
        : std::runtime_error(file + ":" + std::to_string(line) + ": expected " + expected),
          line_no(line) {}
    int line_no;
};

// Polyvector text files: header "V: N; degrees: d1 ... dN" followed by term
// lines "<rat> ; t: a^e ... ; psi: a^e ... ; h: k".  Serialization is
// canonical (terms in monomial order, reduced rationals) and the parse of a
// canonical file serializes back byte for byte.
struct ParsedPoly {
    std::shared_ptr<VSpace> space;
    PolyVector poly;
};
ParsedPoly parse_polyvector(const std::string& text, const std::string& filename = "<input>");
std::string serialize_polyvector(const PolyVector& p);

// Bracket family files: same header, then lines
// "mu k (m,n) out: a ... in: b ... = <rat>".
struct ParsedFamily {
    std::shared_ptr<VSpace> space;
    BracketFamily family;
};
ParsedFamily parse_family(const std::string& text, const std::string& filename = "<input>");
std::string serialize_family(const BracketFamily& f);

// Presentation files: "generators:" with lines
// "g <name> (m,n) degree <d> action <triv|sgn> <triv|sgn>", then
// "relations:" with lines "rel <rat> <vertex>... <rat> <vertex>..." where a
// vertex is "<gen>[<outrefs>|<inrefs>]" and refs are o<l> (out leg), i<l>
// (in leg) or e<j> (internal edge), comma separated in slot order.
std::shared_ptr<QuadraticPresentation> parse_presentation(const std::string& text,
                                                          const std::string& filename = "<input>");
std::string serialize_presentation(const QuadraticPresentation& p);

std::string read_file(const std::string& path);

} // namespace dpd
