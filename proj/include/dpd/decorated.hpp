#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpd/graph.hpp"
#include "dpd/rational.hpp"
#include "dpd/sbimodule.hpp"

namespace dpd {

// One vertex decoration: a basis element together with local labelings.
// out_attach[j] = index into local_out_edges(graph, v) for the generator's
// output j+1; in_attach[j] likewise for input j+1.
struct VertexDec {
    int gen = 0;
    std::vector<int> out_attach;
    std::vector<int> in_attach;
};

// A decorated graph before canonicalization.  factor_order lists the
// vertices in tensor-factor order.
struct ConcreteDecorated {
    LabeledGraph graph;
    std::vector<VertexDec> decs;
    std::vector<int> factor_order;
};

// Canonical key: canonical tree plus one basis choice per canonical vertex.
// Local labelings are normalized away; their signs live in the coefficient.
struct DecKey {
    std::string cert;
    std::vector<int> gens;
    LabeledGraph graph;

    bool operator<(const DecKey& o) const {
        if (cert != o.cert) return cert < o.cert;
        return gens < o.gens;
    }
    bool operator==(const DecKey& o) const { return cert == o.cert && gens == o.gens; }
};

// Exact-rational linear combination of canonical decorated trees in one
// (m,n) component over a fixed generator basis.
struct DecoratedElement {
    int m = 0, n = 0;
    const SBimoduleBasis* basis = nullptr;
    std::map<DecKey, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    size_t term_count() const { return terms.size(); }
    void add_term(const DecKey& k, const Rat& c);
    DecoratedElement& operator+=(const DecoratedElement& o);
    DecoratedElement& operator*=(const Rat& c);
    bool operator==(const DecoratedElement& o) const { return m == o.m && n == o.n && terms == o.terms; }
};

// Canonicalizes a concrete decorated tree; returns the key and the sign
// accumulated by the vertex reordering and the coset normalizations.
std::pair<DecKey, Rat> canonicalize_decorated(const SBimoduleBasis& basis, const ConcreteDecorated& x);

DecoratedElement make_element(const SBimoduleBasis& basis, int m, int n);
DecoratedElement decorated_corolla(const SBimoduleBasis& basis, int m, int n, int gen);
DecoratedElement unit_element(const SBimoduleBasis& basis);

// sigma . X . tau : relabels global legs and recanonicalizes.
DecoratedElement act(const Perm& sigma, const DecoratedElement& x, const Perm& tau);

// Opposite element: all edges reversed, inputs and outputs exchanged.
// op_basis must be the arity-mirrored bimodule (component (n,m) for (m,n)).
DecoratedElement op(const DecoratedElement& x, const SBimoduleBasis& op_basis);

// Attachment of a plug's legs to a template vertex's local edges.
// out_labels[s] = plug out-leg label sitting on local out slot s of the
// template vertex (and likewise in_labels).  Empty means identity.
struct PlugAttach {
    std::vector<int> out_labels;
    std::vector<int> in_labels;
};

// Free-dioperad composition: multilinear extension of grafting with Koszul
// signs.  One plug per template vertex; unit_element plugs are allowed at
// (1,1) template vertices.
DecoratedElement compose_free(const LabeledGraph& tmpl,
                              const std::vector<DecoratedElement>& plugs,
                              const std::vector<PlugAttach>& attach = {});

} // namespace dpd
