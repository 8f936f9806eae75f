#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dpd/decorated.hpp"
#include "dpd/linalg.hpp"

namespace dpd {

// Generator bimodule plus weight-2 relations.
struct QuadraticPresentation {
    std::string name;
    SBimoduleBasis gens;
    std::vector<DecoratedElement> relations;

    std::vector<std::pair<int, int>> gen_arities() const;
};

// Two-vertex tree with the upper vertex carrying outputs sigma(1..j) plus
// the internal edge (as its last output) and inputs tau(1..k), and the lower
// vertex carrying outputs sigma(j+1..m) and the internal edge as its first
// input followed by tau(k+1..n).
ConcreteDecorated split_tree(int m, int n, int j, int k, const Perm& sigma, const Perm& tau,
                             int gen_upper, int gen_lower);

// The shuffle sum over 1<=k<=n, 0<=j<=m-1, 2<=j+k<=m+n-2, i1+i2=i and
// (j,m-j)/(k,n-k)-unshuffles with sign (-1)^{sgn(sigma)+j(m-j)}.
// gen_of(mv,nv,idx) selects the decorating generator or -1 when the indexed
// summand does not exist.
DecoratedElement shuffle_sum_element(const SBimoduleBasis& basis, int m, int n, int i,
                                     const std::function<int(int, int, int)>& gen_of);

// Built-in presentations.
const QuadraticPresentation& lie2_1_bi();       // one bracket, two cobrackets
const QuadraticPresentation& lie2_1_bi_dual();  // its Koszul dual (N,S)
const QuadraticPresentation& lie1();            // odd-bracket Lie operad
const QuadraticPresentation& lie2();            // compatible Lie brackets operad
const QuadraticPresentation* find_builtin(const std::string& name);

QuadraticPresentation op_presentation(const QuadraticPresentation& p, const std::string& name);

// Kronecker pairing of canonical keys, extended bilinearly.
Rat koszul_pairing(const DecoratedElement& x, const DecoratedElement& y);

// Canonical key basis of the weight-w component of the free dioperad on the
// given generators.
struct ComponentBasis {
    std::vector<DecKey> keys;
    int index_of(const DecKey& k) const;
};
ComponentBasis weight_basis(const SBimoduleBasis& gens, int m, int n, int weight);

struct SubspaceBasis {
    std::vector<DecKey> keys; // coordinate order
    std::vector<SparseRow> rows;
    int dim() const { return static_cast<int>(rows.size()); }
};

// Row-reduced basis of the annihilator of the relation span of p at (m,n)
// under the pairing, inside the weight-2 component over the Czech dual.
SubspaceBasis orthogonal_complement(const QuadraticPresentation& p, int m, int n);

// dim of the weight-w slice of F(gens)/(relations) at (m,n).
long quotient_dim(const QuadraticPresentation& p, int m, int n, int weight);

// Dimension of the two-level box product: the operad part decorates the
// lower level, the reversed co-part the upper level.
long box_product_dim(const QuadraticPresentation& operad_part,
                     const QuadraticPresentation& co_part, int m, int n);

} // namespace dpd
