#pragma once

#include <string>
#include <vector>

#include "dpd/polyvector.hpp"

namespace dpd {

// Coefficient family of a candidate representation: entries indexed by the
// level k and sorted output/input multi-indices, normalized with the
// suspended Koszul symmetries (outputs reorder like psi symbols, inputs like
// t symbols).  The k = 0 slot at (1,1) is -D.
struct BracketEntry {
    int k = 0;
    std::vector<int> out; // sorted basis indices, m = out.size()
    std::vector<int> in;  // sorted basis indices, n = in.size()
    auto operator<=>(const BracketEntry&) const = default;
};

struct BracketFamily {
    const VSpace* V = nullptr;
    std::map<BracketEntry, Rat> mu;

    // inserts a raw-tuple coefficient, folding reorder signs; zero for
    // vanishing squares
    void insert_raw(int k, std::vector<int> out, std::vector<int> in, const Rat& c);
    bool operator==(const BracketFamily& o) const { return mu == o.mu; }
};

// normalization helper shared with the tests: sorts a tuple under the given
// symbol degrees, returning the Koszul sign (0 on a vanishing square)
std::pair<std::vector<int>, int> normalize_tuple(const std::vector<long>& sym_degrees,
                                                 std::vector<int> tuple);

PolyVector gamma_from_mu(const BracketFamily& f);
BracketFamily mu_from_gamma(const PolyVector& gamma); // requires in_gV

// kL_n(f_1,...,f_n): the n-ary bracket of level k extracted from gamma,
// evaluated by iterated contraction against the inputs (t-polynomials).
PolyVector extract_brackets(const PolyVector& gamma, int k, int n,
                            const std::vector<PolyVector>& inputs);

struct Defect {
    std::string identity; // "n=..,k=.."
    std::string inputs;
    Rat residual;
};
struct DefectReport {
    std::vector<Defect> defects;
    bool empty() const { return defects.empty(); }
};

// Evaluates the compatible-homotopy-bracket identities for all arities
// n <= max_arity and levels 2 <= k <= n+1 on monomial inputs of t-degree
// <= input_degree_bound.
DefectReport sh_defect(const PolyVector& gamma, int max_arity, int input_degree_bound);

struct BihamVerdict {
    bool degree_ok = false;
    bool schouten_zero = false;
    bool pointed = false;
    bool in_g = false;
    bool all() const { return degree_ok && schouten_zero && pointed && in_g; }
};

BihamVerdict check_extended_biham(const PolyVector& gamma);
DefectReport check_extended_biham_report(const PolyVector& gamma);

struct ClassicalVerdict {
    bool first_poisson = false;  // [G0,G0] = 0
    bool second_poisson = false; // [G1,G1] = 0
    bool compatible = false;     // [G0,G1] + [G1,G0] = 0
    bool all() const { return first_poisson && second_poisson && compatible; }
};
ClassicalVerdict classical_biham_check(const PolyVector& g0, const PolyVector& g1);

// Residual of the Leibniz identity of kL_n in argument j:
// others has n-1 entries; g,h fill position j as the product g*h.
PolyVector leibniz_defect(const PolyVector& gamma, int k, int n, int j,
                          const std::vector<PolyVector>& others, const PolyVector& g,
                          const PolyVector& h);

} // namespace dpd
