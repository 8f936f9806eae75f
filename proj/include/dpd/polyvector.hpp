#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dpd/rational.hpp"

namespace dpd {

// Formal graded manifold data: degrees |e_a| for a = 1..N and an optional
// degree-one differential d(e_b) = D[a-1][b-1] e_a with D^2 = 0.
struct VSpace {
    std::vector<long> degrees;
    std::vector<std::vector<Rat>> D; // empty when absent, else N x N

    int dim() const { return static_cast<int>(degrees.size()); }
    long e_degree(int a) const { return degrees[a - 1]; }
    long t_degree(int a) const { return -degrees[a - 1]; }
    long psi_degree(int a) const { return degrees[a - 1] + 1; }
    bool has_d() const { return !D.empty(); }
    void validate() const; // throws when D is malformed, degree-violating or D^2 != 0
};

// t-exponents and psi-exponents as sorted (index, exponent) lists; odd
// symbols never carry exponent > 1 (the monomial is zero instead).
struct Monomial {
    std::vector<std::pair<int, int>> t;
    std::vector<std::pair<int, int>> psi;
    int hbar = 0;

    int weight() const; // number of psi factors
    long t_total_degree() const;
    auto operator<=>(const Monomial&) const = default;
};

long monomial_degree(const VSpace& V, const Monomial& mono);

// Sparse exact-rational polynomial in t^a, psi_a and the central parameter.
struct PolyVector {
    const VSpace* V = nullptr;
    std::map<Monomial, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const Monomial& mono, const Rat& c);
    PolyVector& operator+=(const PolyVector& o);
    PolyVector& operator*=(const Rat& c);
    bool operator==(const PolyVector& o) const { return terms == o.terms; }

    // -1 when zero; throws when inhomogeneous
    long degree() const;
    bool is_homogeneous() const;
    PolyVector part(int hbar_power, int weight) const; // slice, with hbar stripped
    PolyVector shift_hbar(int k) const;
};

PolyVector make_poly(const VSpace& V);
PolyVector poly_one(const VSpace& V);
PolyVector poly_t(const VSpace& V, int a);
PolyVector poly_psi(const VSpace& V, int a);

// Builds a monomial from a word of symbols given in writing order,
// normalizing with Koszul signs; returns coefficient 0 for squares of odd
// symbols.  Symbols: (kind 0 = t, kind 1 = psi, index).
std::pair<Monomial, Rat> normalize_word(const VSpace& V,
                                        const std::vector<std::pair<int, int>>& word, int hbar);

PolyVector multiply(const PolyVector& A, const PolyVector& B);
PolyVector partial_t(const PolyVector& P, int a);
PolyVector partial_psi(const PolyVector& P, int a);

// Odd Schouten bracket [A,B] = A.B + (-1)^{|A||B|+|A|+|B|} B.A with
// A.B = sum_a dA/dpsi_a dB/dt^a; inputs must be degree homogeneous.
PolyVector schouten(const PolyVector& A, const PolyVector& B);
// Same bracket with the formal parameter treated as a central scalar;
// extended bilinearly over homogeneous pieces of each hbar power.
PolyVector schouten_hbar(const PolyVector& A, const PolyVector& B);

struct GradeInfo {
    std::set<long> degrees;
    std::set<int> weights;
    std::set<int> hbar_powers;
    std::map<int, Rat> value_at_zero; // per hbar power
    bool pointed() const;
};
GradeInfo grade_info(const PolyVector& P);

// every hbar^k part has psi-weight >= k+1
bool in_gV(const PolyVector& P);

} // namespace dpd
