#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dpd/perm.hpp"
#include "dpd/rational.hpp"

namespace dpd {

// The symmetric-group actions carried by generator components.  Only the
// trivial and sign representations (and direct sums of them) occur in this
// calculus; the action of any permutation is +/- the identity on each basis
// element.
enum class RepKind { Trivial, Sign };

struct GenInfo {
    std::string name;
    long degree = 0;
};

struct Component {
    int m = 0, n = 0;
    std::vector<GenInfo> gens;
    RepKind out_rep = RepKind::Trivial;
    RepKind in_rep = RepKind::Trivial;
};

// Graded S-bimodule with explicit basis per (m,n).
struct SBimoduleBasis {
    std::map<std::pair<int, int>, Component> comps;

    const Component* find(int m, int n) const {
        auto it = comps.find({m, n});
        return it == comps.end() ? nullptr : &it->second;
    }
    int dim(int m, int n) const {
        auto* c = find(m, n);
        return c ? static_cast<int>(c->gens.size()) : 0;
    }
    void add_component(Component c) { comps[{c.m, c.n}] = std::move(c); }
};

// Left action of sigma in S_m on basis element `gen`, and right action of
// tau in S_n; monomial actions, so the result is (gen, +/-1).
std::pair<int, Rat> act_out(const Component& c, const Perm& sigma, int gen);
std::pair<int, Rat> act_in(const Component& c, int gen, const Perm& tau);

// Czech dual: degrees negated, both reps twisted by sign.  Involutive.
SBimoduleBasis czech_dual(const SBimoduleBasis& b);

} // namespace dpd
