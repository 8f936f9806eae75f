#include "dpd/resolution.hpp"

#include <stdexcept>
#include <string>

#include "dpd/presentation.hpp"

namespace dpd {

namespace {

std::string box_name(int m, int n, int i) {
    return "e" + std::to_string(m) + "_" + std::to_string(n) + "_" + std::to_string(i);
}

// shared derivation extension: applies `diff` to one vertex at a time with
// the Koszul sign of moving a degree-one operator past the earlier factors
DecoratedElement extend_derivation(const SBimoduleBasis& E, const DecoratedElement& x,
                                   const std::function<DecoratedElement(int, int, int)>& diff) {
    DecoratedElement out = make_element(E, x.m, x.n);
    for (auto& [key, coef] : x.terms) {
        const LabeledGraph& g = key.graph;
        long deg_before = 0;
        for (int v = 0; v < g.num_vertices; ++v) {
            int mv = g.out_degree(v), nv = g.in_degree(v);
            const Component* c = E.find(mv, nv);
            if (!c) throw std::logic_error("derivation: vertex arity outside bimodule");
            DecoratedElement dv = diff(mv, nv, key.gens[v]);
            if (!dv.is_zero()) {
                std::vector<DecoratedElement> plugs(g.num_vertices);
                for (int u = 0; u < g.num_vertices; ++u) {
                    if (u == v) plugs[u] = dv;
                    else plugs[u] = decorated_corolla(E, g.out_degree(u), g.in_degree(u), key.gens[u]);
                }
                DecoratedElement piece = compose_free(g, plugs);
                Rat s = (deg_before % 2 == 0) ? coef : -coef;
                piece *= s;
                out += piece;
            }
            deg_before += c->gens[key.gens[v]].degree;
        }
    }
    return out;
}

} // namespace

Resolution::Resolution(int max_arity_sum) : max_sum_(max_arity_sum) {
    for (int m = 1; m <= max_arity_sum - 1; ++m)
        for (int n = 1; n <= max_arity_sum - m; ++n) {
            if (m + n < 3) continue;
            Component c;
            c.m = m;
            c.n = n;
            c.out_rep = RepKind::Sign;
            c.in_rep = RepKind::Trivial;
            for (int i = 0; i < m; ++i) c.gens.push_back({box_name(m, n, i), 2 - m});
            E_.add_component(std::move(c));
        }
}

std::vector<ResGen> Resolution::generators(int m, int n) const {
    std::vector<ResGen> out;
    if (m < 1 || n < 1 || m + n < 3) return out;
    for (int i = 0; i < m; ++i) out.push_back({m, n, i});
    return out;
}

DecoratedElement Resolution::differential(const ResGen& g) const {
    if (g.m < 1 || g.n < 1 || g.m + g.n < 3 || g.idx < 0 || g.idx >= g.m)
        throw std::invalid_argument("differential: invalid generator");
    if (g.m + g.n > max_sum_)
        throw std::length_error("differential: generator outside constructed range");
    auto gen_of = [&](int mv, int nv, int idx) {
        if (mv + nv < 3 || idx < 0 || idx >= mv) return -1;
        return idx;
    };
    return shuffle_sum_element(E_, g.m, g.n, g.idx, gen_of);
}

DecoratedElement Resolution::extend_as_derivation(const DecoratedElement& x) const {
    return extend_derivation(E_, x, [&](int mv, int nv, int idx) {
        return differential(ResGen{mv, nv, idx});
    });
}

bool Resolution::d_squared_is_zero(const ResGen& g) const {
    return extend_as_derivation(differential(g)).is_zero();
}

// ---------------------------------------------------------------------------

L2Resolution::L2Resolution(int max_arity) : max_arity_(max_arity) {
    for (int n = 2; n <= max_arity; ++n) {
        Component c;
        c.m = 1;
        c.n = n;
        c.out_rep = RepKind::Trivial;
        c.in_rep = RepKind::Sign;
        for (int i = 0; i < n; ++i) c.gens.push_back({box_name(1, n, i) + "l", 2 - n});
        E_.add_component(std::move(c));
    }
}

std::vector<L2Gen> L2Resolution::generators(int n) const {
    std::vector<L2Gen> out;
    if (n < 2) return out;
    for (int i = 0; i < n; ++i) out.push_back({n, i});
    return out;
}

DecoratedElement L2Resolution::differential(const L2Gen& g) const {
    const int n = g.n;
    if (n < 2 || g.idx < 0 || g.idx >= n) throw std::invalid_argument("differential: invalid generator");
    if (n > max_arity_) throw std::length_error("differential: generator outside constructed range");
    DecoratedElement out = make_element(E_, 1, n);
    const Perm id1 = Perm::identity(1);
    for (int k = 2; k <= n - 1; ++k)
        for (int i1 = 0; i1 <= g.idx; ++i1) {
            int i2 = g.idx - i1;
            // upper vertex has arity k and index i2, lower arity n-k+1, index i1
            if (i2 > k - 1 || i1 > n - k) continue;
            for (auto& tau : enumerate_unshuffles(k, n - k)) {
                int e = (perm_sign(tau) < 0 ? 1 : 0) + (k - 1) * (n - k + 1);
                Rat sgn = (e % 2 == 0) ? 1 : -1;
                auto cd = split_tree(1, n, 0, k, id1, tau, i2, i1);
                auto [key, s] = canonicalize_decorated(E_, cd);
                out.add_term(key, sgn * s);
            }
        }
    return out;
}

DecoratedElement L2Resolution::extend_as_derivation(const DecoratedElement& x) const {
    return extend_derivation(E_, x, [&](int mv, int nv, int idx) {
        if (mv != 1) throw std::logic_error("compatible-Lie resolution has single-output generators only");
        return differential(L2Gen{nv, idx});
    });
}

bool L2Resolution::d_squared_is_zero(const L2Gen& g) const {
    return extend_as_derivation(differential(g)).is_zero();
}

} // namespace dpd
