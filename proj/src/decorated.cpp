#include "dpd/decorated.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dpd {

// ---------------------------------------------------------------------------
// bimodule actions

namespace {

int rep_sign(RepKind k, const Perm& s) {
    return k == RepKind::Sign ? perm_sign(s) : 1;
}

} // namespace

std::pair<int, Rat> act_out(const Component& c, const Perm& sigma, int gen) {
    if (sigma.size() != c.m) throw std::invalid_argument("act_out: permutation size mismatch");
    return {gen, Rat(rep_sign(c.out_rep, sigma))};
}

std::pair<int, Rat> act_in(const Component& c, int gen, const Perm& tau) {
    if (tau.size() != c.n) throw std::invalid_argument("act_in: permutation size mismatch");
    return {gen, Rat(rep_sign(c.in_rep, tau))};
}

SBimoduleBasis czech_dual(const SBimoduleBasis& b) {
    SBimoduleBasis d;
    for (auto& [mn, c] : b.comps) {
        Component cd = c;
        for (auto& g : cd.gens) {
            g.degree = -g.degree;
            if (!g.name.empty() && g.name.back() == '^') g.name.pop_back();
            else g.name += '^';
        }
        cd.out_rep = (c.out_rep == RepKind::Sign) ? RepKind::Trivial : RepKind::Sign;
        cd.in_rep = (c.in_rep == RepKind::Sign) ? RepKind::Trivial : RepKind::Sign;
        d.add_component(std::move(cd));
    }
    return d;
}

// ---------------------------------------------------------------------------
// element arithmetic

void DecoratedElement::add_term(const DecKey& k, const Rat& c) {
    if (dpd::is_zero(c)) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
    } else {
        it->second += c;
        if (dpd::is_zero(it->second)) terms.erase(it);
    }
}

DecoratedElement& DecoratedElement::operator+=(const DecoratedElement& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && terms.empty() && m == 0 && n == 0) { m = o.m; n = o.n; basis = o.basis; }
    if (m != o.m || n != o.n) throw std::invalid_argument("element sum: component mismatch");
    for (auto& [k, c] : o.terms) add_term(k, c);
    return *this;
}

DecoratedElement& DecoratedElement::operator*=(const Rat& c) {
    if (dpd::is_zero(c)) {
        terms.clear();
        return *this;
    }
    for (auto& [k, v] : terms) v *= c;
    return *this;
}

DecoratedElement make_element(const SBimoduleBasis& basis, int m, int n) {
    DecoratedElement e;
    e.m = m;
    e.n = n;
    e.basis = &basis;
    return e;
}

// ---------------------------------------------------------------------------
// canonicalization

namespace {

// component of the generator sitting at vertex v of g
const Component& vertex_component(const SBimoduleBasis& basis, const LabeledGraph& g, int v) {
    int mv = g.out_degree(v), nv = g.in_degree(v);
    const Component* c = basis.find(mv, nv);
    if (!c) throw std::invalid_argument("decorated element: no basis component at vertex arity");
    return *c;
}

int slot_of(const std::vector<LocalEdge>& list, LocalEdge e) {
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == e) return static_cast<int>(i);
    throw std::logic_error("local edge not found");
}

} // namespace

std::pair<DecKey, Rat> canonicalize_decorated(const SBimoduleBasis& basis, const ConcreteDecorated& x) {
    const LabeledGraph& g = x.graph;
    if (g.is_unit_edge()) {
        auto cf = canonicalize_graph(g);
        return {DecKey{cf.certificate, {}, cf.graph}, Rat(1)};
    }
    GraphClass cls = classify(g);
    if (!class_contains(GraphClass::Tree, cls))
        throw std::invalid_argument("decorated element: underlying graph is not a tree");
    const int k = g.num_vertices;
    if (static_cast<int>(x.decs.size()) != k || static_cast<int>(x.factor_order.size()) != k)
        throw std::invalid_argument("decorated element: decoration shape mismatch");

    auto cf = canonicalize_graph(g);
    std::vector<int> pos(k);
    for (int v = 0; v < k; ++v) pos[v] = cf.vertex_map(v + 1) - 1;

    // edge index map old -> canonical (trees have no parallel edges)
    std::vector<int> emap(g.edges.size());
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        std::pair<int, int> p{pos[g.edges[ei].first], pos[g.edges[ei].second]};
        auto it = std::lower_bound(cf.graph.edges.begin(), cf.graph.edges.end(), p);
        if (it == cf.graph.edges.end() || *it != p) throw std::logic_error("edge map failure");
        emap[ei] = static_cast<int>(it - cf.graph.edges.begin());
    }

    Rat sign(1);

    // Koszul sign of reordering the tensor factors into canonical vertex order
    {
        std::vector<long> degs(k);
        std::vector<int> img(k);
        std::vector<char> seen(k, 0);
        for (int j = 0; j < k; ++j) {
            int v = x.factor_order[j];
            if (v < 0 || v >= k || seen[v]) throw std::invalid_argument("factor order is not a vertex ordering");
            seen[v] = 1;
            const Component& c = vertex_component(basis, g, v);
            if (x.decs[v].gen < 0 || x.decs[v].gen >= static_cast<int>(c.gens.size()))
                throw std::invalid_argument("generator index out of range");
            degs[j] = c.gens[x.decs[v].gen].degree;
            img[pos[v]] = j + 1;
        }
        sign *= koszul_sign(degs, Perm(std::move(img)));
    }

    // per-vertex coset normalization
    std::vector<int> gens(k);
    for (int v = 0; v < k; ++v) {
        const Component& c = vertex_component(basis, g, v);
        const VertexDec& d = x.decs[v];
        const int mv = c.m, nv = c.n;
        if (static_cast<int>(d.out_attach.size()) != mv || static_cast<int>(d.in_attach.size()) != nv)
            throw std::invalid_argument("decoration attach size mismatch");
        auto lold_out = local_out_edges(g, v);
        auto lold_in = local_in_edges(g, v);
        auto lnew_out = local_out_edges(cf.graph, pos[v]);
        auto lnew_in = local_in_edges(cf.graph, pos[v]);

        std::vector<int> rho_img(mv);
        for (int l = 1; l <= mv; ++l) {
            LocalEdge e = lold_out.at(d.out_attach[l - 1]);
            if (e.kind == 0) e.id = emap[e.id];
            rho_img[l - 1] = slot_of(lnew_out, e) + 1;
        }
        Perm rho(std::move(rho_img));
        if (!rho.is_valid()) throw std::invalid_argument("out labeling is not bijective");
        auto [g1, c1] = act_out(c, rho, d.gen);
        sign *= c1;

        std::vector<int> tau_img(nv);
        for (int l = 1; l <= nv; ++l) {
            LocalEdge e = lold_in.at(d.in_attach[l - 1]);
            if (e.kind == 0) e.id = emap[e.id];
            tau_img[slot_of(lnew_in, e)] = l;
        }
        Perm tau(std::move(tau_img));
        if (!tau.is_valid()) throw std::invalid_argument("in labeling is not bijective");
        auto [g2, c2] = act_in(c, g1, tau);
        sign *= c2;

        gens[pos[v]] = g2;
    }

    DecKey key;
    key.cert = cf.certificate;
    key.gens = std::move(gens);
    key.graph = cf.graph;
    return {std::move(key), sign};
}

DecoratedElement decorated_corolla(const SBimoduleBasis& basis, int m, int n, int gen) {
    const Component* c = basis.find(m, n);
    if (!c || gen < 0 || gen >= static_cast<int>(c->gens.size()))
        throw std::invalid_argument("corolla: no such generator");
    ConcreteDecorated x;
    x.graph = LabeledGraph::corolla(m, n);
    VertexDec d;
    d.gen = gen;
    d.out_attach.resize(m);
    d.in_attach.resize(n);
    for (int i = 0; i < m; ++i) d.out_attach[i] = i;
    for (int i = 0; i < n; ++i) d.in_attach[i] = i;
    x.decs = {d};
    x.factor_order = {0};
    auto [k, s] = canonicalize_decorated(basis, x);
    DecoratedElement e = make_element(basis, m, n);
    e.add_term(k, s);
    return e;
}

DecoratedElement unit_element(const SBimoduleBasis& basis) {
    DecoratedElement e = make_element(basis, 1, 1);
    auto cf = canonicalize_graph(LabeledGraph::unit_edge());
    e.add_term(DecKey{cf.certificate, {}, cf.graph}, Rat(1));
    return e;
}

DecoratedElement act(const Perm& sigma, const DecoratedElement& x, const Perm& tau) {
    if (sigma.size() != x.m || tau.size() != x.n)
        throw std::invalid_argument("act: permutation size mismatch");
    DecoratedElement out = make_element(*x.basis, x.m, x.n);
    Perm tau_inv = tau.inverse();
    for (auto& [key, coef] : x.terms) {
        const LabeledGraph& g = key.graph;
        LabeledGraph h = g;
        for (int l = 1; l <= x.m; ++l) h.out_legs[sigma(l) - 1] = g.out_legs[l - 1];
        for (int i = 1; i <= x.n; ++i) h.in_legs[i - 1] = g.in_legs[tau(i) - 1];

        ConcreteDecorated cd;
        cd.graph = h;
        cd.decs.resize(h.num_vertices);
        cd.factor_order.resize(h.num_vertices);
        for (int v = 0; v < h.num_vertices; ++v) cd.factor_order[v] = v;
        for (int v = 0; v < h.num_vertices; ++v) {
            auto lg_out = local_out_edges(g, v);
            auto lg_in = local_in_edges(g, v);
            auto lh_out = local_out_edges(h, v);
            auto lh_in = local_in_edges(h, v);
            VertexDec d;
            d.gen = key.gens[v];
            d.out_attach.resize(lg_out.size());
            for (size_t j = 0; j < lg_out.size(); ++j) {
                LocalEdge e = lg_out[j];
                if (e.kind == 1) e.id = sigma(e.id);
                d.out_attach[j] = slot_of(lh_out, e);
            }
            d.in_attach.resize(lg_in.size());
            for (size_t j = 0; j < lg_in.size(); ++j) {
                LocalEdge e = lg_in[j];
                if (e.kind == 1) e.id = tau_inv(e.id);
                d.in_attach[j] = slot_of(lh_in, e);
            }
            cd.decs[v] = std::move(d);
        }
        auto [k2, s] = canonicalize_decorated(*x.basis, cd);
        out.add_term(k2, coef * s);
    }
    return out;
}

DecoratedElement op(const DecoratedElement& x, const SBimoduleBasis& op_basis) {
    DecoratedElement out = make_element(op_basis, x.n, x.m);
    for (auto& [key, coef] : x.terms) {
        const LabeledGraph& g = key.graph;
        ConcreteDecorated cd;
        cd.graph.num_vertices = g.num_vertices;
        for (auto& [u, v] : g.edges) cd.graph.edges.emplace_back(v, u);
        cd.graph.in_legs = g.out_legs;
        cd.graph.out_legs = g.in_legs;
        cd.decs.resize(g.num_vertices);
        cd.factor_order.resize(g.num_vertices);
        for (int v = 0; v < g.num_vertices; ++v) {
            cd.factor_order[v] = v;
            // local in/out lists mirror elementwise under edge reversal, so
            // identity attachments carry over unchanged
            cd.decs[v].gen = key.gens[v];
            cd.decs[v].out_attach.resize(local_in_edges(g, v).size());
            for (size_t j = 0; j < cd.decs[v].out_attach.size(); ++j)
                cd.decs[v].out_attach[j] = static_cast<int>(j);
            cd.decs[v].in_attach.resize(local_out_edges(g, v).size());
            for (size_t j = 0; j < cd.decs[v].in_attach.size(); ++j)
                cd.decs[v].in_attach[j] = static_cast<int>(j);
        }
        auto [k2, s] = canonicalize_decorated(op_basis, cd);
        out.add_term(k2, coef * s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// free composition

namespace {

struct TaggedEdge {
    int kind; // 0 internal (id = tag), 1 template leg (id = label)
    int id;
    bool operator==(const TaggedEdge&) const = default;
};

struct TemplateWork {
    std::vector<int> verts;                          // alive original vertex ids
    std::vector<std::tuple<int, int, int>> edges;    // (src, dst, tag)
    int next_tag = 0;
    std::vector<int> in_leg_owner, out_leg_owner;    // per label-1: original vertex id
    // per original vertex: plug label -> tagged edge
    std::vector<std::vector<TaggedEdge>> out_map, in_map;
};

} // namespace

DecoratedElement compose_free(const LabeledGraph& tmpl,
                              const std::vector<DecoratedElement>& plugs,
                              const std::vector<PlugAttach>& attach) {
    tmpl.validate();
    const int k = tmpl.num_vertices;
    if (static_cast<int>(plugs.size()) != k)
        throw std::invalid_argument("compose_free: one plug per template vertex required");
    if (!attach.empty() && static_cast<int>(attach.size()) != k)
        throw std::invalid_argument("compose_free: attach size mismatch");

    const SBimoduleBasis* basis = nullptr;
    for (auto& p : plugs) {
        if (!p.basis) continue;
        if (!basis) basis = p.basis;
        else if (basis != p.basis) throw std::invalid_argument("compose_free: mixed bases");
    }
    if (!basis) throw std::invalid_argument("compose_free: no basis");

    // unit plugs are exactly the (1,1) elements equal to the unit
    auto cfu = canonicalize_graph(LabeledGraph::unit_edge());
    auto is_unit_elem = [&](const DecoratedElement& p) {
        return p.m == 1 && p.n == 1 && p.term_count() == 1 &&
               p.terms.begin()->first.cert == cfu.certificate;
    };

    std::vector<char> unit_at(k, 0);
    Rat unit_scalar(1);
    for (int v = 0; v < k; ++v) {
        int mv = tmpl.out_degree(v), nv = tmpl.in_degree(v);
        if (plugs[v].m != mv || plugs[v].n != nv)
            throw std::invalid_argument("compose_free: plug arity mismatch");
        unit_at[v] = is_unit_elem(plugs[v]);
        if (unit_at[v]) {
            if (mv != 1 || nv != 1)
                throw std::invalid_argument("compose_free: unit plug at non-(1,1) vertex");
            unit_scalar *= plugs[v].terms.begin()->second;
        }
    }

    // tagged template, with attachment maps resolved to tagged edges
    TemplateWork w;
    w.verts.resize(k);
    for (int v = 0; v < k; ++v) w.verts[v] = v;
    for (size_t ei = 0; ei < tmpl.edges.size(); ++ei)
        w.edges.emplace_back(tmpl.edges[ei].first, tmpl.edges[ei].second, static_cast<int>(ei));
    w.next_tag = static_cast<int>(tmpl.edges.size());
    w.in_leg_owner.resize(tmpl.n());
    for (int i = 0; i < tmpl.n(); ++i) w.in_leg_owner[i] = tmpl.in_legs[i];
    w.out_leg_owner.resize(tmpl.m());
    for (int i = 0; i < tmpl.m(); ++i) w.out_leg_owner[i] = tmpl.out_legs[i];
    w.out_map.resize(k);
    w.in_map.resize(k);
    for (int v = 0; v < k; ++v) {
        auto lo = local_out_edges(tmpl, v);
        auto li = local_in_edges(tmpl, v);
        const int mv = static_cast<int>(lo.size()), nv = static_cast<int>(li.size());
        std::vector<int> oslot(mv), islot(nv); // plug label-1 -> template slot
        if (attach.empty() || (attach[v].out_labels.empty() && attach[v].in_labels.empty())) {
            for (int j = 0; j < mv; ++j) oslot[j] = j;
            for (int j = 0; j < nv; ++j) islot[j] = j;
        } else {
            if (static_cast<int>(attach[v].out_labels.size()) != mv ||
                static_cast<int>(attach[v].in_labels.size()) != nv)
                throw std::invalid_argument("compose_free: attach labeling size mismatch");
            std::vector<int> ofill(mv, -1), ifill(nv, -1);
            for (int s = 0; s < mv; ++s) {
                int l = attach[v].out_labels[s];
                if (l < 1 || l > mv || ofill[l - 1] != -1)
                    throw std::invalid_argument("compose_free: attach labeling not bijective");
                ofill[l - 1] = s;
            }
            for (int s = 0; s < nv; ++s) {
                int l = attach[v].in_labels[s];
                if (l < 1 || l > nv || ifill[l - 1] != -1)
                    throw std::invalid_argument("compose_free: attach labeling not bijective");
                ifill[l - 1] = s;
            }
            oslot = ofill;
            islot = ifill;
        }
        w.out_map[v].resize(mv);
        for (int j = 0; j < mv; ++j) {
            LocalEdge e = lo[oslot[j]];
            w.out_map[v][j] = TaggedEdge{e.kind, e.id};
        }
        w.in_map[v].resize(nv);
        for (int j = 0; j < nv; ++j) {
            LocalEdge e = li[islot[j]];
            w.in_map[v][j] = TaggedEdge{e.kind, e.id};
        }
    }

    // splice unit plugs out
    std::vector<int> alive; // original ids, in order
    {
        std::vector<char> dead(k, 0);
        bool changed = true;
        auto rewrite_out = [&](TaggedEdge from, TaggedEdge to) {
            for (int v = 0; v < k; ++v)
                if (!dead[v])
                    for (auto& te : w.out_map[v])
                        if (te == from) te = to;
        };
        auto rewrite_in = [&](TaggedEdge from, TaggedEdge to) {
            for (int v = 0; v < k; ++v)
                if (!dead[v])
                    for (auto& te : w.in_map[v])
                        if (te == from) te = to;
        };
        while (changed) {
            changed = false;
            for (int v = 0; v < k; ++v) {
                if (dead[v] || !unit_at[v]) continue;
                TaggedEdge O = w.out_map[v][0], I = w.in_map[v][0];
                if (O.kind == 1 && I.kind == 1) {
                    // free-standing strand: legal only when the whole template collapses
                    int live = 0;
                    for (int u = 0; u < k; ++u) live += !dead[u];
                    if (live == 1) {
                        DecoratedElement e = unit_element(*basis);
                        e *= unit_scalar;
                        return e;
                    }
                    throw std::invalid_argument("compose_free: unit plug leaves a free-standing edge");
                }
                dead[v] = 1;
                changed = true;
                if (O.kind == 0 && I.kind == 0) {
                    int a = -1, b = -1;
                    for (auto& [s, d, t] : w.edges) {
                        if (t == I.id) a = s;
                        if (t == O.id) b = d;
                    }
                    int tm = w.next_tag++;
                    std::vector<std::tuple<int, int, int>> ne;
                    for (auto& e : w.edges)
                        if (std::get<2>(e) != I.id && std::get<2>(e) != O.id) ne.push_back(e);
                    ne.emplace_back(a, b, tm);
                    w.edges = std::move(ne);
                    rewrite_out({0, I.id}, {0, tm});
                    rewrite_in({0, O.id}, {0, tm});
                } else if (I.kind == 1 && O.kind == 0) {
                    int b = -1;
                    for (auto& [s, d, t] : w.edges)
                        if (t == O.id) b = d;
                    std::vector<std::tuple<int, int, int>> ne;
                    for (auto& e : w.edges)
                        if (std::get<2>(e) != O.id) ne.push_back(e);
                    w.edges = std::move(ne);
                    w.in_leg_owner[I.id - 1] = b;
                    rewrite_in({0, O.id}, {1, I.id});
                } else { // I edge, O template out-leg
                    int a = -1;
                    for (auto& [s, d, t] : w.edges)
                        if (t == I.id) a = s;
                    std::vector<std::tuple<int, int, int>> ne;
                    for (auto& e : w.edges)
                        if (std::get<2>(e) != I.id) ne.push_back(e);
                    w.edges = std::move(ne);
                    w.out_leg_owner[O.id - 1] = a;
                    rewrite_out({0, I.id}, {1, O.id});
                }
            }
        }
        for (int v = 0; v < k; ++v)
            if (!dead[v]) alive.push_back(v);
    }

    DecoratedElement result = make_element(*basis, tmpl.m(), tmpl.n());
    if (alive.empty()) return result; // cannot happen for valid trees

    // iterate over all term combinations
    const int na = static_cast<int>(alive.size());
    std::vector<std::map<DecKey, Rat>::const_iterator> its(na), ends(na);
    for (int i = 0; i < na; ++i) {
        const auto& t = plugs[alive[i]].terms;
        if (t.empty()) return result;
        its[i] = t.begin();
        ends[i] = t.end();
    }

    while (true) {
        Rat coef = unit_scalar;
        for (int i = 0; i < na; ++i) coef *= its[i]->second;

        // assemble the grafted decorated graph
        std::vector<int> offset(na + 1, 0);
        for (int i = 0; i < na; ++i) offset[i + 1] = offset[i] + its[i]->first.graph.num_vertices;
        ConcreteDecorated cd;
        cd.graph.num_vertices = offset[na];
        std::vector<std::vector<int>> plug_edge_idx(na);
        for (int i = 0; i < na; ++i) {
            const LabeledGraph& pg = its[i]->first.graph;
            plug_edge_idx[i].resize(pg.edges.size());
            for (size_t ei = 0; ei < pg.edges.size(); ++ei) {
                plug_edge_idx[i][ei] = static_cast<int>(cd.graph.edges.size());
                cd.graph.edges.emplace_back(offset[i] + pg.edges[ei].first,
                                            offset[i] + pg.edges[ei].second);
            }
        }
        auto idx_of_vert = [&](int orig) {
            for (int i = 0; i < na; ++i)
                if (alive[i] == orig) return i;
            throw std::logic_error("compose_free: vertex not alive");
        };
        std::map<int, int> tag_edge_idx;
        for (auto& [s, d, t] : w.edges) {
            int si = idx_of_vert(s), di = idx_of_vert(d);
            int sl = -1, dl = -1;
            for (size_t j = 0; j < w.out_map[s].size(); ++j)
                if (w.out_map[s][j] == TaggedEdge{0, t}) sl = static_cast<int>(j);
            for (size_t j = 0; j < w.in_map[d].size(); ++j)
                if (w.in_map[d][j] == TaggedEdge{0, t}) dl = static_cast<int>(j);
            if (sl < 0 || dl < 0) throw std::logic_error("compose_free: dangling template edge");
            tag_edge_idx[t] = static_cast<int>(cd.graph.edges.size());
            cd.graph.edges.emplace_back(offset[si] + its[si]->first.graph.out_legs[sl],
                                        offset[di] + its[di]->first.graph.in_legs[dl]);
        }
        cd.graph.in_legs.resize(tmpl.n());
        for (int lbl = 1; lbl <= tmpl.n(); ++lbl) {
            int v = w.in_leg_owner[lbl - 1];
            int vi = idx_of_vert(v);
            int pl = -1;
            for (size_t j = 0; j < w.in_map[v].size(); ++j)
                if (w.in_map[v][j] == TaggedEdge{1, lbl}) pl = static_cast<int>(j);
            if (pl < 0) throw std::logic_error("compose_free: dangling in leg");
            cd.graph.in_legs[lbl - 1] = offset[vi] + its[vi]->first.graph.in_legs[pl];
        }
        cd.graph.out_legs.resize(tmpl.m());
        for (int lbl = 1; lbl <= tmpl.m(); ++lbl) {
            int v = w.out_leg_owner[lbl - 1];
            int vi = idx_of_vert(v);
            int pl = -1;
            for (size_t j = 0; j < w.out_map[v].size(); ++j)
                if (w.out_map[v][j] == TaggedEdge{1, lbl}) pl = static_cast<int>(j);
            if (pl < 0) throw std::logic_error("compose_free: dangling out leg");
            cd.graph.out_legs[lbl - 1] = offset[vi] + its[vi]->first.graph.out_legs[pl];
        }

        // decorations: plug i vertex wv sits at offset[i] + wv
        cd.decs.resize(cd.graph.num_vertices);
        cd.factor_order.resize(cd.graph.num_vertices);
        for (int fv = 0; fv < cd.graph.num_vertices; ++fv) cd.factor_order[fv] = fv;
        for (int i = 0; i < na; ++i) {
            const int orig = alive[i];
            const LabeledGraph& pg = its[i]->first.graph;
            for (int wv = 0; wv < pg.num_vertices; ++wv) {
                const int fv = offset[i] + wv;
                auto lp_out = local_out_edges(pg, wv);
                auto lp_in = local_in_edges(pg, wv);
                auto lf_out = local_out_edges(cd.graph, fv);
                auto lf_in = local_in_edges(cd.graph, fv);
                VertexDec d;
                d.gen = its[i]->first.gens[wv];
                d.out_attach.resize(lp_out.size());
                for (size_t j = 0; j < lp_out.size(); ++j) {
                    LocalEdge pe = lp_out[j];
                    LocalEdge fe;
                    if (pe.kind == 0) {
                        fe = LocalEdge{0, plug_edge_idx[i][pe.id]};
                    } else {
                        TaggedEdge te = w.out_map[orig][pe.id - 1];
                        fe = te.kind == 0 ? LocalEdge{0, tag_edge_idx.at(te.id)} : LocalEdge{1, te.id};
                    }
                    d.out_attach[j] = slot_of(lf_out, fe);
                }
                d.in_attach.resize(lp_in.size());
                for (size_t j = 0; j < lp_in.size(); ++j) {
                    LocalEdge pe = lp_in[j];
                    LocalEdge fe;
                    if (pe.kind == 0) {
                        fe = LocalEdge{0, plug_edge_idx[i][pe.id]};
                    } else {
                        TaggedEdge te = w.in_map[orig][pe.id - 1];
                        fe = te.kind == 0 ? LocalEdge{0, tag_edge_idx.at(te.id)} : LocalEdge{1, te.id};
                    }
                    d.in_attach[j] = slot_of(lf_in, fe);
                }
                cd.decs[fv] = std::move(d);
            }
        }

        auto [key, s] = canonicalize_decorated(*basis, cd);
        result.add_term(key, coef * s);

        // advance the odometer
        int i = na - 1;
        while (i >= 0) {
            ++its[i];
            if (its[i] != ends[i]) break;
            its[i] = plugs[alive[i]].terms.begin();
            --i;
        }
        if (i < 0) break;
    }
    return result;
}

} // namespace dpd
