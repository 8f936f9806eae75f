#include "dpd/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dpd {

const char* to_string(GraphClass c) {
    switch (c) {
        case GraphClass::Ladder: return "Ladder";
        case GraphClass::RootedTree: return "RootedTree";
        case GraphClass::Tree: return "Tree";
        case GraphClass::ConnectedDag: return "ConnectedDag";
        case GraphClass::Dag: return "Dag";
        case GraphClass::Wheeled: return "Wheeled";
    }
    return "?";
}

bool class_contains(GraphClass big, GraphClass small) {
    return static_cast<int>(big) >= static_cast<int>(small);
}

LabeledGraph LabeledGraph::corolla(int m, int n) {
    LabeledGraph g;
    g.num_vertices = 1;
    g.in_legs.assign(n, 0);
    g.out_legs.assign(m, 0);
    return g;
}

LabeledGraph LabeledGraph::unit_edge() {
    LabeledGraph g;
    g.num_vertices = 0;
    g.in_legs.assign(1, -1);
    g.out_legs.assign(1, -1);
    return g;
}

void LabeledGraph::validate() const {
    if (is_unit_edge()) return;
    if (num_vertices < 0) throw std::invalid_argument("graph: negative vertex count");
    auto chk = [&](int v) {
        if (v < 0 || v >= num_vertices) throw std::invalid_argument("graph: vertex id out of range");
    };
    for (auto& [u, v] : edges) { chk(u); chk(v); }
    for (int v : in_legs) chk(v);
    for (int v : out_legs) chk(v);
}

int LabeledGraph::out_degree(int v) const {
    int d = 0;
    for (auto& e : edges) if (e.first == v) ++d;
    for (int s : out_legs) if (s == v) ++d;
    return d;
}

int LabeledGraph::in_degree(int v) const {
    int d = 0;
    for (auto& e : edges) if (e.second == v) ++d;
    for (int t : in_legs) if (t == v) ++d;
    return d;
}

namespace {

bool has_directed_cycle(const LabeledGraph& g) {
    std::vector<std::vector<int>> adj(g.num_vertices);
    for (auto& [u, v] : g.edges) {
        if (u == v) return true;
        adj[u].push_back(v);
    }
    std::vector<int> state(g.num_vertices, 0);
    std::function<bool(int)> dfs = [&](int u) {
        state[u] = 1;
        for (int w : adj[u]) {
            if (state[w] == 1) return true;
            if (state[w] == 0 && dfs(w)) return true;
        }
        state[u] = 2;
        return false;
    };
    for (int s = 0; s < g.num_vertices; ++s)
        if (state[s] == 0 && dfs(s)) return true;
    return false;
}

int count_components(const LabeledGraph& g) {
    if (g.num_vertices == 0) return 0;
    std::vector<int> parent(g.num_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& [u, v] : g.edges) parent[find(u)] = find(v);
    std::set<int> roots;
    for (int v = 0; v < g.num_vertices; ++v) roots.insert(find(v));
    return static_cast<int>(roots.size());
}

} // namespace

GraphClass classify(const LabeledGraph& g) {
    g.validate();
    if (g.is_unit_edge()) return GraphClass::Ladder;
    if (has_directed_cycle(g)) return GraphClass::Wheeled;
    const int comps = count_components(g);
    if (comps > 1) return GraphClass::Dag;
    // undirected multigraph cycle <=> |E| > |V| - #components
    if (static_cast<int>(g.edges.size()) > g.num_vertices - comps) return GraphClass::ConnectedDag;
    bool out1 = true, in1 = true;
    for (int v = 0; v < g.num_vertices; ++v) {
        if (g.out_degree(v) != 1) out1 = false;
        if (g.in_degree(v) != 1) in1 = false;
    }
    if (out1 && in1) return GraphClass::Ladder;
    if (out1) return GraphClass::RootedTree;
    return GraphClass::Tree;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

constexpr int kMaxCanonVertices = 12;
constexpr long kMaxOrderings = 2000000;

// iterated color refinement from isomorphism-invariant seeds
std::vector<int> refine_colors(const LabeledGraph& g) {
    const int k = g.num_vertices;
    auto to_colors = [](const std::vector<std::vector<int>>& s) {
        std::map<std::vector<int>, int> order;
        for (auto& x : s) order.emplace(x, 0);
        int c = 0;
        for (auto& kv : order) kv.second = c++;
        std::vector<int> col(s.size());
        for (size_t v = 0; v < s.size(); ++v) col[v] = order[s[v]];
        return col;
    };
    std::vector<std::vector<int>> sig(k);
    for (int v = 0; v < k; ++v) {
        std::vector<int> outl, inl;
        for (int i = 0; i < g.m(); ++i) if (g.out_legs[i] == v) outl.push_back(i + 1);
        for (int i = 0; i < g.n(); ++i) if (g.in_legs[i] == v) inl.push_back(i + 1);
        sig[v] = {static_cast<int>(outl.size()), static_cast<int>(inl.size()), -1};
        sig[v].insert(sig[v].end(), outl.begin(), outl.end());
        sig[v].push_back(-1);
        sig[v].insert(sig[v].end(), inl.begin(), inl.end());
    }
    std::vector<int> colors = to_colors(sig);
    for (int round = 0; round < k; ++round) {
        std::vector<std::vector<int>> next(k);
        for (int v = 0; v < k; ++v) {
            std::vector<int> outs, ins;
            for (auto& [a, b] : g.edges) {
                if (a == v) outs.push_back(colors[b]);
                if (b == v) ins.push_back(colors[a]);
            }
            std::sort(outs.begin(), outs.end());
            std::sort(ins.begin(), ins.end());
            next[v] = {colors[v], -1};
            next[v].insert(next[v].end(), outs.begin(), outs.end());
            next[v].push_back(-1);
            next[v].insert(next[v].end(), ins.begin(), ins.end());
        }
        std::vector<int> nc = to_colors(next);
        if (nc == colors) break;
        colors = nc;
    }
    return colors;
}

void append_int(std::string& s, int v) {
    s.push_back(static_cast<char>((v >> 8) & 0xff));
    s.push_back(static_cast<char>(v & 0xff));
}

std::string code_for_order(const LabeledGraph& g, const std::vector<int>& pos) {
    // pos[old vertex] = new position; -1 legs (unit edge) get a sentinel
    std::string s;
    append_int(s, g.m());
    append_int(s, g.n());
    append_int(s, g.num_vertices);
    for (int t : g.in_legs) append_int(s, t < 0 ? 0x7fff : pos[t]);
    for (int t : g.out_legs) append_int(s, t < 0 ? 0x7fff : pos[t]);
    std::vector<std::pair<int, int>> es;
    es.reserve(g.edges.size());
    for (auto& [u, v] : g.edges) es.emplace_back(pos[u], pos[v]);
    std::sort(es.begin(), es.end());
    for (auto& [u, v] : es) { append_int(s, u); append_int(s, v); }
    return s;
}

} // namespace

CanonicalForm canonicalize_graph(const LabeledGraph& g) {
    g.validate();
    if (g.num_vertices > kMaxCanonVertices)
        throw std::length_error("canonical form limited to 12 vertices");

    const int k = g.num_vertices;
    if (k == 0) {
        CanonicalForm cf;
        cf.graph = g;
        cf.certificate = code_for_order(g, {});
        return cf;
    }

    std::vector<int> colors = refine_colors(g);
    std::vector<std::vector<int>> classes;
    {
        int maxc = *std::max_element(colors.begin(), colors.end());
        classes.resize(maxc + 1);
        for (int v = 0; v < k; ++v) classes[colors[v]].push_back(v);
    }
    long total = 1;
    for (auto& c : classes) {
        long f = 1;
        for (size_t i = 2; i <= c.size(); ++i) f *= static_cast<long>(i);
        total *= f;
        if (total > kMaxOrderings) throw std::length_error("canonical form search too large");
    }

    std::string best;
    std::vector<int> best_pos;
    std::vector<std::vector<int>> perms = classes;
    std::function<void(size_t)> rec = [&](size_t ci) {
        if (ci == perms.size()) {
            std::vector<int> pos(k);
            int p = 0;
            for (auto& c : perms)
                for (int v : c) pos[v] = p++;
            std::string code = code_for_order(g, pos);
            if (best.empty() || code < best) {
                best = code;
                best_pos = pos;
            }
            return;
        }
        std::sort(perms[ci].begin(), perms[ci].end());
        do {
            rec(ci + 1);
        } while (std::next_permutation(perms[ci].begin(), perms[ci].end()));
        std::sort(perms[ci].begin(), perms[ci].end());
    };
    rec(0);

    CanonicalForm cf;
    cf.certificate = best;
    std::vector<int> img(k);
    for (int v = 0; v < k; ++v) img[v] = best_pos[v] + 1;
    cf.vertex_map = Perm(std::move(img));
    LabeledGraph h;
    h.num_vertices = k;
    for (auto& [u, v] : g.edges) h.edges.emplace_back(best_pos[u], best_pos[v]);
    std::sort(h.edges.begin(), h.edges.end());
    h.in_legs.resize(g.n());
    for (int i = 0; i < g.n(); ++i) h.in_legs[i] = best_pos[g.in_legs[i]];
    h.out_legs.resize(g.m());
    for (int i = 0; i < g.m(); ++i) h.out_legs[i] = best_pos[g.out_legs[i]];
    cf.graph = std::move(h);
    return cf;
}

std::string canonical_certificate(const LabeledGraph& g) {
    return canonicalize_graph(g).certificate;
}

// ---------------------------------------------------------------------------
// subgraphs, contraction

SubgraphInduced induced_subgraph(const LabeledGraph& g, const std::vector<int>& vertices) {
    g.validate();
    if (vertices.empty()) throw std::invalid_argument("subgraph: empty vertex set");
    std::vector<char> in_h(g.num_vertices, 0);
    for (int v : vertices) {
        if (v < 0 || v >= g.num_vertices) throw std::invalid_argument("subgraph: vertex not in graph");
        if (in_h[v]) throw std::invalid_argument("subgraph: repeated vertex");
        in_h[v] = 1;
    }
    std::vector<int> newid(g.num_vertices, -1);
    int c = 0;
    for (int v = 0; v < g.num_vertices; ++v)
        if (in_h[v]) newid[v] = c++;

    SubgraphInduced s;
    s.graph.num_vertices = c;
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        auto [u, v] = g.edges[ei];
        bool ui = in_h[u], vi = in_h[v];
        if (ui && vi) {
            s.graph.edges.emplace_back(newid[u], newid[v]);
        } else if (ui) {
            s.graph.out_legs.push_back(newid[u]);
            s.out_leg_edge.push_back(static_cast<int>(ei));
            s.out_leg_orig_label.push_back(-1);
        } else if (vi) {
            s.graph.in_legs.push_back(newid[v]);
            s.in_leg_edge.push_back(static_cast<int>(ei));
            s.in_leg_orig_label.push_back(-1);
        }
    }
    for (int i = 0; i < g.m(); ++i)
        if (in_h[g.out_legs[i]]) {
            s.graph.out_legs.push_back(newid[g.out_legs[i]]);
            s.out_leg_edge.push_back(-1);
            s.out_leg_orig_label.push_back(i + 1);
        }
    for (int i = 0; i < g.n(); ++i)
        if (in_h[g.in_legs[i]]) {
            s.graph.in_legs.push_back(newid[g.in_legs[i]]);
            s.in_leg_edge.push_back(-1);
            s.in_leg_orig_label.push_back(i + 1);
        }
    return s;
}

Contraction contract_with_map(const LabeledGraph& g, const std::vector<int>& vertices) {
    Contraction out;
    out.sub = induced_subgraph(g, vertices);

    std::vector<char> in_h(g.num_vertices, 0);
    for (int v : vertices) in_h[v] = 1;
    std::vector<int> newid(g.num_vertices, -1);
    int c = 0;
    for (int v = 0; v < g.num_vertices; ++v)
        if (!in_h[v]) newid[v] = c++;
    const int vh = c;

    LabeledGraph q;
    q.num_vertices = c + 1;
    std::vector<int> qedge_orig;
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        auto [u, v] = g.edges[ei];
        if (in_h[u] && in_h[v]) continue;
        q.edges.emplace_back(in_h[u] ? vh : newid[u], in_h[v] ? vh : newid[v]);
        qedge_orig.push_back(static_cast<int>(ei));
    }
    q.in_legs.resize(g.n());
    for (int i = 0; i < g.n(); ++i) q.in_legs[i] = in_h[g.in_legs[i]] ? vh : newid[g.in_legs[i]];
    q.out_legs.resize(g.m());
    for (int i = 0; i < g.m(); ++i) q.out_legs[i] = in_h[g.out_legs[i]] ? vh : newid[g.out_legs[i]];

    out.quotient = q;
    out.vH = vh;

    auto find_out_label = [&](int orig_edge, int orig_label) {
        for (size_t j = 0; j < out.sub.out_leg_edge.size(); ++j)
            if (out.sub.out_leg_edge[j] == orig_edge && out.sub.out_leg_orig_label[j] == orig_label)
                return static_cast<int>(j) + 1;
        throw std::logic_error("contract: out alignment not found");
    };
    auto find_in_label = [&](int orig_edge, int orig_label) {
        for (size_t j = 0; j < out.sub.in_leg_edge.size(); ++j)
            if (out.sub.in_leg_edge[j] == orig_edge && out.sub.in_leg_orig_label[j] == orig_label)
                return static_cast<int>(j) + 1;
        throw std::logic_error("contract: in alignment not found");
    };
    for (size_t qi = 0; qi < q.edges.size(); ++qi) {
        if (q.edges[qi].first == vh)
            out.vH_out_edge_sub_label.push_back(find_out_label(qedge_orig[qi], -1));
        if (q.edges[qi].second == vh)
            out.vH_in_edge_sub_label.push_back(find_in_label(qedge_orig[qi], -1));
    }
    for (int i = 0; i < q.m(); ++i)
        if (q.out_legs[i] == vh)
            out.vH_out_leg_sub_label.push_back(find_out_label(-1, i + 1));
    for (int i = 0; i < q.n(); ++i)
        if (q.in_legs[i] == vh)
            out.vH_in_leg_sub_label.push_back(find_in_label(-1, i + 1));
    return out;
}

LabeledGraph contract(const LabeledGraph& g, const std::vector<int>& vertices) {
    return contract_with_map(g, vertices).quotient;
}

// ---------------------------------------------------------------------------
// local edge enumeration and grafting

std::vector<LocalEdge> local_out_edges(const LabeledGraph& g, int v) {
    std::vector<LocalEdge> out;
    for (size_t ei = 0; ei < g.edges.size(); ++ei)
        if (g.edges[ei].first == v) out.push_back({0, static_cast<int>(ei)});
    for (int i = 0; i < g.m(); ++i)
        if (g.out_legs[i] == v) out.push_back({1, i + 1});
    return out;
}

std::vector<LocalEdge> local_in_edges(const LabeledGraph& g, int v) {
    std::vector<LocalEdge> out;
    for (size_t ei = 0; ei < g.edges.size(); ++ei)
        if (g.edges[ei].second == v) out.push_back({0, static_cast<int>(ei)});
    for (int i = 0; i < g.n(); ++i)
        if (g.in_legs[i] == v) out.push_back({1, i + 1});
    return out;
}

LabeledGraph graft(const LabeledGraph& tmpl, const std::vector<LabeledGraph>& plugs) {
    tmpl.validate();
    if (static_cast<int>(plugs.size()) != tmpl.num_vertices)
        throw std::invalid_argument("graft: one plug per template vertex required");
    for (int v = 0; v < tmpl.num_vertices; ++v) {
        plugs[v].validate();
        if (plugs[v].m() != tmpl.out_degree(v) || plugs[v].n() != tmpl.in_degree(v))
            throw std::invalid_argument("graft: plug arity mismatch");
    }

    LabeledGraph g = tmpl;
    std::vector<LabeledGraph> pl = plugs;

    // splice out unit-edge plugs
    while (true) {
        int v = -1;
        for (int u = 0; u < g.num_vertices; ++u)
            if (pl[u].is_unit_edge()) { v = u; break; }
        if (v < 0) break;
        if (g.num_vertices == 1) return LabeledGraph::unit_edge();
        auto lo = local_out_edges(g, v), li = local_in_edges(g, v);
        LocalEdge O = lo[0], I = li[0];
        if (I.kind == 1 && O.kind == 1)
            throw std::invalid_argument("graft: unit plug leaves a free-standing edge");
        LabeledGraph h;
        h.num_vertices = g.num_vertices - 1;
        auto nid = [&](int u) { return u > v ? u - 1 : u; };
        for (size_t ei = 0; ei < g.edges.size(); ++ei) {
            if (O.kind == 0 && static_cast<int>(ei) == O.id) continue;
            if (I.kind == 0 && static_cast<int>(ei) == I.id) continue;
            auto [a, b] = g.edges[ei];
            h.edges.emplace_back(nid(a), nid(b));
        }
        if (I.kind == 0 && O.kind == 0)
            h.edges.emplace_back(nid(g.edges[I.id].first), nid(g.edges[O.id].second));
        h.in_legs = g.in_legs;
        h.out_legs = g.out_legs;
        if (I.kind == 1) // template in-leg passes through to v's successor
            h.in_legs[I.id - 1] = g.edges[O.id].second;
        if (O.kind == 1) // template out-leg passes through to v's predecessor
            h.out_legs[O.id - 1] = g.edges[I.id].first;
        for (auto& t : h.in_legs) t = nid(t);
        for (auto& t : h.out_legs) t = nid(t);
        pl.erase(pl.begin() + v);
        g = std::move(h);
    }

    const int k = g.num_vertices;
    std::vector<int> offset(k + 1, 0);
    for (int v = 0; v < k; ++v) offset[v + 1] = offset[v] + pl[v].num_vertices;

    LabeledGraph r;
    r.num_vertices = offset[k];
    for (int v = 0; v < k; ++v)
        for (auto& [a, b] : pl[v].edges) r.edges.emplace_back(offset[v] + a, offset[v] + b);

    std::vector<std::vector<LocalEdge>> louts(k), lins(k);
    for (int v = 0; v < k; ++v) {
        louts[v] = local_out_edges(g, v);
        lins[v] = local_in_edges(g, v);
    }
    auto out_slot = [&](int v, LocalEdge e) {
        for (size_t j = 0; j < louts[v].size(); ++j)
            if (louts[v][j] == e) return static_cast<int>(j);
        throw std::logic_error("graft: out slot not found");
    };
    auto in_slot = [&](int v, LocalEdge e) {
        for (size_t j = 0; j < lins[v].size(); ++j)
            if (lins[v][j] == e) return static_cast<int>(j);
        throw std::logic_error("graft: in slot not found");
    };

    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
        auto [u, v] = g.edges[ei];
        LocalEdge e{0, static_cast<int>(ei)};
        int src = offset[u] + pl[u].out_legs[out_slot(u, e)];
        int dst = offset[v] + pl[v].in_legs[in_slot(v, e)];
        r.edges.emplace_back(src, dst);
    }
    r.in_legs.resize(g.n());
    for (int i = 0; i < g.n(); ++i) {
        int v = g.in_legs[i];
        r.in_legs[i] = offset[v] + pl[v].in_legs[in_slot(v, {1, i + 1})];
    }
    r.out_legs.resize(g.m());
    for (int i = 0; i < g.m(); ++i) {
        int v = g.out_legs[i];
        r.out_legs[i] = offset[v] + pl[v].out_legs[out_slot(v, {1, i + 1})];
    }
    return r;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

constexpr int kMaxWeight = 6;
constexpr int kMaxLegs = 10;

// directed trees on w unlabeled vertices, as bare graphs without legs
std::vector<LabeledGraph> directed_trees(int w) {
    std::vector<LabeledGraph> cur;
    LabeledGraph one;
    one.num_vertices = 1;
    cur.push_back(one);
    for (int s = 2; s <= w; ++s) {
        std::set<std::string> seen;
        std::vector<LabeledGraph> next;
        for (auto& t : cur)
            for (int v = 0; v < t.num_vertices; ++v)
                for (int dir = 0; dir < 2; ++dir) {
                    LabeledGraph u = t;
                    u.num_vertices += 1;
                    int leaf = u.num_vertices - 1;
                    if (dir == 0) u.edges.emplace_back(v, leaf);
                    else u.edges.emplace_back(leaf, v);
                    auto cf = canonicalize_graph(u);
                    if (seen.insert(cf.certificate).second) next.push_back(cf.graph);
                }
        cur = std::move(next);
    }
    return cur;
}

void assign_labels(const std::vector<int>& cap, int nlabels, std::vector<std::vector<int>>& out) {
    std::vector<int> left = cap, cur(nlabels, -1);
    std::function<void(int)> rec = [&](int lbl) {
        if (lbl == nlabels) {
            out.push_back(cur);
            return;
        }
        for (size_t v = 0; v < cap.size(); ++v)
            if (left[v] > 0) {
                --left[v];
                cur[lbl] = static_cast<int>(v);
                rec(lbl + 1);
                ++left[v];
            }
    };
    rec(0);
}

} // namespace

std::vector<LabeledGraph> enumerate_graphs(GraphClass cls, int m, int n, int weight,
                                           const std::vector<std::pair<int, int>>& arities) {
    if (weight < 1) return {};
    if (weight > kMaxWeight || m + n > kMaxLegs)
        throw std::length_error("enumeration scale overflow");
    if (!class_contains(GraphClass::Dag, cls) && weight > 1)
        throw std::invalid_argument("enumeration beyond corollas supported for tree classes only");

    std::map<std::string, LabeledGraph> found;
    for (auto& bare : directed_trees(weight)) {
        const int w = weight;
        std::vector<int> outd(w, 0), ind(w, 0);
        for (auto& [u, v] : bare.edges) { ++outd[u]; ++ind[v]; }
        std::vector<int> choice(w, 0);
        std::function<void(int)> rec = [&](int v) {
            if (v == w) {
                int mt = 0, nt = 0;
                for (int i = 0; i < w; ++i) {
                    mt += arities[choice[i]].first;
                    nt += arities[choice[i]].second;
                }
                if (mt - (w - 1) != m || nt - (w - 1) != n) return;
                std::vector<int> ocap(w), icap(w);
                for (int i = 0; i < w; ++i) {
                    ocap[i] = arities[choice[i]].first - outd[i];
                    icap[i] = arities[choice[i]].second - ind[i];
                    if (ocap[i] < 0 || icap[i] < 0) return;
                }
                std::vector<std::vector<int>> oass, iass;
                assign_labels(ocap, m, oass);
                assign_labels(icap, n, iass);
                for (auto& oa : oass)
                    for (auto& ia : iass) {
                        LabeledGraph g = bare;
                        g.out_legs = oa;
                        g.in_legs = ia;
                        if (!class_contains(cls, classify(g))) continue;
                        auto cf = canonicalize_graph(g);
                        found.emplace(cf.certificate, cf.graph);
                    }
                return;
            }
            for (size_t a = 0; a < arities.size(); ++a) {
                choice[v] = static_cast<int>(a);
                rec(v + 1);
            }
        };
        rec(0);
    }
    std::vector<LabeledGraph> out;
    out.reserve(found.size());
    for (auto& [cert, g] : found) out.push_back(g);
    return out;
}

std::string dump_graph(const LabeledGraph& g) {
    std::ostringstream os;
    os << "vertices: " << g.num_vertices << "\n";
    os << "edges:";
    for (auto& [u, v] : g.edges) os << " " << u << "->" << v;
    os << "\n";
    os << "in-legs:";
    for (int i = 0; i < g.n(); ++i) os << " " << (i + 1) << "->" << g.in_legs[i];
    os << "\n";
    os << "out-legs:";
    for (int i = 0; i < g.m(); ++i) os << " " << g.out_legs[i] << "->" << (i + 1);
    os << "\n";
    return os.str();
}

} // namespace dpd
