#include "dpd/presentation.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <stdexcept>

namespace dpd {

std::vector<std::pair<int, int>> QuadraticPresentation::gen_arities() const {
    std::vector<std::pair<int, int>> a;
    for (auto& [mn, c] : gens.comps)
        if (!c.gens.empty()) a.push_back(mn);
    return a;
}

ConcreteDecorated split_tree(int m, int n, int j, int k, const Perm& sigma, const Perm& tau,
                             int gen_upper, int gen_lower) {
    ConcreteDecorated cd;
    LabeledGraph& g = cd.graph;
    g.num_vertices = 2;
    g.edges.emplace_back(0, 1);
    g.out_legs.resize(m);
    for (int l = 1; l <= j; ++l) g.out_legs[sigma(l) - 1] = 0;
    for (int l = j + 1; l <= m; ++l) g.out_legs[sigma(l) - 1] = 1;
    g.in_legs.resize(n);
    for (int l = 1; l <= k; ++l) g.in_legs[tau(l) - 1] = 0;
    for (int l = k + 1; l <= n; ++l) g.in_legs[tau(l) - 1] = 1;

    auto lo0 = local_out_edges(g, 0);
    auto li0 = local_in_edges(g, 0);
    auto lo1 = local_out_edges(g, 1);
    auto li1 = local_in_edges(g, 1);
    auto slot = [](const std::vector<LocalEdge>& list, LocalEdge e) {
        for (size_t i = 0; i < list.size(); ++i)
            if (list[i] == e) return static_cast<int>(i);
        throw std::logic_error("split_tree: slot not found");
    };

    VertexDec up, low;
    up.gen = gen_upper;
    up.out_attach.resize(j + 1);
    for (int l = 1; l <= j; ++l) up.out_attach[l - 1] = slot(lo0, {1, sigma(l)});
    up.out_attach[j] = slot(lo0, {0, 0});
    up.in_attach.resize(k);
    for (int l = 1; l <= k; ++l) up.in_attach[l - 1] = slot(li0, {1, tau(l)});

    low.gen = gen_lower;
    low.out_attach.resize(m - j);
    for (int l = 1; l <= m - j; ++l) low.out_attach[l - 1] = slot(lo1, {1, sigma(j + l)});
    low.in_attach.resize(n - k + 1);
    low.in_attach[0] = slot(li1, {0, 0});
    for (int l = 1; l <= n - k; ++l) low.in_attach[l] = slot(li1, {1, tau(k + l)});

    cd.decs = {up, low};
    cd.factor_order = {0, 1};
    return cd;
}

DecoratedElement shuffle_sum_element(const SBimoduleBasis& basis, int m, int n, int i,
                                     const std::function<int(int, int, int)>& gen_of) {
    DecoratedElement out = make_element(basis, m, n);
    for (int k = 1; k <= n; ++k)
        for (int j = 0; j <= m - 1; ++j) {
            if (j + k < 2 || j + k > m + n - 2) continue;
            for (int i1 = 0; i1 <= i; ++i1) {
                int i2 = i - i1;
                if (i1 > j || i2 > m - j - 1) continue; // nonexistent summand
                int gu = gen_of(j + 1, k, i1);
                int gl = gen_of(m - j, n - k + 1, i2);
                if (gu < 0 || gl < 0) continue;
                for (auto& sigma : enumerate_unshuffles(j, m - j))
                    for (auto& tau : enumerate_unshuffles(k, n - k)) {
                        int e = (perm_sign(sigma) < 0 ? 1 : 0) + j * (m - j);
                        Rat sgn = (e % 2 == 0) ? 1 : -1;
                        auto cd = split_tree(m, n, j, k, sigma, tau, gu, gl);
                        auto [key, s] = canonicalize_decorated(basis, cd);
                        out.add_term(key, sgn * s);
                    }
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// built-in presentations

namespace {

SBimoduleBasis lie2_1_bi_gens() {
    SBimoduleBasis b;
    b.add_component(Component{1, 2, {{"y", 1}}, RepKind::Trivial, RepKind::Trivial});
    b.add_component(Component{2, 1, {{"w", 0}, {"b", 0}}, RepKind::Sign, RepKind::Trivial});
    return b;
}

// generator selection for shuffle-sum relations over the Lie^2 1-bialgebra
// generators: black index picks the cobracket color
int lie2_1_bi_gen_of(int mv, int nv, int idx) {
    if (mv == 1 && nv == 2) return idx == 0 ? 0 : -1;
    if (mv == 2 && nv == 1) return (idx == 0 || idx == 1) ? idx : -1;
    return -1;
}

QuadraticPresentation build_lie2_1_bi() {
    QuadraticPresentation p;
    p.name = "lie2-1-bi";
    p.gens = lie2_1_bi_gens();
    const int comps[][2] = {{1, 3}, {3, 1}, {2, 2}};
    for (auto& mn : comps)
        for (int i = 0; i <= mn[0] - 1; ++i) {
            auto r = shuffle_sum_element(p.gens, mn[0], mn[1], i, lie2_1_bi_gen_of);
            if (!r.is_zero()) p.relations.push_back(std::move(r));
        }
    return p;
}

QuadraticPresentation build_lie1() {
    QuadraticPresentation p;
    p.name = "lie1";
    SBimoduleBasis b;
    b.add_component(Component{1, 2, {{"y", 1}}, RepKind::Trivial, RepKind::Trivial});
    p.gens = b;
    auto gen_of = [](int mv, int nv, int idx) {
        return (mv == 1 && nv == 2 && idx == 0) ? 0 : -1;
    };
    p.relations.push_back(shuffle_sum_element(p.gens, 1, 3, 0, gen_of));
    return p;
}

QuadraticPresentation build_lie2() {
    // opposite of the cobracket half of lie2-1-bi
    const QuadraticPresentation& full = lie2_1_bi();
    QuadraticPresentation h;
    h.name = "lie2-half";
    SBimoduleBasis b;
    b.add_component(*full.gens.find(2, 1));
    h.gens = b;
    for (auto& r : full.relations)
        if (r.m == 3 && r.n == 1) h.relations.push_back(r);
    // rebuild the relations over the reduced basis (same component data)
    for (auto& r : h.relations) r.basis = &h.gens;
    QuadraticPresentation p = op_presentation(h, "lie2");
    return p;
}

// dual side: each relation is a picture pair A + s*B with s in {1,-1} fixed
// by orthogonality against every lie2-1-bi relation in the same component
QuadraticPresentation build_lie2_1_bi_dual() {
    QuadraticPresentation p;
    p.name = "lie2-1-bi-dual";
    p.gens = czech_dual(lie2_1_bi_gens());
    const SBimoduleBasis& N = p.gens;
    const QuadraticPresentation& prim = lie2_1_bi();

    auto mk = [&](const ConcreteDecorated& cd) {
        DecoratedElement e = make_element(N, cd.graph.m(), cd.graph.n());
        auto [k, s] = canonicalize_decorated(N, cd);
        e.add_term(k, s);
        return e;
    };
    auto paired = [&](const DecoratedElement& a, const DecoratedElement& b) {
        // the unique sign making a + s*b orthogonal to the relation span
        for (int s : {1, -1}) {
            DecoratedElement cand = a;
            DecoratedElement sb = b;
            sb *= Rat(s);
            cand += sb;
            bool ok = true;
            for (auto& r : prim.relations) {
                if (r.m != cand.m || r.n != cand.n) continue;
                if (!is_zero(koszul_pairing(r, cand))) { ok = false; break; }
            }
            if (ok) return cand;
        }
        throw std::logic_error("dual transcription: no sign choice is orthogonal");
    };

    const Perm id1 = Perm::identity(1), id2 = Perm::identity(2);

    // (1,3): two relations tying the three graft positions together
    {
        auto yy = [&](int lone) {
            std::vector<int> img;
            for (int v = 1; v <= 3; ++v)
                if (v != lone) img.push_back(v);
            img.push_back(lone);
            return mk(split_tree(1, 3, 0, 2, id1, Perm(img), 0, 0));
        };
        p.relations.push_back(paired(yy(3), yy(1)));
        p.relations.push_back(paired(yy(3), yy(2)));
    }
    // (3,1): nine relations
    {
        auto xx = [&](int free_out, int gu, int gl) {
            std::vector<int> img{free_out};
            for (int v = 1; v <= 3; ++v)
                if (v != free_out) img.push_back(v);
            return mk(split_tree(3, 1, 1, 1, Perm(img), id1, gu, gl));
        };
        for (int c : {0, 1}) { // same-color pairs
            p.relations.push_back(paired(xx(1, c, c), xx(2, c, c)));
            p.relations.push_back(paired(xx(2, c, c), xx(3, c, c)));
        }
        // mixed colors
        p.relations.push_back(paired(xx(1, 0, 1), xx(2, 0, 1)));
        p.relations.push_back(paired(xx(2, 0, 1), xx(3, 0, 1)));
        for (int l : {1, 2, 3}) p.relations.push_back(paired(xx(l, 0, 1), xx(l, 1, 0)));
    }
    // (2,2): four relations per cobracket color
    {
        const Perm sw({2, 1});
        auto ycox = [&](int color) { return mk(split_tree(2, 2, 0, 2, id2, id2, 0, color)); };
        auto coxy = [&](int color, const Perm& s, const Perm& t) {
            return mk(split_tree(2, 2, 1, 1, s, t, color, 0));
        };
        for (int color : {0, 1}) {
            p.relations.push_back(paired(ycox(color), coxy(color, id2, id2)));
            p.relations.push_back(paired(ycox(color), coxy(color, sw, id2)));
            p.relations.push_back(paired(ycox(color), coxy(color, id2, sw)));
            p.relations.push_back(paired(ycox(color), coxy(color, sw, sw)));
        }
    }
    return p;
}

// presentations live at stable heap addresses; the relation elements point
// at their presentation's own generator bimodule
QuadraticPresentation* finalize(QuadraticPresentation&& q) {
    auto* p = new QuadraticPresentation(std::move(q));
    for (auto& r : p->relations) r.basis = &p->gens;
    return p;
}

} // namespace

const QuadraticPresentation& lie2_1_bi() {
    static QuadraticPresentation* p = finalize(build_lie2_1_bi());
    return *p;
}

const QuadraticPresentation& lie2_1_bi_dual() {
    static QuadraticPresentation* p = finalize(build_lie2_1_bi_dual());
    return *p;
}

const QuadraticPresentation& lie1() {
    static QuadraticPresentation* p = finalize(build_lie1());
    return *p;
}

const QuadraticPresentation& lie2() {
    static QuadraticPresentation* p = finalize(build_lie2());
    return *p;
}

const QuadraticPresentation* find_builtin(const std::string& name) {
    if (name == "lie2-1-bi") return &lie2_1_bi();
    if (name == "lie2-1-bi-dual") return &lie2_1_bi_dual();
    if (name == "lie1") return &lie1();
    if (name == "lie2") return &lie2();
    return nullptr;
}

QuadraticPresentation op_presentation(const QuadraticPresentation& p, const std::string& name) {
    QuadraticPresentation q;
    q.name = name;
    for (auto& [mn, c] : p.gens.comps) {
        Component cc = c;
        std::swap(cc.m, cc.n);
        std::swap(cc.out_rep, cc.in_rep);
        q.gens.add_component(std::move(cc));
    }
    for (auto& r : p.relations) q.relations.push_back(op(r, q.gens));
    return q;
}

// ---------------------------------------------------------------------------
// pairing and dimension computations

// Pairing sign of a weight-2 canonical key: the Koszul cost of evaluating
// the two dual decorations on the two decorations, times the orientation
// signs that merge the per-vertex leg orderings into the global ones.
static int pairing_sign(const SBimoduleBasis& basis, const DecKey& key) {
    const LabeledGraph& g = key.graph;
    if (g.num_vertices != 2) throw std::invalid_argument("pairing: weight-2 elements required");
    long d0 = 0, d1 = 0;
    {
        const Component* c0 = basis.find(g.out_degree(0), g.in_degree(0));
        const Component* c1 = basis.find(g.out_degree(1), g.in_degree(1));
        if (!c0 || !c1) throw std::logic_error("pairing: arity outside basis");
        d0 = c0->gens[key.gens[0]].degree;
        d1 = c1->gens[key.gens[1]].degree;
    }
    int sign = ((d0 % 2 != 0) && (d1 % 2 != 0)) ? -1 : 1;
    auto merge_sign = [](const std::vector<int>& owners) {
        // parity of pairs (a,b) with owner(a)=0, owner(b)=1, a>b
        int inv = 0;
        for (size_t a = 0; a < owners.size(); ++a)
            for (size_t b = 0; b < a; ++b)
                if (owners[a] == 0 && owners[b] == 1) ++inv;
        return inv % 2 == 0 ? 1 : -1;
    };
    sign *= merge_sign(g.out_legs);
    sign *= merge_sign(g.in_legs);
    return sign;
}

Rat koszul_pairing(const DecoratedElement& x, const DecoratedElement& y) {
    if (x.m != y.m || x.n != y.n) throw std::invalid_argument("pairing: component mismatch");
    Rat acc(0);
    auto it = x.terms.begin();
    auto jt = y.terms.begin();
    while (it != x.terms.end() && jt != y.terms.end()) {
        if (it->first < jt->first) ++it;
        else if (jt->first < it->first) ++jt;
        else {
            acc += it->second * jt->second * pairing_sign(*x.basis, it->first);
            ++it;
            ++jt;
        }
    }
    return acc;
}

int ComponentBasis::index_of(const DecKey& k) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || !(*it == k)) return -1;
    return static_cast<int>(it - keys.begin());
}

ComponentBasis weight_basis(const SBimoduleBasis& gens, int m, int n, int weight) {
    ComponentBasis cb;
    std::vector<std::pair<int, int>> arities;
    for (auto& [mn, c] : gens.comps)
        if (!c.gens.empty()) arities.push_back(mn);
    if (weight == 1) {
        if (gens.dim(m, n) > 0) {
            for (int g = 0; g < gens.dim(m, n); ++g) {
                auto e = decorated_corolla(gens, m, n, g);
                cb.keys.push_back(e.terms.begin()->first);
            }
            std::sort(cb.keys.begin(), cb.keys.end());
        }
        return cb;
    }
    for (auto& g : enumerate_graphs(GraphClass::Tree, m, n, weight, arities)) {
        std::vector<int> dims(g.num_vertices);
        for (int v = 0; v < g.num_vertices; ++v) {
            dims[v] = gens.dim(g.out_degree(v), g.in_degree(v));
            if (dims[v] == 0) { dims[0] = 0; break; }
        }
        if (g.num_vertices > 0 && dims[0] == 0) continue;
        std::string cert = canonical_certificate(g);
        std::vector<int> pick(g.num_vertices, 0);
        while (true) {
            DecKey k;
            k.cert = cert;
            k.gens = pick;
            k.graph = g;
            cb.keys.push_back(std::move(k));
            int i = g.num_vertices - 1;
            while (i >= 0) {
                if (++pick[i] < dims[i]) break;
                pick[i] = 0;
                --i;
            }
            if (i < 0) break;
        }
    }
    std::sort(cb.keys.begin(), cb.keys.end());
    return cb;
}

namespace {

// basis of the bimodule span of the relations in one component: the ideal is
// a sub-bimodule, so insertion positions may fix one alignment only if the
// inserted span is closed under both actions
std::vector<DecoratedElement> saturated_relations(const QuadraticPresentation& p, int m, int n) {
    ComponentBasis cb = weight_basis(p.gens, m, n, 2);
    std::vector<Perm> sms, sns;
    {
        std::vector<int> base(m);
        for (int i = 0; i < m; ++i) base[i] = i + 1;
        do {
            sms.push_back(Perm(base));
        } while (std::next_permutation(base.begin(), base.end()));
        std::vector<int> basen(n);
        for (int i = 0; i < n; ++i) basen[i] = i + 1;
        do {
            sns.push_back(Perm(basen));
        } while (std::next_permutation(basen.begin(), basen.end()));
    }
    std::vector<DecoratedElement> translates;
    for (auto& r : p.relations) {
        if (r.m != m || r.n != n) continue;
        for (auto& s : sms)
            for (auto& t : sns) translates.push_back(act(s, r, t));
    }
    RowReducer rr;
    std::vector<DecoratedElement> basis_elems;
    for (auto& e : translates) {
        SparseRow row;
        for (auto& [k, c] : e.terms) {
            int idx = cb.index_of(k);
            if (idx < 0) throw std::logic_error("relation translate outside weight-2 basis");
            row.emplace_back(idx, c);
        }
        normalize_row(row);
        if (rr.add_row(row)) basis_elems.push_back(e);
    }
    return basis_elems;
}

SparseRow element_row(const ComponentBasis& cb, const DecoratedElement& e) {
    SparseRow r;
    for (auto& [k, c] : e.terms) {
        int idx = cb.index_of(k);
        if (idx < 0) throw std::logic_error("element outside enumerated basis");
        r.emplace_back(idx, c);
    }
    normalize_row(r);
    return r;
}

// The canonicalization sign of a decorated tree does not depend on which
// generator decorates each vertex as long as every component is uniform in
// degree (the actions are monomial componentwise).  That makes relation
// insertion transportable: canonicalize one reference decoration per
// composite shape and move the generator choices along the vertex map.
bool uniform_components(const SBimoduleBasis& b) {
    for (auto& [mn, c] : b.comps)
        for (auto& g : c.gens)
            if (g.degree != c.gens.front().degree) return false;
    return true;
}

struct InsertionPlan {
    std::string cert;
    Rat sign;
    std::vector<int> pos;       // composite vertex -> canonical position
    int num_vertices = 0;
};

// composite of the quotient template with the 2-vertex graph tg at vH and
// single-vertex plugs elsewhere; reference decoration uses generator 0
InsertionPlan build_plan(const SBimoduleBasis& gens, const LabeledGraph& q, int vH,
                         const PlugAttach& attach, const LabeledGraph& tg) {
    ConcreteDecorated cd;
    const int nq = static_cast<int>(q.edges.size());
    cd.graph.num_vertices = q.num_vertices + 1; // vH expands into two
    // q edges first (rerouted through tg), then tg's internal edges
    int seen_out = 0, seen_in = 0;
    for (int qe = 0; qe < nq; ++qe) {
        auto [a, b] = q.edges[qe];
        int na = a, nb = b;
        if (a == vH) {
            int lab = attach.out_labels[seen_out++];
            na = vH + tg.out_legs[lab - 1];
        }
        if (b == vH) {
            int lab = attach.in_labels[seen_in++];
            nb = vH + tg.in_legs[lab - 1];
        }
        cd.graph.edges.emplace_back(na, nb);
    }
    for (auto& [u, w] : tg.edges) cd.graph.edges.emplace_back(vH + u, vH + w);
    cd.graph.out_legs.resize(q.m());
    {
        int edge_out = 0;
        for (auto& e : q.edges)
            if (e.first == vH) ++edge_out;
        int seen_leg = 0;
        for (int l = 1; l <= q.m(); ++l) {
            if (q.out_legs[l - 1] != vH) {
                cd.graph.out_legs[l - 1] = q.out_legs[l - 1];
            } else {
                int lab = attach.out_labels[edge_out + seen_leg++];
                cd.graph.out_legs[l - 1] = vH + tg.out_legs[lab - 1];
            }
        }
    }
    cd.graph.in_legs.resize(q.n());
    {
        int edge_in = 0;
        for (auto& e : q.edges)
            if (e.second == vH) ++edge_in;
        int seen_leg = 0;
        for (int l = 1; l <= q.n(); ++l) {
            if (q.in_legs[l - 1] != vH) {
                cd.graph.in_legs[l - 1] = q.in_legs[l - 1];
            } else {
                int lab = attach.in_labels[edge_in + seen_leg++];
                cd.graph.in_legs[l - 1] = vH + tg.in_legs[lab - 1];
            }
        }
    }

    auto slot = [](const std::vector<LocalEdge>& list, LocalEdge e) {
        for (size_t i = 0; i < list.size(); ++i)
            if (list[i] == e) return static_cast<int>(i);
        throw std::logic_error("plan: slot not found");
    };

    cd.decs.resize(cd.graph.num_vertices);
    cd.factor_order.resize(cd.graph.num_vertices);
    for (int v = 0; v < cd.graph.num_vertices; ++v) cd.factor_order[v] = v;
    // untouched template vertices keep their edge order: identity attach
    for (int v = 0; v < vH; ++v) {
        VertexDec d;
        d.gen = 0;
        auto lo = local_out_edges(cd.graph, v);
        auto li = local_in_edges(cd.graph, v);
        d.out_attach.resize(lo.size());
        for (size_t j = 0; j < lo.size(); ++j) d.out_attach[j] = static_cast<int>(j);
        d.in_attach.resize(li.size());
        for (size_t j = 0; j < li.size(); ++j) d.in_attach[j] = static_cast<int>(j);
        cd.decs[v] = std::move(d);
    }
    // the two inserted vertices: map tg's canonical slots into the composite
    auto qlo = local_out_edges(q, vH);
    auto qli = local_in_edges(q, vH);
    auto comp_of_qslot_out = [&](int s) -> LocalEdge {
        LocalEdge e = qlo[s];
        return e; // q edge indices are composite indices; legs keep labels
    };
    auto comp_of_qslot_in = [&](int s) -> LocalEdge { return qli[s]; };
    for (int u = 0; u < 2; ++u) {
        int v = vH + u;
        VertexDec d;
        d.gen = 0;
        auto lo = local_out_edges(cd.graph, v);
        auto li = local_in_edges(cd.graph, v);
        auto tlo = local_out_edges(tg, u);
        auto tli = local_in_edges(tg, u);
        d.out_attach.resize(tlo.size());
        for (size_t j = 0; j < tlo.size(); ++j) {
            LocalEdge te = tlo[j];
            LocalEdge ce;
            if (te.kind == 0) {
                ce = LocalEdge{0, nq + te.id};
            } else {
                // tg out-leg label te.id sits on the attach slot carrying it
                int s = -1;
                for (size_t a = 0; a < attach.out_labels.size(); ++a)
                    if (attach.out_labels[a] == te.id) s = static_cast<int>(a);
                ce = comp_of_qslot_out(s);
            }
            d.out_attach[j] = slot(lo, ce);
        }
        d.in_attach.resize(tli.size());
        for (size_t j = 0; j < tli.size(); ++j) {
            LocalEdge te = tli[j];
            LocalEdge ce;
            if (te.kind == 0) {
                ce = LocalEdge{0, nq + te.id};
            } else {
                int s = -1;
                for (size_t a = 0; a < attach.in_labels.size(); ++a)
                    if (attach.in_labels[a] == te.id) s = static_cast<int>(a);
                ce = comp_of_qslot_in(s);
            }
            d.in_attach[j] = slot(li, ce);
        }
        cd.decs[v] = std::move(d);
    }

    auto [key, s] = canonicalize_decorated(gens, cd);
    InsertionPlan plan;
    plan.cert = key.cert;
    plan.sign = s;
    plan.num_vertices = cd.graph.num_vertices;
    auto cf = canonicalize_graph(cd.graph);
    plan.pos.resize(cd.graph.num_vertices);
    for (int v = 0; v < cd.graph.num_vertices; ++v) plan.pos[v] = cf.vertex_map(v + 1) - 1;
    return plan;
}

// all weight-w ideal rows of (relations) at (m,n)
std::vector<SparseRow> ideal_rows(const QuadraticPresentation& p, const ComponentBasis& cb,
                                  int m, int n, int weight) {
    std::vector<SparseRow> rows;
    if (weight < 2) return rows;
    if (weight == 2) {
        for (auto& r : p.relations)
            if (r.m == m && r.n == n) rows.push_back(element_row(cb, r));
        return rows;
    }
    auto arities = p.gen_arities();
    std::map<std::pair<int, int>, std::vector<DecoratedElement>> sat;
    for (auto& g : enumerate_graphs(GraphClass::Tree, m, n, weight, arities)) {
        bool decorable = true;
        for (int v = 0; v < g.num_vertices && decorable; ++v)
            if (p.gens.dim(g.out_degree(v), g.in_degree(v)) == 0) decorable = false;
        if (!decorable) continue;
        for (auto& e : g.edges) {
            auto ct = contract_with_map(g, {e.first, e.second});
            const LabeledGraph& q = ct.quotient;
            int mh = q.out_degree(ct.vH), nh = q.in_degree(ct.vH);
            auto sat_it = sat.find({mh, nh});
            if (sat_it == sat.end())
                sat_it = sat.emplace(std::make_pair(mh, nh), saturated_relations(p, mh, nh)).first;
            std::vector<const DecoratedElement*> rels;
            for (auto& r : sat_it->second) rels.push_back(&r);
            if (rels.empty()) continue;

            std::vector<PlugAttach> attach(q.num_vertices);
            attach[ct.vH].out_labels = ct.vH_out_edge_sub_label;
            attach[ct.vH].out_labels.insert(attach[ct.vH].out_labels.end(),
                                            ct.vH_out_leg_sub_label.begin(),
                                            ct.vH_out_leg_sub_label.end());
            attach[ct.vH].in_labels = ct.vH_in_edge_sub_label;
            attach[ct.vH].in_labels.insert(attach[ct.vH].in_labels.end(),
                                           ct.vH_in_leg_sub_label.begin(),
                                           ct.vH_in_leg_sub_label.end());

            // decorate the untouched vertices with every generator choice
            std::vector<int> others;
            for (int v = 0; v < q.num_vertices; ++v)
                if (v != ct.vH) others.push_back(v);
            std::vector<int> dims(others.size());
            for (size_t i = 0; i < others.size(); ++i)
                dims[i] = p.gens.dim(q.out_degree(others[i]), q.in_degree(others[i]));

            std::vector<int> pick(others.size(), 0);
            while (true) {
                for (auto* r : rels) {
                    std::vector<DecoratedElement> plugs(q.num_vertices);
                    for (size_t i = 0; i < others.size(); ++i)
                        plugs[others[i]] = decorated_corolla(
                            p.gens, q.out_degree(others[i]), q.in_degree(others[i]), pick[i]);
                    plugs[ct.vH] = *r;
                    auto comp = compose_free(q, plugs, attach);
                    if (!comp.is_zero()) rows.push_back(element_row(cb, comp));
                }
                int i = static_cast<int>(others.size()) - 1;
                while (i >= 0) {
                    if (++pick[i] < dims[i]) break;
                    pick[i] = 0;
                    --i;
                }
                if (i < 0) break;
            }
        }
    }
    return rows;
}

} // namespace

SubspaceBasis orthogonal_complement(const QuadraticPresentation& p, int m, int n) {
    SubspaceBasis sb;
    ComponentBasis cb = weight_basis(czech_dual(p.gens), m, n, 2);
    sb.keys = cb.keys;
    // annihilator of the (bimodule-closed) relation span under the pairing;
    // relation keys share the (cert, gens) coordinates, the pairing adds the
    // per-key sign
    std::vector<SparseRow> rows;
    for (auto& r : saturated_relations(p, m, n)) {
        SparseRow row;
        for (auto& [k, c] : r.terms) {
            int idx = cb.index_of(k);
            if (idx < 0) throw std::logic_error("relation outside weight-2 basis");
            row.emplace_back(idx, c * pairing_sign(p.gens, k));
        }
        normalize_row(row);
        rows.push_back(std::move(row));
    }
    sb.rows = nullspace_basis(static_cast<int>(cb.keys.size()), rows);
    return sb;
}

namespace {

// plan-based ideal slice: one canonicalization per composite shape, cheap
// transported rows for every decoration choice
long quotient_dim_fast(const QuadraticPresentation& p, int m, int n, int weight, long total_dim) {
    auto arities = p.gen_arities();
    std::map<std::pair<int, int>, std::vector<DecoratedElement>> sat;
    std::unordered_map<std::string, int> intern;
    std::vector<SparseRow> rows;
    std::string keybuf;

    auto intern_key = [&](const std::string& cert, const std::vector<int>& gens) {
        keybuf.assign(cert);
        for (int g : gens) keybuf.push_back(static_cast<char>(g + 1));
        auto [it, fresh] = intern.emplace(keybuf, static_cast<int>(intern.size()));
        (void)fresh;
        return it->second;
    };

    for (auto& g : enumerate_graphs(GraphClass::Tree, m, n, weight, arities)) {
        for (auto& e : g.edges) {
            auto ct = contract_with_map(g, {e.first, e.second});
            const LabeledGraph& q = ct.quotient;
            int mh = q.out_degree(ct.vH), nh = q.in_degree(ct.vH);
            auto sit = sat.find({mh, nh});
            if (sit == sat.end())
                sit = sat.emplace(std::make_pair(mh, nh), saturated_relations(p, mh, nh)).first;
            if (sit->second.empty()) continue;

            PlugAttach attach;
            attach.out_labels = ct.vH_out_edge_sub_label;
            attach.out_labels.insert(attach.out_labels.end(), ct.vH_out_leg_sub_label.begin(),
                                     ct.vH_out_leg_sub_label.end());
            attach.in_labels = ct.vH_in_edge_sub_label;
            attach.in_labels.insert(attach.in_labels.end(), ct.vH_in_leg_sub_label.begin(),
                                    ct.vH_in_leg_sub_label.end());

            // one plan per distinct two-vertex shape among the relation terms
            std::map<std::string, InsertionPlan> plans;
            for (auto& r : sit->second)
                for (auto& [tk, tc] : r.terms)
                    if (!plans.count(tk.cert))
                        plans.emplace(tk.cert, build_plan(p.gens, q, ct.vH, attach, tk.graph));

            std::vector<int> others;
            for (int v = 0; v < q.num_vertices; ++v)
                if (v != ct.vH) others.push_back(v);
            std::vector<int> dims(others.size());
            for (size_t i = 0; i < others.size(); ++i)
                dims[i] = p.gens.dim(q.out_degree(others[i]), q.in_degree(others[i]));

            std::vector<int> pick(others.size(), 0);
            std::vector<int> gens_buf;
            while (true) {
                for (auto& r : sit->second) {
                    SparseRow row;
                    for (auto& [tk, tc] : r.terms) {
                        const InsertionPlan& pl = plans.at(tk.cert);
                        gens_buf.assign(pl.num_vertices, 0);
                        for (size_t i = 0; i < others.size(); ++i)
                            gens_buf[pl.pos[others[i]]] = pick[i];
                        gens_buf[pl.pos[ct.vH]] = tk.gens[0];
                        gens_buf[pl.pos[ct.vH + 1]] = tk.gens[1];
                        row.emplace_back(intern_key(pl.cert, gens_buf), tc * pl.sign);
                    }
                    normalize_row(row);
                    if (!row.empty()) rows.push_back(std::move(row));
                }
                int i = static_cast<int>(others.size()) - 1;
                while (i >= 0) {
                    if (++pick[i] < dims[i]) break;
                    pick[i] = 0;
                    --i;
                }
                if (i < 0) break;
            }
        }
    }
    long touched = static_cast<long>(intern.size());
    return (total_dim - touched) + quotient_dimension(touched, rows);
}

} // namespace

long quotient_dim(const QuadraticPresentation& p, int m, int n, int weight) {
    if (weight == 0) return (m == 1 && n == 1) ? 1 : 0;
    if (weight == 1) return p.gens.dim(m, n);

    long total = 0;
    for (auto& g : enumerate_graphs(GraphClass::Tree, m, n, weight, p.gen_arities())) {
        long prod = 1;
        for (int v = 0; v < g.num_vertices; ++v)
            prod *= p.gens.dim(g.out_degree(v), g.in_degree(v));
        total += prod;
    }
    if (weight == 2) {
        ComponentBasis cb = weight_basis(p.gens, m, n, 2);
        std::vector<SparseRow> rows;
        for (auto& r : saturated_relations(p, m, n)) rows.push_back(element_row(cb, r));
        return quotient_dimension(total, rows);
    }
    if (uniform_components(p.gens)) return quotient_dim_fast(p, m, n, weight, total);
    ComponentBasis cb = weight_basis(p.gens, m, n, weight);
    auto rows = ideal_rows(p, cb, m, n, weight);
    return quotient_dimension(total, rows);
}

long box_product_dim(const QuadraticPresentation& operad_part,
                     const QuadraticPresentation& co_part, int m, int n) {
    if (m + n > 6) throw std::length_error("box product limited to m+n <= 6");
    if (m == 1 && n == 1) return 1;

    std::map<std::pair<int, int>, long> memo;
    auto dim_lower = [&](int nb) { // operad part at (1,nb)
        auto key = std::make_pair(1, nb);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        long d = quotient_dim(operad_part, 1, nb, nb - 1);
        memo.emplace(key, d);
        return d;
    };
    std::map<int, long> memo_up;
    auto dim_upper = [&](int mb) { // reversed co-part at (mb,1)
        auto it = memo_up.find(mb);
        if (it != memo_up.end()) return it->second;
        long d = quotient_dim(co_part, 1, mb, mb - 1);
        memo_up.emplace(mb, d);
        return d;
    };

    long total = 0;
    if (m == 1 && n >= 2) total += dim_lower(n);
    if (n == 1 && m >= 2) total += dim_upper(m);

    // proper reduced two-level trees: uppers (a,1), lowers (1,b)
    std::vector<std::pair<int, int>> arities;
    for (int a = 2; a <= m + n; ++a) arities.emplace_back(a, 1);
    for (int b = 2; b <= m + n; ++b) arities.emplace_back(1, b);
    for (int w = 2; w <= m + n - 2; ++w) {
        for (auto& g : enumerate_graphs(GraphClass::Tree, m, n, w, arities)) {
            bool two_level = true;
            long prod = 1;
            for (int v = 0; v < g.num_vertices && two_level; ++v) {
                int eout = 0, ein = 0;
                for (auto& [a, b] : g.edges) {
                    if (a == v) ++eout;
                    if (b == v) ++ein;
                }
                if (eout + ein == 0 || (eout > 0 && ein > 0)) { two_level = false; break; }
                int mv = g.out_degree(v), nv = g.in_degree(v);
                if (eout > 0) { // upper: connected only via outputs
                    if (nv != 1) { two_level = false; break; }
                    prod *= dim_upper(mv);
                } else {
                    if (mv != 1) { two_level = false; break; }
                    prod *= dim_lower(nv);
                }
            }
            if (two_level) total += prod;
        }
    }
    return total;
}

} // namespace dpd
