#include "dpd/formats.hpp"

#include <fstream>
#include <sstream>

namespace dpd {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

Rat parse_rat(const std::string& s, const std::string& file, int line) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (...) {
        throw ParseError(file, line, "rational number, got '" + s + "'");
    }
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    if (r >= 0) os << "+";
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

// header "V: N; degrees: d1 ... dN"
std::shared_ptr<VSpace> parse_header(const std::string& line, const std::string& file, int ln) {
    std::istringstream is(line);
    std::string tok;
    is >> tok;
    if (tok != "V:") throw ParseError(file, ln, "'V:' header");
    int n = -1;
    if (!(is >> n) || n < 0) throw ParseError(file, ln, "basis size");
    is >> tok;
    if (tok != ";") throw ParseError(file, ln, "';' after basis size");
    is >> tok;
    if (tok != "degrees:") throw ParseError(file, ln, "'degrees:'");
    auto v = std::make_shared<VSpace>();
    v->degrees.resize(n);
    for (int i = 0; i < n; ++i)
        if (!(is >> v->degrees[i])) throw ParseError(file, ln, "degree entry");
    if (is >> tok) throw ParseError(file, ln, "end of header line");
    return v;
}

std::string header_str(const VSpace& v) {
    std::ostringstream os;
    os << "V: " << v.dim() << " ; degrees:";
    for (long d : v.degrees) os << " " << d;
    os << "\n";
    return os.str();
}

// "a^e" or "a"
std::pair<int, int> parse_power(const std::string& s, const std::string& file, int ln) {
    auto caret = s.find('^');
    try {
        if (caret == std::string::npos) return {std::stoi(s), 1};
        return {std::stoi(s.substr(0, caret)), std::stoi(s.substr(caret + 1))};
    } catch (...) {
        throw ParseError(file, ln, "index or index^exponent, got '" + s + "'");
    }
}

} // namespace

ParsedPoly parse_polyvector(const std::string& text, const std::string& filename) {
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    ParsedPoly out;
    while (std::getline(is, line)) {
        ++ln;
        if (line.empty() || line[0] == '#') continue;
        if (!out.space) {
            out.space = parse_header(line, filename, ln);
            out.space->validate();
            out.poly = make_poly(*out.space);
            continue;
        }
        auto toks = split_ws(line);
        size_t i = 0;
        auto need = [&](const std::string& what) -> const std::string& {
            if (i >= toks.size()) throw ParseError(filename, ln, what);
            return toks[i++];
        };
        Rat coef = parse_rat(need("coefficient"), filename, ln);
        if (need("';'") != ";") throw ParseError(filename, ln, "';' after coefficient");
        if (need("'t:'") != "t:") throw ParseError(filename, ln, "'t:'");
        Monomial m;
        while (i < toks.size() && toks[i] != ";") {
            auto [a, e] = parse_power(toks[i++], filename, ln);
            if (a < 1 || a > out.space->dim()) throw ParseError(filename, ln, "t index in range");
            m.t.emplace_back(a, e);
        }
        if (need("';'") != ";") throw ParseError(filename, ln, "';' after t part");
        if (need("'psi:'") != "psi:") throw ParseError(filename, ln, "'psi:'");
        while (i < toks.size() && toks[i] != ";") {
            auto [a, e] = parse_power(toks[i++], filename, ln);
            if (a < 1 || a > out.space->dim()) throw ParseError(filename, ln, "psi index in range");
            m.psi.emplace_back(a, e);
        }
        if (need("';'") != ";") throw ParseError(filename, ln, "';' after psi part");
        if (need("'h:'") != "h:") throw ParseError(filename, ln, "'h:'");
        try {
            m.hbar = std::stoi(need("hbar power"));
        } catch (...) {
            throw ParseError(filename, ln, "hbar power");
        }
        if (i != toks.size()) throw ParseError(filename, ln, "end of term line");
        // normalize through the word form so unsorted input still canonicalizes
        std::vector<std::pair<int, int>> word;
        for (auto& [a, e] : m.t)
            for (int q = 0; q < e; ++q) word.emplace_back(0, a);
        for (auto& [a, e] : m.psi)
            for (int q = 0; q < e; ++q) word.emplace_back(1, a);
        auto [mono, sgn] = normalize_word(*out.space, word, m.hbar);
        out.poly.add_term(mono, coef * sgn);
    }
    if (!out.space) throw ParseError(filename, ln, "'V:' header");
    return out;
}

std::string serialize_polyvector(const PolyVector& p) {
    std::ostringstream os;
    os << header_str(*p.V);
    for (auto& [m, c] : p.terms) {
        os << rat_str(c) << " ; t:";
        for (auto& [a, e] : m.t) {
            os << " " << a;
            if (e > 1) os << "^" << e;
        }
        os << " ; psi:";
        for (auto& [a, e] : m.psi) {
            os << " " << a;
            if (e > 1) os << "^" << e;
        }
        os << " ; h: " << m.hbar << "\n";
    }
    return os.str();
}

ParsedFamily parse_family(const std::string& text, const std::string& filename) {
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    ParsedFamily out;
    while (std::getline(is, line)) {
        ++ln;
        if (line.empty() || line[0] == '#') continue;
        if (!out.space) {
            out.space = parse_header(line, filename, ln);
            out.family.V = out.space.get();
            continue;
        }
        auto toks = split_ws(line);
        size_t i = 0;
        auto need = [&](const std::string& what) -> const std::string& {
            if (i >= toks.size()) throw ParseError(filename, ln, what);
            return toks[i++];
        };
        if (need("'mu'") != "mu") throw ParseError(filename, ln, "'mu'");
        int k = 0, m = 0, n = 0;
        try {
            k = std::stoi(need("level"));
            std::string mn = need("(m,n)");
            if (mn.front() != '(' || mn.back() != ')') throw 0;
            auto comma = mn.find(',');
            m = std::stoi(mn.substr(1, comma - 1));
            n = std::stoi(mn.substr(comma + 1, mn.size() - comma - 2));
        } catch (ParseError&) {
            throw;
        } catch (...) {
            throw ParseError(filename, ln, "level and (m,n)");
        }
        if (need("'out:'") != "out:") throw ParseError(filename, ln, "'out:'");
        std::vector<int> outv, inv;
        while (i < toks.size() && toks[i] != "in:") {
            try {
                outv.push_back(std::stoi(toks[i++]));
            } catch (...) {
                throw ParseError(filename, ln, "output index");
            }
        }
        if (need("'in:'") != "in:") throw ParseError(filename, ln, "'in:'");
        while (i < toks.size() && toks[i] != "=") {
            try {
                inv.push_back(std::stoi(toks[i++]));
            } catch (...) {
                throw ParseError(filename, ln, "input index");
            }
        }
        if (need("'='") != "=") throw ParseError(filename, ln, "'='");
        Rat c = parse_rat(need("coefficient"), filename, ln);
        if (i != toks.size()) throw ParseError(filename, ln, "end of mu line");
        if (static_cast<int>(outv.size()) != m || static_cast<int>(inv.size()) != n)
            throw ParseError(filename, ln, "index counts matching (m,n)");
        for (int a : outv)
            if (a < 1 || a > out.space->dim()) throw ParseError(filename, ln, "output index in range");
        for (int a : inv)
            if (a < 1 || a > out.space->dim()) throw ParseError(filename, ln, "input index in range");
        if (k < 0 || k > m - 1) throw ParseError(filename, ln, "level in range 0..m-1");
        out.family.insert_raw(k, outv, inv, c);
    }
    if (!out.space) throw ParseError(filename, ln, "'V:' header");
    // the (1,1) slot defines -D
    const int N = out.space->dim();
    bool any_d = false;
    std::vector<std::vector<Rat>> D(N, std::vector<Rat>(N, Rat(0)));
    for (auto& [e, c] : out.family.mu)
        if (e.k == 0 && e.out.size() == 1 && e.in.size() == 1) {
            D[e.out[0] - 1][e.in[0] - 1] = -c;
            any_d = true;
        }
    if (any_d) {
        out.space->D = std::move(D);
        out.space->validate();
    }
    return out;
}

std::string serialize_family(const BracketFamily& f) {
    std::ostringstream os;
    os << header_str(*f.V);
    for (auto& [e, c] : f.mu) {
        os << "mu " << e.k << " (" << e.out.size() << "," << e.in.size() << ") out:";
        for (int a : e.out) os << " " << a;
        os << " in:";
        for (int a : e.in) os << " " << a;
        os << " = " << rat_str(c) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// presentations

namespace {

struct VertexSpec {
    std::string gen;
    std::vector<std::string> outs, ins;
};

VertexSpec parse_vertex(const std::string& tok, const std::string& file, int ln) {
    auto lb = tok.find('[');
    auto bar = tok.find('|');
    auto rb = tok.find(']');
    if (lb == std::string::npos || bar == std::string::npos || rb == std::string::npos ||
        !(lb < bar && bar < rb) || rb != tok.size() - 1)
        throw ParseError(file, ln, "vertex '<gen>[outs|ins]', got '" + tok + "'");
    VertexSpec v;
    v.gen = tok.substr(0, lb);
    auto split_refs = [&](const std::string& s) {
        std::vector<std::string> refs;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                if (cur.empty()) throw ParseError(file, ln, "edge reference");
                refs.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        if (!cur.empty()) refs.push_back(cur);
        return refs;
    };
    v.outs = split_refs(tok.substr(lb + 1, bar - lb - 1));
    v.ins = split_refs(tok.substr(bar + 1, rb - bar - 1));
    return v;
}

} // namespace

std::shared_ptr<QuadraticPresentation> parse_presentation(const std::string& text,
                                                          const std::string& filename) {
    auto p = std::make_shared<QuadraticPresentation>();
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    int section = 0; // 0 start, 1 generators, 2 relations
    std::map<std::string, std::tuple<int, int, int>> gen_lookup; // name -> (m,n,idx)

    auto rep_of = [&](const std::string& s, int lno) {
        if (s == "triv") return RepKind::Trivial;
        if (s == "sgn") return RepKind::Sign;
        throw ParseError(filename, lno, "'triv' or 'sgn'");
    };

    while (std::getline(is, line)) {
        ++ln;
        if (line.empty() || line[0] == '#') continue;
        if (line == "generators:") {
            if (section != 0) throw ParseError(filename, ln, "single generators section");
            section = 1;
            continue;
        }
        if (line == "relations:") {
            if (section != 1) throw ParseError(filename, ln, "generators before relations");
            section = 2;
            continue;
        }
        auto toks = split_ws(line);
        size_t i = 0;
        auto need = [&](const std::string& what) -> const std::string& {
            if (i >= toks.size()) throw ParseError(filename, ln, what);
            return toks[i++];
        };
        if (section == 1) {
            if (need("'g'") != "g") throw ParseError(filename, ln, "'g'");
            std::string name = need("generator name");
            std::string mn = need("(m,n)");
            int m = 0, n = 0;
            try {
                auto comma = mn.find(',');
                m = std::stoi(mn.substr(1, comma - 1));
                n = std::stoi(mn.substr(comma + 1, mn.size() - comma - 2));
            } catch (...) {
                throw ParseError(filename, ln, "(m,n)");
            }
            if (need("'degree'") != "degree") throw ParseError(filename, ln, "'degree'");
            long deg = 0;
            try {
                deg = std::stol(need("degree value"));
            } catch (...) {
                throw ParseError(filename, ln, "degree value");
            }
            if (need("'action'") != "action") throw ParseError(filename, ln, "'action'");
            RepKind orep = rep_of(need("out action"), ln);
            RepKind irep = rep_of(need("in action"), ln);
            if (i != toks.size()) throw ParseError(filename, ln, "end of generator line");
            auto it = p->gens.comps.find({m, n});
            if (it == p->gens.comps.end()) {
                Component c;
                c.m = m;
                c.n = n;
                c.out_rep = orep;
                c.in_rep = irep;
                c.gens.push_back({name, deg});
                p->gens.add_component(std::move(c));
            } else {
                if (it->second.out_rep != orep || it->second.in_rep != irep)
                    throw ParseError(filename, ln, "matching actions within one component");
                it->second.gens.push_back({name, deg});
            }
            if (gen_lookup.count(name)) throw ParseError(filename, ln, "unique generator name");
            gen_lookup[name] = {m, n, p->gens.dim(m, n) - 1};
        } else if (section == 2) {
            if (need("'rel'") != "rel") throw ParseError(filename, ln, "'rel'");
            DecoratedElement elem;
            while (i < toks.size()) {
                Rat coef = parse_rat(need("coefficient"), filename, ln);
                std::vector<VertexSpec> verts;
                while (i < toks.size()) {
                    // a rational starts the next term
                    const std::string& t = toks[i];
                    if (t.find('[') == std::string::npos) break;
                    verts.push_back(parse_vertex(toks[i++], filename, ln));
                }
                if (verts.empty()) throw ParseError(filename, ln, "at least one vertex per term");

                // assemble the concrete decorated tree
                ConcreteDecorated cd;
                cd.graph.num_vertices = static_cast<int>(verts.size());
                std::map<int, std::pair<int, int>> edge_src, edge_dst; // edge id -> (vertex, slot)
                std::map<int, std::pair<int, int>> out_leg, in_leg;    // label -> (vertex, slot)
                for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
                    for (int s = 0; s < static_cast<int>(verts[v].outs.size()); ++s) {
                        const std::string& r = verts[v].outs[s];
                        int id = 0;
                        try {
                            id = std::stoi(r.substr(1));
                        } catch (...) {
                            throw ParseError(filename, ln, "reference o<l>, i<l> or e<j>");
                        }
                        if (r[0] == 'e') {
                            if (edge_src.count(id)) throw ParseError(filename, ln, "each edge to have one source");
                            edge_src[id] = {v, s};
                        } else if (r[0] == 'o') {
                            if (out_leg.count(id)) throw ParseError(filename, ln, "each out label once");
                            out_leg[id] = {v, s};
                        } else {
                            throw ParseError(filename, ln, "out reference o<l> or e<j>");
                        }
                    }
                    for (int s = 0; s < static_cast<int>(verts[v].ins.size()); ++s) {
                        const std::string& r = verts[v].ins[s];
                        int id = 0;
                        try {
                            id = std::stoi(r.substr(1));
                        } catch (...) {
                            throw ParseError(filename, ln, "reference o<l>, i<l> or e<j>");
                        }
                        if (r[0] == 'e') {
                            if (edge_dst.count(id)) throw ParseError(filename, ln, "each edge to have one target");
                            edge_dst[id] = {v, s};
                        } else if (r[0] == 'i') {
                            if (in_leg.count(id)) throw ParseError(filename, ln, "each in label once");
                            in_leg[id] = {v, s};
                        } else {
                            throw ParseError(filename, ln, "in reference i<l> or e<j>");
                        }
                    }
                }
                // edges
                std::map<int, int> edge_index;
                for (auto& [id, src] : edge_src) {
                    auto it = edge_dst.find(id);
                    if (it == edge_dst.end()) throw ParseError(filename, ln, "edge e" + std::to_string(id) + " to have a target");
                    edge_index[id] = static_cast<int>(cd.graph.edges.size());
                    cd.graph.edges.emplace_back(src.first, it->second.first);
                }
                for (auto& [id, d] : edge_dst)
                    if (!edge_src.count(id))
                        throw ParseError(filename, ln, "edge e" + std::to_string(id) + " to have a source");
                // legs: labels 1..m / 1..n contiguous
                cd.graph.out_legs.resize(out_leg.size());
                for (auto& [lbl, vs] : out_leg) {
                    if (lbl < 1 || lbl > static_cast<int>(out_leg.size()))
                        throw ParseError(filename, ln, "contiguous out labels");
                    cd.graph.out_legs[lbl - 1] = vs.first;
                }
                cd.graph.in_legs.resize(in_leg.size());
                for (auto& [lbl, vs] : in_leg) {
                    if (lbl < 1 || lbl > static_cast<int>(in_leg.size()))
                        throw ParseError(filename, ln, "contiguous in labels");
                    cd.graph.in_legs[lbl - 1] = vs.first;
                }
                // decorations
                cd.decs.resize(verts.size());
                cd.factor_order.resize(verts.size());
                for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
                    cd.factor_order[v] = v;
                    auto it = gen_lookup.find(verts[v].gen);
                    if (it == gen_lookup.end())
                        throw ParseError(filename, ln, "known generator, got '" + verts[v].gen + "'");
                    auto [gm, gn, gi] = it->second;
                    if (gm != static_cast<int>(verts[v].outs.size()) ||
                        gn != static_cast<int>(verts[v].ins.size()))
                        throw ParseError(filename, ln, "vertex arity matching generator " + verts[v].gen);
                    VertexDec d;
                    d.gen = gi;
                    auto lo = local_out_edges(cd.graph, v);
                    auto li = local_in_edges(cd.graph, v);
                    auto slot = [&](const std::vector<LocalEdge>& list, LocalEdge e) {
                        for (size_t q = 0; q < list.size(); ++q)
                            if (list[q] == e) return static_cast<int>(q);
                        throw ParseError(filename, ln, "consistent edge references");
                    };
                    d.out_attach.resize(gm);
                    for (int s = 0; s < gm; ++s) {
                        const std::string& r = verts[v].outs[s];
                        int id = std::stoi(r.substr(1));
                        d.out_attach[s] = (r[0] == 'e') ? slot(lo, {0, edge_index[id]})
                                                        : slot(lo, {1, id});
                    }
                    d.in_attach.resize(gn);
                    for (int s = 0; s < gn; ++s) {
                        const std::string& r = verts[v].ins[s];
                        int id = std::stoi(r.substr(1));
                        d.in_attach[s] = (r[0] == 'e') ? slot(li, {0, edge_index[id]})
                                                       : slot(li, {1, id});
                    }
                    cd.decs[v] = std::move(d);
                }
                if (elem.basis == nullptr) elem = make_element(p->gens, cd.graph.m(), cd.graph.n());
                auto [key, s] = canonicalize_decorated(p->gens, cd);
                elem.add_term(key, coef * s);
            }
            if (!elem.is_zero()) p->relations.push_back(std::move(elem));
        } else {
            throw ParseError(filename, ln, "'generators:' section");
        }
    }
    if (section == 0) throw ParseError(filename, ln, "'generators:' section");
    return p;
}

std::string serialize_presentation(const QuadraticPresentation& p) {
    std::ostringstream os;
    os << "generators:\n";
    for (auto& [mn, c] : p.gens.comps)
        for (auto& g : c.gens)
            os << "g " << g.name << " (" << c.m << "," << c.n << ") degree " << g.degree
               << " action " << (c.out_rep == RepKind::Sign ? "sgn" : "triv") << " "
               << (c.in_rep == RepKind::Sign ? "sgn" : "triv") << "\n";
    os << "relations:\n";
    for (auto& r : p.relations) {
        os << "rel";
        for (auto& [key, coef] : r.terms) {
            os << " " << rat_str(coef);
            const LabeledGraph& g = key.graph;
            for (int v = 0; v < g.num_vertices; ++v) {
                const Component* c = p.gens.find(g.out_degree(v), g.in_degree(v));
                os << " " << c->gens[key.gens[v]].name << "[";
                auto lo = local_out_edges(g, v);
                for (size_t s = 0; s < lo.size(); ++s) {
                    if (s) os << ",";
                    os << (lo[s].kind == 0 ? "e" : "o") << (lo[s].kind == 0 ? lo[s].id + 1 : lo[s].id);
                }
                os << "|";
                auto li = local_in_edges(g, v);
                for (size_t s = 0; s < li.size(); ++s) {
                    if (s) os << ",";
                    os << (li[s].kind == 0 ? "e" : "i") << (li[s].kind == 0 ? li[s].id + 1 : li[s].id);
                }
                os << "]";
            }
        }
        os << "\n";
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace dpd
