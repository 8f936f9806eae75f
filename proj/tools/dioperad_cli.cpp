#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpd/formats.hpp"
#include "dpd/presentation.hpp"
#include "dpd/resolution.hpp"

using namespace dpd;

namespace {

int usage() {
    std::cerr <<
        "usage: dioperad <command> [options]\n"
        "\n"
        "commands:\n"
        "  dual <presentation> --m M --n N [--format tsv] [--dump-graphs]\n"
        "  dims <presentation> --m M --n N --weight W [--dump-graphs]\n"
        "  boxcheck [--format tsv]\n"
        "  resolve --m M --n N [--format tsv]\n"
        "  d2check --max-arity K [--format tsv]\n"
        "  schouten <A.pv> <B.pv> [--hbar]\n"
        "  check-rep <family.bf>\n"
        "  check-biham <gamma.pv>\n"
        "\n"
        "<presentation> is a built-in name (lie2-1-bi, lie2-1-bi-dual, lie1, lie2)\n"
        "or the path of a presentation file.\n";
    return 2;
}

struct Args {
    std::vector<std::string> positional;
    std::map<std::string, std::string> flags; // --name value
    std::set<std::string> switches;           // --name
};

const std::set<std::string> kValueFlags = {"--m", "--n", "--weight", "--max-arity", "--format"};
const std::set<std::string> kSwitches = {"--dump-graphs", "--hbar"};

Args parse_args(int argc, char** argv, int start) {
    Args a;
    for (int i = start; i < argc; ++i) {
        std::string s = argv[i];
        if (s.rfind("--", 0) == 0) {
            if (kValueFlags.count(s)) {
                if (i + 1 >= argc) throw std::runtime_error("flag " + s + " needs a value");
                a.flags[s] = argv[++i];
            } else if (kSwitches.count(s)) {
                a.switches.insert(s);
            } else {
                throw std::runtime_error("unknown flag " + s);
            }
        } else {
            a.positional.push_back(s);
        }
    }
    return a;
}

int flag_int(const Args& a, const std::string& name) {
    auto it = a.flags.find(name);
    if (it == a.flags.end()) throw std::runtime_error("missing required flag " + name);
    return std::stoi(it->second);
}

bool tsv(const Args& a) {
    auto it = a.flags.find("--format");
    if (it == a.flags.end()) return false;
    if (it->second == "tsv") return true;
    if (it->second == "human") return false;
    throw std::runtime_error("unknown format " + it->second);
}

std::shared_ptr<QuadraticPresentation> load_presentation(const std::string& spec) {
    if (const QuadraticPresentation* b = find_builtin(spec)) {
        auto p = std::make_shared<QuadraticPresentation>(*b);
        for (auto& r : p->relations) r.basis = &p->gens;
        return p;
    }
    return parse_presentation(read_file(spec), spec);
}

std::string term_string(const QuadraticPresentation& p, const DecKey& key) {
    std::ostringstream os;
    const LabeledGraph& g = key.graph;
    for (int v = 0; v < g.num_vertices; ++v) {
        const Component* c = p.gens.find(g.out_degree(v), g.in_degree(v));
        if (v) os << " ";
        os << c->gens[key.gens[v]].name << "[";
        auto lo = local_out_edges(g, v);
        for (size_t s = 0; s < lo.size(); ++s) {
            if (s) os << ",";
            if (lo[s].kind == 0) os << "e" << lo[s].id + 1;
            else os << "o" << lo[s].id;
        }
        os << "|";
        auto li = local_in_edges(g, v);
        for (size_t s = 0; s < li.size(); ++s) {
            if (s) os << ",";
            if (li[s].kind == 0) os << "e" << li[s].id + 1;
            else os << "i" << li[s].id;
        }
        os << "]";
    }
    return os.str();
}

int cmd_dual(const Args& a) {
    auto p = load_presentation(a.positional.at(0));
    int m = flag_int(a, "--m"), n = flag_int(a, "--n");
    auto comp = orthogonal_complement(*p, m, n);
    int dim_f2 = static_cast<int>(comp.keys.size());
    int dim_r = 0;
    for (auto& r : p->relations)
        if (r.m == m && r.n == n) ++dim_r;
    // relation span dimension, not list length
    {
        std::vector<SparseRow> rows;
        ComponentBasis cb = weight_basis(p->gens, m, n, 2);
        for (auto& r : p->relations)
            if (r.m == m && r.n == n) {
                SparseRow row;
                for (auto& [k, c] : r.terms) row.emplace_back(cb.index_of(k), c);
                normalize_row(row);
                rows.push_back(row);
            }
        dim_r = rank_of_rows(rows);
    }
    if (a.switches.count("--dump-graphs")) {
        for (auto& g : enumerate_graphs(GraphClass::Tree, m, n, 2, p->gen_arities()))
            std::cout << dump_graph(g);
    }
    if (tsv(a)) {
        std::cout << "m\tn\tdim_f2\tdim_relations\tdim_complement\n";
        std::cout << m << "\t" << n << "\t" << dim_f2 << "\t" << dim_r << "\t" << comp.dim() << "\n";
    } else {
        std::cout << "component (" << m << "," << n << "): dim F2 = " << dim_f2
                  << ", relation span = " << dim_r << ", complement dimension = " << comp.dim()
                  << "\n";
        auto dual = czech_dual(p->gens);
        QuadraticPresentation pd;
        pd.gens = dual;
        for (auto& row : comp.rows) {
            std::cout << "  ";
            bool first = true;
            for (auto& [col, c] : row) {
                std::ostringstream cs;
                cs << c;
                std::cout << (first ? "" : " ") << (c >= 0 && !first ? "+" : "") << cs.str() << " "
                          << term_string(pd, comp.keys[col]);
                first = false;
            }
            std::cout << "\n";
        }
    }
    return (dim_r + comp.dim() == dim_f2) ? 0 : 1;
}

int cmd_dims(const Args& a) {
    auto p = load_presentation(a.positional.at(0));
    int m = flag_int(a, "--m"), n = flag_int(a, "--n"), w = flag_int(a, "--weight");
    if (a.switches.count("--dump-graphs") && w >= 1) {
        for (auto& g : enumerate_graphs(GraphClass::Tree, m, n, w, p->gen_arities()))
            std::cout << dump_graph(g);
    }
    std::cout << quotient_dim(*p, m, n, w) << "\n";
    return 0;
}

int cmd_boxcheck(const Args& a) {
    const int comps[][2] = {{2, 2}, {2, 3}, {3, 2}};
    bool ok = true;
    if (tsv(a)) std::cout << "m\tn\tbox\tquotient\tmatch\n";
    for (auto& mn : comps) {
        long box = box_product_dim(lie1(), lie2(), mn[0], mn[1]);
        long quo = quotient_dim(lie2_1_bi(), mn[0], mn[1], mn[0] + mn[1] - 2);
        bool match = box == quo;
        ok = ok && match;
        if (tsv(a))
            std::cout << mn[0] << "\t" << mn[1] << "\t" << box << "\t" << quo << "\t"
                      << (match ? "yes" : "no") << "\n";
        else
            std::cout << "(" << mn[0] << "," << mn[1] << "): box " << box << " vs quotient " << quo
                      << (match ? "  ok" : "  MISMATCH") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_resolve(const Args& a) {
    int m = flag_int(a, "--m"), n = flag_int(a, "--n");
    Resolution res(m + n + 1);
    auto gens = res.generators(m, n);
    if (tsv(a)) std::cout << "m\tn\tindex\tdegree\tdifferential_terms\n";
    for (auto& g : gens) {
        auto d = res.differential(g);
        if (tsv(a))
            std::cout << g.m << "\t" << g.n << "\t" << g.idx << "\t" << g.degree() << "\t"
                      << d.term_count() << "\n";
        else
            std::cout << "generator (" << g.m << "," << g.n << ") index " << g.idx << ": degree "
                      << g.degree() << ", differential has " << d.term_count() << " terms\n";
    }
    if (gens.empty()) std::cout << (tsv(a) ? "" : "no generators\n");
    return 0;
}

int cmd_d2check(const Args& a) {
    int maxk = flag_int(a, "--max-arity");
    bool ok = true;
    Resolution res(maxk + 1);
    if (tsv(a)) std::cout << "kind\tm\tn\tindex\td2_zero\n";
    for (int s = 3; s <= maxk; ++s)
        for (int m = 1; m < s; ++m) {
            int n = s - m;
            for (auto& g : res.generators(m, n)) {
                bool z = res.d_squared_is_zero(g);
                ok = ok && z;
                if (tsv(a))
                    std::cout << "dioperad\t" << m << "\t" << n << "\t" << g.idx << "\t"
                              << (z ? "yes" : "no") << "\n";
                else
                    std::cout << "d2 (" << m << "," << n << ") idx " << g.idx << ": "
                              << (z ? "zero" : "NONZERO") << "\n";
            }
        }
    L2Resolution l2(maxk);
    for (int n = 2; n <= maxk; ++n)
        for (auto& g : l2.generators(n)) {
            bool z = l2.d_squared_is_zero(g);
            ok = ok && z;
            if (tsv(a))
                std::cout << "operad\t1\t" << g.n << "\t" << g.idx << "\t" << (z ? "yes" : "no")
                          << "\n";
            else
                std::cout << "d2 compatible-Lie arity " << g.n << " idx " << g.idx << ": "
                          << (z ? "zero" : "NONZERO") << "\n";
        }
    return ok ? 0 : 1;
}

int cmd_schouten(const Args& a) {
    auto pa = parse_polyvector(read_file(a.positional.at(0)), a.positional.at(0));
    auto pb = parse_polyvector(read_file(a.positional.at(1)), a.positional.at(1));
    if (pa.space->degrees != pb.space->degrees)
        throw std::runtime_error("schouten: operands live on different spaces");
    // move B onto A's space
    PolyVector b = make_poly(*pa.space);
    for (auto& [m, c] : pb.poly.terms) b.add_term(m, c);
    PolyVector r = a.switches.count("--hbar") ? schouten_hbar(pa.poly, b) : schouten(pa.poly, b);
    std::cout << serialize_polyvector(r);
    return 0;
}

int cmd_check_rep(const Args& a) {
    auto pf = parse_family(read_file(a.positional.at(0)), a.positional.at(0));
    PolyVector gamma = gamma_from_mu(pf.family);
    BihamVerdict v = check_extended_biham(gamma);
    DefectReport rep = check_extended_biham_report(gamma);
    std::cout << "degree_two: " << (v.degree_ok ? "yes" : "no") << "\n";
    std::cout << "schouten_square_zero: " << (v.schouten_zero ? "yes" : "no") << "\n";
    std::cout << "pointed: " << (v.pointed ? "yes" : "no") << "\n";
    std::cout << "level_weight_bound: " << (v.in_g ? "yes" : "no") << "\n";
    std::cout << "identity_defects: " << rep.defects.size() << "\n";
    for (auto& d : rep.defects)
        std::cout << "  " << d.identity << " on " << d.inputs << " -> " << d.residual << "\n";
    return (v.all() && rep.empty()) ? 0 : 1;
}

int cmd_check_biham(const Args& a) {
    auto pp = parse_polyvector(read_file(a.positional.at(0)), a.positional.at(0));
    BihamVerdict v = check_extended_biham(pp.poly);
    DefectReport rep = check_extended_biham_report(pp.poly);
    std::cout << "degree_two: " << (v.degree_ok ? "yes" : "no") << "\n";
    std::cout << "schouten_square_zero: " << (v.schouten_zero ? "yes" : "no") << "\n";
    std::cout << "pointed: " << (v.pointed ? "yes" : "no") << "\n";
    std::cout << "level_weight_bound: " << (v.in_g ? "yes" : "no") << "\n";
    std::cout << "identity_defects: " << rep.defects.size() << "\n";
    for (auto& d : rep.defects)
        std::cout << "  " << d.identity << " on " << d.inputs << " -> " << d.residual << "\n";
    return (v.all() && rep.empty()) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) return usage();
    std::string cmd = argv[1];
    try {
        Args a = parse_args(argc, argv, 2);
        if (cmd == "dual") return cmd_dual(a);
        if (cmd == "dims") return cmd_dims(a);
        if (cmd == "boxcheck") return cmd_boxcheck(a);
        if (cmd == "resolve") return cmd_resolve(a);
        if (cmd == "d2check") return cmd_d2check(a);
        if (cmd == "schouten") return cmd_schouten(a);
        if (cmd == "check-rep") return cmd_check_rep(a);
        if (cmd == "check-biham") return cmd_check_biham(a);
        return usage();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range&) {
        std::cerr << "missing argument\n";
        return usage();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
