#include "dpd/representation.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "dpd/perm.hpp"

namespace dpd {

std::pair<std::vector<int>, int> normalize_tuple(const std::vector<long>& sym_degrees,
                                                 std::vector<int> tuple) {
    int sign = 1;
    for (size_t pass = 0; pass < tuple.size(); ++pass)
        for (size_t i = 0; i + 1 < tuple.size(); ++i)
            if (tuple[i] > tuple[i + 1]) {
                long d1 = sym_degrees[tuple[i] - 1], d2 = sym_degrees[tuple[i + 1] - 1];
                if ((d1 % 2 != 0) && (d2 % 2 != 0)) sign = -sign;
                std::swap(tuple[i], tuple[i + 1]);
            }
    for (size_t i = 0; i + 1 < tuple.size(); ++i)
        if (tuple[i] == tuple[i + 1] && sym_degrees[tuple[i] - 1] % 2 != 0)
            return {tuple, 0};
    return {tuple, sign};
}

void BracketFamily::insert_raw(int k, std::vector<int> out, std::vector<int> in, const Rat& c) {
    if (!V) throw std::invalid_argument("family: space not set");
    const int m = static_cast<int>(out.size());
    if (k < 0 || k > m - 1) throw std::invalid_argument("family: level out of range");
    std::vector<long> psi_degs(V->dim()), t_degs(V->dim());
    for (int a = 1; a <= V->dim(); ++a) {
        psi_degs[a - 1] = V->psi_degree(a);
        t_degs[a - 1] = V->t_degree(a);
    }
    auto [so, s1] = normalize_tuple(psi_degs, std::move(out));
    auto [si, s2] = normalize_tuple(t_degs, std::move(in));
    if (s1 == 0 || s2 == 0) return;
    Rat v = c * s1 * s2;
    if (is_zero(v)) return;
    BracketEntry e{k, std::move(so), std::move(si)};
    auto it = mu.find(e);
    if (it == mu.end()) mu.emplace(std::move(e), v);
    else {
        it->second += v;
        if (is_zero(it->second)) mu.erase(it);
    }
}

PolyVector gamma_from_mu(const BracketFamily& f) {
    if (!f.V) throw std::invalid_argument("gamma_from_mu: space not set");
    PolyVector g = make_poly(*f.V);
    for (auto& [e, c] : f.mu) {
        Monomial m;
        m.hbar = e.k;
        for (int a : e.in) {
            if (!m.t.empty() && m.t.back().first == a) m.t.back().second += 1;
            else m.t.emplace_back(a, 1);
        }
        for (int a : e.out) {
            if (!m.psi.empty() && m.psi.back().first == a) m.psi.back().second += 1;
            else m.psi.emplace_back(a, 1);
        }
        g.add_term(m, c);
    }
    return g;
}

BracketFamily mu_from_gamma(const PolyVector& gamma) {
    if (!in_gV(gamma)) throw std::invalid_argument("mu_from_gamma: not in the representation subalgebra");
    BracketFamily f;
    f.V = gamma.V;
    for (auto& [m, c] : gamma.terms) {
        BracketEntry e;
        e.k = m.hbar;
        for (auto& [a, ex] : m.t)
            for (int i = 0; i < ex; ++i) e.in.push_back(a);
        for (auto& [a, ex] : m.psi)
            for (int i = 0; i < ex; ++i) e.out.push_back(a);
        f.mu.emplace(std::move(e), c);
    }
    return f;
}

namespace {

// [X, f] for a function f: contraction sum_a dX/dpsi_a * df/dt^a
PolyVector contract_function(const PolyVector& X, const PolyVector& f) {
    PolyVector out = make_poly(*X.V);
    for (int a = 1; a <= X.V->dim(); ++a) {
        PolyVector xa = partial_psi(X, a);
        if (xa.is_zero()) continue;
        PolyVector fa = partial_t(f, a);
        if (fa.is_zero()) continue;
        out += multiply(xa, fa);
    }
    return out;
}

} // namespace

PolyVector extract_brackets(const PolyVector& gamma, int k, int n,
                            const std::vector<PolyVector>& inputs) {
    if (static_cast<int>(inputs.size()) != n)
        throw std::invalid_argument("extract_brackets: arity mismatch");
    if (k < 1 || k > n) throw std::invalid_argument("extract_brackets: level out of range");
    for (auto& f : inputs)
        for (auto& [m, c] : f.terms)
            if (!m.psi.empty() || m.hbar != 0)
                throw std::invalid_argument("extract_brackets: inputs must be functions");
    PolyVector X = gamma.part(k - 1, n);
    for (auto& f : inputs) X = contract_function(X, f);
    return X;
}

DefectReport sh_defect(const PolyVector& gamma, int max_arity, int input_degree_bound) {
    if (!in_gV(gamma)) throw std::invalid_argument("sh_defect: not in the representation subalgebra");
    const VSpace& V = *gamma.V;
    DefectReport rep;

    // monomial test inputs of t-degree 1..bound
    std::vector<PolyVector> monos;
    std::vector<std::string> mono_names;
    {
        std::vector<std::vector<int>> idx_tuples;
        std::vector<int> cur;
        std::function<void(int, int)> rec = [&](int start, int len) {
            if (len > 0) idx_tuples.push_back(cur);
            if (len == input_degree_bound) return;
            for (int a = start; a <= V.dim(); ++a) {
                cur.push_back(a);
                rec(a, len + 1);
                cur.pop_back();
            }
        };
        rec(1, 0);
        for (auto& tup : idx_tuples) {
            PolyVector p = poly_one(V);
            std::string nm;
            for (int a : tup) {
                p = multiply(p, poly_t(V, a));
                nm += "t" + std::to_string(a);
            }
            if (p.is_zero()) continue; // odd square
            monos.push_back(p);
            mono_names.push_back(nm);
        }
    }

    auto record = [&](int n, int kk, const std::vector<int>& pick, const PolyVector& res) {
        if (res.is_zero()) return;
        std::ostringstream id, in;
        id << "n=" << n << ",k=" << kk;
        for (size_t i = 0; i < pick.size(); ++i) in << (i ? "," : "") << mono_names[pick[i]];
        for (auto& [m, c] : res.terms) {
            rep.defects.push_back({id.str(), in.str(), c});
        }
    };

    for (int n = 1; n <= max_arity; ++n) {
        // sorted input tuples with repetition; graded skewness kills
        // repeated even-degree inputs, so they are cheap no-ops
        std::vector<int> pick(n, 0);
        std::function<void(int, int)> loop = [&](int slot, int start) {
            if (slot == n) {
                std::vector<PolyVector> fs(n);
                std::vector<long> fdeg(n);
                for (int i = 0; i < n; ++i) {
                    fs[i] = monos[pick[i]];
                    fdeg[i] = fs[i].degree();
                }
                for (int kk = 2; kk <= n + 1; ++kk) {
                    PolyVector acc = make_poly(V);
                    for (int s = 1; s <= n; ++s) {
                        int r = n + 1 - s;
                        for (auto& sig : enumerate_unshuffles(s, n - s)) {
                            std::vector<long> degs = fdeg;
                            int eps = koszul_sign(degs, sig);
                            int sgn = perm_sign(sig);
                            int expo = (r * (s - 1)) % 2;
                            Rat pref = Rat(eps * sgn) * ((expo == 0) ? 1 : -1);
                            for (int i = 1; i <= r; ++i) {
                                int j = kk - i;
                                if (j < 1 || j > s) continue;
                                std::vector<PolyVector> innerv(s);
                                for (int q = 0; q < s; ++q) innerv[q] = fs[sig(q + 1) - 1];
                                PolyVector inner = extract_brackets(gamma, j, s, innerv);
                                if (inner.is_zero()) continue;
                                std::vector<PolyVector> outerv(r);
                                outerv[0] = inner;
                                for (int q = 1; q < r; ++q) outerv[q] = fs[sig(s + q) - 1];
                                PolyVector term = extract_brackets(gamma, i, r, outerv);
                                term *= pref;
                                acc += term;
                            }
                        }
                    }
                    record(n, kk, pick, acc);
                }
                return;
            }
            for (int c = start; c < static_cast<int>(monos.size()); ++c) {
                pick[slot] = c;
                loop(slot + 1, c);
            }
        };
        loop(0, 0);
    }
    return rep;
}

BihamVerdict check_extended_biham(const PolyVector& gamma) {
    BihamVerdict v;
    v.in_g = in_gV(gamma);
    v.pointed = grade_info(gamma).pointed();
    v.degree_ok = true;
    for (auto& [m, c] : gamma.terms)
        if (monomial_degree(*gamma.V, m) != 2) { v.degree_ok = false; break; }
    v.schouten_zero = schouten_hbar(gamma, gamma).is_zero();
    return v;
}

DefectReport check_extended_biham_report(const PolyVector& gamma) {
    int maxw = 0, maxd = 0;
    for (auto& [m, c] : gamma.terms) {
        maxw = std::max(maxw, m.weight());
        maxd = std::max<int>(maxd, static_cast<int>(m.t_total_degree()));
    }
    int arity = std::max(1, 2 * maxw - 1);
    return sh_defect(gamma, std::min(arity, 6), std::min(maxd + 1, 3));
}

ClassicalVerdict classical_biham_check(const PolyVector& g0, const PolyVector& g1) {
    for (auto* g : {&g0, &g1})
        for (auto& [m, c] : g->terms)
            if (m.weight() != 2 || m.hbar != 0)
                throw std::invalid_argument("classical check: bivector fields required");
    ClassicalVerdict v;
    v.first_poisson = schouten_hbar(g0, g0).is_zero();
    v.second_poisson = schouten_hbar(g1, g1).is_zero();
    PolyVector mixed = schouten_hbar(g0, g1);
    mixed += schouten_hbar(g1, g0);
    v.compatible = mixed.is_zero();
    return v;
}

PolyVector leibniz_defect(const PolyVector& gamma, int k, int n, int j,
                          const std::vector<PolyVector>& others, const PolyVector& g,
                          const PolyVector& h) {
    if (static_cast<int>(others.size()) != n - 1)
        throw std::invalid_argument("leibniz_defect: need n-1 other arguments");
    if (j < 1 || j > n) throw std::invalid_argument("leibniz_defect: bad position");
    auto with = [&](const PolyVector& x) {
        std::vector<PolyVector> fs;
        fs.reserve(n);
        for (int i = 0; i < j - 1; ++i) fs.push_back(others[i]);
        fs.push_back(x);
        for (int i = j - 1; i < n - 1; ++i) fs.push_back(others[i]);
        return extract_brackets(gamma, k, n, fs);
    };
    PolyVector lhs = with(multiply(g, h));
    PolyVector r1 = multiply(with(g), h);
    PolyVector r2 = multiply(with(h), g);
    long dg = g.is_zero() ? 0 : g.degree();
    long dh = h.is_zero() ? 0 : h.degree();
    if ((dg * dh) % 2 != 0) r2 *= Rat(-1);
    PolyVector out = lhs;
    r1 *= Rat(-1);
    r2 *= Rat(-1);
    out += r1;
    out += r2;
    return out;
}

} // namespace dpd
