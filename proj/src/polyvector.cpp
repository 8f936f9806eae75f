#include "dpd/polyvector.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpd {

void VSpace::validate() const {
    if (D.empty()) return;
    const int N = dim();
    if (static_cast<int>(D.size()) != N) throw std::invalid_argument("VSpace: D shape mismatch");
    for (auto& row : D)
        if (static_cast<int>(row.size()) != N) throw std::invalid_argument("VSpace: D shape mismatch");
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b)
            if (!is_zero(D[a - 1][b - 1]) && e_degree(a) != e_degree(b) + 1)
                throw std::invalid_argument("VSpace: D does not raise degree by one");
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            Rat acc(0);
            for (int c = 0; c < N; ++c) acc += D[a][c] * D[c][b];
            if (!is_zero(acc)) throw std::invalid_argument("VSpace: D^2 != 0");
        }
}

int Monomial::weight() const {
    int w = 0;
    for (auto& [a, e] : psi) w += e;
    return w;
}

long Monomial::t_total_degree() const {
    long d = 0;
    for (auto& [a, e] : t) d += e;
    return d;
}

long monomial_degree(const VSpace& V, const Monomial& mono) {
    long d = 0;
    for (auto& [a, e] : mono.t) d += V.t_degree(a) * e;
    for (auto& [a, e] : mono.psi) d += V.psi_degree(a) * e;
    return d;
}

void PolyVector::add_term(const Monomial& mono, const Rat& c) {
    if (dpd::is_zero(c)) return;
    auto it = terms.find(mono);
    if (it == terms.end()) terms.emplace(mono, c);
    else {
        it->second += c;
        if (dpd::is_zero(it->second)) terms.erase(it);
    }
}

PolyVector& PolyVector::operator+=(const PolyVector& o) {
    if (!V) V = o.V;
    if (o.V && V != o.V) throw std::invalid_argument("polyvector sum: different spaces");
    for (auto& [m, c] : o.terms) add_term(m, c);
    return *this;
}

PolyVector& PolyVector::operator*=(const Rat& c) {
    if (dpd::is_zero(c)) {
        terms.clear();
        return *this;
    }
    for (auto& [m, v] : terms) v *= c;
    return *this;
}

bool PolyVector::is_homogeneous() const {
    if (terms.empty()) return true;
    long d = monomial_degree(*V, terms.begin()->first);
    for (auto& [m, c] : terms)
        if (monomial_degree(*V, m) != d) return false;
    return true;
}

long PolyVector::degree() const {
    if (terms.empty()) return -1;
    if (!is_homogeneous()) throw std::invalid_argument("polyvector: inhomogeneous degree");
    return monomial_degree(*V, terms.begin()->first);
}

PolyVector PolyVector::part(int hbar_power, int weight) const {
    PolyVector out = make_poly(*V);
    for (auto& [m, c] : terms)
        if (m.hbar == hbar_power && m.weight() == weight) {
            Monomial mm = m;
            mm.hbar = 0;
            out.add_term(mm, c);
        }
    return out;
}

PolyVector PolyVector::shift_hbar(int k) const {
    PolyVector out = make_poly(*V);
    for (auto& [m, c] : terms) {
        Monomial mm = m;
        mm.hbar += k;
        if (mm.hbar < 0) throw std::invalid_argument("negative hbar power");
        out.add_term(mm, c);
    }
    return out;
}

PolyVector make_poly(const VSpace& V) {
    PolyVector p;
    p.V = &V;
    return p;
}

PolyVector poly_one(const VSpace& V) {
    PolyVector p = make_poly(V);
    p.add_term(Monomial{}, Rat(1));
    return p;
}

PolyVector poly_t(const VSpace& V, int a) {
    PolyVector p = make_poly(V);
    Monomial m;
    m.t = {{a, 1}};
    p.add_term(m, Rat(1));
    return p;
}

PolyVector poly_psi(const VSpace& V, int a) {
    PolyVector p = make_poly(V);
    Monomial m;
    m.psi = {{a, 1}};
    p.add_term(m, Rat(1));
    return p;
}

namespace {

long sym_degree(const VSpace& V, std::pair<int, int> s) {
    return s.first == 0 ? V.t_degree(s.second) : V.psi_degree(s.second);
}

// order: all t symbols by index, then all psi symbols by index
bool sym_less(const std::pair<int, int>& a, const std::pair<int, int>& b) {
    return a < b;
}

} // namespace

std::pair<Monomial, Rat> normalize_word(const VSpace& V,
                                        const std::vector<std::pair<int, int>>& word, int hbar) {
    std::vector<std::pair<int, int>> w = word;
    int sign = 1;
    // bubble sort, Koszul sign per adjacent swap
    for (size_t pass = 0; pass < w.size(); ++pass)
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (sym_less(w[i + 1], w[i])) {
                long d1 = sym_degree(V, w[i]), d2 = sym_degree(V, w[i + 1]);
                if ((d1 % 2 != 0) && (d2 % 2 != 0)) sign = -sign;
                std::swap(w[i], w[i + 1]);
            }
    Monomial m;
    m.hbar = hbar;
    for (auto& s : w) {
        auto& part = s.first == 0 ? m.t : m.psi;
        if (!part.empty() && part.back().first == s.second) {
            if (sym_degree(V, s) % 2 != 0) return {Monomial{}, Rat(0)}; // odd square
            part.back().second += 1;
        } else {
            part.emplace_back(s.second, 1);
        }
    }
    return {m, Rat(sign)};
}

namespace {

std::vector<std::pair<int, int>> expand_word(const Monomial& m) {
    std::vector<std::pair<int, int>> w;
    for (auto& [a, e] : m.t)
        for (int i = 0; i < e; ++i) w.emplace_back(0, a);
    for (auto& [a, e] : m.psi)
        for (int i = 0; i < e; ++i) w.emplace_back(1, a);
    return w;
}

} // namespace

PolyVector multiply(const PolyVector& A, const PolyVector& B) {
    if (A.V != B.V) throw std::invalid_argument("multiply: different spaces");
    PolyVector out = make_poly(*A.V);
    for (auto& [ma, ca] : A.terms)
        for (auto& [mb, cb] : B.terms) {
            auto w = expand_word(ma);
            auto wb = expand_word(mb);
            w.insert(w.end(), wb.begin(), wb.end());
            auto [m, s] = normalize_word(*A.V, w, ma.hbar + mb.hbar);
            out.add_term(m, ca * cb * s);
        }
    return out;
}

namespace {

// left partial derivative with respect to one symbol
PolyVector partial(const PolyVector& P, std::pair<int, int> sym) {
    PolyVector out = make_poly(*P.V);
    const long ds = sym_degree(*P.V, sym);
    for (auto& [m, c] : P.terms) {
        const auto& part = sym.first == 0 ? m.t : m.psi;
        auto it = std::find_if(part.begin(), part.end(),
                               [&](auto& p) { return p.first == sym.second; });
        if (it == part.end()) continue;
        int mult = it->second;
        // move one copy to the front: Koszul sign against everything before it
        int sign = 1;
        if (ds % 2 != 0) {
            long odd_before = 0;
            for (auto& [a, e] : m.t) {
                if (sym.first == 0 && a >= sym.second) break;
                if (P.V->t_degree(a) % 2 != 0) odd_before += e;
            }
            if (sym.first == 1)
                for (auto& [a, e] : m.psi) {
                    if (a >= sym.second) break;
                    if (P.V->psi_degree(a) % 2 != 0) odd_before += e;
                }
            if (odd_before % 2 != 0) sign = -1;
        }
        Monomial mm = m;
        auto& mpart = sym.first == 0 ? mm.t : mm.psi;
        auto mit = std::find_if(mpart.begin(), mpart.end(),
                                [&](auto& p) { return p.first == sym.second; });
        if (--mit->second == 0) mpart.erase(mit);
        out.add_term(mm, c * mult * sign);
    }
    return out;
}

} // namespace

PolyVector partial_t(const PolyVector& P, int a) { return partial(P, {0, a}); }
PolyVector partial_psi(const PolyVector& P, int a) { return partial(P, {1, a}); }

namespace {

PolyVector bullet(const PolyVector& A, const PolyVector& B) {
    PolyVector out = make_poly(*A.V);
    for (int a = 1; a <= A.V->dim(); ++a) {
        PolyVector pa = partial_psi(A, a);
        if (pa.is_zero()) continue;
        PolyVector pb = partial_t(B, a);
        if (pb.is_zero()) continue;
        out += multiply(pa, pb);
    }
    return out;
}

} // namespace

PolyVector schouten(const PolyVector& A, const PolyVector& B) {
    if (A.V != B.V) throw std::invalid_argument("schouten: different spaces");
    if (!A.is_homogeneous() || !B.is_homogeneous())
        throw std::invalid_argument("schouten: inputs must be degree homogeneous");
    PolyVector out = bullet(A, B);
    if (A.is_zero() || B.is_zero()) return out;
    long da = A.degree(), db = B.degree();
    PolyVector ba = bullet(B, A);
    long e = da * db + da + db;
    if (e % 2 != 0) ba *= Rat(-1);
    out += ba;
    return out;
}

PolyVector schouten_hbar(const PolyVector& A, const PolyVector& B) {
    if (A.V != B.V) throw std::invalid_argument("schouten: different spaces");
    // split by hbar power and degree, bracket pieces, reassemble
    PolyVector out = make_poly(*A.V);
    auto pieces = [](const PolyVector& P) {
        std::map<std::pair<int, long>, PolyVector> ps;
        for (auto& [m, c] : P.terms) {
            Monomial mm = m;
            mm.hbar = 0;
            auto key = std::make_pair(m.hbar, monomial_degree(*P.V, mm));
            auto it = ps.find(key);
            if (it == ps.end()) {
                PolyVector q = make_poly(*P.V);
                q.add_term(mm, c);
                ps.emplace(key, std::move(q));
            } else {
                it->second.add_term(mm, c);
            }
        }
        return ps;
    };
    for (auto& [ka, pa] : pieces(A))
        for (auto& [kb, pb] : pieces(B)) {
            PolyVector br = schouten(pa, pb);
            out += br.shift_hbar(ka.first + kb.first);
        }
    return out;
}

bool GradeInfo::pointed() const {
    for (auto& [k, v] : value_at_zero)
        if (!is_zero(v)) return false;
    return true;
}

GradeInfo grade_info(const PolyVector& P) {
    GradeInfo gi;
    for (auto& [m, c] : P.terms) {
        gi.degrees.insert(monomial_degree(*P.V, m));
        gi.weights.insert(m.weight());
        gi.hbar_powers.insert(m.hbar);
        if (m.t.empty() && m.psi.empty()) gi.value_at_zero[m.hbar] += c;
    }
    return gi;
}

bool in_gV(const PolyVector& P) {
    for (auto& [m, c] : P.terms)
        if (m.weight() < m.hbar + 1) return false;
    return true;
}

} // namespace dpd
