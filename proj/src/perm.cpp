#include "dpd/perm.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpd {

Perm Perm::identity(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return Perm(std::move(v));
}

bool Perm::is_valid() const {
    const int n = size();
    std::vector<char> seen(n + 1, 0);
    for (int v : img) {
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Perm Perm::inverse() const {
    std::vector<int> inv(img.size());
    for (int i = 1; i <= size(); ++i) inv[img[i - 1] - 1] = i;
    return Perm(std::move(inv));
}

Perm compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
    std::vector<int> v(a.size());
    for (int i = 1; i <= a.size(); ++i) v[i - 1] = a(b(i));
    return Perm(std::move(v));
}

std::vector<Perm> enumerate_unshuffles(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("enumerate_unshuffles: negative count");
    const int n = p + q;
    std::vector<Perm> out;
    std::vector<int> first(p);
    for (int i = 0; i < p; ++i) first[i] = i + 1;
    while (true) {
        std::vector<int> img;
        img.reserve(n);
        img.insert(img.end(), first.begin(), first.end());
        std::vector<char> used(n + 1, 0);
        for (int v : first) used[v] = 1;
        for (int v = 1; v <= n; ++v)
            if (!used[v]) img.push_back(v);
        out.emplace_back(std::move(img));
        // next p-subset of [n] in lex order
        int i = p - 1;
        while (i >= 0 && first[i] == n - (p - 1 - i)) --i;
        if (i < 0) break;
        ++first[i];
        for (int j = i + 1; j < p; ++j) first[j] = first[j - 1] + 1;
    }
    return out;
}

int perm_sign(const Perm& s) {
    int inv = 0;
    const int n = s.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s.img[i] > s.img[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

int koszul_sign(const std::vector<long>& degrees, const Perm& sigma) {
    if (static_cast<int>(degrees.size()) != sigma.size())
        throw std::invalid_argument("koszul_sign: length mismatch");
    // bubble-sort [sigma(1)..sigma(n)] to the identity by adjacent swaps
    std::vector<int> seq = sigma.img;
    int sign = 1;
    const int n = static_cast<int>(seq.size());
    for (int pass = 0; pass < n; ++pass)
        for (int i = 0; i + 1 < n; ++i)
            if (seq[i] > seq[i + 1]) {
                long da = degrees[seq[i] - 1], db = degrees[seq[i + 1] - 1];
                if ((da % 2 != 0) && (db % 2 != 0)) sign = -sign;
                std::swap(seq[i], seq[i + 1]);
            }
    return sign;
}

int koszul_sign_by_inversions(const std::vector<long>& degrees, const Perm& sigma) {
    int sign = 1;
    const int n = sigma.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sigma.img[i] > sigma.img[j]) {
                long da = degrees[sigma.img[i] - 1], db = degrees[sigma.img[j] - 1];
                if ((da % 2 != 0) && (db % 2 != 0)) sign = -sign;
            }
    return sign;
}

} // namespace dpd
