#pragma once

#include <vector>
#include <cstdint>

namespace dpd {

// Permutation of [n] = {1,...,n}, stored as one-based images:
// img[i-1] = sigma(i).
struct Perm {
    std::vector<int> img;

    Perm() = default;
    explicit Perm(std::vector<int> images) : img(std::move(images)) {}

    int size() const { return static_cast<int>(img.size()); }
    int operator()(int i) const { return img[i - 1]; }
    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }

    static Perm identity(int n);
    bool is_valid() const;
    Perm inverse() const;
};

// (a*b)(i) = a(b(i))
Perm compose(const Perm& a, const Perm& b);

// All sigma in S_{p+q} with sigma(1)<...<sigma(p) and sigma(p+1)<...<sigma(p+q),
// in lexicographic order of the first block.
std::vector<Perm> enumerate_unshuffles(int p, int q);

// (-1)^{inversion count}
int perm_sign(const Perm& s);

// Sign accumulated by reordering homogeneous symbols x_1..x_n of the given
// degrees so that x_{sigma(1)}...x_{sigma(n)} = sign * x_1...x_n.
// degrees[i-1] is the degree of x_i.
int koszul_sign(const std::vector<long>& degrees, const Perm& sigma);

// Same sign computed from the inversion-pair closed form; used as the second
// decomposition in the convention tests.
int koszul_sign_by_inversions(const std::vector<long>& degrees, const Perm& sigma);

} // namespace dpd
