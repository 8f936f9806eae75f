#pragma once

#include <vector>

#include "dpd/decorated.hpp"

namespace dpd {

// Generator of the minimal resolution: m outputs, n inputs, black index
// 0 <= idx <= m-1, degree 2-m.  Exists only for m+n >= 3.
struct ResGen {
    int m = 0, n = 0, idx = 0;
    long degree() const { return 2 - m; }
};

// The quasi-free resolution of the Lie^2 1-bialgebra dioperad: generators
// E(m,n) = m copies of sgn_m (x) 1l_n in degree 2-m, with the shuffle-sum
// differential.
class Resolution {
public:
    explicit Resolution(int max_arity_sum);

    const SBimoduleBasis& bimodule() const { return E_; }
    std::vector<ResGen> generators(int m, int n) const;
    DecoratedElement differential(const ResGen& g) const;
    // extends the differential to a decorated element as a degree-one
    // derivation, one vertex at a time
    DecoratedElement extend_as_derivation(const DecoratedElement& x) const;
    bool d_squared_is_zero(const ResGen& g) const;

private:
    int max_sum_;
    SBimoduleBasis E_;
};

// Generator of the compatible-Lie operad resolution: arity n >= 2, index
// 0 <= idx <= n-1, degree 2-n.
struct L2Gen {
    int n = 0, idx = 0;
    long degree() const { return 2 - n; }
};

class L2Resolution {
public:
    explicit L2Resolution(int max_arity);

    const SBimoduleBasis& bimodule() const { return E_; }
    std::vector<L2Gen> generators(int n) const;
    DecoratedElement differential(const L2Gen& g) const;
    DecoratedElement extend_as_derivation(const DecoratedElement& x) const;
    bool d_squared_is_zero(const L2Gen& g) const;

private:
    int max_arity_;
    SBimoduleBasis E_;
};

} // namespace dpd
