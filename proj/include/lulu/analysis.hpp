#pragma once

// Consequences of an output distribution polynomial: robustness orders (root
// multiplicities at p = 0 and p = 1, read off exact coefficients), rank
// selection probabilities, and sampled dominance comparisons.

#include <stdexcept>
#include <vector>

#include "lulu/distribution.hpp"
#include "lulu/exact.hpp"
#include "lulu/pbf.hpp"
#include "lulu/polynomial.hpp"

namespace lulu {

struct RobustnessOrders {
    int lower = 0;  // multiplicity of the root p = 0 of phi
    int upper = 0;  // multiplicity of the root p = 1 of phi - 1
};

inline RobustnessOrders robustness_orders(const Poly& phi) {
    if (!phi.coeff(0).is_zero() || !(phi(Rat(1)) == Rat(1)))
        throw std::invalid_argument("not a transfer polynomial: needs phi(0)=0 and phi(1)=1");
    RobustnessOrders r;
    r.lower = static_cast<int>(phi.order_at_zero());
    Poly dual = Poly::one() - phi.reflect();  // 1 - phi(1-p)
    r.upper = static_cast<int>(dual.order_at_zero());
    return r;
}

// rsp[j] = probability the filter outputs the j-th smallest window value
// (index 0 of the vector holds j = 1). Derived from the a-vector: the set of
// the j smallest inputs is a uniformly random j-subset under i.i.d. continuous
// input, so P(output <= j-th smallest) = a_j / C(w,j).
struct RspVector {
    std::vector<Rat> rsp;

    int window() const { return static_cast<int>(rsp.size()); }

    Rat sum() const {
        Rat s(0);
        for (const auto& v : rsp) s += v;
        return s;
    }
};

inline RspVector rsp_from_avector(const AVector& av) {
    RspVector r;
    r.rsp.reserve(static_cast<std::size_t>(av.w));
    Rat prev(0);
    for (int j = 1; j <= av.w; ++j) {
        Rat cur(Int(static_cast<long long>(av.a[static_cast<std::size_t>(j)])), binomial(av.w, j));
        r.rsp.push_back(cur - prev);
        prev = cur;
    }
    return r;
}

inline RspVector rsp(const Pbf& f, int cap = kDefaultEnumCap) {
    return rsp_from_avector(a_vector(f, cap));
}

// Reassembles phi as the rsp-weighted mix of order statistics; equals the
// enumerated phi of the originating PBF exactly.
inline Poly phi_from_rsp(const RspVector& r, int w) {
    if (r.window() != w) throw std::invalid_argument("rsp length does not match window size");
    Poly phi;
    for (int j = 1; j <= w; ++j)
        if (!r.rsp[static_cast<std::size_t>(j - 1)].is_zero())
            phi += phi_rank_w(w, j) * r.rsp[static_cast<std::size_t>(j - 1)];
    return phi;
}

// True iff phi_b <= phi_a at every grid point, in exact rational arithmetic.
// (Theorem direction: a pointwise smaller operator has the larger transfer.)
inline bool dominance_check(const Poly& phi_a, const Poly& phi_b, const std::vector<Rat>& grid) {
    for (const auto& p : grid)
        if (phi_b(p) > phi_a(p)) return false;
    return true;
}

inline std::vector<Rat> default_dominance_grid() {
    std::vector<Rat> g;
    g.reserve(99);
    for (int i = 1; i <= 99; ++i) g.emplace_back(i, 100);
    return g;
}

} // namespace lulu
