#pragma once

// Output distribution polynomials phi_S of stack filters, by several
// independent routes:
//   - exhaustive enumeration of the window subsets (via the a-vector),
//   - inclusion-exclusion over the value-domain DNF terms,
//   - closed forms for rank, median, L_n, U_n, L_nU_n, U_nL_n,
//   - the recursion phi_{C_n} = phi_{C_{n-1}} + n (G_{2n} - G_{2n-1}).
// All routes agree exactly wherever more than one applies; the test suite
// leans on that heavily.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lulu/cascade.hpp"
#include "lulu/enumerate.hpp"
#include "lulu/errors.hpp"
#include "lulu/event_calculus.hpp"
#include "lulu/pbf.hpp"
#include "lulu/polynomial.hpp"

namespace lulu {

// a[j] = number of j-subsets T of the window with f_le(T) = 1.
struct AVector {
    int w = 0;
    std::vector<std::uint64_t> a;  // size w + 1
};

namespace detail {

inline void require_cap(int w, int cap, const char* what) {
    if (w > cap)
        throw capacity_error(std::string(what) + " needs " + std::to_string(w) +
                                 " variables, cap is " + std::to_string(cap),
                             static_cast<std::size_t>(cap));
}

} // namespace detail

inline AVector a_vector(const Pbf& f, int cap = kDefaultEnumCap) {
    const int w = f.window_size();
    detail::require_cap(w, cap, "subset enumeration");
    AVector av;
    av.w = w;
    av.a = detail::counts_by_popcount(w, [&](std::uint64_t m) { return f.value_le_mask(m); });
    return av;
}

inline Poly phi_from_avector(const AVector& av) {
    Poly r;
    for (int j = 0; j <= av.w; ++j)
        if (av.a[static_cast<std::size_t>(j)])
            r += Poly::pq_term(Rat(static_cast<long long>(av.a[static_cast<std::size_t>(j)])), j,
                               av.w - j);
    return r;
}

inline Poly phi_enum(const Pbf& f, int cap = kDefaultEnumCap) {
    return phi_from_avector(a_vector(f, cap));
}

// Direct enumeration of a cascade over its dependence cone, evaluating the
// stages themselves (bitwise in 1D, via apply() in 2D). Independent of the
// DNF machinery, which makes it the preferred cross-check oracle.
inline Poly phi_enum_cascade(const Cascade& c, int cap = kDefaultEnumCap) {
    const std::vector<Offset> cone = c.support_cone();
    const int w = static_cast<int>(cone.size());
    detail::require_cap(w, cap, "cascade enumeration");

    std::vector<std::uint64_t> counts;
    if (c.dim() == 1 && cone.back().x - cone.front().x + 1 == w) {
        detail::BitPipeline bp{cone.front().x, w, &c};
        counts = detail::counts_by_popcount(w, [&](std::uint64_t m) {
            long s;
            int l;
            std::uint64_t out = bp.run(m, &s, &l);
            return ((out >> (0 - s)) & 1u) != 0;  // output at index 0 is <= t
        });
    } else if (c.dim() == 1) {
        // non-contiguous cone: place the bits on the cone offsets, anything else high
        const long lo = cone.front().x, hi = cone.back().x;
        counts = detail::counts_by_popcount(w, [&](std::uint64_t m) {
            Series x;
            x.start = lo;
            x.v.assign(static_cast<std::size_t>(hi - lo + 1), 1.0);
            for (int i = 0; i < w; ++i)
                if ((m >> i) & 1u) x.v[static_cast<std::size_t>(cone[static_cast<std::size_t>(i)].x - lo)] = 0.0;
            Series y = apply(c, x, Boundary::ValidOnly);
            return y.v[static_cast<std::size_t>(0 - y.start)] <= 0.5;
        });
    } else {
        Offset lo = cone.front(), hi = cone.front();
        for (auto o : cone) {
            lo.x = std::min(lo.x, o.x);
            lo.y = std::min(lo.y, o.y);
            hi.x = std::max(hi.x, o.x);
            hi.y = std::max(hi.y, o.y);
        }
        counts = detail::counts_by_popcount(w, [&](std::uint64_t m) {
            Grid x;
            x.row0 = lo.x;
            x.col0 = lo.y;
            x.rows = static_cast<std::size_t>(hi.x - lo.x + 1);
            x.cols = static_cast<std::size_t>(hi.y - lo.y + 1);
            x.v.assign(x.rows * x.cols, 1.0);
            for (int i = 0; i < w; ++i)
                if ((m >> i) & 1u) {
                    auto o = cone[static_cast<std::size_t>(i)];
                    x.at(static_cast<std::size_t>(o.x - lo.x), static_cast<std::size_t>(o.y - lo.y)) = 0.0;
                }
            Grid y = apply(c, x, Boundary::ValidOnly);
            return y.at(static_cast<std::size_t>(0 - y.row0), static_cast<std::size_t>(0 - y.col0)) <= 0.5;
        });
    }

    Poly r;
    for (int j = 0; j <= w; ++j)
        if (counts[static_cast<std::size_t>(j)])
            r += Poly::pq_term(Rat(static_cast<long long>(counts[static_cast<std::size_t>(j)])), j,
                               w - j);
    return r;
}

// Inclusion-exclusion over the DNF terms (Lemma 7 route):
// phi(p) = sum over term subsets T of (-1)^|T| q^{|union of T|}.
inline Poly phi_incl_excl(const Pbf& f, int term_cap = 22) {
    const auto& terms = f.value_dnf().terms();
    const int m = static_cast<int>(terms.size());
    if (m > term_cap)
        throw capacity_error("inclusion-exclusion over " + std::to_string(m) +
                                 " terms, cap is " + std::to_string(term_cap),
                             static_cast<std::size_t>(term_cap));
    std::vector<std::uint64_t> masks;
    masks.reserve(terms.size());
    for (const auto& t : terms) masks.push_back(f.mask_of(t));

    // signed counts of subsets per union size
    std::vector<long long> c(static_cast<std::size_t>(f.window_size()) + 1, 0);
    auto dfs = [&](auto&& self, int i, std::uint64_t uni, int sign) -> void {
        if (i == m) {
            c[static_cast<std::size_t>(std::popcount(uni))] += sign;
            return;
        }
        self(self, i + 1, uni, sign);
        self(self, i + 1, uni | masks[static_cast<std::size_t>(i)], -sign);
    };
    dfs(dfs, 0, 0, 1);

    std::vector<Rat> q_coeffs(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) q_coeffs[i] = Rat(c[i]);
    return Poly::from_q_basis(q_coeffs);
}

// --- closed forms ------------------------------------------------------------

// sum_{j=k}^{w} C(w,j) p^j q^{w-j}: the k-th order statistic of w values.
inline Poly phi_rank_w(int w, int k) {
    if (w < 1 || k < 1 || k > w) throw std::invalid_argument("invalid rank parameters");
    Poly r;
    for (int j = k; j <= w; ++j) r += Poly::pq_term(Rat(binomial(w, j)), j, w - j);
    return r;
}

enum class BasicFilter { L, U, LU, UL, Median, Rank };

inline Poly phi_closed(BasicFilter f, int n, int k = 0) {
    if (n < 1) throw std::invalid_argument("filter order must be >= 1");
    switch (f) {
    case BasicFilter::L: {
        // 1 - (n+1) q^{n+1} + n q^{n+2}
        std::vector<Rat> q(static_cast<std::size_t>(n) + 3);
        q[0] = Rat(1);
        q[static_cast<std::size_t>(n) + 1] = Rat(-(n + 1));
        q[static_cast<std::size_t>(n) + 2] = Rat(n);
        return Poly::from_q_basis(q);
    }
    case BasicFilter::U: {
        // (n+1) p^{n+1} - n p^{n+2}
        std::vector<Rat> c(static_cast<std::size_t>(n) + 3);
        c[static_cast<std::size_t>(n) + 1] = Rat(n + 1);
        c[static_cast<std::size_t>(n) + 2] = Rat(-n);
        return Poly(std::move(c));
    }
    case BasicFilter::LU:
        // p^{n+1} + n p^{n+1} q + p^{2n+2} q + (n-1)(n+2)/2 p^{2n+2} q^2
        return Poly::pq_term(Rat(1), n + 1, 0) + Poly::pq_term(Rat(n), n + 1, 1) +
               Poly::pq_term(Rat(1), 2 * n + 2, 1) +
               Poly::pq_term(Rat(static_cast<long long>(n - 1) * (n + 2), 2), 2 * n + 2, 2);
    case BasicFilter::UL:
        // 1 - q^{n+1} - n p q^{n+1} - p q^{2n+2} - (n-1)(n+2)/2 p^2 q^{2n+2}
        return Poly::one() - Poly::pq_term(Rat(1), 0, n + 1) - Poly::pq_term(Rat(n), 1, n + 1) -
               Poly::pq_term(Rat(1), 1, 2 * n + 2) -
               Poly::pq_term(Rat(static_cast<long long>(n - 1) * (n + 2), 2), 2, 2 * n + 2);
    case BasicFilter::Median:
        return phi_rank_w(2 * n + 1, n + 1);
    case BasicFilter::Rank:
        if (k < 1 || k > 2 * n + 1) throw std::invalid_argument("rank k out of range");
        return phi_rank_w(2 * n + 1, k);
    }
    throw std::invalid_argument("unknown filter");
}

// --- Theorem 12 machinery -----------------------------------------------------

enum class GTermKind { Even, Odd };

// Pipelines feeding the G-terms: A = dilation^{n-1} C_{n-2} X, B = erosion^{2n-2} A.
inline DerivedPipeline g_term_pipeline_a(int n) {
    return {compose(dilation_1d(n - 1), C(n - 2)), "A"};
}

inline DerivedPipeline g_term_pipeline_b(int n) {
    return {compose(erosion_1d(2 * n - 2), g_term_pipeline_a(n).cascade), "B"};
}

// G_{2n} = (0,...,2n-1, ol(2n), 2n+1,...,4n)_B
// G_{2n-1} = (ol0,...,ol(2n-2), 2n-1, ol(2n),...,ol(4n-2))_A
inline Poly g_term(int n, GTermKind kind, int cap = kDefaultEnumCap) {
    if (n < 2)
        throw std::invalid_argument("G-terms arise for n >= 2 (the recursion starts at C_1)");
    std::vector<Constraint> cs;
    if (kind == GTermKind::Even) {
        for (int i = 0; i <= 4 * n; ++i)
            cs.push_back({Offset{i, 0}, i == 2 * n ? Rel::Gt : Rel::Le});
        return pattern_prob(Pattern(g_term_pipeline_b(n), std::move(cs)), cap);
    }
    for (int i = 0; i <= 4 * n - 2; ++i)
        cs.push_back({Offset{i, 0}, i == 2 * n - 1 ? Rel::Le : Rel::Gt});
    return pattern_prob(Pattern(g_term_pipeline_a(n), std::move(cs)), cap);
}

enum class GSource { PaperClosedForm, Enumerated };

// phi_{C_n} = phi_{C_{n-1}} + n (G_{2n} - G_{2n-1}), base phi_{C_1} = phi_{L_1U_1}.
inline Poly phi_c_recursive(int n, GSource source = GSource::Enumerated,
                            int cap = kDefaultEnumCap) {
    if (n < 1) throw std::invalid_argument("C_n requires n >= 1");
    Poly phi = phi_closed(BasicFilter::LU, 1);
    for (int k = 2; k <= n; ++k) {
        Poly g_even, g_odd;
        if (source == GSource::PaperClosedForm) {
            if (k != 2)
                throw std::invalid_argument("closed G-terms are only known for the C_2 step");
            // G_4 = p^4 q^2 (p + p^2 q)^2, G_3 = p^2 q^2 (1 - p^2)^2
            Poly p = Poly::identity(), q = Poly::one() - p;
            Poly inner = p + p * p * q;
            g_even = Poly::pq_term(Rat(1), 4, 2) * inner * inner;
            Poly one_minus_p2 = Poly::one() - p * p;
            g_odd = Poly::pq_term(Rat(1), 2, 2) * one_minus_p2 * one_minus_p2;
        } else {
            g_even = g_term(k, GTermKind::Even, cap);
            g_odd = g_term(k, GTermKind::Odd, cap);
        }
        phi += (g_even - g_odd) * Rat(k);
    }
    return phi;
}

// Functional composition phi_outer(phi_inner(p)). This is NOT the transfer
// polynomial of the composed filter (the inner outputs are dependent); it
// exists for the negative tests that demonstrate exactly that.
inline Poly phi_compose_naive(const Poly& outer, const Poly& inner) {
    return outer.substitute(inner);
}

} // namespace lulu
