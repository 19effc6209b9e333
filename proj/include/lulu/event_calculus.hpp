#pragma once

// Exact probabilities of joint threshold events on derived sequences.
//
// A pattern constrains a derived sequence B = (cascade X) at finitely many
// offsets, each either "<= t" or "> t", with X i.i.d. and P(X_i <= t) = p.
// Its probability is an exact polynomial in p, computed by exhausting the 0/1
// assignments of the input offsets the constraints depend on. No symbolic
// rewriting happens here: the expansion-calculus identities are validated
// against this enumerator, not reimplemented.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lulu/cascade.hpp"
#include "lulu/enumerate.hpp"
#include "lulu/errors.hpp"
#include "lulu/pbf.hpp"
#include "lulu/polynomial.hpp"

namespace lulu {

inline constexpr int kDefaultEnumCap = 26;

struct DerivedPipeline {
    Cascade cascade;    // empty cascade = the raw input sequence X
    std::string label;  // display only, e.g. "A", "B"
};

enum class Rel { Le, Gt };

struct Constraint {
    Offset at;
    Rel rel;
};

class Pattern {
public:
    Pattern(DerivedPipeline pipeline, std::vector<Constraint> constraints)
        : pipe_(std::move(pipeline)), cs_(std::move(constraints)) {
        if (cs_.empty()) throw std::invalid_argument("pattern must have at least one constraint");
        std::sort(cs_.begin(), cs_.end(),
                  [](const Constraint& a, const Constraint& b) { return a.at < b.at; });
        for (std::size_t i = 0; i + 1 < cs_.size(); ++i)
            if (cs_[i].at == cs_[i + 1].at)
                throw std::invalid_argument("pattern offsets must be distinct");
    }

    const DerivedPipeline& pipeline() const { return pipe_; }
    const std::vector<Constraint>& constraints() const { return cs_; }

    Pattern translated(Offset d) const {
        Pattern p = *this;
        for (auto& c : p.cs_) c.at = c.at + d;
        return p;
    }

private:
    DerivedPipeline pipe_;
    std::vector<Constraint> cs_;
};

// Input offsets the constrained derived values can depend on: the union of
// the pipeline's dependence cone translated to each constrained offset.
inline std::vector<Offset> x_support(const Pattern& pat) {
    std::vector<Offset> cone = pat.pipeline().cascade.support_cone();
    std::vector<Offset> s;
    s.reserve(cone.size() * pat.constraints().size());
    for (const auto& c : pat.constraints())
        for (auto o : cone) s.push_back(c.at + o);
    return sorted_unique(std::move(s));
}

namespace detail {

// 1D fast path: a 0/1 assignment over consecutive input offsets is a word
// (bit = 1 means "<= t"), and a stage is a handful of shifts: erosion = OR
// (min <= t iff some input is), dilation = AND.
struct BitPipeline {
    long start;  // offset of bit 0 of the input word
    int len;
    const Cascade* cascade;

    std::uint64_t run(std::uint64_t word, long* out_start, int* out_len) const {
        long s = start;
        int l = len;
        for (std::size_t i = cascade->stages().size(); i-- > 0;) {
            const auto& st = cascade->stages()[i];
            const int umin = st.element.min_corner().x;
            const int umax = st.element.max_corner().x;
            const bool ero = st.kind == StageKind::Erosion;
            std::uint64_t acc = ero ? 0 : ~0ull;
            for (auto u : st.element.offsets()) {
                std::uint64_t sh = word >> (u.x - umin);
                acc = ero ? (acc | sh) : (acc & sh);
            }
            l -= umax - umin;
            s -= umin;
            word = acc & ((l >= 64 ? 0 : 1ull << l) - 1);
        }
        *out_start = s;
        *out_len = l;
        return word;
    }
};

} // namespace detail

inline Poly pattern_prob(const Pattern& pat, int cap = kDefaultEnumCap) {
    const std::vector<Offset> supp = x_support(pat);
    const int w = static_cast<int>(supp.size());
    if (w > cap)
        throw capacity_error("pattern enumeration needs " + std::to_string(w) +
                                 " variables, cap is " + std::to_string(cap),
                             static_cast<std::size_t>(cap));

    const Cascade& c = pat.pipeline().cascade;
    std::vector<std::uint64_t> counts;

    const bool contiguous_1d =
        c.dim() == 1 && supp.back().x - supp.front().x + 1 == w;

    if (contiguous_1d) {
        detail::BitPipeline bp{supp.front().x, w, &c};
        const auto& cs = pat.constraints();
        counts = detail::counts_by_popcount(w, [&](std::uint64_t m) {
            long s;
            int l;
            std::uint64_t derived = bp.run(m, &s, &l);
            for (const auto& con : cs) {
                long bit = con.at.x - s;
                bool le = (derived >> bit) & 1u;
                if (le != (con.rel == Rel::Le)) return false;
            }
            return true;
        });
    } else {
        // general path: evaluate f_le of the pipeline's PBF per constraint,
        // with the PBF terms translated onto the support bit positions
        const Pbf f = pbf_of_cascade(c);
        struct MaskedConstraint {
            std::vector<std::uint64_t> term_masks;
            bool want_le;
        };
        std::vector<MaskedConstraint> mcs;
        for (const auto& con : pat.constraints()) {
            MaskedConstraint mc;
            mc.want_le = con.rel == Rel::Le;
            for (const auto& term : f.value_dnf().terms()) {
                std::uint64_t m = 0;
                for (auto o : term) {
                    auto it = std::lower_bound(supp.begin(), supp.end(), con.at + o);
                    m |= 1ull << (it - supp.begin());
                }
                mc.term_masks.push_back(m);
            }
            mcs.push_back(std::move(mc));
        }
        counts = detail::counts_by_popcount(w, [&](std::uint64_t m) {
            for (const auto& mc : mcs) {
                bool le = true;
                for (auto k : mc.term_masks)
                    if (!(k & m)) {
                        le = false;
                        break;
                    }
                if (le != mc.want_le) return false;
            }
            return true;
        });
    }

    Poly r;
    for (int j = 0; j <= w; ++j)
        if (counts[static_cast<std::size_t>(j)])
            r += Poly::pq_term(Rat(static_cast<long long>(counts[static_cast<std::size_t>(j)])), j,
                               w - j);
    return r;
}

// --- identity checks (Lemmas 7-10) ------------------------------------------

struct IdentityCheck {
    std::string name;
    Poly lhs, rhs;

    bool holds() const { return lhs == rhs; }
};

namespace detail {

inline Pattern run_pattern(const DerivedPipeline& pipe, std::vector<std::pair<int, Rel>> cs) {
    std::vector<Constraint> v;
    v.reserve(cs.size());
    for (auto [i, rel] : cs) v.push_back({Offset{i, 0}, rel});
    return Pattern(pipe, std::move(v));
}

} // namespace detail

// Inclusion-exclusion: P(Z_{o_1},...,Z_{o_n} <= t) expanded over the subsets
// that are forced above t.
inline IdentityCheck check_l7(const DerivedPipeline& pipe, const std::vector<int>& offsets,
                              int cap = kDefaultEnumCap) {
    std::vector<std::pair<int, Rel>> all_le;
    for (int o : offsets) all_le.emplace_back(o, Rel::Le);
    Poly lhs = pattern_prob(detail::run_pattern(pipe, all_le), cap);

    Poly rhs;
    const std::size_t n = offsets.size();
    for (std::uint64_t sub = 0; sub < (1ull << n); ++sub) {
        Poly term;
        if (sub == 0) {
            term = Poly::one();
        } else {
            std::vector<std::pair<int, Rel>> cs;
            for (std::size_t i = 0; i < n; ++i)
                if ((sub >> i) & 1u) cs.emplace_back(offsets[i], Rel::Gt);
            term = pattern_prob(detail::run_pattern(pipe, cs), cap);
        }
        rhs += std::popcount(sub) % 2 ? -term : term;
    }
    return {"L7 n=" + std::to_string(n), std::move(lhs), std::move(rhs)};
}

// (ol0,...,oln)_X = 1 - (n+1)(0)_X + sum_{i=0}^{n-1} (n-i)(0, ol1,...,oli, i+1)_X
inline IdentityCheck check_l8(const DerivedPipeline& pipe, int n, int cap = kDefaultEnumCap) {
    if (n < 1) throw std::invalid_argument("L8 requires n >= 1");
    std::vector<std::pair<int, Rel>> all_gt;
    for (int i = 0; i <= n; ++i) all_gt.emplace_back(i, Rel::Gt);
    Poly lhs = pattern_prob(detail::run_pattern(pipe, all_gt), cap);

    Poly rhs = Poly::one();
    rhs -= pattern_prob(detail::run_pattern(pipe, {{0, Rel::Le}}), cap) * Rat(n + 1);
    for (int i = 0; i <= n - 1; ++i) {
        std::vector<std::pair<int, Rel>> cs = {{0, Rel::Le}};
        for (int j = 1; j <= i; ++j) cs.emplace_back(j, Rel::Gt);
        cs.emplace_back(i + 1, Rel::Le);
        rhs += pattern_prob(detail::run_pattern(pipe, cs), cap) * Rat(n - i);
    }
    return {"L8 n=" + std::to_string(n), std::move(lhs), std::move(rhs)};
}

// For B = dilation of width r over A:
//   (0, ol1,...,ol(n-1), n)_B = 0                                  n <= r+1
//                             = (0..r, ol(r+1), ol(n-1), n..n+r)_A r+1 < n < 2r+4
// The zero case only makes sense with an interior overlined index (n >= 2).
inline IdentityCheck check_l9(const DerivedPipeline& a, int r, int n, int cap = kDefaultEnumCap) {
    if (n < 2) throw std::invalid_argument("L9 check requires n >= 2");
    if (n >= 2 * r + 4) throw std::invalid_argument("L9 is stated only for n < 2r+4");
    DerivedPipeline b{compose(dilation_1d(r), a.cascade), "V^" + std::to_string(r) + a.label};

    std::vector<std::pair<int, Rel>> lhs_cs = {{0, Rel::Le}};
    for (int i = 1; i <= n - 1; ++i) lhs_cs.emplace_back(i, Rel::Gt);
    lhs_cs.emplace_back(n, Rel::Le);
    Poly lhs = pattern_prob(detail::run_pattern(b, lhs_cs), cap);

    Poly rhs;
    if (n > r + 1) {
        std::vector<std::pair<int, Rel>> cs;
        for (int i = 0; i <= r; ++i) cs.emplace_back(i, Rel::Le);
        cs.emplace_back(r + 1, Rel::Gt);
        if (n - 1 != r + 1) cs.emplace_back(n - 1, Rel::Gt);
        for (int i = n; i <= n + r; ++i) cs.emplace_back(i, Rel::Le);
        rhs = pattern_prob(detail::run_pattern(a, cs), cap);
    }
    return {"L9 r=" + std::to_string(r) + " n=" + std::to_string(n), std::move(lhs), std::move(rhs)};
}

// Dual statement for B = erosion of width r over A.
inline IdentityCheck check_l10(const DerivedPipeline& a, int r, int n, int cap = kDefaultEnumCap) {
    if (n < 2) throw std::invalid_argument("L10 check requires n >= 2");
    if (n >= 2 * r + 4) throw std::invalid_argument("L10 is stated only for n < 2r+4");
    DerivedPipeline b{compose(erosion_1d(r), a.cascade), "W^" + std::to_string(r) + a.label};

    std::vector<std::pair<int, Rel>> lhs_cs = {{0, Rel::Gt}};
    for (int i = 1; i <= n - 1; ++i) lhs_cs.emplace_back(i, Rel::Le);
    lhs_cs.emplace_back(n, Rel::Gt);
    Poly lhs = pattern_prob(detail::run_pattern(b, lhs_cs), cap);

    Poly rhs;
    if (n > r + 1) {
        std::vector<std::pair<int, Rel>> cs;
        for (int i = 0; i <= r; ++i) cs.emplace_back(i, Rel::Gt);
        cs.emplace_back(r + 1, Rel::Le);
        if (n - 1 != r + 1) cs.emplace_back(n - 1, Rel::Le);
        for (int i = n; i <= n + r; ++i) cs.emplace_back(i, Rel::Gt);
        rhs = pattern_prob(detail::run_pattern(a, cs), cap);
    }
    return {"L10 r=" + std::to_string(r) + " n=" + std::to_string(n), std::move(lhs),
            std::move(rhs)};
}

} // namespace lulu
