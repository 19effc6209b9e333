#pragma once

// Positive Boolean functions of erosion-dilation cascades.
//
// The value-domain DNF of a filter S is an antichain of index sets K with
// S(x) = max over K of min over offsets in K. The threshold event function
// f_le(T) ("output <= t when exactly the inputs at T are <= t") is its formal
// dual: f_le(T) = AND over K of (K meets T). All probability machinery runs on
// f_le; only the DNF is stored.
//
// A cascade's DNF is computed by the blow-up/condense scheme: walk the stages
// from the outermost inward, keep the current expression in DNF (for max-of-
// mins) or CNF (for min-of-maxes) over the intermediate sequence, substitute
// each stage's element translated by every literal, condense to inclusion-
// minimal sets, and switch the normal form (minimal transversals) whenever the
// incoming stage kind requires the opposite one.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lulu/cascade.hpp"
#include "lulu/errors.hpp"
#include "lulu/exact.hpp"

namespace lulu {

using IndexSet = std::vector<Offset>;  // sorted, unique, nonempty

inline constexpr std::size_t kDefaultTermCap = 100000;

namespace detail {

// Window-indexed bitmask view of a family of offset sets. At most 64 distinct
// offsets are supported, which covers every cascade in scope (C_5 has 61).
struct MaskFamily {
    std::vector<Offset> window;        // sorted union of all sets
    std::vector<std::uint64_t> masks;  // one mask per set

    static MaskFamily build(const std::vector<IndexSet>& sets) {
        MaskFamily f;
        std::vector<Offset> all;
        for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
        f.window = sorted_unique(std::move(all));
        if (f.window.size() > 64)
            throw capacity_error("normal-form window exceeds 64 offsets", 64);
        f.masks.reserve(sets.size());
        for (const auto& s : sets) f.masks.push_back(f.mask_of(s));
        return f;
    }

    std::uint64_t mask_of(const IndexSet& s) const {
        std::uint64_t m = 0;
        for (auto o : s) {
            auto it = std::lower_bound(window.begin(), window.end(), o);
            m |= 1ull << (it - window.begin());
        }
        return m;
    }

    IndexSet set_of(std::uint64_t m) const {
        IndexSet s;
        for (; m; m &= m - 1)
            s.push_back(window[static_cast<std::size_t>(std::countr_zero(m))]);
        return s;
    }
};

// Drop every mask that strictly contains another; dedups.
inline std::vector<std::uint64_t> minimize_masks(std::vector<std::uint64_t> ms) {
    std::sort(ms.begin(), ms.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<std::uint64_t> kept;
    for (auto m : ms) {
        bool dominated = false;
        for (auto k : kept) {
            if (std::popcount(k) >= std::popcount(m)) break;  // kept is popcount-sorted
            if ((k & m) == k) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(m);
    }
    return kept;
}

// Minimal transversals (hitting sets) of a family of nonempty masks,
// processed clause by clause (Berge multiplication with minimization).
inline std::vector<std::uint64_t> minimal_transversals(const std::vector<std::uint64_t>& clauses,
                                                       std::size_t term_cap) {
    std::vector<std::uint64_t> tr;
    bool first = true;
    for (std::uint64_t c : clauses) {
        if (first) {
            for (std::uint64_t m = c; m; m &= m - 1) tr.push_back(m & ~(m - 1));
            first = false;
            continue;
        }
        std::vector<std::uint64_t> keep, grown;
        for (auto t : tr) {
            if (t & c) {
                keep.push_back(t);
            } else {
                for (std::uint64_t m = c; m; m &= m - 1) grown.push_back(t | (m & ~(m - 1)));
            }
        }
        if (keep.size() + grown.size() > term_cap)
            throw capacity_error("transversal computation exceeded " + std::to_string(term_cap) +
                                     " terms",
                                 term_cap);
        // keeps are minimal already (a grown set can equal but never be a
        // strict subset of a keep); grown sets need checking against both
        grown = minimize_masks(std::move(grown));
        std::vector<std::uint64_t> next = keep;
        for (auto g : grown) {
            bool dominated = false;
            for (auto k : keep)
                if ((k & g) == k) {
                    dominated = true;
                    break;
                }
            if (!dominated) next.push_back(g);
        }
        tr = std::move(next);
        if (tr.size() > term_cap)
            throw capacity_error("transversal computation exceeded " + std::to_string(term_cap) +
                                     " terms",
                                 term_cap);
    }
    return tr;
}

} // namespace detail

// Inclusion-minimal family of index sets in canonical order (size, then lex).
class Antichain {
public:
    Antichain() = default;

    static Antichain from_sets(std::vector<IndexSet> sets) {
        for (auto& s : sets) {
            s = sorted_unique(std::move(s));
            if (s.empty()) throw std::invalid_argument("antichain set must be nonempty");
        }
        if (sets.empty()) throw std::invalid_argument("antichain must be nonempty");
        auto fam = detail::MaskFamily::build(sets);
        std::vector<IndexSet> minimal;
        for (auto m : detail::minimize_masks(fam.masks)) minimal.push_back(fam.set_of(m));
        Antichain a;
        a.terms_ = std::move(minimal);
        a.canonicalize();
        return a;
    }

    const std::vector<IndexSet>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    std::vector<Offset> union_window() const {
        std::vector<Offset> all;
        for (const auto& t : terms_) all.insert(all.end(), t.begin(), t.end());
        return sorted_unique(std::move(all));
    }

    friend bool operator==(const Antichain&, const Antichain&) = default;

private:
    void canonicalize() {
        std::sort(terms_.begin(), terms_.end(), [](const IndexSet& a, const IndexSet& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
    }

    std::vector<IndexSet> terms_;
};

// Keep only the inclusion-minimal sets.
inline Antichain condense(std::vector<IndexSet> sets) { return Antichain::from_sets(std::move(sets)); }

// The dual antichain: minimal transversals of the terms. Applied to a DNF it
// yields the CNF clauses of the same monotone function (and vice versa); an
// involution on antichains.
inline Antichain dualize(const Antichain& a, std::size_t term_cap = kDefaultTermCap) {
    auto fam = detail::MaskFamily::build(a.terms());
    std::vector<IndexSet> out;
    for (auto m : detail::minimal_transversals(fam.masks, term_cap)) out.push_back(fam.set_of(m));
    return Antichain::from_sets(std::move(out));
}

class Pbf {
public:
    Pbf(int dim, Antichain value_dnf) : dim_(dim), dnf_(std::move(value_dnf)) {
        window_ = dnf_.union_window();
        if (window_.size() > 64) throw capacity_error("PBF window exceeds 64 offsets", 64);
        for (const auto& t : dnf_.terms()) term_masks_.push_back(mask_of(t));
        std::sort(term_masks_.begin(), term_masks_.end(), [](std::uint64_t a, std::uint64_t b) {
            return std::popcount(a) < std::popcount(b);
        });
    }

    int dim() const { return dim_; }
    const std::vector<Offset>& window() const { return window_; }
    int window_size() const { return static_cast<int>(window_.size()); }
    const Antichain& value_dnf() const { return dnf_; }

    // f_le on a subset of the window given as a bitmask in window order.
    bool value_le_mask(std::uint64_t t) const {
        for (auto k : term_masks_)
            if (!(k & t)) return false;
        return true;
    }

    std::uint64_t mask_of(const IndexSet& t) const {
        std::uint64_t m = 0;
        for (auto o : t) {
            auto it = std::lower_bound(window_.begin(), window_.end(), o);
            if (it == window_.end() || *it != o)
                throw std::invalid_argument("offset set not contained in PBF window");
            m |= 1ull << (it - window_.begin());
        }
        return m;
    }

    friend bool operator==(const Pbf&, const Pbf&) = default;

private:
    int dim_;
    std::vector<Offset> window_;
    Antichain dnf_;
    std::vector<std::uint64_t> term_masks_;
};

// f_le(T): true iff the output at 0 is <= t when exactly the inputs at T are.
inline bool evaluate(const Pbf& f, const IndexSet& t) {
    return f.value_le_mask(f.mask_of(sorted_unique(t)));
}

// Value-domain DNF of a cascade's window function at output index 0. Accepts
// the empty cascade (identity), whose DNF is the single literal at the origin.
inline Pbf pbf_of_cascade(const Cascade& c, std::size_t term_cap = kDefaultTermCap) {
    enum Form { Dnf, Cnf };
    Form form = Dnf;
    std::vector<IndexSet> fam = {{Offset{0, 0}}};

    auto blow_up = [&](const StructuralElement& el) {
        for (auto& s : fam) {
            IndexSet next;
            next.reserve(s.size() * el.size());
            for (auto o : s)
                for (auto u : el.offsets()) next.push_back(o + u);
            s = sorted_unique(std::move(next));
        }
    };

    for (const auto& stage : c.stages()) {  // outermost first
        Form needed = stage.kind == StageKind::Erosion ? Dnf : Cnf;
        if (form != needed) {
            fam = dualize(Antichain::from_sets(std::move(fam)), term_cap).terms();
            form = needed;
        }
        blow_up(stage.element);
        fam = condense(std::move(fam)).terms();
        if (fam.size() > term_cap)
            throw capacity_error("DNF computation exceeded " + std::to_string(term_cap) + " terms",
                                 term_cap);
    }
    Antichain a = Antichain::from_sets(std::move(fam));
    if (form == Cnf) a = dualize(a, term_cap);
    return Pbf(c.dim(), std::move(a));
}

// Offsets the filter output actually depends on: the union of the minimal DNF
// terms. A subset of support_cone(), strict for some cascades.
inline std::vector<Offset> support(const Cascade& c, std::size_t term_cap = kDefaultTermCap) {
    return pbf_of_cascade(c, term_cap).window();
}

// Rank filter on an odd window of size w centered at 0: outputs the k-th
// smallest window value. Value DNF: all (w-k+1)-subsets of the window, so
// f_le(T) iff |T| >= k.
inline Pbf pbf_of_rank(int w, int k, std::size_t term_cap = kDefaultTermCap) {
    if (w < 1 || w % 2 == 0) throw std::invalid_argument("rank window must be odd and positive");
    if (k < 1 || k > w) throw std::invalid_argument("rank must satisfy 1 <= k <= w");
    const int h = (w - 1) / 2;
    const int m = w - k + 1;
    Int count = binomial(w, m);
    if (count > Int(static_cast<long long>(term_cap)))
        throw capacity_error("rank DNF would exceed " + std::to_string(term_cap) + " terms",
                             term_cap);

    std::vector<IndexSet> sets;
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        IndexSet s;
        for (int i : idx) s.push_back({i - h, 0});
        sets.push_back(std::move(s));
        int i = m - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == w - m + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return Pbf(1, Antichain::from_sets(std::move(sets)));
}

inline Pbf median_pbf(int n) {
    if (n < 1) throw std::invalid_argument("M_n requires n >= 1");
    return pbf_of_rank(2 * n + 1, n + 1);
}

// Stack-filter composition in the value domain: substitute the inner DNF into
// every literal of the outer DNF (one inner term chosen per literal).
inline Pbf compose_pbf(const Pbf& outer, const Pbf& inner, std::size_t term_cap = kDefaultTermCap) {
    if (outer.dim() != inner.dim()) throw std::invalid_argument("PBF dimension mismatch");
    std::vector<IndexSet> sets;
    const auto& inner_terms = inner.value_dnf().terms();
    for (const auto& t : outer.value_dnf().terms()) {
        std::vector<IndexSet> partial = {IndexSet{}};
        for (auto o : t) {
            std::vector<IndexSet> next;
            next.reserve(partial.size() * inner_terms.size());
            for (const auto& base : partial)
                for (const auto& k : inner_terms) {
                    IndexSet u = base;
                    for (auto io : k) u.push_back(o + io);
                    next.push_back(sorted_unique(std::move(u)));
                }
            if (next.size() > term_cap)
                throw capacity_error("PBF composition exceeded " + std::to_string(term_cap) +
                                         " terms",
                                     term_cap);
            partial = std::move(next);
        }
        sets.insert(sets.end(), partial.begin(), partial.end());
        if (sets.size() > 4 * term_cap)
            throw capacity_error("PBF composition exceeded " + std::to_string(term_cap) + " terms",
                                 term_cap);
    }
    return Pbf(outer.dim(), condense(std::move(sets)));
}

// Sliding application of a PBF to a real-valued signal: at each position the
// output is the max over DNF terms of the min over the term's offsets.
inline Series apply(const Pbf& f, const Series& x, Boundary b) {
    if (f.dim() != 1) throw std::invalid_argument("only 1D PBF application is supported");
    const long n = static_cast<long>(x.v.size());
    if (n == 0) throw std::invalid_argument("empty signal");
    const long wmin = f.window().front().x;
    const long wmax = f.window().back().x;

    auto eval_at = [&](long i, auto&& fetch) {
        double best = 0;
        bool first_term = true;
        for (const auto& t : f.value_dnf().terms()) {
            double m = fetch(i + t[0].x);
            for (std::size_t k = 1; k < t.size(); ++k) m = std::min(m, fetch(i + t[k].x));
            best = first_term ? m : std::max(best, m);
            first_term = false;
        }
        return best;
    };

    Series out;
    if (b == Boundary::ValidOnly) {
        const long len = n - (wmax - wmin);
        if (len <= 0) throw std::invalid_argument("signal too short for ValidOnly application");
        out.start = x.start - wmin;
        out.v.reserve(static_cast<std::size_t>(len));
        for (long i = 0; i < len; ++i)
            out.v.push_back(eval_at(i - wmin, [&](long j) { return x.v[static_cast<std::size_t>(j)]; }));
    } else {
        out.start = x.start;
        out.v.reserve(x.v.size());
        for (long i = 0; i < n; ++i)
            out.v.push_back(eval_at(i, [&](long j) {
                j = b == Boundary::Extend ? std::clamp(j, 0l, n - 1) : detail::reflect_index(j, n);
                return x.v[static_cast<std::size_t>(j)];
            }));
    }
    return out;
}

} // namespace lulu
