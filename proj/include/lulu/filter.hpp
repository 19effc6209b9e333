#pragma once

// A filter is either an erosion-dilation cascade or a positive Boolean
// function applied as a sliding max-of-mins (rank and median filters, and any
// composition involving one). Composition stays in cascade form as long as it
// can; once a PBF is involved the whole pipeline becomes a PBF.

#include <string>
#include <variant>

#include "lulu/cascade.hpp"
#include "lulu/pbf.hpp"

namespace lulu {

using Filter = std::variant<Cascade, Pbf>;

inline int dimension(const Filter& f) {
    return std::visit([](const auto& v) { return v.dim(); }, f);
}

inline Pbf to_pbf(const Filter& f, std::size_t term_cap = kDefaultTermCap) {
    if (const auto* c = std::get_if<Cascade>(&f)) return pbf_of_cascade(*c, term_cap);
    return std::get<Pbf>(f);
}

inline Filter compose(const Filter& outer, const Filter& inner, std::size_t term_cap = kDefaultTermCap) {
    if (const auto* co = std::get_if<Cascade>(&outer))
        if (const auto* ci = std::get_if<Cascade>(&inner)) return compose(*co, *ci);
    return compose_pbf(to_pbf(outer, term_cap), to_pbf(inner, term_cap), term_cap);
}

inline Series apply(const Filter& f, const Series& x, Boundary b) {
    return std::visit([&](const auto& v) { return apply(v, x, b); }, f);
}

// Largest offset extent the filter can read, for padding choices.
inline std::pair<Offset, Offset> reach(const Filter& f) {
    std::vector<Offset> w;
    if (const auto* c = std::get_if<Cascade>(&f))
        w = c->support_cone();
    else
        w = std::get<Pbf>(f).window();
    Offset lo = w.front(), hi = w.front();
    for (auto o : w) {
        lo.x = std::min(lo.x, o.x);
        lo.y = std::min(lo.y, o.y);
        hi.x = std::max(hi.x, o.x);
        hi.y = std::max(hi.y, o.y);
    }
    return {lo, hi};
}

} // namespace lulu
