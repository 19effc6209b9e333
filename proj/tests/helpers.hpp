#pragma once

// Shared fixtures for the test suite.

#include <random>
#include <vector>

#include "lulu/cascade.hpp"

namespace testutil {

// The running 1D example: max{0,1} min{-2,-1,0} max{0,1,2,3}, a cascade of
// two dilations around one erosion. Its transfer polynomial is 2p^4 - p^5.
inline lulu::Cascade example1_cascade() {
    using namespace lulu;
    return Cascade(1, {
                          Stage{StageKind::Dilation, StructuralElement(range_element(0, 1))},
                          Stage{StageKind::Erosion, StructuralElement(range_element(-2, 0))},
                          Stage{StageKind::Dilation, StructuralElement(range_element(0, 3))},
                      });
}

// 2D opening by a 2x2 square: erosion then dilation with mirrored squares.
inline lulu::Cascade square_opening_2x2() {
    using namespace lulu;
    std::vector<Offset> dil = {{0, 0}, {1, 0}, {0, -1}, {1, -1}};
    std::vector<Offset> ero = {{0, 0}, {-1, 0}, {0, 1}, {-1, 1}};
    return Cascade(2, {
                          Stage{StageKind::Dilation, StructuralElement(dil)},
                          Stage{StageKind::Erosion, StructuralElement(ero)},
                      });
}

inline lulu::Series random_series(std::mt19937_64& g, std::size_t len, int lo = 0, int hi = 12) {
    lulu::Series s;
    s.v.reserve(len);
    std::uniform_int_distribution<int> d(lo, hi);
    for (std::size_t i = 0; i < len; ++i) s.v.push_back(static_cast<double>(d(g)));
    return s;
}

inline lulu::Cascade random_cascade(std::mt19937_64& g, int max_stages = 4, int max_extent = 3) {
    using namespace lulu;
    std::uniform_int_distribution<int> nstages(1, max_stages);
    std::uniform_int_distribution<int> extent(1, max_extent);
    std::uniform_int_distribution<int> shift(-1, 1);
    std::uniform_int_distribution<int> kind(0, 1);
    std::vector<Stage> stages;
    int n = nstages(g);
    for (int i = 0; i < n; ++i) {
        int e = extent(g), s = shift(g);
        stages.push_back(Stage{kind(g) ? StageKind::Dilation : StageKind::Erosion,
                               StructuralElement(range_element(s, s + e))});
    }
    return Cascade(1, std::move(stages));
}

// Compare two anchored series on the overlap of their index ranges.
inline bool equal_on_overlap(const lulu::Series& a, const lulu::Series& b) {
    long lo = std::max(a.start, b.start);
    long hi = std::min(a.start + static_cast<long>(a.v.size()),
                       b.start + static_cast<long>(b.v.size()));
    for (long i = lo; i < hi; ++i)
        if (a.v[static_cast<std::size_t>(i - a.start)] !=
            b.v[static_cast<std::size_t>(i - b.start)])
            return false;
    return true;
}

} // namespace testutil
