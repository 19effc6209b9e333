#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "lulu/pbf.hpp"

using namespace lulu;

namespace {

IndexSet set1(std::initializer_list<int> xs) {
    IndexSet s;
    for (int x : xs) s.push_back({x, 0});
    return s;
}

// Exhaustive agreement of the threshold function with cascade application on
// 0/1 signals: for every subset T of the dependence cone, marking T as
// "<= t" (value 0) and the rest as "> t" (value 1), the filter output at 0 is
// <= t exactly when f_le accepts T restricted to the PBF window.
void check_consistency_1d(const Cascade& c) {
    Pbf f = pbf_of_cascade(c);
    auto cone = c.support_cone();
    REQUIRE(cone.size() <= 16);
    const long lo = cone.front().x, hi = cone.back().x;
    for (std::uint64_t m = 0; m < (1ull << cone.size()); ++m) {
        Series x;
        x.start = lo;
        x.v.assign(static_cast<std::size_t>(hi - lo + 1), 1.0);
        IndexSet t;
        for (std::size_t i = 0; i < cone.size(); ++i)
            if ((m >> i) & 1u) {
                x.v[static_cast<std::size_t>(cone[i].x - lo)] = 0.0;
                t.push_back(cone[i]);
            }
        Series y = apply(c, x, Boundary::ValidOnly);
        bool out_le = y.v[static_cast<std::size_t>(0 - y.start)] <= 0.5;

        IndexSet tw;
        for (auto o : t)
            if (std::binary_search(f.window().begin(), f.window().end(), o)) tw.push_back(o);
        REQUIRE(out_le == evaluate(f, tw));
    }
}

} // namespace

TEST_CASE("condense keeps only inclusion-minimal sets") {
    Antichain a = condense({set1({0}), set1({0, 1})});
    CHECK(a.terms() == std::vector<IndexSet>{set1({0})});

    // pre-condensation CNF from the worked 1D derivation
    Antichain b = condense({set1({0, 1, 2, 3}), set1({-1, 0, 1, 2}), set1({-2, -1, 0, 1, 2, 3, 4})});
    CHECK(b.terms() == std::vector<IndexSet>{set1({-1, 0, 1, 2}), set1({0, 1, 2, 3})});

    // an antichain is a fixpoint
    CHECK(condense({set1({0, 1}), set1({1, 2})}).size() == 2);
}

TEST_CASE("dualize on the worked examples") {
    Antichain or2 = condense({set1({0}), set1({1})});
    CHECK(dualize(or2).terms() == std::vector<IndexSet>{set1({0, 1})});
    CHECK(dualize(dualize(or2)) == or2);

    Antichain ex1 = condense({set1({0}), set1({1}), set1({2}), set1({-1, 3})});
    CHECK(dualize(ex1).terms() ==
          std::vector<IndexSet>{set1({-1, 0, 1, 2}), set1({0, 1, 2, 3})});

    CHECK(dualize(condense({set1({0, 1})})).terms() ==
          std::vector<IndexSet>{set1({0}), set1({1})});
}

TEST_CASE("dualize is an involution on random antichains") {
    std::mt19937_64 g(101);
    std::uniform_int_distribution<int> nsets(1, 8), size(1, 4), off(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<IndexSet> sets;
        int n = nsets(g);
        for (int i = 0; i < n; ++i) {
            IndexSet s;
            int k = size(g);
            for (int j = 0; j < k; ++j) s.push_back({off(g), 0});
            sets.push_back(sorted_unique(std::move(s)));
        }
        Antichain a = condense(std::move(sets));
        CHECK(dualize(dualize(a)) == a);
    }
}

TEST_CASE("pbf_of_cascade reproduces the worked DNF derivation") {
    Pbf f = pbf_of_cascade(testutil::example1_cascade());
    CHECK(f.value_dnf().terms() ==
          std::vector<IndexSet>{set1({0}), set1({1}), set1({2}), set1({-1, 3})});
    CHECK(f.window() == range_element(-1, 3));  // 5 offsets, not the 7-offset cone

    Pbf d = pbf_of_cascade(dilation_1d(1));
    CHECK(d.value_dnf().terms() == std::vector<IndexSet>{set1({0}), set1({1})});

    // identity cascade: the single literal at the origin
    Pbf id = pbf_of_cascade(Cascade::identity(1));
    CHECK(id.value_dnf().terms() == std::vector<IndexSet>{set1({0})});
}

TEST_CASE("2x2 opening DNF: the four squares containing the origin") {
    Pbf f = pbf_of_cascade(testutil::square_opening_2x2());
    REQUIRE(f.value_dnf().size() == 4);
    for (const auto& t : f.value_dnf().terms()) {
        CHECK(t.size() == 4);
        CHECK(std::binary_search(t.begin(), t.end(), Offset{0, 0}));
        // each term is a translate of the 2x2 square {0,1} x {-1,0}
        int minx = t[0].x, miny = t[0].y;
        for (auto o : t) {
            minx = std::min(minx, o.x);
            miny = std::min(miny, o.y);
        }
        IndexSet square = {{minx, miny}, {minx, miny + 1}, {minx + 1, miny}, {minx + 1, miny + 1}};
        CHECK(t == sorted_unique(square));
    }
    CHECK(f.window().size() == 9);
}

TEST_CASE("evaluate implements the threshold function") {
    Pbf f = pbf_of_cascade(testutil::example1_cascade());
    CHECK(evaluate(f, set1({0, 1, 2, 3})));
    CHECK_FALSE(evaluate(f, set1({0, 1, 2})));
    CHECK(evaluate(f, f.window()));
    CHECK_FALSE(evaluate(f, IndexSet{}));
    CHECK_THROWS_AS(evaluate(f, set1({99})), std::invalid_argument);
}

TEST_CASE("monotonicity of f_le") {
    std::mt19937_64 g(103);
    Pbf f = pbf_of_cascade(LU(2));
    const auto& w = f.window();
    for (int trial = 0; trial < 500; ++trial) {
        std::uint64_t t = g() & ((1ull << w.size()) - 1);
        std::uint64_t t2 = t | (g() & ((1ull << w.size()) - 1));
        if (f.value_le_mask(t)) CHECK(f.value_le_mask(t2));
    }
}

TEST_CASE("rank and median PBFs") {
    Pbf m1 = median_pbf(1);
    CHECK(m1.window() == range_element(-1, 1));
    CHECK(m1.value_dnf().size() == 3);  // all 2-subsets of 3
    CHECK(evaluate(m1, set1({-1, 1})));
    CHECK_FALSE(evaluate(m1, set1({0})));

    Pbf min5 = pbf_of_rank(5, 1);
    CHECK(min5.value_dnf().size() == 1);  // minimum: the single full-window term
    CHECK(evaluate(min5, set1({2})));     // any nonempty T works

    Pbf max5 = pbf_of_rank(5, 5);
    CHECK(max5.value_dnf().size() == 5);
    CHECK_FALSE(evaluate(max5, set1({-2, -1, 0, 1})));
    CHECK(evaluate(max5, max5.window()));

    CHECK_THROWS_AS(pbf_of_rank(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(pbf_of_rank(5, 6), std::invalid_argument);
}

TEST_CASE("threshold consistency with application, exhaustively") {
    check_consistency_1d(testutil::example1_cascade());
    check_consistency_1d(LU(1));
    check_consistency_1d(UL(1));
    check_consistency_1d(C(2));
    check_consistency_1d(LU(3));
}

TEST_CASE("threshold consistency for the 2D opening, exhaustively") {
    Cascade c = testutil::square_opening_2x2();
    Pbf f = pbf_of_cascade(c);
    auto cone = c.support_cone();
    REQUIRE(cone.size() == 9);
    for (std::uint64_t m = 0; m < 512; ++m) {
        Grid x;
        x.row0 = x.col0 = -1;
        x.rows = x.cols = 3;
        x.v.assign(9, 1.0);
        IndexSet t;
        for (std::size_t i = 0; i < 9; ++i)
            if ((m >> i) & 1u) {
                auto o = cone[i];
                x.at(static_cast<std::size_t>(o.x + 1), static_cast<std::size_t>(o.y + 1)) = 0.0;
                t.push_back(o);
            }
        Grid y = apply(c, x, Boundary::ValidOnly);
        bool out_le = y.at(static_cast<std::size_t>(0 - y.row0),
                           static_cast<std::size_t>(0 - y.col0)) <= 0.5;
        bool f_le = f.value_le_mask(f.mask_of(t));
        REQUIRE(out_le == f_le);
    }
}

TEST_CASE("DNF is fusion independent") {
    std::mt19937_64 g(107);
    for (int trial = 0; trial < 40; ++trial) {
        Cascade a = testutil::random_cascade(g, 2), b = testutil::random_cascade(g, 2);
        CHECK(pbf_of_cascade(compose(a, b)) == pbf_of_cascade(concat(a, b)));
    }
}

TEST_CASE("effective support vs dependence cone") {
    CHECK(support(dilation_1d(1)) == range_element(0, 1));
    // the cascade reads 7 offsets but depends on only 5
    CHECK(support(testutil::example1_cascade()) == range_element(-1, 3));
    CHECK(support(C(2)) == range_element(-6, 6));
}

TEST_CASE("PBF composition agrees with sequential application") {
    std::mt19937_64 g(109);
    Pbf m1 = median_pbf(1);
    Pbf mm = compose_pbf(m1, m1);
    for (int trial = 0; trial < 30; ++trial) {
        Series x = testutil::random_series(g, 24);
        Series direct = apply(mm, x, Boundary::ValidOnly);
        Series staged = apply(m1, apply(m1, x, Boundary::ValidOnly), Boundary::ValidOnly);
        CHECK(direct == staged);
    }
}

TEST_CASE("PBF application of the median against cascade bounds") {
    // UL_n <= M_n <= LU_n pointwise on the common interior
    std::mt19937_64 g(113);
    for (int n : {1, 2}) {
        Pbf med = median_pbf(n);
        for (int trial = 0; trial < 30; ++trial) {
            Series x = testutil::random_series(g, 40);
            Series lower = apply(UL(n), x, Boundary::ValidOnly);
            Series mid = apply(med, x, Boundary::ValidOnly);
            Series upper = apply(LU(n), x, Boundary::ValidOnly);
            long lo = std::max({lower.start, mid.start, upper.start});
            long hi = std::min({lower.start + static_cast<long>(lower.v.size()),
                                mid.start + static_cast<long>(mid.v.size()),
                                upper.start + static_cast<long>(upper.v.size())});
            REQUIRE(lo < hi);
            for (long i = lo; i < hi; ++i) {
                double a = lower.v[static_cast<std::size_t>(i - lower.start)];
                double m = mid.v[static_cast<std::size_t>(i - mid.start)];
                double b = upper.v[static_cast<std::size_t>(i - upper.start)];
                CHECK(a <= m);
                CHECK(m <= b);
            }
        }
    }
}

TEST_CASE("max-min DNF evaluation equals stage application on real signals") {
    std::mt19937_64 g(127);
    for (int trial = 0; trial < 40; ++trial) {
        Cascade c = testutil::random_cascade(g, 3);
        if (c.support_cone().size() > 14) continue;
        Pbf f = pbf_of_cascade(c);
        Series x = testutil::random_series(g, 30, 0, 100);
        Series via_stages = apply(c, x, Boundary::ValidOnly);
        Series via_dnf = apply(f, x, Boundary::ValidOnly);
        // the DNF window can be narrower than the cone, so compare on overlap
        CHECK(testutil::equal_on_overlap(via_stages, via_dnf));
        CHECK(via_dnf.v.size() >= via_stages.v.size());
    }
}

TEST_CASE("transversal capacity cap is enforced") {
    Antichain big = condense({set1({0, 1}), set1({2, 3}), set1({4, 5}), set1({6, 7}),
                              set1({8, 9}), set1({10, 11})});
    CHECK_THROWS_AS(dualize(big, 10), capacity_error);
}
