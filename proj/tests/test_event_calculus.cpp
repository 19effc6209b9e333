#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "lulu/distribution.hpp"
#include "lulu/event_calculus.hpp"

using namespace lulu;

namespace {

DerivedPipeline raw_x() { return {Cascade::identity(1), "X"}; }

Pattern pat(const DerivedPipeline& pipe, std::vector<std::pair<int, Rel>> cs) {
    std::vector<Constraint> v;
    for (auto [i, r] : cs) v.push_back({Offset{i, 0}, r});
    return Pattern(pipe, std::move(v));
}

} // namespace

TEST_CASE("x_support") {
    CHECK(x_support(pat(raw_x(), {{0, Rel::Le}})) == range_element(0, 0));

    DerivedPipeline b{compose(erosion_1d(2), dilation_1d(3)), "B"};
    CHECK(x_support(pat(b, {{0, Rel::Le}})) == range_element(-2, 3));  // 6 consecutive

    // G_4 pattern for the C_2 step: nine constraints on B = erosion^2 dilation^1 X
    DerivedPipeline gb = g_term_pipeline_b(2);
    std::vector<std::pair<int, Rel>> cs;
    for (int i = 0; i <= 8; ++i) cs.emplace_back(i, i == 4 ? Rel::Gt : Rel::Le);
    CHECK(x_support(pat(gb, cs)) == range_element(-2, 9));  // 12 input offsets
}

TEST_CASE("pattern_prob base cases") {
    CHECK(pattern_prob(pat(raw_x(), {{0, Rel::Le}})) == Poly::identity());

    // (ol0, ol1, 2): q^2 p by independence
    Poly expect = Poly::pq_term(Rat(1), 1, 2);
    CHECK(pattern_prob(pat(raw_x(), {{0, Rel::Gt}, {1, Rel::Gt}, {2, Rel::Le}})) == expect);

    // impossible pattern on B = dilation^r A for n <= r+1
    DerivedPipeline b{dilation_1d(2), "B"};
    Poly z = pattern_prob(pat(b, {{0, Rel::Le}, {1, Rel::Gt}, {2, Rel::Le}}));
    CHECK(z.is_zero());
}

TEST_CASE("complementarity: LE + GT = unconstrained") {
    std::mt19937_64 g(307);
    for (int trial = 0; trial < 20; ++trial) {
        DerivedPipeline pipe{testutil::random_cascade(g, 2), "D"};
        if (x_support(pat(pipe, {{0, Rel::Le}, {3, Rel::Le}})).size() > 16) continue;
        Poly le = pattern_prob(pat(pipe, {{0, Rel::Le}, {3, Rel::Le}}));
        Poly gt = pattern_prob(pat(pipe, {{0, Rel::Le}, {3, Rel::Gt}}));
        Poly without = pattern_prob(pat(pipe, {{0, Rel::Le}}));
        CHECK(le + gt == without);
    }
}

TEST_CASE("translation invariance") {
    DerivedPipeline b{compose(erosion_1d(1), dilation_1d(2)), "B"};
    Pattern base = pat(b, {{0, Rel::Le}, {1, Rel::Gt}, {3, Rel::Le}});
    Poly p0 = pattern_prob(base);
    CHECK(pattern_prob(base.translated({5, 0})) == p0);
    CHECK(pattern_prob(base.translated({-7, 0})) == p0);
}

TEST_CASE("single LE constraint equals the transfer polynomial") {
    std::mt19937_64 g(311);
    for (int trial = 0; trial < 20; ++trial) {
        Cascade c = testutil::random_cascade(g);
        if (c.support_cone().size() > 16) continue;
        DerivedPipeline pipe{c, "S"};
        CHECK(pattern_prob(pat(pipe, {{0, Rel::Le}})) == phi_enum(pbf_of_cascade(c)));
    }
}

TEST_CASE("general 2D pattern path agrees on the opening") {
    // the four-Y pattern of the 2x2 opening evaluates to the Example 2 polynomial
    DerivedPipeline y{Cascade(2, {Stage{StageKind::Erosion,
                                        StructuralElement({{0, 0}, {-1, 0}, {0, 1}, {-1, 1}})}}),
                      "Y"};
    std::vector<Constraint> cs = {{Offset{0, 0}, Rel::Le},
                                  {Offset{1, 0}, Rel::Le},
                                  {Offset{0, -1}, Rel::Le},
                                  {Offset{1, -1}, Rel::Le}};
    Poly viaY = pattern_prob(Pattern(y, cs));
    CHECK(viaY == phi_enum(pbf_of_cascade(testutil::square_opening_2x2())));
}

TEST_CASE("Lemma 7: inclusion-exclusion identity") {
    for (int n = 2; n <= 5; ++n) {
        std::vector<int> offs;
        for (int i = 0; i < n; ++i) offs.push_back(i);
        CHECK(check_l7(raw_x(), offs).holds());
    }
    // derived pipeline, non-consecutive offsets
    DerivedPipeline a{dilation_1d(1), "A"};
    CHECK(check_l7(a, {0, 2, 5}).holds());
    DerivedPipeline lu{LU(1), "LU1"};
    CHECK(check_l7(lu, {0, 3}).holds());
}

TEST_CASE("Lemma 8: economic switching identity") {
    for (int n = 1; n <= 6; ++n) CHECK(check_l8(raw_x(), n).holds());
    DerivedPipeline a{dilation_1d(1), "A"};
    for (int n = 1; n <= 4; ++n) CHECK(check_l8(a, n).holds());
    DerivedPipeline b{compose(erosion_1d(1), dilation_1d(1)), "B"};
    CHECK(check_l8(b, 3).holds());
}

TEST_CASE("Lemma 9 on dilation pipelines") {
    // worked instance: n = 5, r = 1
    CHECK(check_l9(raw_x(), 1, 5).holds());
    for (int r = 0; r <= 2; ++r)
        for (int n = 2; n < 2 * r + 4; ++n) CHECK(check_l9(raw_x(), r, n).holds());
    // A itself derived
    DerivedPipeline a{dilation_1d(1), "A"};
    for (int n = 2; n <= 5; ++n) CHECK(check_l9(a, 1, n).holds());
    CHECK_THROWS_AS(check_l9(raw_x(), 1, 6), std::invalid_argument);
}

TEST_CASE("Lemma 10 on erosion pipelines") {
    for (int r = 0; r <= 2; ++r)
        for (int n = 2; n < 2 * r + 4; ++n) CHECK(check_l10(raw_x(), r, n).holds());
    DerivedPipeline a{erosion_1d(1), "A"};
    for (int n = 2; n <= 5; ++n) CHECK(check_l10(a, 2, n).holds());
}

TEST_CASE("pattern validation") {
    CHECK_THROWS_AS(Pattern(raw_x(), {}), std::invalid_argument);
    CHECK_THROWS_AS(Pattern(raw_x(), {{Offset{0, 0}, Rel::Le}, {Offset{0, 0}, Rel::Gt}}),
                    std::invalid_argument);
    DerivedPipeline big{C(3), "C3"};
    std::vector<Constraint> many;
    for (int i = 0; i <= 4; ++i) many.push_back({Offset{i, 0}, Rel::Le});
    CHECK_THROWS_AS(pattern_prob(Pattern(big, many), 20), capacity_error);
}
