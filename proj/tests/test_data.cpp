// Sanity checks on the shipped reference data: the C_5 transfer polynomial
// (window 61, far beyond the enumeration cap) and the C_n robustness table.

#include "doctest.h"

#include <fstream>

#include "json.hpp"
#include "lulu/analysis.hpp"

using namespace lulu;
using json = nlohmann::json;

#ifndef LULU_DATA_DIR
#define LULU_DATA_DIR "data"
#endif

namespace {

json load(const char* name) {
    std::ifstream in(std::string(LULU_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

} // namespace

TEST_CASE("shipped C_5 polynomial is a consistent transfer polynomial") {
    json j = load("phi_C5.json");
    REQUIRE(j["basis"] == "p");
    std::vector<Rat> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.emplace_back(Int::from_string(c.get<std::string>()));
    Poly phi{std::move(coeffs)};

    CHECK(phi.degree() == 53);
    CHECK(phi(Rat(0)) == Rat(0));
    CHECK(phi(Rat(1)) == Rat(1));

    // nondecreasing on the percent grid, in exact rationals
    Rat prev(0);
    for (int i = 1; i <= 100; ++i) {
        Rat v = phi(Rat(i, 100));
        CHECK(v >= prev);
        prev = v;
    }

    // orders agree with the n = 5 column of the robustness table
    json table = load("robustness_c.json");
    RobustnessOrders ro = robustness_orders(phi);
    CHECK(ro.lower == table["lower"]["5"].get<int>());
    CHECK(ro.upper == table["upper"]["5"].get<int>());
}

TEST_CASE("robustness table entries up to n = 2 recomputed") {
    json table = load("robustness_c.json");
    for (int n = 1; n <= 2; ++n) {
        RobustnessOrders ro = robustness_orders(phi_c_recursive(n));
        CHECK(ro.lower == table["lower"][std::to_string(n)].get<int>());
        CHECK(ro.upper == table["upper"][std::to_string(n)].get<int>());
    }
}
