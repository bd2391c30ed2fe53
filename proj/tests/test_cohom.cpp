#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "kfour/cohom.hpp"
#include "kfour/decomp.hpp"

using namespace kfour;
using namespace kfour::test;

namespace {
const Field F2 = Field::gf(1);
const ChiSet ALL = ChiSet::maximal();
KGModule built(const char* s) { return build_indecomposable(IndecLabel::parse(s, F2), F2); }
} // namespace

TEST_CASE("rel_cohom_dim examples") {
    SyzygyStore store(F2, ALL);
    REQUIRE(rel_cohom_dim(built("k"), ALL, 2, &store) == 1);
    REQUIRE(rel_cohom_dim(built("P"), ALL, 5, &store) == 0);
    REQUIRE(rel_cohom_dim(built("P"), ALL, 0, &store) == 1);
    REQUIRE(rel_cohom_dim(built("V-7"), ALL, 1, &store) == 2);
    REQUIRE_THROWS_AS(rel_cohom_dim(built("k"), ChiSet::empty(), 1), std::invalid_argument);
}

TEST_CASE("closed forms") {
    // V_1 = k at i = 0..4: 1, 0, 1, 3, 5
    std::vector<size_t> expect{1, 0, 1, 3, 5};
    for (size_t i = 0; i < expect.size(); ++i)
        REQUIRE(closed_form_dim(IndecLabel::trivial(), i) == expect[i]);
    // V_{4,x^2}: n = 2, n-1 in positive degree
    REQUIRE(closed_form_dim(IndecLabel::parse("V4,theta:x^2", F2), 1) == 1);
    REQUIRE(closed_form_dim(IndecLabel::parse("V4,theta:x^2", F2), 0) == 2);
    // generic theta: constant n
    for (size_t i = 0; i <= 4; ++i)
        REQUIRE(closed_form_dim(IndecLabel::parse("V4,theta:x^2+x+1^1", F2), i) == 2);
    // V_{-5}: piecewise
    REQUIRE(closed_form_dim(IndecLabel::vminus(2), 0) == 3);
    REQUIRE(closed_form_dim(IndecLabel::vminus(2), 1) == 1);
    REQUIRE(closed_form_dim(IndecLabel::vminus(2), 3) == 1);
    // the relative projectives vanish in positive degree
    for (const char* s : {"P", "Qs", "Qt", "Qst"}) {
        REQUIRE(closed_form_dim(IndecLabel::parse(s, F2), 0) == 1);
        REQUIRE(closed_form_dim(IndecLabel::parse(s, F2), 3) == 0);
    }
}

TEST_CASE("verify_tables small run is all-match") {
    CohomTable table = verify_tables(3, 3, ALL, F2);
    CAPTURE(table.mismatches);
    REQUIRE(table.all_match());
    REQUIRE(table.rows.size() > 0);
    REQUIRE_THROWS_AS(verify_tables(2, 2, ChiSet::trivial_only(), F2), std::invalid_argument);
}

TEST_CASE("resolution and closed forms agree across the catalogue, dim <= 13, i <= 6") {
    CohomTable table = verify_tables(6, 6, ALL, F2);
    CAPTURE(table.mismatches);
    REQUIRE(table.all_match());
    CohomTable table4 = verify_tables(4, 6, ALL, Field::gf(2));
    CAPTURE(table4.mismatches);
    REQUIRE(table4.all_match());
}

TEST_CASE("cohomology is additive over direct sums") {
    std::mt19937 rng(2024);
    SyzygyStore store(F2, ALL);
    std::vector<IndecLabel> labels{IndecLabel::trivial(), IndecLabel::vplus(1), IndecLabel::vminus(2),
                                   IndecLabel::veven_inf(2), IndecLabel::proj()};
    for (int trial = 0; trial < 10; ++trial) {
        const IndecLabel& a = labels[rng() % labels.size()];
        const IndecLabel& b = labels[rng() % labels.size()];
        KGModule sum = random_conjugate(
            direct_sum(build_indecomposable(a, F2), build_indecomposable(b, F2)), rng);
        for (size_t i = 0; i <= 3; ++i)
            REQUIRE(rel_cohom_dim(sum, ALL, i, &store) ==
                    rel_cohom_dim(build_indecomposable(a, F2), ALL, i, &store) +
                        rel_cohom_dim(build_indecomposable(b, F2), ALL, i, &store));
    }
}

TEST_CASE("H^i of relative projectives vanishes in positive degree") {
    SyzygyStore store(F2, ALL);
    for (const char* s : {"P", "Qs", "Qt", "Qst"})
        for (size_t i = 1; i <= 4; ++i) REQUIRE(rel_cohom_dim(built(s), ALL, i, &store) == 0);
}

TEST_CASE("even non-projective modules have constant positive-degree cohomology") {
    SyzygyStore store(F2, ALL);
    for (const char* s : {"V4,inf", "V6,inf", "V4,theta:x^2", "V4,theta:x^2+x+1^1"}) {
        KGModule m = built(s);
        size_t first = rel_cohom_dim(m, ALL, 1, &store);
        for (size_t i = 2; i <= 4; ++i) REQUIRE(rel_cohom_dim(m, ALL, i, &store) == first);
    }
}

TEST_CASE("syzygy store caches the expected modules") {
    SyzygyStore store(F2, ALL);
    REQUIRE(store.syzygy(0).dim() == 1);
    REQUIRE(identify(store.syzygy(1)) == IndecLabel::vminus(2));
    REQUIRE(identify(store.syzygy(3)) == IndecLabel::vminus(6));
    REQUIRE(store.cover(0).total.dim() == 6);
}
