#include <doctest.h>

#include "cechctx/analysis.hpp"
#include "cechctx/errors.hpp"
#include "support.hpp"

using namespace cechctx;
using cechctx::testing::corpus_model;
using cechctx::testing::letters;

TEST_CASE("gcd condition") {
    auto tri = gcd_condition(letters({"AB", "BC", "CA"}));
    CHECK(tri.degrees == std::vector<std::size_t>{2, 2, 2});
    CHECK(tri.gcd == 2);
    CHECK(tri.cover_size == 3);
    CHECK_FALSE(tri.holds);

    auto counter = gcd_condition(letters({"ABC", "BDE", "CDE", "ADF", "AEG"}));
    CHECK(counter.degrees == std::vector<std::size_t>{3, 2, 2, 3, 3, 1, 1});
    CHECK(counter.gcd == 1);
    CHECK(counter.cover_size == 5);
    CHECK(counter.holds);

    auto single = gcd_condition(letters({"AB"}));
    CHECK(single.gcd == 1);
    CHECK(single.holds);

    auto pm = gcd_condition(corpus_model("peres-mermin").scenario);
    CHECK(pm.degrees == std::vector<std::size_t>(9, 2));
    CHECK(pm.gcd == 2);
    CHECK(pm.holds);
}

TEST_CASE("KS shape detection") {
    CHECK(is_ks_support(corpus_model("ks18").support));
    CHECK(is_ks_support(corpus_model("triangle").support));
    CHECK_FALSE(is_ks_support(corpus_model("peres-mermin").support));
}

TEST_CASE("connected KS implication") {
    CHECK(ks_vanishing_implies_gcd_check(ks_support(letters({"AB", "BC", "CA"}))));
    CHECK(ks_vanishing_implies_gcd_check(ks_support(letters({"ABC", "BDE", "CDE", "ADF", "AEG"}))));
    CHECK(ks_vanishing_implies_gcd_check(corpus_model("ks18").support));
    CHECK_THROWS_AS(ks_vanishing_implies_gcd_check(corpus_model("peres-mermin").support), DomainError);
    CHECK_THROWS_AS(ks_vanishing_implies_gcd_check(ks_support(letters({"AB", "CD"}))), DomainError);
}

TEST_CASE("false positives") {
    auto h = corpus_model("hardy");
    auto fp = false_positives(h.support, Ring::integers);
    REQUIRE(fp.entries.size() == 1);
    CHECK(fp.entries[0].context == 0);
    CHECK(fp.entries[0].section == h.section_from_tuple(0, "0,0"));
    CHECK_FALSE(fp.strongly_contextual);
    CHECK_FALSE(fp.strong_contextuality_false_positive);

    auto pr = corpus_model("prbox");
    for (auto ring : {Ring::integers, Ring::mod2}) CHECK(false_positives(pr.support, ring).entries.empty());

    auto counter = false_positives(ks_support(letters({"ABC", "BDE", "CDE", "ADF", "AEG"})), Ring::integers);
    CHECK_FALSE(counter.entries.empty());
    CHECK(counter.strongly_contextual);
    CHECK(counter.strong_contextuality_false_positive);
}

TEST_CASE("false positives are exactly vanishing minus extendable") {
    for (auto name : corpus_names()) {
        auto m = corpus_model(name);
        for (auto ring : {Ring::integers, Ring::mod2}) {
            auto results = all_obstructions(m.support, ring);
            auto c = classify(m.support);
            auto fp = false_positives(m.support, c, results, ring);
            std::size_t expected = 0;
            for (std::size_t k = 0; k < results.size(); ++k) {
                REQUIRE(c.witnesses[k].section == results[k].base_section);
                if (results[k].vanishes && !c.witnesses[k].extendable) ++expected;
            }
            CHECK(fp.entries.size() == expected);
        }
    }
}
