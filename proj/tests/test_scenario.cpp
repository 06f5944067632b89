#include <doctest.h>

#include "cechctx/errors.hpp"
#include "cechctx/scenario.hpp"
#include "support.hpp"

using namespace cechctx;
using cechctx::testing::digits;
using cechctx::testing::letters;

TEST_CASE("measurement sets iterate in global order") {
    auto s = MeasurementSet::of({5, 1, 3});
    CHECK(s.members() == std::vector<MeasurementId>{1, 3, 5});
    CHECK(s.rank(5) == 2);
    CHECK(s.size() == 3);
    CHECK(MeasurementSet::first_n(3).bits() == 7);
    CHECK((s & MeasurementSet::of({3, 4})) == MeasurementSet::of({3}));
}

TEST_CASE("restriction of sections") {
    Scenario sc({"a", "b"}, {"0", "1"}, std::vector<std::vector<std::string>>{{"a", "b"}});
    auto ab = MeasurementSet::of({0, 1});
    auto s = digits(ab, "01");
    CHECK(restrict_section(s, MeasurementSet::of({0})) == digits(MeasurementSet::of({0}), "0"));
    CHECK(restrict_section(s, ab) == s);
    CHECK_THROWS_AS(restrict_section(digits(MeasurementSet::of({0}), "0"), ab), DomainError);

    auto abc = MeasurementSet::of({0, 1, 2});
    CHECK(restrict_section(digits(abc, "011"), MeasurementSet::of({0, 1})) == digits(MeasurementSet::of({0, 1}), "01"));
}

TEST_CASE("enumerate_sections order") {
    auto ab = MeasurementSet::of({0, 1});
    auto all = enumerate_sections(2, ab);
    REQUIRE(all.size() == 4);
    CHECK(all[0] == digits(ab, "00"));
    CHECK(all[1] == digits(ab, "01"));
    CHECK(all[2] == digits(ab, "10"));
    CHECK(all[3] == digits(ab, "11"));
    for (std::size_t k = 0; k < all.size(); ++k) CHECK(section_index(all[k], 2) == k);

    auto empty = enumerate_sections(2, MeasurementSet{});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].values.empty());

    auto abc = enumerate_sections(2, MeasurementSet::of({0, 1, 2}));
    CHECK(abc.size() == 8);
    CHECK(abc.front().values == std::vector<Outcome>{0, 0, 0});
    CHECK(abc.back().values == std::vector<Outcome>{1, 1, 1});

    CHECK(enumerate_sections(3, MeasurementSet::of({0, 1})).size() == 9);
}

TEST_CASE("scenario validation") {
    SUBCASE("cover must cover X") {
        try {
            Scenario({"A", "B", "C"}, {"0", "1"}, std::vector<std::vector<std::string>>{{"A", "B"}});
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            REQUIRE(e.problems().size() == 1);
            CHECK(e.problems()[0].find("'C'") != std::string::npos);
        }
    }
    SUBCASE("duplicate contexts") {
        CHECK_THROWS_AS(Scenario({"A", "B"}, {"0", "1"}, std::vector<std::vector<std::string>>{{"A", "B"}, {"B", "A"}}),
                        ValidationError);
    }
    SUBCASE("empty context and unknown measurement") {
        try {
            Scenario({"A"}, {"0", "1"}, std::vector<std::vector<std::string>>{{}, {"A", "Z"}});
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.problems().size() >= 2);
        }
    }
    SUBCASE("outcomes") {
        CHECK_THROWS_AS(Scenario({"A"}, {"0"}, std::vector<std::vector<std::string>>{{"A"}}), ValidationError);
        CHECK_THROWS_AS(Scenario({"A"}, {"0", "0"}, std::vector<std::vector<std::string>>{{"A"}}), ValidationError);
    }
    SUBCASE("subset contexts are allowed with a warning") {
        auto sc = letters({"AB", "A"});
        CHECK(sc.warnings().size() == 1);
    }
    SUBCASE("contexts are stored in global order") {
        Scenario sc({"A", "B"}, {"0", "1"}, std::vector<std::vector<std::string>>{{"B", "A"}});
        CHECK(sc.context(0).members == MeasurementSet::of({0, 1}));
    }
}

TEST_CASE("nerve of the triangle cover") {
    auto sc = letters({"AB", "BC", "CA"});
    auto n = nerve(sc, 2);
    REQUIRE(n.size() == 3);
    CHECK(n[0].size() == 3);
    CHECK(n[1].size() == 6);  // ordered pairs
    CHECK(n[2].empty());      // A∩B∩C... no common measurement
    const auto b = MeasurementSet::of({sc.measurement_id("B")});
    bool found = false;
    for (const auto& s : n[1]) {
        if (s.vertices == std::vector<ContextIndex>{0, 1}) {
            found = true;
            CHECK(s.carrier == b);
        }
    }
    CHECK(found);
    for (std::size_t q = 0; q < n.size(); ++q) {
        for (std::size_t k = 1; k < n[q].size(); ++k) CHECK(n[q][k - 1].vertices < n[q][k].vertices);
    }
}

TEST_CASE("nerve of the PR cover and disjoint contexts") {
    Scenario pr({"a", "a'", "b", "b'"}, {"0", "1"},
                std::vector<std::vector<std::string>>{{"a", "b"}, {"a", "b'"}, {"a'", "b"}, {"a'", "b'"}});
    auto n = nerve(pr, 1);
    bool found = false;
    for (const auto& s : n[1]) {
        if (s.vertices == std::vector<ContextIndex>{0, 1}) {
            found = true;
            CHECK(s.carrier == MeasurementSet::of({pr.measurement_id("a")}));
        }
        CHECK(s.vertices != std::vector<ContextIndex>{0, 3});
    }
    CHECK(found);

    auto disjoint = letters({"AB", "CD"});
    CHECK(nerve(disjoint, 1)[1].empty());
}

TEST_CASE("faces") {
    auto sc = letters({"AB", "BC", "CA"});
    Simplex sigma{{0, 1}, MeasurementSet::of({1})};
    CHECK(face(sc, sigma, 0).vertices == std::vector<ContextIndex>{1});
    CHECK(face(sc, sigma, 1).vertices == std::vector<ContextIndex>{0});
    const auto n = nerve(sc, 2);
    for (const auto& s : n[1]) {
        for (std::size_t j = 0; j <= 1; ++j) CHECK(s.carrier.is_subset_of(face(sc, s, j).carrier));
    }
    CHECK_THROWS_AS(face(sc, Simplex{{0}, sc.context(0).members}, 0), DomainError);
}

TEST_CASE("connectedness") {
    CHECK(is_connected(letters({"AB", "BC", "CA"})));
    CHECK_FALSE(is_connected(letters({"AB", "CD"})));
    CHECK(is_connected(letters({"ABCD", "AEFG", "HICJ", "HKGL", "BEMN", "IKNO", "PQDJ", "PRFL", "QRMO"})));
    CHECK(is_connected(letters({"A"})));
}
