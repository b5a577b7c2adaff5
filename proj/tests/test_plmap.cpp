#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plf/json_io.hpp"
#include "plf/plmap.hpp"
#include "plf/words.hpp"

#include "test_util.hpp"

#include <random>

using namespace plf;
using namespace plt;

TEST_CASE("generator evaluation matches closed forms") {
    const PLMap& a = x0();
    CHECK(evaluate(a, R(0)) == R(0));
    CHECK(evaluate(a, R(1, 8)) == R(1, 4));
    CHECK(evaluate(a, R(1, 4)) == R(1, 2));
    CHECK(evaluate(a, R(3, 8)) == R(5, 8));
    CHECK(evaluate(a, R(1, 2)) == R(3, 4));
    CHECK(evaluate(a, R(3, 4)) == R(7, 8));
    CHECK(evaluate(a, R(1)) == R(1));

    const PLMap& b = x1();
    CHECK(evaluate(b, R(1, 4)) == R(1, 4));
    CHECK(evaluate(b, R(1, 2)) == R(1, 2));
    CHECK(evaluate(b, R(5, 8)) == R(3, 4));
    CHECK(evaluate(b, R(7, 8)) == R(15, 16));
}

TEST_CASE("composition applies the left factor first") {
    CHECK(evaluate(compose(x0(), x0()), R(1, 16)) == R(1, 4));
    CHECK(evaluate(compose(x0(), x1()), R(1, 2)) == R(7, 8));
    // x1 fixes [0,1/2], so the other order stops at x0's value.
    CHECK(evaluate(compose(x1(), x0()), R(1, 2)) == R(3, 4));
}

TEST_CASE("inversion reflects the graph") {
    const PLMap inv = invert(x0());
    const std::vector<Point> want = {
        {R(0), R(0)}, {R(1, 2), R(1, 4)}, {R(3, 4), R(1, 2)}, {R(1), R(1)}};
    CHECK(inv.points() == want);
    CHECK(is_identity(compose(x0(), inv)));
    CHECK(is_identity(compose(inv, x0())));
    CHECK(is_identity(invert(PLMap::identity())));
}

TEST_CASE("power agrees with repeated composition") {
    CHECK(power(x0(), 0) == PLMap::identity());
    CHECK(power(x0(), 1) == x0());
    CHECK(power(x0(), 3) == compose(compose(x0(), x0()), x0()));
    CHECK(power(x0(), -2) == invert(compose(x0(), x0())));
    CHECK(power(x1(), -1) == invert(x1()));
}

TEST_CASE("make_plmap canonicalizes and validates") {
    SUBCASE("collinear interior vertices are dropped") {
        const PLMap f = mk({{R(0), R(0)}, {R(1, 4), R(1, 4)}, {R(1), R(1)}});
        CHECK(f == PLMap::identity());
        CHECK(f.points().size() == 2);
        const PLMap g =
            mk({{R(0), R(0)}, {R(1, 8), R(1, 4)}, {R(1, 4), R(1, 2)}, {R(1, 2), R(3, 4)}, {R(1), R(1)}});
        CHECK(g == x0());
    }
    SUBCASE("canonical form is a fixed point of rebuilding") {
        for (const PLMap& f : {x0(), x1(), xk(3), commutator(x0(), x1())})
            CHECK(make_plmap(f.points()) == f);
    }
    SUBCASE("bad vertex lists are rejected") {
        CHECK_THROWS_AS(make_plmap({{R(1, 4), R(1, 4)}, {R(1), R(1)}}), DomainError);
        CHECK_THROWS_AS(make_plmap({{R(0), R(0)}, {R(1, 2), R(2)}}), DomainError);
        CHECK_THROWS_AS(make_plmap({{R(0), R(0)}, {R(1, 2), R(3, 4)}, {R(3, 4), R(1, 2)}, {R(1), R(1)}}),
                        DomainError);
        CHECK_THROWS_AS(make_plmap({{R(0), R(0)}, {R(1, 2), R(1, 4)}, {R(1, 2), R(3, 4)}, {R(1), R(1)}}),
                        DomainError);
        CHECK_THROWS_AS(make_plmap({}), DomainError);
        CHECK_THROWS_AS(make_plmap({{R(0), R(0)}, {R(-1, 4), R(1, 4)}, {R(1), R(1)}}), DomainError);
    }
}

TEST_CASE("evaluate_inverse inverts evaluate") {
    CHECK(evaluate_inverse(x0(), R(1, 2)) == R(1, 4));
    CHECK(evaluate_inverse(x0(), R(7, 8)) == R(3, 4));
    const PLMap f = eval_word(parse_word("x0 x1^-1 x0"));
    for (long k = 0; k <= 16; ++k) {
        const Rational x(k, 16);
        CHECK(evaluate_inverse(f, evaluate(f, x)) == x);
        CHECK(evaluate(f, evaluate_inverse(f, x)) == x);
    }
}

TEST_CASE("agreement_bound walks away from the anchor") {
    CHECK(agreement_bound(x0(), x1(), R(1), Anchor::FromRight) == R(3, 4));
    CHECK(agreement_bound(x0(), x0(), R(1), Anchor::FromRight) == R(0));
    CHECK(agreement_bound(x1(), PLMap::identity(), R(0), Anchor::FromLeft) == R(1, 2));
    CHECK_FALSE(agreement_bound(x0(), PLMap::identity(), R(1), Anchor::FromRight).has_value());
    CHECK_FALSE(agreement_bound(x0(), x1(), R(1, 2), Anchor::FromLeft).has_value());
}

TEST_CASE("coincidence_points separates crossings from agreements") {
    SUBCASE("generators agree only beyond 3/4") {
        const auto rep = coincidence_points(x0(), x1(), {R(0), R(1)});
        CHECK(rep.isolated.empty());
        REQUIRE(rep.agreements.size() == 1);
        CHECK(rep.agreements[0] == Interval{R(3, 4), R(1)});
        CHECK(rep.min_point() == R(3, 4));
        CHECK_FALSE(rep.max_point().has_value());
    }
    SUBCASE("transversal crossing is isolated") {
        // f1 crosses x0 at 1/4, touches along [5/16,11/32], then locks on at 3/8.
        const PLMap f1 = mk({{R(0), R(0)}, {R(5, 32), R(5, 32)}, {R(21, 128), R(43, 256)},
                             {R(11, 64), R(11, 64)}, {R(3, 16), R(3, 16)}, {R(1, 4), R(1, 2)},
                             {R(9, 32), R(35, 64)}, {R(5, 16), R(9, 16)}, {R(11, 32), R(19, 32)},
                             {R(23, 64), R(77, 128)}, {R(3, 8), R(5, 8)}, {R(1, 2), R(3, 4)},
                             {R(1), R(1)}});
        const auto rep = coincidence_points(x0(), f1, {R(3, 16), R(1)});
        REQUIRE(rep.isolated.size() == 1);
        CHECK(rep.isolated[0] == R(1, 4));
        REQUIRE(rep.agreements.size() == 2);
        CHECK(rep.agreements[0] == Interval{R(5, 16), R(11, 32)});
        CHECK(rep.agreements[1] == Interval{R(3, 8), R(1)});
        CHECK(rep.min_point() == R(1, 4));
        CHECK_FALSE(rep.max_point().has_value());
    }
    SUBCASE("empty coincidence set") {
        const auto rep = coincidence_points(x0(), PLMap::identity(), {R(0), R(1)});
        CHECK(rep.isolated.empty());
        CHECK(rep.agreements.empty());
        CHECK_FALSE(rep.min_point().has_value());
        CHECK_FALSE(rep.max_point().has_value());
    }
}

TEST_CASE("restrict_to and is_identity_on") {
    CHECK(restrict_to(x1(), {R(1, 2), R(1)}) == x1());
    CHECK(restrict_to(x1(), {R(0), R(1, 2)}) == PLMap::identity());
    CHECK_THROWS_AS(restrict_to(x0(), {R(1, 4), R(1, 2)}), DomainError);
    CHECK(is_identity_on(x1(), {R(0), R(1, 2)}));
    CHECK(is_identity_on(x1(), {R(1, 8), R(3, 8)}));
    CHECK_FALSE(is_identity_on(x1(), {R(0), R(3, 4)}));
    CHECK_FALSE(is_identity_on(x0(), {R(0), R(1, 8)}));
}

TEST_CASE("slopes and first moved point") {
    CHECK(initial_slope(x0()) == R(2));
    CHECK(final_slope(x0()) == R(1, 2));
    CHECK(boundary_slopes(x1()) == std::pair{R(1), R(1, 2)});
    CHECK(slope_left_at(x0(), R(1, 4)) == R(2));
    CHECK(slope_right_at(x0(), R(1, 4)) == R(1));
    CHECK(slope_right_at(x1(), R(1, 2)) == R(2));
    CHECK(slope_left_at(x1(), R(1, 2)) == R(1));
    CHECK(slope_left_at(x0(), R(1)) == R(1, 2));
    CHECK(slope_right_at(x0(), R(0)) == R(2));
    // Least breakpoint the map moves.
    CHECK(first_moved_point(x1()) == R(5, 8));
    CHECK(first_moved_point(x0()) == R(1, 4));
    CHECK_FALSE(first_moved_point(PLMap::identity()).has_value());
}

TEST_CASE("mirror is an involutive automorphism") {
    CHECK(mirrored(x0()) == invert(x0()));
    for (const PLMap& f : {x0(), x1(), xk(2), eval_word(parse_word("x0^2 x1^-1"))}) {
        CHECK(mirrored(mirrored(f)) == f);
        CHECK(mirrored(invert(f)) == invert(mirrored(f)));
        for (const PLMap& g : {x0(), x1()})
            CHECK(mirrored(compose(f, g)) == compose(mirrored(f), mirrored(g)));
    }
    CHECK(mirrored(Interval{R(1, 4), R(1, 2)}) == Interval{R(1, 2), R(3, 4)});
    CHECK(mirrored(up(R(0), R(1, 2))) == down(R(1, 2), R(1)));
}

TEST_CASE("builder assembles maps from contiguous pieces") {
    SUBCASE("identity prefix then a borrowed graph") {
        PLMapBuilder b;
        b.append_identity(R(1, 4));
        b.append_map(x1(), {R(1, 4), R(1)});
        CHECK(b.finish() == x1());
    }
    SUBCASE("explicit points") {
        PLMapBuilder b;
        b.append_point({R(0), R(0)});
        b.append_points({{R(1, 4), R(1, 2)}, {R(1, 2), R(3, 4)}, {R(1), R(1)}});
        CHECK(b.finish() == x0());
    }
    SUBCASE("continuity violations throw") {
        PLMapBuilder b;
        b.append_identity(R(1, 2));
        // x0(1/2) = 3/4, so the next piece would jump.
        CHECK_THROWS_AS(b.append_map(x0(), {R(1, 2), R(1)}), DomainError);
        PLMapBuilder c;
        c.append_point({R(0), R(0)});
        c.append_point({R(1, 2), R(3, 4)});
        CHECK_THROWS_AS(c.append_identity(R(3, 4)), DomainError);
        PLMapBuilder d;
        d.append_point({R(0), R(0)});
        d.append_point({R(1, 2), R(3, 4)});
        CHECK_THROWS_AS(d.finish(), DomainError);
    }
}

TEST_CASE("algebraic laws hold exactly on random words") {
    std::mt19937_64 rng(7);
    auto rand_word = [&rng]() {
        std::uniform_int_distribution<int> idx(0, 3), exp(-2, 2), len(1, 6);
        GenWord w;
        for (int i = len(rng); i > 0; --i) {
            int e = exp(rng);
            if (e == 0) e = 1;
            w.letters.push_back({idx(rng), e});
        }
        return make_word(w.letters);
    };
    for (int trial = 0; trial < 20; ++trial) {
        const PLMap f = eval_word(rand_word());
        const PLMap g = eval_word(rand_word());
        const PLMap h = eval_word(rand_word());
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
        CHECK(invert(compose(f, g)) == compose(invert(g), invert(f)));
        for (long k = 0; k <= 32; ++k) {
            const Rational x(k, 32);
            CHECK(evaluate(compose(f, g), x) == evaluate(g, evaluate(f, x)));
        }
        Rational prev = evaluate(f, R(0));
        for (long k = 1; k <= 32; ++k) {
            const Rational cur = evaluate(f, Rational(k, 32));
            CHECK(prev < cur);
            prev = cur;
        }
    }
}

TEST_CASE("json map serialization round trips") {
    for (const PLMap& f : {PLMap::identity(), x0(), x1(), xk(3)}) {
        const Json j = map_to_json(f);
        CHECK(map_from_json(j) == f);
        CHECK(map_from_json(parse_json_text(dump_json(j))) == f);
    }
    const auto j = parse_json_text(R"({"breakpoints": [
        {"x": "0/1", "y": "0/1"}, {"x": "1/4", "y": "1/2"},
        {"x": "1/2", "y": "3/4"}, {"x": "1/1", "y": "1/1"}]})");
    CHECK(map_from_json(j) == x0());
}

TEST_CASE("json map parsing is strict unless normalization is requested") {
    const auto reducible = parse_json_text(R"({"breakpoints": [
        {"x": "0/1", "y": "0/1"}, {"x": "2/4", "y": "3/4"}, {"x": "1/1", "y": "1/1"}]})");
    CHECK_THROWS_AS(map_from_json(reducible), ParseError);
    CHECK(map_from_json(reducible, true) == mk({{R(0), R(0)}, {R(1, 2), R(3, 4)}, {R(1), R(1)}}));
    // Bare integers are readable rationals but not the canonical map form.
    const auto bare = parse_json_text(R"({"breakpoints": [
        {"x": "0", "y": "0"}, {"x": "1/2", "y": "3/4"}, {"x": "1", "y": "1"}]})");
    CHECK_THROWS_AS(map_from_json(bare), ParseError);
    CHECK(map_from_json(bare, true) == mk({{R(0), R(0)}, {R(1, 2), R(3, 4)}, {R(1), R(1)}}));

    const auto collinear = parse_json_text(R"({"breakpoints": [
        {"x": "0/1", "y": "0/1"}, {"x": "1/2", "y": "1/2"}, {"x": "1/1", "y": "1/1"}]})");
    CHECK_THROWS_AS(map_from_json(collinear), ParseError);
    CHECK(map_from_json(collinear, true) == PLMap::identity());

    CHECK_THROWS_AS(map_from_json(parse_json_text(R"({"points": []})")), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json_text(R"({"breakpoints": [{"x": "0"}]})")), ParseError);
    CHECK_THROWS_AS(parse_json_text("{not json"), ParseError);
}

TEST_CASE("rational strings parse and print in lowest terms") {
    CHECK(parse_rational("3/4") == R(3, 4));
    CHECK(parse_rational("-7") == R(-7));
    CHECK(parse_rational("6/8") == R(3, 4));
    CHECK(rat_str(R(1, 2)) == "1/2");
    CHECK(rat_str(R(5)) == "5/1");
    CHECK(rat_str(parse_rational("0")) == "0/1");
    CHECK(rat_str(R(-3, 6)) == "-1/2");
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
}
