#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "pandemic/fitness.hpp"
#include "pandemic/macro.hpp"

using namespace pandemic;
using namespace test_helpers;

namespace {

GameState bare_state() {
    GameState s = toy_state();
    s.map = standard_map();
    s.cities.assign(s.map->size(), CityState{});
    s.cities[0].has_station = true;
    return s;
}

}  // namespace

TEST_CASE("base fitness values on hand-built states") {
    GameState s = bare_state();

    SUBCASE("cured-disease count scales in quarters") {
        CHECK(base_fitness(s, FitnessBase::CuredDiseases) == 0.0);
        s.cured[0] = s.cured[2] = true;
        CHECK(base_fitness(s, FitnessBase::CuredDiseases) == 0.5);
        s.cured = {true, true, true, true};
        CHECK(base_fitness(s, FitnessBase::CuredDiseases) == 1.0);
    }
    SUBCASE("cube supplies: clean board maxes all three variants") {
        CHECK(base_fitness(s, FitnessBase::CubesAverage) == 1.0);
        CHECK(base_fitness(s, FitnessBase::CubesMin) == 1.0);
        CHECK(base_fitness(s, FitnessBase::CubesProduct) == 1.0);
    }
    SUBCASE("cube supplies: uneven drain separates them") {
        s.cube_supply = {24, 24, 24, 12};
        CHECK(base_fitness(s, FitnessBase::CubesMin) == doctest::Approx(0.5));
        CHECK(base_fitness(s, FitnessBase::CubesAverage) == doctest::Approx(84.0 / 96.0));
        CHECK(base_fitness(s, FitnessBase::CubesProduct) == doctest::Approx(0.5));
        s.cube_supply = {12, 24, 24, 12};
        CHECK(base_fitness(s, FitnessBase::CubesProduct) == doctest::Approx(0.25));
        CHECK(base_fitness(s, FitnessBase::CubesMin) == doctest::Approx(0.5));
    }
    SUBCASE("outbreak counter drains from one toward zero") {
        CHECK(base_fitness(s, FitnessBase::Outbreaks) == 1.0);
        s.outbreak_counter = 2;
        CHECK(base_fitness(s, FitnessBase::Outbreaks) == 0.75);
        s.outbreak_counter = 8;
        CHECK(base_fitness(s, FitnessBase::Outbreaks) == 0.0);
    }
    SUBCASE("cure-ability blend: empty hands score zero, full cures score one") {
        CHECK(base_fitness(s, FitnessBase::CureAbility) == 0.0);
        s.cured = {true, true, true, true};
        CHECK(base_fitness(s, FitnessBase::CureAbility) == doctest::Approx(1.0));
    }
    SUBCASE("cure-ability blend: a half-ready scientist") {
        int tokyo = s.map->index_of("tokyo"), osaka = s.map->index_of("osaka");
        s.players[1].hand = {static_cast<std::int16_t>(tokyo), static_cast<std::int16_t>(osaka)};
        // only red ability is nonzero: 0.25 * 0.5 / 1.3
        CHECK(base_fitness(s, FitnessBase::CureAbility) == doctest::Approx(0.125 / 1.3));
    }
    SUBCASE("the unscaled cured term overshoots one by design") {
        s.cured = {true, true, true, true};
        double overshoot = base_fitness(s, FitnessBase::CureAbility, true);
        CHECK(overshoot == doctest::Approx(2.2 / 1.3));
        CHECK(overshoot > 1.0);
    }
}

TEST_CASE("wrappers gate terminal states") {
    GameState s = bare_state();
    s.cube_supply = {24, 24, 24, 12};  // f_cm = 0.5
    FitnessSpec raw = FitnessSpec::parse("f_cm");
    FitnessSpec win_lose = FitnessSpec::parse("w(f_cm)");
    FitnessSpec penalty = FitnessSpec::parse("p(f_cm)");

    SUBCASE("ongoing states pass the base through") {
        CHECK(evaluate_state(s, raw) == doctest::Approx(0.5));
        CHECK(evaluate_state(s, win_lose) == doctest::Approx(0.5));
        CHECK(evaluate_state(s, penalty) == doctest::Approx(0.5));
    }
    SUBCASE("wins pin the wrapped score to one") {
        s.status = Status::Won;
        CHECK(evaluate_state(s, win_lose) == 1.0);
        CHECK(evaluate_state(s, penalty) == 1.0);
        CHECK(evaluate_state(s, raw) == doctest::Approx(0.5));  // raw ignores status
    }
    SUBCASE("losses zero or shrink the wrapped score") {
        s.status = Status::Lost;
        s.loss_cause = LossCause::Cubes;
        CHECK(evaluate_state(s, win_lose) == 0.0);
        CHECK(evaluate_state(s, penalty) == doctest::Approx(0.05));  // 0.1 * 0.5
        CHECK(evaluate_state(s, raw) == doctest::Approx(0.5));
    }
    SUBCASE("a custom penalty constant scales the loss branch") {
        s.status = Status::Lost;
        s.loss_cause = LossCause::Outbreaks;
        FitnessSpec harsh = penalty;
        harsh.penalty = 0.01;
        CHECK(evaluate_state(s, harsh) == doctest::Approx(0.005));
    }
}

TEST_CASE("paired bases average") {
    GameState s = bare_state();
    s.cube_supply = {24, 24, 24, 12};
    s.cured[0] = s.cured[1] = true;
    FitnessSpec pair = FitnessSpec::parse("mean(f_od,f_cm)");
    CHECK(evaluate_state(s, pair) == doctest::Approx((0.5 + 0.5) / 2));
    s.cured[2] = s.cured[3] = true;
    CHECK(evaluate_state(s, pair) == doctest::Approx((1.0 + 0.5) / 2));
}

TEST_CASE("fitness spec parsing round-trips and rejects junk") {
    SUBCASE("accepted spellings") {
        FitnessSpec spec = FitnessSpec::parse("p(mean(f_oa,f_cm))");
        CHECK(spec.wrapper == FitnessWrapper::Penalty);
        REQUIRE(spec.bases.size() == 2);
        CHECK(spec.bases[0] == FitnessBase::CureAbility);
        CHECK(spec.bases[1] == FitnessBase::CubesMin);
        CHECK(spec.to_string() == "p(mean(f_oa,f_cm))");

        CHECK(FitnessSpec::parse("W( F_OD )").wrapper == FitnessWrapper::WinLose);
        CHECK(FitnessSpec::parse(" f_b ").bases[0] == FitnessBase::Outbreaks);
        CHECK(FitnessSpec::parse("p( mean( f_oa , f_cm ) )").to_string() ==
              "p(mean(f_oa,f_cm))");
        for (const char* name : {"f_od", "f_oa", "f_ca", "f_cm", "f_cp", "f_b"})
            CHECK(FitnessSpec::parse(name).to_string() == name);
    }
    SUBCASE("rejected spellings") {
        for (const char* bad : {"", "f_xx", "mean(f_oa)", "mean(f_oa,f_cm,f_b)", "q(f_oa)",
                                "p()", "mean(,)", "p(mean(f_oa,f_zz))"})
            CHECK_THROWS_AS(FitnessSpec::parse(bad), std::invalid_argument);
    }
}

TEST_CASE("fitness algebra holds across random play") {
    int checked = 0;
    for (int i = 0; i < 25; ++i) {
        GameState s = random_midgame(3100 + i, 10 + 9 * (i % 7));
        for (FitnessBase b : {FitnessBase::CuredDiseases, FitnessBase::CureAbility,
                              FitnessBase::CubesAverage, FitnessBase::CubesMin,
                              FitnessBase::CubesProduct, FitnessBase::Outbreaks}) {
            double v = base_fitness(s, b);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        double cp = base_fitness(s, FitnessBase::CubesProduct);
        double cm = base_fitness(s, FitnessBase::CubesMin);
        double ca = base_fitness(s, FitnessBase::CubesAverage);
        CHECK(cp <= cm + 1e-12);
        CHECK(cm <= ca + 1e-12);
        checked += 1;
    }
    CHECK(checked == 25);
}
