#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pandemic/state.hpp"

namespace pandemic {

// Base state evaluations, each mapping a state into [0,1].
enum class FitnessBase : std::uint8_t {
    CuredDiseases,   // f_od: cured count / 4
    CureAbility,     // f_oa: blend of team cure ability and cured count
    CubesAverage,    // f_ca: mean remaining cube supply / 24
    CubesMin,        // f_cm: worst color's remaining supply / 24
    CubesProduct,    // f_cp: product of per-color supply fractions
    Outbreaks,       // f_b: 1 - outbreaks / 8
};
const char* fitness_base_name(FitnessBase b);

enum class FitnessWrapper : std::uint8_t {
    Raw,      // the base value regardless of terminal status
    WinLose,  // w(f): 1 when won, 0 when lost, f otherwise
    Penalty,  // p(f): 1 when won, penalty * f when lost, f otherwise
};

struct FitnessSpec {
    std::vector<FitnessBase> bases;  // one or two entries; two are averaged
    FitnessWrapper wrapper = FitnessWrapper::Raw;
    double penalty = 0.1;  // loss multiplier for the Penalty wrapper
    // f_oa's cured-disease term weighs each cured disease at 0.3 before the
    // 1/1.3 normalizer, which pushes the value past 1 once anything is cured.
    // We scale that term by the four diseases so the ceiling is exactly 1;
    // this switch restores the unscaled form for comparison runs.
    bool unscaled_cure_term = false;

    static FitnessSpec parse(const std::string& text);
    std::string to_string() const;
    bool operator==(const FitnessSpec&) const = default;
};

double base_fitness(const GameState& s, FitnessBase b, bool unscaled_cure_term = false);
double evaluate_state(const GameState& s, const FitnessSpec& spec);

}  // namespace pandemic
