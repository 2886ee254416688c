#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "pandemic/state.hpp"

namespace pandemic {

enum class ActionType : std::uint8_t {
    DriveFerry,      // move to adjacent city
    DirectFlight,    // discard a card, move to its city
    CharterFlight,   // discard the current city's card, move anywhere
    ShuttleFlight,   // station to station
    OpsExpertFlight, // ops expert at a station: discard any card, move anywhere
    BuildStation,
    TreatDisease,
    ShareGive,
    ShareTake,
    CureDisease,
    Wait,
    Discard,         // forced hand-limit discard; never offered as a turn action
};
inline constexpr int kNumActionTypes = 12;
const char* action_type_name(ActionType t);

struct Action {
    ActionType type = ActionType::Wait;
    std::int16_t city = -1;          // destination / target
    std::int16_t card = -1;          // spent or exchanged city card
    std::int8_t color = -1;          // treat / cure color
    std::int8_t other_player = -1;   // share partner
    std::array<std::int16_t, 5> cure_cards{-1, -1, -1, -1, -1};
    std::int8_t cure_count = 0;

    static Action drive(int to);
    static Action direct_flight(int card);
    static Action charter_flight(int to);
    static Action shuttle_flight(int to);
    static Action ops_flight(int card, int to);
    static Action build();
    static Action treat(Color c);
    static Action share_give(int card, int other);
    static Action share_take(int card, int other);
    static Action cure(Color c, const std::int16_t* cards, int n);
    static Action wait();
    static Action discard(int card);

    bool is_movement() const {
        return type == ActionType::DriveFerry || type == ActionType::DirectFlight ||
               type == ActionType::CharterFlight || type == ActionType::ShuttleFlight ||
               type == ActionType::OpsExpertFlight;
    }
    bool operator==(const Action&) const = default;
};

std::string action_to_string(const Action& a, const CityMap& map);

}  // namespace pandemic
