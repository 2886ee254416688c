#include "pandemic/actions.hpp"

namespace pandemic {

const char* action_type_name(ActionType t) {
    switch (t) {
        case ActionType::DriveFerry: return "drive";
        case ActionType::DirectFlight: return "direct-flight";
        case ActionType::CharterFlight: return "charter-flight";
        case ActionType::ShuttleFlight: return "shuttle-flight";
        case ActionType::OpsExpertFlight: return "ops-flight";
        case ActionType::BuildStation: return "build";
        case ActionType::TreatDisease: return "treat";
        case ActionType::ShareGive: return "share-give";
        case ActionType::ShareTake: return "share-take";
        case ActionType::CureDisease: return "cure";
        case ActionType::Wait: return "wait";
        case ActionType::Discard: return "discard";
    }
    return "?";
}

Action Action::drive(int to) {
    Action a;
    a.type = ActionType::DriveFerry;
    a.city = static_cast<std::int16_t>(to);
    return a;
}

Action Action::direct_flight(int card) {
    Action a;
    a.type = ActionType::DirectFlight;
    a.city = static_cast<std::int16_t>(card);
    a.card = static_cast<std::int16_t>(card);
    return a;
}

Action Action::charter_flight(int to) {
    Action a;
    a.type = ActionType::CharterFlight;
    a.city = static_cast<std::int16_t>(to);
    return a;
}

Action Action::shuttle_flight(int to) {
    Action a;
    a.type = ActionType::ShuttleFlight;
    a.city = static_cast<std::int16_t>(to);
    return a;
}

Action Action::ops_flight(int card, int to) {
    Action a;
    a.type = ActionType::OpsExpertFlight;
    a.city = static_cast<std::int16_t>(to);
    a.card = static_cast<std::int16_t>(card);
    return a;
}

Action Action::build() {
    Action a;
    a.type = ActionType::BuildStation;
    return a;
}

Action Action::treat(Color c) {
    Action a;
    a.type = ActionType::TreatDisease;
    a.color = static_cast<std::int8_t>(c);
    return a;
}

Action Action::share_give(int card, int other) {
    Action a;
    a.type = ActionType::ShareGive;
    a.card = static_cast<std::int16_t>(card);
    a.other_player = static_cast<std::int8_t>(other);
    return a;
}

Action Action::share_take(int card, int other) {
    Action a;
    a.type = ActionType::ShareTake;
    a.card = static_cast<std::int16_t>(card);
    a.other_player = static_cast<std::int8_t>(other);
    return a;
}

Action Action::cure(Color c, const std::int16_t* cards, int n) {
    Action a;
    a.type = ActionType::CureDisease;
    a.color = static_cast<std::int8_t>(c);
    a.cure_count = static_cast<std::int8_t>(n);
    for (int i = 0; i < n && i < 5; ++i) a.cure_cards[i] = cards[i];
    return a;
}

Action Action::wait() {
    return Action{};
}

Action Action::discard(int card) {
    Action a;
    a.type = ActionType::Discard;
    a.card = static_cast<std::int16_t>(card);
    return a;
}

std::string action_to_string(const Action& a, const CityMap& map) {
    auto city = [&](int c) -> std::string {
        return c >= 0 && c < map.size() ? map.city(c).id : "?";
    };
    std::string s = action_type_name(a.type);
    switch (a.type) {
        case ActionType::DriveFerry:
        case ActionType::CharterFlight:
        case ActionType::ShuttleFlight:
            s += " " + city(a.city);
            break;
        case ActionType::DirectFlight:
            s += " " + city(a.card);
            break;
        case ActionType::OpsExpertFlight:
            s += " " + city(a.city) + " spending " + city(a.card);
            break;
        case ActionType::TreatDisease:
            s += std::string(" ") + color_name(static_cast<Color>(a.color));
            break;
        case ActionType::ShareGive:
        case ActionType::ShareTake:
            s += " " + city(a.card) + " with player " + std::to_string(a.other_player);
            break;
        case ActionType::CureDisease:
            s += std::string(" ") + color_name(static_cast<Color>(a.color)) + " spending";
            for (int i = 0; i < a.cure_count; ++i) s += " " + city(a.cure_cards[i]);
            break;
        case ActionType::Discard:
            s += " " + city(a.card);
            break;
        case ActionType::BuildStation:
        case ActionType::Wait:
            break;
    }
    return s;
}

}  // namespace pandemic
