#include "pandemic/serialize.hpp"

#include <set>
#include <stdexcept>

namespace pandemic {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& why) {
    throw std::invalid_argument("snapshot: " + why);
}

std::string card_text(const CityMap& map, const PlayerCard& c) {
    return c.kind == PlayerCard::Epidemic ? "epidemic" : map.city(c.city).id;
}

PlayerCard card_from_text(const CityMap& map, const std::string& text) {
    if (text == "epidemic") return PlayerCard::epidemic();
    int city = map.index_of(text);
    if (city < 0) bad("unknown card '" + text + "'");
    return PlayerCard::city_card(city);
}

int city_from_text(const CityMap& map, const std::string& text) {
    int city = map.index_of(text);
    if (city < 0) bad("unknown city '" + text + "'");
    return city;
}

Role role_from_text(const std::string& text) {
    Role r;
    if (!parse_role(text, r)) bad("unknown role '" + text + "'");
    return r;
}

Phase phase_from_text(const std::string& text) {
    for (Phase p : {Phase::Actions, Phase::Draw, Phase::Infect})
        if (text == phase_name(p)) return p;
    bad("unknown phase '" + text + "'");
}

Status status_from_text(const std::string& text) {
    if (text == "ongoing") return Status::Ongoing;
    if (text == "won") return Status::Won;
    if (text == "lost") return Status::Lost;
    bad("unknown status '" + text + "'");
}

LossCause loss_from_text(const std::string& text) {
    for (LossCause c : {LossCause::Outbreaks, LossCause::Cubes, LossCause::PlayerDeck})
        if (text == loss_cause_name(c)) return c;
    bad("unknown loss cause '" + text + "'");
}

void expect_keys(const ordered_json& j, const std::set<std::string>& keys,
                 const std::string& where) {
    if (!j.is_object()) bad(where + " is not an object");
    for (const auto& item : j.items())
        if (!keys.count(item.key())) bad(where + ": unknown key '" + item.key() + "'");
    for (const std::string& k : keys)
        if (!j.contains(k)) bad(where + ": missing key '" + k + "'");
}

}  // namespace

ordered_json state_to_json(const GameState& s) {
    const CityMap& map = *s.map;
    ordered_json j;
    j["version"] = kSnapshotVersion;
    j["map"] = map.checksum();

    ordered_json cfg;
    cfg["player_count"] = s.config.player_count;
    cfg["epidemic_count"] = s.config.epidemic_count;
    ordered_json roles = ordered_json::array();
    for (Role r : s.config.roles) roles.push_back(role_name(r));
    cfg["roles"] = roles;
    cfg["rng_seed"] = s.config.rng_seed;
    j["config"] = cfg;

    ordered_json cities = ordered_json::array();
    for (int c = 0; c < map.size(); ++c) {
        const CityState& cs = s.cities[c];
        if (cs.total_cubes() == 0 && !cs.has_station) continue;  // defaults stay implicit
        ordered_json e;
        e["id"] = map.city(c).id;
        e["cubes"] = cs.cubes;
        e["station"] = cs.has_station;
        cities.push_back(e);
    }
    j["cities"] = cities;

    ordered_json players = ordered_json::array();
    for (const PlayerState& p : s.players) {
        ordered_json e;
        e["role"] = role_name(p.role);
        e["location"] = map.city(p.location).id;
        ordered_json hand = ordered_json::array();
        for (std::int16_t c : p.hand) hand.push_back(map.city(c).id);
        e["hand"] = hand;
        players.push_back(e);
    }
    j["players"] = players;

    j["current_player"] = s.current_player;
    j["actions_remaining"] = s.actions_remaining;
    j["cured"] = s.cured;
    j["cube_supply"] = s.cube_supply;
    j["outbreak_counter"] = s.outbreak_counter;
    j["epidemics_drawn"] = s.epidemics_drawn;

    ordered_json pdeck;
    ordered_json pstacks = ordered_json::array();
    for (const PlayerSubStack& st : s.player_deck.stacks) {
        ordered_json cards = ordered_json::array();
        for (const PlayerCard& c : st.cards) cards.push_back(card_text(map, c));
        pstacks.push_back(cards);
    }
    pdeck["stacks"] = pstacks;
    ordered_json pdiscard = ordered_json::array();
    for (const PlayerCard& c : s.player_deck.discard) pdiscard.push_back(card_text(map, c));
    pdeck["discard"] = pdiscard;
    j["player_deck"] = pdeck;

    ordered_json ideck;
    ordered_json istacks = ordered_json::array();
    for (const InfectionSubStack& st : s.infection_deck.stacks) {
        ordered_json cards = ordered_json::array();
        for (std::int16_t c : st.cards) cards.push_back(map.city(c).id);
        istacks.push_back(cards);
    }
    ideck["stacks"] = istacks;
    ordered_json idiscard = ordered_json::array();
    for (std::int16_t c : s.infection_deck.discard) idiscard.push_back(map.city(c).id);
    ideck["discard"] = idiscard;
    j["infection_deck"] = ideck;

    j["stations_placed"] = s.stations_placed;
    j["ops_flight_used"] = s.ops_flight_used;
    j["phase"] = phase_name(s.phase);
    j["status"] = s.status == Status::Ongoing ? "ongoing"
                  : s.status == Status::Won   ? "won"
                                              : "lost";
    j["loss_cause"] = s.loss_cause ? ordered_json(loss_cause_name(*s.loss_cause))
                                   : ordered_json(nullptr);
    j["turn"] = s.turn;
    return j;
}

GameState state_from_json(const ordered_json& j, MapPtr map) {
    expect_keys(j, {"version", "map", "config", "cities", "players", "current_player",
                    "actions_remaining", "cured", "cube_supply", "outbreak_counter",
                    "epidemics_drawn", "player_deck", "infection_deck", "stations_placed",
                    "ops_flight_used", "phase", "status", "loss_cause", "turn"},
                "snapshot");
    if (!j["version"].is_number_integer() || j["version"].get<int>() != kSnapshotVersion)
        bad("unsupported version");
    if (j["map"].get<std::string>() != map->checksum())
        bad("map checksum mismatch: snapshot was taken on a different board");

    GameState s;
    s.map = map;

    const ordered_json& cfg = j["config"];
    expect_keys(cfg, {"player_count", "epidemic_count", "roles", "rng_seed"}, "config");
    s.config.player_count = cfg["player_count"].get<int>();
    s.config.epidemic_count = cfg["epidemic_count"].get<int>();
    for (const auto& r : cfg["roles"]) s.config.roles.push_back(role_from_text(r.get<std::string>()));
    s.config.rng_seed = cfg["rng_seed"].get<std::uint64_t>();

    s.cities.assign(map->size(), CityState{});
    for (const auto& e : j["cities"]) {
        expect_keys(e, {"id", "cubes", "station"}, "city entry");
        int c = city_from_text(*map, e["id"].get<std::string>());
        CityState& cs = s.cities[c];
        const auto& cubes = e["cubes"];
        if (!cubes.is_array() || cubes.size() != kNumColors) bad("city cube list malformed");
        for (int t = 0; t < kNumColors; ++t) cs.cubes[t] = cubes[t].get<std::uint8_t>();
        cs.has_station = e["station"].get<bool>();
    }

    for (const auto& e : j["players"]) {
        expect_keys(e, {"role", "location", "hand"}, "player entry");
        PlayerState p;
        p.role = role_from_text(e["role"].get<std::string>());
        p.location = static_cast<std::int16_t>(city_from_text(*map, e["location"].get<std::string>()));
        for (const auto& c : e["hand"])
            p.hand.push_back(static_cast<std::int16_t>(city_from_text(*map, c.get<std::string>())));
        s.players.push_back(std::move(p));
    }
    if (s.players.empty()) bad("no players");

    s.current_player = j["current_player"].get<int>();
    if (s.current_player < 0 || s.current_player >= static_cast<int>(s.players.size()))
        bad("current_player out of range");
    s.actions_remaining = j["actions_remaining"].get<int>();
    const auto& cured = j["cured"];
    const auto& supply = j["cube_supply"];
    if (!cured.is_array() || cured.size() != kNumColors) bad("cured list malformed");
    if (!supply.is_array() || supply.size() != kNumColors) bad("cube supply malformed");
    for (int t = 0; t < kNumColors; ++t) {
        s.cured[t] = cured[t].get<bool>();
        s.cube_supply[t] = supply[t].get<std::uint8_t>();
    }
    s.outbreak_counter = j["outbreak_counter"].get<int>();
    s.epidemics_drawn = j["epidemics_drawn"].get<int>();

    const ordered_json& pdeck = j["player_deck"];
    expect_keys(pdeck, {"stacks", "discard"}, "player deck");
    for (const auto& st : pdeck["stacks"]) {
        PlayerSubStack sub;
        for (const auto& c : st) {
            sub.cards.push_back(card_from_text(*map, c.get<std::string>()));
            if (sub.cards.back().kind == PlayerCard::Epidemic) sub.has_epidemic = true;
        }
        s.player_deck.stacks.push_back(std::move(sub));
    }
    for (const auto& c : pdeck["discard"])
        s.player_deck.discard.push_back(card_from_text(*map, c.get<std::string>()));

    const ordered_json& ideck = j["infection_deck"];
    expect_keys(ideck, {"stacks", "discard"}, "infection deck");
    for (const auto& st : ideck["stacks"]) {
        InfectionSubStack sub;
        for (const auto& c : st)
            sub.cards.push_back(static_cast<std::int16_t>(city_from_text(*map, c.get<std::string>())));
        s.infection_deck.stacks.push_back(std::move(sub));
    }
    for (const auto& c : ideck["discard"])
        s.infection_deck.discard.push_back(static_cast<std::int16_t>(city_from_text(*map, c.get<std::string>())));

    s.stations_placed = j["stations_placed"].get<int>();
    s.ops_flight_used = j["ops_flight_used"].get<bool>();
    s.phase = phase_from_text(j["phase"].get<std::string>());
    s.status = status_from_text(j["status"].get<std::string>());
    if (j["loss_cause"].is_null()) {
        s.loss_cause.reset();
    } else {
        s.loss_cause = loss_from_text(j["loss_cause"].get<std::string>());
    }
    if (s.status == Status::Lost && !s.loss_cause) bad("lost state without a loss cause");
    if (s.status != Status::Lost && s.loss_cause) bad("loss cause on a non-lost state");
    s.turn = j["turn"].get<int>();
    return s;
}

std::string serialize_state(const GameState& s) { return state_to_json(s).dump(2); }

GameState deserialize_state(const std::string& text, MapPtr map) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) bad("not valid JSON");
    return state_from_json(j, map);
}

}  // namespace pandemic
