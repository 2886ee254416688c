#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pandemic/agents.hpp"
#include "pandemic/state.hpp"

namespace pandemic {

inline constexpr int kRecordsVersion = 1;

// Game length in player turns rarely exceeds this; clustering features use it
// to put durations on the same [0,1]-ish scale as win ratios.
inline constexpr double kDurationNormalizer = 23.0;

struct AgentSpec {
    std::string kind = "hpa";  // hpa | rpa | rhea
    RheaParams rhea;           // read only when kind == "rhea"

    std::string fingerprint() const;  // stable config description, seed-free
    bool operator==(const AgentSpec&) const;
};

struct DecisionStats {
    long long count = 0;
    double mean_ms = 0.0;
    double p50_ms = 0.0;
    double p95_ms = 0.0;
    double max_ms = 0.0;
};

struct GameRecord {
    long long game = -1;  // index within the run; doubles as the resume cursor
    int setup = -1;
    int trial = -1;
    std::uint64_t seed = 0;
    std::string agent;
    bool failed = false;
    std::string error;
    Status outcome = Status::Ongoing;
    std::optional<LossCause> loss_cause;
    int turns = 0;
    std::array<long long, kNumActionTypes> actions{};
    DecisionStats decisions;  // the only timing data in a record
};

nlohmann::ordered_json record_to_json(const GameRecord& r);
GameRecord record_from_json(const nlohmann::ordered_json& j);

// ---- setup library ----

struct SetupEntry {
    int id = 0;  // candidate index during generation
    std::uint64_t seed = 0;
    double win_ratio = 0.0;      // HPA wins / trials
    double mean_duration = 0.0;  // mean turns / kDurationNormalizer
    bool medoid = false;
    GameState state;  // exact post-deal snapshot, deck orders included
};

struct SetupLibrary {
    GameConfig config;  // shared template (per-setup seeds vary)
    std::vector<SetupEntry> setups;

    std::vector<const SetupEntry*> medoids() const;
};

// Deals `candidates` fresh setups, measures each with `trials` hierarchical-
// policy games, keeps the easiest `keep_fraction` by win ratio (at least k),
// and marks the k cluster medoids over (win ratio, normalized duration).
// Progress and warnings go to `log` when given.
SetupLibrary build_setup_library(int candidates, int trials, int k, const GameConfig& tmpl,
                                 MapPtr map, std::uint64_t seed, double keep_fraction = 0.10,
                                 std::ostream* log = nullptr);

void save_setup_library(const SetupLibrary& lib, const std::string& path);
SetupLibrary load_setup_library(const std::string& path, MapPtr map);

// ---- experiments ----

struct ExperimentConfig {
    GameConfig game;  // [game] player_count, epidemic_count, roles
    AgentSpec agent;  // [agent] agent, and the rhea fields when agent = rhea
    // [run]
    std::string setups;  // library path; its medoid entries are the testbed
    int setup_count = 0;  // random-setup mode when no library is given
    int trials = 1;
    std::uint64_t master_seed = 0;
    int jobs = 1;
    std::string output;
};

// Section/key text config; unknown sections or keys are errors.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

// One full game from a dealt setup. Deterministic given (setup, agent, seed);
// only the decision wall-times vary between runs.
GameRecord play_game(const GameState& setup, const AgentSpec& agent, std::uint64_t game_seed);

// Plays setups x trials games, streaming records to cfg.output (header line
// first) in game order regardless of worker scheduling. With `resume`, a
// matching partial records file is continued after its last complete game.
// Returns every record of the run, including resumed ones.
std::vector<GameRecord> run_experiment(const ExperimentConfig& cfg, MapPtr map,
                                       bool resume = false, std::ostream* log = nullptr);

// ---- reports ----

// Aggregates a records file: win ratio, loss causes, durations, action usage
// per turn, and decision-time statistics, grouped by agent and by setup.
nlohmann::ordered_json report_summary(const std::string& records_path);
std::string report_text(const nlohmann::ordered_json& summary);

}  // namespace pandemic
