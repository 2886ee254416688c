// command-line front end: play single games, build setup libraries, run
// record-producing experiments, and summarize the records they leave behind
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pandemic/agents.hpp"
#include "pandemic/determinize.hpp"
#include "pandemic/harness.hpp"
#include "pandemic/rules.hpp"
#include "pandemic/serialize.hpp"

#ifndef PANDEMIC_DATA
#define PANDEMIC_DATA "data"
#endif

namespace {

using namespace pandemic;

MapPtr load_map(const std::string& path) {
    return std::make_shared<CityMap>(CityMap::load_file(path));
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct RheaOptions {
    int horizon = 3;
    int generations = 100;
    int repetitions = 10;
    double mutation_start = 1.0;
    double mutation_end = 0.5;
    std::string fitness = "p(mean(f_oa,f_cm))";
    bool unscaled_cure = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--horizon", horizon, "look-ahead depth in player turns");
        cmd->add_option("--generations", generations, "evolution steps per decision");
        cmd->add_option("--repetitions", repetitions, "rollouts averaged per evaluation");
        cmd->add_option("--mutation-start", mutation_start, "mutation rate at generation 0");
        cmd->add_option("--mutation-end", mutation_end, "mutation rate at the last generation");
        cmd->add_option("--fitness", fitness,
                        "state evaluation, e.g. f_cm, w(f_oa), p(mean(f_oa,f_cm))");
        cmd->add_flag("--unscaled-cure", unscaled_cure,
                      "let the cure-ability term exceed 1 when diseases are cured");
    }
    AgentSpec spec(const std::string& kind) const {
        AgentSpec a;
        a.kind = kind;
        if (kind == "rhea") {
            a.rhea.horizon = horizon;
            a.rhea.generations = generations;
            a.rhea.repetitions = repetitions;
            a.rhea.mutation = {mutation_start, mutation_end};
            a.rhea.fitness = FitnessSpec::parse(fitness);
            a.rhea.fitness.unscaled_cure_term = unscaled_cure;
        }
        return a;
    }
};

int cmd_play(const std::string& map_path, int players, int epidemics, std::uint64_t seed,
             const std::string& agent_kind, const RheaOptions& ropts,
             const std::string& setup_path, const std::string& save_setup, bool quiet) {
    MapPtr map = load_map(map_path);
    GameState s;
    if (!setup_path.empty()) {
        s = deserialize_state(read_text(setup_path), map);
    } else {
        GameConfig cfg;
        cfg.player_count = players;
        cfg.epidemic_count = epidemics;
        std::vector<Role> draft = {Role::OperationsExpert, Role::Medic, Role::Researcher,
                                   Role::Scientist};
        cfg.roles.assign(draft.begin(), draft.begin() + players);
        cfg.rng_seed = seed;
        cfg.validate();
        Rng deal(seed);
        s = new_game(cfg, deal, map);
    }
    if (!save_setup.empty()) {
        write_text(save_setup, serialize_state(s) + "\n");
        std::cout << "setup written to " << save_setup << "\n";
    }

    AgentSpec agent = ropts.spec(agent_kind);
    Rng rules_rng(derive_seed(seed, 1));
    Rng agent_rng(derive_seed(seed, 2));
    std::array<long long, kNumActionTypes> counts{};
    int last_turn = -1;
    int decisions = 0;

    while (s.ongoing()) {
        if (s.phase == Phase::Actions) {
            if (!quiet && s.turn != last_turn) {
                last_turn = s.turn;
                const PlayerState& p = s.players[s.current_player];
                std::cout << "turn " << s.turn << "  " << role_name(p.role) << " at "
                          << map->city(p.location).id << "  hand:";
                for (std::int16_t c : p.hand) std::cout << " " << map->city(c).id;
                std::cout << "  outbreaks " << s.outbreak_counter << "  cured";
                for (int t = 0; t < kNumColors; ++t)
                    if (s.cured[t]) std::cout << " " << color_name(static_cast<Color>(t));
                std::cout << "\n";
            }
            Macro m = agent.kind == "hpa"   ? hpa_next(s, agent_rng)
                      : agent.kind == "rpa" ? rpa_next(s, agent_rng)
                                            : rhea_decide(s, agent.rhea, agent_rng);
            ++decisions;
            if (!quiet) std::cout << "  -> " << macro_to_string(m, *map) << "\n";
            int before = s.actions_remaining;
            execute_macro(s, m, &counts);
            if (s.ongoing() && s.phase == Phase::Actions && s.actions_remaining == before) {
                counts[static_cast<int>(ActionType::Wait)] += 1;
                apply_action(s, Action::wait());
            }
        } else if (s.phase == Phase::Draw) {
            draw_phase(s, rules_rng);
        } else {
            infection_phase(s, rules_rng);
        }
    }

    std::cout << "\nresult: " << (s.status == Status::Won ? "won" : "lost");
    if (s.loss_cause) std::cout << " (" << loss_cause_name(*s.loss_cause) << ")";
    std::cout << " after " << s.turn << " turns, " << decisions << " decisions\n";
    std::cout << "actions:";
    for (int t = 0; t < kNumActionTypes; ++t)
        if (counts[t] > 0)
            std::cout << " " << action_type_name(static_cast<ActionType>(t)) << "=" << counts[t];
    std::cout << "\n";
    return s.status == Status::Won ? 0 : 2;
}

int cmd_gen_setups(const std::string& map_path, int candidates, int trials, int k, int players,
                   int epidemics, std::uint64_t seed, double keep, const std::string& out) {
    MapPtr map = load_map(map_path);
    GameConfig tmpl;
    tmpl.player_count = players;
    tmpl.epidemic_count = epidemics;
    std::vector<Role> draft = {Role::OperationsExpert, Role::Medic, Role::Researcher,
                               Role::Scientist};
    tmpl.roles.assign(draft.begin(), draft.begin() + players);
    tmpl.validate();

    SetupLibrary lib =
        build_setup_library(candidates, trials, k, tmpl, map, seed, keep, &std::cerr);
    save_setup_library(lib, out);
    std::cout << "library written to " << out << "\n";
    std::cout << "   id        seed  win ratio  duration  medoid\n";
    for (const SetupEntry& e : lib.setups) {
        char line[128];
        std::snprintf(line, sizeof line, "%5d  %10llu  %8.1f%%  %8.2f  %s\n", e.id,
                      static_cast<unsigned long long>(e.seed), 100.0 * e.win_ratio,
                      e.mean_duration, e.medoid ? "yes" : "");
        std::cout << line;
    }
    return 0;
}

int cmd_experiment(const std::string& map_path, const std::string& config_path,
                   const std::string& out_override, int jobs_override, bool resume) {
    MapPtr map = load_map(map_path);
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (!out_override.empty()) cfg.output = out_override;
    if (jobs_override > 0) cfg.jobs = jobs_override;
    if (cfg.output.empty()) throw config_error("config: [run] output is required");
    run_experiment(cfg, map, resume, &std::cerr);
    std::cout << report_text(report_summary(cfg.output));
    return 0;
}

int cmd_report(const std::string& in, const std::string& format) {
    nlohmann::ordered_json summary = report_summary(in);
    if (format == "machine") {
        std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << report_text(summary);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooperative outbreak-control game: agents, experiments, reports"};
    app.require_subcommand(1);
    std::string map_path = std::string(PANDEMIC_DATA) + "/pandemic_map.txt";

    auto* play = app.add_subcommand("play", "play one game and log every decision");
    int players = 4, epidemics = 6;
    std::uint64_t seed = 1;
    std::string agent_kind = "hpa";
    std::string setup_path, save_setup;
    bool quiet = false;
    RheaOptions ropts;
    play->add_option("--map", map_path, "board description file");
    play->add_option("--players", players, "player count (2-4)")->check(CLI::Range(2, 4));
    play->add_option("--epidemics", epidemics, "epidemic cards (4-6)")->check(CLI::Range(4, 6));
    play->add_option("--seed", seed, "seed for the deal and both play streams");
    play->add_option("--agent", agent_kind, "hpa | rpa | rhea")
        ->check(CLI::IsMember({"hpa", "rpa", "rhea"}));
    ropts.attach(play);
    play->add_option("--setup", setup_path, "start from a saved setup snapshot");
    play->add_option("--save-setup", save_setup, "write the dealt setup snapshot here");
    play->add_flag("--quiet", quiet, "suppress the per-decision log");

    auto* gen = app.add_subcommand("gen-setups", "measure candidate deals and keep the easiest");
    int candidates = 1000, trials = 30, k = 10;
    int gen_players = 2, gen_epidemics = 4;
    std::uint64_t gen_seed = 1;
    double keep = 0.10;
    std::string gen_out = "setups.json";
    gen->add_option("--map", map_path, "board description file");
    gen->add_option("--candidates", candidates, "fresh deals to measure");
    gen->add_option("--trials", trials, "baseline games per deal");
    gen->add_option("--k", k, "medoid count marked for experiment testbeds");
    gen->add_option("--players", gen_players, "player count (2-4)")->check(CLI::Range(2, 4));
    gen->add_option("--epidemics", gen_epidemics, "epidemic cards (4-6)")
        ->check(CLI::Range(4, 6));
    gen->add_option("--seed", gen_seed, "master seed for deals and baseline games");
    gen->add_option("--keep", keep, "fraction of candidates kept, easiest first");
    gen->add_option("--out", gen_out, "library file to write")->required();

    auto* exp = app.add_subcommand("experiment", "run a configured batch and write records");
    std::string config_path, out_override;
    int jobs_override = 0;
    bool resume = false;
    exp->add_option("--map", map_path, "board description file");
    exp->add_option("--config", config_path, "experiment description file")->required();
    exp->add_option("--out", out_override, "records file (overrides the config)");
    exp->add_option("--jobs", jobs_override, "worker threads (overrides the config)");
    exp->add_flag("--resume", resume, "continue an interrupted run in place");

    auto* rep = app.add_subcommand("report", "summarize a records file");
    std::string report_in, format = "text";
    rep->add_option("--in", report_in, "records file to read")->required();
    rep->add_option("--format", format, "text | machine")
        ->check(CLI::IsMember({"text", "machine"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(play))
            return cmd_play(map_path, players, epidemics, seed, agent_kind, ropts, setup_path,
                            save_setup, quiet);
        if (app.got_subcommand(gen))
            return cmd_gen_setups(map_path, candidates, trials, k, gen_players, gen_epidemics,
                                  gen_seed, keep, gen_out);
        if (app.got_subcommand(exp))
            return cmd_experiment(map_path, config_path, out_override, jobs_override, resume);
        return cmd_report(report_in, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
