#include "pandemic/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pandemic/determinize.hpp"
#include "pandemic/kmedoids.hpp"
#include "pandemic/rules.hpp"
#include "pandemic/serialize.hpp"

namespace pandemic {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void cfg_fail(const std::string& why) { throw config_error(why); }

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double now_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

DecisionStats summarize_times(std::vector<double> ms) {
    DecisionStats d;
    d.count = static_cast<long long>(ms.size());
    if (ms.empty()) return d;
    double sum = 0.0;
    for (double v : ms) sum += v;
    d.mean_ms = sum / static_cast<double>(ms.size());
    std::sort(ms.begin(), ms.end());
    auto rank = [&](double q) {  // nearest-rank percentile
        std::size_t i = static_cast<std::size_t>(std::ceil(q * ms.size()));
        return ms[std::min(ms.size() - 1, i == 0 ? 0 : i - 1)];
    };
    d.p50_ms = rank(0.50);
    d.p95_ms = rank(0.95);
    d.max_ms = ms.back();
    return d;
}

const char* status_text(Status s) {
    return s == Status::Ongoing ? "ongoing" : s == Status::Won ? "won" : "lost";
}

// setup seeds live in a different index space than game seeds so the two
// derive_seed families can never collide
std::uint64_t setup_seed(std::uint64_t master, int index) {
    return derive_seed(master, (1ULL << 32) + static_cast<std::uint64_t>(index));
}

}  // namespace

// ---- agent spec ----

std::string AgentSpec::fingerprint() const {
    if (kind != "rhea") return kind;
    std::string s = fmt("rhea(h=%d,g=%d,r=%d,mr=%g->%g,fit=%s", rhea.horizon, rhea.generations,
                        rhea.repetitions, rhea.mutation.start, rhea.mutation.end,
                        rhea.fitness.to_string().c_str());
    if (rhea.fitness.unscaled_cure_term) s += ",unscaled-cure";
    return s + ")";
}

bool AgentSpec::operator==(const AgentSpec& o) const {
    if (kind != o.kind) return false;
    if (kind != "rhea") return true;
    return rhea.horizon == o.rhea.horizon && rhea.generations == o.rhea.generations &&
           rhea.repetitions == o.rhea.repetitions && rhea.mutation == o.rhea.mutation &&
           rhea.fitness == o.rhea.fitness;
}

// ---- records ----

ordered_json record_to_json(const GameRecord& r) {
    ordered_json j;
    j["game"] = r.game;
    j["setup"] = r.setup;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["agent"] = r.agent;
    j["failed"] = r.failed;
    if (r.failed) {
        j["error"] = r.error;
        return j;
    }
    j["outcome"] = status_text(r.outcome);
    j["loss_cause"] =
        r.loss_cause ? ordered_json(loss_cause_name(*r.loss_cause)) : ordered_json(nullptr);
    j["turns"] = r.turns;
    ordered_json acts;
    for (int t = 0; t < kNumActionTypes; ++t)
        if (r.actions[t] > 0) acts[action_type_name(static_cast<ActionType>(t))] = r.actions[t];
    j["actions"] = acts.is_null() ? ordered_json::object() : acts;
    ordered_json d;
    d["count"] = r.decisions.count;
    d["mean_ms"] = r.decisions.mean_ms;
    d["p50_ms"] = r.decisions.p50_ms;
    d["p95_ms"] = r.decisions.p95_ms;
    d["max_ms"] = r.decisions.max_ms;
    j["decisions"] = d;
    return j;
}

GameRecord record_from_json(const ordered_json& j) {
    GameRecord r;
    r.game = j.at("game").get<long long>();
    r.setup = j.at("setup").get<int>();
    r.trial = j.at("trial").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.agent = j.at("agent").get<std::string>();
    r.failed = j.at("failed").get<bool>();
    if (r.failed) {
        r.error = j.value("error", "");
        return r;
    }
    std::string outcome = j.at("outcome").get<std::string>();
    if (outcome == "won") r.outcome = Status::Won;
    else if (outcome == "lost") r.outcome = Status::Lost;
    else throw std::invalid_argument("record: unexpected outcome '" + outcome + "'");
    if (!j.at("loss_cause").is_null()) {
        std::string cause = j.at("loss_cause").get<std::string>();
        for (LossCause c : {LossCause::Outbreaks, LossCause::Cubes, LossCause::PlayerDeck})
            if (cause == loss_cause_name(c)) r.loss_cause = c;
        if (!r.loss_cause) throw std::invalid_argument("record: unknown loss cause '" + cause + "'");
    }
    r.turns = j.at("turns").get<int>();
    for (const auto& item : j.at("actions").items()) {
        bool known = false;
        for (int t = 0; t < kNumActionTypes; ++t)
            if (item.key() == action_type_name(static_cast<ActionType>(t))) {
                r.actions[t] = item.value().get<long long>();
                known = true;
            }
        if (!known) throw std::invalid_argument("record: unknown action '" + item.key() + "'");
    }
    const auto& d = j.at("decisions");
    r.decisions.count = d.at("count").get<long long>();
    r.decisions.mean_ms = d.at("mean_ms").get<double>();
    r.decisions.p50_ms = d.at("p50_ms").get<double>();
    r.decisions.p95_ms = d.at("p95_ms").get<double>();
    r.decisions.max_ms = d.at("max_ms").get<double>();
    return r;
}

// ---- playing ----

GameRecord play_game(const GameState& setup, const AgentSpec& agent, std::uint64_t game_seed) {
    GameState s = setup;
    Rng rules_rng(derive_seed(game_seed, 1));
    Rng agent_rng(derive_seed(game_seed, 2));
    GameRecord r;
    r.seed = game_seed;
    r.agent = agent.fingerprint();
    std::vector<double> times;

    while (s.ongoing()) {
        if (s.phase == Phase::Actions) {
            auto t0 = std::chrono::steady_clock::now();
            Macro m = agent.kind == "hpa"   ? hpa_next(s, agent_rng)
                      : agent.kind == "rpa" ? rpa_next(s, agent_rng)
                                            : rhea_decide(s, agent.rhea, agent_rng);
            times.push_back(now_ms(t0));
            int before = s.actions_remaining;
            execute_macro(s, m, &r.actions);
            if (s.ongoing() && s.phase == Phase::Actions && s.actions_remaining == before) {
                // a fully-absorbed macro must still cost something
                r.actions[static_cast<int>(ActionType::Wait)] += 1;
                apply_action(s, Action::wait());
            }
        } else if (s.phase == Phase::Draw) {
            draw_phase(s, rules_rng);
        } else {
            infection_phase(s, rules_rng);
        }
    }
    r.outcome = s.status;
    r.loss_cause = s.loss_cause;
    r.turns = s.turn;
    r.decisions = summarize_times(std::move(times));
    return r;
}

// ---- setup library ----

std::vector<const SetupEntry*> SetupLibrary::medoids() const {
    std::vector<const SetupEntry*> out;
    for (const SetupEntry& e : setups)
        if (e.medoid) out.push_back(&e);
    return out;
}

SetupLibrary build_setup_library(int candidates, int trials, int k, const GameConfig& tmpl,
                                 MapPtr map, std::uint64_t seed, double keep_fraction,
                                 std::ostream* log) {
    if (candidates < 1) cfg_fail("setup library: need at least one candidate");
    if (trials < 1) cfg_fail("setup library: trials must be >= 1");
    if (k < 1 || k > candidates) cfg_fail("setup library: k must be in [1, candidates]");
    if (keep_fraction <= 0.0 || keep_fraction > 1.0)
        cfg_fail("setup library: keep fraction must be in (0, 1]");

    SetupLibrary lib;
    lib.config = tmpl;
    AgentSpec hpa;  // defaults to the hierarchical policy

    for (int c = 0; c < candidates; ++c) {
        SetupEntry e;
        e.id = c;
        e.seed = setup_seed(seed, c);
        GameConfig cfg = tmpl;
        cfg.rng_seed = e.seed;
        Rng deal(e.seed);
        e.state = new_game(cfg, deal, map);

        int wins = 0;
        long long turn_sum = 0;
        for (int t = 0; t < trials; ++t) {
            GameRecord r = play_game(e.state, hpa, derive_seed(e.seed, t));
            wins += r.outcome == Status::Won ? 1 : 0;
            turn_sum += r.turns;
        }
        e.win_ratio = static_cast<double>(wins) / trials;
        e.mean_duration = static_cast<double>(turn_sum) / trials / kDurationNormalizer;
        lib.setups.push_back(std::move(e));
        if (log && ((c + 1) % std::max(1, candidates / 20) == 0 || c + 1 == candidates))
            *log << "measured " << (c + 1) << "/" << candidates << " setups\n";
    }

    // easiest first; candidate order breaks exact ties so ranking is stable
    std::sort(lib.setups.begin(), lib.setups.end(), [](const SetupEntry& a, const SetupEntry& b) {
        if (a.win_ratio != b.win_ratio) return a.win_ratio > b.win_ratio;
        return a.id < b.id;
    });
    int kept = static_cast<int>(std::llround(candidates * keep_fraction));
    kept = std::min(candidates, std::max(k, kept));
    lib.setups.resize(kept);

    std::vector<std::vector<double>> points;
    for (const SetupEntry& e : lib.setups) points.push_back({e.win_ratio, e.mean_duration});
    KMedoidsResult km = k_medoids(points, k, derive_seed(seed, 2), 50);
    if (km.degenerate && log)
        *log << "warning: all kept setups have identical metrics; "
                "taking the first "
             << k << " as medoids\n";
    for (int m : km.medoids) lib.setups[m].medoid = true;
    if (log) *log << "kept " << kept << " setups, marked " << k << " medoids\n";
    return lib;
}

void save_setup_library(const SetupLibrary& lib, const std::string& path) {
    ordered_json j;
    j["version"] = kRecordsVersion;
    j["map"] = lib.setups.empty() ? "" : lib.setups[0].state.map->checksum();
    ordered_json cfg;
    cfg["player_count"] = lib.config.player_count;
    cfg["epidemic_count"] = lib.config.epidemic_count;
    ordered_json roles = ordered_json::array();
    for (Role r : lib.config.roles) roles.push_back(role_name(r));
    cfg["roles"] = roles;
    j["config"] = cfg;
    ordered_json setups = ordered_json::array();
    for (const SetupEntry& e : lib.setups) {
        ordered_json s;
        s["id"] = e.id;
        s["seed"] = e.seed;
        s["win_ratio"] = e.win_ratio;
        s["mean_duration"] = e.mean_duration;
        s["medoid"] = e.medoid;
        s["state"] = state_to_json(e.state);
        setups.push_back(std::move(s));
    }
    j["setups"] = setups;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write setup library: " + path);
    out << j.dump(1) << "\n";
}

SetupLibrary load_setup_library(const std::string& path, MapPtr map) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read setup library: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    ordered_json j = ordered_json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("setup library: not valid JSON");
    if (j.value("version", -1) != kRecordsVersion)
        throw std::invalid_argument("setup library: unsupported version");

    SetupLibrary lib;
    const auto& cfg = j.at("config");
    lib.config.player_count = cfg.at("player_count").get<int>();
    lib.config.epidemic_count = cfg.at("epidemic_count").get<int>();
    for (const auto& r : cfg.at("roles")) {
        Role role;
        if (!parse_role(r.get<std::string>(), role))
            throw std::invalid_argument("setup library: unknown role");
        lib.config.roles.push_back(role);
    }
    for (const auto& s : j.at("setups")) {
        SetupEntry e;
        e.id = s.at("id").get<int>();
        e.seed = s.at("seed").get<std::uint64_t>();
        e.win_ratio = s.at("win_ratio").get<double>();
        e.mean_duration = s.at("mean_duration").get<double>();
        e.medoid = s.at("medoid").get<bool>();
        e.state = state_from_json(s.at("state"), map);
        lib.setups.push_back(std::move(e));
    }
    return lib;
}

// ---- config file ----

namespace {

struct IniFile {
    // section -> ordered key/value pairs
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections;

    const std::vector<std::pair<std::string, std::string>>* find(const std::string& name) const {
        for (const auto& s : sections)
            if (s.first == name) return &s.second;
        return nullptr;
    }
};

IniFile parse_ini(const std::string& text) {
    IniFile ini;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::pair<std::string, std::string>>* current = nullptr;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') cfg_fail(fmt("config line %d: unterminated section", line_no));
            std::string name = trim(t.substr(1, t.size() - 2));
            if (name.empty()) cfg_fail(fmt("config line %d: empty section name", line_no));
            if (ini.find(name)) cfg_fail(fmt("config line %d: duplicate section", line_no));
            ini.sections.push_back({name, {}});
            current = &ini.sections.back().second;
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            cfg_fail(fmt("config line %d: expected 'key = value'", line_no));
        if (!current) cfg_fail(fmt("config line %d: key outside any section", line_no));
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) cfg_fail(fmt("config line %d: empty key", line_no));
        for (const auto& kv : *current)
            if (kv.first == key) cfg_fail(fmt("config line %d: duplicate key '%s'", line_no,
                                              key.c_str()));
        current->push_back({key, value});
    }
    return ini;
}

// typed lookups over one section, tracking which keys were consumed
struct SectionReader {
    std::string name;
    const std::vector<std::pair<std::string, std::string>>* kv;
    std::vector<std::string> seen;

    const std::string* raw(const std::string& key) {
        seen.push_back(key);
        if (!kv) return nullptr;
        for (const auto& p : *kv)
            if (p.first == key) return &p.second;
        return nullptr;
    }
    std::string str(const std::string& key, const std::string& fallback) {
        const std::string* v = raw(key);
        return v ? *v : fallback;
    }
    long long integer(const std::string& key, long long fallback) {
        const std::string* v = raw(key);
        if (!v) return fallback;
        try {
            std::size_t used = 0;
            long long n = std::stoll(*v, &used);
            if (used != v->size()) throw std::invalid_argument("");
            return n;
        } catch (...) {
            cfg_fail("config: [" + name + "] " + key + " is not an integer: '" + *v + "'");
        }
    }
    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
        const std::string* v = raw(key);
        if (!v) return fallback;
        try {
            std::size_t used = 0;
            std::uint64_t n = std::stoull(*v, &used);
            if (used != v->size()) throw std::invalid_argument("");
            return n;
        } catch (...) {
            cfg_fail("config: [" + name + "] " + key + " is not a non-negative integer");
        }
    }
    double real(const std::string& key, double fallback) {
        const std::string* v = raw(key);
        if (!v) return fallback;
        try {
            std::size_t used = 0;
            double d = std::stod(*v, &used);
            if (used != v->size()) throw std::invalid_argument("");
            return d;
        } catch (...) {
            cfg_fail("config: [" + name + "] " + key + " is not a number");
        }
    }
    bool boolean(const std::string& key, bool fallback) {
        const std::string* v = raw(key);
        if (!v) return fallback;
        std::string s = lower(*v);
        if (s == "true" || s == "yes" || s == "1") return true;
        if (s == "false" || s == "no" || s == "0") return false;
        cfg_fail("config: [" + name + "] " + key + " is not a boolean");
    }
    void finish() const {  // every present key must have been consumed
        if (!kv) return;
        for (const auto& p : *kv)
            if (std::find(seen.begin(), seen.end(), p.first) == seen.end())
                cfg_fail("config: [" + name + "] unknown key '" + p.first + "'");
    }
};

std::vector<Role> parse_roles_csv(const std::string& text) {
    std::vector<Role> out;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        Role r;
        if (!parse_role(lower(trim(part)), r)) cfg_fail("config: unknown role '" + trim(part) + "'");
        out.push_back(r);
    }
    return out;
}

std::vector<Role> default_roles(int players) {
    std::vector<Role> all = {Role::OperationsExpert, Role::Medic, Role::Researcher,
                             Role::Scientist};
    return {all.begin(), all.begin() + players};
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    IniFile ini = parse_ini(text);
    for (const auto& s : ini.sections)
        if (s.first != "game" && s.first != "agent" && s.first != "run")
            cfg_fail("config: unknown section [" + s.first + "]");
    for (const char* required : {"game", "agent", "run"})
        if (!ini.find(required)) cfg_fail(std::string("config: missing section [") + required + "]");

    ExperimentConfig cfg;

    SectionReader game{"game", ini.find("game"), {}};
    cfg.game.player_count = static_cast<int>(game.integer("player_count", 4));
    cfg.game.epidemic_count = static_cast<int>(game.integer("epidemic_count", 4));
    const std::string* roles = game.raw("roles");
    cfg.game.roles = roles ? parse_roles_csv(*roles) : default_roles(cfg.game.player_count);
    game.finish();
    try {
        cfg.game.validate();
    } catch (const std::invalid_argument& e) {
        cfg_fail(e.what());
    }

    SectionReader agent{"agent", ini.find("agent"), {}};
    cfg.agent.kind = lower(agent.str("agent", ""));
    if (cfg.agent.kind != "hpa" && cfg.agent.kind != "rpa" && cfg.agent.kind != "rhea")
        cfg_fail("config: [agent] agent must be hpa, rpa or rhea");
    if (cfg.agent.kind == "rhea") {
        RheaParams& p = cfg.agent.rhea;
        p.horizon = static_cast<int>(agent.integer("horizon", p.horizon));
        p.generations = static_cast<int>(agent.integer("generations", p.generations));
        p.repetitions = static_cast<int>(agent.integer("repetitions", p.repetitions));
        p.mutation.start = agent.real("mutation_start", p.mutation.start);
        p.mutation.end = agent.real("mutation_end", p.mutation.end);
        const std::string* fit = agent.raw("fitness");
        if (fit) p.fitness = FitnessSpec::parse(*fit);
        p.fitness.unscaled_cure_term =
            agent.boolean("unscaled_cure_term", p.fitness.unscaled_cure_term);
        if (p.horizon < 1) cfg_fail("config: [agent] horizon must be >= 1");
        if (p.generations < 0) cfg_fail("config: [agent] generations must be >= 0");
        if (p.repetitions < 1) cfg_fail("config: [agent] repetitions must be >= 1");
    }
    agent.finish();

    SectionReader run{"run", ini.find("run"), {}};
    cfg.setups = run.str("setups", "");
    cfg.setup_count = static_cast<int>(run.integer("setup_count", 0));
    cfg.trials = static_cast<int>(run.integer("trials", 1));
    cfg.master_seed = run.unsigned64("master_seed", 0);
    cfg.jobs = static_cast<int>(run.integer("jobs", 1));
    cfg.output = run.str("output", "");
    run.finish();

    if (cfg.trials < 1) cfg_fail("config: [run] trials must be >= 1");
    if (cfg.jobs < 1) cfg_fail("config: [run] jobs must be >= 1");
    if (cfg.setups.empty() == (cfg.setup_count <= 0))
        cfg_fail("config: [run] needs exactly one of setups (library path) or setup_count > 0");
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

// ---- experiment runner ----

namespace {

ordered_json run_header(const ExperimentConfig& cfg, const std::string& map_checksum,
                        const std::vector<int>& testbed_ids) {
    ordered_json j;
    j["record"] = "header";
    j["version"] = kRecordsVersion;
    j["map"] = map_checksum;
    j["build"] = "cxx " __VERSION__;
    j["agent"] = cfg.agent.fingerprint();
    ordered_json game;
    game["player_count"] = cfg.game.player_count;
    game["epidemic_count"] = cfg.game.epidemic_count;
    ordered_json roles = ordered_json::array();
    for (Role r : cfg.game.roles) roles.push_back(role_name(r));
    game["roles"] = roles;
    j["game"] = game;
    ordered_json run;
    run["setups"] = cfg.setups;
    run["setup_count"] = cfg.setup_count;
    run["trials"] = cfg.trials;
    run["master_seed"] = cfg.master_seed;
    run["testbed"] = testbed_ids;
    j["run"] = run;
    return j;
}

}  // namespace

std::vector<GameRecord> run_experiment(const ExperimentConfig& cfg, MapPtr map, bool resume,
                                       std::ostream* log) {
    if (cfg.trials < 1) cfg_fail("experiment: trials must be >= 1");
    if (cfg.jobs < 1) cfg_fail("experiment: jobs must be >= 1");
    if (cfg.output.empty()) cfg_fail("experiment: no output path");

    // the testbed: either a stored library's medoids or fresh random deals
    std::vector<std::pair<int, GameState>> testbed;
    if (!cfg.setups.empty()) {
        SetupLibrary lib = load_setup_library(cfg.setups, map);
        if (lib.config.player_count != cfg.game.player_count ||
            lib.config.epidemic_count != cfg.game.epidemic_count)
            cfg_fail("experiment: [game] does not match the setup library's config");
        for (const SetupEntry* e : lib.medoids()) testbed.push_back({e->id, e->state});
        if (testbed.empty()) cfg_fail("experiment: setup library has no medoid entries");
    } else {
        cfg.game.validate();
        for (int i = 0; i < cfg.setup_count; ++i) {
            std::uint64_t sseed = setup_seed(cfg.master_seed, i);
            GameConfig gc = cfg.game;
            gc.rng_seed = sseed;
            Rng deal(sseed);
            testbed.push_back({i, new_game(gc, deal, map)});
        }
    }

    std::vector<int> testbed_ids;
    for (const auto& [id, state] : testbed) testbed_ids.push_back(id);
    const long long total = static_cast<long long>(testbed.size()) * cfg.trials;
    const std::string header_line = run_header(cfg, map->checksum(), testbed_ids).dump();

    // resume: keep the longest clean prefix of a file with a matching header
    std::vector<GameRecord> records;
    std::vector<std::string> kept_lines;
    if (resume) {
        std::ifstream in(cfg.output);
        if (in) {
            std::string line;
            if (!std::getline(in, line) || line != header_line)
                throw std::runtime_error(
                    "resume: existing records file belongs to a different run");
            while (std::getline(in, line)) {
                ordered_json j = ordered_json::parse(line, nullptr, false);
                if (j.is_discarded()) break;  // partial trailing write
                GameRecord r;
                try {
                    r = record_from_json(j);
                } catch (const std::exception&) {
                    break;
                }
                if (r.game != static_cast<long long>(records.size())) break;
                records.push_back(std::move(r));
                kept_lines.push_back(line);
            }
        }
    }

    std::ofstream out(cfg.output, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write records: " + cfg.output);
    out << header_line << "\n";
    for (const std::string& line : kept_lines) out << line << "\n";
    out.flush();

    const long long done = static_cast<long long>(records.size());
    if (log && done > 0) *log << "resuming after " << done << "/" << total << " games\n";

    auto play_index = [&](long long g) {
        const auto& [sid, state] = testbed[static_cast<std::size_t>(g / cfg.trials)];
        std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(g));
        GameRecord r;
        try {
            r = play_game(state, cfg.agent, seed);
        } catch (const std::exception& e) {
            r = GameRecord{};
            r.seed = seed;
            r.agent = cfg.agent.fingerprint();
            r.failed = true;
            r.error = e.what();
        }
        r.game = g;
        r.setup = sid;
        r.trial = static_cast<int>(g % cfg.trials);
        return r;
    };
    auto emit = [&](GameRecord r) {
        out << record_to_json(r).dump() << "\n";
        out.flush();
        records.push_back(std::move(r));
        long long n = static_cast<long long>(records.size());
        if (log && (n % std::max<long long>(1, total / 20) == 0 || n == total))
            *log << "played " << n << "/" << total << " games\n";
    };

    if (cfg.jobs == 1 || total - done <= 1) {
        for (long long g = done; g < total; ++g) emit(play_index(g));
        return records;
    }

    // worker pool; the writer drains results strictly in game order
    std::atomic<long long> next{done};
    std::mutex mu;
    std::condition_variable cv;
    std::map<long long, GameRecord> ready;
    auto worker = [&]() {
        for (;;) {
            long long g = next.fetch_add(1);
            if (g >= total) return;
            GameRecord r = play_index(g);
            {
                std::lock_guard<std::mutex> lock(mu);
                ready.emplace(g, std::move(r));
            }
            cv.notify_one();
        }
    };
    std::vector<std::thread> pool;
    int n_workers = static_cast<int>(std::min<long long>(cfg.jobs, total - done));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (long long g = done; g < total; ++g) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return ready.count(g) > 0; });
        GameRecord r = std::move(ready.at(g));
        ready.erase(g);
        lock.unlock();
        emit(std::move(r));
    }
    for (std::thread& t : pool) t.join();
    return records;
}

// ---- reports ----

nlohmann::ordered_json report_summary(const std::string& records_path) {
    std::ifstream in(records_path);
    if (!in) throw std::runtime_error("cannot read records: " + records_path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("records: empty file");
    ordered_json header = ordered_json::parse(line, nullptr, false);
    if (header.is_discarded() || header.value("record", "") != "header")
        throw std::invalid_argument("records: missing header line");

    std::vector<GameRecord> records;
    long long bad_lines = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            bad_lines += 1;
            continue;
        }
        records.push_back(record_from_json(j));
    }

    ordered_json summary;
    summary["header"] = header;
    summary["records"] = static_cast<long long>(records.size());
    summary["unparseable_lines"] = bad_lines;
    if (records.empty()) {
        summary["notice"] = "no game records";
        summary["groups"] = ordered_json::array();
        return summary;
    }

    // group by agent fingerprint, first-seen order
    std::vector<std::string> order;
    std::map<std::string, std::vector<const GameRecord*>> groups;
    for (const GameRecord& r : records) {
        if (!groups.count(r.agent)) order.push_back(r.agent);
        groups[r.agent].push_back(&r);
    }

    ordered_json out_groups = ordered_json::array();
    for (const std::string& agent : order) {
        const auto& rs = groups[agent];
        long long failed = 0, wins = 0, losses = 0, turn_sum_won = 0, turn_sum_lost = 0;
        long long total_turns = 0;
        std::array<long long, kNumActionTypes> acts{};
        std::map<std::string, long long> causes;
        std::vector<double> game_means;
        double time_sum = 0.0, time_max = 0.0;
        long long time_count = 0;
        std::map<int, std::pair<long long, long long>> per_setup;  // games, wins
        for (const GameRecord* r : rs) {
            if (r->failed) {
                failed += 1;
                continue;
            }
            auto& slot = per_setup[r->setup];
            slot.first += 1;
            if (r->outcome == Status::Won) {
                wins += 1;
                slot.second += 1;
                turn_sum_won += r->turns;
            } else {
                losses += 1;
                turn_sum_lost += r->turns;
                causes[r->loss_cause ? loss_cause_name(*r->loss_cause) : "?"] += 1;
            }
            total_turns += r->turns;
            for (int t = 0; t < kNumActionTypes; ++t) acts[t] += r->actions[t];
            if (r->decisions.count > 0) {
                game_means.push_back(r->decisions.mean_ms);
                time_sum += r->decisions.mean_ms * r->decisions.count;
                time_count += r->decisions.count;
                time_max = std::max(time_max, r->decisions.max_ms);
            }
        }
        long long completed = static_cast<long long>(rs.size()) - failed;
        ordered_json g;
        g["agent"] = agent;
        g["games"] = completed;
        g["failed"] = failed;
        g["wins"] = wins;
        g["win_ratio"] = completed > 0 ? static_cast<double>(wins) / completed : 0.0;
        ordered_json causes_json;
        for (const auto& [name, count] : causes) {
            ordered_json c;
            c["count"] = count;
            c["fraction"] = losses > 0 ? static_cast<double>(count) / losses : 0.0;
            causes_json[name] = c;
        }
        g["loss_causes"] = causes_json.is_null() ? ordered_json::object() : causes_json;
        ordered_json dur;
        dur["won_mean_turns"] = wins > 0 ? static_cast<double>(turn_sum_won) / wins : 0.0;
        dur["lost_mean_turns"] = losses > 0 ? static_cast<double>(turn_sum_lost) / losses : 0.0;
        g["duration"] = dur;
        ordered_json apt;
        for (int t = 0; t < kNumActionTypes; ++t)
            if (acts[t] > 0)
                apt[action_type_name(static_cast<ActionType>(t))] =
                    total_turns > 0 ? static_cast<double>(acts[t]) / total_turns : 0.0;
        g["actions_per_turn"] = apt.is_null() ? ordered_json::object() : apt;
        ordered_json dec;
        dec["count"] = time_count;
        dec["mean_ms"] = time_count > 0 ? time_sum / time_count : 0.0;
        std::sort(game_means.begin(), game_means.end());
        auto rank = [&](double q) {
            if (game_means.empty()) return 0.0;
            std::size_t i = static_cast<std::size_t>(std::ceil(q * game_means.size()));
            return game_means[std::min(game_means.size() - 1, i == 0 ? 0 : i - 1)];
        };
        dec["p50_game_mean_ms"] = rank(0.50);
        dec["p95_game_mean_ms"] = rank(0.95);
        dec["max_ms"] = time_max;
        g["decisions"] = dec;
        ordered_json setups = ordered_json::array();
        for (const auto& [sid, gw] : per_setup) {
            ordered_json s;
            s["setup"] = sid;
            s["games"] = gw.first;
            s["wins"] = gw.second;
            s["win_ratio"] = gw.first > 0 ? static_cast<double>(gw.second) / gw.first : 0.0;
            setups.push_back(std::move(s));
        }
        g["setups"] = setups;
        out_groups.push_back(std::move(g));
    }
    summary["groups"] = out_groups;
    return summary;
}

std::string report_text(const nlohmann::ordered_json& summary) {
    std::ostringstream out;
    long long n = summary.at("records").get<long long>();
    if (n == 0) {
        out << "no game records.\n";
        return out.str();
    }
    out << n << " record(s)";
    long long bad = summary.value("unparseable_lines", 0LL);
    if (bad > 0) out << ", " << bad << " unparseable line(s) skipped";
    out << "\n";
    for (const auto& g : summary.at("groups")) {
        out << "\nagent: " << g.at("agent").get<std::string>() << "\n";
        out << fmt("  games %lld (%lld failed)   wins %lld   win ratio %.1f%%\n",
                   g.at("games").get<long long>(), g.at("failed").get<long long>(),
                   g.at("wins").get<long long>(), 100.0 * g.at("win_ratio").get<double>());
        const auto& causes = g.at("loss_causes");
        if (!causes.empty()) {
            out << "  losses:";
            for (const auto& item : causes.items())
                out << fmt("  %s %.1f%% (%lld)", item.key().c_str(),
                           100.0 * item.value().at("fraction").get<double>(),
                           item.value().at("count").get<long long>());
            out << "\n";
        }
        out << fmt("  duration: won %.1f turns, lost %.1f turns\n",
                   g.at("duration").at("won_mean_turns").get<double>(),
                   g.at("duration").at("lost_mean_turns").get<double>());
        const auto& dec = g.at("decisions");
        out << fmt("  decisions: %lld   mean %.2f ms   p50 %.2f   p95 %.2f   max %.2f\n",
                   dec.at("count").get<long long>(), dec.at("mean_ms").get<double>(),
                   dec.at("p50_game_mean_ms").get<double>(),
                   dec.at("p95_game_mean_ms").get<double>(), dec.at("max_ms").get<double>());
        const auto& apt = g.at("actions_per_turn");
        if (!apt.empty()) {
            out << "  actions per turn:";
            for (const auto& item : apt.items())
                out << fmt("  %s %.2f", item.key().c_str(), item.value().get<double>());
            out << "\n";
        }
        out << "  setups:\n";
        out << "    setup  games  wins  win ratio\n";
        for (const auto& s : g.at("setups"))
            out << fmt("    %5d  %5lld  %4lld  %8.1f%%\n", s.at("setup").get<int>(),
                       s.at("games").get<long long>(), s.at("wins").get<long long>(),
                       100.0 * s.at("win_ratio").get<double>());
    }
    return out.str();
}

}  // namespace pandemic
