#include "pandemic/fitness.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "pandemic/macro.hpp"

namespace pandemic {

const char* fitness_base_name(FitnessBase b) {
    switch (b) {
        case FitnessBase::CuredDiseases: return "f_od";
        case FitnessBase::CureAbility: return "f_oa";
        case FitnessBase::CubesAverage: return "f_ca";
        case FitnessBase::CubesMin: return "f_cm";
        case FitnessBase::CubesProduct: return "f_cp";
        case FitnessBase::Outbreaks: return "f_b";
    }
    return "?";
}

double base_fitness(const GameState& s, FitnessBase b, bool unscaled_cure_term) {
    switch (b) {
        case FitnessBase::CuredDiseases:
            return s.cured_count() / 4.0;
        case FitnessBase::CureAbility: {
            double sum = 0.0;
            for (int t = 0; t < kNumColors; ++t) sum += cure_ability(s, static_cast<Color>(t));
            double cured_term = unscaled_cure_term ? s.cured_count() : s.cured_count() / 4.0;
            return (0.25 * sum + 0.3 * cured_term) / 1.3;
        }
        case FitnessBase::CubesAverage: {
            double sum = 0.0;
            for (int t = 0; t < kNumColors; ++t) sum += s.cube_supply[t];
            return sum / (kNumColors * static_cast<double>(kCubesPerColor));
        }
        case FitnessBase::CubesMin: {
            int worst = *std::min_element(s.cube_supply.begin(), s.cube_supply.end());
            return worst / static_cast<double>(kCubesPerColor);
        }
        case FitnessBase::CubesProduct: {
            double prod = 1.0;
            for (int t = 0; t < kNumColors; ++t)
                prod *= s.cube_supply[t] / static_cast<double>(kCubesPerColor);
            return prod;
        }
        case FitnessBase::Outbreaks:
            return 1.0 - s.outbreak_counter / static_cast<double>(kMaxOutbreaks);
    }
    return 0.0;
}

double evaluate_state(const GameState& s, const FitnessSpec& spec) {
    if (spec.bases.empty()) throw std::invalid_argument("fitness spec has no base");
    if (spec.wrapper != FitnessWrapper::Raw && s.status == Status::Won) return 1.0;
    if (spec.wrapper == FitnessWrapper::WinLose && s.status == Status::Lost) return 0.0;
    double f = 0.0;
    for (FitnessBase b : spec.bases) f += base_fitness(s, b, spec.unscaled_cure_term);
    f /= static_cast<double>(spec.bases.size());
    if (spec.wrapper == FitnessWrapper::Penalty && s.status == Status::Lost)
        return spec.penalty * f;
    return f;
}

namespace {

std::string strip_spaces(const std::string& text) {
    std::string out;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

FitnessBase parse_base(const std::string& name) {
    for (FitnessBase b : {FitnessBase::CuredDiseases, FitnessBase::CureAbility,
                          FitnessBase::CubesAverage, FitnessBase::CubesMin,
                          FitnessBase::CubesProduct, FitnessBase::Outbreaks})
        if (name == fitness_base_name(b)) return b;
    throw std::invalid_argument("unknown fitness base: " + name);
}

// Strips a "name(...)" wrapper, returning the inside.
bool unwrap(std::string& text, const std::string& name) {
    if (text.size() < name.size() + 2 || text.compare(0, name.size() + 1, name + "(") != 0 ||
        text.back() != ')')
        return false;
    text = text.substr(name.size() + 1, text.size() - name.size() - 2);
    return true;
}

}  // namespace

FitnessSpec FitnessSpec::parse(const std::string& text) {
    std::string body = strip_spaces(text);
    if (body.empty()) throw std::invalid_argument("empty fitness spec");
    FitnessSpec spec;
    if (unwrap(body, "w")) spec.wrapper = FitnessWrapper::WinLose;
    else if (unwrap(body, "p")) spec.wrapper = FitnessWrapper::Penalty;
    if (unwrap(body, "mean")) {
        auto comma = body.find(',');
        if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
            throw std::invalid_argument("mean(a,b) takes exactly two bases: " + text);
        spec.bases.push_back(parse_base(body.substr(0, comma)));
        spec.bases.push_back(parse_base(body.substr(comma + 1)));
    } else {
        spec.bases.push_back(parse_base(body));
    }
    return spec;
}

std::string FitnessSpec::to_string() const {
    std::string inner;
    if (bases.size() == 1) {
        inner = fitness_base_name(bases[0]);
    } else {
        inner = "mean(";
        for (std::size_t i = 0; i < bases.size(); ++i) {
            if (i) inner += ",";
            inner += fitness_base_name(bases[i]);
        }
        inner += ")";
    }
    switch (wrapper) {
        case FitnessWrapper::Raw: return inner;
        case FitnessWrapper::WinLose: return "w(" + inner + ")";
        case FitnessWrapper::Penalty: return "p(" + inner + ")";
    }
    return inner;
}

}  // namespace pandemic
