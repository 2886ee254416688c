#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pandemic {

enum class Color : std::uint8_t { Blue = 0, Yellow = 1, Black = 2, Red = 3 };
inline constexpr int kNumColors = 4;
inline constexpr int kCubesPerColor = 24;
inline constexpr int kNumCities = 48;
inline constexpr int kMaxStations = 6;
inline constexpr int kMaxOutbreaks = 8;
inline constexpr int kHandLimit = 7;

const char* color_name(Color c);
bool parse_color(const std::string& s, Color& out);

struct City {
    std::string id;    // slug, unique
    std::string name;  // display name
    Color color;
};

// Board graph. Cities are indexed in lexicographic id order so that index
// comparisons double as the spec'd lexicographic tie-breaks.
class CityMap {
public:
    static CityMap load_file(const std::string& path);
    static CityMap parse(const std::string& text);
    // For test boards; skips the 48-city validation but keeps symmetry.
    static CityMap custom(std::vector<City> cities,
                          const std::vector<std::pair<int, int>>& edges);

    int size() const { return static_cast<int>(cities_.size()); }
    const City& city(int i) const { return cities_[i]; }
    const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
    bool adjacent(int a, int b) const;
    int index_of(const std::string& id) const;  // -1 if unknown
    Color color_of(int i) const { return cities_[i].color; }
    int atlanta() const { return atlanta_; }
    const std::string& checksum() const { return checksum_; }

    bool connected() const;
    void validate_standard() const;  // throws on any board invariant breach

private:
    std::vector<City> cities_;
    std::vector<std::vector<int>> adjacency_;  // sorted neighbor lists
    int atlanta_ = -1;
    std::string checksum_;
};

using MapPtr = std::shared_ptr<const CityMap>;

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

}  // namespace pandemic
