#include "doctest.h"
#include "helpers.hpp"
#include "pandemic/map.hpp"

using namespace pandemic;

TEST_CASE("standard board shape") {
    auto map = test_helpers::standard_map();
    CHECK(map->size() == 48);
    std::array<int, kNumColors> per_color{};
    for (int i = 0; i < map->size(); ++i) per_color[static_cast<int>(map->color_of(i))] += 1;
    for (int t = 0; t < kNumColors; ++t) CHECK(per_color[t] == 12);
    CHECK(map->atlanta() >= 0);
    CHECK(map->city(map->atlanta()).name == "Atlanta");
    CHECK(map->connected());
    int degree_sum = 0;
    for (int i = 0; i < map->size(); ++i) degree_sum += static_cast<int>(map->neighbors(i).size());
    CHECK(degree_sum == 2 * 93);
}

TEST_CASE("adjacency is symmetric and self-loop free") {
    auto map = test_helpers::standard_map();
    for (int i = 0; i < map->size(); ++i)
        for (int n : map->neighbors(i)) {
            CHECK(n != i);
            CHECK(map->adjacent(n, i));
        }
}

TEST_CASE("cities are indexed in id order") {
    auto map = test_helpers::standard_map();
    for (int i = 1; i < map->size(); ++i) CHECK(map->city(i - 1).id < map->city(i).id);
    CHECK(map->index_of("atlanta") == map->atlanta());
    CHECK(map->index_of("nowhere") == -1);
}

TEST_CASE("a few known connections") {
    auto map = test_helpers::standard_map();
    auto idx = [&](const char* id) { return map->index_of(id); };
    CHECK(map->adjacent(idx("atlanta"), idx("washington")));
    CHECK(map->adjacent(idx("atlanta"), idx("miami")));
    CHECK(map->adjacent(idx("atlanta"), idx("chicago")));
    CHECK(map->adjacent(idx("san-francisco"), idx("tokyo")));
    CHECK(map->adjacent(idx("santiago"), idx("lima")));
    CHECK(map->neighbors(idx("santiago")).size() == 1);
    CHECK_FALSE(map->adjacent(idx("atlanta"), idx("tokyo")));
}

TEST_CASE("checksum is stable and non-empty") {
    auto map = test_helpers::standard_map();
    CHECK(map->checksum().size() == 16);
    auto again = CityMap::load_file(std::string(PANDEMIC_DATA) + "/pandemic_map.txt");
    CHECK(again.checksum() == map->checksum());
}

TEST_CASE("custom maps remap edges to sorted order") {
    // deliberately unsorted input ids
    auto map = CityMap::custom({{"zeta", "Zeta", Color::Red},
                                {"alpha", "Alpha", Color::Blue},
                                {"mike", "Mike", Color::Black}},
                               {{0, 1}, {1, 2}});
    // sorted: alpha(0), mike(1), zeta(2); edges were zeta-alpha, alpha-mike
    CHECK(map.city(0).id == "alpha");
    CHECK(map.adjacent(map.index_of("zeta"), map.index_of("alpha")));
    CHECK(map.adjacent(map.index_of("alpha"), map.index_of("mike")));
    CHECK_FALSE(map.adjacent(map.index_of("zeta"), map.index_of("mike")));
}

TEST_CASE("malformed map text is rejected") {
    CHECK_THROWS(CityMap::parse("city atlanta blue Atlanta\nedge atlanta nowhere\n"));
    CHECK_THROWS(CityMap::parse("city atlanta chartreuse Atlanta\n"));
    CHECK_THROWS(CityMap::parse("city atlanta blue Atlanta\ncity atlanta blue Atlanta\n"));
}
