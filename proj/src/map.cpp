#include "pandemic/map.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pandemic {

const char* color_name(Color c) {
    switch (c) {
        case Color::Blue: return "blue";
        case Color::Yellow: return "yellow";
        case Color::Black: return "black";
        case Color::Red: return "red";
    }
    return "?";
}

bool parse_color(const std::string& s, Color& out) {
    if (s == "blue") out = Color::Blue;
    else if (s == "yellow") out = Color::Yellow;
    else if (s == "black") out = Color::Black;
    else if (s == "red") out = Color::Red;
    else return false;
    return true;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

int CityMap::index_of(const std::string& id) const {
    auto it = std::lower_bound(cities_.begin(), cities_.end(), id,
                               [](const City& c, const std::string& s) { return c.id < s; });
    if (it == cities_.end() || it->id != id) return -1;
    return static_cast<int>(it - cities_.begin());
}

bool CityMap::adjacent(int a, int b) const {
    const auto& n = adjacency_[a];
    return std::binary_search(n.begin(), n.end(), b);
}

bool CityMap::connected() const {
    if (cities_.empty()) return false;
    std::vector<bool> seen(cities_.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int n : adjacency_[c]) {
            if (!seen[n]) {
                seen[n] = true;
                ++count;
                stack.push_back(n);
            }
        }
    }
    return count == size();
}

void CityMap::validate_standard() const {
    if (size() != kNumCities)
        throw std::runtime_error("map: expected 48 cities, got " + std::to_string(size()));
    std::array<int, kNumColors> per_color{};
    for (const auto& c : cities_) per_color[static_cast<int>(c.color)]++;
    for (int t = 0; t < kNumColors; ++t) {
        if (per_color[t] != 12)
            throw std::runtime_error(std::string("map: expected 12 ") +
                                     color_name(static_cast<Color>(t)) + " cities, got " +
                                     std::to_string(per_color[t]));
    }
    if (atlanta_ < 0) throw std::runtime_error("map: missing atlanta");
    if (!connected()) throw std::runtime_error("map: graph is not connected");
    for (int i = 0; i < size(); ++i) {
        for (int n : adjacency_[i]) {
            if (n == i) throw std::runtime_error("map: self edge at " + cities_[i].id);
            if (!adjacent(n, i)) throw std::runtime_error("map: asymmetric edge");
        }
        if (adjacency_[i].empty())
            throw std::runtime_error("map: isolated city " + cities_[i].id);
    }
}

CityMap CityMap::parse(const std::string& text) {
    std::vector<City> cities;
    std::vector<std::pair<std::string, std::string>> edge_ids;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "city") {
            City c;
            std::string color_str;
            ls >> c.id >> color_str;
            std::getline(ls, c.name);
            if (!c.name.empty() && c.name[0] == ' ') c.name.erase(0, 1);
            if (c.id.empty() || !parse_color(color_str, c.color))
                throw std::runtime_error("map: bad city line " + std::to_string(lineno));
            cities.push_back(std::move(c));
        } else if (kind == "edge") {
            std::string a, b;
            ls >> a >> b;
            if (a.empty() || b.empty())
                throw std::runtime_error("map: bad edge line " + std::to_string(lineno));
            edge_ids.emplace_back(a, b);
        } else {
            throw std::runtime_error("map: unknown record '" + kind + "' at line " +
                                     std::to_string(lineno));
        }
    }

    std::sort(cities.begin(), cities.end(),
              [](const City& a, const City& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < cities.size(); ++i)
        if (cities[i].id == cities[i - 1].id)
            throw std::runtime_error("map: duplicate city " + cities[i].id);

    CityMap m;
    m.cities_ = std::move(cities);
    m.adjacency_.resize(m.cities_.size());
    for (const auto& [a, b] : edge_ids) {
        int ia = m.index_of(a), ib = m.index_of(b);
        if (ia < 0 || ib < 0)
            throw std::runtime_error("map: edge references unknown city " + a + "/" + b);
        m.adjacency_[ia].push_back(ib);
        m.adjacency_[ib].push_back(ia);
    }
    for (auto& adj : m.adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    m.atlanta_ = m.index_of("atlanta");
    m.checksum_ = hex64(fnv1a64(text));
    return m;
}

CityMap CityMap::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("map: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    CityMap m = parse(ss.str());
    m.validate_standard();
    return m;
}

CityMap CityMap::custom(std::vector<City> cities,
                        const std::vector<std::pair<int, int>>& edges) {
    // Edge indices refer to the caller's ordering; remap after the id sort.
    std::vector<int> order(cities.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cities[a].id < cities[b].id; });
    std::vector<int> new_index(cities.size());
    std::vector<City> sorted;
    sorted.reserve(cities.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        new_index[order[pos]] = static_cast<int>(pos);
        sorted.push_back(std::move(cities[order[pos]]));
    }
    CityMap m;
    m.cities_ = std::move(sorted);
    m.adjacency_.resize(m.cities_.size());
    for (auto [a, b] : edges) {
        m.adjacency_[new_index[a]].push_back(new_index[b]);
        m.adjacency_[new_index[b]].push_back(new_index[a]);
    }
    for (auto& adj : m.adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    m.atlanta_ = m.index_of("atlanta");
    std::string fingerprint = "custom:" + std::to_string(m.size());
    m.checksum_ = hex64(fnv1a64(fingerprint));
    return m;
}

}  // namespace pandemic
