#include "propa/scale.hpp"

#include <algorithm>

#include "propa/errors.hpp"

namespace propa {

Scale::Scale(int vertex_count, std::vector<std::vector<int>> sets, std::optional<int> radius)
    : sets_(std::move(sets)), radius_(radius) {
    if (static_cast<int>(sets_.size()) != vertex_count)
        throw ScaleError("Scale: expected one set per vertex");
    for (int i = 0; i < vertex_count; ++i) {
        auto& s = sets_[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) throw ScaleError("Scale: S_" + std::to_string(i) + " is empty");
        if (s.front() < 0 || s.back() >= vertex_count)
            throw ScaleError("Scale: S_" + std::to_string(i) + " has out-of-range vertex");
        if (!std::binary_search(s.begin(), s.end(), i))
            throw ScaleCenterError("Scale: S_" + std::to_string(i) +
                                   " does not contain its center");
    }
}

bool Scale::contains(int i, int j) const {
    const auto& s = sets_[i];
    return std::binary_search(s.begin(), s.end(), j);
}

Scale ball_scale(const Graph& g, int s) {
    if (s < 0) throw ScaleError("ball_scale: negative radius");
    auto dm = all_pairs_distances(g);
    std::vector<std::vector<int>> sets(g.n());
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            int d = dm.at(i, j);
            if (DistanceMatrix::finite(d) && d <= s) sets[i].push_back(j);
        }
    return Scale(g.n(), std::move(sets), s);
}

Scale dual_scale(const Scale& sc) {
    int n = sc.vertex_count();
    std::vector<std::vector<int>> sets(n);
    for (int j = 0; j < n; ++j)
        for (int i : sc.set(j)) sets[i].push_back(j);
    for (int i = 0; i < n; ++i)
        if (sets[i].empty()) throw ScaleError("dual_scale: empty dual set"); // unreachable
    return Scale(n, std::move(sets), sc.radius());
}

bool operator==(const Scale& a, const Scale& b) { return a.sets() == b.sets(); }

} // namespace propa
