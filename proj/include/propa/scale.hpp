#pragma once

#include <optional>
#include <vector>

#include "propa/graph.hpp"

namespace propa {

// One vertex subset per vertex. Every set is nonempty, sorted, and contains
// its own index; ball-built scales record their radius.
class Scale {
  public:
    Scale(int vertex_count, std::vector<std::vector<int>> sets,
          std::optional<int> radius = std::nullopt);

    int vertex_count() const { return static_cast<int>(sets_.size()); }
    const std::vector<int>& set(int i) const { return sets_[i]; }
    const std::vector<std::vector<int>>& sets() const { return sets_; }
    std::optional<int> radius() const { return radius_; }

    bool contains(int i, int j) const; // j in S_i

  private:
    std::vector<std::vector<int>> sets_;
    std::optional<int> radius_;
};

// S_i = { j : dist(i, j) <= s }. Balls never cross components.
Scale ball_scale(const Graph& g, int s);

// Output set i = { j : i in sc.sets[j] }. Involution; ball scales are fixed.
Scale dual_scale(const Scale& sc);

bool operator==(const Scale& a, const Scale& b);

} // namespace propa
