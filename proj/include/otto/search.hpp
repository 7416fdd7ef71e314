#pragma once

#include <optional>
#include <vector>

#include "otto/multicycle.hpp"
#include "otto/scenario.hpp"

namespace otto {

struct GridPoint {
    std::vector<double> coords;  // one value per axis, in axis order
    EngineConfig config;
    bool valid = true;           // false when the point violates a config invariant
    std::optional<AdvantagePoint> peak;
};

struct SearchResult {
    std::vector<std::string> fields;
    std::vector<GridPoint> points;  // cartesian product, first axis slowest
    std::optional<std::size_t> best;
    // Zero when no point has a defined advantage.
    double best_ratio = 0.0;
};

// Evaluates compare_coherent_incoherent over the full grid and picks the
// largest peak advantage; ties go to the lexicographically smallest point.
// Throws ConfigError for an empty grid.
SearchResult search_advantage(const EngineConfig& base, const std::vector<Axis>& grid, unsigned workers = 1);

}  // namespace otto
