#include "otto/search.hpp"

#include <algorithm>

#include "otto/errors.hpp"
#include "otto/parallel.hpp"

namespace otto {

SearchResult search_advantage(const EngineConfig& base, const std::vector<Axis>& grid, unsigned workers) {
    std::size_t total = grid.empty() ? 0 : 1;
    for (const auto& axis : grid) total *= axis.values.size();
    if (total == 0) throw ConfigError("search: the grid is empty");

    SearchResult result;
    for (const auto& axis : grid) result.fields.push_back(axis.field);

    std::vector<GridPoint> points(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        auto& p = points[flat];
        p.coords.resize(grid.size());
        p.config = base;
        std::size_t rest = flat;
        for (std::size_t a = grid.size(); a-- > 0;) {
            const auto& values = grid[a].values;
            p.coords[a] = values[rest % values.size()];
            rest /= values.size();
            set_field(p.config, grid[a].field, p.coords[a]);
        }
    }

    result.points = parallel_map(total, workers, [&](std::size_t i) {
        GridPoint p = points[i];
        try {
            p.config.validate();
        } catch (const ValidationError&) {
            p.valid = false;
            return p;
        }
        p.peak = compare_coherent_incoherent(p.config).peak();
        return p;
    });

    for (std::size_t i = 0; i < total; ++i) {
        const auto& p = result.points[i];
        if (!p.peak) continue;
        const double ratio = *p.peak->ratio;
        if (!result.best) {
            result.best = i;
            continue;
        }
        const auto& incumbent = result.points[*result.best];
        const double best = *incumbent.peak->ratio;
        if (ratio > best || (ratio == best && p.coords < incumbent.coords)) result.best = i;
    }
    if (result.best) result.best_ratio = *result.points[*result.best].peak->ratio;
    return result;
}

}  // namespace otto
