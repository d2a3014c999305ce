#pragma once

#include <string>
#include <vector>

#include "uavloc/scenario.hpp"

namespace uavloc {

enum class Heading { north, east, south, west };

struct GridNodeSpec {
    std::vector<Heading> boundary_legs;
};

/// Rectangular signalized grid. Node (r, c) gets id `ids[r*cols+c]` or "r*cols+c+1".
struct GridSpec {
    int rows = 3;
    int cols = 3;
    std::vector<double> column_gaps;  // cols-1 horizontal link lengths
    std::vector<double> row_gaps;     // rows-1 vertical link lengths
    std::vector<GridNodeSpec> nodes;  // empty: every missing neighbour becomes a boundary leg
    double boundary_length = 100.0;
    int routes_per_od = 2;
    double mean_path_demand_vph = 8.0;
    std::uint64_t demand_seed = 2024;
    std::vector<int> loop_rows;  // rows whose E-W internal links carry a loop detector
    double loop_position = 25.0;
};

ScenarioInputs build_grid(const GridSpec& spec);

ScenarioInputs preset_grid(int rows, int cols);
ScenarioInputs preset_shinan18();

/// Names: "shinan18", "gridRxC" (e.g. grid3x3), "chainN".
bool is_preset_name(const std::string& name);
ScenarioInputs make_preset(const std::string& name);

}  // namespace uavloc
