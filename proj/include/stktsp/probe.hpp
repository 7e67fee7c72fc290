#pragma once

#include "stktsp/instance.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace stktsp {

/// Supplies the realized reward or cost of a vertex when it is first visited.
using OutcomeSource = std::function<double(Vertex)>;

struct SelectedVertex {
    Vertex vertex = 0;
    double cost = 0.0;
};

/// One Selection-Process run: the eligible pool, what was picked, and the spend.
struct SelectionStep {
    double budget = 0.0;
    std::size_t need = 0;              // selections still missing before this step
    std::vector<SelectedVertex> pool;  // eligible, unselected, in cheapest-first order
    std::vector<SelectedVertex> chosen;
    double spent = 0.0;
};

struct PhaseSelectionLog {
    std::uint32_t phase = 0;
    bool virtual_phase = false;  // past the end of the plan: Process 1 only
    SelectionStep process1;
    SelectionStep process2;
};

struct ProbeTrace {
    std::vector<Vertex> visited;
    double traveled = 0.0;
    double collected = 0.0;  // reward mode: realized reward; cost mode: sum of selected costs
    std::vector<SelectedVertex> selected;
    double objective = 0.0;
    bool success = false;
    /// Number of plan phases the probe entered (0 when it stopped before the first).
    std::size_t phases_entered = 0;
    std::uint32_t stop_phase = 0;
    std::vector<PhaseSelectionLog> selection_log;
};

/// Cheapest-first selection from `pool` while the running spend stays within `budget`
/// and fewer than `need` vertices are chosen. Ties break by vertex index.
SelectionStep select_cheapest(std::vector<SelectedVertex> pool, double budget, std::size_t need);

}  // namespace stktsp
