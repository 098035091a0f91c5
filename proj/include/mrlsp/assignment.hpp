#pragma once

#include <stdexcept>
#include <vector>

namespace mrlsp {

struct InfeasibleAssignmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimum-total-cost injective assignment of rows (robots) to columns
// (subgoals). Entries may be +infinity (forbidden pair). Rectangular
// matrices are padded internally; with more rows than columns the surplus
// rows come back unassigned (-1). Among equal-cost optima the
// lexicographically smallest row-to-column list is returned. Throws
// InfeasibleAssignmentError when no finite assignment covers the rows.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

}  // namespace mrlsp
