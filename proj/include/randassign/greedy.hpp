#pragma once

#include <vector>

#include "randassign/solver.hpp"

namespace randassign {

/// Record of one greedy pass: the permutation, the per-row picked values
/// L_i = X[i][pi*(i)], and their total.
struct GreedyTrace {
    Permutation permutation;
    std::vector<double> step_values;
    double total = 0.0;
};

/// Row-by-row greedy assignment: row i takes the largest entry among columns
/// not used by rows 0..i-1; ties go to the smallest column index. The total
/// is a lower bound for the exact maximum.
GreedyTrace greedy_assign(const CostMatrix& matrix);

/// Sum of row maxima — an upper bound for the exact maximum.
double row_max_sum(const CostMatrix& matrix);

}  // namespace randassign
