#include "randassign/greedy.hpp"

#include <algorithm>

namespace randassign {

GreedyTrace greedy_assign(const CostMatrix& matrix) {
    const int n = matrix.size();
    GreedyTrace trace;
    trace.permutation.mapping.resize(n);
    trace.step_values.resize(n);

    std::vector<char> column_used(n, 0);
    for (int i = 0; i < n; ++i) {
        int best_col = -1;
        double best = 0.0;
        for (int j = 0; j < n; ++j) {
            if (column_used[j]) continue;
            if (best_col == -1 || matrix(i, j) > best) {
                best = matrix(i, j);
                best_col = j;
            }
        }
        column_used[best_col] = 1;
        trace.permutation.mapping[i] = best_col;
        trace.step_values[i] = best;
        trace.total += best;
    }
    return trace;
}

double row_max_sum(const CostMatrix& matrix) {
    const int n = matrix.size();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double row_max = matrix(i, 0);
        for (int j = 1; j < n; ++j) row_max = std::max(row_max, matrix(i, j));
        total += row_max;
    }
    return total;
}

}  // namespace randassign
