#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace randassign {

enum class Sense { Maximize, Minimize };

/// Square matrix of assignment weights, row-major, entry (i, j) in row i,
/// column j. All entries must stay finite.
class CostMatrix {
public:
    CostMatrix() = default;

    /// n x n zero matrix, n >= 1.
    explicit CostMatrix(int n);

    /// Adopts row-major entries; validates the size and finiteness.
    CostMatrix(int n, std::vector<double> entries);

    int size() const { return n_; }
    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    double& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

private:
    int n_ = 0;
    std::vector<double> entries_;
};

/// Row-to-column map: mapping[i] is the column assigned to row i (0-based).
struct Permutation {
    std::vector<int> mapping;

    bool is_bijection() const;
};

struct AssignmentResult {
    Permutation permutation;
    double value = 0.0;
    Sense sense = Sense::Maximize;
};

/// Exact optimal assignment by shortest augmenting paths with dual
/// potentials (dense, O(n^3)). Maximize runs the minimizing core on the
/// negated matrix, so solve(A, Maximize).value == -solve(-A, Minimize).value
/// exactly.
AssignmentResult solve(const CostMatrix& matrix, Sense sense);

/// Exact optimum by enumerating all n! permutations; n <= 9. Ties resolve to
/// the lexicographically smallest optimal permutation.
AssignmentResult brute_force(const CostMatrix& matrix, Sense sense);

/// S(pi) = sum_i entries[i][pi(i)], summed in row order.
/// Throws std::invalid_argument if the permutation is not a bijection of
/// matching length.
double evaluate(const CostMatrix& matrix, const Permutation& permutation);

/// Reads a square matrix from CSV: n rows of n comma-separated decimals.
CostMatrix load_matrix_csv(std::istream& in);
CostMatrix load_matrix_csv_file(const std::string& path);

}  // namespace randassign
