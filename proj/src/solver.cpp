#include "randassign/solver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace randassign {

CostMatrix::CostMatrix(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
    entries_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

CostMatrix::CostMatrix(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("entry count does not match n*n");
    }
    for (double v : entries_) {
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
    }
}

bool Permutation::is_bijection() const {
    const int n = static_cast<int>(mapping.size());
    std::vector<char> seen(n, 0);
    for (int v : mapping) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return n > 0;
}

double evaluate(const CostMatrix& matrix, const Permutation& permutation) {
    if (static_cast<int>(permutation.mapping.size()) != matrix.size() ||
        !permutation.is_bijection()) {
        throw std::invalid_argument("permutation is not a bijection on {0..n-1}");
    }
    double total = 0.0;
    for (int i = 0; i < matrix.size(); ++i) {
        total += matrix(i, permutation.mapping[i]);
    }
    return total;
}

namespace {

// Shortest augmenting path with dual potentials on a dense minimization
// instance. Row duals start at the row minima, which keeps the initial
// reduced costs nonnegative. Returns the row -> column assignment.
std::vector<int> solve_min_core(const CostMatrix& matrix) {
    const int n = matrix.size();
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n, 0.0), v(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        double row_min = matrix(i, 0);
        for (int j = 1; j < n; ++j) row_min = std::min(row_min, matrix(i, j));
        u[i] = row_min;
    }

    // match[j] = row currently assigned to column j; column n is the virtual
    // start of each augmenting path.
    std::vector<int> match(n + 1, -1);
    std::vector<double> min_reduced(n + 1);
    std::vector<int> predecessor(n + 1);
    std::vector<char> used(n + 1);

    for (int row = 0; row < n; ++row) {
        match[n] = row;
        int j0 = n;
        std::fill(min_reduced.begin(), min_reduced.end(), inf);
        std::fill(used.begin(), used.end(), char{0});
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = -1;
            for (int j = 0; j < n; ++j) {
                if (used[j]) continue;
                const double reduced = matrix(i0, j) - u[i0] - v[j];
                if (reduced < min_reduced[j]) {
                    min_reduced[j] = reduced;
                    predecessor[j] = j0;
                }
                if (min_reduced[j] < delta) {
                    delta = min_reduced[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_reduced[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != -1);
        // Walk the path backwards, flipping matched edges.
        while (j0 != n) {
            const int j1 = predecessor[j0];
            match[j0] = match[j1];
            j0 = j1;
        }
    }

    std::vector<int> assignment(n, -1);
    for (int j = 0; j < n; ++j) assignment[match[j]] = j;
    return assignment;
}

}  // namespace

AssignmentResult solve(const CostMatrix& matrix, Sense sense) {
    std::vector<int> mapping;
    if (sense == Sense::Minimize) {
        mapping = solve_min_core(matrix);
    } else {
        CostMatrix negated(matrix.size());
        for (int i = 0; i < matrix.size(); ++i) {
            for (int j = 0; j < matrix.size(); ++j) negated(i, j) = -matrix(i, j);
        }
        mapping = solve_min_core(negated);
    }
    AssignmentResult result;
    result.permutation.mapping = std::move(mapping);
    result.value = evaluate(matrix, result.permutation);
    result.sense = sense;
    return result;
}

AssignmentResult brute_force(const CostMatrix& matrix, Sense sense) {
    const int n = matrix.size();
    if (n > 9) throw std::length_error("brute_force enumerates n! permutations; n must be <= 9");

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    AssignmentResult best;
    best.sense = sense;
    best.permutation.mapping = perm;
    bool first = true;
    do {
        double value = 0.0;
        for (int i = 0; i < n; ++i) value += matrix(i, perm[i]);
        // Strict improvement only: next_permutation enumerates in
        // lexicographic order, so ties keep the smallest permutation.
        const bool better = sense == Sense::Maximize ? value > best.value : value < best.value;
        if (first || better) {
            best.value = value;
            best.permutation.mapping = perm;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

CostMatrix load_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            std::string_view cell(line.data() + pos,
                                  (comma == std::string::npos ? line.size() : comma) - pos);
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc() || ptr != cell.data() + cell.size()) {
                throw std::invalid_argument("matrix CSV: invalid decimal '" + std::string(cell) +
                                            "'");
            }
            row.push_back(value);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("matrix CSV: no rows");
    const int n = static_cast<int>(rows.size());
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) {
            throw std::invalid_argument("matrix CSV: matrix must be square (n rows of n values)");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return CostMatrix(n, std::move(entries));
}

CostMatrix load_matrix_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open matrix file: " + path);
    return load_matrix_csv(in);
}

}  // namespace randassign
