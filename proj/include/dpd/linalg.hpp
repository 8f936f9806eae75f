#pragma once

#include <vector>

#include "dpd/rational.hpp"

namespace dpd {

// Sparse row over dense integer column ids, kept sorted by column.
using SparseRow = std::vector<std::pair<int, Rat>>;

void normalize_row(SparseRow& r);

// Incremental exact Gaussian elimination with pivoting by column order.
class RowReducer {
public:
    // reduces the row against the current pivots; if a remainder survives it
    // becomes a new pivot and the call returns true
    bool add_row(SparseRow row);
    int rank() const { return static_cast<int>(pivots_.size()); }
    // unique reduced echelon basis of the row span, sorted by pivot column
    std::vector<SparseRow> reduced_basis() const;

private:
    std::vector<SparseRow> pivots_; // each has leading coefficient 1
    std::vector<int> pivot_cols_;
};

int rank_of_rows(const std::vector<SparseRow>& rows);

// Dimension of K^ncols / span(rows).  Rows with at most two entries are
// handled by a signed union-find; general rows fall back to elimination.
long quotient_dimension(long ncols, const std::vector<SparseRow>& rows);

// Reduced echelon basis of the solution space of rows * x = 0 over columns
// 0..ncols-1.
std::vector<SparseRow> nullspace_basis(int ncols, const std::vector<SparseRow>& rows);

} // namespace dpd
