#pragma once

#include "rational.hpp"

#include <vector>

namespace crn {

// Dense row-major rational matrix. Small sizes only.
using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix zeros(int rows, int cols);
RatMatrix transpose(const RatMatrix& a);
RatMatrix submatrix(const RatMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols);
int num_cols(const RatMatrix& a);

// Fraction-free (Bareiss) elimination on the row-scaled integer copy.
int rank(const RatMatrix& a);
Rational determinant(const RatMatrix& a);

struct Rref {
    RatMatrix rows;           // only the non-zero rows
    std::vector<int> pivots;  // pivot column of each row, ascending
};
Rref rref(const RatMatrix& a);

// Rows form a basis of {x : a x = 0}, each row already in reduced echelon form.
RatMatrix null_space(const RatMatrix& a);

}  // namespace crn
