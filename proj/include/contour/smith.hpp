#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace contour {

using Int = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<Int>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
/// Determinant by fraction-free elimination (square matrices only).
Int determinant(const IntMatrix& m);

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., all d >= 0.
struct SmithForm {
    IntMatrix u;
    IntMatrix v;
    IntMatrix v_inv;
    std::vector<Int> diagonal;  // min(rows, cols) entries
    std::size_t rows = 0;
    std::size_t cols = 0;
};

SmithForm smith_normal_form(const IntMatrix& a, std::size_t cols);

}  // namespace contour
