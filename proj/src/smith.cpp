#include "contour/smith.hpp"

#include <stdexcept>

namespace contour {

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty()) return {};
    const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
    IntMatrix out(a.size(), std::vector<Int>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Int determinant(const IntMatrix& in) {
    // Bareiss elimination keeps every intermediate integral
    IntMatrix m = in;
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

SmithForm smith_normal_form(const IntMatrix& input, std::size_t cols) {
    const std::size_t rows = input.size();
    for (const auto& r : input)
        if (r.size() != cols) throw std::invalid_argument("relation matrix rows have inconsistent length");
    IntMatrix a = input;
    SmithForm f;
    f.rows = rows;
    f.cols = cols;
    f.u = identity_matrix(rows);
    f.v = identity_matrix(cols);
    f.v_inv = identity_matrix(cols);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(f.u[i], f.u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& r : a) std::swap(r[i], r[j]);
        for (auto& r : f.v) std::swap(r[i], r[j]);
        std::swap(f.v_inv[i], f.v_inv[j]);
    };
    // row i += q * row t
    auto add_row = [&](std::size_t i, std::size_t t, const Int& q) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] += q * a[t][j];
        for (std::size_t j = 0; j < rows; ++j) f.u[i][j] += q * f.u[t][j];
    };
    // col j += q * col t
    auto add_col = [&](std::size_t j, std::size_t t, const Int& q) {
        for (std::size_t i = 0; i < rows; ++i) a[i][j] += q * a[i][t];
        for (std::size_t i = 0; i < cols; ++i) f.v[i][j] += q * f.v[i][t];
        for (std::size_t i = 0; i < cols; ++i) f.v_inv[t][i] -= q * f.v_inv[j][i];
    };

    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // pivot: smallest nonzero magnitude in the trailing block
            std::size_t pr = rows, pc = cols;
            Int best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
                        best = abs(a[i][j]);
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) break;
            if (pr != t) swap_rows(t, pr);
            if (pc != t) swap_cols(t, pc);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                add_row(i, t, -(a[i][t] / a[t][t]));
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                add_col(j, t, -(a[t][j] / a[t][t]));
                clean = clean && a[t][j] == 0;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            for (auto& x : f.u[t]) x = -x;
        }
    }
    f.diagonal.resize(n);
    for (std::size_t t = 0; t < n; ++t) f.diagonal[t] = a[t][t];
    return f;
}

}  // namespace contour
