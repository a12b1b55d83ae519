#include "eg/algebra.hpp"

#include <utility>

namespace eg {

namespace {

IntMatrix identity(std::size_t n)
{
    IntMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

// row_i += k * row_j
void add_row(IntMatrix& m, std::size_t i, std::size_t j, const BigInt& k)
{
    for (std::size_t c = 0; c < m[i].size(); ++c)
        m[i][c] += k * m[j][c];
}

void add_col(IntMatrix& m, std::size_t i, std::size_t j, const BigInt& k)
{
    for (auto& row : m)
        row[i] += k * row[j];
}

void swap_cols(IntMatrix& m, std::size_t i, std::size_t j)
{
    for (auto& row : m)
        std::swap(row[i], row[j]);
}

} // namespace

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b)
{
    const std::size_t n = a.size();
    const std::size_t k = b.size();
    const std::size_t m = k ? b[0].size() : 0;
    IntMatrix out(n, std::vector<BigInt>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (a[i][t] != 0)
                for (std::size_t j = 0; j < m; ++j)
                    out[i][j] += a[i][t] * b[t][j];
    return out;
}

SmithForm smith_normal_form(const IntMatrix& m, std::size_t rows, std::size_t cols)
{
    SmithForm s{identity(rows), m, identity(cols)};
    IntMatrix& D = s.D;
    D.resize(rows);
    for (auto& row : D)
        row.resize(cols, 0);

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (D[i][j] != 0 && (pi == rows || abs(D[i][j]) < abs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows)
                return s;
            std::swap(D[t], D[pi]);
            std::swap(s.U[t], s.U[pi]);
            swap_cols(D, t, pj);
            swap_cols(s.V, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (D[i][t] == 0)
                    continue;
                const BigInt q = D[i][t] / D[t][t];
                add_row(D, i, t, -q);
                add_row(s.U, i, t, -q);
                clean = clean && D[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (D[t][j] == 0)
                    continue;
                const BigInt q = D[t][j] / D[t][t];
                add_col(D, j, t, -q);
                add_col(s.V, j, t, -q);
                clean = clean && D[t][j] == 0;
            }
            if (!clean)
                continue;

            // Enforce divisibility by folding an offending row into the pivot row.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols && divides; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(D, t, i, 1);
                        add_row(s.U, t, i, 1);
                        divides = false;
                    }
            if (divides)
                break;
        }
        if (D[t][t] < 0) {
            for (auto& v : D[t])
                v = -v;
            for (auto& v : s.U[t])
                v = -v;
        }
    }
    return s;
}

} // namespace eg
