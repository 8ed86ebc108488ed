#include "linalg.hpp"

#include <utility>

namespace crn {

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

// Multiply every row by the lcm of its denominators. Returns the product of
// the scale factors so determinants can be recovered.
IntMatrix integer_rows(const RatMatrix& a, Integer* scale_product) {
    IntMatrix out;
    out.reserve(a.size());
    Integer prod = 1;
    for (const auto& row : a) {
        Integer l = 1;
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> r;
        r.reserve(row.size());
        for (const auto& x : row) r.push_back(Integer(x.get_num() * (l / x.get_den())));
        prod *= l;
        out.push_back(std::move(r));
    }
    if (scale_product) *scale_product = prod;
    return out;
}

// Bareiss forward elimination in place; returns the rank and the sign of the
// row permutation used. After the call m[r-1][pivot] holds the last leading
// principal minor of the pivot columns.
int bareiss(IntMatrix& m, int* swap_sign, Integer* last_pivot) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    Integer prev = 1;
    int r = 0;
    int sgn = 1;
    for (int k = 0; k < cols && r < rows; ++k) {
        int p = r;
        while (p < rows && m[p][k] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(m[p], m[r]);
            sgn = -sgn;
        }
        for (int i = r + 1; i < rows; ++i) {
            for (int j = k + 1; j < cols; ++j) {
                Integer t = m[r][k] * m[i][j] - m[i][k] * m[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(t);
            }
            m[i][k] = 0;
        }
        prev = m[r][k];
        ++r;
    }
    if (swap_sign) *swap_sign = sgn;
    if (last_pivot) *last_pivot = prev;
    return r;
}

}  // namespace

RatMatrix zeros(int rows, int cols) {
    return RatMatrix(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols)));
}

int num_cols(const RatMatrix& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

RatMatrix transpose(const RatMatrix& a) {
    const int r = static_cast<int>(a.size());
    const int c = num_cols(a);
    RatMatrix t = zeros(c, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) t[j][i] = a[i][j];
    return t;
}

RatMatrix submatrix(const RatMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    RatMatrix s = zeros(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s[i][j] = a[rows[i]][cols[j]];
    return s;
}

int rank(const RatMatrix& a) {
    if (a.empty()) return 0;
    IntMatrix m = integer_rows(a, nullptr);
    return bareiss(m, nullptr, nullptr);
}

Rational determinant(const RatMatrix& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return Rational(1);
    Integer scale;
    IntMatrix m = integer_rows(a, &scale);
    int sgn = 1;
    Integer last;
    int r = bareiss(m, &sgn, &last);
    if (r < n) return Rational(0);
    Rational d(Integer(sgn) * last, scale);
    d.canonicalize();
    return d;
}

Rref rref(const RatMatrix& a) {
    RatMatrix m = a;
    const int rows = static_cast<int>(m.size());
    const int cols = num_cols(m);
    Rref out;
    int r = 0;
    for (int k = 0; k < cols && r < rows; ++k) {
        int p = r;
        while (p < rows && m[p][k] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][k];
        for (int j = k; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][k] == 0) continue;
            Rational f = m[i][k];
            for (int j = k; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(k);
        ++r;
    }
    m.resize(static_cast<std::size_t>(r));
    out.rows = std::move(m);
    return out;
}

RatMatrix null_space(const RatMatrix& a) {
    const int cols = num_cols(a);
    Rref e = rref(a);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : e.pivots) is_pivot[p] = true;
    RatMatrix basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(static_cast<std::size_t>(cols));
        x[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace crn
