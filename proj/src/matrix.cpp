#include "philoop/matrix.hpp"

#include <stdexcept>

namespace philoop {

Matrix identity_matrix(std::size_t n)
{
    Matrix m(n, Vector(n, Scalar(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = Scalar(1);
    return m;
}

Matrix operator*(const Matrix &a, const Matrix &b)
{
    std::size_t inner = b.size();
    std::size_t cols = inner ? b[0].size() : 0;
    Matrix r(a.size(), Vector(cols, Scalar(0)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner)
            throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero())
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                r[i][j] += a[i][k] * b[k][j];
        }
    }
    return r;
}

Vector operator*(const Matrix &a, const Vector &v)
{
    Vector r(a.size(), Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != v.size())
            throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t k = 0; k < v.size(); ++k)
            r[i] += a[i][k] * v[k];
    }
    return r;
}

Matrix matrix_power(const Matrix &m, long k)
{
    if (k < 0)
        throw std::invalid_argument("negative matrix power");
    Matrix r = identity_matrix(m.size());
    for (long i = 0; i < k; ++i)
        r = r * m;
    return r;
}

Matrix scaled(Matrix m, const Scalar &s)
{
    for (auto &row : m)
        for (auto &x : row)
            x *= s;
    return m;
}

Echelon row_reduce(std::vector<Vector> rows, std::size_t width)
{
    Echelon out;
    std::size_t r = 0;
    for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col].is_zero())
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        Scalar inv = rows[r][col].inverse();
        for (auto &x : rows[r])
            x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col].is_zero())
                continue;
            Scalar f = rows[i][col];
            for (std::size_t j = 0; j < width; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        out.pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

std::string str(const Matrix &m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m[i].size(); ++j)
            s += (j ? ", " : "") + m[i][j].str();
        s += "]";
    }
    return s + "]";
}

} // namespace philoop
