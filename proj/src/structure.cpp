#include "philoop/structure.hpp"

#include "philoop/errors.hpp"

namespace philoop {

namespace {

Vector unit(std::size_t n, std::size_t i)
{
    Vector v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
}

Vector add(Vector a, const Vector &b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

bool is_zero(const Vector &v)
{
    for (const auto &x : v)
        if (!x.is_zero())
            return false;
    return true;
}

std::string triple(const std::vector<std::string> &b, std::size_t i, std::size_t j, std::size_t k)
{
    return "(" + b[i] + ", " + b[j] + ", " + b[k] + ")";
}

std::optional<std::string> check_shapes(std::size_t n, const std::vector<std::vector<Vector>> &table, const Matrix &form,
                                        const char *what)
{
    if (n == 0)
        return std::string("empty basis");
    if (table.size() != n)
        return std::string(what) + " table has wrong number of rows";
    for (const auto &row : table) {
        if (row.size() != n)
            return std::string(what) + " table has wrong number of columns";
        for (const auto &v : row)
            if (v.size() != n)
                return std::string(what) + " entry has wrong length";
    }
    if (form.size() != n)
        return std::string("form has wrong shape");
    for (const auto &row : form)
        if (row.size() != n)
            return std::string("form has wrong shape");
    return std::nullopt;
}

} // namespace

Vector LieData::lie(const Vector &a, const Vector &b) const
{
    Vector r(dim(), Scalar(0));
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (b[j].is_zero())
                continue;
            Scalar c = a[i] * b[j];
            for (std::size_t k = 0; k < dim(); ++k)
                r[k] += c * bracket[i][j][k];
        }
    }
    return r;
}

Scalar LieData::pairing(const Vector &a, const Vector &b) const
{
    Scalar s(0);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            s += a[i] * form[i][j] * b[j];
    return s;
}

std::optional<std::string> LieData::violation() const
{
    const std::size_t n = dim();
    if (auto e = check_shapes(n, bracket, form, "bracket"))
        return e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (form[i][j] != form[j][i])
                return "form symmetry fails at (" + basis[i] + ", " + basis[j] + ")";
            if (!is_zero(add(bracket[i][j], bracket[j][i])))
                return "antisymmetry fails at [" + basis[i] + ", " + basis[j] + "]";
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vector a = unit(n, i), b = unit(n, j), c = unit(n, k);
                Vector jac = add(add(lie(a, lie(b, c)), lie(b, lie(c, a))), lie(c, lie(a, b)));
                if (!is_zero(jac))
                    return "Jacobi identity fails at " + triple(basis, i, j, k);
                if (pairing(lie(a, b), c) != pairing(a, lie(b, c)))
                    return "form invariance ([a,b],c) = (a,[b,c]) fails at " + triple(basis, i, j, k);
            }
    return std::nullopt;
}

void LieData::validate() const
{
    if (auto v = violation())
        throw ValidationError("invalid Lie data: " + *v);
}

Vector NovikovData::mul(const Vector &a, const Vector &b) const
{
    Vector r(dim(), Scalar(0));
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (b[j].is_zero())
                continue;
            Scalar c = a[i] * b[j];
            for (std::size_t k = 0; k < dim(); ++k)
                r[k] += c * product[i][j][k];
        }
    }
    return r;
}

Scalar NovikovData::pairing(const Vector &a, const Vector &b) const
{
    Scalar s(0);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            s += a[i] * form[i][j] * b[j];
    return s;
}

std::optional<std::string> NovikovData::violation() const
{
    const std::size_t n = dim();
    if (auto e = check_shapes(n, product, form, "product"))
        return e;
    std::vector<int> idx;
    for (std::size_t i = 0; i < n; ++i)
        idx.push_back(static_cast<int>(i));
    BasisProduct basis_mul = [this](int i, int j) {
        SparseVec out;
        for (std::size_t k = 0; k < dim(); ++k)
            if (!product[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][k].is_zero())
                out.emplace(static_cast<int>(k), product[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][k]);
        return out;
    };
    if (auto v = novikov_identity_violation(basis_mul, idx))
        return v;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (form[i][j] != form[j][i])
                return "form symmetry fails at (" + basis[i] + ", " + basis[j] + ")";
            for (std::size_t k = 0; k < n; ++k) {
                Vector a = unit(n, i), b = unit(n, j), c = unit(n, k);
                if (pairing(mul(a, b), c) != pairing(a, mul(b, c)))
                    return "form condition <ab,c> = <a,bc> fails at " + triple(basis, i, j, k);
                if (pairing(mul(a, b), c) != pairing(mul(b, a), c))
                    return "form condition <ab,c> = <ba,c> fails at " + triple(basis, i, j, k);
            }
        }
    return std::nullopt;
}

void NovikovData::validate() const
{
    if (auto v = violation())
        throw ValidationError("invalid Novikov data: " + *v);
}

std::optional<std::string> novikov_identity_violation(const BasisProduct &mul, std::span<const int> indices)
{
    auto times = [&](const SparseVec &u, const SparseVec &v) {
        SparseVec r;
        for (const auto &[i, a] : u)
            for (const auto &[j, b] : v)
                for (const auto &[k, c] : mul(i, j)) {
                    auto &slot = r[k];
                    slot += a * b * c;
                    if (slot.is_zero())
                        r.erase(k);
                }
        return r;
    };
    auto minus = [](SparseVec u, const SparseVec &v) {
        for (const auto &[k, c] : v) {
            auto &slot = u[k];
            slot -= c;
            if (slot.is_zero())
                u.erase(k);
        }
        return u;
    };
    for (int i : indices)
        for (int j : indices)
            for (int k : indices) {
                SparseVec a{{i, Scalar(1)}}, b{{j, Scalar(1)}}, c{{k, Scalar(1)}};
                SparseVec lhs = minus(times(times(a, b), c), times(a, times(b, c)));
                SparseVec rhs = minus(times(times(b, a), c), times(b, times(a, c)));
                if (lhs != rhs)
                    return "left-symmetry (ab)c - a(bc) = (ba)c - b(ac) fails at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ", " + std::to_string(k) + ")";
                if (times(times(a, b), c) != times(times(a, c), b))
                    return "right-commutativity (ab)c = (ac)b fails at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ", " + std::to_string(k) + ")";
            }
    return std::nullopt;
}

namespace catalog {

namespace {

std::vector<std::vector<Vector>> zero_table(std::size_t n)
{
    return std::vector<std::vector<Vector>>(n, std::vector<Vector>(n, Vector(n, Scalar(0))));
}

} // namespace

LieData sl2()
{
    LieData g;
    g.basis = {"e", "f", "h"};
    g.bracket = zero_table(3);
    enum { E, F, H };
    g.bracket[E][F][H] = 1;
    g.bracket[F][E][H] = -1;
    g.bracket[H][E][E] = 2;
    g.bracket[E][H][E] = -2;
    g.bracket[H][F][F] = -2;
    g.bracket[F][H][F] = 2;
    g.form = Matrix(3, Vector(3, Scalar(0)));
    g.form[E][F] = g.form[F][E] = 1;
    g.form[H][H] = 2;
    return g;
}

LieData gl2()
{
    // E_ij with [E_ij, E_kl] = d_jk E_il - d_li E_kj and the trace form.
    LieData g;
    g.basis = {"E11", "E12", "E21", "E22"};
    auto idx = [](int i, int j) { return static_cast<std::size_t>(2 * i + j); };
    g.bracket = zero_table(4);
    g.form = Matrix(4, Vector(4, Scalar(0)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    auto &v = g.bracket[idx(i, j)][idx(k, l)];
                    if (j == k)
                        v[idx(i, l)] += Scalar(1);
                    if (l == i)
                        v[idx(k, j)] -= Scalar(1);
                    if (j == k && i == l)
                        g.form[idx(i, j)][idx(k, l)] = Scalar(1);
                }
    return g;
}

LieData abelian(std::size_t n, Matrix form)
{
    LieData g;
    for (std::size_t i = 0; i < n; ++i)
        g.basis.push_back(n == 1 ? "a" : "a" + std::to_string(i + 1));
    g.bracket = zero_table(n);
    g.form = std::move(form);
    return g;
}

NovikovData novikov_line(const Scalar &k, const Scalar &form)
{
    NovikovData A;
    A.basis = {"a"};
    A.product = {{Vector{k}}};
    A.form = {{form}};
    return A;
}

NovikovData novikov_zero(Matrix form)
{
    NovikovData A;
    for (std::size_t i = 0; i < form.size(); ++i)
        A.basis.push_back("a" + std::to_string(i + 1));
    A.product = zero_table(form.size());
    A.form = std::move(form);
    return A;
}

Matrix sl2_chevalley()
{
    Matrix m(3, Vector(3, Scalar(0)));
    m[1][0] = -1; // e -> -f
    m[0][1] = -1; // f -> -e
    m[2][2] = -1; // h -> -h
    return m;
}

Matrix sl2_torus(const Scalar &t)
{
    Matrix m(3, Vector(3, Scalar(0)));
    m[0][0] = t;
    m[1][1] = t.inverse();
    m[2][2] = 1;
    return m;
}

} // namespace catalog

} // namespace philoop
