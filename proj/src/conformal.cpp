#include "philoop/conformal.hpp"

#include "philoop/errors.hpp"
#include "philoop/random.hpp"

#include <algorithm>

namespace philoop {

namespace {

// n (n-1) ... (n-k+1)
Scalar falling(int n, int k)
{
    Integer r = 1;
    for (int i = 0; i < k; ++i)
        r *= n - i;
    return Scalar(Rational(r));
}

std::string coef_prefix(const Scalar &c)
{
    if (c.is_one())
        return "";
    if ((-c).is_one())
        return "-";
    std::string s = c.str();
    if (s.find(' ') != std::string::npos)
        s = "(" + s + ")";
    return s + "*";
}

} // namespace

CAElement CAElement::gen(int i, const Scalar &coef, int k)
{
    CAElement e;
    e.add(k, i, coef);
    return e;
}

CAElement CAElement::central(const Scalar &coef)
{
    CAElement e;
    e.central_ = coef;
    return e;
}

CAElement CAElement::from_vector(const Vector &v, int k)
{
    CAElement e;
    for (std::size_t i = 0; i < v.size(); ++i)
        e.add(k, static_cast<int>(i), v[i]);
    return e;
}

int CAElement::max_degree() const
{
    int d = 0;
    for (const auto &[key, c] : terms_)
        d = std::max(d, key.first);
    return d;
}

void CAElement::add(int k, int i, const Scalar &c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(Key{k, i}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void CAElement::add_central(const Scalar &c) { central_ += c; }

CAElement &CAElement::operator+=(const CAElement &o)
{
    for (const auto &[key, c] : o.terms_)
        add(key.first, key.second, c);
    central_ += o.central_;
    return *this;
}

CAElement &CAElement::operator-=(const CAElement &o)
{
    for (const auto &[key, c] : o.terms_)
        add(key.first, key.second, -c);
    central_ -= o.central_;
    return *this;
}

CAElement &CAElement::operator*=(const Scalar &s)
{
    if (s.is_zero()) {
        terms_.clear();
        central_ = Scalar(0);
        return *this;
    }
    for (auto &[key, c] : terms_)
        c *= s;
    central_ *= s;
    return *this;
}

CAElement CAElement::derivative(int times) const
{
    if (times == 0)
        return *this;
    CAElement e;
    for (const auto &[key, c] : terms_)
        e.terms_.emplace(Key{key.first + times, key.second}, c);
    return e;
}

CAElement CAElement::divided_derivative(int j) const
{
    return derivative(j) * (Scalar(1) / factorial(j));
}

Vector CAElement::component(int k, std::size_t dim) const
{
    Vector v(dim, Scalar(0));
    for (const auto &[key, c] : terms_)
        if (key.first == k)
            v[static_cast<std::size_t>(key.second)] = c;
    return v;
}

std::string CAElement::str(const std::vector<std::string> &names, const std::string &central_name) const
{
    std::string out;
    auto append = [&](const Scalar &c, const std::string &body) {
        std::string piece = coef_prefix(c) + body;
        if (out.empty())
            out = piece;
        else if (piece[0] == '-')
            out += " - " + piece.substr(1);
        else
            out += " + " + piece;
    };
    for (const auto &[key, c] : terms_) {
        std::string body = key.first == 0 ? "" : (key.first == 1 ? "d " : "d^" + std::to_string(key.first) + " ");
        append(c, body + names.at(static_cast<std::size_t>(key.second)));
    }
    if (!central_.is_zero())
        append(central_, central_name);
    return out.empty() ? "0" : out;
}

ConformalAlgebra::ConformalAlgebra(std::vector<std::string> gens, std::optional<std::string> central,
                                   std::string family)
    : gens_(std::move(gens)), central_(std::move(central)), family_(std::move(family))
{
}

std::optional<int> ConformalAlgebra::index_of(const std::string &name) const
{
    auto it = std::find(gens_.begin(), gens_.end(), name);
    if (it == gens_.end())
        return std::nullopt;
    return static_cast<int>(it - gens_.begin());
}

void ConformalAlgebra::set(int a, int b, int n, CAElement value)
{
    if (n < 0)
        throw ValidationError("negative product index");
    if (!central_ && !value.central_part().is_zero())
        throw ValidationError("central term in an algebra without a central element");
    auto &row = table_[{a, b}];
    if (row.size() <= static_cast<std::size_t>(n))
        row.resize(static_cast<std::size_t>(n) + 1);
    row[static_cast<std::size_t>(n)] = std::move(value);
}

CAElement ConformalAlgebra::table(int a, int b, int n) const
{
    auto it = table_.find({a, b});
    if (n < 0 || it == table_.end() || static_cast<std::size_t>(n) >= it->second.size())
        return {};
    return it->second[static_cast<std::size_t>(n)];
}

int ConformalAlgebra::support() const
{
    int s = -1;
    for (const auto &[key, row] : table_)
        for (std::size_t n = 0; n < row.size(); ++n)
            if (!row[n].is_zero())
                s = std::max(s, static_cast<int>(n));
    return s;
}

CAElement ConformalAlgebra::nprod(const CAElement &u, const CAElement &v, int n) const
{
    CAElement out;
    if (n < 0)
        return out;
    for (const auto &[ku, alpha] : u.terms()) {
        auto [k, a] = ku;
        if (k > n)
            continue;
        // (d^k a)_n w = (-1)^k [n]_k a_{n-k} w
        Scalar left = falling(n, k) * Scalar(k % 2 ? -1 : 1) * alpha;
        int m = n - k;
        for (const auto &[kv, beta] : v.terms()) {
            auto [l, b] = kv;
            // a_m (d^l b) = sum_i C(l,i) [m]_i d^{l-i} (a_{m-i} b)
            for (int i = 0; i <= std::min(l, m); ++i) {
                CAElement t = table(a, b, m - i);
                if (t.is_zero())
                    continue;
                out += t.derivative(l - i) * (left * beta * binomial(l, i) * falling(m, i));
            }
        }
    }
    return out;
}

std::string ConformalAlgebra::str(const CAElement &u) const { return u.str(gens_, central_.value_or("c")); }

namespace {

ConformalAlgebra current_from(const LieData &g)
{
    ConformalAlgebra C(g.basis, "c", "current");
    const int n = static_cast<int>(g.dim());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            C.set(a, b, 0, CAElement::from_vector(g.bracket[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]));
            C.set(a, b, 1, CAElement::central(g.form[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]));
        }
    return C;
}

ConformalAlgebra novikov_from(const NovikovData &A)
{
    ConformalAlgebra C(A.basis, "c", "novikov");
    const auto n = A.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Vector ab = A.product[a][b], ba = A.product[b][a];
            Vector sym(n, Scalar(0));
            for (std::size_t k = 0; k < n; ++k)
                sym[k] = ab[k] + ba[k];
            int ia = static_cast<int>(a), ib = static_cast<int>(b);
            C.set(ia, ib, 0, CAElement::from_vector(ba, 1));
            C.set(ia, ib, 1, CAElement::from_vector(sym));
            C.set(ia, ib, 3, CAElement::central(A.form[a][b] * Scalar::rational(1, 2)));
        }
    return C;
}

} // namespace

ConformalAlgebra build_current(const LieData &g)
{
    g.validate();
    return current_from(g);
}

ConformalAlgebra build_current_unchecked(const LieData &g) { return current_from(g); }

ConformalAlgebra build_virasoro()
{
    ConformalAlgebra C({"L"}, "c", "virasoro");
    C.set(0, 0, 0, CAElement::gen(0, Scalar(1), 1));
    C.set(0, 0, 1, CAElement::gen(0, Scalar(2)));
    C.set(0, 0, 3, CAElement::central(Scalar::rational(1, 2)));
    return C;
}

ConformalAlgebra build_novikov(const NovikovData &A)
{
    A.validate();
    return novikov_from(A);
}

ConformalAlgebra build_novikov_unchecked(const NovikovData &A) { return novikov_from(A); }

CAElement skew_product(const ConformalAlgebra &C, const CAElement &u, const CAElement &v, int n)
{
    // v_{n+j} u vanishes once n + j exceeds the table support shifted by the
    // d-degrees that the left rule can absorb.
    int bound = C.support() + u.max_degree() + v.max_degree();
    CAElement out;
    for (int j = 0; n + j <= bound; ++j) {
        CAElement t = C.nprod(v, u, n + j).divided_derivative(j);
        out -= t * Scalar((j + n) % 2 ? -1 : 1);
    }
    return out;
}

namespace {

CAElement random_element(Rng &rng, const ConformalAlgebra &C)
{
    CAElement e;
    long terms = rng.uniform(1, 2);
    for (long t = 0; t < terms; ++t)
        e.add(static_cast<int>(rng.uniform(0, 2)), static_cast<int>(rng.uniform(0, static_cast<long>(C.dim()) - 1)),
              Scalar(rng.small_rational()));
    if (C.central() && rng.uniform(0, 3) == 0)
        e.add_central(Scalar(rng.small_rational()));
    return e;
}

CAElement jacobi_lhs(const ConformalAlgebra &C, const CAElement &a, const CAElement &b, const CAElement &c, int m,
                     int n)
{
    return C.nprod(a, C.nprod(b, c, n), m);
}

CAElement jacobi_rhs(const ConformalAlgebra &C, const CAElement &a, const CAElement &b, const CAElement &c, int m,
                     int n)
{
    CAElement r = C.nprod(b, C.nprod(a, c, m), n);
    for (int j = 0; j <= m; ++j)
        r += C.nprod(C.nprod(a, b, j), c, m + n - j) * binomial(m, j);
    return r;
}

} // namespace

Report check_axioms(const ConformalAlgebra &C, int samples, std::uint64_t seed)
{
    Report rep;
    const int dim = static_cast<int>(C.dim());
    const int S = C.support();
    auto show = [&](const CAElement &e) { return C.str(e); };

    // Every stored product lies below an explicit bound, so the products
    // vanish for large n; report the bound.
    rep.pass("C0_finite_support", {{"max_n", S}});

    {
        nlohmann::ordered_json witness;
        for (int a = 0; a < dim && witness.is_null(); ++a)
            for (int b = 0; b < dim && witness.is_null(); ++b)
                for (int n = 0; n <= S + 1 && witness.is_null(); ++n) {
                    CAElement u = CAElement::gen(a), v = CAElement::gen(b);
                    CAElement lhs = C.nprod(u, v, n), rhs = skew_product(C, u, v, n);
                    if (lhs != rhs)
                        witness = {{"a", C.gens()[a]}, {"b", C.gens()[b]}, {"n", n}, {"lhs", show(lhs)},
                                   {"rhs", show(rhs)}};
                }
        if (witness.is_null())
            rep.pass("C2_skew_symmetry");
        else
            rep.fail("C2_skew_symmetry", witness);
    }

    {
        nlohmann::ordered_json witness;
        for (int a = 0; a < dim && witness.is_null(); ++a)
            for (int b = 0; b < dim && witness.is_null(); ++b)
                for (int n = 0; n <= S + 2 && witness.is_null(); ++n) {
                    CAElement u = CAElement::gen(a), db = CAElement::gen(b, Scalar(1), 1);
                    CAElement lhs = C.nprod(u, db, n), rhs = skew_product(C, u, db, n);
                    if (lhs != rhs)
                        witness = {{"a", C.gens()[a]}, {"b", "d " + C.gens()[b]}, {"n", n}, {"lhs", show(lhs)},
                                   {"rhs", show(rhs)}};
                }
        if (witness.is_null())
            rep.pass("right_derivation_rule");
        else
            rep.fail("right_derivation_rule", witness);
    }

    {
        nlohmann::ordered_json witness;
        int tested = 0;
        auto test = [&](const CAElement &a, const CAElement &b, const CAElement &c) {
            for (int m = 0; m <= 4 && witness.is_null(); ++m)
                for (int n = 0; n <= 4 && witness.is_null(); ++n) {
                    CAElement lhs = jacobi_lhs(C, a, b, c, m, n), rhs = jacobi_rhs(C, a, b, c, m, n);
                    if (lhs != rhs)
                        witness = {{"a", show(a)}, {"b", show(b)}, {"c", show(c)}, {"m", m},
                                   {"n", n}, {"lhs", show(lhs)}, {"rhs", show(rhs)}};
                }
            ++tested;
        };
        for (int a = 0; a < dim && witness.is_null(); ++a)
            for (int b = 0; b < dim && witness.is_null(); ++b)
                for (int c = 0; c < dim && witness.is_null(); ++c)
                    test(CAElement::gen(a), CAElement::gen(b), CAElement::gen(c));
        Rng rng(seed);
        for (int s = 0; s < samples && witness.is_null(); ++s) {
            CAElement a = random_element(rng, C), b = random_element(rng, C), c = random_element(rng, C);
            test(a, b, c);
        }
        nlohmann::ordered_json info = {{"triples", tested}, {"samples", samples}, {"seed", seed}};
        if (witness.is_null())
            rep.pass("C3_jacobi_identity", info);
        else
            rep.fail("C3_jacobi_identity", witness, info);
    }
    return rep;
}

CAElement GStructure::apply(const CAElement &u, long g) const
{
    long e = ((g % M) + M) % M;
    Matrix Rg = matrix_power(R, e);
    Scalar chig = chi.pow(e);
    CAElement out = CAElement::central(u.central_part());
    for (const auto &[key, c] : u.terms()) {
        auto [k, i] = key;
        Scalar w = c * chig.pow(k);
        for (std::size_t r = 0; r < Rg.size(); ++r)
            out.add(k, static_cast<int>(r), w * Rg[r][static_cast<std::size_t>(i)]);
    }
    return out;
}

int GStructure::chi_phi_order() const
{
    Scalar acc = chi_phi;
    for (int h = 1; h <= M; ++h) {
        if (acc.is_one())
            return h;
        acc *= chi_phi;
    }
    throw ValidationError("chi_phi(sigma) is not an M-th root of unity");
}

Report check_g_structure(const ConformalAlgebra &C, const GStructure &G, const Deformation &def)
{
    Report rep;
    const int dim = static_cast<int>(C.dim());
    if (G.M < 1 || G.R.size() != C.dim() ||
        std::any_of(G.R.begin(), G.R.end(), [&](const Vector &row) { return row.size() != C.dim(); })) {
        rep.error("group_order", "action matrix does not match the generator count");
        return rep;
    }

    {
        bool r_ok = matrix_power(G.R, G.M) == identity_matrix(C.dim());
        bool chi_ok = G.chi.pow(G.M).is_one();
        bool chi_phi_ok = G.chi_phi.pow(G.M).is_one();
        if (r_ok && chi_ok && chi_phi_ok)
            rep.pass("group_order", {{"M", G.M}});
        else
            rep.fail("group_order", {{"M", G.M},
                                     {"R^M_is_identity", r_ok},
                                     {"chi^M_is_one", chi_ok},
                                     {"chi_phi^M_is_one", chi_phi_ok}});
    }

    {
        nlohmann::ordered_json witness;
        for (long g = 1; g < G.M && witness.is_null(); ++g)
            for (int a = 0; a < dim && witness.is_null(); ++a) {
                CAElement u = CAElement::gen(a);
                CAElement lhs = G.apply(u, g).derivative();
                CAElement rhs = G.apply(u.derivative(), g) * G.chi.pow(g).inverse();
                if (lhs != rhs)
                    witness = {{"g", g}, {"a", C.gens()[a]}, {"lhs", C.str(lhs)}, {"rhs", C.str(rhs)}};
            }
        if (witness.is_null())
            rep.pass("CR1_derivation_twist");
        else
            rep.fail("CR1_derivation_twist", witness);
    }

    {
        nlohmann::ordered_json witness;
        const int S = C.support();
        for (long g = 1; g < G.M && witness.is_null(); ++g)
            for (int a = 0; a < dim && witness.is_null(); ++a)
                for (int b = 0; b < dim && witness.is_null(); ++b)
                    for (int n = 0; n <= S && witness.is_null(); ++n) {
                        CAElement u = CAElement::gen(a), v = CAElement::gen(b);
                        CAElement lhs = G.apply(C.nprod(u, v, n), g);
                        CAElement rhs = C.nprod(G.apply(u, g), G.apply(v, g), n) * G.chi.pow(-g * (n + 1));
                        if (lhs != rhs)
                            witness = {{"g", g}, {"a", C.gens()[a]}, {"b", C.gens()[b]}, {"n", n},
                                       {"lhs", C.str(lhs)}, {"rhs", C.str(rhs)}};
                    }
        if (witness.is_null())
            rep.pass("CR2_product_covariance");
        else
            rep.fail("CR2_product_covariance", witness);
    }

    // For a finite group every sum over g is finite.
    rep.pass("CR3_finiteness", {{"group", "cyclic of order " + std::to_string(G.M)}});

    {
        LaurentSeries lhs = def.p().scale_x(G.chi_phi);
        LaurentSeries rhs = def.p() * (G.chi.inverse() * G.chi_phi);
        if (lhs == rhs)
            rep.pass("character_compatibility");
        else
            rep.fail("character_compatibility",
                     {{"p", def.p().str()}, {"chi", G.chi.str()}, {"chi_phi", G.chi_phi.str()},
                      {"lhs", lhs.str()}, {"rhs", rhs.str()}});
    }
    return rep;
}

Quotient quotient_by_H(const ConformalAlgebra &C, const GStructure &G)
{
    const int h0 = G.chi_phi_order();
    const std::size_t dim = C.dim();
    if (h0 == G.M) {
        std::vector<int> kept(dim);
        for (std::size_t i = 0; i < dim; ++i)
            kept[i] = static_cast<int>(i);
        return {C, G, kept};
    }
    if (!G.chi.pow(h0).is_one())
        throw ValidationError("chi is nontrivial on the kernel of chi_phi");

    // W = (R_{h0} - I) V; H is generated by sigma^{h0}.
    Matrix Rh = matrix_power(G.R, h0);
    std::vector<Vector> rows;
    for (std::size_t j = 0; j < dim; ++j) {
        Vector w(dim, Scalar(0));
        for (std::size_t i = 0; i < dim; ++i)
            w[i] = Rh[i][j] - Scalar(i == j ? 1 : 0);
        rows.push_back(std::move(w));
    }
    Echelon E = row_reduce(std::move(rows), dim);
    std::vector<int> kept;
    for (std::size_t i = 0; i < dim; ++i)
        if (std::find(E.pivots.begin(), E.pivots.end(), i) == E.pivots.end())
            kept.push_back(static_cast<int>(i));

    auto project = [&](Vector v) {
        for (std::size_t r = 0; r < E.rows.size(); ++r) {
            Scalar c = v[E.pivots[r]];
            if (c.is_zero())
                continue;
            for (std::size_t i = 0; i < dim; ++i)
                v[i] -= c * E.rows[r][i];
        }
        Vector q;
        for (int k : kept)
            q.push_back(v[static_cast<std::size_t>(k)]);
        return q;
    };
    auto project_element = [&](const CAElement &u) {
        CAElement out = CAElement::central(u.central_part());
        for (int k = 0; k <= u.max_degree(); ++k)
            out += CAElement::from_vector(project(u.component(k, dim)), k);
        return out;
    };

    std::vector<std::string> names;
    for (int k : kept)
        names.push_back(C.gens()[static_cast<std::size_t>(k)]);
    ConformalAlgebra Q(names, C.central(), C.family() + "/H");
    const int H = G.M / h0;
    const int S = C.support();
    for (std::size_t c = 0; c < kept.size(); ++c)
        for (std::size_t d = 0; d < kept.size(); ++d)
            for (int n = 0; n <= S; ++n) {
                CAElement sum;
                for (int t = 0; t < H; ++t)
                    sum += C.nprod(G.apply(CAElement::gen(kept[c]), static_cast<long>(h0) * t), CAElement::gen(kept[d]), n);
                CAElement value = project_element(sum);
                if (!value.is_zero())
                    Q.set(static_cast<int>(c), static_cast<int>(d), n, std::move(value));
            }

    GStructure action;
    action.M = h0;
    action.chi = G.chi;
    action.chi_phi = G.chi_phi;
    action.R = Matrix(kept.size(), Vector(kept.size(), Scalar(0)));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        Vector image(dim, Scalar(0));
        for (std::size_t i = 0; i < dim; ++i)
            image[i] = G.R[i][static_cast<std::size_t>(kept[c])];
        Vector q = project(image);
        for (std::size_t r = 0; r < kept.size(); ++r)
            action.R[r][c] = q[r];
    }
    return {std::move(Q), std::move(action), std::move(kept)};
}

} // namespace philoop
