#include "philoop/delta.hpp"

#include "philoop/errors.hpp"

#include <algorithm>

namespace philoop {

const Scalar &CoeffTable::at(int m, int n) const
{
    if (m < window.m_lo || m > window.m_hi || n < window.n_lo || n > window.n_hi)
        throw std::out_of_range("coefficient index outside window");
    return values[static_cast<std::size_t>((m - window.m_lo) * window.cols() + (n - window.n_lo))];
}

bool CoeffTable::all_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const Scalar &s) { return s.is_zero(); });
}

DeltaSum::DeltaSum(Deformation def, std::vector<DeltaTerm> terms) : def_(std::move(def))
{
    for (auto &t : terms)
        add_term(std::move(t));
}

void DeltaSum::add_term(DeltaTerm t)
{
    if (t.lambda.is_zero())
        throw ArithmeticError("delta term with lambda = 0");
    if (t.j < 0)
        throw ArithmeticError("delta term with negative derivative order");
    auto key_less = [](const DeltaTerm &a, const DeltaTerm &b) {
        if (auto c = a.lambda <=> b.lambda; c != 0)
            return c < 0;
        return a.j < b.j;
    };
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t, key_less);
    if (it != terms_.end() && it->lambda == t.lambda && it->j == t.j) {
        it->A += t.A;
        if (it->A.is_zero())
            terms_.erase(it);
        return;
    }
    if (!t.A.is_zero())
        terms_.insert(it, std::move(t));
}

DeltaSum &DeltaSum::operator+=(const DeltaSum &o)
{
    if (o.def_.p() != def_.p())
        throw ArithmeticError("delta sums over different deformations");
    for (const auto &t : o.terms_)
        add_term(t);
    return *this;
}

LaurentSeries DeltaSum::z_coeff(int m) const
{
    // pbar(lambda^{-1} z) delta(lambda w/z) = pbar(w) delta(lambda w/z), whose
    // z^{-m-1} coefficient is lambda^{m+1} w^m p(w).
    LaurentSeries total;
    for (const auto &t : terms_) {
        LaurentSeries base = def_.p().shifted(m) * t.lambda.pow(m + 1);
        total += t.A * def_.divided_power(base, t.j);
    }
    return total;
}

Scalar DeltaSum::coeff(int m, int n) const { return z_coeff(m).coeff(n); }

CoeffTable DeltaSum::table(const Window &w) const
{
    CoeffTable out{w, {}};
    out.values.reserve(static_cast<std::size_t>(w.rows() * w.cols()));
    for (int m = w.m_lo; m <= w.m_hi; ++m) {
        LaurentSeries row = z_coeff(m);
        for (int n = w.n_lo; n <= w.n_hi; ++n)
            out.values.push_back(row.coeff(n));
    }
    return out;
}

bool operator==(const DeltaSum &a, const DeltaSum &b)
{
    if (a.def_.p() != b.def_.p())
        throw ArithmeticError("delta sums over different deformations");
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const auto &x = a.terms_[i], &y = b.terms_[i];
        if (x.lambda != y.lambda || x.j != y.j || x.A != y.A)
            return false;
    }
    return true;
}

Scalar base_coefficient(const Deformation &def, const Scalar &lambda, int m, int n)
{
    return lambda.pow(m + 1) * def.p_bar().coeff(n - m - 1);
}

CoeffTable delta_mul_binomial(const DeltaSum &s, const Scalar &lambda0, int k, const Window &w)
{
    if (lambda0.is_zero())
        throw ArithmeticError("delta_mul_binomial with lambda0 = 0");
    if (k < 0)
        throw ArithmeticError("negative binomial power");
    // (z - lambda0 w)^k = sum_i C(k,i) (-lambda0)^i z^{k-i} w^i, so the product's
    // z^{-m-1} w^n coefficient reads s at (m + k - i, n - i).
    std::vector<Scalar> weights;
    for (int i = 0; i <= k; ++i)
        weights.push_back(binomial(k, i) * (-lambda0).pow(i));

    CoeffTable out{w, {}};
    out.values.assign(static_cast<std::size_t>(w.rows() * w.cols()), Scalar(0));
    for (int m = w.m_lo; m <= w.m_hi; ++m) {
        for (int i = 0; i <= k; ++i) {
            LaurentSeries row = s.z_coeff(m + k - i);
            for (int n = w.n_lo; n <= w.n_hi; ++n) {
                auto &cell = out.values[static_cast<std::size_t>((m - w.m_lo) * w.cols() + (n - w.n_lo))];
                cell += weights[static_cast<std::size_t>(i)] * row.coeff(n - i);
            }
        }
    }
    return out;
}

std::vector<DeltaSum> delta_apply_exp_shift(const DeltaSum &s, int order)
{
    if (order < 0)
        throw ArithmeticError("negative shift order");
    const auto &def = s.deformation();
    std::vector<DeltaSum> out;
    for (int k = 0; k <= order; ++k) {
        // D^{(k)}(A D^{(j)} B) = sum_i D^{(i)}A * C(j+k-i, j) D^{(j+k-i)} B
        std::vector<DeltaTerm> terms;
        for (const auto &t : s.terms())
            for (int i = 0; i <= k; ++i)
                terms.push_back({t.lambda, t.j + k - i, def.divided_power(t.A, i) * binomial(t.j + k - i, t.j)});
        out.emplace_back(def, std::move(terms));
    }
    return out;
}

} // namespace philoop
