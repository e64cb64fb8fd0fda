#include "philoop/random.hpp"

namespace philoop {

long Rng::uniform(long lo, long hi)
{
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(gen_() % span);
}

Rational Rng::small_rational()
{
    long num = uniform(1, 5) * (coin() ? 1 : -1);
    Rational q(num, uniform(1, 3));
    q.canonicalize();
    return q;
}

Scalar Rng::sparse_scalar()
{
    if (uniform(0, 2) == 0)
        return Scalar(0);
    return Scalar(small_rational());
}

LaurentSeries Rng::laurent(int lo, int hi, int max_terms)
{
    LaurentSeries::Terms t;
    long n = uniform(1, max_terms);
    for (long i = 0; i < n; ++i) {
        int e = static_cast<int>(uniform(lo, hi));
        Scalar c(small_rational());
        auto [it, inserted] = t.try_emplace(e, c);
        if (!inserted)
            it->second += c;
    }
    return LaurentSeries(std::move(t));
}

} // namespace philoop
