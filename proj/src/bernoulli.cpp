#include "emlsig/bernoulli.hpp"

#include <mutex>

namespace emlsig {

namespace {

Rational binomial_exact(std::size_t n, std::size_t k) {
    Rational r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * Rational(n + 1 - i) / Rational(i);
    return r;
}

std::vector<Rational> bernoulli_minus(std::size_t m) {
    // B^- is shared by every table; cached and extended on demand.
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= m) {
        const std::size_t n = cache.size();
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j)
            s += binomial_exact(n + 1, j) * cache[j];
        cache.push_back(-s / Rational(n + 1));
    }
    return cache;
}

std::vector<Rational> bernoulli_poly_exact(std::size_t m, const std::vector<Rational>& prev) {
    if (m == 0)
        return {Rational(1)};
    // P_m = m * antiderivative(P_{m-1}) + c, with c fixing int_0^1 P_m = 0.
    std::vector<Rational> p(prev.size() + 1, Rational(0));
    for (std::size_t i = 0; i < prev.size(); ++i)
        p[i + 1] = Rational(m) * prev[i] / Rational(i + 1);
    Rational mean = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        mean += p[i] / Rational(i + 1);
    p[0] = -mean;
    return p;
}

} // namespace

BernoulliTable bernoulli_numbers(BernoulliSign sign, std::size_t m) {
    BernoulliTable t;
    t.sign = sign;
    const auto minus = bernoulli_minus(m);
    t.exact.assign(minus.begin(), minus.begin() + static_cast<std::ptrdiff_t>(m + 1));
    if (sign == BernoulliSign::plus && m >= 1)
        t.exact[1] = -t.exact[1];
    for (const auto& b : t.exact)
        t.values.push_back(static_cast<double>(b));
    for (std::size_t k = 0; k <= m; ++k)
        t.poly.push_back(bernoulli_poly_exact(k, k == 0 ? std::vector<Rational>{} : t.poly.back()));
    return t;
}

std::vector<double> bernoulli_polynomial_coeffs(std::size_t m) {
    const BernoulliTable t = bernoulli_numbers(BernoulliSign::minus, m);
    std::vector<double> c;
    for (const auto& r : t.poly[m])
        c.push_back(static_cast<double>(r));
    return c;
}

double bernoulli_polynomial(std::size_t m, double s) {
    const auto c = bernoulli_polynomial_coeffs(m);
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * s + *it;
    return r;
}

Rational faulhaber_exact(std::size_t p, std::size_t n, BernoulliSign sign) {
    const BernoulliTable t = bernoulli_numbers(sign, p);
    Rational s = 0;
    for (std::size_t j = 0; j <= p; ++j) {
        Rational pw = 1;
        for (std::size_t i = 0; i < p + 1 - j; ++i)
            pw *= Rational(n);
        s += binomial_exact(p + 1, j) * pw * t.exact[j];
    }
    return s / Rational(p + 1);
}

double faulhaber(std::size_t p, std::size_t n, BernoulliSign sign) {
    return static_cast<double>(faulhaber_exact(p, n, sign));
}

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i)
        f *= static_cast<double>(i);
    return f;
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * static_cast<double>(n + 1 - i) / static_cast<double>(i);
    return r;
}

} // namespace emlsig
