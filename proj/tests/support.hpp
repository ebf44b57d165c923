#ifndef EMLSIG_TESTS_SUPPORT_HPP
#define EMLSIG_TESTS_SUPPORT_HPP

// Hand-rolled generators shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "emlsig/io.hpp"
#include "emlsig/path.hpp"
#include "emlsig/polynomial_map.hpp"
#include "emlsig/random.hpp"
#include "emlsig/tensor.hpp"

namespace emlsig::testing {

inline TruncatedTensor random_tensor(Rng& rng, std::size_t dim, std::size_t depth,
                                     double scalar) {
    TruncatedTensor t(dim, depth);
    t.scalar() = scalar;
    for (std::size_t k = 1; k <= depth; ++k)
        for (auto& c : t.level(k))
            c = rng.uniform(-1.0, 1.0);
    return t;
}

/// Random element with scalar part 1.
inline TruncatedTensor random_group_like(Rng& rng, std::size_t dim, std::size_t depth) {
    return random_tensor(rng, dim, depth, 1.0);
}

/// Random path with integer knots plus up to `extra` interior knots per unit cell.
inline PiecewiseLinearPath random_refined_path(Rng& rng, std::size_t dim, std::size_t horizon,
                                               std::size_t extra) {
    std::vector<double> times;
    std::vector<std::vector<double>> values;
    std::vector<double> x(dim, 0.0);
    auto push = [&](double t) {
        times.push_back(t);
        values.push_back(x);
        for (auto& xi : x)
            xi += rng.uniform(-1.0, 1.0);
    };
    for (std::size_t k = 0; k < horizon; ++k) {
        push(static_cast<double>(k));
        const auto count = static_cast<std::size_t>(rng.integer(0, static_cast<long long>(extra)));
        std::vector<double> inner;
        for (std::size_t i = 0; i < count; ++i)
            inner.push_back(static_cast<double>(k) + rng.uniform(0.05, 0.95));
        std::sort(inner.begin(), inner.end());
        inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
        for (double t : inner)
            push(t);
    }
    push(static_cast<double>(horizon));
    return PiecewiseLinearPath(std::move(times), std::move(values));
}

/// Uniformly random time in [0, horizon], sometimes snapped to an integer or a knot.
inline double random_time(Rng& rng, const PiecewiseLinearPath& path) {
    const double t = rng.uniform(path.start(), path.end());
    switch (rng.integer(0, 5)) {
    case 0:
        return std::floor(t);
    case 1:
        return path.times()[static_cast<std::size_t>(
            rng.integer(0, static_cast<long long>(path.knot_count()) - 1))];
    default:
        return t;
    }
}

/// Each entry gets three random monomials of total degree <= max_degree.
inline PolynomialMap random_poly_map(Rng& rng, std::size_t in, std::size_t out, unsigned max_degree) {
    PolynomialMap f(in, out);
    for (std::size_t r = 0; r < out; ++r)
        for (std::size_t c = 0; c < in; ++c)
            for (int t = 0; t < 3; ++t) {
                std::vector<unsigned> exps(in, 0);
                unsigned budget = static_cast<unsigned>(rng.integer(0, max_degree));
                for (std::size_t i = 0; i < in && budget > 0; ++i) {
                    const auto e = static_cast<unsigned>(rng.integer(0, budget));
                    exps[i] = e;
                    budget -= e;
                }
                f.add_monomial(r, c, exps, rng.uniform(-1.0, 1.0));
            }
    return f;
}

inline double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

} // namespace emlsig::testing

#endif // EMLSIG_TESTS_SUPPORT_HPP
