#include "emlsig/eml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "emlsig/bernoulli.hpp"
#include "emlsig/random.hpp"

namespace emlsig {

namespace {

void check_dims(const PolynomialMap& f, std::size_t dim) {
    if (f.in_dim() != dim)
        throw std::invalid_argument("integrand input dimension " + std::to_string(f.in_dim()) +
                                    " differs from path dimension " + std::to_string(dim));
}

// Contracts an e x w row-major matrix with a w-vector.
std::vector<double> contract(std::span<const double> matrix, std::span<const double> vec,
                             std::size_t rows) {
    const std::size_t w = vec.size();
    std::vector<double> r(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < w; ++j)
            r[i] += matrix[i * w + j] * vec[j];
    return r;
}

double cell_integral(const RealFunction& g, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 15, 1e-14);
}

} // namespace

std::vector<double> riemann_sum(const PolynomialMap& f, const TimeSeries& x, Direction dir) {
    check_dims(f, x.dim());
    std::vector<double> s(f.out_dim(), 0.0);
    for (std::size_t k = 0; k < x.horizon(); ++k) {
        const auto y = f.eval(x.at(dir == Direction::backward ? k : k + 1));
        const auto term = contract(y, x.increment(k), f.out_dim());
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] += term[i];
    }
    return s;
}

std::vector<double> trapezoid_sum(const PolynomialMap& f, const TimeSeries& x) {
    auto a = riemann_sum(f, x, Direction::backward);
    const auto b = riemann_sum(f, x, Direction::forward);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = 0.5 * (a[i] + b[i]);
    return a;
}

std::vector<double> stieltjes_integral(const PolynomialMap& f, const PiecewiseLinearPath& path,
                                       double s, double t) {
    check_dims(f, path.dim());
    if (s > t)
        throw std::invalid_argument("stieltjes_integral requires s <= t");
    const std::size_t d = path.dim();
    const std::size_t e = f.out_dim();
    std::vector<double> r(e, 0.0);
    for (std::size_t j = 0; j < path.segment_count(); ++j) {
        const double t0 = path.times()[j];
        const double a = std::max(s, t0);
        const double b = std::min(t, path.times()[j + 1]);
        if (!(b > a))
            continue;
        const auto v = path.velocity(j);
        const auto y = f.derivative_on_line(0, path.knot(j), v);
        for (std::size_t i = 0; i < e; ++i) {
            poly1::Poly integrand;
            for (std::size_t c = 0; c < d; ++c)
                poly1::add_scaled(integrand, y[i * d + c], v[c]);
            r[i] += poly1::integrate(integrand, a - t0, b - t0);
        }
    }
    return r;
}

std::vector<double> remainder_integral(const PolynomialMap& f, const PiecewiseLinearPath& path,
                                       const TensorPolyPath& z, std::size_t m) {
    check_dims(f, path.dim());
    if (z.depth() < m + 1)
        throw std::invalid_argument("sawtooth depth " + std::to_string(z.depth()) +
                                    " below m+1 = " + std::to_string(m + 1));
    if (z.segment_count() != path.segment_count())
        throw std::invalid_argument("sawtooth was built on a different path");
    const std::size_t e = f.out_dim();
    std::vector<double> r(e, 0.0);
    for (std::size_t j = 0; j < path.segment_count(); ++j) {
        const auto y = f.derivative_on_line(m, path.knot(j), path.velocity(j));
        const TensorPolynomial dz = z.derivative_measure(j, m);
        const std::size_t w = dz.width;
        for (std::size_t c = 0; c < w; ++c) {
            const poly1::Poly measure = dz.component(c);
            for (std::size_t i = 0; i < e; ++i) {
                const auto& yc = y[i * w + c];
                if (yc.empty())
                    continue;
                r[i] += poly1::integrate(poly1::mul(yc, measure), 0.0, path.segment_length(j));
            }
        }
    }
    const double sign = (m + 1) % 2 == 0 ? 1.0 : -1.0;
    for (auto& v : r)
        v *= sign;
    return r;
}

void EmlReport::assemble() {
    rhs = integral;
    for (std::size_t l = 1; l <= boundary.size(); ++l) {
        const double sign = l == 1 ? -1.0 : (l % 2 == 0 ? 1.0 : -1.0);
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] += sign * boundary[l - 1][i];
    }
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] += remainder[i];
    residual = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i)
        residual = std::max(residual, std::abs(lhs[i] - rhs[i]));
}

EmlReport preliminary_eml(const PolynomialMap& f, const TimeSeries& x,
                          const PiecewiseLinearPath& path, const TruncatedTensor& b, Direction dir,
                          std::size_t m) {
    if (m < 2)
        throw std::invalid_argument("EML order must be at least 2");
    if (!interpolates(path, x))
        throw std::invalid_argument("path does not interpolate the time series");
    check_dims(f, path.dim());

    const std::size_t n = path.horizon();
    const std::size_t e = f.out_dim();
    const TensorPolyPath z = sawtooth(path, b, dir, m + 1);
    const TruncatedTensor z_end = z.at(static_cast<double>(n));
    const TruncatedTensor& z_start = z.initial();
    const auto x0 = x.at(0);
    const auto xn = x.at(n);

    EmlReport rep;
    rep.direction = dir;
    rep.order = m;
    rep.lhs = riemann_sum(f, x, dir);
    rep.integral = stieltjes_integral(f, path, 0.0, static_cast<double>(n));
    for (std::size_t l = 1; l <= m; ++l) {
        // Level 1 uses pi_1(b) at both ends; higher levels are continuous.
        const auto end_level = l == 1 ? z_start.level(1) : z_end.level(l);
        const auto hi = contract(f.derivative(l - 1, xn), end_level, e);
        const auto lo = contract(f.derivative(l - 1, x0), z_start.level(l), e);
        std::vector<double> diff(e);
        for (std::size_t i = 0; i < e; ++i)
            diff[i] = hi[i] - lo[i];
        rep.boundary.push_back(std::move(diff));
    }
    rep.remainder = remainder_integral(f, path, z, m);
    rep.assemble();
    return rep;
}

TruncatedTensor optimal_tensor(const PathEnsemble& ensemble, Direction dir, std::size_t depth) {
    if (ensemble.size() == 0)
        throw std::invalid_argument("empty ensemble");
    const std::size_t d = ensemble.dim();
    double mean_variation = 0.0;
    for (const auto& [path, w] : ensemble.members())
        mean_variation += w * total_variation(path, path.start(), path.end());
    if (!(mean_variation > 0.0))
        throw std::invalid_argument("ensemble has zero expected total variation");

    TruncatedTensor b = TruncatedTensor::unit(d, depth);
    for (std::size_t l = 1; l <= depth; ++l) {
        std::vector<double> acc(level_size(d, l), 0.0);
        for (const auto& [path, w] : ensemble.members()) {
            const TensorPolyPath z = sawtooth(path, b, dir, l);
            for (std::size_t j = 0; j < z.segment_count(); ++j) {
                const double speed = path.speed(j);
                if (speed == 0.0)
                    continue;
                const auto& p = z.level_poly(j, l);
                for (std::size_t i = 0; i < acc.size(); ++i)
                    acc[i] += w * speed * poly1::integrate(p.component(i), 0.0, z.segment_length(j));
            }
        }
        auto level = b.level(l);
        for (std::size_t i = 0; i < acc.size(); ++i)
            level[i] = -acc[i] / mean_variation;
    }
    return b;
}

TruncatedTensor optimal_tensor_lambda(const std::vector<double>& moments, Direction dir,
                                      std::size_t depth, std::size_t horizon) {
    if (moments.size() < depth + 1)
        throw std::invalid_argument("need moments E[alpha^1..alpha^" + std::to_string(depth + 1) +
                                    "]");
    if (!(moments[0] > 0.0))
        throw std::invalid_argument("first moment must be positive");
    if (horizon == 0)
        throw std::invalid_argument("horizon must be positive");
    const auto table = bernoulli_numbers(
        dir == Direction::forward ? BernoulliSign::minus : BernoulliSign::plus, depth);
    const double n = static_cast<double>(horizon);
    auto moment = [&](std::size_t k) { return moments[k - 1]; };

    TruncatedTensor b = TruncatedTensor::unit(1, depth);
    for (std::size_t l = 1; l <= depth; ++l) {
        double bern = 0.0;
        for (std::size_t j = 0; j <= l; ++j)
            bern += std::pow(n, static_cast<double>(l - j)) / factorial(l + 1 - j) *
                    table.values[j] / factorial(j);
        double lower = 0.0;
        for (std::size_t j = 0; j < l; ++j)
            lower += moment(l + 1 - j) * std::pow(n, static_cast<double>(l - j)) /
                     factorial(l + 1 - j) * b.level(j)[0];
        b.level(l)[0] = (moment(l + 1) * bern - lower) / moment(1);
    }
    return b;
}

double variance_objective(const PathEnsemble& ensemble, Direction dir, const TruncatedTensor& b,
                          std::size_t level) {
    double total = 0.0;
    for (const auto& [path, w] : ensemble.members()) {
        const TensorPolyPath z = sawtooth(path, b, dir, level);
        double path_total = 0.0;
        for (std::size_t j = 0; j < z.segment_count(); ++j) {
            const double speed = path.speed(j);
            if (speed == 0.0)
                continue;
            const auto& p = z.level_poly(j, level);
            double sq = 0.0;
            for (std::size_t i = 0; i < p.width; ++i) {
                const auto c = p.component(i);
                sq += poly1::integrate(poly1::mul(c, c), 0.0, z.segment_length(j));
            }
            path_total += speed * sq;
        }
        total += w * path_total;
    }
    return total;
}

OptimalityReport optimality_check(const PathEnsemble& ensemble, Direction dir, std::size_t depth,
                                  std::size_t trials, std::uint64_t seed) {
    const TruncatedTensor b = optimal_tensor(ensemble, dir, depth);
    OptimalityReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t l = 1; l <= depth; ++l) {
        const TruncatedTensor base = b.with_depth(l);
        const double best = variance_objective(ensemble, dir, base, l);
        ++rep.evaluations;
        Rng rng(split_seed(seed, l));
        for (std::size_t trial = 0; trial < trials; ++trial) {
            TruncatedTensor perturbed = base;
            const double scale = std::pow(10.0, rng.uniform(-3.0, 0.0));
            for (auto& c : perturbed.level(l))
                c += scale * rng.uniform(-1.0, 1.0);
            const double value = variance_objective(ensemble, dir, perturbed, l);
            ++rep.evaluations;
            const double margin = value - best;
            rep.worst_margin = std::min(rep.worst_margin, margin);
            if (margin < -1e-12 * std::max(1.0, std::abs(best)))
                rep.minimal = false;
        }
    }
    return rep;
}

EmlReport generalized_eml(const PolynomialMap& f, const TimeSeries& x,
                          const PiecewiseLinearPath& path, Direction dir, std::size_t m,
                          const PathEnsemble& ensemble) {
    if (ensemble.dim() != path.dim() || ensemble.horizon() != path.horizon())
        throw std::invalid_argument("ensemble does not match the path dimension and horizon");
    return preliminary_eml(f, x, path, optimal_tensor(ensemble, dir, m + 1), dir, m);
}

double classical_remainder(const std::vector<double>& coeffs, std::size_t horizon, std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("remainder order must be at least 1");
    poly1::Poly g = coeffs;
    for (std::size_t k = 0; k < m; ++k)
        g = poly1::derivative(g);
    if (g.empty())
        return 0.0;
    std::vector<double> bern_poly = bernoulli_polynomial_coeffs(m);
    double total = 0.0;
    for (std::size_t k = 0; k < horizon; ++k) {
        // s -> g(k + s) by Horner composition with k + s.
        poly1::Poly shifted;
        const poly1::Poly linear{static_cast<double>(k), 1.0};
        for (auto it = g.rbegin(); it != g.rend(); ++it) {
            shifted = poly1::mul(shifted, linear);
            poly1::add_scaled(shifted, poly1::Poly{*it});
        }
        total += poly1::integrate(poly1::mul(shifted, bern_poly), 0.0, 1.0);
    }
    const double sign = (m + 1) % 2 == 0 ? 1.0 : -1.0;
    return sign * total / factorial(m);
}

double classical_remainder(const RealFunction& derivative_m, std::size_t horizon, std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("remainder order must be at least 1");
    const std::vector<double> bern_poly = bernoulli_polynomial_coeffs(m);
    double total = 0.0;
    for (std::size_t k = 0; k < horizon; ++k) {
        const double kk = static_cast<double>(k);
        total += cell_integral(
            [&](double s) { return derivative_m(kk + s) * poly1::eval(bern_poly, s); }, 0.0, 1.0);
    }
    const double sign = (m + 1) % 2 == 0 ? 1.0 : -1.0;
    return sign * total / factorial(m);
}

EmlReport classical_eml(const std::vector<RealFunction>& derivatives, std::size_t horizon,
                        std::size_t m, Direction dir) {
    if (m < 2)
        throw std::invalid_argument("EML order must be at least 2");
    if (derivatives.size() < m + 1)
        throw std::invalid_argument("need derivatives f^(0)..f^(" + std::to_string(m) + ")");
    if (horizon == 0)
        throw std::invalid_argument("horizon must be positive");
    const auto table = bernoulli_numbers(
        dir == Direction::forward ? BernoulliSign::minus : BernoulliSign::plus, m);
    const auto& f = derivatives[0];
    const double n = static_cast<double>(horizon);

    EmlReport rep;
    rep.direction = dir;
    rep.order = m;
    rep.lhs = {0.0};
    rep.integral = {0.0};
    for (std::size_t k = 0; k < horizon; ++k) {
        const double kk = static_cast<double>(k);
        rep.lhs[0] += f(dir == Direction::backward ? kk : kk + 1.0);
        rep.integral[0] += cell_integral(f, kk, kk + 1.0);
    }
    for (std::size_t l = 1; l <= m; ++l) {
        const auto& g = derivatives[l - 1];
        rep.boundary.push_back({(g(n) - g(0.0)) * table.values[l] / factorial(l)});
    }
    rep.remainder = {classical_remainder(derivatives[m], horizon, m)};
    rep.assemble();
    return rep;
}

} // namespace emlsig
