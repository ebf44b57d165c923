#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emlsig/bernoulli.hpp"
#include "emlsig/eml.hpp"
#include "emlsig/io.hpp"
#include "emlsig/polynomial_map.hpp"
#include "support.hpp"

using namespace emlsig;
using emlsig::testing::random_group_like;
using emlsig::testing::random_poly_map;

namespace {

using Points = std::vector<std::vector<double>>;
constexpr Direction kDirections[] = {Direction::forward, Direction::backward};

// Power series of t/(e^t - 1) times e^{xt}, to `order` terms: coefficient n
// times n! is the n-th Bernoulli polynomial (B_1 = -1/2 convention).
std::vector<double> generating_function_polynomial(std::size_t n, double x) {
    const std::size_t len = n + 1;
    std::vector<double> denom(len); // (e^t - 1)/t
    for (std::size_t k = 0; k < len; ++k)
        denom[k] = 1.0 / factorial(k + 1);
    std::vector<double> inv(len, 0.0);
    inv[0] = 1.0;
    for (std::size_t k = 1; k < len; ++k) {
        double s = 0.0;
        for (std::size_t i = 1; i <= k; ++i)
            s += denom[i] * inv[k - i];
        inv[k] = -s;
    }
    std::vector<double> prod(len, 0.0);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; i + j < len; ++j)
            prod[i + j] += inv[i] * std::pow(x, static_cast<double>(j)) / factorial(j);
    return prod;
}

TruncatedTensor bernoulli_datum(double lambda, BernoulliSign sign, std::size_t depth) {
    const auto table = bernoulli_numbers(sign, depth);
    TruncatedTensor b(1, depth);
    for (std::size_t l = 0; l <= depth; ++l)
        b.level(l)[0] = std::pow(lambda, static_cast<double>(l)) * table.values[l] / factorial(l);
    return b;
}

BernoulliSign datum_sign(Direction dir) {
    return dir == Direction::forward ? BernoulliSign::minus : BernoulliSign::plus;
}

TimeSeries unit_steps(std::size_t n) {
    std::vector<std::vector<double>> pts;
    for (std::size_t k = 0; k <= n; ++k)
        pts.push_back({static_cast<double>(k)});
    return TimeSeries(pts);
}

} // namespace

TEST_CASE("multivariate polynomials") {
    const MultiPoly p{{{2, 1}, 3.0}, {{0, 0}, -1.0}}; // 3 x^2 y - 1
    const std::vector<double> x{2.0, -1.0};
    CHECK(eval(p, x) == -13.0);
    CHECK(eval(partial(p, 0), x) == -12.0);
    CHECK(eval(partial(p, 1), x) == 12.0);
    CHECK(partial(partial(p, 1), 1).empty());
    const std::vector<double> v{1.0, 2.0};
    const auto line = restrict_to_line(p, x, v);
    for (double u : {-0.5, 0.0, 0.3, 1.7}) {
        const std::vector<double> pt{x[0] + u * v[0], x[1] + u * v[1]};
        CHECK(poly1::eval(line, u) == doctest::Approx(eval(p, pt)).epsilon(1e-14));
    }
}

TEST_CASE("polynomial map derivatives") {
    Rng rng(71);
    auto f = random_poly_map(rng, 2, 2, 4);
    CHECK(f.degree() <= 4);
    const std::vector<double> x{0.3, -0.7};
    const double h = 1e-5;
    // Y^1 entry (r, i, j) is d f_rj / d x_i, checked against central differences.
    const auto y1 = f.derivative(1, x);
    REQUIRE(y1.size() == 2 * 4);
    for (std::size_t i = 0; i < 2; ++i) {
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const auto fp = f.eval(xp), fm = f.eval(xm);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(y1[r * 4 + i * 2 + j] ==
                      doctest::Approx((fp[r * 2 + j] - fm[r * 2 + j]) / (2 * h)).epsilon(1e-7));
    }
    // Y^0 is f itself, and lines agree with pointwise evaluation.
    CHECK(f.derivative(0, x) == f.eval(x));
    const std::vector<double> v{0.5, 1.5};
    const auto on_line = f.derivative_on_line(2, x, v);
    const std::vector<double> pt{x[0] + 0.4 * v[0], x[1] + 0.4 * v[1]};
    const auto y2 = f.derivative(2, pt);
    for (std::size_t i = 0; i < y2.size(); ++i)
        CHECK(poly1::eval(on_line[i], 0.4) == doctest::Approx(y2[i]).epsilon(1e-13));
    // Derivatives beyond the degree vanish.
    for (double c : f.derivative(5, x))
        CHECK(c == 0.0);
    CHECK_THROWS_AS(f.add_monomial(2, 0, {1, 0}, 1.0), std::out_of_range);
    CHECK_THROWS_AS(f.add_monomial(0, 0, {1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(f.eval(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("Bernoulli numbers") {
    const auto minus = bernoulli_numbers(BernoulliSign::minus, 10);
    const auto plus = bernoulli_numbers(BernoulliSign::plus, 10);
    CHECK(minus.exact[0] == 1);
    CHECK(minus.exact[1] == Rational(-1, 2));
    CHECK(plus.exact[1] == Rational(1, 2));
    CHECK(minus.exact[2] == Rational(1, 6));
    CHECK(minus.exact[4] == Rational(-1, 30));
    CHECK(minus.exact[6] == Rational(1, 42));
    CHECK(minus.exact[8] == Rational(-1, 30));
    CHECK(minus.exact[10] == Rational(5, 66));
    for (std::size_t k : {3u, 5u, 7u, 9u}) {
        CHECK(minus.exact[k] == 0);
        CHECK(plus.exact[k] == 0);
    }
    for (std::size_t k = 2; k <= 10; ++k)
        CHECK(minus.exact[k] == plus.exact[k]);
}

TEST_CASE("Bernoulli polynomials") {
    const auto p2 = bernoulli_polynomial_coeffs(2);
    REQUIRE(p2.size() == 3);
    CHECK(p2[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(p2[1] == -1.0);
    CHECK(p2[2] == 1.0);
    CHECK(bernoulli_polynomial(1, 0.25) == -0.25);

    const auto table = bernoulli_numbers(BernoulliSign::minus, 8);
    for (std::size_t m = 1; m <= 8; ++m) {
        // P_m' = m P_{m-1} and the unit-interval mean is zero, exactly.
        std::vector<Rational> deriv;
        for (std::size_t i = 1; i < table.poly[m].size(); ++i)
            deriv.push_back(table.poly[m][i] * static_cast<int>(i));
        auto lower = table.poly[m - 1];
        for (auto& c : lower)
            c *= static_cast<int>(m);
        while (!lower.empty() && lower.back() == 0)
            lower.pop_back();
        while (!deriv.empty() && deriv.back() == 0)
            deriv.pop_back();
        CHECK(deriv == lower);
        Rational mean = 0;
        for (std::size_t i = 0; i < table.poly[m].size(); ++i)
            mean += table.poly[m][i] / static_cast<int>(i + 1);
        CHECK(mean == 0);
        CHECK(table.poly[m][0] == table.exact[m]);
    }
    // Generating-function oracle.
    for (double x : {0.0, 0.2, 0.5, 0.9})
        for (std::size_t m = 0; m <= 8; ++m)
            CHECK(bernoulli_polynomial(m, x) ==
                  doctest::Approx(generating_function_polynomial(m, x)[m] * factorial(m))
                      .epsilon(1e-12));
}

TEST_CASE("Faulhaber sums") {
    CHECK(faulhaber(2, 4, BernoulliSign::minus) == 14.0);
    CHECK(faulhaber(1, 3, BernoulliSign::plus) == 6.0);
    for (std::size_t n = 1; n <= 20; ++n) {
        CHECK(faulhaber(0, n, BernoulliSign::minus) == static_cast<double>(n));
        for (std::size_t p = 0; p <= 6; ++p) {
            long long lower = 0, upper = 0;
            for (std::size_t k = 0; k < n; ++k) {
                long long term = 1;
                for (std::size_t i = 0; i < p; ++i)
                    term *= static_cast<long long>(k);
                lower += term;
            }
            for (std::size_t k = 1; k <= n; ++k) {
                long long term = 1;
                for (std::size_t i = 0; i < p; ++i)
                    term *= static_cast<long long>(k);
                upper += term;
            }
            CHECK(faulhaber_exact(p, n, BernoulliSign::minus) == lower);
            CHECK(faulhaber_exact(p, n, BernoulliSign::plus) == upper);
            CHECK(faulhaber(p, n, BernoulliSign::minus) == static_cast<double>(lower));
        }
    }
    CHECK(binomial(6, 2) == 15.0);
    CHECK(factorial(5) == 120.0);
}

TEST_CASE("Riemann and trapezoid sums") {
    const auto square = PolynomialMap::univariate({0.0, 0.0, 1.0});
    const TimeSeries x({{0.0}, {1.0}, {2.0}});
    CHECK(riemann_sum(square, x, Direction::backward)[0] == 1.0);
    CHECK(riemann_sum(square, x, Direction::forward)[0] == 5.0);
    CHECK(trapezoid_sum(square, x)[0] == 3.0);
    const auto constant = PolynomialMap::univariate({2.5});
    const TimeSeries y({{1.0}, {4.0}, {-2.0}, {3.0}});
    for (auto dir : kDirections)
        CHECK(riemann_sum(constant, y, dir)[0] == doctest::Approx(2.5 * 2.0));
    CHECK(trapezoid_sum(constant, y)[0] == doctest::Approx(5.0));

    Rng rng(72);
    for (int i = 0; i < 20; ++i) {
        const auto f = random_poly_map(rng, 2, 2, 3);
        const auto s = sample_integers(random_path(rng, 2, 4));
        const auto lo = riemann_sum(f, s, Direction::backward);
        const auto hi = riemann_sum(f, s, Direction::forward);
        const auto mid = trapezoid_sum(f, s);
        for (std::size_t r = 0; r < 2; ++r)
            CHECK(mid[r] == 0.5 * (lo[r] + hi[r]));
    }
    CHECK_THROWS_AS(riemann_sum(square, TimeSeries(Points{{0.0, 0.0}, {1.0, 1.0}}), Direction::forward),
                    std::invalid_argument);
}

TEST_CASE("Stieltjes integrals") {
    const auto square = PolynomialMap::univariate({0.0, 0.0, 1.0});
    CHECK(stieltjes_integral(square, line_path(1.0, 2), 0.0, 2.0)[0] ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(stieltjes_integral(square, line_path(1.0, 2), 1.0, 0.0), std::invalid_argument);

    SUBCASE("exact forms vanish on closed polygons") {
        PolynomialMap grad(2, 1); // gradient of |x|^2 / 2
        grad.add_monomial(0, 0, {1, 0}, 1.0);
        grad.add_monomial(0, 1, {0, 1}, 1.0);
        Rng rng(73);
        for (int i = 0; i < 10; ++i) {
            Points pts;
            for (int k = 0; k < 5; ++k)
                pts.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
            pts.push_back(pts.front());
            CHECK(std::abs(stieltjes_integral(grad, interpolate_linear(TimeSeries(pts)), 0.0, 5.0)[0]) <
                  1e-13);
        }
    }
    SUBCASE("additive over intervals") {
        Rng rng(74);
        const auto f = random_poly_map(rng, 2, 1, 3);
        const auto p = emlsig::testing::random_refined_path(rng, 2, 3, 2);
        const auto a = stieltjes_integral(f, p, 0.0, 1.3);
        const auto b = stieltjes_integral(f, p, 1.3, 3.0);
        CHECK(a[0] + b[0] == doctest::Approx(stieltjes_integral(f, p, 0.0, 3.0)[0]).epsilon(1e-13));
    }
    SUBCASE("refined Riemann sums converge to the exact value") {
        Rng rng(75);
        for (int i = 0; i < 5; ++i) {
            const auto f = random_poly_map(rng, 2, 2, 3);
            const auto p = emlsig::testing::random_refined_path(rng, 2, 2, 1);
            const auto exact = stieltjes_integral(f, p, 0.0, 2.0);
            const std::size_t steps = std::size_t{2} << 12; // mesh 2^-12 over [0, 2]
            std::vector<double> approx(2, 0.0);
            auto prev = p.at(0.0);
            auto f_prev = f.eval(prev);
            for (std::size_t s = 1; s <= steps; ++s) {
                const auto cur = p.at(2.0 * static_cast<double>(s) / static_cast<double>(steps));
                const auto f_cur = f.eval(cur);
                for (std::size_t r = 0; r < 2; ++r)
                    for (std::size_t c = 0; c < 2; ++c)
                        approx[r] += 0.5 * (f_prev[r * 2 + c] + f_cur[r * 2 + c]) * (cur[c] - prev[c]);
                prev = cur;
                f_prev = f_cur;
            }
            for (std::size_t r = 0; r < 2; ++r)
                CHECK(std::abs(approx[r] - exact[r]) < 1e-6);
        }
    }
}

TEST_CASE("remainder integral") {
    const auto identity = PolynomialMap::univariate({0.0, 1.0});
    const auto path = line_path(1.0, 2);
    const auto z = sawtooth(path, TruncatedTensor::unit(1, 2), Direction::backward, 2);
    CHECK(remainder_integral(identity, path, z, 1)[0] == doctest::Approx(-1.0).epsilon(1e-15));

    Rng rng(76);
    const auto f = random_poly_map(rng, 2, 1, 2);
    const auto p = random_path(rng, 2, 3);
    const auto zz = sawtooth(p, random_group_like(rng, 2, 4), Direction::forward, 4);
    CHECK(remainder_integral(f, p, zz, 3)[0] == 0.0);
    CHECK_THROWS_AS(remainder_integral(f, p, zz, 4), std::invalid_argument);
}

TEST_CASE("preliminary EML") {
    SUBCASE("hand example") {
        const auto identity = PolynomialMap::univariate({0.0, 1.0});
        const auto x = unit_steps(2);
        const auto b = bernoulli_datum(1.0, BernoulliSign::plus, 3);
        const auto r = preliminary_eml(identity, x, interpolate_linear(x), b, Direction::backward, 2);
        CHECK(r.lhs[0] == 1.0);
        CHECK(r.integral[0] == doctest::Approx(2.0));
        CHECK(r.boundary[0][0] == doctest::Approx(1.0));
        CHECK(r.boundary[1][0] == doctest::Approx(0.0));
        CHECK(r.remainder[0] == doctest::Approx(0.0));
        CHECK(r.residual < 1e-15);
    }
    SUBCASE("constant integrand") {
        const auto c = PolynomialMap::univariate({3.0});
        Rng rng(77);
        const auto p = random_path(rng, 1, 4);
        const auto r = preliminary_eml(c, sample_integers(p), p, random_group_like(rng, 1, 4),
                                       Direction::forward, 3);
        for (std::size_t l = 2; l <= 3; ++l)
            CHECK(r.boundary[l - 1][0] == 0.0);
        CHECK(r.remainder[0] == 0.0);
        CHECK(r.residual < 1e-12);
    }
    SUBCASE("independent of the datum") {
        Rng rng(78);
        for (auto dir : kDirections)
            for (int i = 0; i < 20; ++i) {
                const std::size_t d = 1 + static_cast<std::size_t>(i % 2);
                const auto p = random_path(rng, d, 1 + static_cast<std::size_t>(i % 4));
                const auto f = random_poly_map(rng, d, 2, 4);
                const std::size_t m = 2 + static_cast<std::size_t>(i % 4);
                const auto r = preliminary_eml(f, sample_integers(p), p,
                                               random_group_like(rng, d, 1 + static_cast<std::size_t>(i % 5)),
                                               dir, m);
                CHECK(r.residual < 1e-10);
            }
    }
    SUBCASE("assemble matches the displayed sign pattern") {
        EmlReport r;
        r.lhs = {0.0};
        r.integral = {10.0};
        r.boundary = {{1.0}, {2.0}, {4.0}};
        r.remainder = {0.5};
        r.assemble();
        CHECK(r.rhs[0] == 10.0 - 1.0 + 2.0 - 4.0 + 0.5);
        CHECK(r.residual == r.rhs[0]);
    }
    SUBCASE("errors") {
        const auto identity = PolynomialMap::univariate({0.0, 1.0});
        const auto x = unit_steps(2);
        CHECK_THROWS_AS(preliminary_eml(identity, x, interpolate_linear(x), TruncatedTensor::unit(1, 2),
                                        Direction::forward, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(preliminary_eml(identity, x, line_path(2.0, 2), TruncatedTensor::unit(1, 2),
                                        Direction::forward, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("optimal tensor") {
    SUBCASE("lines recover scaled Bernoulli numbers") {
        for (double lambda : {0.5, 1.0, 2.0})
            for (auto dir : kDirections) {
                const auto b = optimal_tensor(PathEnsemble::singleton(line_path(lambda, 3)), dir, 8);
                const auto expect = bernoulli_datum(lambda, datum_sign(dir), 8);
                CHECK(max_abs_diff(b, expect) < 1e-12);
            }
        CHECK(optimal_tensor(PathEnsemble::singleton(line_path(2.0, 4)), Direction::forward, 1)
                  .level(1)[0] == doctest::Approx(-1.0).epsilon(1e-15));
    }
    SUBCASE("two-line ensemble matches the moment recursion") {
        for (std::size_t n : {1u, 3u})
            for (auto dir : kDirections) {
                const PathEnsemble e({{line_path(1.0, n), 0.5}, {line_path(2.0, n), 0.5}});
                std::vector<double> moments;
                for (int k = 1; k <= 7; ++k)
                    moments.push_back((1.0 + std::pow(2.0, k)) / 2.0);
                CHECK(max_abs_diff(optimal_tensor(e, dir, 6), optimal_tensor_lambda(moments, dir, 6, n)) <
                      1e-12);
            }
    }
    SUBCASE("moment recursion with a deterministic slope") {
        for (double lambda : {0.5, 1.0, 2.0})
            for (auto dir : kDirections) {
                std::vector<double> moments;
                for (int k = 1; k <= 9; ++k)
                    moments.push_back(std::pow(lambda, k));
                for (std::size_t n : {1u, 4u})
                    CHECK(max_abs_diff(optimal_tensor_lambda(moments, dir, 8, n),
                                       bernoulli_datum(lambda, datum_sign(dir), 8)) < 1e-12);
            }
    }
    SUBCASE("agrees with single-path ensembles") {
        Rng rng(79);
        for (int i = 0; i < 5; ++i) {
            const double lambda = rng.uniform(0.2, 3.0);
            std::vector<double> moments;
            for (int k = 1; k <= 6; ++k)
                moments.push_back(std::pow(lambda, k));
            CHECK(max_abs_diff(optimal_tensor(PathEnsemble::singleton(line_path(lambda, 2)),
                                              Direction::backward, 5),
                               optimal_tensor_lambda(moments, Direction::backward, 5, 2)) < 1e-12);
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(optimal_tensor(PathEnsemble::singleton(line_path(0.0, 2)), Direction::forward, 2),
                        std::invalid_argument);
        CHECK_THROWS_AS(optimal_tensor_lambda({0.0, 1.0, 1.0}, Direction::forward, 2, 2),
                        std::invalid_argument);
        CHECK_THROWS_AS(optimal_tensor_lambda({1.0, 1.0}, Direction::forward, 2, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("variance objective and optimality") {
    SUBCASE("unit line, level 1 minimum at -1/2") {
        const auto e = PathEnsemble::singleton(line_path(1.0, 3));
        auto objective = [&](double v) {
            TruncatedTensor b = TruncatedTensor::unit(1, 1);
            b.level(1)[0] = v;
            return variance_objective(e, Direction::forward, b, 1);
        };
        // Closed form: N * int_0^1 (s + v)^2 ds.
        for (double v : {-1.0, -0.5, 0.0, 0.3})
            CHECK(objective(v) == doctest::Approx(3.0 * (1.0 / 3.0 + v + v * v)).epsilon(1e-14));
        CHECK(objective(-0.5) < objective(-0.4));
        CHECK(objective(-0.5) < objective(-0.6));
        CHECK(optimal_tensor(e, Direction::forward, 1).level(1)[0] ==
              doctest::Approx(-0.5).epsilon(1e-15));
    }
    SUBCASE("quadratic with unit leading coefficient") {
        Rng rng(80);
        const auto base = random_path(rng, 2, 3);
        const auto e = seeded_ensemble(base, 5, 3);
        double mean_variation = 0.0;
        for (const auto& [p, w] : e.members())
            mean_variation += w * total_variation(p, p.start(), p.end());
        for (auto dir : kDirections)
            for (std::size_t l = 1; l <= 3; ++l) {
                const auto b = optimal_tensor(e, dir, l);
                TruncatedTensor dirn(2, l);
                double norm2 = 0.0;
                for (auto& c : dirn.level(l)) {
                    c = rng.uniform(-1.0, 1.0);
                    norm2 += c * c;
                }
                const double eps = 0.25;
                const double j0 = variance_objective(e, dir, b, l);
                const double jp = variance_objective(e, dir, b + eps * dirn, l);
                const double jm = variance_objective(e, dir, b - eps * dirn, l);
                const double curvature = (jp + jm - 2.0 * j0) / (2.0 * eps * eps);
                const double slope = (jp - jm) / (2.0 * eps);
                CHECK(curvature == doctest::Approx(mean_variation * norm2).epsilon(1e-10));
                CHECK(std::abs(slope) < 1e-10 * std::max(1.0, j0));
            }
    }
    SUBCASE("sampled minimality") {
        Rng rng(81);
        const auto e = seeded_ensemble(random_path(rng, 2, 3), 9, 2);
        for (auto dir : kDirections) {
            const auto rep = optimality_check(e, dir, 3, 100, 17);
            CHECK(rep.minimal);
            CHECK(rep.worst_margin > 0.0);
            CHECK(rep.evaluations == 3 * 101);
        }
    }
}

TEST_CASE("generalized EML") {
    SUBCASE("polynomials on the unit line are exact") {
        for (auto dir : kDirections)
            for (std::size_t q = 0; q <= 5; ++q) {
                std::vector<double> coeffs(q + 1, 0.0);
                coeffs[q] = 1.0;
                const auto f = PolynomialMap::univariate(coeffs);
                const std::size_t m = std::max<std::size_t>(2, q + 1);
                for (std::size_t n : {1u, 4u, 10u}) {
                    const auto x = unit_steps(n);
                    const auto path = interpolate_linear(x);
                    const auto r = generalized_eml(f, x, path, dir, m, PathEnsemble::singleton(path));
                    CHECK(r.residual < 1e-10 * std::max(1.0, std::abs(r.lhs[0])));
                    CHECK(std::abs(r.remainder[0]) < 1e-10);
                }
            }
    }
    SUBCASE("random two-dimensional path, quadratic integrand") {
        Rng rng(82);
        for (auto dir : kDirections)
            for (int i = 0; i < 5; ++i) {
                const auto p = random_path(rng, 2, 4);
                const auto f = random_poly_map(rng, 2, 1, 2);
                const auto r = generalized_eml(f, sample_integers(p), p, dir, 3, seeded_ensemble(p, 3, 2));
                CHECK(r.residual < 1e-9);
            }
    }
    SUBCASE("ensemble shape must match") {
        const auto x = unit_steps(2);
        CHECK_THROWS_AS(generalized_eml(PolynomialMap::univariate({1.0}), x, interpolate_linear(x),
                                        Direction::forward, 2, PathEnsemble::singleton(line_path(1.0, 3))),
                        std::invalid_argument);
    }
}

TEST_CASE("classical remainder") {
    CHECK(classical_remainder({0.0, 1.0}, 5, 1) == doctest::Approx(0.0));
    CHECK(classical_remainder({1.0, 2.0, 3.0}, 4, 3) == 0.0);
    CHECK_THROWS_AS(classical_remainder({1.0}, 2, 0), std::invalid_argument);

    SUBCASE("polynomial and quadrature routes agree") {
        const std::vector<double> coeffs{0.5, -1.0, 0.25, 0.1, -0.02};
        // Third derivative of the quartic.
        const RealFunction third = [](double s) { return 6.0 * 0.1 - 24.0 * 0.02 * s; };
        CHECK(classical_remainder(third, 6, 3) ==
              doctest::Approx(classical_remainder(coeffs, 6, 3)).epsilon(1e-12));
    }
    SUBCASE("equals the sawtooth remainder with the optimal datum") {
        Rng rng(83);
        for (int i = 0; i < 20; ++i) {
            std::vector<double> coeffs;
            for (int k = 0; k <= 5; ++k)
                coeffs.push_back(rng.uniform(-1.0, 1.0));
            const std::size_t m = 1 + static_cast<std::size_t>(i % 4);
            const std::size_t n = 1 + static_cast<std::size_t>(i % 5);
            const auto dir = kDirections[i % 2];
            const auto path = line_path(1.0, n);
            const auto z = sawtooth(path, bernoulli_datum(1.0, datum_sign(dir), m + 1), dir, m + 1);
            const double via_sawtooth =
                remainder_integral(PolynomialMap::univariate(coeffs), path, z, m)[0];
            CHECK(std::abs(via_sawtooth - classical_remainder(coeffs, n, m)) < 1e-10);
        }
    }
}

TEST_CASE("classical EML for the exponential") {
    const RealFunction e = [](double s) { return std::exp(s); };
    for (auto dir : kDirections) {
        const auto r = classical_eml({e, e, e, e, e}, 5, 4, dir);
        CHECK(r.residual < 1e-8);
        double direct = 0.0;
        for (int k = 0; k < 5; ++k)
            direct += std::exp(dir == Direction::backward ? k : k + 1);
        CHECK(r.lhs[0] == doctest::Approx(direct).epsilon(1e-15));
        CHECK(r.integral[0] == doctest::Approx(std::exp(5.0) - 1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(classical_eml({e, e}, 5, 2, Direction::forward), std::invalid_argument);
    CHECK_THROWS_AS(classical_eml({e, e, e}, 5, 1, Direction::forward), std::invalid_argument);
}
