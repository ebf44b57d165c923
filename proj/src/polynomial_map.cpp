#include "emlsig/polynomial_map.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "emlsig/tensor.hpp"

namespace emlsig {

double eval(const MultiPoly& p, std::span<const double> x) {
    double r = 0.0;
    for (const auto& [exps, c] : p) {
        double term = c;
        for (std::size_t i = 0; i < exps.size(); ++i)
            for (unsigned e = 0; e < exps[i]; ++e)
                term *= x[i];
        r += term;
    }
    return r;
}

MultiPoly partial(const MultiPoly& p, std::size_t i) {
    MultiPoly r;
    for (const auto& [exps, c] : p) {
        if (exps[i] == 0)
            continue;
        auto e = exps;
        const double factor = static_cast<double>(e[i]);
        --e[i];
        r[e] += c * factor;
    }
    return r;
}

poly1::Poly restrict_to_line(const MultiPoly& p, std::span<const double> x0,
                             std::span<const double> v) {
    poly1::Poly r;
    for (const auto& [exps, c] : p) {
        poly1::Poly term{c};
        for (std::size_t i = 0; i < exps.size(); ++i) {
            const poly1::Poly linear{x0[i], v[i]};
            for (unsigned e = 0; e < exps[i]; ++e)
                term = poly1::mul(term, linear);
        }
        poly1::add_scaled(r, term);
    }
    return r;
}

PolynomialMap::PolynomialMap(std::size_t in_dim, std::size_t out_dim)
    : in_dim_(in_dim), out_dim_(out_dim), entries_(in_dim * out_dim) {
    if (in_dim == 0 || out_dim == 0)
        throw std::invalid_argument("polynomial map dimensions must be positive");
}

PolynomialMap PolynomialMap::univariate(const std::vector<double>& coeffs) {
    PolynomialMap f(1, 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0.0)
            f.add_monomial(0, 0, {static_cast<unsigned>(i)}, coeffs[i]);
    return f;
}

const MultiPoly& PolynomialMap::entry(std::size_t row, std::size_t col) const {
    if (row >= out_dim_ || col >= in_dim_)
        throw std::out_of_range("polynomial map entry (" + std::to_string(row) + ", " +
                                std::to_string(col) + ") out of range");
    return entries_[row * in_dim_ + col];
}

void PolynomialMap::add_monomial(std::size_t row, std::size_t col, std::vector<unsigned> exps,
                                 double coef) {
    if (row >= out_dim_ || col >= in_dim_)
        throw std::out_of_range("polynomial map entry out of range");
    if (exps.size() != in_dim_)
        throw std::invalid_argument("monomial exponent vector has " + std::to_string(exps.size()) +
                                    " entries, expected " + std::to_string(in_dim_));
    auto& p = entries_[row * in_dim_ + col];
    p[exps] += coef;
    if (p[exps] == 0.0)
        p.erase(exps);
}

std::size_t PolynomialMap::degree() const {
    std::size_t deg = 0;
    for (const auto& p : entries_)
        for (const auto& [exps, c] : p) {
            std::size_t s = 0;
            for (auto e : exps)
                s += e;
            deg = std::max(deg, s);
        }
    return deg;
}

template <class Visit>
void PolynomialMap::for_each_derivative(std::size_t k, Visit&& visit) const {
    const std::size_t d = in_dim_;
    const std::size_t block = level_size(d, k); // derivative multi-indices
    std::vector<std::size_t> idx(k, 0);
    // Mixed partials commute, so cache by the sorted multi-index.
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, MultiPoly> cache;
    for (std::size_t r = 0; r < out_dim_; ++r)
        for (std::size_t a = 0; a < block; ++a) {
            std::size_t rem = a;
            for (std::size_t s = k; s > 0; --s) {
                idx[s - 1] = rem % d;
                rem /= d;
            }
            std::vector<std::size_t> key = idx;
            std::sort(key.begin(), key.end());
            for (std::size_t j = 0; j < d; ++j) {
                auto [it, inserted] = cache.try_emplace({r * d + j, key});
                if (inserted) {
                    MultiPoly p = entries_[r * d + j];
                    for (auto i : key)
                        p = partial(p, i);
                    it->second = std::move(p);
                }
                visit((r * block + a) * d + j, it->second);
            }
        }
}

std::vector<double> PolynomialMap::eval(std::span<const double> x) const {
    return derivative(0, x);
}

std::vector<double> PolynomialMap::derivative(std::size_t k, std::span<const double> x) const {
    if (x.size() != in_dim_)
        throw std::invalid_argument("evaluation point has wrong dimension");
    std::vector<double> out(out_dim_ * level_size(in_dim_, k + 1));
    for_each_derivative(k, [&](std::size_t flat, const MultiPoly& p) { out[flat] = emlsig::eval(p, x); });
    return out;
}

std::vector<poly1::Poly> PolynomialMap::derivative_on_line(std::size_t k,
                                                           std::span<const double> x0,
                                                           std::span<const double> v) const {
    if (x0.size() != in_dim_ || v.size() != in_dim_)
        throw std::invalid_argument("line data has wrong dimension");
    std::vector<poly1::Poly> out(out_dim_ * level_size(in_dim_, k + 1));
    for_each_derivative(k, [&](std::size_t flat, const MultiPoly& p) {
        out[flat] = restrict_to_line(p, x0, v);
    });
    return out;
}

} // namespace emlsig
