#include "emlsig/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace emlsig {

std::size_t level_size(std::size_t dim, std::size_t k) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (dim != 0 && n > kMaxLevelSize / dim)
            throw std::length_error("tensor level " + std::to_string(k) + " over dimension " +
                                    std::to_string(dim) + " exceeds the size guard");
        n *= dim;
    }
    if (n > kMaxLevelSize)
        throw std::length_error("tensor level exceeds the size guard");
    return n;
}

TruncatedTensor::TruncatedTensor(std::size_t dim, std::size_t depth) : dim_(dim) {
    if (dim == 0)
        throw std::invalid_argument("tensor dimension must be positive");
    level_size(dim, depth);
    levels_.resize(depth + 1);
    for (std::size_t k = 0; k <= depth; ++k)
        levels_[k].assign(level_size(dim, k), 0.0);
}

TruncatedTensor TruncatedTensor::unit(std::size_t dim, std::size_t depth) {
    TruncatedTensor t(dim, depth);
    t.scalar() = 1.0;
    return t;
}

TruncatedTensor TruncatedTensor::from_vector(std::span<const double> v, std::size_t depth) {
    TruncatedTensor t(v.size(), depth);
    if (depth >= 1)
        std::copy(v.begin(), v.end(), t.levels_[1].begin());
    return t;
}

TruncatedTensor TruncatedTensor::exp(std::span<const double> v, std::size_t depth) {
    TruncatedTensor t = unit(v.size(), depth);
    for (std::size_t k = 1; k <= depth; ++k)
        add_outer(t.levels_[k - 1], v, t.levels_[k], 1.0 / static_cast<double>(k));
    return t;
}

std::span<const double> TruncatedTensor::level(std::size_t k) const {
    if (k > depth())
        throw std::out_of_range("level " + std::to_string(k) + " exceeds depth " +
                                std::to_string(depth()));
    return levels_[k];
}

std::span<double> TruncatedTensor::level(std::size_t k) {
    if (k > depth())
        throw std::out_of_range("level " + std::to_string(k) + " exceeds depth " +
                                std::to_string(depth()));
    return levels_[k];
}

namespace {

std::size_t word_offset(std::span<const std::size_t> word, std::size_t dim) {
    std::size_t off = 0;
    for (std::size_t i : word) {
        if (i >= dim)
            throw std::out_of_range("word letter out of range");
        off = off * dim + i;
    }
    return off;
}

void require_same_dim(const TruncatedTensor& a, const TruncatedTensor& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("tensor dimension mismatch: " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
}

} // namespace

double TruncatedTensor::coeff(std::span<const std::size_t> word) const {
    return level(word.size())[word_offset(word, dim_)];
}

double& TruncatedTensor::coeff(std::span<const std::size_t> word) {
    return level(word.size())[word_offset(word, dim_)];
}

TruncatedTensor TruncatedTensor::with_depth(std::size_t depth) const {
    TruncatedTensor t(dim_, depth);
    for (std::size_t k = 0; k <= std::min(depth, this->depth()); ++k)
        t.levels_[k] = levels_[k];
    return t;
}

TruncatedTensor& TruncatedTensor::operator+=(const TruncatedTensor& other) {
    require_same_dim(*this, other);
    if (other.depth() < depth())
        *this = with_depth(other.depth());
    for (std::size_t k = 0; k <= depth(); ++k)
        for (std::size_t i = 0; i < levels_[k].size(); ++i)
            levels_[k][i] += other.levels_[k][i];
    return *this;
}

TruncatedTensor& TruncatedTensor::operator-=(const TruncatedTensor& other) {
    require_same_dim(*this, other);
    if (other.depth() < depth())
        *this = with_depth(other.depth());
    for (std::size_t k = 0; k <= depth(); ++k)
        for (std::size_t i = 0; i < levels_[k].size(); ++i)
            levels_[k][i] -= other.levels_[k][i];
    return *this;
}

TruncatedTensor& TruncatedTensor::operator*=(double s) {
    for (auto& lvl : levels_)
        for (double& c : lvl)
            c *= s;
    return *this;
}

TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b) { return a += b; }
TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b) { return a -= b; }
TruncatedTensor operator*(double s, TruncatedTensor a) { return a *= s; }

void add_outer(std::span<const double> a, std::span<const double> b, std::span<double> out,
               double alpha) {
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = alpha * a[i];
        if (ai == 0.0)
            continue;
        double* row = out.data() + i * nb;
        for (std::size_t j = 0; j < nb; ++j)
            row[j] += ai * b[j];
    }
}

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_dim(a, b);
    const std::size_t p = std::min(a.depth(), b.depth());
    TruncatedTensor r(a.dim(), p);
    for (std::size_t k = 0; k <= p; ++k)
        for (std::size_t i = 0; i <= k; ++i)
            add_outer(a.level(i), b.level(k - i), r.level(k));
    return r;
}

TruncatedTensor tensor_inverse(const TruncatedTensor& a) {
    if (a.scalar() != 1.0)
        throw std::invalid_argument("tensor_inverse requires scalar part 1");
    // a = 1 + x;  a^{-1} = 1 - x + x^2 - ... evaluated as r <- 1 - x r.
    TruncatedTensor x = a;
    x.scalar() = 0.0;
    const TruncatedTensor one = TruncatedTensor::unit(a.dim(), a.depth());
    TruncatedTensor r = one;
    for (std::size_t n = 0; n < a.depth(); ++n)
        r = one - tensor_mul(x, r);
    return r;
}

TruncatedTensor gamma_involution(const TruncatedTensor& a) {
    TruncatedTensor r = a;
    for (std::size_t k = 1; k <= r.depth(); k += 2)
        for (double& c : r.level(k))
            c = -c;
    return r;
}

double tensor_norm(const TruncatedTensor& a, std::size_t k) {
    double s = 0.0;
    for (double c : a.level(k))
        s += c * c;
    return std::sqrt(s);
}

double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_dim(a, b);
    double m = 0.0;
    for (std::size_t k = 0; k <= std::min(a.depth(), b.depth()); ++k) {
        auto la = a.level(k);
        auto lb = b.level(k);
        for (std::size_t i = 0; i < la.size(); ++i)
            m = std::max(m, std::abs(la[i] - lb[i]));
    }
    return m;
}

} // namespace emlsig
