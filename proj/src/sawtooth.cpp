#include "emlsig/sawtooth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "emlsig/bernoulli.hpp"
#include "emlsig/signature.hpp"

namespace emlsig {

const char* to_string(Direction dir) {
    return dir == Direction::forward ? "forward" : "backward";
}

std::vector<double> TensorPolynomial::eval(double u) const {
    std::vector<double> r(width, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        for (std::size_t i = 0; i < width; ++i)
            r[i] = r[i] * u + (*it)[i];
    return r;
}

poly1::Poly TensorPolynomial::component(std::size_t index) const {
    poly1::Poly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        p[i] = coeffs[i][index];
    return p;
}

const TensorPolynomial& TensorPolyPath::level_poly(std::size_t j, std::size_t k) const {
    if (k > depth_)
        throw std::out_of_range("sawtooth level exceeds depth");
    return levels_.at(j)[k];
}

TensorPolynomial TensorPolyPath::derivative_measure(std::size_t j, std::size_t m) const {
    const TensorPolynomial& z = level_poly(j, m);
    TensorPolynomial r;
    r.width = z.width * dim_;
    for (const auto& c : z.coeffs) {
        std::vector<double> out(r.width, 0.0);
        add_outer(velocities_[j], c, out);
        r.coeffs.push_back(std::move(out));
    }
    return r;
}

TruncatedTensor TensorPolyPath::at_segment(std::size_t j, double u) const {
    TruncatedTensor z(dim_, depth_);
    for (std::size_t k = 0; k <= depth_; ++k) {
        const auto v = levels_.at(j)[k].eval(u);
        std::copy(v.begin(), v.end(), z.level(k).begin());
    }
    return z;
}

TruncatedTensor TensorPolyPath::at(double t) const {
    const double n = static_cast<double>(horizon_);
    if (!(t >= 0.0 && t <= n))
        throw std::out_of_range("sawtooth evaluation time " + std::to_string(t) +
                                " outside [0, N]");
    if (t == n) {
        const std::size_t j = segment_count() - 1;
        TruncatedTensor z = at_segment(j, lengths_[j]);
        if (depth_ >= 1) {
            auto b1 = initial_.level(1);
            std::copy(b1.begin(), b1.end(), z.level(1).begin());
        }
        return z;
    }
    // Right-continuous segment lookup.
    std::size_t lo = 0;
    std::size_t hi = starts_.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (starts_[mid] <= t)
            lo = mid;
        else
            hi = mid;
    }
    return at_segment(lo, t - starts_[lo]);
}

TensorPolyPath sawtooth(const PiecewiseLinearPath& path, const TruncatedTensor& b, Direction dir,
                        std::size_t depth) {
    if (!path.has_integer_knots())
        throw std::invalid_argument("sawtooth requires a path with knots at every integer in [0, N]");
    if (b.scalar() != 1.0)
        throw std::invalid_argument("sawtooth initial datum must have scalar part 1");
    if (b.dim() != path.dim())
        throw std::invalid_argument("sawtooth initial datum dimension mismatch");

    const std::size_t d = path.dim();
    TensorPolyPath z;
    z.dim_ = d;
    z.depth_ = depth;
    z.horizon_ = path.horizon();
    z.direction_ = dir;
    z.initial_ = b.with_depth(depth);

    std::vector<std::vector<double>> carry(depth + 1);
    for (std::size_t k = 0; k <= depth; ++k) {
        auto lvl = z.initial_.level(k);
        carry[k].assign(lvl.begin(), lvl.end());
    }

    for (std::size_t j = 0; j < path.segment_count(); ++j) {
        const double tau = path.times()[j];
        const double h = path.segment_length(j);
        const auto v = path.velocity(j);
        const auto cell = static_cast<std::size_t>(std::floor(tau));
        const std::size_t anchor_time = dir == Direction::forward ? cell : cell + 1;
        const auto anchor = path.knot(path.integer_knot(anchor_time));
        const auto x_tau = path.knot(j);

        std::vector<TensorPolynomial> lv(depth + 1);
        lv[0].width = 1;
        lv[0].coeffs = {{1.0}};
        if (depth >= 1) {
            std::vector<double> c0(d);
            for (std::size_t i = 0; i < d; ++i)
                c0[i] = x_tau[i] - anchor[i] + carry[1][i];
            lv[1].width = d;
            lv[1].coeffs = {std::move(c0), v};
        }
        for (std::size_t k = 2; k <= depth; ++k) {
            TensorPolynomial& p = lv[k];
            p.width = lv[k - 1].width * d;
            p.coeffs.assign(lv[k - 1].coeffs.size() + 1, std::vector<double>(p.width, 0.0));
            p.coeffs[0] = carry[k];
            for (std::size_t i = 0; i < lv[k - 1].coeffs.size(); ++i)
                add_outer(v, lv[k - 1].coeffs[i], p.coeffs[i + 1], 1.0 / static_cast<double>(i + 1));
        }
        for (std::size_t k = 2; k <= depth; ++k)
            carry[k] = lv[k].eval(h);

        z.starts_.push_back(tau);
        z.lengths_.push_back(h);
        z.velocities_.push_back(v);
        z.levels_.push_back(std::move(lv));
    }
    return z;
}

TruncatedTensor sawtooth_closed_form(const PiecewiseLinearPath& path, const TruncatedTensor& b,
                                     Direction dir, std::size_t depth, double t) {
    const std::size_t n = path.horizon();
    if (b.scalar() != 1.0)
        throw std::invalid_argument("sawtooth initial datum must have scalar part 1");
    if (!(t >= 0.0 && t <= static_cast<double>(n)))
        throw std::out_of_range("sawtooth evaluation time outside [0, N]");
    const auto whole = static_cast<std::size_t>(std::floor(t));

    TruncatedTensor z = tensor_mul(flip_signature(path, 0.0, t, depth), b.with_depth(depth));
    auto increment = [&](std::size_t k) {
        std::vector<double> dx(path.dim(), 0.0);
        if (k < n) {
            auto a = path.knot(path.integer_knot(k));
            auto c = path.knot(path.integer_knot(k + 1));
            for (std::size_t i = 0; i < dx.size(); ++i)
                dx[i] = c[i] - a[i];
        }
        return TruncatedTensor::from_vector(dx, depth);
    };
    if (dir == Direction::forward) {
        for (std::size_t k = 0; k < whole; ++k)
            z -= tensor_mul(flip_signature(path, static_cast<double>(k + 1), t, depth), increment(k));
    } else {
        for (std::size_t k = 0; k <= whole; ++k)
            z -= tensor_mul(flip_signature(path, static_cast<double>(k), t, depth), increment(k));
    }
    return z;
}

TruncatedTensor sawtooth_lambda_1d(double lambda, const TruncatedTensor& b, Direction dir,
                                   std::size_t depth, double t) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("sawtooth_lambda_1d requires lambda > 0");
    if (b.dim() != 1)
        throw std::invalid_argument("sawtooth_lambda_1d requires a one-dimensional datum");
    if (b.scalar() != 1.0)
        throw std::invalid_argument("sawtooth initial datum must have scalar part 1");
    if (!(t >= 0.0))
        throw std::out_of_range("sawtooth_lambda_1d requires t >= 0");

    const TruncatedTensor bb = b.with_depth(depth);
    const auto whole = static_cast<std::size_t>(std::floor(t));
    const double frac = t - static_cast<double>(whole);
    // Cells contributing: k = 0..[t]-1 (forward) or k = 0..[t] (backward), and
    // sum_k (frac + i)^{l-1} over i = 0..cells-1 expands into power sums.
    const std::size_t cells = dir == Direction::forward ? whole : whole + 1;

    TruncatedTensor z(1, depth);
    z.scalar() = 1.0;
    for (std::size_t l = 1; l <= depth; ++l) {
        double value = 0.0;
        for (std::size_t j = 0; j <= l; ++j)
            value += std::pow(lambda * t, static_cast<double>(l - j)) / factorial(l - j) *
                     bb.level(j)[0];
        double cell_sum = 0.0;
        for (std::size_t r = 0; r <= l - 1; ++r)
            cell_sum += binomial(l - 1, r) * std::pow(frac, static_cast<double>(l - 1 - r)) *
                        faulhaber(r, cells, BernoulliSign::minus);
        value -= std::pow(lambda, static_cast<double>(l)) * cell_sum / factorial(l - 1);
        z.level(l)[0] = value;
    }
    return z;
}

} // namespace emlsig
