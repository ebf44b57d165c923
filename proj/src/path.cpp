#include "emlsig/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace emlsig {

namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& rows, std::size_t& dim) {
    if (rows.empty())
        throw std::invalid_argument("empty series");
    dim = rows.front().size();
    if (dim == 0)
        throw std::invalid_argument("points must have positive dimension");
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].size() != dim)
            throw std::invalid_argument("point " + std::to_string(k) + " has dimension " +
                                        std::to_string(rows[k].size()) + ", expected " +
                                        std::to_string(dim));
        flat.insert(flat.end(), rows[k].begin(), rows[k].end());
    }
    return flat;
}

void require_finite(const std::vector<double>& v) {
    for (double c : v)
        if (!std::isfinite(c))
            throw std::invalid_argument("non-finite value");
}

} // namespace

TimeSeries::TimeSeries(std::vector<std::vector<double>> values) {
    values_ = flatten(values, dim_);
    if (values.size() < 2)
        throw std::invalid_argument("time series needs N >= 1");
    require_finite(values_);
}

TimeSeries::TimeSeries(std::size_t dim, std::vector<double> flat) : dim_(dim), values_(std::move(flat)) {
    if (dim_ == 0 || values_.size() % dim_ != 0)
        throw std::invalid_argument("flat series length is not a multiple of the dimension");
    if (values_.size() / dim_ < 2)
        throw std::invalid_argument("time series needs N >= 1");
    require_finite(values_);
}

std::span<const double> TimeSeries::at(std::size_t k) const {
    if (k > horizon())
        throw std::out_of_range("time series index " + std::to_string(k) + " out of range");
    return {values_.data() + k * dim_, dim_};
}

std::vector<double> TimeSeries::increment(std::size_t k) const {
    if (k >= horizon())
        throw std::out_of_range("increment index " + std::to_string(k) + " out of range [0, " +
                                std::to_string(horizon()) + ")");
    std::vector<double> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        d[i] = values_[(k + 1) * dim_ + i] - values_[k * dim_ + i];
    return d;
}

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<double> times,
                                         std::vector<std::vector<double>> values)
    : PiecewiseLinearPath(values.empty() ? 1 : values.front().size(), std::move(times),
                          [&] {
                              std::size_t d = 0;
                              return flatten(values, d);
                          }()) {}

PiecewiseLinearPath::PiecewiseLinearPath(std::size_t dim, std::vector<double> times,
                                         std::vector<double> flat)
    : dim_(dim), times_(std::move(times)), values_(std::move(flat)) {
    if (dim_ == 0)
        throw std::invalid_argument("path dimension must be positive");
    if (times_.size() < 2)
        throw std::invalid_argument("path needs at least two knots");
    if (values_.size() != times_.size() * dim_)
        throw std::invalid_argument("knot value count does not match knot times");
    require_finite(times_);
    require_finite(values_);
    for (std::size_t j = 0; j + 1 < times_.size(); ++j)
        if (!(times_[j] < times_[j + 1]))
            throw std::invalid_argument("knot times must be strictly increasing (knot " +
                                        std::to_string(j + 1) + ")");
}

std::span<const double> PiecewiseLinearPath::knot(std::size_t j) const {
    return {values_.data() + j * dim_, dim_};
}

std::vector<double> PiecewiseLinearPath::velocity(std::size_t j) const {
    std::vector<double> v(dim_);
    const double h = segment_length(j);
    for (std::size_t i = 0; i < dim_; ++i)
        v[i] = (values_[(j + 1) * dim_ + i] - values_[j * dim_ + i]) / h;
    return v;
}

double PiecewiseLinearPath::speed(std::size_t j) const {
    double s = 0.0;
    for (double c : velocity(j))
        s += c * c;
    return std::sqrt(s);
}

std::size_t PiecewiseLinearPath::segment_at(double t) const {
    if (t >= times_.back())
        return segment_count() - 1;
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin())
        return 0;
    return static_cast<std::size_t>(it - times_.begin()) - 1;
}

std::vector<double> PiecewiseLinearPath::at_in_segment(std::size_t j, double t) const {
    std::vector<double> x(dim_);
    if (t <= times_[j]) {
        std::copy_n(values_.begin() + j * dim_, dim_, x.begin());
    } else if (t >= times_[j + 1]) {
        std::copy_n(values_.begin() + (j + 1) * dim_, dim_, x.begin());
    } else {
        const double lam = (t - times_[j]) / segment_length(j);
        for (std::size_t i = 0; i < dim_; ++i) {
            const double a = values_[j * dim_ + i];
            const double b = values_[(j + 1) * dim_ + i];
            x[i] = a + lam * (b - a);
        }
    }
    return x;
}

std::vector<double> PiecewiseLinearPath::at(double t) const {
    return at_in_segment(segment_at(t), t);
}

bool PiecewiseLinearPath::has_integer_knots() const {
    if (times_.front() != 0.0)
        return false;
    const double n = times_.back();
    if (n < 1.0 || n != std::floor(n))
        return false;
    std::size_t next = 0;
    for (double t : times_) {
        if (t == static_cast<double>(next))
            ++next;
        else if (t > static_cast<double>(next))
            return false;
    }
    return static_cast<double>(next - 1) == n;
}

std::size_t PiecewiseLinearPath::horizon() const {
    if (!has_integer_knots())
        throw std::invalid_argument(
            "path must start at 0, end at an integer N >= 1 and contain every integer as a knot");
    return static_cast<std::size_t>(times_.back());
}

std::size_t PiecewiseLinearPath::integer_knot(std::size_t k) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), static_cast<double>(k));
    if (it == times_.end() || *it != static_cast<double>(k))
        throw std::invalid_argument("time " + std::to_string(k) + " is not a knot");
    return static_cast<std::size_t>(it - times_.begin());
}

PiecewiseLinearPath PiecewiseLinearPath::time_reversed() const {
    const std::size_t m = times_.size();
    std::vector<double> t(m);
    std::vector<double> v(values_.size());
    const double a = times_.front();
    const double b = times_.back();
    for (std::size_t j = 0; j < m; ++j) {
        t[j] = a + b - times_[m - 1 - j];
        std::copy_n(values_.begin() + (m - 1 - j) * dim_, dim_, v.begin() + j * dim_);
    }
    t.front() = a;
    t.back() = b;
    return {dim_, std::move(t), std::move(v)};
}

PathEnsemble::PathEnsemble(std::vector<WeightedPath> members) : members_(std::move(members)) {
    if (members_.empty())
        throw std::invalid_argument("empty path ensemble");
    const std::size_t d = members_.front().path.dim();
    const std::size_t n = members_.front().path.horizon();
    double total = 0.0;
    for (const auto& m : members_) {
        if (!(m.weight >= 0.0))
            throw std::invalid_argument("ensemble weights must be non-negative");
        if (m.path.dim() != d || m.path.horizon() != n)
            throw std::invalid_argument("ensemble paths must share dimension and horizon");
        total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("ensemble weights must sum to 1");
}

PathEnsemble PathEnsemble::singleton(PiecewiseLinearPath path) {
    return PathEnsemble({WeightedPath{std::move(path), 1.0}});
}

PiecewiseLinearPath interpolate_linear(const TimeSeries& x) {
    const std::size_t n = x.horizon();
    std::vector<double> times(n + 1);
    std::vector<double> flat;
    flat.reserve((n + 1) * x.dim());
    for (std::size_t k = 0; k <= n; ++k) {
        times[k] = static_cast<double>(k);
        auto p = x.at(k);
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return {x.dim(), std::move(times), std::move(flat)};
}

TimeSeries sample_integers(const PiecewiseLinearPath& path) {
    const std::size_t n = path.horizon();
    std::vector<double> flat;
    flat.reserve((n + 1) * path.dim());
    for (std::size_t k = 0; k <= n; ++k) {
        auto p = path.knot(path.integer_knot(k));
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return {path.dim(), std::move(flat)};
}

bool interpolates(const PiecewiseLinearPath& path, const TimeSeries& x) {
    if (!path.has_integer_knots() || path.dim() != x.dim() || path.horizon() != x.horizon())
        return false;
    for (std::size_t k = 0; k <= x.horizon(); ++k) {
        auto p = path.knot(path.integer_knot(k));
        auto q = x.at(k);
        for (std::size_t i = 0; i < x.dim(); ++i)
            if (std::abs(p[i] - q[i]) > 1e-12 * (1.0 + std::abs(q[i])))
                return false;
    }
    return true;
}

double total_variation(const PiecewiseLinearPath& path, double s, double t) {
    if (s > t)
        throw std::invalid_argument("total_variation requires s <= t");
    const double lo = std::max(s, path.start());
    const double hi = std::min(t, path.end());
    double tv = 0.0;
    if (lo >= hi)
        return tv;
    for (std::size_t j = path.segment_at(lo); j < path.segment_count(); ++j) {
        const double a = std::max(lo, path.times()[j]);
        const double b = std::min(hi, path.times()[j + 1]);
        if (a >= b) {
            if (path.times()[j] >= hi)
                break;
            continue;
        }
        tv += path.speed(j) * (b - a);
    }
    return tv;
}

PiecewiseLinearPath reparametrize_arclength(const PiecewiseLinearPath& path) {
    const double a = path.start();
    const double b = path.end();
    const double length = total_variation(path, a, b);
    if (!(length > 0.0))
        throw std::invalid_argument("cannot reparametrise a zero-variation path by arclength");
    const double speed = length / (b - a);
    std::vector<double> times{a};
    std::vector<double> flat(path.knot(0).begin(), path.knot(0).end());
    double arclength = 0.0;
    for (std::size_t j = 0; j < path.segment_count(); ++j) {
        const double piece = path.speed(j) * path.segment_length(j);
        if (piece == 0.0)
            continue;
        arclength += piece;
        times.push_back(a + arclength / speed);
        auto k = path.knot(j + 1);
        flat.insert(flat.end(), k.begin(), k.end());
    }
    times.back() = b;
    return {path.dim(), std::move(times), std::move(flat)};
}

PiecewiseLinearPath line_path(double lambda, std::size_t horizon) {
    if (horizon == 0)
        throw std::invalid_argument("horizon must be positive");
    std::vector<double> times(horizon + 1);
    std::vector<double> flat(horizon + 1);
    for (std::size_t k = 0; k <= horizon; ++k) {
        times[k] = static_cast<double>(k);
        flat[k] = lambda * static_cast<double>(k);
    }
    return {1, std::move(times), std::move(flat)};
}

} // namespace emlsig
