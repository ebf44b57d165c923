#ifndef EMLSIG_PATH_HPP
#define EMLSIG_PATH_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace emlsig {

/// Values x_0, ..., x_N in R^d on the integer grid [[0, N]].
class TimeSeries {
public:
    TimeSeries() = default;
    /// `values` holds N+1 points of equal dimension.
    explicit TimeSeries(std::vector<std::vector<double>> values);
    /// Flat row-major storage of N+1 points.
    TimeSeries(std::size_t dim, std::vector<double> flat);

    std::size_t dim() const { return dim_; }
    /// N, the index of the last point.
    std::size_t horizon() const { return values_.size() / dim_ - 1; }

    std::span<const double> at(std::size_t k) const;
    /// x_{k+1} - x_k, for 0 <= k <= N-1.
    std::vector<double> increment(std::size_t k) const;

private:
    std::size_t dim_ = 1;
    std::vector<double> values_;
};

/// Continuous path in R^d, linear between knots t_0 < ... < t_M and frozen
/// at its endpoint values outside [t_0, t_M].
class PiecewiseLinearPath {
public:
    PiecewiseLinearPath() = default;
    PiecewiseLinearPath(std::vector<double> times, std::vector<std::vector<double>> values);
    PiecewiseLinearPath(std::size_t dim, std::vector<double> times, std::vector<double> flat);

    std::size_t dim() const { return dim_; }
    std::size_t knot_count() const { return times_.size(); }
    std::size_t segment_count() const { return times_.size() - 1; }

    const std::vector<double>& times() const { return times_; }
    double start() const { return times_.front(); }
    double end() const { return times_.back(); }

    std::span<const double> knot(std::size_t j) const;
    double segment_length(std::size_t j) const { return times_[j + 1] - times_[j]; }
    /// Constant velocity on segment j.
    std::vector<double> velocity(std::size_t j) const;
    /// Euclidean speed on segment j.
    double speed(std::size_t j) const;

    /// Segment index containing t, right-continuous; the last segment for t >= end().
    std::size_t segment_at(double t) const;
    /// X_t with constant extension outside the knot range.
    std::vector<double> at(double t) const;
    /// X_t restricted to segment j (no search), exact at both of its knots.
    std::vector<double> at_in_segment(std::size_t j, double t) const;

    /// True when t_0 = 0, t_M is an integer N >= 1, and every integer in [0, N] is a knot.
    bool has_integer_knots() const;
    /// N for paths with integer knots; throws std::invalid_argument otherwise.
    std::size_t horizon() const;
    /// Knot index of integer time k (requires integer knots).
    std::size_t integer_knot(std::size_t k) const;

    /// The path u -> X_{t_0 + t_M - u} on the same time interval.
    PiecewiseLinearPath time_reversed() const;

private:
    std::size_t dim_ = 1;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Finite weighted family of paths realising an expectation.
struct WeightedPath {
    PiecewiseLinearPath path;
    double weight = 1.0;
};

class PathEnsemble {
public:
    PathEnsemble() = default;
    /// Weights must be non-negative and sum to 1; paths share dimension and horizon.
    explicit PathEnsemble(std::vector<WeightedPath> members);
    static PathEnsemble singleton(PiecewiseLinearPath path);

    std::size_t size() const { return members_.size(); }
    std::size_t dim() const { return members_.front().path.dim(); }
    std::size_t horizon() const { return members_.front().path.horizon(); }
    const std::vector<WeightedPath>& members() const { return members_; }

private:
    std::vector<WeightedPath> members_;
};

PiecewiseLinearPath interpolate_linear(const TimeSeries& x);

/// Values of an integer-knot path at 0, ..., N.
TimeSeries sample_integers(const PiecewiseLinearPath& path);

/// True when the path has integer knots with X_k = x_k (up to a relative 1e-12).
bool interpolates(const PiecewiseLinearPath& path, const TimeSeries& x);

/// One-variation of X over [s, t].
double total_variation(const PiecewiseLinearPath& path, double s, double t);

/// Constant-speed reparametrisation over the same time interval; zero-velocity
/// segments are dropped. Throws std::invalid_argument for a zero-variation path.
PiecewiseLinearPath reparametrize_arclength(const PiecewiseLinearPath& path);

/// The path t -> lambda * t (dim 1) on [0, horizon] with integer knots.
PiecewiseLinearPath line_path(double lambda, std::size_t horizon);

} // namespace emlsig

#endif // EMLSIG_PATH_HPP
