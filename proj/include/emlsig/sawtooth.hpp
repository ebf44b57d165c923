#ifndef EMLSIG_SAWTOOTH_HPP
#define EMLSIG_SAWTOOTH_HPP

#include <cstddef>
#include <vector>

#include "emlsig/path.hpp"
#include "emlsig/tensor.hpp"
#include "emlsig/univariate.hpp"

namespace emlsig {

/// Forward anchors level 1 at X_{[t]}, backward at X_{[t+1]}.
enum class Direction { forward, backward };

const char* to_string(Direction dir);

/// Level-k tensor-valued polynomial in a local time variable u.
struct TensorPolynomial {
    std::size_t width = 0;                   // d^k
    std::vector<std::vector<double>> coeffs; // coeffs[i] multiplies u^i

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    std::vector<double> eval(double u) const;
    /// Coefficient polynomial of one tensor entry.
    poly1::Poly component(std::size_t index) const;
};

/// Sawtooth signature Z^{+/-}(X, b) stored exactly, one polynomial per level
/// and per path segment. Segments never straddle an integer.
///
/// Level 1 jumps at integers; levels >= 2 are continuous. At an integer k the
/// value is the right limit, except at t = N where level 1 equals pi_1(b) in
/// both directions.
class TensorPolyPath {
public:
    std::size_t dim() const { return dim_; }
    std::size_t depth() const { return depth_; }
    Direction direction() const { return direction_; }
    std::size_t horizon() const { return horizon_; }
    const TruncatedTensor& initial() const { return initial_; }

    std::size_t segment_count() const { return starts_.size(); }
    double segment_start(std::size_t j) const { return starts_[j]; }
    double segment_length(std::size_t j) const { return lengths_[j]; }
    const std::vector<double>& velocity(std::size_t j) const { return velocities_[j]; }

    /// pi_k(Z) on segment j as a polynomial in u = t - segment_start(j).
    const TensorPolynomial& level_poly(std::size_t j, std::size_t k) const;

    /// Coefficients of v (x) pi_m(Z) on segment j, so that d pi_{m+1}(Z) = (this) du.
    TensorPolynomial derivative_measure(std::size_t j, std::size_t m) const;

    /// Z_t for t in [0, N].
    TruncatedTensor at(double t) const;
    /// Z on segment j at local time u, levels from the segment polynomial.
    TruncatedTensor at_segment(std::size_t j, double u) const;

private:
    friend TensorPolyPath sawtooth(const PiecewiseLinearPath&, const TruncatedTensor&, Direction,
                                   std::size_t);

    std::size_t dim_ = 1;
    std::size_t depth_ = 0;
    std::size_t horizon_ = 0;
    Direction direction_ = Direction::forward;
    TruncatedTensor initial_;
    std::vector<double> starts_;
    std::vector<double> lengths_;
    std::vector<std::vector<double>> velocities_;
    std::vector<std::vector<TensorPolynomial>> levels_; // [segment][k], k = 0..depth
};

/// Builds Z^{+/-}(X, b) to the given depth by exact antidifferentiation of
/// d pi_k(Z) = dX (x) pi_{k-1}(Z) with Z_0 = b. b is truncated or zero-padded to
/// `depth`. X must have integer knots.
TensorPolyPath sawtooth(const PiecewiseLinearPath& path, const TruncatedTensor& b, Direction dir,
                        std::size_t depth);

/// Z_t from flip signatures:
///   forward:  S^flat_{0,t} b - sum_{k=0}^{[t]-1} S^flat_{k+1,t} dX_k
///   backward: S^flat_{0,t} b - sum_{k=0}^{[t]}   S^flat_{k,t}   dX_k
/// with dX_N = 0 (constant extension).
TruncatedTensor sawtooth_closed_form(const PiecewiseLinearPath& path, const TruncatedTensor& b,
                                     Direction dir, std::size_t depth, double t);

/// Z_t for the one-dimensional line X_t = lambda t on [0, infinity), using
/// Faulhaber sums for the accumulated cell contributions.
TruncatedTensor sawtooth_lambda_1d(double lambda, const TruncatedTensor& b, Direction dir,
                                   std::size_t depth, double t);

} // namespace emlsig

#endif // EMLSIG_SAWTOOTH_HPP
