#ifndef EMLSIG_EML_HPP
#define EMLSIG_EML_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "emlsig/path.hpp"
#include "emlsig/polynomial_map.hpp"
#include "emlsig/sawtooth.hpp"
#include "emlsig/tensor.hpp"

namespace emlsig {

/// backward: sum_k f(x_k) dx_k, forward: sum_k f(x_{k+1}) dx_k.
std::vector<double> riemann_sum(const PolynomialMap& f, const TimeSeries& x, Direction dir);
/// Average of the backward and forward sums.
std::vector<double> trapezoid_sum(const PolynomialMap& f, const TimeSeries& x);

/// int_s^t f(X_u) dX_u, exact per segment.
std::vector<double> stieltjes_integral(const PolynomialMap& f, const PiecewiseLinearPath& path,
                                       double s, double t);

/// (-1)^{m+1} int_0^N D^m f(X_t) d pi_{m+1}(Z_t), with d pi_{m+1}(Z) = dX (x) pi_m(Z).
/// `z` must be built on `path` with depth >= m+1.
std::vector<double> remainder_integral(const PolynomialMap& f, const PiecewiseLinearPath& path,
                                       const TensorPolyPath& z, std::size_t m);

struct EmlReport {
    Direction direction = Direction::backward;
    std::size_t order = 0;
    std::vector<double> lhs;                   // Riemann sum
    std::vector<double> integral;
    std::vector<std::vector<double>> boundary; // boundary[l-1] = [Y^{l-1} pi_l(Z)]_0^N, l = 1..m
    std::vector<double> remainder;
    std::vector<double> rhs;
    double residual = 0.0;                     // max |lhs - rhs|

    /// rhs = integral - boundary_1 + sum_{l>=2} (-1)^l boundary_l + remainder.
    void assemble();
};

/// Preliminary EML formula with an arbitrary initial datum b (scalar part 1), m >= 2.
EmlReport preliminary_eml(const PolynomialMap& f, const TimeSeries& x,
                          const PiecewiseLinearPath& path, const TruncatedTensor& b, Direction dir,
                          std::size_t m);

/// Level-by-level variance-minimising initial datum:
///   pi_l(b) = -E int pi_l(Z(X, b^{<l})) |dX| / E int |dX|.
TruncatedTensor optimal_tensor(const PathEnsemble& ensemble, Direction dir, std::size_t depth);

/// Closed-form recursion for X_t = alpha t on [0, N] with random alpha > 0.
/// moments[k-1] = E[alpha^k] for k = 1..depth+1.
TruncatedTensor optimal_tensor_lambda(const std::vector<double>& moments, Direction dir,
                                      std::size_t depth, std::size_t horizon);

/// E int ||pi_l(Z(X, b))||^2 |dX|, exact.
double variance_objective(const PathEnsemble& ensemble, Direction dir, const TruncatedTensor& b,
                          std::size_t level);

struct OptimalityReport {
    bool minimal = true;
    /// Smallest J(perturbed) - J(optimal) seen, over all levels and trials.
    double worst_margin = 0.0;
    std::size_t evaluations = 0;
};

/// For each level l <= depth, compares the objective at the optimal tensor with
/// `trials` random perturbations of level l of size 10^{-3..0}.
OptimalityReport optimality_check(const PathEnsemble& ensemble, Direction dir, std::size_t depth,
                                  std::size_t trials, std::uint64_t seed);

/// preliminary_eml at b = optimal_tensor(ensemble, dir, m+1).
EmlReport generalized_eml(const PolynomialMap& f, const TimeSeries& x,
                          const PiecewiseLinearPath& path, Direction dir, std::size_t m,
                          const PathEnsemble& ensemble);

/// ((-1)^{m+1}/m!) int_0^N f^{(m)}(s) P_m(s - [s]) ds for polynomial f, exact.
/// coeffs[i] multiplies x^i.
double classical_remainder(const std::vector<double>& coeffs, std::size_t horizon, std::size_t m);

using RealFunction = std::function<double(double)>;

/// Same remainder for a callable m-th derivative, by adaptive Gauss-Kronrod
/// quadrature on each unit cell.
double classical_remainder(const RealFunction& derivative_m, std::size_t horizon, std::size_t m);

/// Classical one-dimensional EML for X_t = t with the Bernoulli datum b^{+/-}.
/// derivatives[k] = f^{(k)} for k = 0..m. Integrals use adaptive quadrature.
EmlReport classical_eml(const std::vector<RealFunction>& derivatives, std::size_t horizon,
                        std::size_t m, Direction dir);

} // namespace emlsig

#endif // EMLSIG_EML_HPP
