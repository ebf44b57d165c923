#ifndef EMLSIG_SIGNATURE_HPP
#define EMLSIG_SIGNATURE_HPP

#include <cstddef>
#include <span>

#include "emlsig/path.hpp"
#include "emlsig/tensor.hpp"

namespace emlsig {

/// Truncated signature S_{s,t}(X): iterated integrals over s < t_1 < ... < t_n < t.
/// Segment exponentials are folded left to right by Chen's identity.
TruncatedTensor signature(const PiecewiseLinearPath& path, double s, double t, std::size_t depth);

/// Flip signature, iterated integrals with reversed tensor order.
/// Computed as Gamma(S_{s,t}^{-1}).
TruncatedTensor flip_signature(const PiecewiseLinearPath& path, double s, double t,
                               std::size_t depth);

/// Defect of the integrated left-multiplication equation dS = dX (x) S for the
/// flip signature, over consecutive grid cells, normalised by cell width:
///   max ||S_{0,t'} - S_{0,t} - int_t^{t'} dX_u (x) S_{0,u}|| / (t' - t),
/// the integral evaluated in closed form per segment. Test utility.
double flip_ode_residual(const PiecewiseLinearPath& path, std::size_t depth,
                         std::span<const double> grid);

} // namespace emlsig

#endif // EMLSIG_SIGNATURE_HPP
