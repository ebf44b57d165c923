#include "emlsig/signature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emlsig {

namespace {

std::vector<double> displacement(const PiecewiseLinearPath& path, std::size_t j, double a, double b) {
    auto xa = path.at_in_segment(j, a);
    auto xb = path.at_in_segment(j, b);
    for (std::size_t i = 0; i < xa.size(); ++i)
        xb[i] -= xa[i];
    return xb;
}

} // namespace

TruncatedTensor signature(const PiecewiseLinearPath& path, double s, double t, std::size_t depth) {
    if (s > t)
        throw std::invalid_argument("signature requires s <= t");
    TruncatedTensor sig = TruncatedTensor::unit(path.dim(), depth);
    const double lo = std::max(s, path.start());
    const double hi = std::min(t, path.end());
    if (lo >= hi)
        return sig;
    for (std::size_t j = path.segment_at(lo); j < path.segment_count(); ++j) {
        const double a = std::max(lo, path.times()[j]);
        const double b = std::min(hi, path.times()[j + 1]);
        if (path.times()[j] >= hi)
            break;
        if (a >= b)
            continue;
        sig = tensor_mul(sig, TruncatedTensor::exp(displacement(path, j, a, b), depth));
    }
    return sig;
}

TruncatedTensor flip_signature(const PiecewiseLinearPath& path, double s, double t,
                               std::size_t depth) {
    return gamma_involution(tensor_inverse(signature(path, s, t, depth)));
}

double flip_ode_residual(const PiecewiseLinearPath& path, std::size_t depth,
                         std::span<const double> grid) {
    double worst = 0.0;
    const double t0 = path.start();
    auto flip_to = [&](double u) { return flip_signature(path, t0, std::max(u, t0), depth); };
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
        const double t = grid[g];
        const double t1 = grid[g + 1];
        if (!(t1 > t))
            continue;
        const TruncatedTensor lhs = flip_to(t1) - flip_to(t);

        // On a piece [a, b] of one segment, S_{0,u} = exp((u - a) v) S_{0,a}, so
        // int_a^b v (x) S_{0,u} du = (exp((b - a) v) - 1) (x) S_{0,a}.
        TruncatedTensor integral(path.dim(), depth);
        std::vector<double> cuts{t};
        for (double k : path.times())
            if (k > t && k < t1)
                cuts.push_back(k);
        cuts.push_back(t1);
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double a = cuts[c];
            const double b = cuts[c + 1];
            std::vector<double> w(path.dim(), 0.0);
            if (a < path.end() && b > path.start()) {
                const double ca = std::max(a, path.start());
                const double cb = std::min(b, path.end());
                if (ca < cb)
                    w = displacement(path, path.segment_at(ca), ca, cb);
            }
            TruncatedTensor step = TruncatedTensor::exp(w, depth);
            step.scalar() = 0.0;
            integral += tensor_mul(step, flip_to(a));
        }
        const TruncatedTensor defect = lhs - integral;
        double sq = 0.0;
        for (std::size_t k = 0; k <= depth; ++k) {
            const double n = tensor_norm(defect, k);
            sq += n * n;
        }
        worst = std::max(worst, std::sqrt(sq) / (t1 - t));
    }
    return worst;
}

} // namespace emlsig
