#ifndef EMLSIG_TENSOR_HPP
#define EMLSIG_TENSOR_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace emlsig {

/// Largest admissible number of coefficients d^p on the top level.
inline constexpr std::size_t kMaxLevelSize = 10'000'000;

/// Number of coefficients on level k of a tensor over R^dim, i.e. dim^k.
/// Throws std::length_error when the result would exceed kMaxLevelSize.
std::size_t level_size(std::size_t dim, std::size_t k);

/// Element of the truncated tensor algebra T^p(R^d).
///
/// Level k holds d^k coefficients indexed by words (i1,...,ik), 0-based,
/// stored row-major with i1 varying slowest. Level 0 is a single scalar.
class TruncatedTensor {
public:
    TruncatedTensor() = default;
    TruncatedTensor(std::size_t dim, std::size_t depth);

    /// The unit 1 = (1, 0, 0, ...).
    static TruncatedTensor unit(std::size_t dim, std::size_t depth);
    /// The element (0, v, 0, ...).
    static TruncatedTensor from_vector(std::span<const double> v, std::size_t depth);
    /// Truncated exponential 1 + v + v^2/2! + ... + v^p/p!.
    static TruncatedTensor exp(std::span<const double> v, std::size_t depth);

    std::size_t dim() const { return dim_; }
    std::size_t depth() const { return levels_.empty() ? 0 : levels_.size() - 1; }

    double scalar() const { return levels_[0][0]; }
    double& scalar() { return levels_[0][0]; }

    std::span<const double> level(std::size_t k) const;
    std::span<double> level(std::size_t k);

    /// Coefficient of the word (i1,...,ik), 0-based letters.
    double coeff(std::span<const std::size_t> word) const;
    double& coeff(std::span<const std::size_t> word);

    /// Copy restricted (or zero-extended) to a new depth.
    TruncatedTensor with_depth(std::size_t depth) const;

    TruncatedTensor& operator+=(const TruncatedTensor& other);
    TruncatedTensor& operator-=(const TruncatedTensor& other);
    TruncatedTensor& operator*=(double s);

    friend bool operator==(const TruncatedTensor&, const TruncatedTensor&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::vector<double>> levels_;
};

TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b);
TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b);
TruncatedTensor operator*(double s, TruncatedTensor a);

/// Truncated product; result depth is min(a.depth(), b.depth()).
TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b);
inline TruncatedTensor operator*(const TruncatedTensor& a, const TruncatedTensor& b) {
    return tensor_mul(a, b);
}

/// Group inverse of an element with scalar part 1.
TruncatedTensor tensor_inverse(const TruncatedTensor& a);

/// Gamma: level k scaled by (-1)^k.
TruncatedTensor gamma_involution(const TruncatedTensor& a);

/// Euclidean norm of the level-k coefficient array.
double tensor_norm(const TruncatedTensor& a, std::size_t k);

/// Largest absolute coefficient difference over all levels up to the common depth.
double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b);

/// out += alpha * (a outer b), with a's index slowest.
void add_outer(std::span<const double> a, std::span<const double> b, std::span<double> out,
               double alpha = 1.0);

} // namespace emlsig

#endif // EMLSIG_TENSOR_HPP
