#ifndef EMLSIG_POLYNOMIAL_MAP_HPP
#define EMLSIG_POLYNOMIAL_MAP_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "emlsig/univariate.hpp"

namespace emlsig {

/// Sparse polynomial in d variables: exponent vector -> coefficient.
using MultiPoly = std::map<std::vector<unsigned>, double>;

double eval(const MultiPoly& p, std::span<const double> x);
/// d/dx_i.
MultiPoly partial(const MultiPoly& p, std::size_t i);
/// u -> p(x0 + u v).
poly1::Poly restrict_to_line(const MultiPoly& p, std::span<const double> x0,
                             std::span<const double> v);

/// f: R^d -> L(R^d, R^e) as an e x d matrix of polynomials, entry (r, j) maps
/// the j-th input direction to the r-th output.
///
/// The k-th derivative stack Y^k is stored as e x d^{k+1} with entry
/// (r, i1...ik j) = d^k f_{rj} / dx_{i1}...dx_{ik}, so that
/// Y^k(v1 (x) ... (x) vk (x) w) = D^k f[v1, ..., vk](w).
class PolynomialMap {
public:
    PolynomialMap() = default;
    PolynomialMap(std::size_t in_dim, std::size_t out_dim);

    /// d = e = 1 map x -> sum_i coeffs[i] x^i.
    static PolynomialMap univariate(const std::vector<double>& coeffs);

    std::size_t in_dim() const { return in_dim_; }
    std::size_t out_dim() const { return out_dim_; }

    const MultiPoly& entry(std::size_t row, std::size_t col) const;
    void add_monomial(std::size_t row, std::size_t col, std::vector<unsigned> exps, double coef);

    /// Maximal total degree over all entries (0 for the zero map).
    std::size_t degree() const;

    /// f(x) as e x d row-major.
    std::vector<double> eval(std::span<const double> x) const;
    /// Y^k at x, e x d^{k+1} row-major.
    std::vector<double> derivative(std::size_t k, std::span<const double> x) const;
    /// Y^k along the line x0 + u v, one univariate polynomial per entry.
    std::vector<poly1::Poly> derivative_on_line(std::size_t k, std::span<const double> x0,
                                                std::span<const double> v) const;

private:
    // Calls visit(flat_index, polynomial) for every entry of Y^k.
    template <class Visit>
    void for_each_derivative(std::size_t k, Visit&& visit) const;

    std::size_t in_dim_ = 1;
    std::size_t out_dim_ = 1;
    std::vector<MultiPoly> entries_; // row-major e x d
};

} // namespace emlsig

#endif // EMLSIG_POLYNOMIAL_MAP_HPP
