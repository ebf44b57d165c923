#ifndef EMLSIG_BERNOULLI_HPP
#define EMLSIG_BERNOULLI_HPP

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace emlsig {

using Rational = boost::multiprecision::cpp_rational;

/// B^- has B_1 = -1/2 (backward sums), B^+ has B_1 = +1/2 (forward sums).
enum class BernoulliSign { minus, plus };

struct BernoulliTable {
    BernoulliSign sign = BernoulliSign::minus;
    std::vector<Rational> exact;               // B_0 .. B_m
    std::vector<double> values;                // same, rounded
    std::vector<std::vector<Rational>> poly;   // P_0 .. P_m, coefficient i of x^i
};

/// Bernoulli numbers B_0..B_m of the requested sign and the Bernoulli polynomials
/// P_0..P_m, built from P_0 = 1, P_m' = m P_{m-1}, int_0^1 P_m = 0.
BernoulliTable bernoulli_numbers(BernoulliSign sign, std::size_t m);

/// Coefficients of P_m as doubles.
std::vector<double> bernoulli_polynomial_coeffs(std::size_t m);

/// P_m(s).
double bernoulli_polynomial(std::size_t m, double s);

/// (1/(p+1)) sum_j C(p+1, j) N^{p+1-j} B_j, exactly. With B^- this is
/// sum_{k=0}^{N-1} k^p, with B^+ it is sum_{k=1}^{N} k^p.
Rational faulhaber_exact(std::size_t p, std::size_t n, BernoulliSign sign);
double faulhaber(std::size_t p, std::size_t n, BernoulliSign sign);

double factorial(std::size_t n);
double binomial(std::size_t n, std::size_t k);

} // namespace emlsig

#endif // EMLSIG_BERNOULLI_HPP
