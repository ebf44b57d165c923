#ifndef EMLSIG_UNIVARIATE_HPP
#define EMLSIG_UNIVARIATE_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

namespace emlsig::poly1 {

// Dense univariate polynomials, coefficient i multiplies u^i.
using Poly = std::vector<double>;

inline double eval(const Poly& p, double u) {
    double r = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        r = r * u + *it;
    return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

/// a += s * b
inline void add_scaled(Poly& a, const Poly& b, double s = 1.0) {
    if (a.size() < b.size())
        a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += s * b[i];
}

/// Antiderivative vanishing at 0.
inline Poly antiderivative(const Poly& p) {
    Poly r(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i + 1] = p[i] / static_cast<double>(i + 1);
    return r;
}

inline Poly derivative(const Poly& p) {
    if (p.size() <= 1)
        return {};
    Poly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        r[i - 1] = p[i] * static_cast<double>(i);
    return r;
}

/// int_a^b p(u) du
inline double integrate(const Poly& p, double a, double b) {
    const Poly q = antiderivative(p);
    return eval(q, b) - eval(q, a);
}

} // namespace emlsig::poly1

#endif // EMLSIG_UNIVARIATE_HPP
