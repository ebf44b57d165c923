#ifndef EMLSIG_DISCRETE_HPP
#define EMLSIG_DISCRETE_HPP

#include <cstddef>
#include <vector>

#include "emlsig/path.hpp"
#include "emlsig/tensor.hpp"
#include "emlsig/words.hpp"

namespace emlsig {

/// Largest word weight accepted by iss().
inline constexpr std::size_t kMaxIssWeight = 6;

/// Sigma_{m,n}(x): level k is the sum over m <= i1 < ... < ik < n of
/// dx_{i1} (x) ... (x) dx_{ik}.
TruncatedTensor iterated_sum(const TimeSeries& x, std::size_t m, std::size_t n, std::size_t depth);

/// Iterated-sum signature over bracketed letters, every word of total weight
/// <= max_weight. A letter [i1...ik] at time l contributes dx_l^{i1} ... dx_l^{ik}.
ASeries iss(const TimeSeries& x, std::size_t m, std::size_t n, std::size_t max_weight);

struct IdentityDefect {
    double character = 0.0; // quasi-shuffle character defect
    double chen = 0.0;       // concatenation defect at the midpoint split
    double max() const { return character > chen ? character : chen; }
};

/// Checks that the ISS over [0, N] is a quasi-shuffle character and satisfies
/// Chen's identity, for words with weights adding up to at most max_weight.
IdentityDefect iss_character_check(const TimeSeries& x, std::size_t max_weight);

/// Backward sawtooth Z^-(X, 1) sampled at 0, ..., N.
std::vector<TruncatedTensor> sawtooth_at_integers(const PiecewiseLinearPath& path,
                                                   std::size_t depth);

/// Defect of
///   pi_l(S_{0,N}) = sum_k pi_{l-1}(S_{0,k}) (x) dx_k
///                   + sum_{q=2}^{l} (-1)^{q+1} pi_{l-q}(S_{0,N}) (x) pi_q(Z_N),
/// maximised over 2 <= l <= depth, with Z = Z^-(X, 1).
double sawtooth_recursion_check(const TimeSeries& x, const PiecewiseLinearPath& path,
                                std::size_t depth);

/// Sawtooth sum signature of level I, a tensor with d^{|I|_sum} entries.
///
/// Every part equal to 1 takes its own strictly increasing summation index j
/// in [m, n) and contributes dx_j. A part I_s > 1 contributes pi_{I_s}(Z_j)
/// where j is the index of the nearest unit part to its right, or pi_{I_s}(Z_n)
/// when no unit part follows. `z` holds Z at 0, ..., N.
std::vector<double> sawtooth_sum_signature(const TimeSeries& x,
                                           const std::vector<TruncatedTensor>& z,
                                           const Composition& c, std::size_t m, std::size_t n);

/// Defect of pi_l(S_{0,N}) = sum over I in C(l) of (-1)^{|I*|_sum + |I*|} Sigma^I_{0,N},
/// maximised over 1 <= l <= depth.
double discrete_signature_expansion_check(const TimeSeries& x, const PiecewiseLinearPath& path,
                                          std::size_t depth);

/// <Z_t, j1...jn> for the backward sawtooth Z^-(X, 1) of the linear
/// interpolation of x, from ISS coefficients. `word` holds 1-based indices,
/// n >= 2, t in [0, N]. Integer t uses the integer-time form.
double explicit_sawtooth_linear(const TimeSeries& x, const std::vector<unsigned>& word, double t);

/// Integer-time form: sum over I in C(n), I_1 > 1, of
/// (1/I! - 1/(I-e_1)!) <S_{0,m}(x), [jn...j1]_I>.
double sawtooth_integer_form(const TimeSeries& x, const std::vector<unsigned>& word,
                             std::size_t m);
/// The same value rewritten as
///   sum_{I in C(n)} <S_{0,m}, [jn...j1]_I>/I!
///   - sum_{I in C(n-1)} sum_{k<m} <S_{k,m}, [j_{n-1}...j1]_I>/I! dx_k^{jn}.
double sawtooth_integer_form_split(const TimeSeries& x, const std::vector<unsigned>& word,
                                   std::size_t m);

/// max over words w of length 1..n of |<S_{0,m}(X), w> - <ISS_{0,m}(x), Phi_H(w)>|
/// with X the linear interpolation of x.
double hoffman_identity_check(const TimeSeries& x, std::size_t m, std::size_t n);

} // namespace emlsig

#endif // EMLSIG_DISCRETE_HPP
