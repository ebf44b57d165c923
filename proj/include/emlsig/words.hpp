#ifndef EMLSIG_WORDS_HPP
#define EMLSIG_WORDS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace emlsig {

/// Ordered tuple of positive parts; the empty vector is the composition of 0.
using Composition = std::vector<std::size_t>;

/// All compositions of n: by number of parts, then lexicographically.
/// n = 3 gives (3), (1,2), (2,1), (1,1,1).
std::vector<Composition> compositions(std::size_t n);

std::size_t composition_sum(const Composition& c);
double composition_factorial(const Composition& c);

/// Prefix of I up to and including its last part equal to 1 (empty if none).
Composition unity_projection(const Composition& c);
/// I with every part equal to 1 removed.
Composition non_unity_projection(const Composition& c);

/// Sorted multiset of 1-based indices, e.g. {1,2} for the bracket [12].
using Letter = std::vector<unsigned>;
using AWord = std::vector<Letter>;
/// Linear combination of words; zero coefficients are never stored.
using ASeries = std::map<AWord, double>;

/// Commutative letter product: multiset union.
Letter merge_letters(const Letter& a, const Letter& b);
std::size_t word_weight(const AWord& w);

/// Word of single-index letters j1 j2 ... jn.
AWord word_from_indices(const std::vector<unsigned>& indices);

/// [w]_I: consecutive blocks of sizes I_1, ..., I_k merged into single letters.
AWord bracket_by_composition(const AWord& w, const Composition& c);

/// series[w] += coef, dropping entries that cancel to zero.
void add_term(ASeries& series, const AWord& w, double coef);
double coefficient(const ASeries& series, const AWord& w);
ASeries& operator+=(ASeries& a, const ASeries& b);

ASeries shuffle(const AWord& u, const AWord& v);
ASeries quasi_shuffle(const AWord& u, const AWord& v);
/// Bilinear extensions.
ASeries shuffle(const ASeries& a, const ASeries& b);
ASeries quasi_shuffle(const ASeries& a, const ASeries& b);

/// A(a1...an) = (-1)^n an...a1.
ASeries shuffle_antipode(const AWord& w);
/// A^(a1...an) = (-1)^n sum over I in C(n) of [an...a1]_I.
ASeries quasi_shuffle_antipode(const AWord& w);
/// Sum over I in C(n) of [w]_I / I!.
ASeries hoffman_map(const AWord& w);

/// Applies a word-level linear map termwise.
template <class F>
ASeries apply_linear(const ASeries& s, F&& map) {
    ASeries out;
    for (const auto& [w, c] : s)
        for (const auto& [w2, c2] : map(w))
            add_term(out, w2, c * c2);
    return out;
}

/// Text form for indices 1..9: multi-index letters bracketed, e.g. "[12]3".
/// The empty word prints as "()".
std::string to_string(const AWord& w);
/// Inverse of to_string; throws std::invalid_argument on malformed input.
AWord parse_word(std::string_view text);

/// Every letter over {1..dim} of size 1..max_size.
std::vector<Letter> letters_up_to(unsigned dim, std::size_t max_size);
/// Every word over single-index letters {1..dim} of length 0..max_length.
std::vector<AWord> single_letter_words(unsigned dim, std::size_t max_length);
/// Every word over letters_up_to(dim, max_weight) with total weight 0..max_weight.
std::vector<AWord> words_up_to_weight(unsigned dim, std::size_t max_weight);

} // namespace emlsig

#endif // EMLSIG_WORDS_HPP
