#include "emlsig/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "emlsig/bernoulli.hpp"
#include "emlsig/sawtooth.hpp"
#include "emlsig/signature.hpp"

namespace emlsig {

namespace {

void check_range(const TimeSeries& x, std::size_t m, std::size_t n) {
    if (m > n || n > x.horizon())
        throw std::out_of_range("need 0 <= m <= n <= N, got m = " + std::to_string(m) +
                                ", n = " + std::to_string(n));
}

std::vector<double> outer(std::span<const double> a, std::span<const double> b) {
    std::vector<double> r(a.size() * b.size(), 0.0);
    add_outer(a, b, r);
    return r;
}

double letter_power(std::span<const double> dx, const Letter& a) {
    double p = 1.0;
    for (unsigned i : a)
        p *= dx[i - 1];
    return p;
}

double max_abs(std::span<const double> a, std::span<const double> b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

void require_interpolation(const TimeSeries& x, const PiecewiseLinearPath& path) {
    if (!interpolates(path, x))
        throw std::invalid_argument("path does not interpolate the time series");
}

} // namespace

TruncatedTensor iterated_sum(const TimeSeries& x, std::size_t m, std::size_t n, std::size_t depth) {
    check_range(x, m, n);
    // Sigma_{m,k+1} = Sigma_{m,k} (1 + dx_k).
    TruncatedTensor s = TruncatedTensor::unit(x.dim(), depth);
    for (std::size_t k = m; k < n; ++k) {
        const auto dx = x.increment(k);
        TruncatedTensor step = TruncatedTensor::from_vector(dx, depth);
        step.scalar() = 1.0;
        s = tensor_mul(s, step);
    }
    return s;
}

ASeries iss(const TimeSeries& x, std::size_t m, std::size_t n, std::size_t max_weight) {
    check_range(x, m, n);
    if (max_weight > kMaxIssWeight)
        throw std::length_error("iss weight bound exceeds " + std::to_string(kMaxIssWeight));
    const auto letters = letters_up_to(static_cast<unsigned>(x.dim()), max_weight);
    ASeries s;
    s[AWord{}] = 1.0;
    for (std::size_t k = m; k < n; ++k) {
        const auto dx = x.increment(k);
        std::vector<double> powers(letters.size());
        for (std::size_t a = 0; a < letters.size(); ++a)
            powers[a] = letter_power(dx, letters[a]);
        ASeries next = s;
        for (const auto& [w, c] : s) {
            const std::size_t wt = word_weight(w);
            for (std::size_t a = 0; a < letters.size(); ++a) {
                if (wt + letters[a].size() > max_weight)
                    continue;
                AWord ext = w;
                ext.push_back(letters[a]);
                add_term(next, ext, c * powers[a]);
            }
        }
        s = std::move(next);
    }
    return s;
}

IdentityDefect iss_character_check(const TimeSeries& x, std::size_t max_weight) {
    const std::size_t n = x.horizon();
    const std::size_t mid = n / 2;
    const ASeries full = iss(x, 0, n, max_weight);
    const ASeries left = iss(x, 0, mid, max_weight);
    const ASeries right = iss(x, mid, n, max_weight);
    const auto words = words_up_to_weight(static_cast<unsigned>(x.dim()), max_weight);

    IdentityDefect d;
    for (const auto& w : words) {
        double split = 0.0;
        for (std::size_t cut = 0; cut <= w.size(); ++cut) {
            const AWord a(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
            const AWord b(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
            split += coefficient(left, a) * coefficient(right, b);
        }
        d.chen = std::max(d.chen, std::abs(split - coefficient(full, w)));
    }
    for (const auto& u : words) {
        if (u.empty())
            continue;
        for (const auto& v : words) {
            if (v.empty() || word_weight(u) + word_weight(v) > max_weight)
                continue;
            double rhs = 0.0;
            for (const auto& [w, c] : quasi_shuffle(u, v))
                rhs += c * coefficient(full, w);
            const double lhs = coefficient(full, u) * coefficient(full, v);
            d.character = std::max(d.character, std::abs(lhs - rhs));
        }
    }
    return d;
}

std::vector<TruncatedTensor> sawtooth_at_integers(const PiecewiseLinearPath& path,
                                                   std::size_t depth) {
    const auto z = sawtooth(path, TruncatedTensor::unit(path.dim(), depth), Direction::backward,
                            depth);
    std::vector<TruncatedTensor> out;
    for (std::size_t k = 0; k <= path.horizon(); ++k)
        out.push_back(z.at(static_cast<double>(k)));
    return out;
}

double sawtooth_recursion_check(const TimeSeries& x, const PiecewiseLinearPath& path,
                                std::size_t depth) {
    require_interpolation(x, path);
    const std::size_t n = x.horizon();
    const auto z = sawtooth_at_integers(path, depth);
    std::vector<TruncatedTensor> sig;
    for (std::size_t k = 0; k <= n; ++k)
        sig.push_back(signature(path, 0.0, static_cast<double>(k), depth));
    const TruncatedTensor& total = sig[n];

    double defect = 0.0;
    for (std::size_t l = 2; l <= depth; ++l) {
        std::vector<double> rhs(total.level(l).size(), 0.0);
        for (std::size_t k = 0; k < n; ++k)
            add_outer(sig[k].level(l - 1), x.increment(k), rhs);
        for (std::size_t q = 2; q <= l; ++q)
            add_outer(total.level(l - q), z[n].level(q), rhs, q % 2 == 0 ? -1.0 : 1.0);
        defect = std::max(defect, max_abs(total.level(l), rhs));
    }
    return defect;
}

std::vector<double> sawtooth_sum_signature(const TimeSeries& x,
                                           const std::vector<TruncatedTensor>& z,
                                           const Composition& c, std::size_t m, std::size_t n) {
    check_range(x, m, n);
    if (z.size() <= n)
        throw std::invalid_argument("sawtooth values missing up to the upper summation limit");
    for (auto part : c) {
        if (part == 0)
            throw std::invalid_argument("composition parts must be positive");
        if (part > 1 && part > z[n].depth())
            throw std::invalid_argument("sawtooth depth below composition part " +
                                        std::to_string(part));
    }

    // Split I into groups (non-unit parts..., 1) and a trailing run of non-unit parts.
    std::vector<Composition> groups;
    Composition pending;
    for (auto part : c) {
        if (part == 1) {
            groups.push_back(pending);
            pending.clear();
        } else {
            pending.push_back(part);
        }
    }

    // acc[j] = sum over indices m <= j_1 < ... < j_g < j of the first g group factors.
    std::vector<std::vector<double>> acc(n + 1);
    for (std::size_t j = m; j <= n; ++j)
        acc[j] = {1.0};
    std::size_t width = 1;
    for (const auto& group : groups) {
        for (auto part : group)
            width *= level_size(x.dim(), part);
        width *= x.dim();
        std::vector<std::vector<double>> next(n + 1);
        next[m].assign(width, 0.0);
        for (std::size_t j = m; j < n; ++j) {
            std::vector<double> factor{1.0};
            for (auto part : group)
                factor = outer(factor, z[j].level(part));
            factor = outer(factor, x.increment(j));
            next[j + 1] = next[j];
            add_outer(acc[j], factor, next[j + 1]);
        }
        acc = std::move(next);
    }
    std::vector<double> result = acc[n];
    for (auto part : pending)
        result = outer(result, z[n].level(part));
    return result;
}

double discrete_signature_expansion_check(const TimeSeries& x, const PiecewiseLinearPath& path,
                                          std::size_t depth) {
    require_interpolation(x, path);
    const std::size_t n = x.horizon();
    const auto z = sawtooth_at_integers(path, depth);
    const TruncatedTensor total = signature(path, 0.0, static_cast<double>(n), depth);
    double defect = 0.0;
    for (std::size_t l = 1; l <= depth; ++l) {
        std::vector<double> rhs(total.level(l).size(), 0.0);
        for (const auto& c : compositions(l)) {
            const Composition star = non_unity_projection(c);
            const double sign = (composition_sum(star) + star.size()) % 2 == 0 ? 1.0 : -1.0;
            const auto term = sawtooth_sum_signature(x, z, c, 0, n);
            for (std::size_t i = 0; i < rhs.size(); ++i)
                rhs[i] += sign * term[i];
        }
        defect = std::max(defect, max_abs(total.level(l), rhs));
    }
    return defect;
}

namespace {

void check_word(const TimeSeries& x, const std::vector<unsigned>& word) {
    if (word.size() < 2)
        throw std::invalid_argument("sawtooth word must have length >= 2");
    for (unsigned j : word)
        if (j == 0 || j > x.dim())
            throw std::out_of_range("word index " + std::to_string(j) + " outside 1.." +
                                    std::to_string(x.dim()));
}

// [j_hi ... j_lo] reversed: letters word[hi-1], ..., word[lo] as an AWord.
AWord reversed_slice(const std::vector<unsigned>& word, std::size_t lo, std::size_t hi) {
    AWord w;
    for (std::size_t i = hi; i > lo; --i)
        w.push_back({word[i - 1]});
    return w;
}

double weight_difference(const Composition& c) {
    Composition reduced = c;
    reduced.front() -= 1;
    return 1.0 / composition_factorial(c) - 1.0 / composition_factorial(reduced);
}

} // namespace

double sawtooth_integer_form(const TimeSeries& x, const std::vector<unsigned>& word,
                             std::size_t m) {
    check_word(x, word);
    const std::size_t n = word.size();
    const ASeries s = iss(x, 0, m, n);
    const AWord rev = reversed_slice(word, 0, n);
    double r = 0.0;
    for (const auto& c : compositions(n))
        if (c.front() > 1)
            r += weight_difference(c) * coefficient(s, bracket_by_composition(rev, c));
    return r;
}

double sawtooth_integer_form_split(const TimeSeries& x, const std::vector<unsigned>& word,
                                   std::size_t m) {
    check_word(x, word);
    const std::size_t n = word.size();
    const ASeries s = iss(x, 0, m, n);
    const AWord rev = reversed_slice(word, 0, n);
    double r = 0.0;
    for (const auto& c : compositions(n))
        r += coefficient(s, bracket_by_composition(rev, c)) / composition_factorial(c);
    const AWord head = reversed_slice(word, 0, n - 1);
    const auto parts = compositions(n - 1);
    for (std::size_t k = 0; k < m; ++k) {
        const ASeries tail = iss(x, k, m, n - 1);
        double inner = 0.0;
        for (const auto& c : parts)
            inner += coefficient(tail, bracket_by_composition(head, c)) / composition_factorial(c);
        r -= inner * x.increment(k)[word[n - 1] - 1];
    }
    return r;
}

double explicit_sawtooth_linear(const TimeSeries& x, const std::vector<unsigned>& word, double t) {
    check_word(x, word);
    const double horizon = static_cast<double>(x.horizon());
    if (!(t >= 0.0 && t <= horizon))
        throw std::out_of_range("evaluation time outside [0, N]");
    const double whole = std::floor(t);
    const auto cell = static_cast<std::size_t>(whole);
    if (t == whole)
        return sawtooth_integer_form(x, word, cell);

    const std::size_t n = word.size();
    const double f = t - whole;
    const auto dx = x.increment(cell);
    auto local_power = [&](std::size_t i) {
        double p = 1.0;
        for (std::size_t r = 0; r < i; ++r)
            p *= dx[word[r] - 1];
        return p;
    };
    double r = (std::pow(f, static_cast<double>(n)) / factorial(n) -
                std::pow(f, static_cast<double>(n - 1)) / factorial(n - 1)) *
               local_power(n);
    const ASeries s = iss(x, 0, cell, n);
    for (std::size_t i = 0; i + 2 <= n; ++i) {
        const AWord rev = reversed_slice(word, i, n);
        double inner = 0.0;
        for (const auto& c : compositions(n - i))
            if (c.front() > 1)
                inner += weight_difference(c) * coefficient(s, bracket_by_composition(rev, c));
        r += std::pow(f, static_cast<double>(i)) / factorial(i) * local_power(i) * inner;
    }
    return r;
}

double hoffman_identity_check(const TimeSeries& x, std::size_t m, std::size_t n) {
    if (m > x.horizon())
        throw std::out_of_range("hoffman check endpoint beyond N");
    const auto path = interpolate_linear(x);
    const TruncatedTensor sig = signature(path, 0.0, static_cast<double>(m), n);
    const ASeries s = iss(x, 0, m, n);
    double defect = 0.0;
    for (const auto& w : single_letter_words(static_cast<unsigned>(x.dim()), n)) {
        if (w.empty())
            continue;
        std::vector<std::size_t> idx;
        for (const auto& a : w)
            idx.push_back(a.front() - 1);
        double rhs = 0.0;
        for (const auto& [v, c] : hoffman_map(w))
            rhs += c * coefficient(s, v);
        defect = std::max(defect, std::abs(sig.coeff(idx) - rhs));
    }
    return defect;
}

} // namespace emlsig
