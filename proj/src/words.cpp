#include "emlsig/words.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>

#include "emlsig/bernoulli.hpp"

namespace emlsig {

std::vector<Composition> compositions(std::size_t n) {
    if (n == 0)
        return {Composition{}};
    // Each subset of the n-1 gaps is a cut set; group by part count.
    std::vector<std::vector<Composition>> by_parts(n + 1);
    const std::size_t gaps = n - 1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << gaps); ++mask) {
        Composition c;
        std::size_t run = 1;
        for (std::size_t g = 0; g < gaps; ++g) {
            if (mask & (std::size_t{1} << (gaps - 1 - g))) {
                c.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        c.push_back(run);
        by_parts[c.size()].push_back(std::move(c));
    }
    std::vector<Composition> out;
    for (auto& group : by_parts) {
        std::sort(group.begin(), group.end());
        out.insert(out.end(), group.begin(), group.end());
    }
    return out;
}

std::size_t composition_sum(const Composition& c) {
    std::size_t s = 0;
    for (auto p : c)
        s += p;
    return s;
}

double composition_factorial(const Composition& c) {
    double f = 1.0;
    for (auto p : c)
        f *= factorial(p);
    return f;
}

Composition unity_projection(const Composition& c) {
    auto last = std::find(c.rbegin(), c.rend(), std::size_t{1});
    if (last == c.rend())
        return {};
    return Composition(c.begin(), last.base());
}

Composition non_unity_projection(const Composition& c) {
    Composition r;
    std::copy_if(c.begin(), c.end(), std::back_inserter(r), [](std::size_t p) { return p != 1; });
    return r;
}

Letter merge_letters(const Letter& a, const Letter& b) {
    Letter r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

std::size_t word_weight(const AWord& w) {
    std::size_t s = 0;
    for (const auto& a : w)
        s += a.size();
    return s;
}

AWord word_from_indices(const std::vector<unsigned>& indices) {
    AWord w;
    for (unsigned i : indices) {
        if (i == 0)
            throw std::invalid_argument("letter indices are 1-based");
        w.push_back({i});
    }
    return w;
}

AWord bracket_by_composition(const AWord& w, const Composition& c) {
    if (composition_sum(c) != w.size())
        throw std::invalid_argument("composition sum differs from word length");
    AWord r;
    std::size_t pos = 0;
    for (auto part : c) {
        Letter merged;
        for (std::size_t i = 0; i < part; ++i)
            merged = merge_letters(merged, w[pos++]);
        r.push_back(std::move(merged));
    }
    return r;
}

void add_term(ASeries& series, const AWord& w, double coef) {
    if (coef == 0.0)
        return;
    auto [it, inserted] = series.try_emplace(w, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0.0)
            series.erase(it);
    }
}

double coefficient(const ASeries& series, const AWord& w) {
    auto it = series.find(w);
    return it == series.end() ? 0.0 : it->second;
}

ASeries& operator+=(ASeries& a, const ASeries& b) {
    for (const auto& [w, c] : b)
        add_term(a, w, c);
    return a;
}

namespace {

// Words are short here, so plain recursion on the first letters suffices.
void shuffle_into(ASeries& out, const AWord& prefix, std::span<const Letter> u,
                  std::span<const Letter> v, bool contract, double coef) {
    if (u.empty() || v.empty()) {
        AWord w = prefix;
        w.insert(w.end(), u.begin(), u.end());
        w.insert(w.end(), v.begin(), v.end());
        add_term(out, w, coef);
        return;
    }
    AWord p = prefix;
    p.push_back(u.front());
    shuffle_into(out, p, u.subspan(1), v, contract, coef);
    p.back() = v.front();
    shuffle_into(out, p, u, v.subspan(1), contract, coef);
    if (contract) {
        p.back() = merge_letters(u.front(), v.front());
        shuffle_into(out, p, u.subspan(1), v.subspan(1), contract, coef);
    }
}

ASeries bilinear(const ASeries& a, const ASeries& b, bool contract) {
    ASeries out;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b)
            shuffle_into(out, {}, u, v, contract, cu * cv);
    return out;
}

} // namespace

ASeries shuffle(const AWord& u, const AWord& v) {
    ASeries out;
    shuffle_into(out, {}, u, v, false, 1.0);
    return out;
}

ASeries quasi_shuffle(const AWord& u, const AWord& v) {
    ASeries out;
    shuffle_into(out, {}, u, v, true, 1.0);
    return out;
}

ASeries shuffle(const ASeries& a, const ASeries& b) { return bilinear(a, b, false); }
ASeries quasi_shuffle(const ASeries& a, const ASeries& b) { return bilinear(a, b, true); }

ASeries shuffle_antipode(const AWord& w) {
    AWord r(w.rbegin(), w.rend());
    ASeries out;
    add_term(out, r, w.size() % 2 == 0 ? 1.0 : -1.0);
    return out;
}

ASeries quasi_shuffle_antipode(const AWord& w) {
    const AWord r(w.rbegin(), w.rend());
    const double sign = w.size() % 2 == 0 ? 1.0 : -1.0;
    ASeries out;
    for (const auto& c : compositions(w.size()))
        add_term(out, bracket_by_composition(r, c), sign);
    return out;
}

ASeries hoffman_map(const AWord& w) {
    ASeries out;
    for (const auto& c : compositions(w.size()))
        add_term(out, bracket_by_composition(w, c), 1.0 / composition_factorial(c));
    return out;
}

std::string to_string(const AWord& w) {
    if (w.empty())
        return "()";
    std::string s;
    for (const auto& a : w) {
        if (a.size() > 1)
            s += '[';
        for (unsigned i : a)
            s += std::to_string(i);
        if (a.size() > 1)
            s += ']';
    }
    return s;
}

AWord parse_word(std::string_view text) {
    if (text == "()" || text.empty())
        return {};
    AWord w;
    auto digit = [&](char ch) {
        if (ch < '1' || ch > '9')
            throw std::invalid_argument("bad letter index '" + std::string(1, ch) + "' in word '" +
                                        std::string(text) + "'");
        return static_cast<unsigned>(ch - '0');
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '[') {
            const auto close = text.find(']', i);
            if (close == std::string_view::npos || close == i + 1)
                throw std::invalid_argument("unbalanced or empty bracket in word '" +
                                            std::string(text) + "'");
            Letter a;
            for (std::size_t j = i + 1; j < close; ++j)
                a.push_back(digit(text[j]));
            std::sort(a.begin(), a.end());
            w.push_back(std::move(a));
            i = close;
        } else {
            w.push_back({digit(text[i])});
        }
    }
    return w;
}

std::vector<Letter> letters_up_to(unsigned dim, std::size_t max_size) {
    std::vector<Letter> out;
    std::vector<Letter> frontier{Letter{}};
    for (std::size_t size = 1; size <= max_size; ++size) {
        std::vector<Letter> next;
        for (const auto& a : frontier) {
            const unsigned lo = a.empty() ? 1 : a.back();
            for (unsigned i = lo; i <= dim; ++i) {
                Letter b = a;
                b.push_back(i);
                next.push_back(std::move(b));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::vector<AWord> single_letter_words(unsigned dim, std::size_t max_length) {
    std::vector<AWord> out{AWord{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_length; ++len) {
        const std::size_t end = out.size();
        for (std::size_t k = begin; k < end; ++k)
            for (unsigned i = 1; i <= dim; ++i) {
                AWord w = out[k];
                w.push_back({i});
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

std::vector<AWord> words_up_to_weight(unsigned dim, std::size_t max_weight) {
    const auto letters = letters_up_to(dim, max_weight);
    std::vector<AWord> out{AWord{}};
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t wt = word_weight(out[k]);
        for (const auto& a : letters)
            if (wt + a.size() <= max_weight) {
                AWord w = out[k];
                w.push_back(a);
                out.push_back(std::move(w));
            }
    }
    return out;
}

} // namespace emlsig
