#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rpf/errors.hpp"

namespace rpf {

namespace detail {

/// Balance check without constructing anything. Returns the position of
/// the first violation (unmatched ')' or leftover '(') or npos if ok.
/// Throws IllegalSymbol for characters outside {'(', ')'}.
inline std::size_t first_dyck_violation(std::string_view s) {
    long depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            if (--depth < 0) return i;
        } else {
            throw Error(errc::illegal_symbol, "illegal symbol '" + std::string(1, c) + "' at position " + std::to_string(i), i);
        }
    }
    if (depth != 0) return s.size();
    return std::string_view::npos;
}

inline bool is_dyck(std::string_view s) {
    return first_dyck_violation(s) == std::string_view::npos;
}

/// Calls fn(begin, end) for every outermost matching pair of a balanced
/// string, left to right. Positions delimit the chunk including its
/// parentheses.
template <typename F>
void for_each_chunk(std::string_view w, F&& fn) {
    long depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == '(') {
            if (depth == 0) start = i;
            ++depth;
        } else {
            if (--depth == 0) fn(start, i + 1);
        }
    }
}

inline std::size_t dim_sv(std::string_view w) {
    std::size_t k = 0;
    for_each_chunk(w, [&](std::size_t, std::size_t) { ++k; });
    return k;
}

inline std::size_t max_nesting_depth(std::string_view w) {
    long depth = 0, best = 0;
    for (char c : w) {
        if (c == '(') {
            if (++depth > best) best = depth;
        } else {
            --depth;
        }
    }
    return static_cast<std::size_t>(best);
}

/// Mirror image: reversed with every parenthesis flipped.
inline std::string mirror(std::string_view w) {
    std::string out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(*it == '(' ? ')' : '(');
    return out;
}

}  // namespace detail

/// A well-balanced parenthesis string. The empty word is valid.
class DyckWord {
public:
    DyckWord() = default;

    static DyckWord parse(std::string_view s) {
        std::size_t bad = detail::first_dyck_violation(s);
        if (bad != std::string_view::npos)
            throw Error(errc::not_dyck, "not a Dyck word, violation at position " + std::to_string(bad), bad);
        return DyckWord(std::string(s), trusted_tag{});
    }

    const std::string& str() const { return text_; }
    std::string_view view() const { return text_; }
    std::size_t size() const { return text_.size(); }
    std::size_t semilength() const { return text_.size() / 2; }
    bool empty() const { return text_.empty(); }

    bool operator==(const DyckWord& o) const { return text_ == o.text_; }
    bool operator!=(const DyckWord& o) const { return text_ != o.text_; }

    /// For strings already known to be balanced (algorithm outputs).
    static DyckWord trusted(std::string s) { return DyckWord(std::move(s), trusted_tag{}); }

private:
    struct trusted_tag {};
    DyckWord(std::string s, trusted_tag) : text_(std::move(s)) {}

    std::string text_;
};

inline DyckWord validate(std::string_view s) { return DyckWord::parse(s); }

/// Number of outermost matching parenthesis pairs; 0 for the empty word.
inline std::size_t dim(const DyckWord& w) { return detail::dim_sv(w.view()); }

/// A Dyck word with exactly one outermost matching pair.
class Chunk {
public:
    explicit Chunk(DyckWord w) : word_(std::move(w)) {
        if (dim(word_) != 1) throw Error(errc::domain_error, "chunk must have dimensionality 1");
    }

    const DyckWord& word() const { return word_; }
    std::size_t size() const { return word_.size(); }
    bool is_empty_pair() const { return word_.size() == 2; }

    /// The word between the outermost pair; two characters shorter.
    DyckWord content() const {
        return DyckWord::trusted(std::string(word_.view().substr(1, word_.size() - 2)));
    }

    bool operator==(const Chunk& o) const { return word_ == o.word_; }

private:
    DyckWord word_;
};

/// The unique decomposition of w into chunks, order preserved.
inline std::vector<Chunk> chunks(const DyckWord& w) {
    std::vector<Chunk> out;
    detail::for_each_chunk(w.view(), [&](std::size_t b, std::size_t e) {
        out.push_back(Chunk(DyckWord::trusted(std::string(w.view().substr(b, e - b)))));
    });
    return out;
}

inline DyckWord content(const Chunk& c) { return c.content(); }

}  // namespace rpf
