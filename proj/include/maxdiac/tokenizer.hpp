#ifndef MAXDIAC_TOKENIZER_HPP
#define MAXDIAC_TOKENIZER_HPP

// Whitespace tokenizer with leading/trailing punctuation split off.

#include <string>
#include <string_view>
#include <vector>

#include "script.hpp"

namespace maxdiac {

struct Token {
    enum class Kind : std::uint8_t { ArabicWord, Punctuation, Number, Other };

    std::u32string text;
    Kind kind = Kind::Other;
    std::size_t line = 0;
    std::size_t column = 0; // codepoint offset in the line

    bool is_word() const { return kind == Kind::ArabicWord; }
};

/// Tokens plus the text between them; separators.size() == tokens.size() + 1.
struct TokenizedLine {
    std::vector<Token> tokens;
    std::vector<std::u32string> separators;

    std::u32string join() const
    {
        std::u32string out = separators.empty() ? std::u32string() : separators[0];
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            out += tokens[i].text;
            out += separators[i + 1];
        }
        return out;
    }
};

inline Token::Kind token_kind(std::u32string_view t)
{
    if (has_arabic_letter(t))
        return Token::Kind::ArabicWord;
    bool digits = !t.empty(), puncts = !t.empty();
    for (char32_t c : t) {
        digits = digits && (is_digit(c) || c == U'.' || c == U',' || c == 0x066B || c == 0x066C);
        puncts = puncts && is_punctuation(c);
    }
    if (puncts)
        return Token::Kind::Punctuation;
    if (digits && std::any_of(t.begin(), t.end(), [](char32_t c) { return is_digit(c); }))
        return Token::Kind::Number;
    return Token::Kind::Other;
}

inline TokenizedLine tokenize(std::u32string_view line, std::size_t line_no = 0)
{
    TokenizedLine out;
    std::u32string sep;
    std::size_t i = 0;
    const auto n = line.size();

    auto emit = [&](std::size_t from, std::size_t to) {
        out.separators.push_back(std::move(sep));
        sep.clear();
        auto text = std::u32string(line.substr(from, to - from));
        auto kind = token_kind(text);
        out.tokens.push_back(Token{std::move(text), kind, line_no, from});
    };

    while (i < n) {
        if (is_whitespace(line[i])) {
            sep.push_back(line[i++]);
            continue;
        }
        std::size_t end = i;
        while (end < n && !is_whitespace(line[end]))
            ++end;

        std::size_t lo = i, hi = end;
        while (lo < hi && is_punctuation(line[lo]))
            ++lo;
        while (hi > lo && is_punctuation(line[hi - 1]))
            --hi;
        if (lo == hi) {
            // all punctuation: one token per mark
            for (std::size_t k = i; k < end; ++k)
                emit(k, k + 1);
        } else {
            for (std::size_t k = i; k < lo; ++k)
                emit(k, k + 1);
            emit(lo, hi);
            for (std::size_t k = hi; k < end; ++k)
                emit(k, k + 1);
        }
        i = end;
    }
    out.separators.push_back(std::move(sep));
    return out;
}

/// Splits a tokenized line into context windows: runs of token indices
/// between punctuation tokens.
inline std::vector<std::vector<std::size_t>> context_windows(const std::vector<Token>& tokens)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].kind == Token::Kind::Punctuation) {
            if (!cur.empty())
                out.push_back(std::move(cur));
            cur.clear();
        } else if (tokens[i].is_word()) {
            cur.push_back(i);
        }
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

} // namespace maxdiac

#endif
