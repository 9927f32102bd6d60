#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "promenade/error.hpp"

namespace promenade {

/// One letter of a word, optionally carrying a +/- exponent.
struct WordToken {
    std::string name;
    int sign = 0;
};

/// Splits "ab[a12]a" or "a+b+a-b-" into tokens. Letters are case-sensitive.
inline std::vector<WordToken> tokenize_word(std::string_view text, bool allow_signs) {
    std::vector<WordToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        WordToken t;
        if (c == '[') {
            const auto close = text.find(']', i);
            if (close == std::string_view::npos || close == i + 1) throw InvalidInput("unterminated or empty [token]");
            t.name = std::string(text.substr(i, close - i + 1));
            i = close + 1;
        } else if (c == '+' || c == '-' || c == ']') {
            throw InvalidInput(std::string("unexpected '") + c + "' in word");
        } else {
            t.name = std::string(1, c);
            ++i;
        }
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (!allow_signs) throw InvalidInput("signs are not allowed here");
            t.sign = text[i] == '+' ? 1 : -1;
            ++i;
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// Printable name for letter index k (0-based): a..z, then [a27], [a28], ...
inline std::string letter_name(int k) {
    if (k < 26) return std::string(1, static_cast<char>('a' + k));
    return "[a" + std::to_string(k + 1) + "]";
}

/// Converts tokens to letter ids numbered by first occurrence; checks each letter occurs twice.
inline std::vector<int> letters_from_tokens(const std::vector<WordToken>& tokens, std::vector<std::string>* names = nullptr) {
    std::map<std::string, int> id;
    std::vector<int> out;
    std::vector<int> count;
    for (const auto& t : tokens) {
        auto [it, fresh] = id.emplace(t.name, static_cast<int>(count.size()));
        if (fresh) {
            count.push_back(0);
            if (names) names->push_back(t.name);
        }
        ++count[it->second];
        out.push_back(it->second);
    }
    for (std::size_t k = 0; k < count.size(); ++k)
        if (count[k] != 2) throw InvalidInput("every letter must occur exactly twice");
    return out;
}

} // namespace promenade
