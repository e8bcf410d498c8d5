#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace msdkit {

// Shared tokenization rule for every caption metric: lowercase, split on
// whitespace, strip leading/trailing punctuation. Internal punctuation
// (hyphens, apostrophes) is preserved.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;
        std::size_t lo = start;
        std::size_t hi = i;
        while (lo < hi && std::ispunct(static_cast<unsigned char>(text[lo]))) ++lo;
        while (hi > lo && std::ispunct(static_cast<unsigned char>(text[hi - 1]))) --hi;
        if (lo == hi) continue;
        std::string token;
        token.reserve(hi - lo);
        for (std::size_t k = lo; k < hi; ++k)
            token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[k]))));
        tokens.push_back(std::move(token));
    }
    return tokens;
}

using NgramCounts = std::unordered_map<std::string, int>;

// Token n-grams keyed by the space-joined token sequence (tokens cannot
// contain whitespace, so the key is unambiguous).
inline NgramCounts ngram_counts(const std::vector<std::string>& tokens, int n) {
    NgramCounts counts;
    if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int k = 1; k < n; ++k) {
            key.push_back(' ');
            key += tokens[i + static_cast<std::size_t>(k)];
        }
        ++counts[key];
    }
    return counts;
}

// Per-text profile of 1..4-gram counts used by BLEU and CIDEr.
struct NGramProfile {
    std::array<NgramCounts, 4> counts;
    std::size_t token_count = 0;

    static NGramProfile build(const std::vector<std::string>& tokens) {
        NGramProfile profile;
        profile.token_count = tokens.size();
        for (int n = 1; n <= 4; ++n)
            profile.counts[static_cast<std::size_t>(n - 1)] = ngram_counts(tokens, n);
        return profile;
    }
};

} // namespace msdkit
