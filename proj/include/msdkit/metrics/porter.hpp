#pragma once

#include <string>
#include <string_view>

namespace msdkit {

// Porter (1980) suffix-stripping stemmer over lowercase ASCII words.
namespace porter_detail {

inline bool is_consonant(const std::string& w, std::size_t i) {
    switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
    case 'y':
        return i == 0 ? true : !is_consonant(w, i - 1);
    default:
        return true;
    }
}

// The measure m of the stem w[0..end): number of VC sequences.
inline int measure(const std::string& w, std::size_t end) {
    int m = 0;
    std::size_t i = 0;
    while (i < end && is_consonant(w, i)) ++i;
    while (i < end) {
        while (i < end && !is_consonant(w, i)) ++i;
        if (i >= end) break;
        ++m;
        while (i < end && is_consonant(w, i)) ++i;
    }
    return m;
}

inline bool contains_vowel(const std::string& w, std::size_t end) {
    for (std::size_t i = 0; i < end; ++i)
        if (!is_consonant(w, i)) return true;
    return false;
}

inline bool double_consonant(const std::string& w, std::size_t end) {
    if (end < 2) return false;
    return w[end - 1] == w[end - 2] && is_consonant(w, end - 1);
}

// cvc where the final c is not w, x or y.
inline bool cvc(const std::string& w, std::size_t end) {
    if (end < 3) return false;
    if (!is_consonant(w, end - 3) || is_consonant(w, end - 2) || !is_consonant(w, end - 1))
        return false;
    const char c = w[end - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Replace suffix when the remaining stem has measure > threshold.
inline bool replace_if(std::string& w, std::string_view suffix, std::string_view repl,
                       int min_measure) {
    if (!ends_with(w, suffix)) return false;
    const std::size_t stem = w.size() - suffix.size();
    if (measure(w, stem) <= min_measure) return true; // matched, rule condition failed
    w.resize(stem);
    w += repl;
    return true;
}

} // namespace porter_detail

inline std::string porter_stem(std::string_view word) {
    using namespace porter_detail;
    std::string w(word);
    if (w.size() <= 2) return w;

    // Step 1a
    if (ends_with(w, "sses")) w.resize(w.size() - 2);
    else if (ends_with(w, "ies")) w.resize(w.size() - 2);
    else if (!ends_with(w, "ss") && ends_with(w, "s")) w.resize(w.size() - 1);

    // Step 1b
    bool cleanup = false;
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    } else if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
        w.resize(w.size() - 2);
        cleanup = true;
    } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
        w.resize(w.size() - 3);
        cleanup = true;
    }
    if (cleanup) {
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w.push_back('e');
        } else if (double_consonant(w, w.size())) {
            const char c = w.back();
            if (c != 'l' && c != 's' && c != 'z') w.resize(w.size() - 1);
        } else if (measure(w, w.size()) == 1 && cvc(w, w.size())) {
            w.push_back('e');
        }
    }

    // Step 1c
    if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) w.back() = 'i';

    // Step 2 (m > 0)
    static constexpr std::pair<std::string_view, std::string_view> step2[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    };
    for (const auto& [suffix, repl] : step2)
        if (replace_if(w, suffix, repl, 0)) break;

    // Step 3 (m > 0)
    static constexpr std::pair<std::string_view, std::string_view> step3[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    for (const auto& [suffix, repl] : step3)
        if (replace_if(w, suffix, repl, 0)) break;

    // Step 4 (m > 1)
    static constexpr std::string_view step4[] = {
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
        "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    };
    for (std::string_view suffix : step4) {
        if (!ends_with(w, suffix)) continue;
        const std::size_t stem = w.size() - suffix.size();
        if (suffix == "ion" && !(stem > 0 && (w[stem - 1] == 's' || w[stem - 1] == 't'))) break;
        if (measure(w, stem) > 1) w.resize(stem);
        break;
    }

    // Step 5a
    if (ends_with(w, "e")) {
        const std::size_t stem = w.size() - 1;
        const int m = measure(w, stem);
        if (m > 1 || (m == 1 && !cvc(w, stem))) w.resize(stem);
    }
    // Step 5b
    if (measure(w, w.size()) > 1 && double_consonant(w, w.size()) && w.back() == 'l')
        w.resize(w.size() - 1);

    return w;
}

} // namespace msdkit
