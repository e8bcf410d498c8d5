#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "msdkit/metrics/cider.hpp"
#include "msdkit/metrics/meteor.hpp"
#include "msdkit/metrics/porter.hpp"

using namespace msdkit;

namespace {

CaptionPair pair_of(std::string candidate, std::vector<std::string> references,
                    std::string id = "p") {
    CaptionPair pair;
    pair.id = std::move(id);
    pair.candidate = std::move(candidate);
    pair.references = std::move(references);
    return pair;
}

// Independent CIDEr oracle over ordered maps: raw-count TF weighted by
// log(N/df), cosine per order, averaged over references, x10, mean over
// orders and pairs. Written before the implementation and kept separate
// from it.
double cider_oracle(const std::vector<CaptionPair>& pairs) {
    using Vec = std::map<std::string, double>;
    auto grams = [](const std::string& text, int n) {
        const auto tokens = tokenize(text);
        std::map<std::string, int> counts;
        if (tokens.size() < static_cast<std::size_t>(n)) return counts;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            std::string key;
            for (int k = 0; k < n; ++k) key += (k ? " " : "") + tokens[i + k];
            counts[key]++;
        }
        return counts;
    };

    const double N = static_cast<double>(pairs.size());
    double corpus = 0.0;
    for (const auto& pair : pairs) {
        double order_sum = 0.0;
        for (int n = 1; n <= 4; ++n) {
            std::map<std::string, int> df;
            for (const auto& p : pairs) {
                std::map<std::string, bool> seen;
                for (const auto& ref : p.references)
                    for (const auto& [g, c] : grams(ref, n)) seen[g] = true;
                for (const auto& [g, s] : seen) df[g]++;
            }
            auto tfidf = [&](const std::map<std::string, int>& counts) {
                Vec v;
                for (const auto& [g, c] : counts) {
                    const double d = df.count(g) ? std::max(1.0, double(df.at(g))) : 1.0;
                    v[g] = c * std::log(N / d);
                }
                return v;
            };
            const Vec cand = tfidf(grams(pair.candidate, n));
            double ref_sum = 0.0;
            for (const auto& ref : pair.references) {
                const Vec rv = tfidf(grams(ref, n));
                double dot = 0.0, na = 0.0, nb = 0.0;
                for (const auto& [g, w] : cand) {
                    na += w * w;
                    if (rv.count(g)) dot += w * rv.at(g);
                }
                for (const auto& [g, w] : rv) nb += w * w;
                ref_sum += (na > 0 && nb > 0) ? dot / (std::sqrt(na) * std::sqrt(nb)) : 0.0;
            }
            order_sum += ref_sum / double(pair.references.size());
        }
        corpus += 10.0 * order_sum / 4.0;
    }
    return corpus / N;
}

} // namespace

TEST_CASE("CIDEr degeneracies") {
    SECTION("single-pair corpus collapses to 0 with a warning") {
        std::vector<std::string> warnings;
        const std::vector<CaptionPair> corpus{pair_of("a man runs", {"a man runs"})};
        CHECK(cider(corpus, &warnings) == 0.0);
        REQUIRE(!warnings.empty());
        CHECK(warnings[0].find("IDF") != std::string::npos);
    }
    SECTION("candidate disjoint from references scores 0") {
        const std::vector<CaptionPair> corpus{
            pair_of("alpha beta gamma", {"the man runs"}),
            pair_of("delta epsilon", {"a woman jumps"}),
        };
        CHECK(cider(corpus) == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("CIDEr matches the independent TF-IDF cosine oracle") {
    SECTION("three-pair synthetic corpus") {
        const std::vector<CaptionPair> corpus{
            pair_of("a man runs fast", {"a man runs quickly", "the man sprints"}),
            pair_of("a woman kicks the ball", {"a woman kicks a ball"}),
            pair_of("the man jumps", {"a man jumps high", "the man leaps"}),
        };
        CHECK(cider(corpus) == Catch::Approx(cider_oracle(corpus)).margin(1e-9));
        CHECK(cider(corpus) > 0.0);
    }
    SECTION("five-pair corpus with repeated n-grams") {
        const std::vector<CaptionPair> corpus{
            pair_of("the the the cat", {"the cat sat on the mat"}),
            pair_of("a dog barks", {"a dog barks loudly", "the dog barks"}),
            pair_of("a man walks a dog", {"a man walks the dog"}),
            pair_of("the cat sleeps", {"a cat sleeps"}),
            pair_of("birds fly south", {"the birds fly south", "birds fly"}),
        };
        CHECK(cider(corpus) == Catch::Approx(cider_oracle(corpus)).margin(1e-9));
    }
}

TEST_CASE("Porter stemmer reference pairs") {
    const std::pair<const char*, const char*> cases[] = {
        {"caresses", "caress"}, {"ponies", "poni"},     {"ties", "ti"},
        {"caress", "caress"},   {"cats", "cat"},        {"feed", "feed"},
        {"agreed", "agre"},     {"plastered", "plaster"}, {"motoring", "motor"},
        {"sing", "sing"},       {"hopping", "hop"},     {"falling", "fall"},
        {"filing", "file"},     {"sized", "size"},      {"happy", "happi"},
        {"sky", "sky"},         {"relational", "relat"}, {"conditional", "condit"},
        {"rational", "ration"}, {"running", "run"},     {"runs", "run"},
        {"adjustable", "adjust"}, {"hopeful", "hope"},  {"goodness", "good"},
        {"formalize", "formal"}, {"electrical", "electr"},
    };
    for (const auto& [word, stem] : cases) {
        INFO(word);
        CHECK(porter_stem(word) == stem);
    }
}

TEST_CASE("simplified METEOR") {
    SECTION("identical texts follow the closed form 1 - 0.5/len^3") {
        for (const char* text : {"a man runs", "the quick brown fox jumps"}) {
            const std::vector<CaptionPair> corpus{pair_of(text, {text})};
            const double len = static_cast<double>(tokenize(text).size());
            const double expected = 1.0 - 0.5 * std::pow(1.0 / len, 3.0);
            CHECK(meteor_simplified(corpus) == Catch::Approx(expected).epsilon(1e-12));
        }
    }
    SECTION("no overlap scores 0") {
        const std::vector<CaptionPair> corpus{pair_of("alpha beta", {"gamma delta"})};
        CHECK(meteor_simplified(corpus) == 0.0);
    }
    SECTION("stem matching aligns runs with running") {
        const std::vector<CaptionPair> with_stem{pair_of("he runs", {"he running"})};
        const std::vector<CaptionPair> without{pair_of("he walks", {"he running"})};
        CHECK(meteor_simplified(with_stem) > meteor_simplified(without));
        CHECK(meteor_simplified(without) > 0.0); // "he" still matches
    }
    SECTION("scores stay in [0, 1]") {
        const std::vector<CaptionPair> corpus{
            pair_of("a man runs very fast", {"the man sprints", "a man runs"}),
            pair_of("nothing matches here", {"totally different words"}),
            pair_of("the ball", {"the ball the ball the ball"}),
        };
        const double score = meteor_simplified(corpus);
        CHECK(score >= 0.0);
        CHECK(score <= 1.0);
    }
    SECTION("fragmented alignment is penalized against contiguous alignment") {
        // same matched unigrams, different order -> more chunks -> lower
        const std::vector<CaptionPair> contiguous{pair_of("a b c d", {"a b c d e f"})};
        const std::vector<CaptionPair> scrambled{pair_of("d c b a", {"a b c d e f"})};
        CHECK(meteor_simplified(contiguous) > meteor_simplified(scrambled));
    }
}
