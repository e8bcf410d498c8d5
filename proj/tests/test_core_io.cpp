#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>
#include <string>

#include "msdkit/core/caption_io.hpp"
#include "msdkit/core/logit_io.hpp"
#include "msdkit/core/pose_io.hpp"

using namespace msdkit;

namespace {

std::string track_header(double fps = 30.0, int w = 640, int h = 480) {
    return R"({"format":"pose18","fps":)" + std::to_string(fps) + R"(,"width":)" +
           std::to_string(w) + R"(,"height":)" + std::to_string(h) +
           R"(,"source_id":"clip-0"})" + "\n";
}

std::string person_json(double x0 = 10, double y0 = 10, double x1 = 100, double y1 = 200,
                        double conf = 0.9, int keypoints = 18) {
    std::string kp = "[";
    for (int k = 0; k < keypoints; ++k) {
        if (k) kp += ",";
        kp += "[" + std::to_string(20.0 + k) + "," + std::to_string(30.0 + k) + "," +
              std::to_string(conf) + "]";
    }
    kp += "]";
    return R"({"bbox":[)" + std::to_string(x0) + "," + std::to_string(y0) + "," +
           std::to_string(x1) + "," + std::to_string(y1) + R"(],"kp":)" + kp + "}";
}

std::string frame_line(int index, int persons = 1) {
    std::string out = R"({"i":)" + std::to_string(index) + R"(,"persons":[)";
    for (int p = 0; p < persons; ++p) {
        if (p) out += ",";
        out += person_json();
    }
    out += "]}\n";
    return out;
}

PoseTrack random_track(std::mt19937_64& rng, std::size_t frames) {
    std::uniform_real_distribution<double> coord(0.0, 640.0);
    std::uniform_real_distribution<double> conf(0.0, 1.0);
    PoseTrack track;
    track.fps = 30.0;
    track.image_width = 640;
    track.image_height = 480;
    track.source_id = "random";
    for (std::size_t f = 0; f < frames; ++f) {
        PoseFrame frame;
        frame.index = static_cast<std::int64_t>(f);
        PersonDetection person;
        double lo_x = 1e9, lo_y = 1e9, hi_x = -1e9, hi_y = -1e9;
        for (auto& kp : person.keypoints) {
            kp.x = coord(rng);
            kp.y = coord(rng);
            kp.confidence = conf(rng);
            lo_x = std::min(lo_x, kp.x);
            hi_x = std::max(hi_x, kp.x);
            lo_y = std::min(lo_y, kp.y);
            hi_y = std::max(hi_y, kp.y);
        }
        person.bbox = BoundingBox{lo_x - 1, lo_y - 1, hi_x + 1, hi_y + 1};
        frame.persons.push_back(person);
        track.frames.push_back(frame);
    }
    return track;
}

} // namespace

TEST_CASE("parse_pose_track accepts minimal well-formed input") {
    const std::string text = track_header() + frame_line(0);
    const PoseTrack track = parse_pose_track(text);
    REQUIRE(track.frames.size() == 1);
    CHECK(track.fps == Catch::Approx(30.0));
    CHECK(track.source_id == "clip-0");
    REQUIRE(track.frames[0].persons.size() == 1);
    CHECK(track.frames[0].persons[0].keypoints[5].x == Catch::Approx(25.0));
}

TEST_CASE("pose track duration arithmetic") {
    std::string text = track_header(30.0);
    for (int f = 0; f < 300; ++f) text += frame_line(f);
    const PoseTrack track = parse_pose_track(text);
    CHECK(track.duration_seconds() == Catch::Approx(10.0));
}

TEST_CASE("parse_pose_track error classes") {
    SECTION("17 keypoints is a schema error") {
        const std::string text =
            track_header() + R"({"i":0,"persons":[)" + person_json(10, 10, 100, 200, 0.9, 17) +
            "]}\n";
        try {
            parse_pose_track(text);
            FAIL("expected schema error");
        } catch (const Error& e) {
            CHECK(e.kind() == errc::schema);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SECTION("non-increasing frame index is an ordering error") {
        const std::string text = track_header() + frame_line(0) + frame_line(0);
        try {
            parse_pose_track(text);
            FAIL("expected ordering error");
        } catch (const Error& e) {
            CHECK(e.kind() == errc::ordering);
        }
    }
    SECTION("malformed JSON names the line") {
        const std::string text = track_header() + "{not json\n";
        try {
            parse_pose_track(text);
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(e.kind() == errc::parse);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SECTION("confidence outside [0,1] is a value error") {
        const std::string text =
            track_header() + R"({"i":0,"persons":[)" + person_json(10, 10, 100, 200, 1.5) + "]}\n";
        CHECK_THROWS_AS(parse_pose_track(text), Error);
    }
    SECTION("visible keypoint outside bbox warns but parses") {
        std::vector<std::string> warnings;
        const std::string text =
            track_header() + R"({"i":0,"persons":[)" + person_json(1000, 1000, 1100, 1200, 0.9) +
            "]}\n";
        const PoseTrack track = parse_pose_track(text, &warnings);
        CHECK(track.frames.size() == 1);
        CHECK(!warnings.empty());
    }
}

TEST_CASE("pose track canonical round-trip") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 10; ++rep) {
        const PoseTrack track = random_track(rng, 1 + rep * 3);
        const std::string canonical = serialize_pose_track(track);
        const PoseTrack reparsed = parse_pose_track(canonical);
        CHECK(serialize_pose_track(reparsed) == canonical);
    }
}

TEST_CASE("parse_logit_stream validates header and steps") {
    SECTION("well-formed single step") {
        const std::string text =
            R"({"format":"dual_logits","vocab":["a","b","c","d"]})" "\n"
            R"({"step":0,"visual":[0.1,0.2,0.3,0.4],"motion":[0.4,0.3,0.2,0.1]})" "\n";
        const LogitStream stream = parse_logit_stream(text);
        REQUIRE(stream.steps.size() == 1);
        CHECK(stream.vocab == std::vector<std::string>{"a", "b", "c", "d"});
        CHECK(stream.steps[0].visual.size() == 4);
    }
    SECTION("length mismatch between pathways is a schema error") {
        const std::string text =
            R"({"format":"dual_logits","vocab":["a","b","c","d"]})" "\n"
            R"({"step":0,"visual":[0.1,0.2,0.3,0.4],"motion":[0.4,0.3,0.2]})" "\n";
        try {
            parse_logit_stream(text);
            FAIL("expected schema error");
        } catch (const Error& e) {
            CHECK(e.kind() == errc::schema);
        }
    }
    SECTION("steps numbered 0,2 are an ordering error") {
        const std::string text =
            R"({"format":"dual_logits","vocab":["a","b"]})" "\n"
            R"({"step":0,"visual":[0.1,0.2],"motion":[0.2,0.1]})" "\n"
            R"({"step":2,"visual":[0.1,0.2],"motion":[0.2,0.1]})" "\n";
        try {
            parse_logit_stream(text);
            FAIL("expected ordering error");
        } catch (const Error& e) {
            CHECK(e.kind() == errc::ordering);
        }
    }
    SECTION("missing header is a schema error") {
        const std::string text = R"({"step":0,"visual":[0.1],"motion":[0.2]})" "\n";
        try {
            parse_logit_stream(text);
            FAIL("expected schema error");
        } catch (const Error& e) {
            CHECK(e.kind() == errc::schema);
        }
    }
    SECTION("non-finite logit is a value error") {
        const std::string text =
            R"({"format":"dual_logits","vocab":["a","b"]})" "\n"
            R"({"step":0,"visual":[1e999,0.2],"motion":[0.2,0.1]})" "\n";
        try {
            parse_logit_stream(text);
            FAIL("expected value or parse error");
        } catch (const Error& e) {
            CHECK((e.kind() == errc::value || e.kind() == errc::parse));
        }
    }
}

TEST_CASE("logit stream canonical round-trip") {
    LogitStream stream;
    stream.vocab = {"x", "y", "z"};
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int t = 0; t < 5; ++t) {
        DualStepInput step;
        step.step = t;
        for (int i = 0; i < 3; ++i) {
            step.visual.push_back(dist(rng));
            step.motion.push_back(dist(rng));
        }
        stream.steps.push_back(step);
    }
    const std::string canonical = serialize_logit_stream(stream);
    const LogitStream reparsed = parse_logit_stream(canonical);
    CHECK(serialize_logit_stream(reparsed) == canonical);
}

TEST_CASE("caption, judge and qa parsing") {
    SECTION("caption pairs require non-empty references") {
        const std::string good =
            R"({"id":"p1","candidate":"a man runs","references":["a man runs fast"]})" "\n";
        const auto pairs = parse_caption_pairs(good);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].references.size() == 1);

        const std::string bad = R"({"id":"p1","candidate":"a man runs","references":[]})" "\n";
        CHECK_THROWS_AS(parse_caption_pairs(bad), Error);
    }
    SECTION("judge scores require all five dimensions in range") {
        const std::string good =
            R"({"id":"j1","scores":{"details_of_movements":5.61,"interaction_with_environment":5.91,)"
            R"("motivation_and_reason":5.05,"micro_expressions_and_emotions":5.54,)"
            R"("character_attributes":6.32}})" "\n";
        const auto records = parse_judge_records(good);
        REQUIRE(records.size() == 1);
        CHECK(records[0].scores.character_attributes == Catch::Approx(6.32));

        const std::string missing =
            R"({"id":"j1","scores":{"details_of_movements":5.0}})" "\n";
        try {
            parse_judge_records(missing);
            FAIL("expected schema error");
        } catch (const Error& e) {
            CHECK(e.kind() == errc::schema);
        }

        const std::string out_of_range =
            R"({"id":"j1","scores":{"details_of_movements":11.0,"interaction_with_environment":5.91,)"
            R"("motivation_and_reason":5.05,"micro_expressions_and_emotions":5.54,)"
            R"("character_attributes":6.32}})" "\n";
        CHECK_THROWS_AS(parse_judge_records(out_of_range), Error);
    }
    SECTION("qa records parse booleans") {
        const std::string text = R"({"id":"q1","pred":true,"gold":false})" "\n"
                                 R"({"id":"q2","pred":false,"gold":false})" "\n";
        const auto records = parse_qa_records(text);
        REQUIRE(records.size() == 2);
        CHECK(records[0].pred);
        CHECK(!records[0].gold);
    }
}
