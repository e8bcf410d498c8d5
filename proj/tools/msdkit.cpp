// msdkit command-line tool: pose-track filtering, keyframe sampling,
// dual-pathway synergy decoding, caption scoring and the synthetic
// hallucination-suppression experiment, all over JSONL inputs.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msdkit/msdkit.hpp"

namespace {

using msdkit::jsonl::json;

constexpr const char* tool_version = "0.1.0";

int exit_code_for(msdkit::errc kind) {
    switch (kind) {
    case msdkit::errc::io:
    case msdkit::errc::parse:
    case msdkit::errc::schema:
        return 2;
    default:
        return 1;
    }
}

struct CommonOptions {
    std::string output;
    unsigned jobs = 1;
    bool canonical = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--output", opts.output, "Output path (default: stdout)");
    cmd->add_option("--jobs", opts.jobs, "Parallel workers for multi-file commands")
        ->check(CLI::Range(1u, 256u));
    cmd->add_flag("--canonical", opts.canonical,
                  "Suppress run metadata so outputs are byte-stable");
    // --config lives on the root app; let unmatched flags reach it
    cmd->fallthrough();
}

void add_synergy_options(CLI::App* cmd, msdkit::SynergyParams& params) {
    cmd->add_option("--alpha1", params.alpha1, "Visual confidence weight");
    cmd->add_option("--alpha2", params.alpha2, "Motion confidence weight");
    cmd->add_option("--alpha3", params.alpha3, "Averaged-evidence weight");
    cmd->add_option("--alpha4", params.alpha4, "Log disagreement penalty weight");
    cmd->add_option("--alpha5", params.alpha5, "Power disagreement penalty weight");
    cmd->add_option("--alpha6", params.alpha6, "Quadratic disagreement penalty weight");
    cmd->add_option("--gamma", params.gamma, "Min-term weight of the basic score");
    cmd->add_option("--theta", params.theta, "Power-transform exponent (integer >= 1)");
    cmd->add_option("--beta", params.beta, "Pruning base threshold in [0, 1]");
}

void add_filter_options(CLI::App* cmd, msdkit::FilterConfig& cfg) {
    cmd->add_option("--single-person-ratio", cfg.single_person_ratio,
                    "Required fraction of single-person frames");
    cmd->add_option("--bbox-area-fraction", cfg.bbox_area_fraction,
                    "Minimum mean bbox area as a fraction of the image");
    cmd->add_option("--min-keypoints", cfg.min_keypoints,
                    "Visible keypoints required per quality frame");
    cmd->add_option("--min-face-keypoints", cfg.min_face_keypoints,
                    "Visible face keypoints required per quality frame");
    cmd->add_option("--quality-frame-ratio", cfg.quality_frame_ratio,
                    "Required fraction of quality frames");
    cmd->add_option("--max-segment-seconds", cfg.max_segment_seconds, "Segment length cap");
    cmd->add_option("--min-segment-seconds", cfg.min_segment_seconds,
                    "Segments shorter than this are discarded");
    cmd->add_option("--movement-frame-ratio", cfg.movement_frame_ratio,
                    "Required fraction of moving frame pairs");
    cmd->add_option("--tau", cfg.movement_threshold_tau,
                    "Movement threshold in bbox-normalized units");
}

class OutputFile {
public:
    explicit OutputFile(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) msdkit::raise(msdkit::errc::io, "cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

json meta_line() {
    const auto now = std::chrono::system_clock::now();
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    return {{"meta", {{"tool", "msdkit"}, {"version", tool_version},
                      {"created_unix", seconds.count()}}}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) msdkit::raise(msdkit::errc::io, "cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json verdict_to_json(const msdkit::FilterVerdict& verdict) {
    json criteria = json::object();
    for (const auto& [name, c] : verdict.criteria)
        criteria[name] = {{"measured", c.measured}, {"threshold", c.threshold}, {"pass", c.pass}};
    return {{"pass", verdict.pass}, {"criteria", std::move(criteria)}};
}

json error_record(const std::string& file, const msdkit::Error& e) {
    return {{"file", file},
            {"error", {{"kind", msdkit::errc_name(e.kind())}, {"message", e.what()}}}};
}

struct FileResult {
    std::string output; // JSONL rows for this input, in order
    int exit_level = 0;
};

// Runs fn over every file with at most `jobs` concurrent workers; outputs
// are collected in input order so job count never changes the bytes.
template <typename Fn>
std::vector<FileResult> process_files(const std::vector<std::string>& files, unsigned jobs,
                                      Fn&& fn) {
    std::vector<FileResult> results(files.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) results[i] = fn(files[i]);
        return results;
    }
    std::vector<std::future<FileResult>> futures(files.size());
    std::size_t next = 0;
    std::size_t done = 0;
    while (done < files.size()) {
        while (next < files.size() && next - done < jobs) {
            futures[next] = std::async(std::launch::async, fn, files[next]);
            ++next;
        }
        results[done] = futures[done].get();
        ++done;
    }
    return results;
}

int run_filter(const std::vector<std::string>& files, const msdkit::FilterConfig& cfg,
               const CommonOptions& common) {
    cfg.validate();
    auto per_file = [&](const std::string& path) {
        FileResult result;
        try {
            const msdkit::PoseTrack track = msdkit::parse_pose_track(read_file(path));
            const msdkit::SplitResult split = msdkit::split_segments(track, cfg);
            for (const auto& segment : split.segments) {
                const auto video = msdkit::video_quality(segment, cfg);
                const auto motion = msdkit::motion_quality(segment, cfg);
                const json row = {
                    {"source_id", segment.source_id},
                    {"segment",
                     {segment.frames.front().index, segment.frames.back().index}},
                    {"video_quality", verdict_to_json(video)},
                    {"motion_quality", verdict_to_json(motion)},
                    {"pass", video.pass && motion.pass}};
                result.output += row.dump();
                result.output.push_back('\n');
            }
        } catch (const msdkit::Error& e) {
            result.output = error_record(path, e).dump() + "\n";
            result.exit_level = exit_code_for(e.kind());
        }
        return result;
    };

    const auto results = process_files(files, common.jobs, per_file);
    OutputFile out(common.output);
    if (!common.canonical) out.stream() << meta_line().dump() << "\n";
    int level = 0;
    for (const auto& r : results) {
        out.stream() << r.output;
        level = std::max(level, r.exit_level);
    }
    return level;
}

int run_keyframes(const std::vector<std::string>& files, const CommonOptions& common) {
    auto per_file = [&](const std::string& path) {
        FileResult result;
        try {
            const msdkit::PoseTrack track = msdkit::parse_pose_track(read_file(path));
            const auto selections = msdkit::sample_keyframes(track);
            json keyframes = json::array();
            for (const auto& sel : selections)
                keyframes.push_back({{"segment", sel.segment_index},
                                     {"frame", sel.frame_index},
                                     {"score", sel.score}});
            const json row = {{"source_id", track.source_id}, {"keyframes", std::move(keyframes)}};
            result.output = row.dump() + "\n";
        } catch (const msdkit::Error& e) {
            result.output = error_record(path, e).dump() + "\n";
            result.exit_level = exit_code_for(e.kind());
        }
        return result;
    };

    const auto results = process_files(files, common.jobs, per_file);
    OutputFile out(common.output);
    if (!common.canonical) out.stream() << meta_line().dump() << "\n";
    int level = 0;
    for (const auto& r : results) {
        out.stream() << r.output;
        level = std::max(level, r.exit_level);
    }
    return level;
}

json breakdown_to_json(const msdkit::SynergyBreakdown& b) {
    return {{"basic", b.basic}, {"l1", b.l1}, {"l2", b.l2}, {"l3", b.l3},
            {"l4", b.l4},       {"l5", b.l5}, {"total", b.total}};
}

int run_decode(const std::string& path, msdkit::DecodeConfig cfg, bool no_msd,
               const std::string& stop_label, const CommonOptions& common) {
    std::istringstream in(read_file(path));
    msdkit::LogitStreamReader reader(in);
    const auto& vocab = reader.vocab();

    if (!stop_label.empty()) {
        auto it = std::find(vocab.begin(), vocab.end(), stop_label);
        if (it == vocab.end())
            msdkit::raise(msdkit::errc::schema, "stop token not in vocab: " + stop_label);
        cfg.stop_token = static_cast<msdkit::TokenId>(it - vocab.begin());
    }
    cfg.validate();

    OutputFile out(common.output);
    if (!common.canonical) out.stream() << meta_line().dump() << "\n";

    std::vector<std::string> tokens;
    std::size_t emitted = 0;
    while (auto step = reader.next()) {
        if (emitted >= cfg.max_steps) break;
        json row;
        msdkit::TokenId chosen;
        if (no_msd) {
            chosen = msdkit::visual_only_choice(*step);
            row = {{"step", step->step},
                   {"chosen", vocab.at(chosen)},
                   {"retained", {vocab.at(chosen)}},
                   {"p", {1.0}}};
        } else {
            const auto result = msdkit::decode_step(*step, cfg);
            chosen = result.chosen;
            json retained = json::array();
            for (msdkit::TokenId id : result.retained) retained.push_back(vocab.at(id));
            row = {{"step", step->step},
                   {"chosen", vocab.at(chosen)},
                   {"retained", std::move(retained)},
                   {"p", result.distribution},
                   {"synergy", breakdown_to_json(result.breakdown[chosen])}};
        }
        out.stream() << row.dump() << "\n";
        tokens.push_back(vocab.at(chosen));
        ++emitted;
        if (cfg.stop_token && chosen == *cfg.stop_token) break;
    }
    out.stream() << json{{"tokens", tokens}}.dump() << "\n";
    return 0;
}

int run_score(const std::string& captions_path, const std::string& judge_path,
              const std::string& qa_path, bool sentence_bleu, bool rouge_recall,
              const CommonOptions& common) {
    json report = json::object();
    std::vector<std::string> warnings;

    if (!captions_path.empty()) {
        const auto pairs = msdkit::parse_caption_pairs(read_file(captions_path));
        const auto mode =
            sentence_bleu ? msdkit::BleuMode::sentence_smoothed : msdkit::BleuMode::corpus;
        const auto variant =
            rouge_recall ? msdkit::RougeVariant::recall : msdkit::RougeVariant::f1;
        json captions;
        captions["pairs"] = pairs.size();
        captions["bleu1"] = msdkit::bleu(pairs, 1, mode, &warnings);
        captions["bleu2"] = msdkit::bleu(pairs, 2, mode, &warnings);
        captions["bleu3"] = msdkit::bleu(pairs, 3, mode, &warnings);
        captions["bleu4"] = msdkit::bleu(pairs, 4, mode, &warnings);
        captions["meteor"] = msdkit::meteor_simplified(pairs);
        captions["rouge1"] = msdkit::rouge_n(pairs, 1, variant);
        captions["rouge2"] = msdkit::rouge_n(pairs, 2, variant);
        captions["rougeL"] = msdkit::rouge_l(pairs, variant);
        captions["cider"] = msdkit::cider(pairs, &warnings);
        report["captions"] = std::move(captions);
    }
    if (!qa_path.empty()) {
        const auto records = msdkit::parse_qa_records(read_file(qa_path));
        const auto m = msdkit::classification_metrics(records, &warnings);
        report["qa"] = {{"records", records.size()},
                        {"accuracy", m.accuracy},
                        {"precision", m.precision},
                        {"recall", m.recall},
                        {"f1", m.f1}};
    }
    if (!judge_path.empty()) {
        const auto records = msdkit::parse_judge_records(read_file(judge_path));
        const auto agg = msdkit::judge_aggregate(records);
        json dims;
        const auto names = msdkit::JudgeScores::dimension_names();
        const auto means = agg.dimension_means.values();
        for (std::size_t d = 0; d < names.size(); ++d) dims[names[d]] = means[d];
        report["judge"] = {{"records", agg.count},
                           {"dimension_means", std::move(dims)},
                           {"overall", agg.overall}};
    }
    if (!warnings.empty()) report["warnings"] = warnings;
    if (!common.canonical) report["meta"] = meta_line()["meta"];

    OutputFile out(common.output);
    out.stream() << report.dump(2) << "\n";
    return 0;
}

int run_simulate(const msdkit::ScenarioSpec& spec, const msdkit::SynergyParams& params,
                 std::size_t trials, const CommonOptions& common) {
    const auto outcome = msdkit::run_comparison(spec, params, trials);

    json report = {{"spec",
                    {{"vocab_size", spec.vocab_size},
                     {"steps", spec.steps},
                     {"truth", spec.truth_tokens.front()},
                     {"hallucination", spec.hallucination_tokens.front()},
                     {"visual_margin", spec.visual_margin},
                     {"motion_margin", spec.motion_margin},
                     {"noise_sigma", spec.noise_sigma},
                     {"seed", spec.seed}}},
                   {"visual_only_errors", outcome.visual_only_errors},
                   {"msd_errors", outcome.msd_errors},
                   {"trials", outcome.trials}};
    if (!common.canonical) report["meta"] = meta_line()["meta"];

    OutputFile out(common.output);
    out.stream() << report.dump(2) << "\n";

    std::ostringstream summary;
    summary << "visual_only_errors=" << outcome.visual_only_errors
            << " msd_errors=" << outcome.msd_errors << " ratio=";
    if (outcome.visual_only_errors > 0)
        summary << static_cast<double>(outcome.msd_errors) /
                       static_cast<double>(outcome.visual_only_errors);
    else
        summary << "n/a";
    std::cerr << summary.str() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pose-based video curation, synergy decoding and caption scoring toolkit"};
    app.require_subcommand(1);
    // Config precedence: defaults < TOML file < command-line flags.
    // Subcommand options live in [filter], [decode], ... sections.
    app.set_config("--config", "", "TOML config file (flags override file values)");

    // filter
    auto* filter_cmd =
        app.add_subcommand("filter", "Split pose tracks and apply quality and motion filters");
    std::vector<std::string> filter_inputs;
    msdkit::FilterConfig filter_cfg;
    CommonOptions filter_common;
    filter_cmd->add_option("inputs", filter_inputs, "Pose-track JSONL files");
    add_filter_options(filter_cmd, filter_cfg);
    add_common_options(filter_cmd, filter_common);

    // keyframes
    auto* keyframes_cmd =
        app.add_subcommand("keyframes", "Select one keyframe per one-second segment");
    std::vector<std::string> keyframe_inputs;
    CommonOptions keyframes_common;
    keyframes_cmd->add_option("inputs", keyframe_inputs, "Pose-track JSONL files");
    add_common_options(keyframes_cmd, keyframes_common);

    // decode
    auto* decode_cmd =
        app.add_subcommand("decode", "Run synergy decoding over a dual-logit stream");
    std::string decode_input;
    msdkit::DecodeConfig decode_cfg;
    CommonOptions decode_common;
    bool no_msd = false;
    std::string score_mode = "five";
    std::string choice_mode = "greedy";
    std::string stop_label;
    std::size_t max_steps = 0;
    decode_cmd->add_option("input", decode_input, "Dual-logit JSONL stream")->required();
    add_synergy_options(decode_cmd, decode_cfg.params);
    decode_cmd->add_option("--score-mode", score_mode, "Synergy score: five | basic")
        ->check(CLI::IsMember({"five", "basic"}));
    decode_cmd->add_option("--mode", choice_mode, "Token choice: greedy | sample")
        ->check(CLI::IsMember({"greedy", "sample"}));
    decode_cmd->add_option("--seed", decode_cfg.seed, "Sampling seed");
    decode_cmd->add_option("--max-steps", max_steps, "Stop after this many steps (0 = no limit)");
    decode_cmd->add_option("--stop-token", stop_label, "Halt after emitting this token");
    decode_cmd->add_flag("--no-msd", no_msd, "Visual-only greedy baseline for A/B comparison");
    add_common_options(decode_cmd, decode_common);

    // score
    auto* score_cmd = app.add_subcommand("score", "Caption, judge and True/False QA metrics");
    std::string captions_path, judge_path, qa_path;
    bool sentence_bleu = false;
    bool rouge_recall = false;
    CommonOptions score_common;
    score_cmd->add_option("--captions", captions_path, "Caption-pair JSONL");
    score_cmd->add_option("--judge", judge_path, "Judge-score JSONL");
    score_cmd->add_option("--qa", qa_path, "True/False QA JSONL");
    score_cmd->add_flag("--sentence-bleu", sentence_bleu,
                        "Mean add-one-smoothed sentence BLEU instead of corpus BLEU");
    score_cmd->add_flag("--rouge-recall", rouge_recall,
                        "Classical recall-oriented ROUGE instead of F1");
    add_common_options(score_cmd, score_common);

    // simulate
    auto* sim_cmd =
        app.add_subcommand("simulate", "Synthetic hallucination-suppression comparison");
    std::size_t sim_vocab = 32, sim_steps = 100, sim_trials = 1;
    msdkit::TokenId sim_truth = 1, sim_hal = 2;
    double sim_visual_margin = 1.0, sim_motion_margin = 3.0, sim_noise = 0.0;
    std::uint64_t sim_seed = 0;
    msdkit::SynergyParams sim_params;
    CommonOptions sim_common;
    sim_cmd->add_option("--vocab", sim_vocab, "Vocabulary size");
    sim_cmd->add_option("--steps", sim_steps, "Steps per trial");
    sim_cmd->add_option("--truth", sim_truth, "Truth token id");
    sim_cmd->add_option("--hallucination", sim_hal, "Hallucination token id");
    sim_cmd->add_option("--visual-margin", sim_visual_margin,
                        "Raw-logit advantage of the hallucination token (visual)");
    sim_cmd->add_option("--motion-margin", sim_motion_margin,
                        "Raw-logit advantage of the truth token (motion)");
    sim_cmd->add_option("--noise-sigma", sim_noise, "Gaussian noise level");
    sim_cmd->add_option("--seed", sim_seed, "Base seed; trial t uses seed + t");
    sim_cmd->add_option("--trials", sim_trials, "Number of trials");
    add_synergy_options(sim_cmd, sim_params);
    add_common_options(sim_cmd, sim_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (filter_cmd->parsed()) return run_filter(filter_inputs, filter_cfg, filter_common);
        if (keyframes_cmd->parsed()) return run_keyframes(keyframe_inputs, keyframes_common);
        if (decode_cmd->parsed()) {
            decode_cfg.score_mode = score_mode == "basic" ? msdkit::ScoreMode::basic
                                                          : msdkit::ScoreMode::five_component;
            decode_cfg.choice = choice_mode == "sample" ? msdkit::ChoiceMode::sample
                                                        : msdkit::ChoiceMode::greedy;
            if (max_steps > 0) decode_cfg.max_steps = max_steps;
            return run_decode(decode_input, decode_cfg, no_msd, stop_label, decode_common);
        }
        if (score_cmd->parsed()) {
            if (captions_path.empty() && judge_path.empty() && qa_path.empty()) {
                std::cerr << "score: provide at least one of --captions, --judge, --qa\n";
                return 2;
            }
            return run_score(captions_path, judge_path, qa_path, sentence_bleu, rouge_recall,
                             score_common);
        }
        if (sim_cmd->parsed()) {
            const auto spec = msdkit::ScenarioSpec::uniform(
                sim_vocab, sim_steps, sim_truth, sim_hal, sim_visual_margin, sim_motion_margin,
                sim_noise, sim_seed);
            return run_simulate(spec, sim_params, sim_trials, sim_common);
        }
    } catch (const msdkit::Error& e) {
        std::cerr << "error (" << msdkit::errc_name(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
