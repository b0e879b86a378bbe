#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wsncodec/metrics.hpp"
#include "wsncodec/netsim.hpp"

namespace wsncodec {

// ---------------- configuration ----------------

enum class CodecId {
    alaw,
    mulaw,
    dpcm,
    fibonacci,
    fibonacci_pseudo,  // codebook matched to the source histogram
    tcode,
    tcode_pseudo,
    modulo,
    haar,
    discus,
};

[[nodiscard]] std::string codec_name(CodecId id);
[[nodiscard]] CodecId codec_from_name(const std::string& name);

// One experiment, expressible as a flat key = value file or as CLI flags
// (the keys are the flag names).
struct ExperimentConfig {
    CodecId codec = CodecId::mulaw;
    std::string source;              // "trace:FILE" or "pseudo:FILE"
    std::string correlation = "none";  // none | bitflip:T | same-bin:N | additive-delta:D
    unsigned rate = 2;               // sampling rate, Hz
    std::uint64_t samples = 100;     // rounds (samples per node)
    unsigned frame = 16;             // DPCM frame length
    unsigned modulo_n = 8;           // modulo bin width
    std::uint64_t seed = 1;
    std::string out;                 // artifact directory, empty = none
    std::string format = "table";    // table | csv | json

    [[nodiscard]] bool operator==(const ExperimentConfig&) const = default;
};

// Parse "key = value" lines ('#' starts a comment).  Unknown keys and
// malformed values are reported with their line number.
[[nodiscard]] ExperimentConfig parse_config(const std::string& text,
                                            const std::string& origin = "config");
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

// Render a config back to the file format; parse(render(c)) == c.
[[nodiscard]] std::string render_config(const ExperimentConfig& config);

// Fill derived defaults (a distributed codec with correlation "none" gets
// its natural model) and reject inconsistent settings.
[[nodiscard]] ExperimentConfig normalize(const ExperimentConfig& config);

// ---------------- running ----------------

struct RunResult {
    ExperimentConfig config;  // normalized
    EventLog log;
    MetricsReport metrics;
    std::optional<EntropyReport> entropy;  // present when pairs are model-driven
};

// Execute one experiment in memory.  ConfigError/ParseError mark bad
// inputs; anything else is a runtime failure.
[[nodiscard]] RunResult run_experiment(const ExperimentConfig& config);

// Write events.csv, events.jsonl, metrics.csv/json/txt, series.csv and
// config.txt under config.out.
void write_artifacts(const RunResult& result);

// ---------------- commands ----------------
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

int run_command(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int compare_command(const std::vector<std::string>& config_files,
                    const std::string& format, const std::string& out_dir,
                    std::ostream& out, std::ostream& err);

}  // namespace wsncodec
