#include "wsncodec/experiment.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "wsncodec/errors.hpp"
#include "wsncodec/sim_codecs.hpp"

namespace wsncodec {

// ---------------- codec names ----------------

namespace {

constexpr std::pair<CodecId, const char*> kCodecNames[] = {
    {CodecId::alaw, "alaw"},
    {CodecId::mulaw, "mulaw"},
    {CodecId::dpcm, "dpcm"},
    {CodecId::fibonacci, "fibonacci"},
    {CodecId::fibonacci_pseudo, "fibonacci-pseudo"},
    {CodecId::tcode, "tcode"},
    {CodecId::tcode_pseudo, "tcode-pseudo"},
    {CodecId::modulo, "modulo"},
    {CodecId::haar, "haar"},
    {CodecId::discus, "discus"},
};

bool is_distributed(CodecId id) {
    return id == CodecId::modulo || id == CodecId::haar || id == CodecId::discus;
}

bool is_pseudo_matched(CodecId id) {
    return id == CodecId::fibonacci_pseudo || id == CodecId::tcode_pseudo;
}

}  // namespace

std::string codec_name(CodecId id) {
    for (const auto& [codec, name] : kCodecNames) {
        if (codec == id) return name;
    }
    throw std::logic_error("codec_name: unknown codec");
}

CodecId codec_from_name(const std::string& name) {
    for (const auto& [codec, codec_str] : kCodecNames) {
        if (name == codec_str) return codec;
    }
    std::string known;
    for (const auto& [_, codec_str] : kCodecNames) {
        if (!known.empty()) known += ", ";
        known += codec_str;
    }
    throw ConfigError("unknown codec \"" + name + "\" (known: " + known + ")");
}

// ---------------- config parsing ----------------

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_unsigned(const std::string& value, const std::string& where) {
    std::uint64_t v = 0;
    const auto* begin = value.data();
    const auto* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(where + ": expected a non-negative integer, got \"" + value +
                          "\"");
    }
    return v;
}

void apply_key(ExperimentConfig& config, const std::string& key,
               const std::string& value, const std::string& where) {
    if (key == "codec") {
        config.codec = codec_from_name(value);
    } else if (key == "source") {
        config.source = value;
    } else if (key == "correlation") {
        config.correlation = value;
    } else if (key == "rate") {
        config.rate = static_cast<unsigned>(parse_unsigned(value, where));
    } else if (key == "samples") {
        config.samples = parse_unsigned(value, where);
    } else if (key == "frame") {
        config.frame = static_cast<unsigned>(parse_unsigned(value, where));
    } else if (key == "modulo-n") {
        config.modulo_n = static_cast<unsigned>(parse_unsigned(value, where));
    } else if (key == "seed") {
        config.seed = parse_unsigned(value, where);
    } else if (key == "out") {
        config.out = value;
    } else if (key == "format") {
        config.format = value;
    } else {
        throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        const std::string where = origin + ":" + std::to_string(lineno);
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected \"key = value\"");
        }
        apply_key(config, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)),
                  where);
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

std::string render_config(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "codec = " << codec_name(config.codec) << '\n';
    out << "source = " << config.source << '\n';
    out << "correlation = " << config.correlation << '\n';
    out << "rate = " << config.rate << '\n';
    out << "samples = " << config.samples << '\n';
    out << "frame = " << config.frame << '\n';
    out << "modulo-n = " << config.modulo_n << '\n';
    out << "seed = " << config.seed << '\n';
    out << "out = " << config.out << '\n';
    out << "format = " << config.format << '\n';
    return out.str();
}

// ---------------- validation ----------------

namespace {

std::optional<CorrelationModel> parse_correlation(const std::string& spec,
                                                  const ExperimentConfig& config) {
    if (spec == "none") return std::nullopt;
    const auto colon = spec.find(':');
    const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    CorrelationModel model;
    if (kind == "bitflip") {
        model.kind = CorrelationModel::Kind::bitflip;
        model.param = 1;
    } else if (kind == "same-bin") {
        model.kind = CorrelationModel::Kind::same_bin;
        model.param = config.modulo_n;
    } else if (kind == "additive-delta") {
        model.kind = CorrelationModel::Kind::additive_delta;
        model.param = 16;
    } else {
        throw ConfigError("correlation: unknown model \"" + kind +
                          "\" (known: none, bitflip:T, same-bin:N, additive-delta:D)");
    }
    if (!arg.empty()) {
        model.param = static_cast<unsigned>(parse_unsigned(arg, "correlation"));
    }
    return model;
}

}  // namespace

ExperimentConfig normalize(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    if (c.source.empty()) {
        throw ConfigError("source: required, \"trace:FILE\" or \"pseudo:FILE\"");
    }
    const auto colon = c.source.find(':');
    const std::string source_kind = c.source.substr(0, colon);
    if (colon == std::string::npos || source_kind.empty() ||
        (source_kind != "trace" && source_kind != "pseudo") ||
        c.source.size() == colon + 1) {
        throw ConfigError("source: expected \"trace:FILE\" or \"pseudo:FILE\", got \"" +
                          c.source + "\"");
    }
    if (c.rate < kMinSamplingRateHz || c.rate > kMaxSamplingRateHz) {
        throw ConfigError("rate: must lie in " + std::to_string(kMinSamplingRateHz) +
                          ".." + std::to_string(kMaxSamplingRateHz) + " Hz");
    }
    if (c.samples == 0) {
        throw ConfigError("samples: must be positive");
    }
    if (c.frame == 0) {
        throw ConfigError("frame: must be positive");
    }
    if (c.format != "table" && c.format != "csv" && c.format != "json") {
        throw ConfigError("format: expected table, csv or json, got \"" + c.format +
                          "\"");
    }
    // A distributed codec needs correlated pairs; give each its natural
    // model when the config does not name one.
    if (c.correlation == "none" && is_distributed(c.codec)) {
        switch (c.codec) {
            case CodecId::modulo:
                c.correlation = "same-bin:" + std::to_string(c.modulo_n);
                break;
            case CodecId::haar:
                c.correlation = "additive-delta:16";
                break;
            default:
                c.correlation = "bitflip:1";
                break;
        }
    }
    // Verify the model string, drawing one probe pair so out-of-range
    // parameters surface here as configuration errors, not mid-run.
    if (const auto model = parse_correlation(c.correlation, c)) {
        try {
            SplitMix64 probe(1);
            (void)next_pair(*model, 0, probe);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("correlation: " + std::string(e.what()));
        }
    }
    if (c.codec == CodecId::modulo) {
        try {
            (void)modulo_residue_bits(ModuloParams{c.modulo_n});
        } catch (const std::invalid_argument& e) {
            throw ConfigError("modulo-n: " + std::string(e.what()));
        }
    }
    return c;
}

// ---------------- running ----------------

namespace {

struct SourceBundle {
    std::function<Sample()> next;
    FrequencyTable histogram = FrequencyTable::uniform(256);
    std::shared_ptr<TraceSource> trace;
    std::shared_ptr<PseudoSource> pseudo;
};

SourceBundle open_source(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::filesystem::path path = spec.substr(colon + 1);
    SourceBundle bundle;
    if (kind == "trace") {
        bundle.trace = std::make_shared<TraceSource>(load_trace(path));
        bundle.histogram = estimate_histogram(*bundle.trace);
        bundle.next = [src = bundle.trace] { return src->next(); };
    } else {
        const FrequencyTable table = FrequencyTable::load_csv(path);
        bundle.pseudo = std::make_shared<PseudoSource>(table);
        bundle.histogram = table;
        bundle.next = [src = bundle.pseudo] { return src->next(); };
    }
    return bundle;
}

// Codewords must fit the packet's 16-bit field.
constexpr std::size_t kPacketCodewordBits = 16;

std::unique_ptr<SimCodec> make_codec(const ExperimentConfig& config,
                                     const FrequencyTable& histogram) {
    switch (config.codec) {
        case CodecId::alaw:
            return std::make_unique<CompanderSimCodec>(
                CompanderParams{CompanderLaw::a_law});
        case CodecId::mulaw:
            return std::make_unique<CompanderSimCodec>(
                CompanderParams{CompanderLaw::mu_law});
        case CodecId::dpcm:
            return std::make_unique<DpcmSimCodec>(config.frame);
        case CodecId::fibonacci:
            return std::make_unique<SymbolSimCodec>(
                "fibonacci", build_fibonacci_codebook(FrequencyTable::uniform(256)));
        case CodecId::fibonacci_pseudo:
            return std::make_unique<SymbolSimCodec>("fibonacci-pseudo",
                                                    build_fibonacci_codebook(histogram));
        case CodecId::tcode:
            return std::make_unique<SymbolSimCodec>(
                "tcode", build_tcode_codebook(FrequencyTable::uniform(256),
                                              kPacketCodewordBits));
        case CodecId::tcode_pseudo:
            return std::make_unique<SymbolSimCodec>(
                "tcode-pseudo", build_tcode_codebook(histogram, kPacketCodewordBits));
        case CodecId::modulo:
            return std::make_unique<ModuloSimCodec>(ModuloParams{config.modulo_n});
        case CodecId::haar:
            return std::make_unique<HaarSimCodec>();
        case CodecId::discus:
            return std::make_unique<DiscusSimCodec>();
    }
    throw std::logic_error("make_codec: unknown codec");
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& raw_config) {
    RunResult result;
    result.config = normalize(raw_config);
    const ExperimentConfig& config = result.config;

    SourceBundle source = open_source(config.source);
    const auto model = parse_correlation(config.correlation, config);
    auto codec = make_codec(config, source.histogram);

    SimulationParams params;
    params.sampling_rate_hz = config.rate;
    params.samples_per_node = config.samples;
    params.seed = config.seed;

    PairSource pairs(source.next, model, config.seed);
    result.log = run_simulation(params, *codec, pairs);
    result.metrics = summarize(result.log, codec_name(config.codec));

    if (model.has_value()) {
        // Replay the identical pair stream for the entropy bookkeeping.
        SourceBundle replay = open_source(config.source);
        PairSource replay_pairs(replay.next, model, config.seed);
        std::vector<CorrelatedPair> seen;
        seen.reserve(config.samples);
        for (std::uint64_t i = 0; i < config.samples; ++i) {
            seen.push_back(replay_pairs.next());
        }
        result.entropy = entropy_report(seen, 2.0 * result.metrics.avg_bits);
    }
    return result;
}

// ---------------- artifacts ----------------

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

std::string series_csv(const EventLog& log) {
    std::ostringstream out;
    out << "index,node_id,time_us,original,bits,code_data,decoded,error\n";
    std::size_t index = 0;
    for (const auto& rec : log.records) {
        if (rec.kind != EventKind::pc_packet) continue;
        const auto& pc = rec.pc;
        const int error =
            static_cast<int>(pc.decode_data) - static_cast<int>(pc.sensor.original_data);
        out << index++ << ',' << static_cast<unsigned>(pc.sensor.node_id) << ','
            << rec.time_us << ',' << pc.sensor.original_data << ','
            << static_cast<unsigned>(pc.sensor.length) << ',' << pc.sensor.code_data
            << ',' << pc.decode_data << ',' << error << '\n';
    }
    return out.str();
}

}  // namespace

void write_artifacts(const RunResult& result) {
    if (result.config.out.empty()) return;
    const std::filesystem::path dir = result.config.out;
    std::filesystem::create_directories(dir);
    result.log.save_csv(dir / "events.csv");
    result.log.save_jsonl(dir / "events.jsonl");
    const std::vector<MetricsReport> reports{result.metrics};
    write_file(dir / "metrics.txt", render_table(reports, result.entropy));
    write_file(dir / "metrics.csv", render_csv(reports, result.entropy));
    write_file(dir / "metrics.json", render_json(reports, result.entropy));
    write_file(dir / "series.csv", series_csv(result.log));
    write_file(dir / "config.txt", render_config(result.config));
}

// ---------------- commands ----------------

int run_command(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    RunResult result;
    try {
        result = run_experiment(config);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        write_artifacts(result);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    const std::vector<MetricsReport> reports{result.metrics};
    if (result.config.format == "csv") {
        out << render_csv(reports, result.entropy);
    } else if (result.config.format == "json") {
        out << render_json(reports, result.entropy);
    } else {
        out << render_table(reports, result.entropy);
    }
    return 0;
}

int compare_command(const std::vector<std::string>& config_files,
                    const std::string& format, const std::string& out_dir,
                    std::ostream& out, std::ostream& err) {
    if (config_files.empty()) {
        err << "config error: compare needs at least one config file\n";
        return 1;
    }
    std::vector<MetricsReport> reports;
    bool config_failed = false;
    bool runtime_failed = false;
    for (const auto& file : config_files) {
        try {
            const RunResult result = run_experiment(load_config(file));
            reports.push_back(result.metrics);
        } catch (const std::exception& e) {
            const bool config_kind = dynamic_cast<const ConfigError*>(&e) != nullptr ||
                                     dynamic_cast<const ParseError*>(&e) != nullptr;
            (config_kind ? config_failed : runtime_failed) = true;
            err << file << ": " << e.what() << '\n';
            MetricsReport failed;
            failed.codec = file + " (failed)";
            reports.push_back(failed);
        }
    }

    std::string rendered;
    if (format == "csv") {
        rendered = render_csv(reports);
    } else if (format == "json") {
        rendered = render_json(reports);
    } else {
        rendered = render_table(reports);
    }
    out << rendered;
    if (!out_dir.empty()) {
        try {
            std::filesystem::create_directories(out_dir);
            write_file(std::filesystem::path(out_dir) / ("compare." + format),
                       rendered);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }
    }
    if (runtime_failed) return 2;
    if (config_failed) return 1;
    return 0;
}

}  // namespace wsncodec
