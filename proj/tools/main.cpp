// wsncodec — command-line front end for the sensor-codec workbench.
//
//   wsncodec run --codec mulaw --source trace:data/walk.csv --samples 500
//   wsncodec compare runs/a.conf runs/b.conf --format csv
//
// Exit codes: 0 success, 1 configuration problem, 2 runtime failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsncodec/errors.hpp"
#include "wsncodec/experiment.hpp"

namespace {

// Flag values land here; only the options the user actually passed are
// copied onto the config, so precedence is defaults < config file < flags.
struct FlagValues {
    std::string config_file;
    std::string codec;
    std::string source;
    std::string correlation;
    unsigned rate = 0;
    std::uint64_t samples = 0;
    unsigned frame = 0;
    unsigned modulo_n = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
};

void add_run_flags(CLI::App& cmd, FlagValues& flags) {
    cmd.add_option("--config", flags.config_file,
                   "Config file with \"key = value\" lines; flags override it");
    cmd.add_option("--codec", flags.codec,
                   "Codec: alaw, mulaw, dpcm, fibonacci, fibonacci-pseudo, tcode, "
                   "tcode-pseudo, modulo, haar, discus");
    cmd.add_option("--source", flags.source,
                   "Sample source, trace:FILE or pseudo:FILE");
    cmd.add_option("--correlation", flags.correlation,
                   "Pair model: none, bitflip:T, same-bin:N, additive-delta:D");
    cmd.add_option("--rate", flags.rate, "Sampling rate in Hz (2..125)");
    cmd.add_option("--samples", flags.samples, "Samples per node");
    cmd.add_option("--frame", flags.frame, "DPCM frame length");
    cmd.add_option("--modulo-n", flags.modulo_n,
                   "Modulo codec bin count (power of two, 2..256)");
    cmd.add_option("--seed", flags.seed, "RNG seed");
    cmd.add_option("--out", flags.out, "Directory to write run artifacts into");
    cmd.add_option("--format", flags.format, "Report format: table, csv or json");
}

wsncodec::ExperimentConfig merge(const CLI::App& cmd, const FlagValues& flags) {
    wsncodec::ExperimentConfig config;
    if (cmd.count("--config") > 0) config = wsncodec::load_config(flags.config_file);
    if (cmd.count("--codec") > 0) config.codec = wsncodec::codec_from_name(flags.codec);
    if (cmd.count("--source") > 0) config.source = flags.source;
    if (cmd.count("--correlation") > 0) config.correlation = flags.correlation;
    if (cmd.count("--rate") > 0) config.rate = flags.rate;
    if (cmd.count("--samples") > 0) config.samples = flags.samples;
    if (cmd.count("--frame") > 0) config.frame = flags.frame;
    if (cmd.count("--modulo-n") > 0) config.modulo_n = flags.modulo_n;
    if (cmd.count("--seed") > 0) config.seed = flags.seed;
    if (cmd.count("--out") > 0) config.out = flags.out;
    if (cmd.count("--format") > 0) config.format = flags.format;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Sensor-codec workbench: run source codecs over a deterministic "
        "two-sensor TDMA simulation and report rate, error and energy metrics"};
    app.require_subcommand(1);

    FlagValues flags;
    CLI::App* run =
        app.add_subcommand("run", "Run one experiment and print its metrics");
    add_run_flags(*run, flags);

    std::vector<std::string> compare_files;
    std::string compare_format = "table";
    std::string compare_out;
    CLI::App* compare = app.add_subcommand(
        "compare", "Run several config files and print one combined report");
    compare->add_option("configs", compare_files, "Config files, one per run")
        ->required();
    compare->add_option("--format", compare_format, "Report format: table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    compare->add_option("--out", compare_out,
                        "Directory to write the combined report into");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // --help and --version exit clean
    }

    try {
        if (run->parsed()) {
            return wsncodec::run_command(merge(*run, flags), std::cout, std::cerr);
        }
        return wsncodec::compare_command(compare_files, compare_format, compare_out,
                                         std::cout, std::cerr);
    } catch (const wsncodec::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
