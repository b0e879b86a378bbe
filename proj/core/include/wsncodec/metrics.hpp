#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsncodec/netsim.hpp"
#include "wsncodec/sources.hpp"

namespace wsncodec {

// ---------------- energy ----------------

// Per-bit transmission cost of the radio.
struct EnergyModel {
    double joules_per_bit = 430e-9;
};

[[nodiscard]] double transmission_energy(std::uint64_t total_bits,
                                         const EnergyModel& model = {});

// ---------------- basic statistics ----------------

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
    std::uint64_t n = 0;
};

// Signed reconstruction error (decoded - original) over value pairs.
[[nodiscard]] Stats error_stats(const std::vector<std::pair<int, int>>& original_decoded);

// ---------------- run summary ----------------

struct MetricsReport {
    std::string codec;
    std::uint64_t sensor_packets = 0;
    std::uint64_t pc_packets = 0;
    std::uint64_t decode_errors = 0;
    std::uint64_t total_bits = 0;
    double avg_bits = 0.0;      // mean sensor-packet length
    double error_mean = 0.0;    // decoded - original over pc packets
    double error_std = 0.0;
    double encode_mean = 0.0;   // abstract ops; 1 op = 1 simulated microsecond
    double encode_std = 0.0;
    double decode_mean = 0.0;
    double decode_std = 0.0;
    double energy_joules = 0.0;
};

// Streaming accumulator with integer internals, so merging partial
// accumulations is exact, associative and commutative.
class MetricsAccumulator {
public:
    void add_sensor(std::uint8_t length_bits, std::uint16_t encode_ops);
    void add_pc(std::uint16_t original, std::uint16_t decoded, std::uint16_t decode_ops);
    void add_error();
    void merge(const MetricsAccumulator& other);

    [[nodiscard]] MetricsReport report(std::string codec_name,
                                       const EnergyModel& energy = {}) const;

private:
    std::uint64_t sensor_n_ = 0;
    std::uint64_t pc_n_ = 0;
    std::uint64_t errors_ = 0;
    std::uint64_t bits_ = 0;
    std::int64_t err_sum_ = 0;
    std::uint64_t err_sq_ = 0;
    std::uint64_t enc_sum_ = 0;
    std::uint64_t enc_sq_ = 0;
    std::uint64_t dec_sum_ = 0;
    std::uint64_t dec_sq_ = 0;
};

// Fold a simulation log into one report.
[[nodiscard]] MetricsReport summarize(const EventLog& log, std::string codec_name,
                                      const EnergyModel& energy = {});

// ---------------- entropy ----------------

// Plug-in (empirical) entropies of a correlated pair stream, in bits, with
// 0 log 0 = 0.  achieved_bits_per_pair is the rate the codec under test
// actually spent.
struct EntropyReport {
    double h_x = 0.0;
    double h_y = 0.0;
    double h_xy = 0.0;
    double h_y_given_x = 0.0;  // h_xy - h_x
    double achieved_bits_per_pair = 0.0;
    std::uint64_t pairs = 0;
};

[[nodiscard]] EntropyReport entropy_report(const std::vector<CorrelatedPair>& pairs,
                                           double achieved_bits_per_pair);

// ---------------- rendering ----------------

// Aligned text table, one row per report; the entropy block is appended
// when present.
[[nodiscard]] std::string render_table(const std::vector<MetricsReport>& reports,
                                       const std::optional<EntropyReport>& entropy = {});
[[nodiscard]] std::string render_csv(const std::vector<MetricsReport>& reports,
                                     const std::optional<EntropyReport>& entropy = {});
[[nodiscard]] std::string render_json(const std::vector<MetricsReport>& reports,
                                      const std::optional<EntropyReport>& entropy = {});

}  // namespace wsncodec
