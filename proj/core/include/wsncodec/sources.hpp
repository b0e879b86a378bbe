#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wsncodec/codebook.hpp"

namespace wsncodec {

// ---------------- deterministic RNG ----------------

// SplitMix64: a tiny, well-known, platform-independent generator.  All
// randomness in an experiment flows from one of these seeded once, so runs
// are reproducible bit for bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound) by the multiply-shift reduction; bound > 0.
    std::uint64_t next_below(std::uint64_t bound);

    // Derive an independent deterministic stream.
    SplitMix64 split() noexcept { return SplitMix64(next()); }

private:
    std::uint64_t state_;
};

// ---------------- sources ----------------

// An ordered recording of 8-bit samples.  Reading past the end wraps to the
// beginning, so a short trace can drive a long run.
class TraceSource {
public:
    explicit TraceSource(std::vector<Sample> samples, std::string origin = "");

    Sample next();
    void rewind() noexcept { pos_ = 0; }

    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] const std::vector<Sample>& samples() const noexcept { return samples_; }
    [[nodiscard]] const std::string& origin() const noexcept { return origin_; }

private:
    std::vector<Sample> samples_;
    std::string origin_;
    std::size_t pos_ = 0;
};

// CSV with one integer per line, each in 0..255; blank lines are skipped and
// anything else is reported with its line number.
[[nodiscard]] TraceSource load_trace(const std::filesystem::path& path);

// Occurrence counts of each 8-bit symbol in a trace.
[[nodiscard]] FrequencyTable estimate_histogram(const TraceSource& trace);

// Emits a deterministic stream whose per-period symbol counts follow the
// histogram: the period's emissions are apportioned to symbols by largest
// remainder, then interleaved proportionally.  With counts summing to the
// period, one period reproduces the histogram exactly.
class PseudoSource {
public:
    static constexpr std::size_t kDefaultPeriod = 256;

    explicit PseudoSource(const FrequencyTable& histogram,
                          std::size_t period = kDefaultPeriod);

    Sample next();
    void rewind() noexcept { pos_ = 0; }

    [[nodiscard]] std::size_t period() const noexcept { return schedule_.size(); }
    [[nodiscard]] const std::vector<Sample>& schedule() const noexcept { return schedule_; }

private:
    std::vector<Sample> schedule_;
    std::size_t pos_ = 0;
};

// ---------------- correlated pairs ----------------

struct CorrelatedPair {
    Sample x;
    Sample y;
};

// How the second sensor's reading relates to the first:
//   bitflip(t)        y differs from x in at most t of 7 bit positions
//                     (both masked to 7-bit words, the DISCUS domain)
//   same_bin(n)       y falls in x's width-n bin
//   additive_delta(d) |y - x| <= d within 0..255
struct CorrelationModel {
    enum class Kind { bitflip, same_bin, additive_delta };
    Kind kind = Kind::bitflip;
    unsigned param = 1;
};

// Draw y for a given x under the model, using the supplied RNG stream.
[[nodiscard]] CorrelatedPair next_pair(const CorrelationModel& model, Sample x,
                                       SplitMix64& rng);

// Per-round pair stream for the two-sensor network: x comes from the base
// source; y is either a copy (no model, both sensors watch the same signal)
// or drawn under the correlation model from the experiment's seed.
class PairSource {
public:
    PairSource(std::function<Sample()> base, std::optional<CorrelationModel> model,
               std::uint64_t seed);

    CorrelatedPair next();

private:
    std::function<Sample()> base_;
    std::optional<CorrelationModel> model_;
    SplitMix64 rng_;
};

}  // namespace wsncodec
