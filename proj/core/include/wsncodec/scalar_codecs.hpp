#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "wsncodec/bitstring.hpp"
#include "wsncodec/codebook.hpp"
#include "wsncodec/cost_meter.hpp"

namespace wsncodec {

// ---------------- companders ----------------

enum class CompanderLaw { a_law, mu_law };

struct CompanderParams {
    CompanderLaw law = CompanderLaw::mu_law;
    double a = 87.6;
    double mu = 255.0;
};

// 8-bit compander built as a 256-entry lookup table.  Encoding is a single
// table probe; decoding finds the smallest input whose code reaches the
// requested one by binary search over the monotone table.
class Compander {
public:
    explicit Compander(CompanderParams params);

    [[nodiscard]] std::uint8_t encode(std::uint8_t v, CostMeter* meter = nullptr) const;
    [[nodiscard]] std::uint8_t decode(std::uint8_t code, CostMeter* meter = nullptr) const;

    [[nodiscard]] const std::array<std::uint8_t, 256>& table() const noexcept {
        return table_;
    }
    [[nodiscard]] const CompanderParams& params() const noexcept { return params_; }

private:
    CompanderParams params_;
    std::array<std::uint8_t, 256> table_{};
};

// ---------------- DPCM ----------------

// Differential coding restarted on fixed-length frames: the first sample of
// a frame travels raw, every later one as the signed difference from its
// predecessor.  On the wire a difference is a sign bit plus the binary
// magnitude, so it costs bit_length(|d|) + 1 bits.

constexpr std::size_t kDefaultFrameLength = 16;

struct DpcmStep {
    int value;         // raw sample at a frame start, signed difference after
    bool frame_start;
};

class DpcmEncoder {
public:
    explicit DpcmEncoder(std::size_t frame_length = kDefaultFrameLength);
    DpcmStep next(Sample v, CostMeter* meter = nullptr);
    void reset() noexcept { pos_ = 0; }

private:
    std::size_t frame_length_;
    std::size_t pos_ = 0;
    int prev_ = 0;
};

class DpcmDecoder {
public:
    explicit DpcmDecoder(std::size_t frame_length = kDefaultFrameLength);
    // Feed the next transmitted value; throws DecodeError when the running
    // reconstruction leaves 0..255 (corrupt stream).
    Sample next(int value, CostMeter* meter = nullptr);
    void reset() noexcept { pos_ = 0; }
    [[nodiscard]] bool at_frame_start() const noexcept { return pos_ == 0; }

private:
    std::size_t frame_length_;
    std::size_t pos_ = 0;
    int prev_ = 0;
};

// Whole-frame convenience forms: the vector is one frame.
[[nodiscard]] std::vector<int> dpcm_encode(const std::vector<Sample>& frame);
[[nodiscard]] std::vector<Sample> dpcm_decode(const std::vector<int>& coded);

// Wire form of one DPCM step: frame starts are 8 raw bits, differences a
// sign bit followed by the magnitude.
[[nodiscard]] BitString dpcm_wire_bits(const DpcmStep& step);
[[nodiscard]] int dpcm_wire_value(const BitString& bits, bool frame_start);

// ---------------- codebook symbol coding ----------------

// Encode one sample through a codebook: a single table probe.
[[nodiscard]] const BitString& symbol_encode(Sample v, const Codebook& book,
                                             CostMeter* meter = nullptr);

// Decode one codeword off the front of a stream, returning the symbol and
// the remaining bits.  Fibonacci books are searched by binary search over a
// value-ordered index (at most ceil(log2 N) + 1 comparisons); T-code books
// by linear prefix scan in symbol order (worst case N comparisons).
// Failure to match raises DesyncError.
[[nodiscard]] std::pair<Sample, BitString> symbol_decode(const BitString& stream,
                                                         const Codebook& book,
                                                         CostMeter* meter = nullptr);

// Drop bits through the next "11" terminator, the Fibonacci resync point.
// Returns the suffix after it; an empty BitString when no terminator remains.
[[nodiscard]] BitString fibonacci_resync(const BitString& stream);

}  // namespace wsncodec
