#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wsncodec/bitstring.hpp"
#include "wsncodec/codebook.hpp"
#include "wsncodec/cost_meter.hpp"

namespace wsncodec {

// ---------------- modulo binning ----------------

struct ModuloParams {
    unsigned n = 8;  // bin width, a power of two between 2 and 256
};

[[nodiscard]] unsigned modulo_residue_bits(const ModuloParams& params);

// Residue node: transmit v mod N.  The reference node sends v unchanged.
[[nodiscard]] std::uint8_t modulo_encode(Sample v, const ModuloParams& params,
                                         CostMeter* meter = nullptr);

// Place the residue in the reference value's bin.  Exact exactly when both
// readings share a bin.
[[nodiscard]] Sample modulo_joint_decode(Sample reference, std::uint8_t residue,
                                         const ModuloParams& params,
                                         CostMeter* meter = nullptr);

// ---------------- integer Haar pair ----------------

struct HaarPair {
    int sum;   // a + b, 0..510
    int diff;  // a - b, -255..255
};

[[nodiscard]] HaarPair haar_encode_pair(Sample a, Sample b, CostMeter* meter = nullptr);

// Invert the pair transform; sum and diff must have equal parity and the
// reconstructed samples must land in 0..255, otherwise the pair is corrupt.
[[nodiscard]] std::pair<Sample, Sample> haar_decode_pair(const HaarPair& pair,
                                                         CostMeter* meter = nullptr);

// ---------------- Hamming distance ----------------

[[nodiscard]] std::size_t hamming_distance(const BitString& a, const BitString& b);
[[nodiscard]] unsigned hamming_distance7(std::uint8_t a, std::uint8_t b) noexcept;

// ---------------- DISCUS over the (7,4) Hamming code ----------------

// The (7,4) Hamming code G = [I4 | P] is split into two rank-2 sub-codes:
// C1 from the first two rows of G, C2 from the last two.  Each sensor sends
// only the 5-bit syndrome of its 7-bit word under its sub-code's parity
// check; the sink searches the two indicated cosets for the closest pair.
// Because C1 + C2 is the whole distance-3 code, any pair of words within
// Hamming distance 1 is recovered exactly.
class DiscusCode {
public:
    DiscusCode();

    // 5-bit syndrome of a 7-bit word under sub-code 1 or 2 (5 row products).
    [[nodiscard]] std::uint8_t syndrome1(std::uint8_t word, CostMeter* meter = nullptr) const;
    [[nodiscard]] std::uint8_t syndrome2(std::uint8_t word, CostMeter* meter = nullptr) const;

    struct JointResult {
        std::uint8_t x;
        std::uint8_t y;
        unsigned distance;  // Hamming distance of the chosen pair
        bool ambiguous;     // distance exceeded the correction radius t = 1
    };

    // Minimize Hamming distance over the 4 x 4 members of the two cosets;
    // ties resolve to the lexicographically smallest (x, y).
    [[nodiscard]] JointResult joint_decode(std::uint8_t s1, std::uint8_t s2,
                                           CostMeter* meter = nullptr) const;

    [[nodiscard]] const std::array<std::uint8_t, 4>& generator_rows() const noexcept {
        return g_;
    }
    [[nodiscard]] const std::array<std::uint8_t, 5>& parity1_rows() const noexcept {
        return h1_;
    }
    [[nodiscard]] const std::array<std::uint8_t, 5>& parity2_rows() const noexcept {
        return h2_;
    }
    [[nodiscard]] const std::vector<std::uint8_t>& coset1(std::uint8_t syndrome) const;
    [[nodiscard]] const std::vector<std::uint8_t>& coset2(std::uint8_t syndrome) const;

    // Binary rows of G, H1 and H2 as text, one row per line.
    [[nodiscard]] std::string matrix_dump() const;

    static constexpr unsigned word_bits = 7;
    static constexpr unsigned syndrome_bits = 5;

private:
    std::array<std::uint8_t, 4> g_{};   // generator rows, 7-bit, MSB = first position
    std::array<std::uint8_t, 5> h1_{};  // parity rows for C1 = <g1, g2>
    std::array<std::uint8_t, 5> h2_{};  // parity rows for C2 = <g3, g4>
    std::array<std::vector<std::uint8_t>, 32> coset1_{};
    std::array<std::vector<std::uint8_t>, 32> coset2_{};
};

}  // namespace wsncodec
