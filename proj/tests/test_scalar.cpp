#include <doctest.h>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wsncodec/cost_meter.hpp"
#include "wsncodec/errors.hpp"
#include "wsncodec/scalar_codecs.hpp"
#include "wsncodec/sources.hpp"

using namespace wsncodec;

namespace {

// Spot values computed from the closed-form curves with an independent
// implementation, frozen here.
struct CurveSpots {
    CompanderLaw law;
    int index[12] = {0, 1, 2, 4, 8, 16, 32, 64, 128, 200, 254, 255};
    int code[12];
    long table_sum;
};

const CurveSpots kALawSpots{CompanderLaw::a_law,
                            {0, 1, 2, 4, 8, 16, 32, 64, 128, 200, 254, 255},
                            {0, 16, 32, 61, 94, 126, 158, 191, 223, 244, 255, 255},
                            53338};
const CurveSpots kMuLawSpots{CompanderLaw::mu_law,
                             {0, 1, 2, 4, 8, 16, 32, 64, 128, 200, 254, 255},
                             {0, 32, 51, 74, 101, 130, 161, 192, 223, 244, 255, 255},
                             53678};

}  // namespace

TEST_SUITE("scalar") {

TEST_CASE("compander tables match the closed-form curves") {
    for (const auto& spots : {kALawSpots, kMuLawSpots}) {
        const Compander comp(CompanderParams{spots.law});
        for (int i = 0; i < 12; ++i) {
            CAPTURE(spots.index[i]);
            CHECK(comp.encode(static_cast<std::uint8_t>(spots.index[i])) ==
                  spots.code[i]);
        }
        const long sum = std::accumulate(comp.table().begin(), comp.table().end(), 0L);
        CHECK(sum == spots.table_sum);
        for (int v = 0; v < 255; ++v) {
            CHECK(comp.table()[v] <= comp.table()[v + 1]);  // monotone curve
        }
    }
}

TEST_CASE("compander decode picks the smallest input reaching the code") {
    for (const auto law : {CompanderLaw::a_law, CompanderLaw::mu_law}) {
        const Compander comp(CompanderParams{law});
        CHECK(comp.decode(0) == 0);
        // The curve's top is flat: 253 already maps to code 255.
        CHECK(comp.encode(253) == 255);
        CHECK(comp.decode(255) == 253);
        for (int code = 0; code < 256; ++code) {
            const auto v = comp.decode(static_cast<std::uint8_t>(code));
            CHECK(comp.encode(v) >= code);
            if (v > 0) CHECK(comp.encode(v - 1) < code);
        }
    }
}

TEST_CASE("compander quantization is idempotent and cells stay narrow") {
    for (const auto law : {CompanderLaw::a_law, CompanderLaw::mu_law}) {
        const Compander comp(CompanderParams{law});
        int max_cell = 0;
        for (int v = 0; v < 256; ++v) {
            const auto code = comp.encode(static_cast<std::uint8_t>(v));
            CHECK(comp.encode(comp.decode(code)) == code);
        }
        for (int code = 0; code < 255; ++code) {
            max_cell = std::max(max_cell, comp.decode(static_cast<std::uint8_t>(code + 1)) -
                                              comp.decode(static_cast<std::uint8_t>(code)));
        }
        CHECK(max_cell == 6);
    }
}

TEST_CASE("compander cost: one probe to encode, eight comparisons to decode") {
    const Compander comp(CompanderParams{CompanderLaw::mu_law});
    for (int v = 0; v < 256; ++v) {
        CostMeter enc;
        (void)comp.encode(static_cast<std::uint8_t>(v), &enc);
        CHECK(enc.ops() == 1);
        CostMeter dec;
        (void)comp.decode(static_cast<std::uint8_t>(v), &dec);
        CHECK(dec.ops() == 8);
    }
}

TEST_CASE("dpcm frame coding sends the first sample raw, then differences") {
    const std::vector<Sample> frame{100, 103, 101};
    const auto coded = dpcm_encode(frame);
    REQUIRE(coded.size() == 3);
    CHECK(coded[0] == 100);
    CHECK(coded[1] == 3);
    CHECK(coded[2] == -2);
    CHECK(dpcm_decode(coded) == frame);
    CHECK_THROWS_AS((void)dpcm_encode({}), std::invalid_argument);
}

TEST_CASE("dpcm wire format: 8 raw bits, then sign plus magnitude") {
    CHECK(dpcm_wire_bits({100, true}).to_string() == "01100100");
    CHECK(dpcm_wire_bits({3, false}).to_string() == "011");
    CHECK(dpcm_wire_bits({-2, false}).to_string() == "110");
    CHECK(dpcm_wire_bits({0, false}).to_string() == "00");
    CHECK(dpcm_wire_bits({-255, false}).size() == 9);

    CHECK(dpcm_wire_value(BitString::from_string("01100100"), true) == 100);
    CHECK(dpcm_wire_value(BitString::from_string("011"), false) == 3);
    CHECK(dpcm_wire_value(BitString::from_string("110"), false) == -2);
    CHECK_THROWS_AS((void)dpcm_wire_value(BitString::from_string("011"), true),
                    DecodeError);
    CHECK_THROWS_AS((void)dpcm_wire_value(BitString::from_string("1"), false),
                    DecodeError);

    // wire-bit cost of a step: 8 at a frame start, bit_length(|d|)+1 after
    CHECK(dpcm_wire_bits({100, true}).size() == 8);
    CHECK(dpcm_wire_bits({3, false}).size() == static_cast<std::size_t>(bit_length(3)) + 1);
}

TEST_CASE("dpcm encoder restarts each frame") {
    DpcmEncoder enc(4);
    DpcmDecoder dec(4);
    SplitMix64 rng(3);
    std::vector<Sample> data(13);
    for (auto& v : data) v = static_cast<Sample>(rng.next_below(256));
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto step = enc.next(data[i]);
        CHECK(step.frame_start == (i % 4 == 0));
        CHECK(dec.next(step.value) == data[i]);
    }
}

TEST_CASE("dpcm decoder flags reconstructions outside the sample range") {
    DpcmDecoder dec(16);
    CHECK(dec.next(250) == 250);
    CHECK_THROWS_AS((void)dec.next(10), DecodeError);  // 260 is out of range
    DpcmDecoder dec2(16);
    CHECK(dec2.next(5) == 5);
    CHECK_THROWS_AS((void)dec2.next(-10), DecodeError);
}

TEST_CASE("symbol coding roundtrips through both codebook kinds") {
    const auto fib = build_fibonacci_codebook(FrequencyTable::uniform(256));
    const auto tc = build_tcode_codebook(FrequencyTable::uniform(256), 16);
    for (const auto* book : {&fib, &tc}) {
        for (int s = 0; s < 256; ++s) {
            const auto& word = symbol_encode(static_cast<Sample>(s), *book);
            const auto [sym, rest] = symbol_decode(word, *book);
            CHECK(sym == s);
            CHECK(rest.empty());
        }
    }
    CHECK_THROWS_AS((void)symbol_encode(4, build_fibonacci_codebook(FrequencyTable::uniform(4))),
                    std::invalid_argument);
}

TEST_CASE("symbol decoding consumes exactly one codeword") {
    const auto book = build_fibonacci_codebook(FrequencyTable::uniform(256));
    const BitString stream = book.codeword(9) + book.codeword(41) + book.codeword(0);
    auto [s1, rest1] = symbol_decode(stream, book);
    CHECK(s1 == 9);
    auto [s2, rest2] = symbol_decode(rest1, book);
    CHECK(s2 == 41);
    auto [s3, rest3] = symbol_decode(rest2, book);
    CHECK(s3 == 0);
    CHECK(rest3.empty());
}

TEST_CASE("symbol decode cost: log for fibonacci, linear scan for t-code") {
    const auto fib = build_fibonacci_codebook(FrequencyTable::uniform(256));
    for (int s = 0; s < 256; ++s) {
        CostMeter m;
        (void)symbol_decode(fib.codeword(s), fib, &m);
        CHECK(m.ops() <= 9);  // ceil(log2 256) + 1
        CHECK(m.ops() >= 1);
    }
    const auto tc = build_tcode_codebook(FrequencyTable::uniform(256), 16);
    for (int s : {0, 100, 255}) {
        CostMeter m;
        (void)symbol_decode(tc.codeword(static_cast<Sample>(s)), tc, &m);
        CHECK(m.ops() == static_cast<std::uint64_t>(s) + 1);  // scan order
    }
}

TEST_CASE("symbol decoding raises DesyncError on unusable streams") {
    const auto fib = build_fibonacci_codebook(FrequencyTable::uniform(256));
    CHECK_THROWS_AS((void)symbol_decode(BitString(), fib), DesyncError);
    CHECK_THROWS_AS((void)symbol_decode(BitString::from_string("0101010"), fib),
                    DesyncError);  // no terminator
    const auto small = build_fibonacci_codebook(FrequencyTable::uniform(4));
    CHECK_THROWS_AS((void)symbol_decode(fibonacci_codeword(9), small),
                    DesyncError);  // terminator present, word not in book
    const auto tc = build_tcode_codebook(FrequencyTable::uniform(4), 16);
    CHECK_THROWS_AS((void)symbol_decode(BitString::from_string("1"), tc), DesyncError);
}

TEST_CASE("fibonacci resync drops bits through the next terminator") {
    CHECK(fibonacci_resync(BitString::from_string("0100110101")).to_string() == "0101");
    CHECK(fibonacci_resync(BitString::from_string("11")).empty());
    CHECK(fibonacci_resync(BitString::from_string("0101010")).empty());
}

TEST_CASE("fibonacci stream realigns after a corrupted head") {
    // Chop a random prefix off a long stream: after at most a couple of
    // resyncs the decoder locks back on and reproduces a suffix of the
    // original symbols.  The worst case loses a few symbols when the cut
    // merges a terminator fragment with the next codeword.
    const auto book = build_fibonacci_codebook(FrequencyTable::uniform(256));
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int count = 30;
        std::vector<Sample> sent(count);
        BitString stream;
        for (auto& s : sent) {
            s = static_cast<Sample>(rng.next_below(256));
            stream.extend(book.codeword(s));
        }
        const auto cut = 1 + rng.next_below(stream.size() / 2);
        auto [_, rest] = stream.take_prefix(cut);
        rest = fibonacci_resync(rest);

        std::vector<Sample> decoded;
        while (!rest.empty()) {
            try {
                auto [sym, tail] = symbol_decode(rest, book);
                decoded.push_back(sym);
                rest = tail;
            } catch (const DesyncError&) {
                rest = fibonacci_resync(rest);
            }
        }

        // longest common suffix of sent and decoded, in symbols
        std::size_t common = 0;
        while (common < decoded.size() && common < sent.size() &&
               decoded[decoded.size() - 1 - common] == sent[sent.size() - 1 - common]) {
            ++common;
        }
        CAPTURE(trial);
        CHECK(decoded.size() >= 5);          // most of the tail survives
        CHECK(decoded.size() - common <= 4);  // bounded garbage after the cut
    }
}

}  // TEST_SUITE
