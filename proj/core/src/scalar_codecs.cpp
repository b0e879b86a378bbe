#include "wsncodec/scalar_codecs.hpp"

#include <cmath>
#include <stdexcept>

#include "wsncodec/errors.hpp"

namespace wsncodec {

// ---------------- companders ----------------

namespace {

double compand_curve(const CompanderParams& p, double x) {
    if (p.law == CompanderLaw::a_law) {
        const double denom = 1.0 + std::log(p.a);
        return x <= 1.0 / p.a ? p.a * x / denom : (1.0 + std::log(p.a * x)) / denom;
    }
    return std::log(1.0 + p.mu * x) / std::log(1.0 + p.mu);
}

}  // namespace

Compander::Compander(CompanderParams params) : params_(params) {
    if (params_.a <= 1.0 || params_.mu <= 0.0) {
        throw std::invalid_argument("Compander: parameters out of range");
    }
    for (int v = 0; v <= 255; ++v) {
        const double f = compand_curve(params_, v / 255.0);
        // Round half away from zero; f is non-negative here.
        table_[static_cast<std::size_t>(v)] =
            static_cast<std::uint8_t>(std::floor(255.0 * f + 0.5));
    }
}

std::uint8_t Compander::encode(std::uint8_t v, CostMeter* meter) const {
    charge(meter);  // one table probe
    return table_[v];
}

std::uint8_t Compander::decode(std::uint8_t code, CostMeter* meter) const {
    // Smallest input whose code equals or exceeds the requested one.  One
    // comparison charged per halving step.
    std::size_t lo = 0;
    std::size_t hi = 255;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        charge(meter);
        if (table_[mid] >= code) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return static_cast<std::uint8_t>(lo);
}

// ---------------- DPCM ----------------

DpcmEncoder::DpcmEncoder(std::size_t frame_length) : frame_length_(frame_length) {
    if (frame_length_ == 0) {
        throw std::invalid_argument("DpcmEncoder: frame length must be positive");
    }
}

DpcmStep DpcmEncoder::next(Sample v, CostMeter* meter) {
    charge(meter);  // one subtraction
    const bool start = pos_ == 0;
    const int value = start ? static_cast<int>(v) : static_cast<int>(v) - prev_;
    prev_ = static_cast<int>(v);
    pos_ = (pos_ + 1) % frame_length_;
    return {value, start};
}

DpcmDecoder::DpcmDecoder(std::size_t frame_length) : frame_length_(frame_length) {
    if (frame_length_ == 0) {
        throw std::invalid_argument("DpcmDecoder: frame length must be positive");
    }
}

Sample DpcmDecoder::next(int value, CostMeter* meter) {
    charge(meter);  // one addition
    const int recon = pos_ == 0 ? value : prev_ + value;
    if (recon < 0 || recon > 255) {
        throw DecodeError("dpcm: reconstruction left 0..255, stream corrupt");
    }
    prev_ = recon;
    pos_ = (pos_ + 1) % frame_length_;
    return static_cast<Sample>(recon);
}

std::vector<int> dpcm_encode(const std::vector<Sample>& frame) {
    if (frame.empty()) {
        throw std::invalid_argument("dpcm_encode: empty frame");
    }
    DpcmEncoder enc(frame.size());
    std::vector<int> out;
    out.reserve(frame.size());
    for (Sample v : frame) out.push_back(enc.next(v).value);
    return out;
}

std::vector<Sample> dpcm_decode(const std::vector<int>& coded) {
    if (coded.empty()) {
        throw std::invalid_argument("dpcm_decode: empty frame");
    }
    DpcmDecoder dec(coded.size());
    std::vector<Sample> out;
    out.reserve(coded.size());
    for (int v : coded) out.push_back(dec.next(v));
    return out;
}

BitString dpcm_wire_bits(const DpcmStep& step) {
    if (step.frame_start) {
        if (step.value < 0 || step.value > 255) {
            throw std::invalid_argument("dpcm: frame-start sample out of 0..255");
        }
        return BitString::from_uint(static_cast<std::uint64_t>(step.value), 8);
    }
    if (step.value < -255 || step.value > 255) {
        throw std::invalid_argument("dpcm: difference out of -255..255");
    }
    const auto mag = static_cast<std::uint64_t>(std::abs(step.value));
    BitString out;
    out.push_back(step.value < 0);  // sign bit, then the magnitude
    out.extend(BitString::from_uint(mag, static_cast<std::size_t>(bit_length(mag))));
    return out;
}

int dpcm_wire_value(const BitString& bits, bool frame_start) {
    if (frame_start) {
        if (bits.size() != 8) {
            throw DecodeError("dpcm: frame-start word must be 8 bits");
        }
        return static_cast<int>(bits.to_uint());
    }
    if (bits.size() < 2) {
        throw DecodeError("dpcm: difference word too short");
    }
    auto [sign, mag_bits] = bits.take_prefix(1);
    const auto mag = static_cast<int>(mag_bits.to_uint());
    return sign[0] ? -mag : mag;
}

// ---------------- codebook symbol coding ----------------

const BitString& symbol_encode(Sample v, const Codebook& book, CostMeter* meter) {
    if (v >= book.size()) {
        throw std::invalid_argument("symbol_encode: symbol not covered by codebook");
    }
    charge(meter);  // one table probe
    return book.codeword(v);
}

namespace {

std::pair<Sample, BitString> decode_fibonacci(const BitString& stream,
                                              const Codebook& book, CostMeter* meter) {
    // The codeword is everything through the first "11".
    std::size_t end = 0;
    bool found = false;
    for (std::size_t i = 1; i < stream.size(); ++i) {
        if (stream[i - 1] && stream[i]) {
            end = i + 1;
            found = true;
            break;
        }
    }
    if (!found) {
        throw DesyncError("fibonacci: no codeword terminator in stream");
    }
    auto [word, rest] = stream.take_prefix(end);
    const auto key = std::pair{static_cast<std::uint32_t>(word.size()), word.to_uint()};

    // Binary search over the (length, value) index: the range shrinks from N
    // to a single candidate in ceil(log2 N) comparisons, plus one final
    // equality check.
    const auto& index = book.decode_index();
    std::size_t lo = 0;
    std::size_t hi = index.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        charge(meter);
        if (std::pair{index[mid].length, index[mid].value} <= key) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    charge(meter);
    if (index.empty() || std::pair{index[lo].length, index[lo].value} != key) {
        throw DesyncError("fibonacci: codeword not in book");
    }
    return {static_cast<Sample>(index[lo].symbol), std::move(rest)};
}

std::pair<Sample, BitString> decode_tcode(const BitString& stream, const Codebook& book,
                                          CostMeter* meter) {
    // Linear scan in symbol order; the book need not be sorted, and the set
    // is prefix-free, so the first hit is the only one.
    for (std::size_t s = 0; s < book.size(); ++s) {
        charge(meter);
        if (book.codeword(s).is_prefix_of(stream)) {
            auto [_, rest] = stream.take_prefix(book.codeword(s).size());
            return {static_cast<Sample>(s), std::move(rest)};
        }
    }
    throw DesyncError("tcode: no codeword matches stream head");
}

}  // namespace

std::pair<Sample, BitString> symbol_decode(const BitString& stream, const Codebook& book,
                                           CostMeter* meter) {
    if (stream.empty()) {
        throw DesyncError("symbol_decode: empty stream");
    }
    return book.kind() == Codebook::Kind::fibonacci ? decode_fibonacci(stream, book, meter)
                                                    : decode_tcode(stream, book, meter);
}

BitString fibonacci_resync(const BitString& stream) {
    for (std::size_t i = 1; i < stream.size(); ++i) {
        if (stream[i - 1] && stream[i]) {
            return stream.take_prefix(i + 1).second;
        }
    }
    return {};
}

}  // namespace wsncodec
