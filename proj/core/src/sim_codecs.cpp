#include "wsncodec/sim_codecs.hpp"

#include <stdexcept>

#include "wsncodec/errors.hpp"

namespace wsncodec {

namespace {

void require_node(unsigned node) {
    if (node >= kNodeCount) {
        throw std::invalid_argument("codec: node index out of range");
    }
}

// Wire form of a bare value: its binary digits, a zero costing one bit.
BitString value_bits(std::uint64_t v) {
    return BitString::from_uint(v, static_cast<std::size_t>(bit_length(v)));
}

}  // namespace

// ---------------- compander ----------------

CompanderSimCodec::CompanderSimCodec(CompanderParams params)
    : compander_(params),
      name_(params.law == CompanderLaw::a_law ? "alaw" : "mulaw") {}

EncodeOut CompanderSimCodec::encode(unsigned node, Sample raw) {
    require_node(node);
    CostMeter m;
    const std::uint8_t code = compander_.encode(raw, &m);
    return {value_bits(code), raw, m.ops()};
}

DecodeOut CompanderSimCodec::decode(unsigned node, const BitString& code) {
    require_node(node);
    const std::uint64_t v = code.to_uint();
    if (v > 255) {
        throw DecodeError("compander: code exceeds 8 bits");
    }
    CostMeter m;
    const Sample out = compander_.decode(static_cast<std::uint8_t>(v), &m);
    return {out, m.ops()};
}

// ---------------- DPCM ----------------

DpcmSimCodec::DpcmSimCodec(std::size_t frame_length)
    : frame_length_(frame_length),
      enc_{DpcmEncoder(frame_length), DpcmEncoder(frame_length)},
      dec_{DpcmDecoder(frame_length), DpcmDecoder(frame_length)} {}

void DpcmSimCodec::reset() {
    for (auto& e : enc_) e.reset();
    for (auto& d : dec_) d.reset();
}

EncodeOut DpcmSimCodec::encode(unsigned node, Sample raw) {
    require_node(node);
    CostMeter m;
    const DpcmStep step = enc_[node].next(raw, &m);
    return {dpcm_wire_bits(step), raw, m.ops()};
}

DecodeOut DpcmSimCodec::decode(unsigned node, const BitString& code) {
    require_node(node);
    CostMeter m;
    const int value = dpcm_wire_value(code, dec_[node].at_frame_start());
    const Sample out = dec_[node].next(value, &m);
    return {out, m.ops()};
}

// ---------------- codebook symbols ----------------

SymbolSimCodec::SymbolSimCodec(std::string name, Codebook book)
    : name_(std::move(name)), book_(std::move(book)) {
    if (book_.max_codeword_length() > 16) {
        throw ConfigError(name_ + ": codebook exceeds the 16-bit packet field");
    }
}

EncodeOut SymbolSimCodec::encode(unsigned node, Sample raw) {
    require_node(node);
    CostMeter m;
    const BitString& word = symbol_encode(raw, book_, &m);
    return {word, raw, m.ops()};
}

DecodeOut SymbolSimCodec::decode(unsigned node, const BitString& code) {
    require_node(node);
    CostMeter m;
    auto [symbol, rest] = symbol_decode(code, book_, &m);
    if (!rest.empty()) {
        throw DecodeError(name_ + ": trailing bits after codeword");
    }
    return {symbol, m.ops()};
}

// ---------------- modulo ----------------

ModuloSimCodec::ModuloSimCodec(ModuloParams params) : params_(params) {
    (void)modulo_residue_bits(params_);  // validates N
}

EncodeOut ModuloSimCodec::encode(unsigned node, Sample raw) {
    require_node(node);
    CostMeter m;
    if (node == 0) {  // odd node id 1: residue
        const std::uint8_t r = modulo_encode(raw, params_, &m);
        return {BitString::from_uint(r, modulo_residue_bits(params_)), raw, m.ops()};
    }
    charge(&m);  // reference reading goes out unchanged: one probe
    return {value_bits(raw), raw, m.ops()};
}

std::pair<DecodeOut, DecodeOut> ModuloSimCodec::joint_decode(const BitString& first,
                                                             const BitString& second) {
    if (first.size() != modulo_residue_bits(params_)) {
        throw DecodeError("modulo: residue word has wrong width");
    }
    const auto residue = static_cast<std::uint8_t>(first.to_uint());
    const std::uint64_t ref = second.to_uint();
    if (ref > 255) {
        throw DecodeError("modulo: reference reading exceeds 8 bits");
    }
    CostMeter m;
    const Sample x = modulo_joint_decode(static_cast<Sample>(ref), residue, params_, &m);
    return {DecodeOut{x, m.ops()}, DecodeOut{static_cast<std::uint16_t>(ref), m.ops()}};
}

// ---------------- Haar ----------------

std::pair<EncodeOut, EncodeOut> HaarSimCodec::encode_pair(Sample a, Sample b) {
    CostMeter m;
    const HaarPair pair = haar_encode_pair(a, b, &m);
    // One transform op per node; the difference is sign + magnitude, the
    // sum a fixed 9-bit word (0..510).
    BitString diff_bits;
    diff_bits.push_back(pair.diff < 0);
    const auto mag = static_cast<std::uint64_t>(pair.diff < 0 ? -pair.diff : pair.diff);
    diff_bits.extend(BitString::from_uint(mag, static_cast<std::size_t>(bit_length(mag))));
    const BitString sum_bits = BitString::from_uint(static_cast<std::uint64_t>(pair.sum), 9);
    const auto each = m.ops() / 2;
    return {EncodeOut{diff_bits, a, each}, EncodeOut{sum_bits, b, each}};
}

std::pair<DecodeOut, DecodeOut> HaarSimCodec::joint_decode(const BitString& first,
                                                           const BitString& second) {
    if (second.size() != 9) {
        throw DecodeError("haar: sum word must be 9 bits");
    }
    if (first.size() < 2) {
        throw DecodeError("haar: difference word too short");
    }
    auto [sign, mag_bits] = first.take_prefix(1);
    const auto mag = static_cast<int>(mag_bits.to_uint());
    HaarPair pair;
    pair.diff = sign[0] ? -mag : mag;
    pair.sum = static_cast<int>(second.to_uint());
    CostMeter m;
    auto [a, b] = haar_decode_pair(pair, &m);
    return {DecodeOut{a, m.ops()}, DecodeOut{b, m.ops()}};
}

// ---------------- DISCUS ----------------

EncodeOut DiscusSimCodec::encode(unsigned node, Sample raw) {
    require_node(node);
    const auto word = static_cast<Sample>(raw & 0x7F);  // 7-bit domain
    CostMeter m;
    const std::uint8_t s =
        node == 0 ? code_.syndrome1(word, &m) : code_.syndrome2(word, &m);
    return {BitString::from_uint(s, DiscusCode::syndrome_bits), word, m.ops()};
}

std::pair<DecodeOut, DecodeOut> DiscusSimCodec::joint_decode(const BitString& first,
                                                             const BitString& second) {
    if (first.size() != DiscusCode::syndrome_bits ||
        second.size() != DiscusCode::syndrome_bits) {
        throw DecodeError("discus: syndrome word has wrong width");
    }
    CostMeter m;
    const auto result = code_.joint_decode(static_cast<std::uint8_t>(first.to_uint()),
                                           static_cast<std::uint8_t>(second.to_uint()), &m);
    return {DecodeOut{result.x, m.ops()}, DecodeOut{result.y, m.ops()}};
}

}  // namespace wsncodec
