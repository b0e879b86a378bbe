#pragma once

#include <memory>
#include <string>

#include "wsncodec/distributed_codecs.hpp"
#include "wsncodec/netsim.hpp"
#include "wsncodec/scalar_codecs.hpp"

namespace wsncodec {

// SimCodec adapters wiring the individual coding schemes into the network
// simulation.  Conventions shared by all of them:
//   * original_data is the value handed to the encoder (DISCUS masks
//     samples to its 7-bit word first),
//   * length is the exact number of coded bits on the wire,
//   * latency fields carry the abstract operation count, one simulated
//     microsecond per operation.

// A-law or mu-law compander; the wire carries the code value in
// bit_length(code) bits.
class CompanderSimCodec final : public SimCodec {
public:
    explicit CompanderSimCodec(CompanderParams params);
    [[nodiscard]] std::string_view name() const override { return name_; }
    EncodeOut encode(unsigned node, Sample raw) override;
    DecodeOut decode(unsigned node, const BitString& code) override;

private:
    Compander compander_;
    std::string name_;
};

// Frame-restarted DPCM with one encoder/decoder pair per node; a resync
// broadcast restarts the frames.
class DpcmSimCodec final : public SimCodec {
public:
    explicit DpcmSimCodec(std::size_t frame_length = kDefaultFrameLength);
    [[nodiscard]] std::string_view name() const override { return "dpcm"; }
    void reset() override;
    EncodeOut encode(unsigned node, Sample raw) override;
    DecodeOut decode(unsigned node, const BitString& code) override;

private:
    std::size_t frame_length_;
    DpcmEncoder enc_[kNodeCount];
    DpcmDecoder dec_[kNodeCount];
};

// Fibonacci or T-code words from a prebuilt codebook; one codeword per
// packet.
class SymbolSimCodec final : public SimCodec {
public:
    SymbolSimCodec(std::string name, Codebook book);
    [[nodiscard]] std::string_view name() const override { return name_; }
    EncodeOut encode(unsigned node, Sample raw) override;
    DecodeOut decode(unsigned node, const BitString& code) override;
    [[nodiscard]] const Codebook& book() const noexcept { return book_; }

private:
    std::string name_;
    Codebook book_;
};

// Modulo binning: the odd node (node 1) sends residues, the even node
// (node 2) the full reading.  Joint decoding places the residue in the
// reference reading's bin.
class ModuloSimCodec final : public SimCodec {
public:
    explicit ModuloSimCodec(ModuloParams params);
    [[nodiscard]] std::string_view name() const override { return "modulo"; }
    [[nodiscard]] bool joint() const override { return true; }
    EncodeOut encode(unsigned node, Sample raw) override;
    std::pair<DecodeOut, DecodeOut> joint_decode(const BitString& first,
                                                 const BitString& second) override;

private:
    ModuloParams params_;
};

// Integer Haar pair: the odd node carries the difference, the even node the
// 9-bit sum; both samples of a round are needed to encode.
class HaarSimCodec final : public SimCodec {
public:
    [[nodiscard]] std::string_view name() const override { return "haar"; }
    [[nodiscard]] bool joint() const override { return true; }
    [[nodiscard]] bool pair_encoder() const override { return true; }
    std::pair<EncodeOut, EncodeOut> encode_pair(Sample a, Sample b) override;
    std::pair<DecodeOut, DecodeOut> joint_decode(const BitString& first,
                                                 const BitString& second) override;
};

// DISCUS: each node sends the 5-bit syndrome of its 7-bit word under its
// sub-code; the sink searches the two cosets for the closest pair.
class DiscusSimCodec final : public SimCodec {
public:
    [[nodiscard]] std::string_view name() const override { return "discus"; }
    [[nodiscard]] bool joint() const override { return true; }
    EncodeOut encode(unsigned node, Sample raw) override;
    std::pair<DecodeOut, DecodeOut> joint_decode(const BitString& first,
                                                 const BitString& second) override;
    [[nodiscard]] const DiscusCode& code() const noexcept { return code_; }

private:
    DiscusCode code_;
};

}  // namespace wsncodec
