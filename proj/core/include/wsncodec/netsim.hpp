#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsncodec/bitstring.hpp"
#include "wsncodec/codebook.hpp"
#include "wsncodec/sources.hpp"

namespace wsncodec {

// ---------------- packet formats ----------------
// All packets serialize little-endian in declaration order; sizes are fixed
// so firmware on either end can use flat structs.

struct SensorDataPacket {
    std::uint8_t node_id = 0;
    std::uint8_t sequence = 0;
    std::uint16_t code_data = 0;      // coded bits, MSB-first value
    std::uint16_t original_data = 0;  // the value handed to the encoder
    std::uint8_t length = 0;          // bits of coded data, at most 16
    std::uint16_t latency = 0;        // encode cost in simulated microseconds
};

struct BroadcastPacket {
    std::uint16_t command = 0;
    std::uint16_t timer = 0;  // sampling interval, milliseconds
    std::uint8_t sensor = 0;
};

struct PcDataPacket {
    SensorDataPacket sensor;
    std::uint16_t decode_data = 0;
    std::uint16_t decode_latency = 0;
    std::uint32_t receive_time = 0;  // simulated microseconds
    std::uint16_t overflow = 0;      // packets dropped so far
};

constexpr std::size_t kSensorPacketBytes = 9;
constexpr std::size_t kBroadcastPacketBytes = 5;
constexpr std::size_t kPcPacketBytes = 19;

constexpr std::uint16_t kCommandReset = 1;
constexpr std::uint8_t kSensorPhoto = 1;

[[nodiscard]] std::vector<std::uint8_t> serialize(const SensorDataPacket& p);
[[nodiscard]] std::vector<std::uint8_t> serialize(const BroadcastPacket& p);
[[nodiscard]] std::vector<std::uint8_t> serialize(const PcDataPacket& p);

[[nodiscard]] SensorDataPacket deserialize_sensor(const std::vector<std::uint8_t>& bytes);
[[nodiscard]] BroadcastPacket deserialize_broadcast(const std::vector<std::uint8_t>& bytes);
[[nodiscard]] PcDataPacket deserialize_pc(const std::vector<std::uint8_t>& bytes);

// "01 00 04 00 2C 00 03 09 00" style rendering for golden comparisons.
[[nodiscard]] std::string hex_dump(const std::vector<std::uint8_t>& bytes);

// ---------------- TDMA schedule ----------------

constexpr unsigned kMinSamplingRateHz = 2;
constexpr unsigned kMaxSamplingRateHz = 125;
constexpr unsigned kNodeCount = 2;

// Equal time slices inside each sampling interval: one slot per node, in
// integer microseconds.
class SlotSchedule {
public:
    SlotSchedule(unsigned sampling_rate_hz, unsigned node_count = kNodeCount);

    [[nodiscard]] std::uint32_t slot_duration_us() const noexcept { return slot_us_; }
    [[nodiscard]] unsigned node_count() const noexcept { return node_count_; }
    [[nodiscard]] unsigned node_for_slot(std::uint64_t slot) const noexcept {
        return static_cast<unsigned>(slot % node_count_);
    }

private:
    std::uint32_t slot_us_;
    unsigned node_count_;
};

// ---------------- codec interface the simulator drives ----------------

struct EncodeOut {
    BitString bits;
    std::uint16_t original = 0;  // value actually encoded
    std::uint32_t ops = 0;
};

struct DecodeOut {
    std::uint16_t value = 0;
    std::uint32_t ops = 0;
};

class SimCodec {
public:
    virtual ~SimCodec() = default;

    [[nodiscard]] virtual std::string_view name() const = 0;
    // Joint codecs are decoded once per pair of packets.
    [[nodiscard]] virtual bool joint() const { return false; }
    // Pair encoders (the Haar transform) consume both samples of a round.
    [[nodiscard]] virtual bool pair_encoder() const { return false; }

    // Forget all inter-packet state; called when a resync broadcast lands.
    virtual void reset() {}

    virtual EncodeOut encode(unsigned node, Sample raw);
    virtual std::pair<EncodeOut, EncodeOut> encode_pair(Sample a, Sample b);

    virtual DecodeOut decode(unsigned node, const BitString& code);
    virtual std::pair<DecodeOut, DecodeOut> joint_decode(const BitString& first,
                                                         const BitString& second);
};

// ---------------- event log ----------------

enum class EventKind { broadcast, sensor_packet, pc_packet, decode_error };

[[nodiscard]] std::string_view event_kind_name(EventKind kind);

struct EventRecord {
    EventKind kind = EventKind::broadcast;
    std::uint64_t time_us = 0;
    BroadcastPacket broadcast{};   // kind == broadcast
    SensorDataPacket sensor{};     // sensor_packet, pc_packet, decode_error
    PcDataPacket pc{};             // pc_packet
    std::string note;              // decode_error
};

struct EventLog {
    std::vector<EventRecord> records;

    [[nodiscard]] std::size_t count(EventKind kind) const;
    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] std::string to_jsonl() const;
    void save_csv(const std::filesystem::path& path) const;
    void save_jsonl(const std::filesystem::path& path) const;
};

// ---------------- simulation ----------------

struct SimulationParams {
    unsigned sampling_rate_hz = kMinSamplingRateHz;  // 2..125
    std::uint64_t samples_per_node = 100;
    // Lossy-channel hook, off by default: probability that a sensor packet
    // never reaches the base station.
    double drop_probability = 0.0;
    std::uint64_t seed = 1;
};

// Drive the two-sensor TDMA network to completion: an initial broadcast,
// alternating sensor slots, base-station decoding (buffering pair halves
// for joint codecs), and a fresh broadcast whenever a sequence number hits
// 255.  Deterministic: identical params, codec and pair stream reproduce an
// identical log.
[[nodiscard]] EventLog run_simulation(const SimulationParams& params, SimCodec& codec,
                                      PairSource& pairs);

}  // namespace wsncodec
