#include "wsncodec/netsim.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wsncodec/errors.hpp"

namespace wsncodec {

// ---------------- serialization ----------------

namespace {

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
    }
}

struct ByteReader {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    std::uint8_t u8() { return bytes[pos++]; }
    std::uint16_t u16() {
        const auto lo = bytes[pos];
        const auto hi = bytes[pos + 1];
        pos += 2;
        return static_cast<std::uint16_t>(lo | (hi << 8));
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[pos++]) << (8 * i);
        return v;
    }
};

void require_size(const std::vector<std::uint8_t>& bytes, std::size_t want,
                  const char* what) {
    if (bytes.size() != want) {
        throw DecodeError(std::string(what) + ": expected " + std::to_string(want) +
                          " bytes, got " + std::to_string(bytes.size()));
    }
}

void validate(const SensorDataPacket& p) {
    if (p.length > 16) {
        throw std::invalid_argument("sensor packet: coded data exceeds 16 bits");
    }
}

}  // namespace

std::vector<std::uint8_t> serialize(const SensorDataPacket& p) {
    validate(p);
    std::vector<std::uint8_t> out;
    out.reserve(kSensorPacketBytes);
    put_u8(out, p.node_id);
    put_u8(out, p.sequence);
    put_u16(out, p.code_data);
    put_u16(out, p.original_data);
    put_u8(out, p.length);
    put_u16(out, p.latency);
    return out;
}

std::vector<std::uint8_t> serialize(const BroadcastPacket& p) {
    std::vector<std::uint8_t> out;
    out.reserve(kBroadcastPacketBytes);
    put_u16(out, p.command);
    put_u16(out, p.timer);
    put_u8(out, p.sensor);
    return out;
}

std::vector<std::uint8_t> serialize(const PcDataPacket& p) {
    std::vector<std::uint8_t> out;
    out.reserve(kPcPacketBytes);
    const auto inner = serialize(p.sensor);
    out.insert(out.end(), inner.begin(), inner.end());
    put_u16(out, p.decode_data);
    put_u16(out, p.decode_latency);
    put_u32(out, p.receive_time);
    put_u16(out, p.overflow);
    return out;
}

SensorDataPacket deserialize_sensor(const std::vector<std::uint8_t>& bytes) {
    require_size(bytes, kSensorPacketBytes, "sensor packet");
    ByteReader r{bytes};
    SensorDataPacket p;
    p.node_id = r.u8();
    p.sequence = r.u8();
    p.code_data = r.u16();
    p.original_data = r.u16();
    p.length = r.u8();
    p.latency = r.u16();
    validate(p);
    return p;
}

BroadcastPacket deserialize_broadcast(const std::vector<std::uint8_t>& bytes) {
    require_size(bytes, kBroadcastPacketBytes, "broadcast packet");
    ByteReader r{bytes};
    BroadcastPacket p;
    p.command = r.u16();
    p.timer = r.u16();
    p.sensor = r.u8();
    return p;
}

PcDataPacket deserialize_pc(const std::vector<std::uint8_t>& bytes) {
    require_size(bytes, kPcPacketBytes, "pc packet");
    ByteReader r{bytes};
    PcDataPacket p;
    p.sensor.node_id = r.u8();
    p.sensor.sequence = r.u8();
    p.sensor.code_data = r.u16();
    p.sensor.original_data = r.u16();
    p.sensor.length = r.u8();
    p.sensor.latency = r.u16();
    p.decode_data = r.u16();
    p.decode_latency = r.u16();
    p.receive_time = r.u32();
    p.overflow = r.u16();
    validate(p.sensor);
    return p;
}

std::string hex_dump(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    out.reserve(bytes.size() * 3);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out.push_back(digits[bytes[i] >> 4]);
        out.push_back(digits[bytes[i] & 0xF]);
    }
    return out;
}

// ---------------- SlotSchedule ----------------

SlotSchedule::SlotSchedule(unsigned sampling_rate_hz, unsigned node_count)
    : slot_us_(0), node_count_(node_count) {
    if (sampling_rate_hz < kMinSamplingRateHz || sampling_rate_hz > kMaxSamplingRateHz) {
        throw ConfigError("sampling rate must lie in " + std::to_string(kMinSamplingRateHz) +
                          ".." + std::to_string(kMaxSamplingRateHz) + " Hz");
    }
    if (node_count == 0) {
        throw ConfigError("node count must be positive");
    }
    slot_us_ = static_cast<std::uint32_t>(1000000u / (sampling_rate_hz * node_count));
}

// ---------------- SimCodec defaults ----------------

EncodeOut SimCodec::encode(unsigned, Sample) {
    throw std::logic_error("SimCodec: per-node encode not supported");
}

std::pair<EncodeOut, EncodeOut> SimCodec::encode_pair(Sample, Sample) {
    throw std::logic_error("SimCodec: pair encode not supported");
}

DecodeOut SimCodec::decode(unsigned, const BitString&) {
    throw std::logic_error("SimCodec: scalar decode not supported");
}

std::pair<DecodeOut, DecodeOut> SimCodec::joint_decode(const BitString&, const BitString&) {
    throw std::logic_error("SimCodec: joint decode not supported");
}

// ---------------- event log ----------------

std::string_view event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::broadcast: return "broadcast";
        case EventKind::sensor_packet: return "sensor_packet";
        case EventKind::pc_packet: return "pc_packet";
        case EventKind::decode_error: return "decode_error";
    }
    return "unknown";
}

std::size_t EventLog::count(EventKind kind) const {
    std::size_t n = 0;
    for (const auto& r : records) {
        if (r.kind == kind) ++n;
    }
    return n;
}

std::string EventLog::to_csv() const {
    std::ostringstream out;
    out << "event,time_us,node_id,sequence,code_data,original_data,length,latency,"
           "decode_data,decode_latency,receive_time,overflow,command,timer,sensor,note\n";
    for (const auto& r : records) {
        out << event_kind_name(r.kind) << ',' << r.time_us << ',';
        if (r.kind == EventKind::broadcast) {
            out << ",,,,,,,,,," << r.broadcast.command << ',' << r.broadcast.timer << ','
                << static_cast<unsigned>(r.broadcast.sensor) << ",\n";
            continue;
        }
        out << static_cast<unsigned>(r.sensor.node_id) << ','
            << static_cast<unsigned>(r.sensor.sequence) << ',' << r.sensor.code_data << ','
            << r.sensor.original_data << ',' << static_cast<unsigned>(r.sensor.length)
            << ',' << r.sensor.latency << ',';
        if (r.kind == EventKind::pc_packet) {
            out << r.pc.decode_data << ',' << r.pc.decode_latency << ','
                << r.pc.receive_time << ',' << r.pc.overflow;
        } else {
            out << ",,,";
        }
        out << ",,,," << r.note << '\n';
    }
    return out.str();
}

std::string EventLog::to_jsonl() const {
    std::ostringstream out;
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["event"] = event_kind_name(r.kind);
        j["time_us"] = r.time_us;
        switch (r.kind) {
            case EventKind::broadcast:
                j["command"] = r.broadcast.command;
                j["timer"] = r.broadcast.timer;
                j["sensor"] = r.broadcast.sensor;
                break;
            case EventKind::pc_packet:
                j["decode_data"] = r.pc.decode_data;
                j["decode_latency"] = r.pc.decode_latency;
                j["receive_time"] = r.pc.receive_time;
                j["overflow"] = r.pc.overflow;
                [[fallthrough]];
            case EventKind::sensor_packet:
            case EventKind::decode_error:
                j["node_id"] = r.sensor.node_id;
                j["sequence"] = r.sensor.sequence;
                j["code_data"] = r.sensor.code_data;
                j["original_data"] = r.sensor.original_data;
                j["length"] = r.sensor.length;
                j["latency"] = r.sensor.latency;
                break;
        }
        if (!r.note.empty()) j["note"] = r.note;
        out << j.dump() << '\n';
    }
    return out.str();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

}  // namespace

void EventLog::save_csv(const std::filesystem::path& path) const {
    write_text(path, to_csv());
}

void EventLog::save_jsonl(const std::filesystem::path& path) const {
    write_text(path, to_jsonl());
}

// ---------------- simulation ----------------

namespace {

struct PendingPacket {
    SensorDataPacket packet;
    std::uint64_t arrival_us = 0;
};

class Simulation {
public:
    Simulation(const SimulationParams& params, SimCodec& codec, PairSource& pairs)
        : params_(params),
          codec_(codec),
          pairs_(pairs),
          schedule_(params.sampling_rate_hz),
          drop_rng_(params.seed ^ 0x5D201C8E1F9AB43Bull) {
        if (params_.drop_probability < 0.0 || params_.drop_probability > 1.0) {
            throw ConfigError("drop probability must lie in 0..1");
        }
        // The PC clock is 32-bit microseconds; refuse runs that would wrap.
        // Slots: one initial broadcast, two data slots per round, and one
        // broadcast slot per sequence wrap.
        const auto slots = 2 + params_.samples_per_node * kNodeCount +
                           params_.samples_per_node / 256;
        if (slots * schedule_.slot_duration_us() > 0xFFFFFFFFull) {
            throw ConfigError("run too long for the 32-bit receive clock");
        }
    }

    EventLog run() {
        broadcast();
        for (std::uint64_t round = 0; round < params_.samples_per_node; ++round) {
            const CorrelatedPair pair = pairs_.next();
            if (codec_.pair_encoder()) {
                auto [first, second] = codec_.encode_pair(pair.x, pair.y);
                transmit(0, first);
                transmit(1, second);
            } else {
                transmit(0, codec_.encode(0, pair.x));
                transmit(1, codec_.encode(1, pair.y));
            }
            // A joint half whose partner was dropped must not pair across
            // rounds.
            if (buffered_.has_value()) {
                log_error(buffered_->packet, buffered_->arrival_us,
                          "pair half lost: partner packet never arrived");
                buffered_.reset();
            }
            // Resync between rounds once a sequence number has topped out.
            if (resync_pending_) {
                broadcast();
                resync_pending_ = false;
            }
        }
        return std::move(log_);
    }

private:
    void broadcast() {
        BroadcastPacket p;
        p.command = kCommandReset;
        p.timer = static_cast<std::uint16_t>(1000u / params_.sampling_rate_hz);
        p.sensor = kSensorPhoto;
        EventRecord rec;
        rec.kind = EventKind::broadcast;
        rec.time_us = next_slot_time();
        rec.broadcast = p;
        log_.records.push_back(rec);

        for (auto& s : sequence_) s = 0;
        codec_.reset();
        buffered_.reset();
    }

    std::uint64_t next_slot_time() {
        return slot_index_++ * static_cast<std::uint64_t>(schedule_.slot_duration_us());
    }

    void transmit(unsigned node, const EncodeOut& enc) {
        if (enc.bits.size() > 16) {
            throw std::invalid_argument("simulation: codeword exceeds the 16-bit packet field");
        }
        SensorDataPacket p;
        p.node_id = static_cast<std::uint8_t>(node + 1);
        p.sequence = sequence_[node];
        p.code_data = static_cast<std::uint16_t>(enc.bits.to_uint());
        p.original_data = enc.original;
        p.length = static_cast<std::uint8_t>(enc.bits.size());
        p.latency = static_cast<std::uint16_t>(enc.ops);

        const std::uint64_t t = next_slot_time();
        EventRecord rec;
        rec.kind = EventKind::sensor_packet;
        rec.time_us = t;
        rec.sensor = p;
        log_.records.push_back(rec);

        if (p.sequence == 255) resync_pending_ = true;
        sequence_[node] = static_cast<std::uint8_t>(sequence_[node] + 1);

        if (params_.drop_probability > 0.0 &&
            static_cast<double>(drop_rng_.next()) <
                params_.drop_probability * 18446744073709551616.0) {
            ++dropped_;
            log_error(p, t, "packet dropped in channel");
            return;
        }
        receive(p, t);
    }

    void receive(const SensorDataPacket& p, std::uint64_t t) {
        const BitString code =
            BitString::from_uint(p.code_data, p.length);
        if (!codec_.joint()) {
            try {
                const DecodeOut dec = codec_.decode(p.node_id - 1u, code);
                log_pc(p, dec, t);
            } catch (const DecodeError& e) {
                log_error(p, t, e.what());
            }
            return;
        }

        // Joint codecs: hold the first half of the round until its partner
        // lands, then decode the pair in node order.
        if (!buffered_.has_value()) {
            buffered_ = PendingPacket{p, t};
            return;
        }
        const PendingPacket first = *buffered_;
        buffered_.reset();
        const BitString first_code =
            BitString::from_uint(first.packet.code_data, first.packet.length);
        try {
            auto [d1, d2] = codec_.joint_decode(first_code, code);
            log_pc(first.packet, d1, first.arrival_us);
            log_pc(p, d2, t);
        } catch (const DecodeError& e) {
            log_error(first.packet, first.arrival_us, e.what());
            log_error(p, t, e.what());
        }
    }

    void log_pc(const SensorDataPacket& p, const DecodeOut& dec, std::uint64_t t) {
        PcDataPacket pc;
        pc.sensor = p;
        pc.decode_data = dec.value;
        pc.decode_latency = static_cast<std::uint16_t>(dec.ops);
        pc.receive_time = static_cast<std::uint32_t>(t);
        pc.overflow = static_cast<std::uint16_t>(dropped_);
        EventRecord rec;
        rec.kind = EventKind::pc_packet;
        rec.time_us = t;
        rec.sensor = p;
        rec.pc = pc;
        log_.records.push_back(rec);
    }

    void log_error(const SensorDataPacket& p, std::uint64_t t, std::string note) {
        EventRecord rec;
        rec.kind = EventKind::decode_error;
        rec.time_us = t;
        rec.sensor = p;
        rec.note = std::move(note);
        log_.records.push_back(rec);
    }

    SimulationParams params_;
    SimCodec& codec_;
    PairSource& pairs_;
    SlotSchedule schedule_;
    SplitMix64 drop_rng_;
    EventLog log_;
    std::array<std::uint8_t, kNodeCount> sequence_{};
    std::optional<PendingPacket> buffered_;
    std::uint64_t slot_index_ = 0;
    std::uint64_t dropped_ = 0;
    bool resync_pending_ = false;
};

}  // namespace

EventLog run_simulation(const SimulationParams& params, SimCodec& codec,
                        PairSource& pairs) {
    return Simulation(params, codec, pairs).run();
}

}  // namespace wsncodec
