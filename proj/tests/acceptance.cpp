// Acceptance checks for the workbench.  Each numbered check prints exactly
// one PASS/FAIL line; the exit code is the number of failing checks capped
// at 1.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wsncodec/bitstring.hpp"
#include "wsncodec/codebook.hpp"
#include "wsncodec/cost_meter.hpp"
#include "wsncodec/distributed_codecs.hpp"
#include "wsncodec/experiment.hpp"
#include "wsncodec/netsim.hpp"
#include "wsncodec/scalar_codecs.hpp"
#include "wsncodec/sources.hpp"

using namespace wsncodec;
namespace fs = std::filesystem;
using SteadyClock = std::chrono::steady_clock;

namespace {

// ---------------- tiny check harness ----------------

struct Check {
    bool pass = true;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
    void under_one_second(SteadyClock::time_point start) {
        const double s =
            std::chrono::duration<double>(SteadyClock::now() - start).count();
        expect(s < 1.0, "took " + std::to_string(s) + " s");
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// ---------------- fixture files ----------------

fs::path temp_path(const std::string& name) {
    return fs::temp_directory_path() / name;
}

fs::path write_histogram(const std::string& name,
                         const std::vector<std::pair<int, int>>& rows) {
    const auto path = temp_path(name);
    std::ofstream out(path, std::ios::binary);
    for (const auto& [symbol, count] : rows) out << symbol << ',' << count << '\n';
    return path;
}

fs::path write_trace(const std::string& name, std::size_t n) {
    const auto path = temp_path(name);
    std::ofstream out(path, std::ios::binary);
    for (std::size_t i = 0; i < n; ++i) out << (i * 7 + 13) % 256 << '\n';
    return path;
}

fs::path uniform128_histogram() {
    std::vector<std::pair<int, int>> rows;
    for (int s = 0; s < 128; ++s) rows.emplace_back(s, 1);
    return write_histogram("wsncodec_acc_uniform128.csv", rows);
}

fs::path skewed16_histogram() {
    const int counts[] = {64, 48, 36, 27, 20, 15, 11, 8, 6, 5, 4, 3, 3, 2, 2, 2};
    std::vector<std::pair<int, int>> rows;
    for (int s = 0; s < 16; ++s) rows.emplace_back(s, counts[s]);
    return write_histogram("wsncodec_acc_skewed16.csv", rows);
}

fs::path matched8_histogram() {
    const int counts[] = {128, 64, 32, 16, 8, 4, 2, 2};
    std::vector<std::pair<int, int>> rows;
    for (int s = 0; s < 8; ++s) rows.emplace_back(200 + s, counts[s]);
    return write_histogram("wsncodec_acc_matched8.csv", rows);
}

RunResult run(CodecId codec, const std::string& source, std::uint64_t samples,
              unsigned rate = kMinSamplingRateHz) {
    ExperimentConfig config;
    config.codec = codec;
    config.source = source;
    config.samples = samples;
    config.rate = rate;
    return run_experiment(config);
}

// ---------------- the numbered checks ----------------

// 1. Fibonacci codewords: the frozen fib(10), terminator, prefix freedom.
Check check_fibonacci_codewords() {
    Check c;
    const auto start = SteadyClock::now();
    c.expect(fibonacci_codeword(10).to_string() == "010011",
             "fib(10) = " + fibonacci_codeword(10).to_string());

    std::vector<std::string> words;
    words.reserve(10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        words.push_back(fibonacci_codeword(n).to_string());
        const std::string& w = words.back();
        if (w.size() < 2 || w.compare(w.size() - 2, 2, "11") != 0) {
            c.expect(false, "codeword for n=" + std::to_string(n) +
                                " does not end in 11");
            break;
        }
    }
    std::sort(words.begin(), words.end());
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
        if (words[i + 1].compare(0, words[i].size(), words[i]) == 0) {
            c.expect(false, words[i] + " is a prefix of " + words[i + 1]);
            break;
        }
    }
    c.under_one_second(start);
    return c;
}

// 2. T-code augmentation: both reference sets, element for element.
Check check_tcode_sets() {
    Check c;
    const auto start = SteadyClock::now();

    const auto base = t_code_base();
    const auto s1 = t_augment(base, base[0]);  // prefix "1"
    const char* expected1[] = {"00", "01", "11", "100", "101"};
    c.expect(s1.size() == 5, "first set has " + std::to_string(s1.size()) +
                                 " codewords");
    for (std::size_t i = 0; c.pass && i < s1.size(); ++i) {
        c.expect(s1[i].to_string() == expected1[i],
                 "first set [" + std::to_string(i) + "] = " + s1[i].to_string());
    }

    const auto s2 = t_augment(s1, s1[0]);  // prefix "00"
    const char* expected2[] = {"01",   "11",   "100",   "101",  "0000",
                               "0001", "0011", "00100", "00101"};
    c.expect(s2.size() == 9, "second set has " + std::to_string(s2.size()) +
                                 " codewords");
    for (std::size_t i = 0; c.pass && i < s2.size(); ++i) {
        c.expect(s2[i].to_string() == expected2[i],
                 "second set [" + std::to_string(i) + "] = " + s2[i].to_string());
    }
    c.under_one_second(start);
    return c;
}

// 3. DISCUS: 5-bit syndromes, every close pair decodes, 5.0 bits/sample/node.
Check check_discus() {
    Check c;
    const auto start = SteadyClock::now();
    const DiscusCode code;

    for (unsigned w = 0; w < 128; ++w) {
        const auto word = static_cast<std::uint8_t>(w);
        c.expect(code.syndrome1(word) < 32 && code.syndrome2(word) < 32,
                 "syndrome of " + std::to_string(w) + " exceeds 5 bits");
    }

    std::size_t pairs = 0;
    for (unsigned x = 0; x < 128 && c.pass; ++x) {
        for (int flip = -1; flip < 7 && c.pass; ++flip) {
            const unsigned y = flip < 0 ? x : x ^ (1u << flip);
            ++pairs;
            const auto r = code.joint_decode(
                code.syndrome1(static_cast<std::uint8_t>(x)),
                code.syndrome2(static_cast<std::uint8_t>(y)));
            c.expect(!r.ambiguous && r.x == x && r.y == y,
                     "pair (" + std::to_string(x) + "," + std::to_string(y) +
                         ") decoded as (" + std::to_string(r.x) + "," +
                         std::to_string(r.y) + ")");
        }
    }
    c.expect(pairs == 1024, "covered " + std::to_string(pairs) + " pairs");

    const auto result =
        run(CodecId::discus, "pseudo:" + uniform128_histogram().string(), 512);
    c.expect(result.metrics.avg_bits == 5.0,
             "simulated rate " + num(result.metrics.avg_bits) +
                 " bits/sample/node");
    c.under_one_second(start);
    return c;
}

// 4. Modulo-8 binning: exhaustive iff-same-bin equivalence plus the worked
//    (40, 44) example.
Check check_modulo() {
    Check c;
    const auto start = SteadyClock::now();
    const ModuloParams params{8};

    c.expect(modulo_encode(44, params) == 4,
             "44 mod 8 sent as " + std::to_string(modulo_encode(44, params)));
    c.expect(modulo_joint_decode(40, 4, params) == 44,
             "(40, residue 4) decoded as " +
                 std::to_string(modulo_joint_decode(40, 4, params)));

    for (int ref = 0; ref < 256 && c.pass; ++ref) {
        for (int v = 0; v < 256 && c.pass; ++v) {
            const auto residue = modulo_encode(static_cast<Sample>(v), params);
            const Sample decoded =
                modulo_joint_decode(static_cast<Sample>(ref), residue, params);
            const bool exact = decoded == v;
            const bool same_bin = ref / 8 == v / 8;
            c.expect(exact == same_bin, "pair (" + std::to_string(ref) + "," +
                                            std::to_string(v) + ") exact=" +
                                            std::to_string(exact) + " same_bin=" +
                                            std::to_string(same_bin));
        }
    }
    c.under_one_second(start);
    return c;
}

// 5. Lossless chains: the four symbol-codec simulations report zero error,
//    and the Haar pair and within-frame DPCM transforms invert exactly.
Check check_lossless() {
    Check c;
    const auto source = "pseudo:" + skewed16_histogram().string();
    for (const auto codec : {CodecId::fibonacci, CodecId::fibonacci_pseudo,
                             CodecId::tcode, CodecId::tcode_pseudo}) {
        const auto result = run(codec, source, 256);
        c.expect(result.metrics.error_mean == 0.0 &&
                     result.metrics.error_std == 0.0 &&
                     result.metrics.decode_errors == 0,
                 codec_name(codec) + ": err (" + num(result.metrics.error_mean) +
                     "," + num(result.metrics.error_std) + "), " +
                     std::to_string(result.metrics.decode_errors) +
                     " decode errors");
    }

    for (int a = 0; a < 256 && c.pass; ++a) {
        for (int b = 0; b < 256 && c.pass; ++b) {
            const auto [ra, rb] = haar_decode_pair(
                haar_encode_pair(static_cast<Sample>(a), static_cast<Sample>(b)));
            c.expect(ra == a && rb == b,
                     "haar pair (" + std::to_string(a) + "," + std::to_string(b) +
                         ") came back (" + std::to_string(ra) + "," +
                         std::to_string(rb) + ")");
        }
    }

    std::vector<Sample> walk;
    unsigned state = 1;
    Sample level = 128;
    for (int i = 0; i < 256; ++i) {
        state = state * 1103515245u + 12345u;
        const int step = static_cast<int>((state >> 16) % 9) - 4;
        const int next = std::clamp(static_cast<int>(level) + step, 0, 255);
        level = static_cast<Sample>(next);
        walk.push_back(level);
    }
    for (std::size_t frame = 0; frame < walk.size(); frame += 16) {
        const std::vector<Sample> samples(walk.begin() + frame,
                                          walk.begin() + frame + 16);
        if (dpcm_decode(dpcm_encode(samples)) != samples) {
            c.expect(false, "dpcm frame at " + std::to_string(frame) +
                                " did not roundtrip");
            break;
        }
    }
    return c;
}

// 6. Energy: reported joules equal total bits times 430 nJ, three run lengths.
Check check_energy() {
    Check c;
    const auto trace = "trace:" + write_trace("wsncodec_acc_trace.csv", 256).string();
    for (const std::uint64_t samples : {50ull, 200ull, 1000ull}) {
        const auto m = run(CodecId::mulaw, trace, samples).metrics;
        const double expected = static_cast<double>(m.total_bits) * 430e-9;
        c.expect(m.total_bits > 0 && m.energy_joules == expected,
                 std::to_string(samples) + " samples: " + num(m.energy_joules) +
                     " J for " + std::to_string(m.total_bits) + " bits");
    }
    return c;
}

// 7. Sequence wrap: a second broadcast lands after sequence 255 and numbering
//    restarts; a 125 Hz run completes with zero overflow.
Check check_sequence_wrap() {
    Check c;
    const auto trace = "trace:" + write_trace("wsncodec_acc_trace.csv", 256).string();
    const auto result = run(CodecId::mulaw, trace, 300, 125);
    const auto& records = result.log.records;

    std::vector<std::size_t> broadcasts;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].kind == EventKind::broadcast) broadcasts.push_back(i);
    }
    c.expect(broadcasts.size() == 2,
             std::to_string(broadcasts.size()) + " broadcasts in a 300-round run");

    if (c.pass) {
        int before = -1, after = -1;
        for (std::size_t i = broadcasts[1]; i-- > 0;) {
            if (records[i].kind == EventKind::sensor_packet) {
                before = records[i].sensor.sequence;
                break;
            }
        }
        for (std::size_t i = broadcasts[1] + 1; i < records.size(); ++i) {
            if (records[i].kind == EventKind::sensor_packet) {
                after = records[i].sensor.sequence;
                break;
            }
        }
        c.expect(before == 255 && after == 0,
                 "sequence " + std::to_string(before) + " before re-broadcast, " +
                     std::to_string(after) + " after");
    }

    std::size_t pc = 0;
    for (const auto& record : records) {
        if (record.kind != EventKind::pc_packet) continue;
        ++pc;
        if (record.pc.overflow != 0) {
            c.expect(false, "overflow " + std::to_string(record.pc.overflow) +
                                " at " + std::to_string(record.time_us) + " us");
            break;
        }
    }
    c.expect(pc == 600, std::to_string(pc) + " pc packets delivered");
    return c;
}

// 8. Packet formats: fixed sizes and randomized serialize/deserialize.
Check check_packets() {
    Check c;
    c.expect(serialize(SensorDataPacket{}).size() == kSensorPacketBytes,
             "sensor packet is " +
                 std::to_string(serialize(SensorDataPacket{}).size()) + " bytes");
    c.expect(serialize(PcDataPacket{}).size() == kPcPacketBytes,
             "pc packet is " + std::to_string(serialize(PcDataPacket{}).size()) +
                 " bytes");
    c.expect(serialize(BroadcastPacket{}).size() == kBroadcastPacketBytes,
             "broadcast packet is " +
                 std::to_string(serialize(BroadcastPacket{}).size()) + " bytes");

    SplitMix64 rng(2026);
    for (int i = 0; i < 100000 && c.pass; ++i) {
        PcDataPacket p;
        p.sensor.node_id = static_cast<std::uint8_t>(rng.next_below(256));
        p.sensor.sequence = static_cast<std::uint8_t>(rng.next_below(256));
        p.sensor.code_data = static_cast<std::uint16_t>(rng.next_below(65536));
        p.sensor.original_data = static_cast<std::uint16_t>(rng.next_below(65536));
        p.sensor.length = static_cast<std::uint8_t>(rng.next_below(17));
        p.sensor.latency = static_cast<std::uint16_t>(rng.next_below(65536));
        p.decode_data = static_cast<std::uint16_t>(rng.next_below(65536));
        p.decode_latency = static_cast<std::uint16_t>(rng.next_below(65536));
        p.receive_time = static_cast<std::uint32_t>(rng.next_below(1ull << 32));
        p.overflow = static_cast<std::uint16_t>(rng.next_below(65536));

        const auto s = deserialize_sensor(serialize(p.sensor));
        c.expect(s.node_id == p.sensor.node_id && s.sequence == p.sensor.sequence &&
                     s.code_data == p.sensor.code_data &&
                     s.original_data == p.sensor.original_data &&
                     s.length == p.sensor.length && s.latency == p.sensor.latency,
                 "sensor packet roundtrip diverged at iteration " +
                     std::to_string(i));

        const auto q = deserialize_pc(serialize(p));
        c.expect(q.sensor.node_id == p.sensor.node_id &&
                     q.sensor.sequence == p.sensor.sequence &&
                     q.sensor.code_data == p.sensor.code_data &&
                     q.sensor.original_data == p.sensor.original_data &&
                     q.sensor.length == p.sensor.length &&
                     q.sensor.latency == p.sensor.latency &&
                     q.decode_data == p.decode_data &&
                     q.decode_latency == p.decode_latency &&
                     q.receive_time == p.receive_time && q.overflow == p.overflow,
                 "pc packet roundtrip diverged at iteration " + std::to_string(i));
    }
    return c;
}

// 9. Cost orderings: one probe per LUT encode, logarithmic Fibonacci decode,
//    linear T-code decode at sizes 64, 128 and 256.
Check check_costs() {
    Check c;
    for (const auto law : {CompanderLaw::a_law, CompanderLaw::mu_law}) {
        const Compander compander{CompanderParams{law}};
        for (int v = 0; v < 256 && c.pass; ++v) {
            CostMeter meter;
            (void)compander.encode(static_cast<std::uint8_t>(v), &meter);
            c.expect(meter.ops() == 1, "LUT encode of " + std::to_string(v) +
                                           " cost " + std::to_string(meter.ops()));
        }
    }

    for (const std::size_t n : {64u, 128u, 256u}) {
        const auto fib = build_fibonacci_codebook(FrequencyTable::uniform(n));
        const auto bound = static_cast<std::uint32_t>(std::bit_width(n - 1) + 1);
        std::uint32_t worst = 0;
        for (std::size_t s = 0; s < n; ++s) {
            CostMeter meter;
            (void)symbol_decode(fib.codeword(s), fib, &meter);
            worst = std::max(worst, meter.ops());
        }
        c.expect(worst <= bound, "fibonacci n=" + std::to_string(n) +
                                     " worst decode " + std::to_string(worst) +
                                     " > " + std::to_string(bound));

        const auto tc = build_tcode_codebook(FrequencyTable::uniform(n), 16);
        std::uint32_t worst_tc = 0;
        for (std::size_t s = 0; s < n; ++s) {
            CostMeter meter;
            (void)symbol_decode(tc.codeword(s), tc, &meter);
            worst_tc = std::max(worst_tc, meter.ops());
        }
        c.expect(worst_tc == n, "t-code n=" + std::to_string(n) +
                                    " worst decode " + std::to_string(worst_tc));
    }
    return c;
}

// 10. A codebook matched to the source histogram meets sum(l_i p_i) within
//     1/period and beats the identity ranking outright.
Check check_matched_codebook() {
    Check c;
    const auto hist_path = matched8_histogram();
    const auto hist = FrequencyTable::load_csv(hist_path);
    const auto matched_book = build_fibonacci_codebook(hist);
    const double expected = matched_book.average_length(hist);
    c.expect(expected == 2.8203125, "expected length " + num(expected));

    const auto source = "pseudo:" + hist_path.string();
    const auto matched = run(CodecId::fibonacci_pseudo, source, 512).metrics;
    c.expect(std::abs(matched.avg_bits - expected) <= 1.0 / 256.0,
             "matched run " + num(matched.avg_bits) + " vs " + num(expected));

    const auto identity = run(CodecId::fibonacci, source, 512).metrics;
    c.expect(identity.avg_bits == 12.0, "identity run " + num(identity.avg_bits));
    c.expect(matched.avg_bits < identity.avg_bits,
             "matched " + num(matched.avg_bits) + " not below identity " +
                 num(identity.avg_bits));
    return c;
}

// 11. Slepian-Wolf bounds: joint entropy <= achieved 10 bits/pair <= marginal
//     sum, measured over 16384 bitflip pairs.
Check check_slepian_wolf() {
    Check c;
    const auto result = run(CodecId::discus,
                            "pseudo:" + uniform128_histogram().string(), 16384, 125);
    c.expect(result.entropy.has_value(), "no entropy block");
    if (!c.pass) return c;
    const auto& e = *result.entropy;
    c.expect(e.pairs >= 10000, std::to_string(e.pairs) + " pairs measured");
    c.expect(e.achieved_bits_per_pair == 10.0,
             "achieved " + num(e.achieved_bits_per_pair) + " bits/pair");
    c.expect(e.h_xy <= e.achieved_bits_per_pair,
             "H(X,Y) " + num(e.h_xy) + " above achieved rate");
    c.expect(e.achieved_bits_per_pair <= e.h_x + e.h_y,
             "achieved rate above H(X)+H(Y) " + num(e.h_x + e.h_y));
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* label;
        std::function<Check()> body;
    };
    const Entry entries[] = {
        {"fibonacci codewords: fib(10)=010011, n=1..10000 end in 11, prefix-free",
         check_fibonacci_codewords},
        {"t-code augmentation reproduces S(0,1) and S(0,1,00) verbatim",
         check_tcode_sets},
        {"discus: 5-bit syndromes, 1024 close pairs exact, 5.0 bits/sample/node",
         check_discus},
        {"modulo-8: all 65536 pairs exact iff same bin, (40,44) example",
         check_modulo},
        {"lossless chains: symbol sims err (0,0); haar and dpcm invert exactly",
         check_lossless},
        {"energy: reported joules equal total bits x 430 nJ, three run lengths",
         check_energy},
        {"sequence wrap at 255: re-broadcast, restart, 125 Hz run zero overflow",
         check_sequence_wrap},
        {"packets: 9-byte sensor, 19-byte pc, 100000 randomized roundtrips",
         check_packets},
        {"costs: LUT probe 1, fibonacci decode <= log2(n)+1, t-code linear",
         check_costs},
        {"matched codebook meets sum(l*p) within 1/period, beats identity",
         check_matched_codebook},
        {"slepian-wolf: H(X,Y) <= 10 bits/pair <= H(X)+H(Y) on bitflip pairs",
         check_slepian_wolf},
    };

    int failures = 0;
    int number = 0;
    for (const auto& entry : entries) {
        ++number;
        Check result;
        try {
            result = entry.body();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        if (result.pass) {
            std::printf("PASS  %2d. %s\n", number, entry.label);
        } else {
            std::printf("FAIL  %2d. %s: %s\n", number, entry.label,
                        result.detail.c_str());
            ++failures;
        }
    }
    std::printf("%d/11 acceptance checks passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
