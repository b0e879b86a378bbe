#include "wsncodec/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace wsncodec {

// ---------------- energy ----------------

double transmission_energy(std::uint64_t total_bits, const EnergyModel& model) {
    return static_cast<double>(total_bits) * model.joules_per_bit;
}

// ---------------- basic statistics ----------------

namespace {

double population_std(double sq_mean, double mean) {
    const double var = sq_mean - mean * mean;
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace

Stats error_stats(const std::vector<std::pair<int, int>>& original_decoded) {
    Stats s;
    s.n = original_decoded.size();
    if (s.n == 0) return s;
    std::int64_t sum = 0;
    std::uint64_t sq = 0;
    for (const auto& [original, decoded] : original_decoded) {
        const std::int64_t e = decoded - original;
        sum += e;
        sq += static_cast<std::uint64_t>(e * e);
    }
    const auto n = static_cast<double>(s.n);
    s.mean = static_cast<double>(sum) / n;
    s.stddev = population_std(static_cast<double>(sq) / n, s.mean);
    return s;
}

// ---------------- accumulator ----------------

void MetricsAccumulator::add_sensor(std::uint8_t length_bits, std::uint16_t encode_ops) {
    ++sensor_n_;
    bits_ += length_bits;
    enc_sum_ += encode_ops;
    enc_sq_ += static_cast<std::uint64_t>(encode_ops) * encode_ops;
}

void MetricsAccumulator::add_pc(std::uint16_t original, std::uint16_t decoded,
                                std::uint16_t decode_ops) {
    ++pc_n_;
    const std::int64_t e = static_cast<std::int64_t>(decoded) - original;
    err_sum_ += e;
    err_sq_ += static_cast<std::uint64_t>(e * e);
    dec_sum_ += decode_ops;
    dec_sq_ += static_cast<std::uint64_t>(decode_ops) * decode_ops;
}

void MetricsAccumulator::add_error() { ++errors_; }

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
    sensor_n_ += other.sensor_n_;
    pc_n_ += other.pc_n_;
    errors_ += other.errors_;
    bits_ += other.bits_;
    err_sum_ += other.err_sum_;
    err_sq_ += other.err_sq_;
    enc_sum_ += other.enc_sum_;
    enc_sq_ += other.enc_sq_;
    dec_sum_ += other.dec_sum_;
    dec_sq_ += other.dec_sq_;
}

MetricsReport MetricsAccumulator::report(std::string codec_name,
                                         const EnergyModel& energy) const {
    MetricsReport r;
    r.codec = std::move(codec_name);
    r.sensor_packets = sensor_n_;
    r.pc_packets = pc_n_;
    r.decode_errors = errors_;
    r.total_bits = bits_;
    r.energy_joules = transmission_energy(bits_, energy);
    if (sensor_n_ > 0) {
        const auto n = static_cast<double>(sensor_n_);
        r.avg_bits = static_cast<double>(bits_) / n;
        r.encode_mean = static_cast<double>(enc_sum_) / n;
        r.encode_std =
            population_std(static_cast<double>(enc_sq_) / n, r.encode_mean);
    }
    if (pc_n_ > 0) {
        const auto n = static_cast<double>(pc_n_);
        r.error_mean = static_cast<double>(err_sum_) / n;
        r.error_std = population_std(static_cast<double>(err_sq_) / n, r.error_mean);
        r.decode_mean = static_cast<double>(dec_sum_) / n;
        r.decode_std = population_std(static_cast<double>(dec_sq_) / n, r.decode_mean);
    }
    return r;
}

MetricsReport summarize(const EventLog& log, std::string codec_name,
                        const EnergyModel& energy) {
    MetricsAccumulator acc;
    for (const auto& rec : log.records) {
        switch (rec.kind) {
            case EventKind::sensor_packet:
                acc.add_sensor(rec.sensor.length, rec.sensor.latency);
                break;
            case EventKind::pc_packet:
                acc.add_pc(rec.pc.sensor.original_data, rec.pc.decode_data,
                           rec.pc.decode_latency);
                break;
            case EventKind::decode_error:
                acc.add_error();
                break;
            case EventKind::broadcast:
                break;
        }
    }
    return acc.report(std::move(codec_name), energy);
}

// ---------------- entropy ----------------

namespace {

double plugin_entropy(const std::map<std::uint32_t, std::uint64_t>& counts,
                      std::uint64_t total) {
    double h = 0.0;
    for (const auto& [_, c] : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

EntropyReport entropy_report(const std::vector<CorrelatedPair>& pairs,
                             double achieved_bits_per_pair) {
    EntropyReport r;
    r.achieved_bits_per_pair = achieved_bits_per_pair;
    r.pairs = pairs.size();
    if (pairs.empty()) return r;

    std::map<std::uint32_t, std::uint64_t> cx, cy, cxy;
    for (const auto& p : pairs) {
        ++cx[p.x];
        ++cy[p.y];
        ++cxy[(static_cast<std::uint32_t>(p.x) << 8) | p.y];
    }
    const auto total = static_cast<std::uint64_t>(pairs.size());
    r.h_x = plugin_entropy(cx, total);
    r.h_y = plugin_entropy(cy, total);
    r.h_xy = plugin_entropy(cxy, total);
    r.h_y_given_x = r.h_xy - r.h_x;
    return r;
}

// ---------------- rendering ----------------

namespace {

std::string fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, v);
    return buf;
}

std::string scientific(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

}  // namespace

std::string render_table(const std::vector<MetricsReport>& reports,
                         const std::optional<EntropyReport>& entropy) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-18s %9s %10s %10s %9s %9s %9s %9s %13s\n",
                  "codec", "avg_bits", "err_mean", "err_std", "enc_mean", "enc_std",
                  "dec_mean", "dec_std", "energy_J");
    out << line;
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line),
                      "%-18s %9s %10s %10s %9s %9s %9s %9s %13s\n", r.codec.c_str(),
                      fixed(r.avg_bits, 4).c_str(), fixed(r.error_mean, 4).c_str(),
                      fixed(r.error_std, 4).c_str(), fixed(r.encode_mean, 2).c_str(),
                      fixed(r.encode_std, 2).c_str(), fixed(r.decode_mean, 2).c_str(),
                      fixed(r.decode_std, 2).c_str(), scientific(r.energy_joules).c_str());
        out << line;
    }
    if (entropy.has_value()) {
        out << '\n'
            << "entropy over " << entropy->pairs << " pairs (bits):\n"
            << "  H(X) = " << fixed(entropy->h_x, 4)
            << "  H(Y) = " << fixed(entropy->h_y, 4)
            << "  H(X,Y) = " << fixed(entropy->h_xy, 4)
            << "  H(Y|X) = " << fixed(entropy->h_y_given_x, 4) << '\n'
            << "  achieved rate = " << fixed(entropy->achieved_bits_per_pair, 4)
            << " bits/pair\n";
    }
    return out.str();
}

std::string render_csv(const std::vector<MetricsReport>& reports,
                       const std::optional<EntropyReport>& entropy) {
    std::ostringstream out;
    out << "codec,sensor_packets,pc_packets,decode_errors,total_bits,avg_bits,"
           "err_mean,err_std,enc_mean,enc_std,dec_mean,dec_std,energy_joules\n";
    for (const auto& r : reports) {
        out << r.codec << ',' << r.sensor_packets << ',' << r.pc_packets << ','
            << r.decode_errors << ',' << r.total_bits << ',' << fixed(r.avg_bits, 6)
            << ',' << fixed(r.error_mean, 6) << ',' << fixed(r.error_std, 6) << ','
            << fixed(r.encode_mean, 6) << ',' << fixed(r.encode_std, 6) << ','
            << fixed(r.decode_mean, 6) << ',' << fixed(r.decode_std, 6) << ','
            << scientific(r.energy_joules) << '\n';
    }
    if (entropy.has_value()) {
        out << "entropy,pairs,h_x,h_y,h_xy,h_y_given_x,achieved_bits_per_pair\n"
            << "entropy," << entropy->pairs << ',' << fixed(entropy->h_x, 6) << ','
            << fixed(entropy->h_y, 6) << ',' << fixed(entropy->h_xy, 6) << ','
            << fixed(entropy->h_y_given_x, 6) << ','
            << fixed(entropy->achieved_bits_per_pair, 6) << '\n';
    }
    return out.str();
}

std::string render_json(const std::vector<MetricsReport>& reports,
                        const std::optional<EntropyReport>& entropy) {
    nlohmann::ordered_json doc;
    doc["runs"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["codec"] = r.codec;
        j["sensor_packets"] = r.sensor_packets;
        j["pc_packets"] = r.pc_packets;
        j["decode_errors"] = r.decode_errors;
        j["total_bits"] = r.total_bits;
        j["avg_bits"] = r.avg_bits;
        j["err_mean"] = r.error_mean;
        j["err_std"] = r.error_std;
        j["enc_mean"] = r.encode_mean;
        j["enc_std"] = r.encode_std;
        j["dec_mean"] = r.decode_mean;
        j["dec_std"] = r.decode_std;
        j["energy_joules"] = r.energy_joules;
        doc["runs"].push_back(j);
    }
    if (entropy.has_value()) {
        nlohmann::ordered_json j;
        j["pairs"] = entropy->pairs;
        j["h_x"] = entropy->h_x;
        j["h_y"] = entropy->h_y;
        j["h_xy"] = entropy->h_xy;
        j["h_y_given_x"] = entropy->h_y_given_x;
        j["achieved_bits_per_pair"] = entropy->achieved_bits_per_pair;
        doc["entropy"] = j;
    }
    return doc.dump(2) + "\n";
}

}  // namespace wsncodec
