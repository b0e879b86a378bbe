#include "wsncodec/sources.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "wsncodec/errors.hpp"

namespace wsncodec {

// ---------------- SplitMix64 ----------------

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("SplitMix64: zero bound");
    }
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
}

// ---------------- TraceSource ----------------

TraceSource::TraceSource(std::vector<Sample> samples, std::string origin)
    : samples_(std::move(samples)), origin_(std::move(origin)) {
    if (samples_.empty()) {
        throw std::invalid_argument("TraceSource: no samples");
    }
}

Sample TraceSource::next() {
    const Sample v = samples_[pos_];
    pos_ = (pos_ + 1) % samples_.size();
    return v;
}

TraceSource load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open trace file: " + path.string());
    }
    std::vector<Sample> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Tolerate surrounding whitespace and empty lines.
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": not an integer: \"" + token + "\"");
        }
        if (value < 0 || value > 255) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": sample out of 0..255 range");
        }
        samples.push_back(static_cast<Sample>(value));
    }
    if (samples.empty()) {
        throw ParseError(path.string() + ": trace holds no samples");
    }
    return TraceSource(std::move(samples), path.string());
}

FrequencyTable estimate_histogram(const TraceSource& trace) {
    std::vector<std::uint64_t> counts(256, 0);
    for (Sample v : trace.samples()) ++counts[v];
    return FrequencyTable::from_counts(std::move(counts));
}

// ---------------- PseudoSource ----------------

namespace {

// Largest-remainder apportionment of `period` emissions across symbols.
std::vector<std::uint64_t> apportion(const FrequencyTable& histogram,
                                     std::size_t period) {
    const std::size_t n = histogram.symbol_count();
    std::vector<std::uint64_t> quota(n, 0);
    std::vector<std::pair<double, std::size_t>> remainder;  // (-r, symbol)
    remainder.reserve(n);
    std::uint64_t assigned = 0;

    if (histogram.has_counts()) {
        // Integer arithmetic keeps the split exact: counts summing to the
        // period reproduce themselves.
        const auto& counts = histogram.counts();
        const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
        for (std::size_t s = 0; s < n; ++s) {
            const auto scaled = counts[s] * static_cast<std::uint64_t>(period);
            quota[s] = scaled / total;
            assigned += quota[s];
            remainder.emplace_back(-static_cast<double>(scaled % total),
                                   s);
        }
    } else {
        for (std::size_t s = 0; s < n; ++s) {
            const double ideal = histogram.probability(s) * static_cast<double>(period);
            quota[s] = static_cast<std::uint64_t>(ideal);
            assigned += quota[s];
            remainder.emplace_back(-(ideal - static_cast<double>(quota[s])), s);
        }
    }

    // Hand the leftover emissions to the largest remainders; equal
    // remainders favor the smaller symbol.
    std::sort(remainder.begin(), remainder.end());
    for (std::size_t i = 0; assigned < period; ++i, ++assigned) {
        ++quota[remainder[i % n].second];
    }
    return quota;
}

}  // namespace

PseudoSource::PseudoSource(const FrequencyTable& histogram, std::size_t period) {
    if (period == 0) {
        throw std::invalid_argument("PseudoSource: period must be positive");
    }
    if (histogram.symbol_count() > 256) {
        throw std::invalid_argument("PseudoSource: alphabet exceeds 8-bit samples");
    }
    const auto quota = apportion(histogram, period);

    // Proportional interleave: each step emits the symbol lagging furthest
    // behind its quota (largest c*(t+1) - emitted*period, smaller symbol on
    // ties), spreading every symbol evenly across the period.
    const std::size_t n = quota.size();
    std::vector<std::uint64_t> emitted(n, 0);
    schedule_.reserve(period);
    for (std::size_t t = 0; t < period; ++t) {
        std::size_t pick = n;
        std::int64_t best = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (quota[s] == 0) continue;
            const auto deficit =
                static_cast<std::int64_t>(quota[s] * (t + 1)) -
                static_cast<std::int64_t>(emitted[s] * period);
            if (pick == n || deficit > best) {
                pick = s;
                best = deficit;
            }
        }
        if (pick == n) {
            throw std::logic_error("PseudoSource: schedule underflow");
        }
        ++emitted[pick];
        schedule_.push_back(static_cast<Sample>(pick));
    }
}

Sample PseudoSource::next() {
    const Sample v = schedule_[pos_];
    pos_ = (pos_ + 1) % schedule_.size();
    return v;
}

// ---------------- correlated pairs ----------------

namespace {

// All 7-bit error patterns of weight at most t, ascending, shared by every
// bitflip draw.
std::vector<std::uint8_t> flip_patterns(unsigned t) {
    std::vector<std::uint8_t> out;
    for (unsigned e = 0; e < 128; ++e) {
        if (static_cast<unsigned>(std::popcount(e)) <= t) {
            out.push_back(static_cast<std::uint8_t>(e));
        }
    }
    return out;
}

}  // namespace

CorrelatedPair next_pair(const CorrelationModel& model, Sample x, SplitMix64& rng) {
    switch (model.kind) {
        case CorrelationModel::Kind::bitflip: {
            if (model.param > 7) {
                throw std::invalid_argument("bitflip: at most 7 positions exist");
            }
            const auto patterns = flip_patterns(model.param);
            const auto e = patterns[rng.next_below(patterns.size())];
            const auto x7 = static_cast<Sample>(x & 0x7F);
            return {x7, static_cast<Sample>(x7 ^ e)};
        }
        case CorrelationModel::Kind::same_bin: {
            if (model.param < 2 || model.param > 256 || !std::has_single_bit(model.param)) {
                throw std::invalid_argument("same-bin: width must be a power of two in 2..256");
            }
            const auto base = static_cast<unsigned>(x / model.param) * model.param;
            return {x, static_cast<Sample>(base + rng.next_below(model.param))};
        }
        case CorrelationModel::Kind::additive_delta: {
            if (model.param > 255) {
                throw std::invalid_argument("additive-delta: bound exceeds sample range");
            }
            const auto span = 2ull * model.param + 1;
            const auto delta =
                static_cast<int>(rng.next_below(span)) - static_cast<int>(model.param);
            const int y = std::clamp(static_cast<int>(x) + delta, 0, 255);
            return {x, static_cast<Sample>(y)};
        }
    }
    throw std::logic_error("next_pair: unknown correlation kind");
}

PairSource::PairSource(std::function<Sample()> base,
                       std::optional<CorrelationModel> model, std::uint64_t seed)
    : base_(std::move(base)), model_(model), rng_(seed) {
    if (!base_) {
        throw std::invalid_argument("PairSource: missing base source");
    }
}

CorrelatedPair PairSource::next() {
    const Sample x = base_();
    if (!model_.has_value()) {
        return {x, x};
    }
    return next_pair(*model_, x, rng_);
}

}  // namespace wsncodec
