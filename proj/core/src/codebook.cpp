#include "wsncodec/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wsncodec/errors.hpp"

namespace wsncodec {

// ---------------- FrequencyTable ----------------

FrequencyTable FrequencyTable::from_counts(std::vector<std::uint64_t> counts) {
    if (counts.empty()) {
        throw std::invalid_argument("FrequencyTable: empty count vector");
    }
    const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total == 0) {
        throw std::invalid_argument("FrequencyTable: all counts are zero");
    }
    FrequencyTable t;
    t.probs_.reserve(counts.size());
    for (auto c : counts) {
        t.probs_.push_back(static_cast<double>(c) / static_cast<double>(total));
    }
    t.counts_ = std::move(counts);
    return t;
}

FrequencyTable FrequencyTable::from_probabilities(const std::vector<double>& probs) {
    if (probs.empty()) {
        throw std::invalid_argument("FrequencyTable: empty probability vector");
    }
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("FrequencyTable: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("FrequencyTable: probabilities sum to " +
                                    std::to_string(total) + ", expected 1");
    }
    FrequencyTable t;
    t.probs_ = probs;
    return t;
}

FrequencyTable FrequencyTable::uniform(std::size_t symbol_count) {
    if (symbol_count == 0) {
        throw std::invalid_argument("FrequencyTable: empty alphabet");
    }
    std::vector<std::uint64_t> counts(symbol_count, 1);
    return from_counts(std::move(counts));
}

FrequencyTable FrequencyTable::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open histogram file: " + path.string());
    }
    std::vector<std::uint64_t> counts(256, 0);
    std::vector<bool> seen(256, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        long long symbol = -1;
        long long count = -1;
        char comma = 0;
        if (!(row >> symbol >> comma >> count) || comma != ',') {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected \"symbol,count\"");
        }
        if (symbol < 0 || symbol > 255) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": symbol out of 0..255 range");
        }
        if (count < 0) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": negative count");
        }
        if (seen[static_cast<std::size_t>(symbol)]) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": duplicate symbol " + std::to_string(symbol));
        }
        seen[static_cast<std::size_t>(symbol)] = true;
        counts[static_cast<std::size_t>(symbol)] = static_cast<std::uint64_t>(count);
    }
    try {
        return from_counts(std::move(counts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void FrequencyTable::save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write histogram file: " + path.string());
    }
    for (std::size_t s = 0; s < probs_.size(); ++s) {
        const std::uint64_t c = counts_.empty() ? 0 : counts_[s];
        if (counts_.empty() || c > 0) {
            out << s << ',' << c << '\n';
        }
    }
}

double FrequencyTable::probability(std::size_t symbol) const {
    if (symbol >= probs_.size()) {
        throw std::out_of_range("FrequencyTable: symbol outside alphabet");
    }
    return probs_[symbol];
}

// ---------------- Fibonacci codewords ----------------

BitString fibonacci_codeword(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("fibonacci_codeword: n must be positive");
    }
    // Weights 1, 2, 3, 5, 8, ... up to the largest one not above n.
    std::vector<std::uint64_t> weights{1, 2};
    while (weights.back() <= n) {
        const auto k = weights.size();
        weights.push_back(weights[k - 1] + weights[k - 2]);
    }
    std::vector<bool> digits(weights.size(), false);
    std::size_t top = 0;
    std::uint64_t rest = n;
    for (std::size_t i = weights.size(); i-- > 0;) {
        if (weights[i] <= rest) {
            digits[i] = true;
            if (top == 0) top = i + 1;
            rest -= weights[i];
        }
    }
    // Digits go out least-weight first, then the closing '1'.
    BitString out;
    for (std::size_t i = 0; i < top; ++i) out.push_back(digits[i]);
    out.push_back(true);
    return out;
}

// ---------------- T-code sets ----------------

std::vector<BitString> t_code_base() {
    return {BitString::from_string("1"), BitString::from_string("00"),
            BitString::from_string("01")};
}

std::vector<BitString> t_augment(const std::vector<BitString>& set,
                                 const BitString& prefix) {
    if (std::find(set.begin(), set.end(), prefix) == set.end()) {
        throw std::invalid_argument("t_augment: prefix is not in the set");
    }
    std::vector<BitString> out;
    out.reserve(set.size() * 2 - 1);
    for (const auto& w : set) {
        out.push_back(prefix + w);
    }
    for (const auto& w : set) {
        if (!(w == prefix)) out.push_back(w);
    }
    std::sort(out.begin(), out.end(), BitString::canonical_less);
    return out;
}

// ---------------- Codebook ----------------

Codebook::Codebook(Kind kind, std::vector<BitString> codewords_by_symbol)
    : kind_(kind), words_(std::move(codewords_by_symbol)) {
    if (words_.empty()) {
        throw std::invalid_argument("Codebook: no codewords");
    }
    index_.reserve(words_.size());
    for (std::size_t s = 0; s < words_.size(); ++s) {
        const auto& w = words_[s];
        if (w.empty()) throw std::invalid_argument("Codebook: empty codeword");
        if (w.size() > 64) throw std::invalid_argument("Codebook: codeword over 64 bits");
        max_len_ = std::max(max_len_, w.size());
        index_.push_back({static_cast<std::uint32_t>(w.size()), w.to_uint(),
                          static_cast<std::uint32_t>(s)});
    }
    std::sort(index_.begin(), index_.end(), [](const IndexEntry& a, const IndexEntry& b) {
        return std::pair{a.length, a.value} < std::pair{b.length, b.value};
    });
}

const BitString& Codebook::codeword(std::size_t symbol) const {
    if (symbol >= words_.size()) {
        throw std::out_of_range("Codebook: symbol outside alphabet");
    }
    return words_[symbol];
}

double Codebook::average_length(const FrequencyTable& freqs) const {
    if (freqs.symbol_count() != words_.size()) {
        throw std::invalid_argument("Codebook: frequency table size mismatch");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s < words_.size(); ++s) {
        sum += static_cast<double>(words_[s].size()) * freqs.probability(s);
    }
    return sum;
}

void Codebook::save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write codebook file: " + path.string());
    }
    for (std::size_t s = 0; s < words_.size(); ++s) {
        out << s << ',' << words_[s].to_string() << ',' << words_[s].size() << '\n';
    }
}

namespace {

// Symbols ordered by descending probability; equal probabilities keep the
// smaller symbol value first so the ranking is total and reproducible.
std::vector<std::size_t> probability_ranking(const FrequencyTable& freqs) {
    std::vector<std::size_t> order(freqs.symbol_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return freqs.probability(a) > freqs.probability(b);
    });
    return order;
}

std::vector<BitString> assign_by_rank(const FrequencyTable& freqs,
                                      const std::vector<BitString>& sorted_words) {
    const auto order = probability_ranking(freqs);
    std::vector<BitString> by_symbol(order.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        by_symbol[order[rank]] = sorted_words[rank];
    }
    return by_symbol;
}

}  // namespace

Codebook build_fibonacci_codebook(const FrequencyTable& freqs) {
    std::vector<BitString> words;
    words.reserve(freqs.symbol_count());
    for (std::size_t rank = 0; rank < freqs.symbol_count(); ++rank) {
        words.push_back(fibonacci_codeword(rank + 1));
    }
    return Codebook(Codebook::Kind::fibonacci, assign_by_rank(freqs, words));
}

Codebook build_tcode_codebook(const FrequencyTable& freqs, std::size_t max_codeword_bits) {
    const std::size_t n = freqs.symbol_count();
    auto fits = [&](const BitString& w) {
        return max_codeword_bits == 0 || w.size() <= max_codeword_bits;
    };

    std::vector<BitString> set = t_code_base();
    auto usable = [&] {
        return static_cast<std::size_t>(
            std::count_if(set.begin(), set.end(), fits));
    };
    // Augmenting by a short prefix can only lengthen words, so when a cap is
    // active the pool of short-enough codewords may stall; bail out instead
    // of spinning.
    std::size_t stalled = 0;
    while (usable() < n) {
        // The set is kept canonically sorted, so the first element is the
        // shortest codeword with the lexicographically smallest tie-break.
        const std::size_t before = usable();
        set = t_augment(set, set.front());
        if (usable() == before) {
            if (++stalled > 4) {
                throw std::invalid_argument(
                    "build_tcode_codebook: cannot reach " + std::to_string(n) +
                    " codewords of at most " + std::to_string(max_codeword_bits) +
                    " bits");
            }
        } else {
            stalled = 0;
        }
    }

    std::vector<BitString> words;
    words.reserve(n);
    for (const auto& w : set) {
        if (words.size() == n) break;
        if (fits(w)) words.push_back(w);
    }
    return Codebook(Codebook::Kind::tcode, assign_by_rank(freqs, words));
}

}  // namespace wsncodec
