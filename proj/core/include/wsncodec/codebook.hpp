#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wsncodec/bitstring.hpp"

namespace wsncodec {

using Sample = std::uint8_t;

// Normalized symbol probabilities for an alphabet 0..N-1 (N = 256 for the
// 8-bit sample domain).  Built from raw occurrence counts; the counts are
// kept so schedule generation can reproduce them exactly.
class FrequencyTable {
public:
    static FrequencyTable from_counts(std::vector<std::uint64_t> counts);
    static FrequencyTable from_probabilities(const std::vector<double>& probs);
    static FrequencyTable uniform(std::size_t symbol_count);

    // CSV rows "symbol,count" over the 8-bit domain; symbols absent from the
    // file get count zero.  Duplicate symbols and out-of-range rows are
    // reported with their line number.
    static FrequencyTable load_csv(const std::filesystem::path& path);
    void save_csv(const std::filesystem::path& path) const;

    [[nodiscard]] std::size_t symbol_count() const noexcept { return probs_.size(); }
    [[nodiscard]] double probability(std::size_t symbol) const;
    [[nodiscard]] bool has_counts() const noexcept { return !counts_.empty(); }
    [[nodiscard]] const std::vector<std::uint64_t>& counts() const { return counts_; }

private:
    std::vector<double> probs_;
    std::vector<std::uint64_t> counts_;  // empty when built from probabilities
};

// Codeword for the positive integer n in the Fibonacci (Zeckendorf) code:
// digits over the weights 1, 2, 3, 5, 8, ... written least-weight first,
// closed by an extra '1'.  Every codeword therefore ends in "11" and never
// contains "11" anywhere earlier.  n = 0 is rejected.
[[nodiscard]] BitString fibonacci_codeword(std::uint64_t n);

// One augmentation step of a T-code set: every codeword gains a copy
// prefixed by `prefix`, and `prefix` itself is retired.  The result has
// exactly 2*|set|-1 codewords and is returned in canonical order (shorter
// first, then lexicographic).  `prefix` must be a member of `set`.
[[nodiscard]] std::vector<BitString> t_augment(const std::vector<BitString>& set,
                                               const BitString& prefix);

// The base T-code set {1, 00, 01} every augmentation chain starts from.
[[nodiscard]] std::vector<BitString> t_code_base();

// Prefix-free symbol -> codeword table.  Shorter codewords always sit on
// the more probable symbols; equal probabilities are broken toward the
// smaller symbol value, so a uniform table yields the identity ranking.
class Codebook {
public:
    enum class Kind { fibonacci, tcode };

    Codebook(Kind kind, std::vector<BitString> codewords_by_symbol);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }
    [[nodiscard]] const BitString& codeword(std::size_t symbol) const;
    [[nodiscard]] std::size_t max_codeword_length() const noexcept { return max_len_; }

    // Expected codeword length sum(l_i * p_i) against a table of the same
    // alphabet size.
    [[nodiscard]] double average_length(const FrequencyTable& freqs) const;

    // CSV rows "symbol,codeword,length".
    void save_csv(const std::filesystem::path& path) const;

    // Codewords keyed by (length, MSB-first value) in ascending order, for
    // binary-search decoding.
    struct IndexEntry {
        std::uint32_t length;
        std::uint64_t value;
        std::uint32_t symbol;
    };
    [[nodiscard]] const std::vector<IndexEntry>& decode_index() const noexcept {
        return index_;
    }

private:
    Kind kind_;
    std::vector<BitString> words_;
    std::vector<IndexEntry> index_;
    std::size_t max_len_ = 0;
};

// Fibonacci codebook: the symbol with probability rank r (0-based) receives
// fibonacci_codeword(r + 1).
[[nodiscard]] Codebook build_fibonacci_codebook(const FrequencyTable& freqs);

// T-code codebook: augment from {1, 00, 01}, always expanding by the
// shortest codeword (ties toward the lexicographically smaller one), until
// enough codewords exist, then hand them out shortest-first by probability
// rank.  A nonzero max_codeword_bits keeps augmenting until N codewords of
// at most that many bits exist and assigns only those; packets carry
// codewords in a 16-bit field, so the network layer builds with cap 16.
[[nodiscard]] Codebook build_tcode_codebook(const FrequencyTable& freqs,
                                            std::size_t max_codeword_bits = 0);

}  // namespace wsncodec
