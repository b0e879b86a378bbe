#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wsncodec {

// Number of bits needed to write v in binary.  By convention the value 0
// still occupies one bit, so a zero sample on the wire is one bit long.
[[nodiscard]] int bit_length(std::uint64_t v) noexcept;

// An ordered sequence of bits with an explicit length.  Bits are kept in
// transmission order; rendering and integer conversion are MSB-first, so
// BitString::from_string("010011").to_uint() == 19.  Plain value type:
// copies are independent and const instances are safe to share.
class BitString {
public:
    BitString() = default;

    // Parse a textual bit pattern; anything but '0'/'1' is rejected.
    static BitString from_string(std::string_view text);

    // The width lowest bits of value, MSB first.  Requires the value to fit.
    static BitString from_uint(std::uint64_t value, std::size_t width);

    void push_back(bool bit) { bits_.push_back(bit); }
    void extend(const BitString& other);

    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }
    [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i]; }
    [[nodiscard]] bool operator==(const BitString& other) const = default;

    [[nodiscard]] std::string to_string() const;

    // MSB-first integer value of the whole string; at most 64 bits.
    [[nodiscard]] std::uint64_t to_uint() const;

    // First n bits and the remainder, in that order.
    [[nodiscard]] std::pair<BitString, BitString> take_prefix(std::size_t n) const;

    [[nodiscard]] bool is_prefix_of(const BitString& other) const;

    // Total order by (length, lexicographic) used for canonical codeword
    // listings: shorter words first, '0' before '1' within a length class.
    [[nodiscard]] static bool canonical_less(const BitString& a, const BitString& b);

private:
    std::vector<bool> bits_;
};

// Concatenation of two bit strings: all of a followed by all of b.
[[nodiscard]] BitString operator+(const BitString& a, const BitString& b);

}  // namespace wsncodec
