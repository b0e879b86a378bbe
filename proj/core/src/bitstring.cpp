#include "wsncodec/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace wsncodec {

int bit_length(std::uint64_t v) noexcept {
    return v == 0 ? 1 : std::bit_width(v);
}

BitString BitString::from_string(std::string_view text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument(
                std::string("BitString: bad character '") + c + "' in bit pattern");
        }
        out.bits_.push_back(c == '1');
    }
    return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
    if (width > 64) {
        throw std::invalid_argument("BitString: width exceeds 64 bits");
    }
    if (width < 64 && (value >> width) != 0) {
        throw std::invalid_argument("BitString: value does not fit in requested width");
    }
    BitString out;
    out.bits_.reserve(width);
    for (std::size_t i = width; i-- > 0;) {
        out.bits_.push_back((value >> i) & 1u);
    }
    return out;
}

void BitString::extend(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

std::uint64_t BitString::to_uint() const {
    if (bits_.size() > 64) {
        throw std::invalid_argument("BitString: too long for integer conversion");
    }
    std::uint64_t v = 0;
    for (bool b : bits_) v = (v << 1) | (b ? 1u : 0u);
    return v;
}

std::pair<BitString, BitString> BitString::take_prefix(std::size_t n) const {
    if (n > bits_.size()) {
        throw std::out_of_range("BitString: prefix longer than stream");
    }
    BitString head, tail;
    head.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n));
    tail.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(n), bits_.end());
    return {std::move(head), std::move(tail)};
}

bool BitString::is_prefix_of(const BitString& other) const {
    if (bits_.size() > other.bits_.size()) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] != other.bits_[i]) return false;
    }
    return true;
}

bool BitString::canonical_less(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits_ < b.bits_;
}

BitString operator+(const BitString& a, const BitString& b) {
    BitString out = a;
    out.extend(b);
    return out;
}

}  // namespace wsncodec
