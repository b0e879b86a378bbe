#pragma once

#include <cstdint>

namespace wsncodec {

// Counts abstract unit operations (table probes, comparisons, GF(2) row
// operations) so codec costs can be compared without a hardware clock.
// The simulator charges one microsecond per unit by default.  Codec calls
// accept an optional meter; pass nullptr when the cost is not of interest.
class CostMeter {
public:
    void add(std::uint32_t n = 1) noexcept { ops_ += n; }
    void reset() noexcept { ops_ = 0; }
    [[nodiscard]] std::uint32_t ops() const noexcept { return ops_; }

private:
    std::uint32_t ops_ = 0;
};

inline void charge(CostMeter* meter, std::uint32_t n = 1) noexcept {
    if (meter != nullptr) meter->add(n);
}

}  // namespace wsncodec
