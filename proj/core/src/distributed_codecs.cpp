#include "wsncodec/distributed_codecs.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "wsncodec/errors.hpp"

namespace wsncodec {

// ---------------- modulo binning ----------------

namespace {

void require_modulo(const ModuloParams& params) {
    if (params.n < 2 || params.n > 256 || !std::has_single_bit(params.n)) {
        throw std::invalid_argument("modulo: N must be a power of two in 2..256");
    }
}

}  // namespace

unsigned modulo_residue_bits(const ModuloParams& params) {
    require_modulo(params);
    return static_cast<unsigned>(std::bit_width(params.n) - 1);
}

std::uint8_t modulo_encode(Sample v, const ModuloParams& params, CostMeter* meter) {
    require_modulo(params);
    charge(meter);  // one mask
    return static_cast<std::uint8_t>(v % params.n);
}

Sample modulo_joint_decode(Sample reference, std::uint8_t residue,
                           const ModuloParams& params, CostMeter* meter) {
    require_modulo(params);
    if (residue >= params.n) {
        throw DecodeError("modulo: residue out of range");
    }
    charge(meter);  // one bin placement
    return static_cast<Sample>((reference / params.n) * params.n + residue);
}

// ---------------- integer Haar pair ----------------

HaarPair haar_encode_pair(Sample a, Sample b, CostMeter* meter) {
    charge(meter, 2);  // one sum, one difference
    return {static_cast<int>(a) + static_cast<int>(b),
            static_cast<int>(a) - static_cast<int>(b)};
}

std::pair<Sample, Sample> haar_decode_pair(const HaarPair& pair, CostMeter* meter) {
    charge(meter, 2);
    if (pair.sum < 0 || pair.sum > 510 || pair.diff < -255 || pair.diff > 255 ||
        ((pair.sum + pair.diff) & 1) != 0) {
        throw DecodeError("haar: sum/difference pair is corrupt");
    }
    const int a = (pair.sum + pair.diff) / 2;
    const int b = (pair.sum - pair.diff) / 2;
    if (a < 0 || a > 255 || b < 0 || b > 255) {
        throw DecodeError("haar: reconstruction left 0..255");
    }
    return {static_cast<Sample>(a), static_cast<Sample>(b)};
}

// ---------------- Hamming distance ----------------

std::size_t hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hamming_distance: length mismatch");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) ++d;
    }
    return d;
}

unsigned hamming_distance7(std::uint8_t a, std::uint8_t b) noexcept {
    return static_cast<unsigned>(std::popcount(static_cast<unsigned>((a ^ b) & 0x7F)));
}

// ---------------- DISCUS ----------------

namespace {

constexpr std::uint8_t parity(std::uint8_t word) {
    return static_cast<std::uint8_t>(std::popcount(static_cast<unsigned>(word)) & 1);
}

// Basis of the null space of two independent 7-bit rows, derived by Gaussian
// elimination: pivot columns are expressed in terms of the free ones, and
// each free column contributes one basis row (ascending column order).
std::array<std::uint8_t, 5> null_space_basis(std::uint8_t r0, std::uint8_t r1) {
    std::array<std::uint8_t, 2> rows{r0, r1};
    std::array<int, 2> pivot{-1, -1};
    int rank = 0;
    for (int col = 0; col < 7 && rank < 2; ++col) {
        const std::uint8_t mask = static_cast<std::uint8_t>(1u << (6 - col));
        int hit = -1;
        for (int r = rank; r < 2; ++r) {
            if (rows[static_cast<std::size_t>(r)] & mask) {
                hit = r;
                break;
            }
        }
        if (hit < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(hit)]);
        for (int r = 0; r < 2; ++r) {
            if (r != rank && (rows[static_cast<std::size_t>(r)] & mask)) {
                rows[static_cast<std::size_t>(r)] ^=
                    rows[static_cast<std::size_t>(rank)];
            }
        }
        pivot[static_cast<std::size_t>(rank)] = col;
        ++rank;
    }
    if (rank != 2) {
        throw std::logic_error("discus: generator rows are dependent");
    }

    std::array<std::uint8_t, 5> basis{};
    std::size_t out = 0;
    for (int col = 0; col < 7; ++col) {
        if (col == pivot[0] || col == pivot[1]) continue;
        std::uint8_t v = static_cast<std::uint8_t>(1u << (6 - col));
        // A pivot position is set whenever its reduced row has a 1 in this
        // free column, which keeps v orthogonal to both rows.
        for (int r = 0; r < 2; ++r) {
            if (rows[static_cast<std::size_t>(r)] & (1u << (6 - col))) {
                v |= static_cast<std::uint8_t>(
                    1u << (6 - pivot[static_cast<std::size_t>(r)]));
            }
        }
        basis[out++] = v;
    }
    return basis;
}

std::uint8_t syndrome_of(const std::array<std::uint8_t, 5>& rows, std::uint8_t word) {
    std::uint8_t s = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s = static_cast<std::uint8_t>((s << 1) | parity(rows[i] & word & 0x7F));
    }
    return s;
}

}  // namespace

DiscusCode::DiscusCode() {
    // G = [I4 | P] with parity columns 110, 101, 011, 111.
    g_ = {0b1000110, 0b0100101, 0b0010011, 0b0001111};
    h1_ = null_space_basis(g_[0], g_[1]);
    h2_ = null_space_basis(g_[2], g_[3]);
    for (std::uint8_t w = 0; w < 128; ++w) {
        coset1_[syndrome_of(h1_, w)].push_back(w);
        coset2_[syndrome_of(h2_, w)].push_back(w);
    }
    for (std::size_t s = 0; s < 32; ++s) {
        if (coset1_[s].size() != 4 || coset2_[s].size() != 4) {
            throw std::logic_error("discus: bad coset partition");
        }
    }
}

std::uint8_t DiscusCode::syndrome1(std::uint8_t word, CostMeter* meter) const {
    if (word > 0x7F) throw std::invalid_argument("discus: word exceeds 7 bits");
    charge(meter, syndrome_bits);  // one GF(2) row product per parity row
    return syndrome_of(h1_, word);
}

std::uint8_t DiscusCode::syndrome2(std::uint8_t word, CostMeter* meter) const {
    if (word > 0x7F) throw std::invalid_argument("discus: word exceeds 7 bits");
    charge(meter, syndrome_bits);
    return syndrome_of(h2_, word);
}

const std::vector<std::uint8_t>& DiscusCode::coset1(std::uint8_t syndrome) const {
    if (syndrome >= 32) throw std::invalid_argument("discus: syndrome out of range");
    return coset1_[syndrome];
}

const std::vector<std::uint8_t>& DiscusCode::coset2(std::uint8_t syndrome) const {
    if (syndrome >= 32) throw std::invalid_argument("discus: syndrome out of range");
    return coset2_[syndrome];
}

DiscusCode::JointResult DiscusCode::joint_decode(std::uint8_t s1, std::uint8_t s2,
                                                 CostMeter* meter) const {
    const auto& xs = coset1(s1);
    const auto& ys = coset2(s2);
    JointResult best{0, 0, 8, false};
    for (std::uint8_t x : xs) {
        for (std::uint8_t y : ys) {
            charge(meter);  // one pair distance
            const unsigned d = hamming_distance7(x, y);
            // Members are enumerated in ascending order, so a strict test
            // leaves ties on the lexicographically smallest pair.
            if (d < best.distance) {
                best = {x, y, d, false};
            }
        }
    }
    best.ambiguous = best.distance > 1;
    return best;
}

std::string DiscusCode::matrix_dump() const {
    auto row = [](std::uint8_t bits) {
        std::string s(7, '0');
        for (int i = 0; i < 7; ++i) {
            if (bits & (1u << (6 - i))) s[static_cast<std::size_t>(i)] = '1';
        }
        return s;
    };
    std::ostringstream out;
    for (auto r : g_) out << "G  " << row(r) << '\n';
    for (auto r : h1_) out << "H1 " << row(r) << '\n';
    for (auto r : h2_) out << "H2 " << row(r) << '\n';
    return out.str();
}

}  // namespace wsncodec
