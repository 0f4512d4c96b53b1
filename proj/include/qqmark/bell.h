// Copyright 2026 The qqmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef _QQMARK_BELL_H
#define _QQMARK_BELL_H

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>

namespace qqmark {

/// Seedable deterministic random source used by all sampling routines.
using Rng = std::mt19937_64;

enum class Basis : uint8_t { X = 0, Z = 1 };

enum class Sign : int8_t { Plus = 1, Minus = -1 };

inline Sign operator*(Sign a, Sign b) {
    return a == b ? Sign::Plus : Sign::Minus;
}

inline int sign_value(Sign s) {
    return static_cast<int>(s);
}

char basis_name(Basis b);

/// Label (x, z) of the Bell state stabilized by (-1)^x XX and (-1)^z ZZ.
///
/// Stored as the 2-bit code x*2 + z, so the numeric order of codes matches the
/// lexicographic order of the "xz" text form.
class BellLabel {
   public:
    constexpr BellLabel() = default;
    constexpr BellLabel(unsigned x, unsigned z) : code_(static_cast<uint8_t>(((x & 1u) << 1) | (z & 1u))) {
    }
    static constexpr BellLabel from_code(unsigned code) {
        return BellLabel((code >> 1) & 1u, code & 1u);
    }

    constexpr unsigned x() const {
        return code_ >> 1;
    }
    constexpr unsigned z() const {
        return code_ & 1u;
    }
    constexpr unsigned code() const {
        return code_;
    }
    constexpr unsigned bit(Basis b) const {
        return b == Basis::X ? x() : z();
    }
    constexpr BellLabel operator^(BellLabel other) const {
        return from_code(code_ ^ other.code_);
    }
    constexpr BellLabel xz_swapped() const {
        return BellLabel(z(), x());
    }
    constexpr bool operator==(const BellLabel &) const = default;
    constexpr auto operator<=>(const BellLabel &) const = default;

    /// Two characters "xz".
    std::string str() const;
    static BellLabel parse(std::string_view text);

    static constexpr std::array<BellLabel, 4> all() {
        return {from_code(0), from_code(1), from_code(2), from_code(3)};
    }

   private:
    uint8_t code_ = 0;
};

/// Label of one ququad-ququad target: the Bell labels of its two halves.
struct QuquadLabel {
    BellLabel first;
    BellLabel second;

    /// 4-bit code x1 z1 x2 z2 (most significant first); matches text order.
    constexpr unsigned code() const {
        return (first.code() << 2) | second.code();
    }
    static constexpr QuquadLabel from_code(unsigned code) {
        return {BellLabel::from_code((code >> 2) & 3u), BellLabel::from_code(code & 3u)};
    }
    constexpr BellLabel half(int slot) const {
        return slot == 1 ? first : second;
    }
    constexpr bool operator==(const QuquadLabel &) const = default;
    constexpr auto operator<=>(const QuquadLabel &) const = default;

    /// "xz.xz".
    std::string str() const;
    static QuquadLabel parse(std::string_view text);
};

/// The class S_XZ of a target: XOR of its two half labels.
struct ParityClass {
    unsigned X = 0;
    unsigned Z = 0;
    constexpr bool operator==(const ParityClass &) const = default;
    constexpr auto operator<=>(const ParityClass &) const = default;
    /// "S01" style.
    std::string str() const;
};

struct LpmOutcome {
    Sign alice;
    Sign bob;
};

struct SwapOutcome {
    BellLabel alice;
    BellLabel bob;
};

enum class Distinguisher : uint8_t { None, X, Z, Either };

Sign stabilizer_sign(BellLabel l, Basis basis);
unsigned lpm_bit(BellLabel l, Basis basis);
LpmOutcome sample_lpm(BellLabel l, Basis basis, Rng &rng);

/// XOR of the two labels, returned as a label-shaped pair (sx, sz).
BellLabel swap_observation(BellLabel l1, BellLabel l2);
SwapOutcome sample_swap(BellLabel l1, BellLabel l2, Rng &rng);

/// Exact outcome distribution of Bell measurements on (A1 A2) and (B1 B2) applied to
/// |l1>_{A1 B1} |l2>_{A2 B2}, computed from the 16 amplitudes. Contains all 16 pairs.
std::map<std::pair<BellLabel, BellLabel>, double> oracle_swap_distribution(BellLabel l1, BellLabel l2);

ParityClass parity_class(QuquadLabel q);
bool in_D(BellLabel a, BellLabel b);
Distinguisher distinguishing_basis(BellLabel a, BellLabel b);

/// Basis whose LPM separates a from b, preferring X. Empty when a == b.
std::optional<Basis> separating_basis(BellLabel a, BellLabel b);

}  // namespace qqmark

#endif
