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

#include "qqmark/bell.h"

#include <cmath>

#include "qqmark/errors.h"

using namespace qqmark;

char qqmark::basis_name(Basis b) {
    return b == Basis::X ? 'X' : 'Z';
}

std::string BellLabel::str() const {
    return {static_cast<char>('0' + x()), static_cast<char>('0' + z())};
}

BellLabel BellLabel::parse(std::string_view text) {
    if (text.size() != 2) {
        throw ParseError("expected two bits for a Bell label, got '" + std::string(text) + "'", 0);
    }
    for (size_t k = 0; k < 2; k++) {
        if (text[k] != '0' && text[k] != '1') {
            throw ParseError("expected '0' or '1' in Bell label '" + std::string(text) + "'", k);
        }
    }
    return BellLabel(text[0] - '0', text[1] - '0');
}

std::string QuquadLabel::str() const {
    return first.str() + "." + second.str();
}

QuquadLabel QuquadLabel::parse(std::string_view text) {
    if (text.size() != 5 || text[2] != '.') {
        throw ParseError("expected a label of the form xz.xz, got '" + std::string(text) + "'", 0);
    }
    BellLabel a = BellLabel::parse(text.substr(0, 2));
    BellLabel b;
    try {
        b = BellLabel::parse(text.substr(3, 2));
    } catch (const ParseError &e) {
        throw ParseError("expected '0' or '1' in '" + std::string(text) + "'", e.position + 3);
    }
    return {a, b};
}

std::string ParityClass::str() const {
    return "S" + std::to_string(X) + std::to_string(Z);
}

Sign qqmark::stabilizer_sign(BellLabel l, Basis basis) {
    return l.bit(basis) ? Sign::Minus : Sign::Plus;
}

unsigned qqmark::lpm_bit(BellLabel l, Basis basis) {
    return l.bit(basis);
}

LpmOutcome qqmark::sample_lpm(BellLabel l, Basis basis, Rng &rng) {
    Sign alice = (rng() & 1) ? Sign::Minus : Sign::Plus;
    return {alice, alice * stabilizer_sign(l, basis)};
}

BellLabel qqmark::swap_observation(BellLabel l1, BellLabel l2) {
    return l1 ^ l2;
}

SwapOutcome qqmark::sample_swap(BellLabel l1, BellLabel l2, Rng &rng) {
    BellLabel alice = BellLabel::from_code(rng() & 3);
    return {alice, alice ^ swap_observation(l1, l2)};
}

namespace {

// <a b | l> for qubits a (Alice) and b (Bob).
double bell_amplitude(BellLabel l, unsigned a, unsigned b) {
    if ((a ^ b) != l.z()) {
        return 0.0;
    }
    return ((l.x() & a) ? -1.0 : 1.0) / std::sqrt(2.0);
}

}  // namespace

std::map<std::pair<BellLabel, BellLabel>, double> qqmark::oracle_swap_distribution(BellLabel l1, BellLabel l2) {
    // psi[a1][b1][a2][b2] for |l1>_{A1 B1} |l2>_{A2 B2}.
    double psi[2][2][2][2];
    for (unsigned a1 = 0; a1 < 2; a1++) {
        for (unsigned b1 = 0; b1 < 2; b1++) {
            for (unsigned a2 = 0; a2 < 2; a2++) {
                for (unsigned b2 = 0; b2 < 2; b2++) {
                    psi[a1][b1][a2][b2] = bell_amplitude(l1, a1, b1) * bell_amplitude(l2, a2, b2);
                }
            }
        }
    }

    const BellLabel basis_order[4] = {BellLabel(0, 0), BellLabel(1, 0), BellLabel(0, 1), BellLabel(1, 1)};
    std::map<std::pair<BellLabel, BellLabel>, double> result;
    for (BellLabel m : basis_order) {
        for (BellLabel n : basis_order) {
            double amp = 0;
            for (unsigned a1 = 0; a1 < 2; a1++) {
                for (unsigned b1 = 0; b1 < 2; b1++) {
                    for (unsigned a2 = 0; a2 < 2; a2++) {
                        for (unsigned b2 = 0; b2 < 2; b2++) {
                            amp += bell_amplitude(m, a1, a2) * bell_amplitude(n, b1, b2) * psi[a1][b1][a2][b2];
                        }
                    }
                }
            }
            result[{m, n}] = amp * amp;
        }
    }
    return result;
}

ParityClass qqmark::parity_class(QuquadLabel q) {
    BellLabel p = q.first ^ q.second;
    return {p.x(), p.z()};
}

bool qqmark::in_D(BellLabel a, BellLabel b) {
    return a.x() != b.x() && a.z() != b.z();
}

Distinguisher qqmark::distinguishing_basis(BellLabel a, BellLabel b) {
    bool dx = a.x() != b.x();
    bool dz = a.z() != b.z();
    if (dx && dz) {
        return Distinguisher::Either;
    }
    if (dx) {
        return Distinguisher::X;
    }
    if (dz) {
        return Distinguisher::Z;
    }
    return Distinguisher::None;
}

std::optional<Basis> qqmark::separating_basis(BellLabel a, BellLabel b) {
    switch (distinguishing_basis(a, b)) {
        case Distinguisher::X:
        case Distinguisher::Either:
            return Basis::X;
        case Distinguisher::Z:
            return Basis::Z;
        default:
            return std::nullopt;
    }
}
