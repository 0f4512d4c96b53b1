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

#include "qqmark/catalog.h"

#include <sstream>

#include "qqmark/errors.h"

using namespace qqmark;

Pattern Pattern::parse(std::string name, const std::string &text) {
    Pattern p{std::move(name), {}};
    std::stringstream in(text);
    std::string cell;
    while (in >> cell) {
        if (cell.size() != 2 || cell[0] < 'a' || cell[0] > 'd' || cell[1] < 'A' || cell[1] > 'D') {
            throw ArgumentError("bad pattern cell '" + cell + "'");
        }
        p.cells.emplace_back(cell[0] - 'a', cell[1] - 'A');
    }
    return p;
}

std::string Pattern::str() const {
    static const char *greek[4] = {"α", "β", "γ", "δ"};
    std::string out;
    for (size_t k = 0; k < cells.size(); k++) {
        if (k) {
            out += ",";
        }
        out += static_cast<char>('a' + cells[k].first);
        out += greek[cells[k].second];
    }
    return out;
}

int PatternMatch::target(int f, int s) const {
    for (size_t k = 0; k < pattern->cells.size(); k++) {
        if (pattern->cells[k] == std::make_pair(f, s)) {
            return target_of_cell[k];
        }
    }
    return -1;
}

namespace {

QuquadLabel cell_label(std::pair<int, int> cell, const std::array<BellLabel, 4> &first,
                       const std::array<BellLabel, 4> &second, bool slot_swapped) {
    QuquadLabel q{first[cell.first], second[cell.second]};
    if (slot_swapped) {
        std::swap(q.first, q.second);
    }
    return q;
}

// Calls f for every injective assignment of labels to the used letters, in
// increasing lexicographic order of (label of letter 0, label of letter 1, ...).
// Unused letters receive the leftover labels in increasing order.
template <typename F>
void for_each_assignment(unsigned used_letters, F &&f) {
    std::array<BellLabel, 4> labels{};
    auto rec = [&](auto &&self, int letter, unsigned taken) -> bool {
        if (letter == 4) {
            std::array<BellLabel, 4> full = labels;
            unsigned left = ~taken & 15u;
            for (int l = 0; l < 4; l++) {
                if (!(used_letters >> l & 1)) {
                    int code = std::countr_zero(left);
                    left &= left - 1;
                    full[l] = BellLabel::from_code(code);
                }
            }
            return f(full);
        }
        if (!(used_letters >> letter & 1)) {
            return self(self, letter + 1, taken);
        }
        for (unsigned c = 0; c < 4; c++) {
            if (taken >> c & 1) {
                continue;
            }
            labels[letter] = BellLabel::from_code(c);
            if (!self(self, letter + 1, taken | 1u << c)) {
                return false;
            }
        }
        return true;
    };
    rec(rec, 0, 0);
}

std::vector<PatternMatch> find_matches(const TargetSet &ts, const Pattern &p, bool stop_at_first) {
    std::vector<PatternMatch> out;
    if (ts.size() != p.size()) {
        return out;
    }
    unsigned used1 = 0;
    unsigned used2 = 0;
    for (auto [f, s] : p.cells) {
        used1 |= 1u << f;
        used2 |= 1u << s;
    }
    uint16_t want = ts.mask();
    for (bool swapped : {false, true}) {
        for_each_assignment(used1, [&](const std::array<BellLabel, 4> &first) {
            for_each_assignment(used2, [&](const std::array<BellLabel, 4> &second) {
                uint16_t got = 0;
                for (auto cell : p.cells) {
                    got |= static_cast<uint16_t>(1u << cell_label(cell, first, second, swapped).code());
                }
                if (got == want) {
                    PatternMatch m{&p, swapped, first, second, {}};
                    for (auto cell : p.cells) {
                        m.target_of_cell.push_back(ts.index_of(cell_label(cell, first, second, swapped)));
                    }
                    out.push_back(std::move(m));
                }
                return !(stop_at_first && !out.empty());
            });
            return !(stop_at_first && !out.empty());
        });
        if (stop_at_first && !out.empty()) {
            break;
        }
    }
    return out;
}

std::vector<Pattern> make_patterns(const std::vector<std::pair<const char *, const char *>> &specs) {
    std::vector<Pattern> out;
    for (auto [name, text] : specs) {
        out.push_back(Pattern::parse(name, text));
    }
    return out;
}

}  // namespace

TargetSet qqmark::instantiate(const Pattern &p, const std::array<BellLabel, 4> &first,
                              const std::array<BellLabel, 4> &second, bool slot_swapped) {
    std::vector<QuquadLabel> labels;
    for (auto cell : p.cells) {
        labels.push_back(cell_label(cell, first, second, slot_swapped));
    }
    return TargetSet(std::move(labels));
}

std::optional<PatternMatch> qqmark::match_pattern(const TargetSet &ts, const Pattern &p) {
    auto found = find_matches(ts, p, true);
    if (found.empty()) {
        return std::nullopt;
    }
    return found.front();
}

std::vector<PatternMatch> qqmark::all_matches(const TargetSet &ts, const Pattern &p) {
    return find_matches(ts, p, false);
}

const std::vector<Pattern> &qqmark::four_state_patterns() {
    static const std::vector<Pattern> patterns = make_patterns({
        {"(2,2)", "aA aB bA bB"},
        {"(4,1)", "aA bA cA dA"},
        {"(4,4)", "aA bB cC dD"},
        {"(4,2;2+2)", "aA bA cB dB"},
        {"(4,2;1+3)", "aA bA cA dB"},
        {"(3,3) disjoint pairs", "aB aC bA cA"},
        {"(3,3) shared target", "aA aB bA cC"},
        {"(3,2;2+2)", "aA bA aB cB"},
        {"(3,2;1+3)", "aA bA cA aB"},
        {"(4,3)", "aA bB cC dC"},
    });
    return patterns;
}

const std::vector<Pattern> &qqmark::five_state_patterns() {
    static const std::vector<Pattern> patterns = make_patterns({
        {"(4,2;1+4)", "aA aB bB cB dB"},
        {"(4,2;2+3)", "aA aB bA cB dB"},
        {"(4,4;1+1+1+2)", "aA bB cC dD aB"},
        {"(4,3;1+1+3) separate pair", "aA aB bC cC dC"},
        {"(4,3;1+1+3) joined pair", "aA aC bB cC dC"},
        {"(4,3;1+2+2) mixed pair", "aA aC bB cA dB"},
        {"(4,3;1+2+2) doubled pair", "aA aB bC cA dB"},
        {"(3,3) star", "aA bA cA cB cC"},
        {"(3,3) triple first", "aA aB aC bA cB"},
        {"(3,3) square", "aA aB bA bB cC"},
        {"(3,3) chain", "aA aB bA bC cB"},
    });
    return patterns;
}

const std::vector<Pattern> &qqmark::six_state_patterns() {
    static const std::vector<Pattern> patterns = make_patterns({
        {"(3,2;3+3)", "aA bA cA aB bB cB"},
        {"(4,2;3+3)", "aA bA cA aB bB dB"},
    });
    return patterns;
}

const std::vector<Pattern> &qqmark::seven_state_patterns() {
    static const std::vector<Pattern> patterns = make_patterns({
        {"(4,2;3+4)", "aA bA cA aB bB cB dB"},
    });
    return patterns;
}

const Pattern &qqmark::pattern_named(const std::string &name) {
    for (const auto *group : {&four_state_patterns(), &five_state_patterns(), &six_state_patterns(),
                              &seven_state_patterns()}) {
        for (const auto &p : *group) {
            if (p.name == name) {
                return p;
            }
        }
    }
    throw ArgumentError("unknown pattern '" + name + "'");
}

std::string qqmark::expectation_name(Expectation e) {
    switch (e) {
        case Expectation::Markable:
            return "markable";
        case Expectation::Unmarkable:
            return "unmarkable";
        case Expectation::ConjecturedUnmarkable:
            return "unmarkable (conjectured)";
        default:
            return "uncatalogued";
    }
}

namespace {

std::string pair_condition(const char *letters, BellLabel u, BellLabel v, bool &outside_D) {
    outside_D = !in_D(u, v);
    return std::string("{") + letters[0] + "," + letters[1] + "}" + (outside_D ? " not in D" : " in D") + " (" +
           u.str() + "," + v.str() + ")";
}

std::optional<PatternMatch> first_match(const TargetSet &ts, const std::vector<Pattern> &patterns) {
    for (const auto &p : patterns) {
        if (auto m = match_pattern(ts, p)) {
            return m;
        }
    }
    return std::nullopt;
}

}  // namespace

CatalogEntry qqmark::catalog_lookup(const TargetSet &ts) {
    CatalogEntry e;
    switch (ts.size()) {
        case 4:
            e.match = first_match(ts, four_state_patterns());
            e.expectation = Expectation::Markable;
            e.condition = "every four-state set";
            break;
        case 5: {
            e.match = first_match(ts, five_state_patterns());
            if (!e.match) {
                break;
            }
            const std::string name = e.match->pattern->name;
            bool ok = true;
            if (name == "(4,3;1+2+2) doubled pair" || name == "(3,3) triple first" || name == "(3,3) chain") {
                // Shapes that read the same after a slot swap match more than once; the
                // condition holds if it holds for any reading.
                const char *letters = name == "(4,3;1+2+2) doubled pair" ? "ab" : "bc";
                int u = letters[0] - 'a', v = letters[1] - 'a';
                for (const auto &m : all_matches(ts, *e.match->pattern)) {
                    std::string c = pair_condition(letters, m.first[u], m.first[v], ok);
                    if (ok || e.condition.empty()) {
                        e.condition = c;
                        e.match = m;
                    }
                    if (ok) {
                        break;
                    }
                }
            } else if (name == "(4,3;1+1+3) separate pair" || name == "(4,3;1+1+3) joined pair" ||
                       name == "(3,3) star") {
                ok = false;
            }
            e.expectation = ok ? Expectation::Markable : Expectation::Unmarkable;
            break;
        }
        case 6:
            e.match = first_match(ts, six_state_patterns());
            if (e.match) {
                e.expectation = Expectation::Markable;
            }
            break;
        case 7:
            e.match = first_match(ts, seven_state_patterns());
            e.expectation = e.match ? Expectation::Unmarkable : Expectation::ConjecturedUnmarkable;
            if (!e.match) {
                e.condition = "every seven-state set";
            }
            break;
        default:
            break;
    }
    if (e.match) {
        e.case_name = e.match->pattern->name;
    }
    return e;
}
