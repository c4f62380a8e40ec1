#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "easme/genome.hpp"

namespace easme {

// Bit i set <=> kAminoAcids[i] is in the set.
using ResidueMask = std::uint32_t;

ResidueMask residue_bit(char residue);

enum class ElementKind { Literal, ResidueSet, NegatedSet, Wildcard };

struct PatternElement {
    ElementKind kind = ElementKind::Wildcard;
    ResidueMask residues = 0;  // empty for wildcards
    std::size_t min_repeat = 1;
    std::size_t max_repeat = 1;

    bool accepts(char residue) const;
    bool mandatory() const { return min_repeat > 0; }

    friend bool operator==(const PatternElement&, const PatternElement&) = default;
};

// A PROSITE-style consensus pattern, e.g. "<M-x(0,2)-[KR]-{P}-C(2)>".
struct MotifPattern {
    std::vector<PatternElement> elements;
    bool anchored_start = false;
    bool anchored_end = false;
    std::string source_text;

    // Structural equality; source_text is not compared.
    friend bool operator==(const MotifPattern& a, const MotifPattern& b) {
        return a.elements == b.elements && a.anchored_start == b.anchored_start && a.anchored_end == b.anchored_end;
    }
};

class PatternError : public std::runtime_error {
public:
    PatternError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

MotifPattern parse_pattern(std::string_view text);

// Canonical text: sets print in alphabet order, repeat suffixes are omitted
// for (1,1) and collapsed to "(n)" when min == max.
std::string pattern_to_string(const MotifPattern& pattern);

using MatchSpan = std::pair<std::size_t, std::size_t>;  // [start, end)

// Leftmost-starting, shortest-per-start, non-overlapping matches.
std::vector<MatchSpan> scan(const MotifPattern& pattern, std::string_view residues);
inline std::vector<MatchSpan> scan(const MotifPattern& pattern, const Protein& protein) {
    return scan(pattern, std::string_view(protein.residues()));
}

// 1.0 on a full match; otherwise the best fraction of mandatory elements that
// can be matched by one placement of the pattern against the protein.
double best_match_score(const MotifPattern& pattern, std::string_view residues);
inline double best_match_score(const MotifPattern& pattern, const Protein& protein) {
    return best_match_score(pattern, std::string_view(protein.residues()));
}

} // namespace easme
