#include "easme/grammar.hpp"

#include <algorithm>
#include <cctype>

namespace easme {

namespace {

constexpr std::size_t kMaxRepeatDigits = 6;

class PatternParser {
public:
    explicit PatternParser(std::string_view text) : text_(text) {}

    MotifPattern parse() {
        if (text_.empty()) throw PatternError("empty pattern", 0);
        for (std::size_t i = 0; i < text_.size(); ++i) {
            if (std::isspace(static_cast<unsigned char>(text_[i]))) throw PatternError("whitespace not allowed", i);
        }
        MotifPattern out;
        out.source_text = std::string(text_);
        end_ = text_.size();
        if (text_[pos_] == '<') {
            out.anchored_start = true;
            ++pos_;
        }
        if (end_ > pos_ && text_[end_ - 1] == '>') {
            out.anchored_end = true;
            --end_;
        }
        while (true) {
            out.elements.push_back(element());
            if (pos_ == end_) break;
            if (text_[pos_] != '-') throw PatternError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
            ++pos_;
            if (pos_ == end_) throw PatternError("trailing '-'", pos_ - 1);
        }
        return out;
    }

private:
    PatternElement element() {
        if (pos_ == end_ || text_[pos_] == '-') throw PatternError("empty element", pos_);
        PatternElement e;
        const char c = text_[pos_];
        if (c == 'x') {
            e.kind = ElementKind::Wildcard;
            ++pos_;
        } else if (c == '[' || c == '{') {
            e.kind = c == '[' ? ElementKind::ResidueSet : ElementKind::NegatedSet;
            e.residues = residue_set(c == '[' ? ']' : '}');
        } else if (c == ']' || c == '}') {
            throw PatternError(std::string("unbalanced '") + c + "'", pos_);
        } else if (is_amino_acid(c)) {
            e.kind = ElementKind::Literal;
            e.residues = residue_bit(c);
            ++pos_;
        } else {
            throw PatternError(std::string("unknown residue letter '") + c + "'", pos_);
        }
        if (pos_ < end_ && text_[pos_] == '(') repeat(e);
        return e;
    }

    ResidueMask residue_set(char close) {
        const std::size_t open = pos_++;
        ResidueMask mask = 0;
        while (pos_ < end_ && text_[pos_] != close) {
            const char c = text_[pos_];
            if (!is_amino_acid(c)) {
                if (c == '[' || c == ']' || c == '{' || c == '}') throw PatternError("unbalanced brackets", pos_);
                throw PatternError(std::string("unknown residue letter '") + c + "'", pos_);
            }
            mask |= residue_bit(c);
            ++pos_;
        }
        if (pos_ == end_) throw PatternError(std::string("unbalanced '") + text_[open] + "'", open);
        if (mask == 0) throw PatternError("empty residue set", open);
        ++pos_;
        return mask;
    }

    void repeat(PatternElement& e) {
        const std::size_t open = pos_++;
        e.min_repeat = number();
        e.max_repeat = e.min_repeat;
        if (pos_ < end_ && text_[pos_] == ',') {
            ++pos_;
            e.max_repeat = number();
        }
        if (pos_ == end_ || text_[pos_] != ')') throw PatternError("unbalanced '('", open);
        if (e.max_repeat < e.min_repeat) throw PatternError("repeat maximum below minimum", open);
        ++pos_;
    }

    std::size_t number() {
        const std::size_t start = pos_;
        std::size_t value = 0;
        while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (pos_ - start >= kMaxRepeatDigits) throw PatternError("repeat count too large", start);
            value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) throw PatternError("expected a repeat count", pos_);
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
};

std::string mask_letters(ResidueMask mask) {
    std::string out;
    for (std::size_t i = 0; i < kAminoAcids.size(); ++i) {
        if (mask & (ResidueMask{1} << i)) out += kAminoAcids[i];
    }
    return out;
}

// Marks every position reachable by consuming one element from any position
// marked in `from`.
void advance(const PatternElement& e, std::string_view s, const std::vector<char>& from, std::vector<char>& to) {
    const std::size_t n = s.size();
    std::fill(to.begin(), to.end(), 0);
    for (std::size_t p = 0; p <= n; ++p) {
        if (!from[p]) continue;
        for (std::size_t c = 0; c <= e.max_repeat && p + c <= n; ++c) {
            if (c > 0 && !e.accepts(s[p + c - 1])) break;
            if (c >= e.min_repeat) to[p + c] = 1;
        }
    }
}

// Shortest match beginning at `start`, or npos.
std::size_t shortest_match_end(const MotifPattern& pattern, std::string_view s, std::size_t start) {
    const std::size_t n = s.size();
    std::vector<char> reach(n + 1, 0), next(n + 1, 0);
    reach[start] = 1;
    for (const auto& e : pattern.elements) {
        advance(e, s, reach, next);
        reach.swap(next);
        if (std::none_of(reach.begin(), reach.end(), [](char r) { return r != 0; })) return std::string_view::npos;
    }
    if (pattern.anchored_end) return reach[n] ? n : std::string_view::npos;
    for (std::size_t p = start; p <= n; ++p) {
        if (reach[p]) return p;
    }
    return std::string_view::npos;
}

} // namespace

ResidueMask residue_bit(char residue) {
    const auto i = kAminoAcids.find(residue);
    if (i == std::string_view::npos) throw std::invalid_argument(std::string("not an amino acid: ") + residue);
    return ResidueMask{1} << i;
}

bool PatternElement::accepts(char residue) const {
    const auto i = kAminoAcids.find(residue);
    if (i == std::string_view::npos) return false;
    const bool in_set = (residues & (ResidueMask{1} << i)) != 0;
    switch (kind) {
    case ElementKind::Wildcard: return true;
    case ElementKind::NegatedSet: return !in_set;
    default: return in_set;
    }
}

MotifPattern parse_pattern(std::string_view text) { return PatternParser(text).parse(); }

std::string pattern_to_string(const MotifPattern& pattern) {
    std::string out;
    if (pattern.anchored_start) out += '<';
    for (std::size_t i = 0; i < pattern.elements.size(); ++i) {
        const auto& e = pattern.elements[i];
        if (i > 0) out += '-';
        switch (e.kind) {
        case ElementKind::Literal: out += mask_letters(e.residues); break;
        case ElementKind::ResidueSet: out += '[' + mask_letters(e.residues) + ']'; break;
        case ElementKind::NegatedSet: out += '{' + mask_letters(e.residues) + '}'; break;
        case ElementKind::Wildcard: out += 'x'; break;
        }
        if (e.min_repeat == e.max_repeat) {
            if (e.min_repeat != 1) out += '(' + std::to_string(e.min_repeat) + ')';
        } else {
            out += '(' + std::to_string(e.min_repeat) + ',' + std::to_string(e.max_repeat) + ')';
        }
    }
    if (pattern.anchored_end) out += '>';
    return out;
}

std::vector<MatchSpan> scan(const MotifPattern& pattern, std::string_view residues) {
    std::vector<MatchSpan> spans;
    const std::size_t n = residues.size();
    std::size_t start = 0;
    while (start <= n) {
        const std::size_t end = shortest_match_end(pattern, residues, start);
        if (end != std::string_view::npos) {
            spans.emplace_back(start, end);
            start = end > start ? end : start + 1;
        } else {
            ++start;
        }
        if (pattern.anchored_start) break;
    }
    return spans;
}

double best_match_score(const MotifPattern& pattern, std::string_view residues) {
    const std::size_t n = residues.size();
    if (n == 0) return 0.0;
    if (!scan(pattern, residues).empty()) return 1.0;

    const auto mandatory = static_cast<int>(
        std::count_if(pattern.elements.begin(), pattern.elements.end(), [](const auto& e) { return e.mandatory(); }));
    if (mandatory == 0) return 0.0;

    // best[j]: most mandatory elements matched by a placement of the elements
    // seen so far that ends at residue j; -1 when unreachable. A mandatory
    // element may be placed over non-matching residues (no credit) or left
    // unplaced; optional elements must match whatever they consume.
    std::vector<int> best(n + 1, pattern.anchored_start ? -1 : 0), next(n + 1);
    best[0] = 0;
    for (const auto& e : pattern.elements) {
        std::fill(next.begin(), next.end(), -1);
        for (std::size_t j = 0; j <= n; ++j) {
            if (best[j] < 0) continue;
            if (e.mandatory()) {
                next[j] = std::max(next[j], best[j]);
                bool matched = true;
                for (std::size_t c = 1; c <= e.max_repeat && j + c <= n; ++c) {
                    matched = matched && e.accepts(residues[j + c - 1]);
                    if (c >= e.min_repeat) next[j + c] = std::max(next[j + c], best[j] + (matched ? 1 : 0));
                }
            } else {
                for (std::size_t c = 0; c <= e.max_repeat && j + c <= n; ++c) {
                    if (c > 0 && !e.accepts(residues[j + c - 1])) break;
                    next[j + c] = std::max(next[j + c], best[j]);
                }
            }
        }
        best.swap(next);
    }
    const int top = pattern.anchored_end ? best[n] : *std::max_element(best.begin(), best.end());
    if (top <= 0) return 0.0;
    // A placement crediting every mandatory element is a full match, which
    // scan would have found.
    return static_cast<double>(std::min(top, mandatory - 1)) / mandatory;
}

} // namespace easme
