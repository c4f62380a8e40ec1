#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "easme/rng.hpp"

namespace easme {

inline constexpr std::string_view kNucleotides = "ACGT";
inline constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";
inline constexpr char kStopSymbol = '*';

inline constexpr bool is_nucleotide(char c) {
    return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

inline constexpr bool is_amino_acid(char c) {
    return kAminoAcids.find(c) != std::string_view::npos;
}

// Raised for an invalid character in a sequence. position is 0-based.
class SequenceError : public std::runtime_error {
public:
    SequenceError(const std::string& what, std::size_t position, char character)
        : std::runtime_error(what), position_(position), character_(character) {}
    std::size_t position() const { return position_; }
    char character() const { return character_; }

private:
    std::size_t position_;
    char character_;
};

// A DNA individual: uppercase bases over ACGT plus an optional label.
class Dna {
public:
    Dna() = default;
    // Throws SequenceError unless every character is one of A, C, G, T.
    explicit Dna(std::string bases, std::string id = {});

    const std::string& bases() const { return bases_; }
    const std::string& id() const { return id_; }
    std::size_t size() const { return bases_.size(); }
    bool empty() const { return bases_.empty(); }
    char operator[](std::size_t i) const { return bases_[i]; }

    void set_id(std::string id) { id_ = std::move(id); }

    // Sequence equality; the label does not participate.
    friend bool operator==(const Dna& a, const Dna& b) { return a.bases_ == b.bases_; }

private:
    friend class DnaBuilder;
    struct Unchecked {};
    Dna(Unchecked, std::string bases) : bases_(std::move(bases)) {}

    std::string bases_;
    std::string id_;
};

// Used by mutation operators that only ever emit valid bases.
class DnaBuilder {
public:
    static Dna adopt(std::string bases) { return Dna(Dna::Unchecked{}, std::move(bases)); }
};

class Protein {
public:
    Protein() = default;
    // Throws SequenceError unless every residue is one of the 20 standard codes.
    explicit Protein(std::string residues, bool truncated = false);

    const std::string& residues() const { return residues_; }
    bool truncated() const { return truncated_; }
    std::size_t size() const { return residues_.size(); }
    bool empty() const { return residues_.empty(); }

    friend bool operator==(const Protein&, const Protein&) = default;

private:
    std::string residues_;
    bool truncated_ = false;
};

// NCBI translation table 1.
class GeneticCode {
public:
    static const GeneticCode& standard();

    // Amino-acid letter, or kStopSymbol for a stop codon. Throws
    // std::invalid_argument for anything but a 3-letter ACGT codon.
    char translate_codon(std::string_view codon) const;
    bool is_stop(std::string_view codon) const { return translate_codon(codon) == kStopSymbol; }

    // All 64 codons in lexicographic ACGT order with their images.
    std::vector<std::pair<std::string, char>> entries() const;

private:
    GeneticCode();
    std::array<char, 64> table_{};
};

Protein translate(const Dna& dna, std::size_t frame_offset = 0);

Dna random_dna(std::size_t length, RngStream& rng);

// Uppercases, then accepts only ACGT. Throws SequenceError with the index of
// the first offending character.
Dna validate_dna(std::string_view text);

// Same contract over the 20-letter amino-acid alphabet.
Protein validate_protein(std::string_view text);

} // namespace easme
