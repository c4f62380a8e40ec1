#include "easme/genome.hpp"

#include <cctype>

namespace easme {

namespace {

// Table 1 in NCBI's TCAG-ordered layout: index = 16*b1 + 4*b2 + b3 with
// T=0, C=1, A=2, G=3.
constexpr std::string_view kNcbiTable1 =
    "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG";

constexpr int tcag_index(char c) {
    switch (c) {
    case 'T': return 0;
    case 'C': return 1;
    case 'A': return 2;
    case 'G': return 3;
    default: return -1;
    }
}

constexpr int acgt_index(char c) {
    switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
    }
}

int codon_key(std::string_view codon) {
    if (codon.size() != 3) return -1;
    int key = 0;
    for (char c : codon) {
        const int b = acgt_index(c);
        if (b < 0) return -1;
        key = key * 4 + b;
    }
    return key;
}

std::string position_message(std::string_view kind, std::size_t pos, char c) {
    std::string msg = "invalid ";
    msg += kind;
    msg += " character '";
    msg += c;
    msg += "' at index ";
    msg += std::to_string(pos);
    return msg;
}

} // namespace

Dna::Dna(std::string bases, std::string id) : bases_(std::move(bases)), id_(std::move(id)) {
    for (std::size_t i = 0; i < bases_.size(); ++i) {
        if (!is_nucleotide(bases_[i])) throw SequenceError(position_message("nucleotide", i, bases_[i]), i, bases_[i]);
    }
}

Protein::Protein(std::string residues, bool truncated) : residues_(std::move(residues)), truncated_(truncated) {
    for (std::size_t i = 0; i < residues_.size(); ++i) {
        if (!is_amino_acid(residues_[i])) throw SequenceError(position_message("residue", i, residues_[i]), i, residues_[i]);
    }
}

GeneticCode::GeneticCode() {
    for (char b1 : kNucleotides) {
        for (char b2 : kNucleotides) {
            for (char b3 : kNucleotides) {
                const int ncbi = 16 * tcag_index(b1) + 4 * tcag_index(b2) + tcag_index(b3);
                const int key = 16 * acgt_index(b1) + 4 * acgt_index(b2) + acgt_index(b3);
                table_[key] = kNcbiTable1[ncbi];
            }
        }
    }
}

const GeneticCode& GeneticCode::standard() {
    static const GeneticCode code;
    return code;
}

char GeneticCode::translate_codon(std::string_view codon) const {
    const int key = codon_key(codon);
    if (key < 0) throw std::invalid_argument("not a codon: '" + std::string(codon) + "'");
    return table_[key];
}

std::vector<std::pair<std::string, char>> GeneticCode::entries() const {
    std::vector<std::pair<std::string, char>> out;
    out.reserve(64);
    for (int key = 0; key < 64; ++key) {
        std::string codon{kNucleotides[key >> 4], kNucleotides[(key >> 2) & 3], kNucleotides[key & 3]};
        out.emplace_back(std::move(codon), table_[key]);
    }
    return out;
}

Protein translate(const Dna& dna, std::size_t frame_offset) {
    if (frame_offset > 2) throw std::invalid_argument("frame_offset must be 0, 1 or 2");
    const auto& code = GeneticCode::standard();
    const std::string_view bases = dna.bases();
    std::string residues;
    residues.reserve(bases.size() / 3);
    for (std::size_t i = frame_offset; i + 3 <= bases.size(); i += 3) {
        const char aa = code.translate_codon(bases.substr(i, 3));
        if (aa == kStopSymbol) {
            // Truncated only if at least one complete codon follows the stop.
            const bool truncated = i + 6 <= bases.size();
            return Protein(std::move(residues), truncated);
        }
        residues.push_back(aa);
    }
    return Protein(std::move(residues), false);
}

Dna random_dna(std::size_t length, RngStream& rng) {
    if (length == 0) throw std::invalid_argument("random_dna: length must be at least 1");
    std::string bases(length, 'A');
    for (auto& b : bases) b = kNucleotides[rng.uniform_below(4)];
    return DnaBuilder::adopt(std::move(bases));
}

Dna validate_dna(std::string_view text) {
    std::string bases(text);
    for (auto& c : bases) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return Dna(std::move(bases));
}

Protein validate_protein(std::string_view text) {
    std::string residues(text);
    for (auto& c : residues) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return Protein(std::move(residues));
}

} // namespace easme
