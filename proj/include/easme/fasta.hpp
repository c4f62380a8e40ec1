#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace easme {

struct FastaRecord {
    std::string id;
    std::string sequence;

    friend bool operator==(const FastaRecord&, const FastaRecord&) = default;
};

enum class SequenceAlphabet { Dna, Protein };

class FastaError : public std::runtime_error {
public:
    FastaError(const std::string& what, std::string record_id, std::size_t position, char character)
        : std::runtime_error(what), record_id_(std::move(record_id)), position_(position), character_(character) {}
    const std::string& record_id() const { return record_id_; }
    // Offset into the record's concatenated sequence.
    std::size_t position() const { return position_; }
    char character() const { return character_; }

private:
    std::string record_id_;
    std::size_t position_;
    char character_;
};

// Accepts LF or CRLF line endings. The record id is the full header line
// after '>'. Sequence lines are concatenated with whitespace removed and
// uppercased, then checked against the alphabet.
std::vector<FastaRecord> parse_fasta(std::string_view text, SequenceAlphabet alphabet = SequenceAlphabet::Dna);

std::string write_fasta(const std::vector<FastaRecord>& records, std::size_t wrap = 60);

} // namespace easme
