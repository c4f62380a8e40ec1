#include "easme/fasta.hpp"

#include <cctype>

#include "easme/genome.hpp"

namespace easme {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void check_alphabet(const FastaRecord& record, SequenceAlphabet alphabet) {
    for (std::size_t i = 0; i < record.sequence.size(); ++i) {
        const char c = record.sequence[i];
        const bool ok = alphabet == SequenceAlphabet::Dna ? is_nucleotide(c) : is_amino_acid(c);
        if (!ok) {
            throw FastaError("record '" + record.id + "': invalid character '" + std::string(1, c) + "' at position " +
                                 std::to_string(i),
                             record.id, i, c);
        }
    }
}

} // namespace

std::vector<FastaRecord> parse_fasta(std::string_view text, SequenceAlphabet alphabet) {
    std::vector<FastaRecord> records;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        ++line_no;

        if (!line.empty() && line.front() == '>') {
            records.push_back({std::string(line.substr(1)), {}});
            continue;
        }
        bool blank = true;
        for (char c : line) blank = blank && is_space(c);
        if (blank) continue;
        if (records.empty()) {
            throw FastaError("line " + std::to_string(line_no) + ": sequence data before the first '>' header", "", 0,
                             line.front());
        }
        auto& seq = records.back().sequence;
        for (char c : line) {
            if (!is_space(c)) seq.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
    }
    for (const auto& r : records) check_alphabet(r, alphabet);
    return records;
}

std::string write_fasta(const std::vector<FastaRecord>& records, std::size_t wrap) {
    if (wrap == 0) throw std::invalid_argument("write_fasta: wrap must be positive");
    std::string out;
    for (const auto& r : records) {
        if (r.id.empty()) throw std::invalid_argument("write_fasta: empty record id");
        if (r.id.find_first_of("\r\n") != std::string::npos)
            throw std::invalid_argument("write_fasta: record id contains a line break");
        out += '>';
        out += r.id;
        out += '\n';
        for (std::size_t i = 0; i < r.sequence.size(); i += wrap) {
            out.append(r.sequence, i, wrap);
            out += '\n';
        }
    }
    return out;
}

} // namespace easme
