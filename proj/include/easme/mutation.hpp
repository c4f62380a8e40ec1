#pragma once

#include <cstddef>
#include <utility>

#include "easme/genome.hpp"
#include "easme/rng.hpp"

namespace easme {

struct MutationRates {
    double point_rate = 1e-3;      // per nucleotide per generation
    double insertion_rate = 0.02;  // per sequence per generation
    double deletion_rate = 0.02;   // per sequence per generation
    double kappa = 2.0;            // transition/transversion ratio
    std::size_t indel_max = 9;
    double crossover_prob = 0.9;
    bool codon_aligned_crossover = false;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    static MutationRates none() { return {0.0, 0.0, 0.0, 2.0, 9, 0.0, false}; }
};

// A<->G and C<->T.
char transition_of(char base);

// Substitutes every position independently with probability point_rate.
// A substituted base always changes: the transition with probability
// kappa/(kappa+2), each transversion with probability 1/(kappa+2).
Dna point_mutate(const Dna& dna, const MutationRates& rates, RngStream& rng);

// P(L = l) proportional to 2^-l on 1..max_length.
std::size_t sample_indel_length(std::size_t max_length, RngStream& rng);

Dna insert_at(const Dna& dna, std::size_t position, std::string_view bases);
Dna delete_at(const Dna& dna, std::size_t start, std::size_t length);

// With probability insertion_rate inserts 1..indel_max random bases at a
// uniform position in [0, length].
Dna insert(const Dna& dna, const MutationRates& rates, RngStream& rng);

// With probability deletion_rate removes a contiguous block whose length is
// drawn on 1..min(indel_max, length). Empty input is returned unchanged.
Dna remove(const Dna& dna, const MutationRates& rates, RngStream& rng);

// Single-point crossover at cut k: (a[0,k) + b[k,..), b[0,k) + a[k,..)).
std::pair<Dna, Dna> recombine_at(const Dna& a, const Dna& b, std::size_t cut);

// Uniform cut in [1, min(len_a, len_b) - 1]; parents are returned unchanged
// when the shorter one has fewer than 2 bases. With codon_aligned the cut is a
// multiple of 3 (parents unchanged if no such cut exists).
std::pair<Dna, Dna> recombine(const Dna& a, const Dna& b, RngStream& rng, bool codon_aligned = false);

// point_mutate, then insert, then remove.
Dna mutate_individual(const Dna& dna, const MutationRates& rates, RngStream& rng);

} // namespace easme
