#include "easme/mutation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace easme {

namespace {

void require_probability(double p, const char* field) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(field) + " must be in [0, 1]");
}

// The two cross-class bases for each base, in fixed order.
std::pair<char, char> transversions_of(char base) {
    switch (base) {
    case 'A':
    case 'G': return {'C', 'T'};
    default: return {'A', 'G'};
    }
}

} // namespace

void MutationRates::validate() const {
    require_probability(point_rate, "point_rate");
    require_probability(insertion_rate, "insertion_rate");
    require_probability(deletion_rate, "deletion_rate");
    require_probability(crossover_prob, "crossover_prob");
    if (!(kappa > 0.0) || std::isnan(kappa)) throw std::invalid_argument("kappa must be positive");
    if (indel_max < 1) throw std::invalid_argument("indel_max must be at least 1");
}

char transition_of(char base) {
    switch (base) {
    case 'A': return 'G';
    case 'G': return 'A';
    case 'C': return 'T';
    case 'T': return 'C';
    default: throw std::invalid_argument("not a nucleotide");
    }
}

Dna point_mutate(const Dna& dna, const MutationRates& rates, RngStream& rng) {
    if (rates.point_rate <= 0.0) return dna;
    const double p_transition = std::isinf(rates.kappa) ? 1.0 : rates.kappa / (rates.kappa + 2.0);
    std::string bases = dna.bases();
    for (auto& b : bases) {
        if (!rng.bernoulli(rates.point_rate)) continue;
        const double u = rng.uniform01();
        if (u < p_transition) {
            b = transition_of(b);
        } else {
            const auto [t1, t2] = transversions_of(b);
            b = (u - p_transition) < (1.0 - p_transition) / 2.0 ? t1 : t2;
        }
    }
    Dna out = DnaBuilder::adopt(std::move(bases));
    out.set_id(dna.id());
    return out;
}

std::size_t sample_indel_length(std::size_t max_length, RngStream& rng) {
    if (max_length < 1) throw std::invalid_argument("sample_indel_length: max_length must be at least 1");
    // Inverse CDF of the renormalized truncated geometric.
    const double total = 1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(max_length, 1023)));
    const double u = rng.uniform01() * total;
    double cumulative = 0.0;
    double mass = 0.5;
    for (std::size_t len = 1; len < max_length; ++len) {
        cumulative += mass;
        if (u < cumulative) return len;
        mass *= 0.5;
    }
    return max_length;
}

Dna insert_at(const Dna& dna, std::size_t position, std::string_view bases) {
    if (position > dna.size()) throw std::out_of_range("insert_at: position past end");
    std::string out = dna.bases();
    out.insert(position, bases);
    Dna result(std::move(out));
    result.set_id(dna.id());
    return result;
}

Dna delete_at(const Dna& dna, std::size_t start, std::size_t length) {
    if (start > dna.size() || length > dna.size() - start) throw std::out_of_range("delete_at: block past end");
    std::string out = dna.bases();
    out.erase(start, length);
    Dna result = DnaBuilder::adopt(std::move(out));
    result.set_id(dna.id());
    return result;
}

Dna insert(const Dna& dna, const MutationRates& rates, RngStream& rng) {
    if (!rng.bernoulli(rates.insertion_rate)) return dna;
    const auto position = static_cast<std::size_t>(rng.uniform_below(dna.size() + 1));
    const std::size_t length = sample_indel_length(rates.indel_max, rng);
    std::string bases(length, 'A');
    for (auto& b : bases) b = kNucleotides[rng.uniform_below(4)];
    return insert_at(dna, position, bases);
}

Dna remove(const Dna& dna, const MutationRates& rates, RngStream& rng) {
    if (dna.empty()) return dna;
    if (!rng.bernoulli(rates.deletion_rate)) return dna;
    const std::size_t length = sample_indel_length(std::min(rates.indel_max, dna.size()), rng);
    const auto start = static_cast<std::size_t>(rng.uniform_below(dna.size() - length + 1));
    return delete_at(dna, start, length);
}

std::pair<Dna, Dna> recombine_at(const Dna& a, const Dna& b, std::size_t cut) {
    if (cut > a.size() || cut > b.size()) throw std::out_of_range("recombine_at: cut past the shorter parent");
    std::string c1 = a.bases().substr(0, cut) + b.bases().substr(cut);
    std::string c2 = b.bases().substr(0, cut) + a.bases().substr(cut);
    return {DnaBuilder::adopt(std::move(c1)), DnaBuilder::adopt(std::move(c2))};
}

std::pair<Dna, Dna> recombine(const Dna& a, const Dna& b, RngStream& rng, bool codon_aligned) {
    const std::size_t shorter = std::min(a.size(), b.size());
    if (shorter < 2) return {a, b};
    if (!codon_aligned) {
        const auto cut = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(shorter - 1)));
        return recombine_at(a, b, cut);
    }
    const std::size_t cuts = (shorter - 1) / 3;
    if (cuts == 0) return {a, b};
    const auto cut = 3 * static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(cuts)));
    return recombine_at(a, b, cut);
}

Dna mutate_individual(const Dna& dna, const MutationRates& rates, RngStream& rng) {
    Dna out = point_mutate(dna, rates, rng);
    out = insert(out, rates, rng);
    return remove(out, rates, rng);
}

} // namespace easme
