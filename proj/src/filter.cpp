#include "easme/filter.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "easme/objectives.hpp"

namespace easme {

void FilterConfig::validate() const {
    if (min_length > max_length) throw std::invalid_argument("filter.min_length exceeds filter.max_length");
    if (!(min_entropy >= 0.0 && min_entropy <= std::log2(20.0)))
        throw std::invalid_argument("filter.min_entropy must be in [0, log2(20)]");
    if (!(gravy_min <= gravy_max)) throw std::invalid_argument("filter.gravy_bounds must be ordered");
}

double shannon_entropy(std::string_view residues) {
    if (residues.empty()) throw std::invalid_argument("shannon_entropy: empty protein");
    std::array<std::size_t, 256> counts{};
    for (char c : residues) ++counts[static_cast<unsigned char>(c)];
    const double n = static_cast<double>(residues.size());
    double h = 0.0;
    for (std::size_t count : counts) {
        if (count == 0) continue;
        const double f = static_cast<double>(count) / n;
        h -= f * std::log2(f);
    }
    return h + 0.0;  // normalizes -0.0
}

std::size_t max_homopolymer_run(std::string_view residues) {
    std::size_t best = 0;
    std::size_t run = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        run = (i > 0 && residues[i] == residues[i - 1]) ? run + 1 : 1;
        if (run > best) best = run;
    }
    return best;
}

FilterVerdict check(const Protein& protein, const FilterConfig& config) {
    FilterVerdict verdict;
    auto fail = [&](std::string_view id) { verdict.reasons.emplace_back(id); };
    const std::string_view residues = protein.residues();

    if (residues.size() < config.min_length || residues.empty()) fail(rule::kMinLength);
    if (residues.size() > config.max_length) fail(rule::kMaxLength);
    if (config.reject_truncated && protein.truncated()) fail(rule::kTruncated);
    if (max_homopolymer_run(residues) > config.max_homopolymer) fail(rule::kHomopolymer);
    if (!residues.empty()) {
        if (shannon_entropy(residues) < config.min_entropy) fail(rule::kEntropy);
        const double g = gravy(residues);
        if (g < config.gravy_min || g > config.gravy_max) fail(rule::kGravy);
    }
    if (config.require_start_met && (residues.empty() || residues.front() != 'M')) fail(rule::kStartMet);

    verdict.accepted = verdict.reasons.empty();
    return verdict;
}

} // namespace easme
