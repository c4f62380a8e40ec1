#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "easme/genome.hpp"

namespace easme {

// Rule identifiers reported in FilterVerdict::reasons, in evaluation order.
namespace rule {
inline constexpr std::string_view kMinLength = "min_length";
inline constexpr std::string_view kMaxLength = "max_length";
inline constexpr std::string_view kTruncated = "truncated";
inline constexpr std::string_view kHomopolymer = "homopolymer";
inline constexpr std::string_view kEntropy = "entropy";
inline constexpr std::string_view kGravy = "gravy";
inline constexpr std::string_view kStartMet = "start_met";
} // namespace rule

struct FilterConfig {
    std::size_t min_length = 20;
    std::size_t max_length = 5000;
    bool reject_truncated = true;
    std::size_t max_homopolymer = 8;
    double min_entropy = 1.5;  // bits per residue
    double gravy_min = -2.0;
    double gravy_max = 2.0;
    bool require_start_met = false;

    void validate() const;
    friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

struct FilterVerdict {
    bool accepted = true;
    std::vector<std::string> reasons;

    friend bool operator==(const FilterVerdict&, const FilterVerdict&) = default;
};

double shannon_entropy(std::string_view residues);
std::size_t max_homopolymer_run(std::string_view residues);

// Applies every rule and reports all that fail. Entropy and GRAVY are not
// defined for an empty protein, which fails min_length instead.
FilterVerdict check(const Protein& protein, const FilterConfig& config);

} // namespace easme
