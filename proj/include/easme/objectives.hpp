#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "easme/genome.hpp"
#include "easme/grammar.hpp"

namespace easme {

// Ionizable-group pKa values (pH units). Defaults are the EMBOSS set.
struct PkaSet {
    double n_term = 8.6;
    double c_term = 3.6;
    double cys = 8.5;
    double asp = 3.9;
    double glu = 4.1;
    double his = 6.5;
    double lys = 10.8;
    double arg = 12.5;
    double tyr = 10.1;

    void validate() const;
    friend bool operator==(const PkaSet&, const PkaSet&) = default;
};

// Kyte-Doolittle hydropathy of one residue.
double hydropathy(char residue);

// Grand average of hydropathy. Throws std::invalid_argument when empty.
double gravy(std::string_view residues);

double net_charge_at_ph(std::string_view residues, double ph, const PkaSet& pka = {});

struct IsoelectricPoint {
    double ph = 0.0;
    bool clamped = false;  // no sign change in [0, 14]; ph is the nearer endpoint
};

IsoelectricPoint isoelectric_point_detailed(std::string_view residues, const PkaSet& pka = {});
inline double isoelectric_point(std::string_view residues, const PkaSet& pka = {}) {
    return isoelectric_point_detailed(residues, pka).ph;
}

// Fraction of K, R, D, E.
double charged_fraction(std::string_view residues);

// Pairs (i < j, j - i <= window) with one residue in {K,R} and the other in
// {D,E}, divided by length.
double salt_bridge_score(std::string_view residues, std::size_t window = 4);

std::size_t edit_distance(std::string_view a, std::string_view b);

// 1 - edit_distance / max(len(a), len(target)).
double consensus_similarity(std::string_view a, std::string_view target);

// Jaccard index of the k-mer sets; two empty sets score 1, one empty set 0.
double kmer_similarity(std::string_view a, std::string_view reference, std::size_t k = 3);

enum class ObjectiveKind {
    GravyTarget,
    IsoelectricTarget,
    ChargedFraction,
    SaltBridge,
    MotifScore,
    ConsensusSimilarity,
    KmerSimilarity,
    IdentityFloorPenalty,
};

std::string_view objective_kind_name(ObjectiveKind kind);
std::optional<ObjectiveKind> objective_kind_from_name(std::string_view name);

// One fitness component. Only the parameters relevant to `kind` are read:
//   GravyTarget, IsoelectricTarget: target (+ pka)
//   SaltBridge: window
//   MotifScore: pattern
//   ConsensusSimilarity: sequence (the target protein)
//   KmerSimilarity: sequence (reference), k
//   IdentityFloorPenalty: sequence (source protein), tau
struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::ChargedFraction;
    double target = 0.0;
    PkaSet pka;
    std::size_t window = 4;
    std::size_t k = 3;
    double tau = 0.7;
    std::string sequence;
    std::optional<MotifPattern> pattern;

    // Throws std::invalid_argument describing the first problem.
    void validate() const;
};

using ObjectiveVector = std::vector<double>;

double evaluate_one(std::string_view residues, const ObjectiveSpec& spec);

// Every component is maximized: target objectives score -|value - target| and
// the identity floor scores -(tau - similarity) below tau, 0 otherwise.
// Component errors (e.g. an empty protein) propagate.
ObjectiveVector evaluate(const Protein& protein, const std::vector<ObjectiveSpec>& specs);

} // namespace easme
