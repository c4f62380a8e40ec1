#include "easme/objectives.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace easme {

namespace {

struct KdEntry {
    char residue;
    double value;
};

constexpr std::array<KdEntry, 20> kKyteDoolittle{{
    {'A', 1.8},  {'R', -4.5}, {'N', -3.5}, {'D', -3.5}, {'C', 2.5},  {'Q', -3.5}, {'E', -3.5},
    {'G', -0.4}, {'H', -3.2}, {'I', 4.5},  {'L', 3.8},  {'K', -3.9}, {'M', 1.9},  {'F', 2.8},
    {'P', -1.6}, {'S', -0.8}, {'T', -0.7}, {'W', -0.9}, {'Y', -1.3}, {'V', 4.2},
}};

void require_nonempty(std::string_view residues, const char* what) {
    if (residues.empty()) throw std::invalid_argument(std::string(what) + ": empty protein");
}

struct GroupCounts {
    std::size_t cys = 0, asp = 0, glu = 0, his = 0, lys = 0, arg = 0, tyr = 0;
};

GroupCounts count_groups(std::string_view residues) {
    GroupCounts g;
    for (char c : residues) {
        switch (c) {
        case 'C': ++g.cys; break;
        case 'D': ++g.asp; break;
        case 'E': ++g.glu; break;
        case 'H': ++g.his; break;
        case 'K': ++g.lys; break;
        case 'R': ++g.arg; break;
        case 'Y': ++g.tyr; break;
        default: break;
        }
    }
    return g;
}

double positive_fraction(double ph, double pka) { return 1.0 / (1.0 + std::pow(10.0, ph - pka)); }
double negative_fraction(double ph, double pka) { return 1.0 / (1.0 + std::pow(10.0, pka - ph)); }

double charge(const GroupCounts& g, double ph, const PkaSet& pka) {
    const double positive = positive_fraction(ph, pka.n_term) + g.lys * positive_fraction(ph, pka.lys) +
                            g.arg * positive_fraction(ph, pka.arg) + g.his * positive_fraction(ph, pka.his);
    const double negative = negative_fraction(ph, pka.c_term) + g.asp * negative_fraction(ph, pka.asp) +
                            g.glu * negative_fraction(ph, pka.glu) + g.cys * negative_fraction(ph, pka.cys) +
                            g.tyr * negative_fraction(ph, pka.tyr);
    return positive - negative;
}

bool is_positive(char c) { return c == 'K' || c == 'R'; }
bool is_negative(char c) { return c == 'D' || c == 'E'; }

constexpr std::array<std::string_view, 8> kKindNames{
    "gravy_target",         "isoelectric_target", "charged_fraction", "salt_bridge",
    "motif_score",          "consensus_similarity", "kmer_similarity", "identity_floor_penalty",
};

} // namespace

void PkaSet::validate() const {
    for (double v : {n_term, c_term, cys, asp, glu, his, lys, arg, tyr}) {
        if (!(v > 0.0 && v < 14.0)) throw std::invalid_argument("pKa values must lie in (0, 14)");
    }
}

double hydropathy(char residue) {
    for (const auto& e : kKyteDoolittle) {
        if (e.residue == residue) return e.value;
    }
    throw std::invalid_argument(std::string("no hydropathy value for '") + residue + "'");
}

double gravy(std::string_view residues) {
    require_nonempty(residues, "gravy");
    double sum = 0.0;
    for (char c : residues) sum += hydropathy(c);
    return sum / static_cast<double>(residues.size());
}

double net_charge_at_ph(std::string_view residues, double ph, const PkaSet& pka) {
    require_nonempty(residues, "net_charge_at_ph");
    if (!(ph >= 0.0 && ph <= 14.0)) throw std::invalid_argument("net_charge_at_ph: pH outside [0, 14]");
    return charge(count_groups(residues), ph, pka);
}

IsoelectricPoint isoelectric_point_detailed(std::string_view residues, const PkaSet& pka) {
    require_nonempty(residues, "isoelectric_point");
    const auto groups = count_groups(residues);
    double lo = 0.0;
    double hi = 14.0;
    const double q_lo = charge(groups, lo, pka);
    const double q_hi = charge(groups, hi, pka);
    if (q_lo == 0.0) return {lo, false};
    if (q_hi == 0.0) return {hi, false};
    if (q_lo < 0.0) return {lo, true};
    if (q_hi > 0.0) return {hi, true};
    // Charge decreases monotonically in pH; keep q(lo) > 0 > q(hi).
    while (hi - lo >= 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const double q = charge(groups, mid, pka);
        if (q == 0.0) return {mid, false};
        (q > 0.0 ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), false};
}

double charged_fraction(std::string_view residues) {
    require_nonempty(residues, "charged_fraction");
    const auto charged = std::count_if(residues.begin(), residues.end(),
                                       [](char c) { return is_positive(c) || is_negative(c); });
    return static_cast<double>(charged) / static_cast<double>(residues.size());
}

double salt_bridge_score(std::string_view residues, std::size_t window) {
    require_nonempty(residues, "salt_bridge_score");
    if (window < 1) throw std::invalid_argument("salt_bridge_score: window must be at least 1");
    std::size_t pairs = 0;
    const std::size_t n = residues.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool pos_i = is_positive(residues[i]);
        const bool neg_i = is_negative(residues[i]);
        if (!pos_i && !neg_i) continue;
        for (std::size_t j = i + 1; j < n && j - i <= window; ++j) {
            if ((pos_i && is_negative(residues[j])) || (neg_i && is_positive(residues[j]))) ++pairs;
        }
    }
    return static_cast<double>(pairs) / static_cast<double>(n);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diagonal = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t above = row[j];
            row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diagonal = above;
        }
    }
    return row[b.size()];
}

double consensus_similarity(std::string_view a, std::string_view target) {
    const std::size_t longest = std::max(a.size(), target.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(edit_distance(a, target)) / static_cast<double>(longest);
}

double kmer_similarity(std::string_view a, std::string_view reference, std::size_t k) {
    if (k < 1) throw std::invalid_argument("kmer_similarity: k must be at least 1");
    auto kmers = [k](std::string_view s) {
        std::unordered_set<std::string_view> out;
        for (std::size_t i = 0; i + k <= s.size(); ++i) out.insert(s.substr(i, k));
        return out;
    };
    const auto sa = kmers(a);
    const auto sb = kmers(reference);
    if (sa.empty() && sb.empty()) return 1.0;
    if (sa.empty() || sb.empty()) return 0.0;
    std::size_t shared = 0;
    for (const auto& w : sa) shared += sb.count(w);
    return static_cast<double>(shared) / static_cast<double>(sa.size() + sb.size() - shared);
}

std::string_view objective_kind_name(ObjectiveKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<ObjectiveKind> objective_kind_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<ObjectiveKind>(i);
    }
    return std::nullopt;
}

void ObjectiveSpec::validate() const {
    const std::string name(objective_kind_name(kind));
    auto check_sequence = [&](const char* field) {
        if (sequence.empty()) throw std::invalid_argument(name + ": '" + field + "' must be a nonempty protein");
        for (char c : sequence) {
            if (!is_amino_acid(c)) throw std::invalid_argument(name + ": '" + field + "' contains '" + c + "'");
        }
    };
    switch (kind) {
    case ObjectiveKind::GravyTarget:
        if (!std::isfinite(target)) throw std::invalid_argument(name + ": target must be finite");
        break;
    case ObjectiveKind::IsoelectricTarget:
        if (!(target >= 0.0 && target <= 14.0)) throw std::invalid_argument(name + ": target must be in [0, 14]");
        pka.validate();
        break;
    case ObjectiveKind::ChargedFraction: break;
    case ObjectiveKind::SaltBridge:
        if (window < 1) throw std::invalid_argument(name + ": window must be at least 1");
        break;
    case ObjectiveKind::MotifScore:
        if (!pattern) throw std::invalid_argument(name + ": missing pattern");
        break;
    case ObjectiveKind::ConsensusSimilarity: check_sequence("target"); break;
    case ObjectiveKind::KmerSimilarity:
        check_sequence("reference");
        if (k < 1) throw std::invalid_argument(name + ": k must be at least 1");
        break;
    case ObjectiveKind::IdentityFloorPenalty:
        check_sequence("source");
        if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument(name + ": tau must be in [0, 1]");
        break;
    }
}

double evaluate_one(std::string_view residues, const ObjectiveSpec& spec) {
    switch (spec.kind) {
    case ObjectiveKind::GravyTarget: return -std::abs(gravy(residues) - spec.target);
    case ObjectiveKind::IsoelectricTarget: return -std::abs(isoelectric_point(residues, spec.pka) - spec.target);
    case ObjectiveKind::ChargedFraction: return charged_fraction(residues);
    case ObjectiveKind::SaltBridge: return salt_bridge_score(residues, spec.window);
    case ObjectiveKind::MotifScore:
        if (!spec.pattern) throw std::invalid_argument("motif_score: missing pattern");
        return best_match_score(*spec.pattern, residues);
    case ObjectiveKind::ConsensusSimilarity: return consensus_similarity(residues, spec.sequence);
    case ObjectiveKind::KmerSimilarity: return kmer_similarity(residues, spec.sequence, spec.k);
    case ObjectiveKind::IdentityFloorPenalty: {
        if (spec.sequence.empty()) throw std::invalid_argument("identity_floor_penalty: missing source protein");
        const double similarity = consensus_similarity(residues, spec.sequence);
        return similarity >= spec.tau ? 0.0 : -(spec.tau - similarity);
    }
    }
    throw std::logic_error("unhandled objective kind");
}

ObjectiveVector evaluate(const Protein& protein, const std::vector<ObjectiveSpec>& specs) {
    if (specs.empty()) throw std::invalid_argument("evaluate: no objectives configured");
    ObjectiveVector values;
    values.reserve(specs.size());
    for (const auto& spec : specs) values.push_back(evaluate_one(protein.residues(), spec));
    return values;
}

} // namespace easme
