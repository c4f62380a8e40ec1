#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "easme/filter.hpp"
#include "easme/genome.hpp"
#include "easme/mutation.hpp"
#include "easme/objectives.hpp"

namespace easme {

enum class RunMode {
    UnknownToKnown,  // random DNA evolved toward a known target
    KnownToUnknown,  // a known gene evolved toward a new phenotype
};

std::string_view run_mode_name(RunMode mode);

// Invalid configuration. field() is the dotted path of the first bad field,
// e.g. "population_size" or "objectives[1].tau".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct RunConfig {
    RunMode mode = RunMode::UnknownToKnown;
    std::uint64_t seed = 1;
    std::size_t population_size = 200;
    std::size_t generations = 100;
    std::size_t initial_length = 0;   // unknown_to_known only
    std::optional<Dna> source_gene;   // known_to_unknown only
    MutationRates rates;
    std::vector<ObjectiveSpec> objectives;
    FilterConfig filter;
    std::size_t tournament_size = 2;
    bool elitism = true;
    // Rank identity_floor_penalty shortfalls feasibility-first (constrained
    // dominance) instead of as an independent Pareto axis only.
    bool constrained_identity_floor = true;
    // Finite stand-in for -infinity given to every component of a rejected
    // individual's objective vector.
    double worst_objective = -1e6;
    std::size_t workers = 1;
    std::string output_dir;

    // Throws ConfigError.
    void validate() const;

    // Fills identity_floor_penalty sources left empty from the translated
    // source gene (known_to_unknown only).
    void resolve_defaults();
};

// JSON reading is strict: unknown keys and wrong types are ConfigErrors.
ObjectiveSpec objective_from_json(const nlohmann::json& j, const std::string& path = "objective");
nlohmann::json objective_to_json(const ObjectiveSpec& spec);
std::vector<ObjectiveSpec> objectives_from_json(const nlohmann::json& j);

FilterConfig filter_from_json(const nlohmann::json& j, const std::string& path = "filter");
nlohmann::json filter_to_json(const FilterConfig& filter);

RunConfig config_from_json(const nlohmann::json& j);
RunConfig config_from_text(std::string_view text);
// Canonical form: every field present, defaults resolved.
nlohmann::json config_to_json(const RunConfig& config);

} // namespace easme
