#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "easme/config.hpp"
#include "easme/filter.hpp"
#include "easme/genome.hpp"
#include "easme/objectives.hpp"
#include "easme/rng.hpp"

namespace easme {

// Reason recorded when an objective could not be computed for an accepted
// protein (e.g. an empty protein with min_length 0).
inline constexpr std::string_view kEvaluationFailure = "evaluation";

struct Individual {
    Dna genome;
    Protein protein;  // translate(genome, 0)
    ObjectiveVector objectives;
    FilterVerdict verdict;
    std::size_t rank = 0;
    double crowding = 0.0;
    // Shortfall below the identity floor when it is enforced as a constraint.
    double violation = 0.0;
    std::uint64_t lineage_id = 0;  // index of the generation-0 founder
};

using Population = std::vector<Individual>;

struct GenerationRecord {
    std::size_t generation = 0;
    // Over accepted individuals; NaN when none were accepted.
    std::vector<double> best;
    std::vector<double> mean;
    std::size_t front0_size = 0;
    double reject_fraction = 0.0;
    std::uint64_t checksum = 0;
};

using RunHistory = std::vector<GenerationRecord>;

struct RunResult {
    Population population;
    Population pareto_front;  // distinct rank-0 genomes, in population order
    RunHistory history;
};

using GenerationObserver = std::function<void(const GenerationRecord&)>;

// Translates, filters and scores one genome. Rejected genomes get the
// configured worst-case vector.
Individual evaluate_genome(Dna genome, const RunConfig& config, std::uint64_t lineage_id = 0);

// Recomputes rank (front index) and crowding distance for every member,
// ranking by constrained dominance on each member's violation.
void assign_rank_and_crowding(Population& population);

// Index of the tournament winner among `tournament_size` uniform draws with
// replacement: lowest rank, then larger crowding, then lower index.
std::size_t tournament_select(std::span<const Individual> population, std::size_t tournament_size, RngStream& rng);

// Elitist NSGA-II environmental selection of `target_size` members from a
// ranked pool: whole fronts in order, the last one by descending crowding
// (ties by lower index). Returns pool indices in ascending order.
std::vector<std::size_t> select_survivors(const Population& pool, std::size_t target_size);

Population initial_population(const RunConfig& config);

// One generation: tournament pairs, recombination, mutation, evaluation and
// truncation of parents + offspring back to population_size. Offspring whose
// genome already occurs in the pool rank behind all distinct genomes.
Population step_generation(const Population& population, const RunConfig& config, std::size_t generation);

// Order-independent hash of the multiset of genomes.
std::uint64_t population_checksum(const Population& population);

GenerationRecord summarize(const Population& population, std::size_t generation);

RunResult run(const RunConfig& config, const GenerationObserver& observer = {});

// config_echo.json, history.csv, final_dna.fasta, final_proteins.fasta and
// pareto.json under `directory` (created if absent).
void write_run_outputs(const RunResult& result, const RunConfig& config, const std::filesystem::path& directory);

std::string history_csv(const RunHistory& history, std::size_t objective_count);
nlohmann::json pareto_json(const Population& front);

// Fixed "%.10g" rendering used in every text output; "nan" for NaN.
std::string format_number(double value);

} // namespace easme
