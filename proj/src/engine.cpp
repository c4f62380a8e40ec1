#include "easme/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "easme/fasta.hpp"
#include "easme/mutation.hpp"
#include "easme/pareto.hpp"

namespace easme {

namespace {

// Stream ids for parent selection live above every per-child id.
constexpr std::uint64_t kSelectionStreamBase = std::uint64_t{1} << 40;

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index writes
// only its own slot, so results do not depend on the worker count.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                const std::size_t end = std::min(n, (w + 1) * chunk);
                for (std::size_t i = w * chunk; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t finalize(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDULL;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ULL;
    return x ^ (x >> 33);
}

bool better_in_tournament(const Individual& a, std::size_t ia, const Individual& b, std::size_t ib) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.crowding != b.crowding) return a.crowding > b.crowding;
    return ia < ib;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

} // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

Individual evaluate_genome(Dna genome, const RunConfig& config, std::uint64_t lineage_id) {
    Individual ind;
    ind.protein = translate(genome, 0);
    ind.genome = std::move(genome);
    ind.lineage_id = lineage_id;
    ind.verdict = check(ind.protein, config.filter);
    if (ind.verdict.accepted) {
        try {
            ind.objectives = evaluate(ind.protein, config.objectives);
        } catch (const std::invalid_argument&) {
            ind.verdict.accepted = false;
            ind.verdict.reasons.emplace_back(kEvaluationFailure);
        }
    }
    if (!ind.verdict.accepted) ind.objectives.assign(config.objectives.size(), config.worst_objective);
    if (config.constrained_identity_floor) {
        for (std::size_t i = 0; i < config.objectives.size(); ++i) {
            if (config.objectives[i].kind == ObjectiveKind::IdentityFloorPenalty)
                ind.violation += std::max(0.0, -ind.objectives[i]);
        }
    }
    return ind;
}

void assign_rank_and_crowding(Population& population) {
    if (population.empty()) return;
    std::vector<ObjectiveVector> points;
    std::vector<double> violations;
    points.reserve(population.size());
    violations.reserve(population.size());
    for (const auto& ind : population) {
        points.push_back(ind.objectives);
        violations.push_back(ind.violation);
    }
    const auto fronts = non_dominated_sort(points, violations);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        std::vector<ObjectiveVector> members;
        members.reserve(fronts[f].size());
        for (std::size_t i : fronts[f]) members.push_back(points[i]);
        const auto distance = crowding_distance(members);
        for (std::size_t k = 0; k < fronts[f].size(); ++k) {
            population[fronts[f][k]].rank = f;
            population[fronts[f][k]].crowding = distance[k];
        }
    }
}

std::size_t tournament_select(std::span<const Individual> population, std::size_t tournament_size, RngStream& rng) {
    if (population.empty()) throw std::invalid_argument("tournament_select: empty population");
    std::size_t winner = static_cast<std::size_t>(rng.uniform_below(population.size()));
    for (std::size_t draw = 1; draw < tournament_size; ++draw) {
        const auto challenger = static_cast<std::size_t>(rng.uniform_below(population.size()));
        if (better_in_tournament(population[challenger], challenger, population[winner], winner)) winner = challenger;
    }
    return winner;
}

std::vector<std::size_t> select_survivors(const Population& pool, std::size_t target_size) {
    if (pool.size() <= target_size) {
        std::vector<std::size_t> all(pool.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        return all;
    }
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pool[a].rank != pool[b].rank) return pool[a].rank < pool[b].rank;
        return pool[a].crowding > pool[b].crowding;
    });
    order.resize(target_size);
    std::sort(order.begin(), order.end());
    return order;
}

Population initial_population(const RunConfig& config) {
    Population population(config.population_size);
    parallel_for(config.population_size, config.workers, [&](std::size_t i) {
        RngStream rng = derive_rng_stream(config.seed, 0, i);
        Dna genome = config.mode == RunMode::UnknownToKnown
                         ? random_dna(config.initial_length, rng)
                         : mutate_individual(*config.source_gene, config.rates, rng);
        population[i] = evaluate_genome(std::move(genome), config, i);
    });
    assign_rank_and_crowding(population);
    return population;
}

Population step_generation(const Population& population, const RunConfig& config, std::size_t generation) {
    const std::size_t n = population.size();
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("step_generation: population size must be even and positive");

    struct Child {
        Dna genome;
        std::uint64_t lineage = 0;
    };
    std::vector<Child> children(n);
    for (std::size_t pair = 0; pair < n / 2; ++pair) {
        RngStream rng = derive_rng_stream(config.seed, generation, kSelectionStreamBase + pair);
        const std::size_t a = tournament_select(population, config.tournament_size, rng);
        const std::size_t b = tournament_select(population, config.tournament_size, rng);
        auto [first, second] = rng.bernoulli(config.rates.crossover_prob)
                                   ? recombine(population[a].genome, population[b].genome, rng,
                                               config.rates.codon_aligned_crossover)
                                   : std::pair{population[a].genome, population[b].genome};
        children[2 * pair] = {std::move(first), population[a].lineage_id};
        children[2 * pair + 1] = {std::move(second), population[b].lineage_id};
    }

    Population offspring(n);
    parallel_for(n, config.workers, [&](std::size_t c) {
        RngStream rng = derive_rng_stream(config.seed, generation, c);
        offspring[c] = evaluate_genome(mutate_individual(children[c].genome, config.rates, rng), config, children[c].lineage);
    });

    if (!config.elitism) {
        assign_rank_and_crowding(offspring);
        return offspring;
    }

    // Offspring precede parents in the pool so that equal-ranked ties go to
    // the newer genome; parents are never dropped as duplicates.
    std::unordered_set<std::string> seen;
    for (const auto& ind : population) seen.insert(ind.genome.bases());
    Population pool;
    Population duplicates;
    pool.reserve(2 * n);
    for (auto& ind : offspring) {
        if (seen.insert(ind.genome.bases()).second) pool.push_back(std::move(ind));
        else duplicates.push_back(std::move(ind));
    }
    pool.insert(pool.end(), population.begin(), population.end());

    Population next;
    next.reserve(n);
    assign_rank_and_crowding(pool);
    for (std::size_t i : select_survivors(pool, n)) next.push_back(std::move(pool[i]));
    for (std::size_t i = 0; next.size() < n; ++i) next.push_back(std::move(duplicates[i]));
    assign_rank_and_crowding(next);
    return next;
}

std::uint64_t population_checksum(const Population& population) {
    std::uint64_t sum = 0;
    for (const auto& ind : population) sum += finalize(fnv1a(ind.genome.bases()));
    return sum;
}

GenerationRecord summarize(const Population& population, std::size_t generation) {
    GenerationRecord rec;
    rec.generation = generation;
    const std::size_t m = population.empty() ? 0 : population.front().objectives.size();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    rec.best.assign(m, nan);
    rec.mean.assign(m, nan);
    std::vector<double> sum(m, 0.0);
    std::size_t accepted = 0;
    for (const auto& ind : population) {
        if (ind.rank == 0) ++rec.front0_size;
        if (!ind.verdict.accepted) continue;
        ++accepted;
        for (std::size_t i = 0; i < m; ++i) {
            const double v = ind.objectives[i];
            sum[i] += v;
            if (std::isnan(rec.best[i]) || v > rec.best[i]) rec.best[i] = v;
        }
    }
    if (accepted > 0) {
        for (std::size_t i = 0; i < m; ++i) rec.mean[i] = sum[i] / static_cast<double>(accepted);
    }
    rec.reject_fraction =
        population.empty() ? 0.0 : static_cast<double>(population.size() - accepted) / static_cast<double>(population.size());
    rec.checksum = population_checksum(population);
    return rec;
}

RunResult run(const RunConfig& input, const GenerationObserver& observer) {
    RunConfig config = input;
    config.resolve_defaults();
    config.validate();

    RunResult result;
    result.population = initial_population(config);
    result.history.push_back(summarize(result.population, 0));
    if (observer) observer(result.history.back());
    for (std::size_t g = 1; g <= config.generations; ++g) {
        result.population = step_generation(result.population, config, g);
        result.history.push_back(summarize(result.population, g));
        if (observer) observer(result.history.back());
    }

    std::unordered_set<std::string> seen;
    for (const auto& ind : result.population) {
        if (ind.rank == 0 && seen.insert(ind.genome.bases()).second) result.pareto_front.push_back(ind);
    }
    return result;
}

std::string history_csv(const RunHistory& history, std::size_t objective_count) {
    std::string out = "generation";
    for (std::size_t i = 0; i < objective_count; ++i) {
        out += ",best_" + std::to_string(i) + ",mean_" + std::to_string(i);
    }
    out += ",front0_size,reject_frac,checksum\n";
    for (const auto& rec : history) {
        out += std::to_string(rec.generation);
        for (std::size_t i = 0; i < objective_count; ++i) {
            out += ',' + format_number(rec.best[i]) + ',' + format_number(rec.mean[i]);
        }
        char checksum[17];
        std::snprintf(checksum, sizeof checksum, "%016llx", static_cast<unsigned long long>(rec.checksum));
        out += ',' + std::to_string(rec.front0_size) + ',' + format_number(rec.reject_fraction) + ',' + checksum + '\n';
    }
    return out;
}

nlohmann::json pareto_json(const Population& front) {
    auto out = nlohmann::json::array();
    for (const auto& ind : front) {
        out.push_back({{"dna", ind.genome.bases()},
                       {"protein", ind.protein.residues()},
                       {"objectives", ind.objectives},
                       {"rank", 0}});
    }
    return out;
}

void write_run_outputs(const RunResult& result, const RunConfig& config, const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);
    RunConfig echo = config;
    echo.resolve_defaults();
    write_file(directory / "config_echo.json", config_to_json(echo).dump(2) + "\n");
    write_file(directory / "history.csv", history_csv(result.history, config.objectives.size()));

    std::vector<FastaRecord> dna, proteins;
    for (std::size_t i = 0; i < result.population.size(); ++i) {
        const auto& ind = result.population[i];
        const std::string id = "ind_" + std::to_string(i);
        dna.push_back({id, ind.genome.bases()});
        proteins.push_back({ind.protein.truncated() ? id + " truncated=true" : id, ind.protein.residues()});
    }
    write_file(directory / "final_dna.fasta", write_fasta(dna));
    write_file(directory / "final_proteins.fasta", write_fasta(proteins));
    write_file(directory / "pareto.json", pareto_json(result.pareto_front).dump(2) + "\n");
}

} // namespace easme
