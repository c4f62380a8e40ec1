#include "easme/config.hpp"

#include <cmath>
#include <set>

namespace easme {

using nlohmann::json;

namespace {

// Reads fields of one JSON object, remembering which keys were consumed so
// that leftovers can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected a JSON object");
    }

    std::string field(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    bool has(std::string_view key) {
        seen_.insert(std::string(key));
        return j_.contains(std::string(key));
    }

    const json& at(std::string_view key) {
        if (!has(key)) throw ConfigError(field(key), "missing required field");
        return j_.at(std::string(key));
    }

    double number(std::string_view key, double fallback) {
        if (!has(key)) return fallback;
        return number(key);
    }
    double number(std::string_view key) {
        const auto& v = at(key);
        if (!v.is_number()) throw ConfigError(field(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(field(key), "expected a finite number");
        return d;
    }

    std::uint64_t unsigned_integer(std::string_view key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        return unsigned_integer(key);
    }
    std::uint64_t unsigned_integer(std::string_view key) {
        const auto& v = at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer()) throw ConfigError(field(key), "expected a non-negative integer");
        throw ConfigError(field(key), "expected an integer");
    }

    bool boolean(std::string_view key, bool fallback) {
        if (!has(key)) return fallback;
        const auto& v = at(key);
        if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
        return v.get<bool>();
    }

    std::string string(std::string_view key) {
        const auto& v = at(key);
        if (!v.is_string()) throw ConfigError(field(key), "expected a string");
        return v.get<std::string>();
    }
    std::string string(std::string_view key, std::string fallback) {
        if (!has(key)) return fallback;
        return string(key);
    }

    void reject_unknown() const {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.count(key)) throw ConfigError(field(key), "unknown field");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

std::string protein_field(ObjectReader& r, std::string_view key) {
    std::string s = r.string(key);
    try {
        return validate_protein(s).residues();
    } catch (const SequenceError& e) {
        throw ConfigError(r.field(key), e.what());
    }
}

PkaSet pka_from_json(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    PkaSet p;
    p.n_term = r.number("n_term", p.n_term);
    p.c_term = r.number("c_term", p.c_term);
    p.cys = r.number("cys", p.cys);
    p.asp = r.number("asp", p.asp);
    p.glu = r.number("glu", p.glu);
    p.his = r.number("his", p.his);
    p.lys = r.number("lys", p.lys);
    p.arg = r.number("arg", p.arg);
    p.tyr = r.number("tyr", p.tyr);
    r.reject_unknown();
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
    return p;
}

json pka_to_json(const PkaSet& p) {
    return {{"n_term", p.n_term}, {"c_term", p.c_term}, {"cys", p.cys}, {"asp", p.asp}, {"glu", p.glu},
            {"his", p.his},       {"lys", p.lys},       {"arg", p.arg}, {"tyr", p.tyr}};
}

MutationRates rates_from_json(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    MutationRates m;
    m.point_rate = r.number("point_rate", m.point_rate);
    m.insertion_rate = r.number("insertion_rate", m.insertion_rate);
    m.deletion_rate = r.number("deletion_rate", m.deletion_rate);
    m.kappa = r.number("kappa", m.kappa);
    m.indel_max = r.unsigned_integer("indel_max", m.indel_max);
    m.crossover_prob = r.number("crossover_prob", m.crossover_prob);
    m.codon_aligned_crossover = r.boolean("codon_aligned_crossover", m.codon_aligned_crossover);
    r.reject_unknown();
    return m;
}

json rates_to_json(const MutationRates& m) {
    return {{"point_rate", m.point_rate},       {"insertion_rate", m.insertion_rate},
            {"deletion_rate", m.deletion_rate}, {"kappa", m.kappa},
            {"indel_max", m.indel_max},         {"crossover_prob", m.crossover_prob},
            {"codon_aligned_crossover", m.codon_aligned_crossover}};
}

} // namespace

std::string_view run_mode_name(RunMode mode) {
    return mode == RunMode::UnknownToKnown ? "unknown_to_known" : "known_to_unknown";
}

ObjectiveSpec objective_from_json(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    ObjectiveSpec spec;
    const std::string kind = r.string("kind");
    const auto parsed = objective_kind_from_name(kind);
    if (!parsed) throw ConfigError(r.field("kind"), "unknown objective kind '" + kind + "'");
    spec.kind = *parsed;
    switch (spec.kind) {
    case ObjectiveKind::GravyTarget: spec.target = r.number("target"); break;
    case ObjectiveKind::IsoelectricTarget:
        spec.target = r.number("target");
        if (r.has("pka")) spec.pka = pka_from_json(r.at("pka"), r.field("pka"));
        break;
    case ObjectiveKind::ChargedFraction: break;
    case ObjectiveKind::SaltBridge: spec.window = r.unsigned_integer("window", spec.window); break;
    case ObjectiveKind::MotifScore: {
        const std::string text = r.string("pattern");
        try {
            spec.pattern = parse_pattern(text);
        } catch (const PatternError& e) {
            throw ConfigError(r.field("pattern"), e.what());
        }
        break;
    }
    case ObjectiveKind::ConsensusSimilarity: spec.sequence = protein_field(r, "target"); break;
    case ObjectiveKind::KmerSimilarity:
        spec.sequence = protein_field(r, "reference");
        spec.k = r.unsigned_integer("k", spec.k);
        break;
    case ObjectiveKind::IdentityFloorPenalty:
        spec.tau = r.number("tau", spec.tau);
        if (r.has("source")) spec.sequence = protein_field(r, "source");
        break;
    }
    r.reject_unknown();
    try {
        // The identity floor source may be filled in later from the source gene.
        if (!(spec.kind == ObjectiveKind::IdentityFloorPenalty && spec.sequence.empty())) spec.validate();
        else if (!(spec.tau >= 0.0 && spec.tau <= 1.0)) throw ConfigError(r.field("tau"), "must be in [0, 1]");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
    return spec;
}

json objective_to_json(const ObjectiveSpec& spec) {
    json j{{"kind", std::string(objective_kind_name(spec.kind))}};
    switch (spec.kind) {
    case ObjectiveKind::GravyTarget: j["target"] = spec.target; break;
    case ObjectiveKind::IsoelectricTarget:
        j["target"] = spec.target;
        j["pka"] = pka_to_json(spec.pka);
        break;
    case ObjectiveKind::ChargedFraction: break;
    case ObjectiveKind::SaltBridge: j["window"] = spec.window; break;
    case ObjectiveKind::MotifScore: j["pattern"] = spec.pattern ? pattern_to_string(*spec.pattern) : ""; break;
    case ObjectiveKind::ConsensusSimilarity: j["target"] = spec.sequence; break;
    case ObjectiveKind::KmerSimilarity:
        j["reference"] = spec.sequence;
        j["k"] = spec.k;
        break;
    case ObjectiveKind::IdentityFloorPenalty:
        j["tau"] = spec.tau;
        if (!spec.sequence.empty()) j["source"] = spec.sequence;
        break;
    }
    return j;
}

std::vector<ObjectiveSpec> objectives_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("objectives", "expected a JSON array");
    if (j.empty()) throw ConfigError("objectives", "at least one objective is required");
    std::vector<ObjectiveSpec> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(objective_from_json(j[i], "objectives[" + std::to_string(i) + "]"));
    return out;
}

FilterConfig filter_from_json(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    FilterConfig f;
    f.min_length = r.unsigned_integer("min_length", f.min_length);
    f.max_length = r.unsigned_integer("max_length", f.max_length);
    f.reject_truncated = r.boolean("reject_truncated", f.reject_truncated);
    f.max_homopolymer = r.unsigned_integer("max_homopolymer", f.max_homopolymer);
    f.min_entropy = r.number("min_entropy", f.min_entropy);
    if (r.has("gravy_bounds")) {
        const auto& b = r.at("gravy_bounds");
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
            throw ConfigError(r.field("gravy_bounds"), "expected [low, high]");
        f.gravy_min = b[0].get<double>();
        f.gravy_max = b[1].get<double>();
    }
    f.require_start_met = r.boolean("require_start_met", f.require_start_met);
    r.reject_unknown();
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
    return f;
}

json filter_to_json(const FilterConfig& f) {
    return {{"min_length", f.min_length},
            {"max_length", f.max_length},
            {"reject_truncated", f.reject_truncated},
            {"max_homopolymer", f.max_homopolymer},
            {"min_entropy", f.min_entropy},
            {"gravy_bounds", {f.gravy_min, f.gravy_max}},
            {"require_start_met", f.require_start_met}};
}

void RunConfig::validate() const {
    if (population_size < 4) throw ConfigError("population_size", "must be at least 4");
    if (population_size % 2 != 0) throw ConfigError("population_size", "must be even");
    if (mode == RunMode::UnknownToKnown) {
        if (source_gene) throw ConfigError("source_gene", "not allowed in unknown_to_known mode");
        if (initial_length < 1) throw ConfigError("initial_length", "must be a positive nucleotide count");
    } else {
        if (initial_length != 0) throw ConfigError("initial_length", "not allowed in known_to_unknown mode");
        if (!source_gene || source_gene->empty()) throw ConfigError("source_gene", "required in known_to_unknown mode");
    }
    try {
        rates.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("rates", e.what());
    }
    if (objectives.empty()) throw ConfigError("objectives", "at least one objective is required");
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        try {
            objectives[i].validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("objectives[" + std::to_string(i) + "]", e.what());
        }
    }
    try {
        filter.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("filter", e.what());
    }
    if (tournament_size < 2) throw ConfigError("tournament_size", "must be at least 2");
    if (!std::isfinite(worst_objective)) throw ConfigError("worst_objective", "must be finite");
    if (workers < 1) throw ConfigError("workers", "must be at least 1");
}

void RunConfig::resolve_defaults() {
    if (mode != RunMode::KnownToUnknown || !source_gene) return;
    const std::string source = translate(*source_gene, 0).residues();
    for (auto& spec : objectives) {
        if (spec.kind == ObjectiveKind::IdentityFloorPenalty && spec.sequence.empty()) spec.sequence = source;
    }
}

RunConfig config_from_json(const json& j) {
    ObjectReader r(j, "");
    RunConfig c;
    const std::string mode = r.string("mode");
    if (mode == "unknown_to_known") c.mode = RunMode::UnknownToKnown;
    else if (mode == "known_to_unknown") c.mode = RunMode::KnownToUnknown;
    else throw ConfigError("mode", "expected \"unknown_to_known\" or \"known_to_unknown\"");
    c.seed = r.unsigned_integer("seed", c.seed);
    c.population_size = r.unsigned_integer("population_size", c.population_size);
    c.generations = r.unsigned_integer("generations", c.generations);
    c.initial_length = r.unsigned_integer("initial_length", 0);
    if (r.has("source_gene")) {
        try {
            c.source_gene = validate_dna(r.string("source_gene"));
        } catch (const SequenceError& e) {
            throw ConfigError("source_gene", e.what());
        }
    }
    if (r.has("rates")) c.rates = rates_from_json(r.at("rates"), "rates");
    c.objectives = objectives_from_json(r.at("objectives"));
    if (r.has("filter")) c.filter = filter_from_json(r.at("filter"), "filter");
    c.tournament_size = r.unsigned_integer("tournament_size", c.tournament_size);
    c.elitism = r.boolean("elitism", c.elitism);
    c.constrained_identity_floor = r.boolean("constrained_identity_floor", c.constrained_identity_floor);
    c.worst_objective = r.number("worst_objective", c.worst_objective);
    c.workers = r.unsigned_integer("workers", c.workers);
    c.output_dir = r.string("output_dir", c.output_dir);
    r.reject_unknown();
    c.resolve_defaults();
    c.validate();
    return c;
}

RunConfig config_from_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
    json objectives = json::array();
    for (const auto& spec : c.objectives) objectives.push_back(objective_to_json(spec));
    json j{{"mode", std::string(run_mode_name(c.mode))},
           {"seed", c.seed},
           {"population_size", c.population_size},
           {"generations", c.generations},
           {"rates", rates_to_json(c.rates)},
           {"objectives", objectives},
           {"filter", filter_to_json(c.filter)},
           {"tournament_size", c.tournament_size},
           {"elitism", c.elitism},
           {"constrained_identity_floor", c.constrained_identity_floor},
           {"worst_objective", c.worst_objective},
           {"workers", c.workers},
           {"output_dir", c.output_dir}};
    if (c.mode == RunMode::UnknownToKnown) j["initial_length"] = c.initial_length;
    else if (c.source_gene) j["source_gene"] = c.source_gene->bases();
    return j;
}

} // namespace easme
