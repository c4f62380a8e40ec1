#include "cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "easme/config.hpp"
#include "easme/engine.hpp"
#include "easme/fasta.hpp"
#include "easme/filter.hpp"
#include "easme/genome.hpp"
#include "easme/objectives.hpp"

namespace easme::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Signals a domain error whose message has already been composed.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const fs::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw DomainError(path.string() + ": malformed JSON: " + e.what());
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string fixed6(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string join_numbers(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += format_number(values[i]);
    }
    return s;
}

// ---- run -------------------------------------------------------------------

struct RunOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> workers;
};

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = config_from_text(read_file(opt.config));
    } catch (const ConfigError& e) {
        err << "error: invalid config field '" << e.field() << "': " << e.what() << "\n";
        return kExitDomain;
    }
    if (opt.seed) config.seed = *opt.seed;
    if (opt.out) config.output_dir = *opt.out;
    if (opt.workers) config.workers = *opt.workers;
    if (config.output_dir.empty()) {
        err << "error: invalid config field 'output_dir': required (set it in the config or pass --out)\n";
        return kExitDomain;
    }

    const fs::path dir = config.output_dir;
    const bool existed = fs::exists(dir);
    try {
        const auto result = run(config, [&](const GenerationRecord& r) {
            char head[96];
            std::snprintf(head, sizeof head, "gen %zu front0=%zu reject=%.3f", r.generation, r.front0_size,
                          r.reject_fraction);
            out << head << " best=[" << join_numbers(r.best) << "] mean=[" << join_numbers(r.mean) << "]\n";
        });
        write_run_outputs(result, config, dir);
    } catch (const std::exception& e) {
        std::error_code ec;
        if (!existed) fs::remove_all(dir, ec);
        if (const auto* ce = dynamic_cast<const ConfigError*>(&e))
            err << "error: invalid config field '" << ce->field() << "': " << e.what() << "\n";
        else
            err << "error: run failed: " << e.what() << "\n";
        return kExitDomain;
    }
    out << "wrote " << dir.string() << "\n";
    return kExitOk;
}

// ---- score -----------------------------------------------------------------

struct ScoreOptions {
    std::optional<std::string> protein;
    std::optional<std::string> fasta;
    std::string objectives;
    std::optional<std::string> filter;
};

std::vector<std::string> objective_headers(const std::vector<ObjectiveSpec>& specs) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        std::string name(objective_kind_name(specs[i].kind));
        for (std::size_t j = 0; j < specs.size(); ++j) {
            if (j != i && specs[j].kind == specs[i].kind) {
                name += "_" + std::to_string(i);
                break;
            }
        }
        names.push_back(name);
    }
    return names;
}

int cmd_score(const ScoreOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<ObjectiveSpec> specs;
    FilterConfig filter;
    try {
        specs = objectives_from_json(read_json(opt.objectives));
        if (opt.filter) filter = filter_from_json(read_json(*opt.filter));
    } catch (const ConfigError& e) {
        err << "error: invalid objective/filter field '" << e.field() << "': " << e.what() << "\n";
        return kExitDomain;
    }

    std::vector<std::pair<std::string, Protein>> inputs;
    if (opt.protein) {
        try {
            inputs.emplace_back("protein", validate_protein(*opt.protein));
        } catch (const SequenceError& e) {
            err << "error: sequence 'protein' has invalid residue '" << e.character() << "' at position "
                << e.position() << "\n";
            return kExitDomain;
        }
    } else {
        std::vector<FastaRecord> records;
        try {
            records = parse_fasta(read_file(*opt.fasta), SequenceAlphabet::Protein);
        } catch (const FastaError& e) {
            err << "error: sequence '" << e.record_id() << "': " << e.what() << "\n";
            return kExitDomain;
        }
        for (auto& r : records) inputs.emplace_back(r.id, Protein(r.sequence));
    }

    out << "id";
    for (const auto& name : objective_headers(specs)) out << ',' << name;
    out << ",accepted,reasons\n";
    for (const auto& [id, protein] : inputs) {
        out << csv_field(id);
        for (const auto& spec : specs) {
            double v;
            try {
                v = evaluate_one(protein.residues(), spec);
            } catch (const std::invalid_argument&) {
                v = std::nan("");
            }
            out << ',' << fixed6(v);
        }
        const auto verdict = check(protein, filter);
        std::string reasons;
        for (std::size_t i = 0; i < verdict.reasons.size(); ++i) {
            if (i) reasons += ';';
            reasons += verdict.reasons[i];
        }
        out << ',' << (verdict.accepted ? "true" : "false") << ',' << reasons << "\n";
    }
    return kExitOk;
}

// ---- translate ---------------------------------------------------------------

int cmd_translate(const std::string& fasta, std::size_t frame, std::ostream& out, std::ostream& err) {
    std::vector<FastaRecord> records;
    try {
        records = parse_fasta(read_file(fasta), SequenceAlphabet::Dna);
    } catch (const FastaError& e) {
        err << "error: sequence '" << e.record_id() << "': " << e.what() << "\n";
        return kExitDomain;
    }
    std::vector<FastaRecord> proteins;
    for (const auto& r : records) {
        const Protein p = translate(Dna(r.sequence), frame);
        proteins.push_back({p.truncated() ? r.id + " truncated=true" : r.id, p.residues()});
    }
    out << write_fasta(proteins);
    return kExitOk;
}

// ---- pareto ------------------------------------------------------------------

struct ParetoOptions {
    std::string run_dir;
    std::optional<std::string> svg;
    std::optional<std::string> objectives;
};

std::size_t count_objectives(const HistoryTable& history) {
    std::size_t m = 0;
    while (std::find(history.header.begin(), history.header.end(), "best_" + std::to_string(m)) !=
           history.header.end())
        ++m;
    return m;
}

// "i,j" -> pair; nullopt on malformed text.
std::optional<std::pair<std::size_t, std::size_t>> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return std::nullopt;
    auto parse_index = [](const std::string& s) -> std::optional<std::size_t> {
        if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        return static_cast<std::size_t>(std::stoul(s));
    };
    const auto a = parse_index(text.substr(0, comma));
    const auto b = parse_index(text.substr(comma + 1));
    if (!a || !b) return std::nullopt;
    return std::make_pair(*a, *b);
}

int cmd_pareto(const ParetoOptions& opt, std::ostream& out, std::ostream& err) {
    const fs::path dir = opt.run_dir;
    json front;
    HistoryTable history;
    try {
        front = read_json(dir / "pareto.json");
        history = parse_history_csv(read_file(dir / "history.csv"));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }

    const std::size_t m = count_objectives(history);
    if (!front.is_array()) {
        err << "error: pareto.json: expected an array\n";
        return kExitDomain;
    }
    for (std::size_t i = 0; i < front.size(); ++i) {
        const auto& e = front[i];
        if (!e.is_object() || !e.contains("objectives") || !e["objectives"].is_array() ||
            e["objectives"].size() != m || !e.contains("protein") || !e["protein"].is_string()) {
            err << "error: pareto.json: entry " << i << " does not match " << m << " objectives in history.csv\n";
            return kExitDomain;
        }
    }

    std::size_t x = 0, y = m >= 2 ? 1 : 0;
    if (opt.objectives) {
        const auto pair = parse_pair(*opt.objectives);
        if (!pair) {
            err << "error: --objectives expects two indices like 0,1\n";
            return kExitUsage;
        }
        std::tie(x, y) = *pair;
    }
    if (x >= m || y >= m) {
        err << "error: objective index out of range; run has " << m << " objectives\n";
        return kExitDomain;
    }

    out << "index";
    for (std::size_t k = 0; k < m; ++k) out << ",obj_" << k;
    out << ",length,protein\n";
    for (std::size_t i = 0; i < front.size(); ++i) {
        out << i;
        for (const auto& v : front[i]["objectives"]) out << ',' << format_number(v.is_number() ? v.get<double>() : NAN);
        const auto protein = front[i]["protein"].get<std::string>();
        out << ',' << protein.size() << ',' << protein << "\n";
    }

    if (opt.svg) {
        std::ofstream file(*opt.svg, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << *opt.svg << "\n";
            return kExitDomain;
        }
        file << render_pareto_svg(front, history, x, y);
        if (!file) {
            err << "error: cannot write " << *opt.svg << "\n";
            return kExitDomain;
        }
    }
    return kExitOk;
}

} // namespace

HistoryTable parse_history_csv(const std::string& text) {
    HistoryTable table;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (table.header.empty()) {
            if (cells.empty() || cells[0] != "generation") throw DomainError("history.csv: missing header");
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) throw DomainError("history.csv: ragged row");
        std::vector<double> row;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const char* s = cells[i].c_str();
            char* end = nullptr;
            const double v = table.header[i] == "checksum" ? static_cast<double>(std::strtoull(s, &end, 16))
                                                           : std::strtod(s, &end);
            if (end == s || *end != '\0') throw DomainError("history.csv: bad number '" + cells[i] + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw DomainError("history.csv: empty file");
    return table;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evolve, score and inspect DNA/protein populations", "easme"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run_cmd = app.add_subcommand("run", "Run an evolution from a JSON RunConfig");
    run_cmd->add_option("--config", run_opt.config, "RunConfig JSON file")->required();
    run_cmd->add_option("--seed", run_opt.seed, "Override the master seed");
    run_cmd->add_option("--out", run_opt.out, "Override output_dir");
    run_cmd->add_option("--workers", run_opt.workers, "Override evaluation worker count")
        ->check(CLI::PositiveNumber);

    ScoreOptions score_opt;
    auto* score_cmd = app.add_subcommand("score", "Score proteins against a list of objectives");
    auto* protein_flag = score_cmd->add_option("--protein", score_opt.protein, "Protein sequence");
    auto* fasta_flag = score_cmd->add_option("--fasta", score_opt.fasta, "Protein FASTA file");
    protein_flag->excludes(fasta_flag);
    score_cmd->add_option("--objectives", score_opt.objectives, "JSON list of objective specs")->required();
    score_cmd->add_option("--filter", score_opt.filter, "Filter config JSON (defaults otherwise)");

    std::string translate_fasta;
    std::size_t frame = 0;
    auto* translate_cmd = app.add_subcommand("translate", "Translate DNA FASTA to protein FASTA");
    translate_cmd->add_option("--fasta", translate_fasta, "DNA FASTA file")->required();
    translate_cmd->add_option("--frame", frame, "Reading frame offset")->check(CLI::Range(0, 2));

    ParetoOptions pareto_opt;
    auto* pareto_cmd = app.add_subcommand("pareto", "Report the Pareto front of a finished run");
    pareto_cmd->add_option("--run", pareto_opt.run_dir, "Run output directory")->required();
    pareto_cmd->add_option("--svg", pareto_opt.svg, "Write a plot to this SVG file");
    pareto_cmd->add_option("--objectives", pareto_opt.objectives, "Objective pair i,j for the scatter plot");

    std::vector<std::string> argv_storage{"easme"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (score_cmd->parsed() && !score_opt.protein && !score_opt.fasta)
            throw CLI::RequiredError("score needs --protein or --fasta");
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_opt, out, err);
        if (score_cmd->parsed()) return cmd_score(score_opt, out, err);
        if (translate_cmd->parsed()) return cmd_translate(translate_fasta, frame, out, err);
        return cmd_pareto(pareto_opt, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

} // namespace easme::cli
