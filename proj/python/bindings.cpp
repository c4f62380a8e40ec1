#include <cmath>
#include <cstdio>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "easme/config.hpp"
#include "easme/engine.hpp"
#include "easme/filter.hpp"
#include "easme/genome.hpp"
#include "easme/grammar.hpp"
#include "easme/objectives.hpp"
#include "easme/pareto.hpp"

namespace py = pybind11;
using namespace easme;

namespace {

FilterConfig filter_or_default(const std::string& filter_json) {
    if (filter_json.empty()) return {};
    return filter_from_json(nlohmann::json::parse(filter_json));
}

// JSON text with the run history, the deduplicated front and the final population.
std::string run_json(const std::string& config_json, const std::string& output_dir) {
    const RunConfig config = config_from_text(config_json);
    RunResult result;
    {
        py::gil_scoped_release release;
        result = run(config);
        if (!output_dir.empty()) write_run_outputs(result, config, output_dir);
    }
    nlohmann::json history = nlohmann::json::array();
    for (const auto& g : result.history) {
        auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
        nlohmann::json best = nlohmann::json::array(), mean = nlohmann::json::array();
        for (double v : g.best) best.push_back(num(v));
        for (double v : g.mean) mean.push_back(num(v));
        char checksum[17];
        std::snprintf(checksum, sizeof checksum, "%016llx", static_cast<unsigned long long>(g.checksum));
        history.push_back({{"generation", g.generation},
                           {"best", best},
                           {"mean", mean},
                           {"front0_size", g.front0_size},
                           {"reject_fraction", g.reject_fraction},
                           {"checksum", checksum}});
    }
    return nlohmann::json{{"history", history},
                          {"front", pareto_json(result.pareto_front)},
                          {"population", pareto_json(result.population)}}
        .dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of the easme evolution engine";

    static py::exception<SequenceError> sequence_error(m, "SequenceError", PyExc_ValueError);
    static py::exception<PatternError> pattern_error(m, "PatternError", PyExc_ValueError);
    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const SequenceError& e) {
            py::set_error(sequence_error, e.what());
        } catch (const PatternError& e) {
            py::set_error(pattern_error, e.what());
        } catch (const ConfigError& e) {
            py::set_error(config_error, e.what());
        } catch (const nlohmann::json::exception& e) {
            py::set_error(PyExc_ValueError, e.what());
        }
    });

    m.def(
        "translate",
        [](const std::string& dna, std::size_t frame) {
            const auto p = translate(Dna(dna), frame);
            return py::make_tuple(p.residues(), p.truncated());
        },
        py::arg("dna"), py::arg("frame") = 0, "Translate in the given frame; returns (protein, truncated).");
    m.def("validate_dna", [](const std::string& s) { return validate_dna(s).bases(); });
    m.def("validate_protein", [](const std::string& s) { return validate_protein(s).residues(); });

    m.def("gravy", [](const std::string& p) { return gravy(p); });
    m.def("net_charge", [](const std::string& p, double ph) { return net_charge_at_ph(p, ph); }, py::arg("protein"),
          py::arg("ph"));
    m.def("isoelectric_point", [](const std::string& p) { return isoelectric_point(p); });
    m.def("charged_fraction", [](const std::string& p) { return charged_fraction(p); });
    m.def("salt_bridge_score", [](const std::string& p, std::size_t w) { return salt_bridge_score(p, w); },
          py::arg("protein"), py::arg("window") = 4);
    m.def("edit_distance", [](const std::string& a, const std::string& b) { return edit_distance(a, b); });
    m.def("consensus_similarity",
          [](const std::string& a, const std::string& t) { return consensus_similarity(a, t); });
    m.def("kmer_similarity", [](const std::string& a, const std::string& r, std::size_t k) {
        return kmer_similarity(a, r, k);
    }, py::arg("protein"), py::arg("reference"), py::arg("k") = 3);

    m.def("canonical_pattern", [](const std::string& text) { return pattern_to_string(parse_pattern(text)); });
    m.def("scan", [](const std::string& pattern, const std::string& protein) {
        return scan(parse_pattern(pattern), std::string_view(protein));
    }, "Non-overlapping [start, end) matches.");
    m.def("best_match_score", [](const std::string& pattern, const std::string& protein) {
        return best_match_score(parse_pattern(pattern), protein);
    });

    m.def(
        "check",
        [](const std::string& protein, bool truncated, const std::string& filter_json) {
            const auto v = check(Protein(protein, truncated), filter_or_default(filter_json));
            return py::make_tuple(v.accepted, v.reasons);
        },
        py::arg("protein"), py::arg("truncated") = false, py::arg("filter_json") = "",
        "Returns (accepted, reasons).");
    m.def(
        "score",
        [](const std::string& protein, const std::string& objectives_json) {
            return evaluate(validate_protein(protein), objectives_from_json(nlohmann::json::parse(objectives_json)));
        },
        py::arg("protein"), py::arg("objectives_json"));

    m.def("non_dominated_sort", [](const std::vector<ObjectiveVector>& points) { return non_dominated_sort(points); }, py::arg("points"));
    m.def("crowding_distance", &crowding_distance, py::arg("front"));

    m.def("run_json", &run_json, py::arg("config_json"), py::arg("output_dir") = "");
    m.def("normalize_config", [](const std::string& text) { return config_to_json(config_from_text(text)).dump(); });
}
