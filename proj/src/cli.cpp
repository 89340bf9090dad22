#include "cayleytones/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cayleytones/audio_synth.hpp"
#include "cayleytones/cayley_graph.hpp"
#include "cayleytones/counterpoint.hpp"
#include "cayleytones/music_system.hpp"
#include "cayleytones/serialization.hpp"

namespace cayleytones::cli {

namespace {

struct Config {
    int p = 4;
    int q = 3;
    std::optional<int> n;
    double s = 2.0;
    double f0 = 440.0;
    bool json = false;
    bool pretty = false;
    unsigned threads = 1;
};

std::string join(const std::vector<int>& v, const char* sep = " ")
{
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
    return out.str();
}

std::string dump(const json& j, bool pretty)
{
    return pretty ? j.dump(2) : j.dump();
}

// Reports are sorted unless CAYLEYTONES_SEED_SORT=0.
bool sorted_reports()
{
    const char* value = std::getenv("CAYLEYTONES_SEED_SORT");
    return value == nullptr || std::string(value) != "0";
}

MusicalSystem system_from(const Config& cfg, bool p_given, bool q_given)
{
    if (cfg.n && !(p_given && q_given))
        throw Error(ErrorCode::invalid_argument, "-n alone is ambiguous; specify the system as -p P -q Q");
    return validate_system(cfg.n.value_or(cfg.p * cfg.q), cfg.p, cfg.q, cfg.s, cfg.f0);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cayley-graph musical systems: chords, scales, counterpoint and tuning"};
    app.name("cayleytones");
    app.require_subcommand(1);

    Config cfg;
    auto* opt_p = app.add_option("-p", cfg.p, "larger coprime factor (default 4)");
    auto* opt_q = app.add_option("-q", cfg.q, "smaller coprime factor (default 3)");
    app.add_option("-n", cfg.n, "modulus; only accepted together with -p and -q");
    app.add_option("-s,--octave", cfg.s, "octave ratio s > 1");
    app.add_option("--f0", cfg.f0, "frequency of note 0 in Hz");
    app.add_flag("--json", cfg.json, "machine-readable output");
    app.add_flag("--pretty", cfg.pretty, "indent JSON output");
    app.add_option("--threads", cfg.threads, "worker threads for searches")->check(CLI::Range(1u, 256u));

    // Subcommands inherit this, so system options may follow the subcommand name.
    app.fallthrough();

    auto* validate = app.add_subcommand("validate", "check the musical system");

    bool unoriented = false;
    std::string graph_out;
    auto* graph = app.add_subcommand("graph", "Cayley graph of Z_n in DOT format");
    graph->add_flag("--unoriented", unoriented, "symmetrize the generators and drop arrows");
    graph->add_option("--out", graph_out, "write to file instead of stdout");

    int from = 0, to = 0;
    bool oriented = false;
    auto* distance = app.add_subcommand("distance", "graph distance between two notes");
    distance->add_option("a", from)->required();
    distance->add_option("b", to)->required();
    distance->add_flag("--oriented", oriented, "follow arrows only");

    int root = 0;
    std::string quality_text;
    auto* chords = app.add_subcommand("chords", "chord catalog, or triad and largest chord for a quality");
    chords->add_option("--root", root, "root note");
    chords->add_option("--quality", quality_text, "major or minor");

    auto* scale_cmd = app.add_subcommand("scale", "major or minor scale");
    scale_cmd->add_option("--root", root, "root note");
    scale_cmd->add_option("--quality", quality_text, "major or minor")->default_str("major");

    auto* circle = app.add_subcommand("circle", "circle of fifths");

    auto* counterpoint = app.add_subcommand("counterpoint", "counterpoint searches");
    counterpoint->require_subcommand(1);
    auto* search = counterpoint->add_subcommand("search", "exhaustive search over affine maps");
    bool weak = false, strong = false, extend = false, maximal = false;
    std::vector<int> consonant;
    std::optional<int> multiplier, offset;
    std::size_t max_results = SearchOptions{}.max_results;
    auto* f_weak = search->add_flag("--weak", weak, "weak witnesses for K' = {0} u S (default)");
    auto* f_strong = search->add_flag("--strong", strong, "strong witnesses for a dichotomy");
    auto* f_extend = search->add_flag("--extend", extend, "extend K' to full partitions");
    auto* f_maximal = search->add_flag("--maximal", maximal, "maximal consonant sets for one map");
    for (auto* a : {f_weak, f_strong, f_extend, f_maximal})
        for (auto* b : {f_weak, f_strong, f_extend, f_maximal})
            if (a != b) a->excludes(b);
    search->add_option("--consonant", consonant, "consonant set K for --strong (Fux in Z_12 by default)")
        ->delimiter(',');
    search->add_option("--multiplier", multiplier, "affine multiplier h");
    search->add_option("--offset", offset, "affine offset w");
    search->add_option("--max-results", max_results, "cap on reported sets");

    std::string plan_path, wav_path;
    auto* render_cmd = app.add_subcommand("render", "render a plan to WAV");
    render_cmd->add_option("--plan", plan_path, "plan JSON file")->required();
    render_cmd->add_option("--out", wav_path, "output WAV file")->required();

    std::string plan_kind = "scale";
    std::vector<int> melody, intervals;
    double note_duration = 0.5;
    std::string plan_out;
    auto* plan_cmd = app.add_subcommand("plan", "emit a render plan as JSON");
    plan_cmd->add_option("--kind", plan_kind, "scale, chord, circle or counterpoint")
        ->check(CLI::IsMember({"scale", "chord", "circle", "counterpoint"}));
    plan_cmd->add_option("--root", root, "root note");
    plan_cmd->add_option("--quality", quality_text, "major or minor");
    plan_cmd->add_option("--melody", melody, "lower voice for counterpoint")->delimiter(',');
    plan_cmd->add_option("--intervals", intervals, "intervals above the lower voice")->delimiter(',');
    plan_cmd->add_option("--duration", note_duration, "seconds per event");
    plan_cmd->add_option("--out", plan_out, "write to file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    }

    try {
        const auto system = system_from(cfg, opt_p->count() > 0, opt_q->count() > 0);
        const auto quality = quality_text.empty() ? Quality::major : parse_quality(quality_text);
        SearchOptions options;
        options.threads = cfg.threads;
        options.max_results = max_results;

        if (validate->parsed()) {
            if (cfg.json) {
                out << dump(to_json(system), cfg.pretty) << "\n";
            } else {
                out << "Z_" << system.n() << " = <" << system.p() << "," << system.q() << ">, s=" << system.octave_ratio()
                    << ", f0=" << system.base_frequency() << ": valid";
                if (system.factors_swapped()) out << " (factors reordered so that p > q)";
                out << "\n";
            }
        } else if (graph->parsed()) {
            const CayleyGraph g(system.generators(), unoriented ? Orientation::unoriented : Orientation::oriented);
            const auto dot = export_dot(g);
            if (graph_out.empty()) {
                out << dot;
            } else {
                std::ofstream file(graph_out);
                if (!(file << dot)) throw Error(ErrorCode::io, "cannot write " + graph_out);
            }
        } else if (distance->parsed()) {
            const CayleyGraph g(system.generators(), oriented ? Orientation::oriented : Orientation::unoriented);
            const int d = oriented ? g.oriented_path_length(from, to) : g.distance(from, to);
            if (cfg.json) {
                out << dump(json{{"a", g.ring().reduce(from)}, {"b", g.ring().reduce(to)}, {"oriented", oriented},
                                 {"distance", d}},
                            cfg.pretty)
                    << "\n";
            } else {
                out << d << "\n";
            }
        } else if (chords->parsed()) {
            if (!quality_text.empty()) {
                const auto t = triad(system, root, quality);
                const auto largest = largest_chord_within_octave(system, root, quality);
                if (cfg.json) {
                    out << dump(json{{"triad", to_json(t)}, {"largest", to_json(largest)}}, cfg.pretty) << "\n";
                } else {
                    out << "triad: " << join(t.notes) << "\n";
                    out << "largest within octave: " << join(largest.notes) << "\n";
                }
            } else {
                json rows = json::array();
                for (const auto& entry : chord_catalog(system)) {
                    std::optional<Chord> chord;
                    try {
                        chord = chord_from_steps(system, root, entry.steps);
                    } catch (const Error&) {
                    }
                    if (cfg.json) {
                        rows.push_back({{"name", entry.name},
                                        {"steps", entry.steps},
                                        {"chord", chord ? to_json(*chord) : json(nullptr)}});
                    } else {
                        out << entry.name << ": +" << join(entry.steps, " +") << " -> "
                            << (chord ? join(chord->notes) : std::string("(self-intersecting)")) << "\n";
                    }
                }
                if (cfg.json) out << dump(rows, cfg.pretty) << "\n";
            }
        } else if (scale_cmd->parsed()) {
            const auto sc = scale(system, root, quality);
            if (cfg.json) out << dump(to_json(sc), cfg.pretty) << "\n";
            else out << join(sc.notes) << "\n";
        } else if (circle->parsed()) {
            const auto c = circle_of_fifths(system);
            if (cfg.json) {
                out << dump(to_json(c), cfg.pretty) << "\n";
            } else {
                out << join(std::vector<int>(c.sequence.begin(), c.sequence.end() - 1)) << "\n";
            }
        } else if (search->parsed()) {
            const auto ring = system.ring();
            const auto sym = system.symmetric_generators();
            const CayleyGraph g(sym, Orientation::unoriented);
            SearchReport report;
            if (strong) {
                Dichotomy d;
                if (!consonant.empty()) d = dichotomy_from_consonants(ring, consonant);
                else if (system.n() == 12) d = fux_dichotomy();
                else throw Error(ErrorCode::invalid_argument, "--strong needs --consonant outside Z_12");
                report = enumerate_strong_witnesses(d, g, options);
            } else if (extend) {
                std::optional<AffineMap> only;
                if (multiplier || offset) only = AffineMap(ring, multiplier.value_or(system.n() - 1), offset.value_or(0));
                report = extend_to_partitions(KPrime(sym), g, only, options);
            } else if (maximal) {
                if (!offset) throw Error(ErrorCode::invalid_argument, "--maximal needs --offset (and optionally --multiplier)");
                const AffineMap t(ring, multiplier.value_or(system.n() - 1), *offset);
                report = maximal_consonant_extension(KPrime(sym), t, g, options);
            } else {
                report = enumerate_weak_witnesses(sym, options);
            }
            if (sorted_reports()) sort_report(report);
            out << dump(to_json(report), cfg.pretty) << "\n";
        } else if (render_cmd->parsed()) {
            std::ifstream file(plan_path);
            if (!file) throw Error(ErrorCode::io, "cannot open plan " + plan_path);
            json j;
            try {
                file >> j;
            } catch (const json::exception& e) {
                throw Error(ErrorCode::invalid_argument, std::string("plan is not valid JSON: ") + e.what());
            }
            const auto buffer = render(render_plan_from_json(j));
            write_wav(buffer, wav_path);
            if (cfg.json) {
                out << dump(json{{"out", wav_path}, {"samples", buffer.size()}, {"sample_rate", buffer.sample_rate}},
                            cfg.pretty)
                    << "\n";
            } else {
                out << "wrote " << buffer.size() << " samples to " << wav_path << "\n";
            }
        } else if (plan_cmd->parsed()) {
            RenderPlan plan;
            if (plan_kind == "scale") {
                plan = plan_for_scale(scale(system, root, quality), system, note_duration);
            } else if (plan_kind == "chord") {
                plan = plan_for_chord(largest_chord_within_octave(system, root, quality), system, note_duration, true);
            } else if (plan_kind == "circle") {
                plan = plan_for_circle(circle_of_fifths(system), system, note_duration);
            } else {
                plan = plan_for_counterpoint(system, melody, intervals, note_duration);
            }
            const auto text = dump(to_json(plan), cfg.pretty) + "\n";
            if (plan_out.empty()) {
                out << text;
            } else {
                std::ofstream file(plan_out);
                if (!(file << text)) throw Error(ErrorCode::io, "cannot write " + plan_out);
            }
        }
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_validation() ? exit_validation : exit_failure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_failure;
    }
}

} // namespace cayleytones::cli
