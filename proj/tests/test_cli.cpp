#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cayleytones/cli.hpp"
#include "cayleytones/serialization.hpp"

using namespace cayleytones;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

} // namespace

TEST_CASE("validate")
{
    auto r = run({"validate"});
    CHECK(r.code == 0);
    CHECK(r.out.find("valid") != std::string::npos);
    CHECK(run({"validate", "-p", "3", "-q", "4"}).out.find("reordered") != std::string::npos);
    CHECK(run({"validate", "--json"}).out == to_json(make_system(4, 3)).dump() + "\n");
}

TEST_CASE("validation failures exit with 2 and one line")
{
    for (const auto& args : std::vector<std::vector<std::string>>{{"validate", "-p", "6", "-q", "2"},
                                                                  {"validate", "-n", "12"},
                                                                  {"validate", "-s", "1"},
                                                                  {"validate", "--f0", "0"},
                                                                  {"chords", "--quality", "lydian"},
                                                                  {"distance", "0", "1", "-p", "4", "-q", "2"},
                                                                  {"counterpoint", "search", "--extend", "-p", "5", "-q", "3"},
                                                                  {"bogus"},
                                                                  {}}) {
        auto r = run(args);
        CHECK(r.code == cli::exit_validation);
        CHECK(r.out.empty());
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    CHECK(run({"validate", "-n", "12", "-p", "4", "-q", "3"}).code == 0);
    CHECK(run({"validate", "-n", "13", "-p", "4", "-q", "3"}).code == 2);
}

TEST_CASE("circle and distance")
{
    CHECK(run({"circle", "-p", "5", "-q", "2"}).out == "0 7 4 1 8 5 2 9 6 3\n");
    CHECK(run({"circle"}).out == "0 7 2 9 4 11 6 1 8 3 10 5\n");
    CHECK(run({"circle", "--json"}).out == to_json(circle_of_fifths(make_system(4, 3))).dump() + "\n");
    CHECK(run({"distance", "0", "6", "-p", "5", "-q", "2"}).out == "2\n");
    CHECK(run({"distance", "0", "9", "--oriented"}).out == "3\n");
    CHECK(run({"distance", "0", "9"}).out == "1\n");
}

TEST_CASE("chords and scales")
{
    auto r = run({"chords", "--quality", "major"});
    CHECK(r.out.find("largest within octave: 0 4 7 11") != std::string::npos);
    CHECK(run({"chords"}).out.find("Half Diminished 7th: +3 +3 +4 -> 0 3 6 10") != std::string::npos);
    CHECK(run({"scale", "--root", "0", "--quality", "minor", "-p", "5", "-q", "3"}).out == "0 2 3 5 7 8 10 11 0\n");
    CHECK(run({"scale", "--json"}).out == to_json(scale(make_system(4, 3), 0, Quality::major)).dump() + "\n");
}

TEST_CASE("graph export")
{
    auto r = run({"graph", "-p", "3", "-q", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == export_dot(CayleyGraph(make_system(3, 2).generators(), Orientation::oriented)));
    auto path = temp_file("cayleytones_graph.dot");
    CHECK(run({"graph", "--unoriented", "--out", path.string()}).code == 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().rfind("graph cayley_Z12", 0) == 0);
    std::filesystem::remove(path);
}

TEST_CASE("counterpoint searches")
{
    auto strong = json::parse(run({"counterpoint", "search", "--strong", "-p", "4", "-q", "3"}).out);
    CHECK(strong["witnesses"].dump() == R"([{"h":5,"w":2}])");

    auto weak = run({"counterpoint", "search", "-p", "5", "-q", "2"});
    auto lib = enumerate_weak_witnesses(make_system(5, 2).symmetric_generators());
    sort_report(lib);
    CHECK(weak.out == to_json(lib).dump() + "\n");

    auto ext = json::parse(run({"counterpoint", "search", "--extend"}).out);
    CHECK(ext["partitions"].size() == 4);

    auto one = json::parse(run({"counterpoint", "search", "--extend", "-p", "5", "-q", "2", "--multiplier", "9",
                                "--offset", "1"})
                               .out);
    CHECK(one["partitions"].size() == 2);

    auto max = json::parse(run({"counterpoint", "search", "--maximal", "-p", "5", "-q", "3", "--offset", "1"}).out);
    bool found = false;
    for (const auto& p : max["partitions"])
        if (p["K"] == json::array({0, 2, 3, 5, 7, 10, 12})) found = true;
    CHECK(found);

    auto custom = json::parse(run({"counterpoint", "search", "--strong", "--consonant", "0,3,4,5,8,9"}).out);
    CHECK(custom["witnesses"].dump() == R"([{"h":5,"w":10}])");
    CHECK(run({"counterpoint", "search", "--strong", "-p", "5", "-q", "2"}).code == 2);
}

TEST_CASE("output is deterministic across runs and thread counts")
{
    auto a = run({"counterpoint", "search", "--extend", "-p", "7", "-q", "4"});
    auto b = run({"counterpoint", "search", "--extend", "-p", "7", "-q", "4", "--threads", "4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == run({"counterpoint", "search", "--extend", "-p", "7", "-q", "4"}).out);
}

TEST_CASE("plan and render")
{
    auto plan_path = temp_file("cayleytones_plan.json");
    auto wav_path = temp_file("cayleytones_plan.wav");
    CHECK(run({"plan", "--kind", "scale", "--duration", "0.2", "--out", plan_path.string()}).code == 0);
    auto r = run({"render", "--plan", plan_path.string(), "--out", wav_path.string()});
    CHECK(r.code == 0);
    auto wav = read_wav(wav_path);
    CHECK(wav.size() == 8 * 8820);
    CHECK(std::filesystem::file_size(wav_path) == 44 + 2 * wav.size());

    auto counter = run({"plan", "--kind", "counterpoint", "--melody", "0,2,4", "--intervals", "7,3,8"});
    CHECK(json::parse(counter.out)["events"].size() == 3);

    CHECK(run({"render", "--plan", "/nonexistent/plan.json", "--out", wav_path.string()}).code == cli::exit_failure);
    std::ofstream(plan_path) << "{ not json";
    CHECK(run({"render", "--plan", plan_path.string(), "--out", wav_path.string()}).code == cli::exit_validation);
    std::filesystem::remove(plan_path);
    std::filesystem::remove(wav_path);
}

TEST_CASE("help")
{
    auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("counterpoint") != std::string::npos);
}
