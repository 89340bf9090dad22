#include "cayleytones/serialization.hpp"

namespace cayleytones {

json to_json(const MusicalSystem& system)
{
    return {{"n", system.n()},
            {"p", system.p()},
            {"q", system.q()},
            {"s", system.octave_ratio()},
            {"f0", system.base_frequency()}};
}

json to_json(const Chord& chord)
{
    return {{"n", chord.modulus},
            {"root", chord.root},
            {"quality", to_string(chord.kind)},
            {"steps", chord.steps},
            {"notes", chord.notes}};
}

json to_json(const Scale& scale)
{
    return {{"n", scale.modulus},
            {"root", scale.root},
            {"quality", to_string(scale.quality)},
            {"notes", scale.notes},
            {"offsets", scale.offsets},
            {"backbone", to_json(scale.backbone)}};
}

json to_json(const CircleOfFifths& circle)
{
    return {{"n", circle.modulus},
            {"step", circle.step},
            {"sequence", circle.sequence},
            {"trivial", circle.trivial}};
}

json to_json(const std::vector<NamedPattern>& catalog)
{
    json out = json::array();
    for (const auto& entry : catalog) out.push_back({{"name", entry.name}, {"steps", entry.steps}});
    return out;
}

json to_json(const Dichotomy& dichotomy)
{
    return {{"n", dichotomy.modulus}, {"K", dichotomy.consonant}, {"D", dichotomy.dissonant}};
}

json to_json(const SearchReport& report)
{
    json witnesses = json::array();
    for (const auto& w : report.witnesses)
        witnesses.push_back({{"h", w.map.multiplier()}, {"w", w.map.offset()}});
    json partitions = json::array();
    for (const auto& p : report.partitions) {
        partitions.push_back({{"K", p.dichotomy.consonant},
                              {"D", p.dichotomy.dissonant},
                              {"h", p.map.multiplier()},
                              {"w", p.map.offset()},
                              {"strong_witness_count", p.strong_witness_count}});
    }
    return {{"n", report.n},
            {"S", report.generators},
            {"examined", report.examined},
            {"witnesses", witnesses},
            {"partitions", partitions},
            {"notes", report.notes}};
}

json to_json(const RenderPlan& plan)
{
    json events = json::array();
    for (const auto& e : plan.events) {
        json notes = json::array();
        for (const auto& note : e.notes) notes.push_back({{"k", note.k}, {"octave", note.octave}});
        events.push_back({{"kind", to_string(e.kind)}, {"notes", notes}, {"duration", e.duration}});
    }
    return {{"system", to_json(plan.system)},
            {"sample_rate", plan.sample_rate},
            {"modulation_depth", plan.modulation_depth},
            {"envelope",
             {{"attack", plan.envelope.attack},
              {"decay", plan.envelope.decay},
              {"sustain", plan.envelope.sustain_level},
              {"release", plan.envelope.release}}},
            {"events", events}};
}

RenderPlan render_plan_from_json(const json& j)
{
    try {
        RenderPlan plan;
        const auto& sys = j.at("system");
        const int p = sys.at("p").get<int>();
        const int q = sys.at("q").get<int>();
        plan.system = validate_system(sys.value("n", p * q), p, q, sys.value("s", 2.0), sys.value("f0", 440.0));
        plan.sample_rate = j.value("sample_rate", default_sample_rate);
        plan.modulation_depth = j.value("modulation_depth", 0.0);
        if (j.contains("envelope")) {
            const auto& env = j.at("envelope");
            plan.envelope.attack = env.value("attack", plan.envelope.attack);
            plan.envelope.decay = env.value("decay", plan.envelope.decay);
            plan.envelope.sustain_level = env.value("sustain", plan.envelope.sustain_level);
            plan.envelope.release = env.value("release", plan.envelope.release);
        }
        for (const auto& e : j.at("events")) {
            RenderEvent event;
            event.kind = parse_event_kind(e.value("kind", std::string("note")));
            event.duration = e.at("duration").get<double>();
            for (const auto& note : e.value("notes", json::array()))
                event.notes.push_back({note.at("k").get<int>(), note.value("octave", 0)});
            plan.events.push_back(std::move(event));
        }
        return plan;
    } catch (const json::exception& ex) {
        throw Error(ErrorCode::invalid_argument, std::string("malformed render plan: ") + ex.what());
    }
}

} // namespace cayleytones
