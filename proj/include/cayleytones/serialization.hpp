#pragma once

#include <json.hpp>

#include "cayleytones/audio_synth.hpp"
#include "cayleytones/counterpoint.hpp"
#include "cayleytones/music_system.hpp"

namespace cayleytones {

using json = nlohmann::ordered_json;

json to_json(const MusicalSystem& system);
json to_json(const Chord& chord);
json to_json(const Scale& scale);
json to_json(const CircleOfFifths& circle);
json to_json(const std::vector<NamedPattern>& catalog);
json to_json(const SearchReport& report);
json to_json(const Dichotomy& dichotomy);
json to_json(const RenderPlan& plan);

/// Missing optional keys fall back to the RenderPlan defaults; the system
/// itself is validated.
RenderPlan render_plan_from_json(const json& j);

} // namespace cayleytones
