#pragma once

// JSON-lines encoding of machine trace events:
//   {"step": int, "stage": str, "mode": "descend"|"apply", "focus": str,
//    "stack": [{"frame": str, "payload": [str]}...], "depth": int}

#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "cnfkit/errors.hpp"
#include "cnfkit/machine.hpp"

namespace cnf::machine {

inline std::string to_json_line(const TraceEvent& ev) {
  nlohmann::ordered_json stack = nlohmann::ordered_json::array();
  for (const FrameDescriptor& fd : ev.stack) {
    nlohmann::ordered_json frame;
    frame["frame"] = fd.frame;
    frame["payload"] = fd.payload;
    stack.push_back(std::move(frame));
  }
  nlohmann::ordered_json j;
  j["step"] = ev.step;
  j["stage"] = to_string(ev.stage);
  j["mode"] = to_string(ev.mode);
  j["focus"] = ev.focus;
  j["stack"] = std::move(stack);
  j["depth"] = ev.depth;
  return j.dump() + "\n";
}

inline TraceEvent from_json_line(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  TraceEvent ev;
  ev.step = j.at("step").get<std::size_t>();
  const auto stage = j.at("stage").get<std::string>();
  if (stage == "impl_free") ev.stage = Stage::ImplFree;
  else if (stage == "nnfc") ev.stage = Stage::Nnfc;
  else if (stage == "cnfc") ev.stage = Stage::Cnfc;
  else if (stage == "distr") ev.stage = Stage::Distr;
  else throw Error("unknown trace stage '" + stage + "'");
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "descend") ev.mode = Mode::Descend;
  else if (mode == "apply") ev.mode = Mode::Apply;
  else throw Error("unknown trace mode '" + mode + "'");
  ev.focus = j.at("focus").get<std::string>();
  for (const auto& frame : j.at("stack"))
    ev.stack.push_back({frame.at("frame").get<std::string>(),
                        frame.at("payload").get<std::vector<std::string>>()});
  ev.depth = j.at("depth").get<std::size_t>();
  return ev;
}

/// Sink that writes each event as one LF-terminated JSON line.
inline TraceSink json_lines_sink(std::ostream& out) {
  return [&out](const TraceEvent& ev) { out << to_json_line(ev); };
}

}  // namespace cnf::machine
