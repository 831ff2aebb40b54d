/*
 * Copyright 2026 The pdrec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdrec/petri_net.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "pdrec/error.h"

namespace pdrec {
namespace {

std::string Quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::int64_t Marking::Total() const {
  return std::accumulate(tokens_.begin(), tokens_.end(), std::int64_t{0});
}

std::size_t Marking::Hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (std::int32_t t : tokens_) {
    h ^= static_cast<std::size_t>(t) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

int PetriNet::AddPlace(std::string id) {
  if (place_index_.count(id) > 0 || transition_index_.count(id) > 0) {
    throw Error(ErrorCode::kInvalidNet, "duplicate node id '" + id + "'");
  }
  const int index = static_cast<int>(places_.size());
  place_index_.emplace(id, index);
  places_.push_back(std::move(id));
  initial_.Resize(places_.size());
  final_.Resize(places_.size());
  return index;
}

int PetriNet::AddTransition(std::string id, std::optional<std::string> label) {
  if (place_index_.count(id) > 0 || transition_index_.count(id) > 0) {
    throw Error(ErrorCode::kInvalidNet, "duplicate node id '" + id + "'");
  }
  const int index = static_cast<int>(transitions_.size());
  transition_index_.emplace(id, index);
  transitions_.push_back(Transition{std::move(id), std::move(label)});
  preset_.emplace_back();
  postset_.emplace_back();
  return index;
}

void PetriNet::AddInputArc(int place, int transition) {
  if (place < 0 || place >= static_cast<int>(places_.size()) ||
      transition < 0 || transition >= static_cast<int>(transitions_.size())) {
    throw Error(ErrorCode::kInvalidNet, "arc references unknown node");
  }
  auto& pre = preset_[transition];
  if (std::find(pre.begin(), pre.end(), place) == pre.end()) {
    pre.push_back(place);
  }
}

void PetriNet::AddOutputArc(int transition, int place) {
  if (place < 0 || place >= static_cast<int>(places_.size()) ||
      transition < 0 || transition >= static_cast<int>(transitions_.size())) {
    throw Error(ErrorCode::kInvalidNet, "arc references unknown node");
  }
  auto& post = postset_[transition];
  if (std::find(post.begin(), post.end(), place) == post.end()) {
    post.push_back(place);
  }
}

void PetriNet::AddArc(std::string_view source, std::string_view target) {
  if (auto p = PlaceIndex(source)) {
    if (auto t = TransitionIndex(target)) {
      AddInputArc(*p, *t);
      return;
    }
  } else if (auto t = TransitionIndex(source)) {
    if (auto p2 = PlaceIndex(target)) {
      AddOutputArc(*t, *p2);
      return;
    }
  }
  throw Error(ErrorCode::kInvalidNet, "arc " + std::string(source) + " -> " +
                                          std::string(target) +
                                          " must join a place and a transition");
}

Marking PetriNet::MakeMarking(const std::map<std::string, int>& tokens) const {
  Marking m(places_.size());
  for (const auto& [id, count] : tokens) {
    auto index = PlaceIndex(id);
    if (!index) {
      throw Error(ErrorCode::kInvalidNet, "marking names unknown place '" + id + "'");
    }
    if (count < 0) {
      throw Error(ErrorCode::kInvalidNet, "negative token count for '" + id + "'");
    }
    m[*index] = count;
  }
  return m;
}

void PetriNet::SetInitialMarking(std::map<std::string, int> tokens) {
  initial_ = MakeMarking(tokens);
}

void PetriNet::SetFinalMarking(std::map<std::string, int> tokens) {
  final_ = MakeMarking(tokens);
}

std::size_t PetriNet::num_arcs() const {
  std::size_t total = 0;
  for (std::size_t t = 0; t < transitions_.size(); ++t) {
    total += preset_[t].size() + postset_[t].size();
  }
  return total;
}

std::optional<int> PetriNet::PlaceIndex(std::string_view id) const {
  auto it = place_index_.find(std::string(id));
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> PetriNet::TransitionIndex(std::string_view id) const {
  auto it = transition_index_.find(std::string(id));
  if (it == transition_index_.end()) return std::nullopt;
  return it->second;
}

void PetriNet::Validate() const {
  if (initial_.Total() <= 0) {
    throw Error(ErrorCode::kInvalidNet, "initial marking is empty");
  }
  if (final_.Total() <= 0) {
    throw Error(ErrorCode::kInvalidNet, "final marking is empty");
  }
}

std::vector<int> PetriNet::SourcePlaces() const {
  std::vector<bool> has_input(places_.size(), false);
  for (const auto& post : postset_) {
    for (int p : post) has_input[p] = true;
  }
  std::vector<int> out;
  for (std::size_t p = 0; p < places_.size(); ++p) {
    if (!has_input[p]) out.push_back(static_cast<int>(p));
  }
  return out;
}

std::vector<int> PetriNet::SinkPlaces() const {
  std::vector<bool> has_output(places_.size(), false);
  for (const auto& pre : preset_) {
    for (int p : pre) has_output[p] = true;
  }
  std::vector<int> out;
  for (std::size_t p = 0; p < places_.size(); ++p) {
    if (!has_output[p]) out.push_back(static_cast<int>(p));
  }
  return out;
}

bool PetriNet::IsWorkflowNet() const {
  const auto sources = SourcePlaces();
  const auto sinks = SinkPlaces();
  if (sources.size() != 1 || sinks.size() != 1) return false;
  if (initial_.Total() != 1 || initial_[sources[0]] != 1) return false;
  if (final_.Total() != 1 || final_[sinks[0]] != 1) return false;
  return true;
}

bool IsEnabled(const PetriNet& net, const Marking& m, int transition) {
  for (int p : net.preset(transition)) {
    if (m[p] < 1) return false;
  }
  return true;
}

std::vector<int> EnabledTransitions(const PetriNet& net, const Marking& m) {
  std::vector<int> out;
  for (std::size_t t = 0; t < net.num_transitions(); ++t) {
    if (IsEnabled(net, m, static_cast<int>(t))) out.push_back(static_cast<int>(t));
  }
  return out;
}

Marking Fire(const PetriNet& net, const Marking& m, int transition) {
  if (!IsEnabled(net, m, transition)) {
    throw Error(ErrorCode::kNotEnabled, "transition '" +
                                            net.transition(transition).id +
                                            "' is not enabled");
  }
  Marking next = m;
  for (int p : net.preset(transition)) --next[p];
  for (int p : net.postset(transition)) ++next[p];
  return next;
}

std::string ToDot(const PetriNet& net) {
  struct Node {
    std::string id;
    std::string statement;
  };
  std::vector<Node> nodes;
  for (std::size_t p = 0; p < net.num_places(); ++p) {
    const std::string& id = net.place(static_cast<int>(p));
    const int tokens = net.initial_marking()[p];
    std::string shape =
        net.final_marking()[p] > 0 ? "doublecircle" : "circle";
    std::string label = tokens > 0 ? std::to_string(tokens) : "";
    nodes.push_back({id, "  " + Quote(id) + " [shape=" + shape +
                             ",label=" + Quote(label) + "];\n"});
  }
  for (const Transition& t : net.transitions()) {
    std::string attrs =
        t.silent() ? "shape=box,style=filled,fillcolor=black,label=\"\""
                   : "shape=box,label=" + Quote(*t.label);
    nodes.push_back({t.id, "  " + Quote(t.id) + " [" + attrs + "];\n"});
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });

  std::vector<std::pair<std::string, std::string>> arcs;
  for (std::size_t t = 0; t < net.num_transitions(); ++t) {
    const std::string& tid = net.transition(static_cast<int>(t)).id;
    for (int p : net.preset(static_cast<int>(t))) arcs.emplace_back(net.place(p), tid);
    for (int p : net.postset(static_cast<int>(t))) arcs.emplace_back(tid, net.place(p));
  }
  std::sort(arcs.begin(), arcs.end());

  std::string out = "digraph petri_net {\n  rankdir=LR;\n";
  for (const Node& node : nodes) out += node.statement;
  for (const auto& [from, to] : arcs) {
    out += "  " + Quote(from) + " -> " + Quote(to) + ";\n";
  }
  out += "}\n";
  return out;
}

nlohmann::json NetToJson(const PetriNet& net) {
  std::vector<std::string> places = net.places();
  std::sort(places.begin(), places.end());

  std::vector<const Transition*> transitions;
  for (const Transition& t : net.transitions()) transitions.push_back(&t);
  std::sort(transitions.begin(), transitions.end(),
            [](const Transition* a, const Transition* b) { return a->id < b->id; });
  nlohmann::json tjson = nlohmann::json::array();
  for (const Transition* t : transitions) {
    tjson.push_back({{"id", t->id},
                     {"label", t->label ? nlohmann::json(*t->label)
                                        : nlohmann::json(nullptr)}});
  }

  std::vector<std::pair<std::string, std::string>> arcs;
  for (std::size_t t = 0; t < net.num_transitions(); ++t) {
    const std::string& tid = net.transition(static_cast<int>(t)).id;
    for (int p : net.preset(static_cast<int>(t))) arcs.emplace_back(net.place(p), tid);
    for (int p : net.postset(static_cast<int>(t))) arcs.emplace_back(tid, net.place(p));
  }
  std::sort(arcs.begin(), arcs.end());
  nlohmann::json ajson = nlohmann::json::array();
  for (const auto& [from, to] : arcs) {
    ajson.push_back({{"source", from}, {"target", to}});
  }

  auto marking_json = [&](const Marking& m) {
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (m[p] > 0) out[net.place(static_cast<int>(p))] = m[p];
    }
    return out;
  };
  return {{"places", places},
          {"transitions", std::move(tjson)},
          {"arcs", std::move(ajson)},
          {"initial", marking_json(net.initial_marking())},
          {"final", marking_json(net.final_marking())}};
}

PetriNet NetFromJson(const nlohmann::json& json) {
  try {
    PetriNet net;
    for (const auto& p : json.at("places")) net.AddPlace(p.get<std::string>());
    for (const auto& t : json.at("transitions")) {
      std::optional<std::string> label;
      if (t.contains("label") && !t.at("label").is_null()) {
        label = t.at("label").get<std::string>();
      }
      net.AddTransition(t.at("id").get<std::string>(), std::move(label));
    }
    for (const auto& a : json.at("arcs")) {
      net.AddArc(a.at("source").get<std::string>(),
                 a.at("target").get<std::string>());
    }
    net.SetInitialMarking(json.at("initial").get<std::map<std::string, int>>());
    net.SetFinalMarking(json.at("final").get<std::map<std::string, int>>());
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidNet, std::string("bad net JSON: ") + e.what());
  }
}

}  // namespace pdrec
