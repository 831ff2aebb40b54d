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

// Labeled place/transition nets with unit arc weights, markings and firing
// semantics, plus DOT and JSON export.

#ifndef PDREC_PETRI_NET_H_
#define PDREC_PETRI_NET_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace pdrec {

struct Transition {
  std::string id;
  std::optional<std::string> label;  // nullopt = silent

  bool silent() const { return !label.has_value(); }
};

// Token counts indexed by place index of the owning net.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::size_t num_places) : tokens_(num_places, 0) {}

  std::int32_t operator[](std::size_t place) const { return tokens_[place]; }
  std::int32_t& operator[](std::size_t place) { return tokens_[place]; }
  std::size_t size() const { return tokens_.size(); }
  std::int64_t Total() const;
  void Resize(std::size_t num_places) { tokens_.resize(num_places, 0); }

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking&, const Marking&) = default;

  std::size_t Hash() const;

 private:
  std::vector<std::int32_t> tokens_;
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const { return m.Hash(); }
};

class PetriNet {
 public:
  // Construction. Ids must be unique across places and transitions; arcs
  // must connect a place and a transition. Violations throw
  // Error(kInvalidNet). Duplicate arcs are ignored (arc weights are 1).
  int AddPlace(std::string id);
  int AddTransition(std::string id, std::optional<std::string> label);
  void AddInputArc(int place, int transition);   // place -> transition
  void AddOutputArc(int transition, int place);  // transition -> place
  void AddArc(std::string_view source, std::string_view target);
  void SetInitialMarking(std::map<std::string, int> tokens);
  void SetFinalMarking(std::map<std::string, int> tokens);

  std::size_t num_places() const { return places_.size(); }
  std::size_t num_transitions() const { return transitions_.size(); }
  std::size_t num_arcs() const;

  const std::string& place(int index) const { return places_[index]; }
  const Transition& transition(int index) const { return transitions_[index]; }
  const std::vector<std::string>& places() const { return places_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<int>& preset(int transition) const {
    return preset_[transition];
  }
  const std::vector<int>& postset(int transition) const {
    return postset_[transition];
  }

  std::optional<int> PlaceIndex(std::string_view id) const;
  std::optional<int> TransitionIndex(std::string_view id) const;

  const Marking& initial_marking() const { return initial_; }
  const Marking& final_marking() const { return final_; }

  // Marking from place-id -> tokens. Throws Error(kInvalidNet) for unknown
  // places or negative counts.
  Marking MakeMarking(const std::map<std::string, int>& tokens) const;

  // Checks arc references and non-empty initial/final markings.
  void Validate() const;

  // Places without incoming arcs / without outgoing arcs.
  std::vector<int> SourcePlaces() const;
  std::vector<int> SinkPlaces() const;
  // Exactly one source and one sink place, marked initially/finally.
  bool IsWorkflowNet() const;

 private:
  std::vector<std::string> places_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<int>> preset_;
  std::vector<std::vector<int>> postset_;
  std::unordered_map<std::string, int> place_index_;
  std::unordered_map<std::string, int> transition_index_;
  Marking initial_;
  Marking final_;
};

// Transitions whose input places each hold at least one token, by index.
std::vector<int> EnabledTransitions(const PetriNet& net, const Marking& m);
bool IsEnabled(const PetriNet& net, const Marking& m, int transition);
// Throws Error(kNotEnabled) when `transition` is not enabled at `m`.
Marking Fire(const PetriNet& net, const Marking& m, int transition);

// GraphViz rendering with nodes sorted by id: places as circles, labeled
// transitions as boxes, silent transitions as filled boxes.
std::string ToDot(const PetriNet& net);

// {places, transitions:[{id,label}], arcs:[{source,target}], initial, final}
nlohmann::json NetToJson(const PetriNet& net);
PetriNet NetFromJson(const nlohmann::json& json);

}  // namespace pdrec

#endif  // PDREC_PETRI_NET_H_
