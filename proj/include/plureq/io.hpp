/*
 * Copyright 2026 The plureq authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "plureq/election.hpp"
#include "plureq/hardness.hpp"

namespace plureq {

using Json = nlohmann::ordered_json;

// On-disk form of an election.  Candidate order in the file is the tie
// breaking priority.  Each voter carries either explicit utilities or a
// ranking; the original form survives a round trip.
struct VoterSpec {
  std::optional<std::vector<long long>> utilities;
  std::optional<PreferenceOrder> ranking;
};

struct ElectionDocument {
  std::string name;
  std::vector<std::string> candidates;
  std::vector<VoterSpec> voters;
  std::vector<PreferenceOrder> principled;
  Json meta; // free-form object, carried through a round trip
};

inline CandidateId candidate_id(const ElectionDocument& doc, std::string_view name) {
  for (size_t i = 0; i < doc.candidates.size(); ++i)
    if (doc.candidates[i] == name) return static_cast<CandidateId>(i);
  throw std::invalid_argument("unknown candidate: " + std::string(name));
}

namespace detail {

inline void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> known,
                                const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* key : known)
      if (item.key() == key) {
        ok = true;
        break;
      }
    if (!ok) throw std::invalid_argument(where + ": unknown key \"" + item.key() + "\"");
  }
}

inline std::vector<std::string> parse_name_list(const Json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty())
    throw std::invalid_argument(where + " must be a non-empty array of names");
  std::vector<std::string> names;
  for (const auto& v : arr) {
    if (!v.is_string() || v.get_ref<const std::string&>().empty())
      throw std::invalid_argument(where + " entries must be non-empty strings");
    names.push_back(v.get<std::string>());
  }
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw std::invalid_argument(where + ": duplicate name \"" + names[i] + "\"");
  return names;
}

inline PreferenceOrder parse_ranking(const Json& arr, const std::vector<std::string>& candidates,
                                     const std::string& where) {
  if (!arr.is_array() || arr.size() != candidates.size())
    throw std::invalid_argument(where + " must rank every candidate exactly once");
  PreferenceOrder order;
  std::vector<char> seen(candidates.size(), 0);
  for (const auto& v : arr) {
    if (!v.is_string()) throw std::invalid_argument(where + " entries must be candidate names");
    const auto& name = v.get_ref<const std::string&>();
    size_t id = 0;
    while (id < candidates.size() && candidates[id] != name) ++id;
    if (id == candidates.size())
      throw std::invalid_argument(where + ": unknown candidate \"" + name + "\"");
    if (seen[id]) throw std::invalid_argument(where + ": candidate \"" + name + "\" ranked twice");
    seen[id] = 1;
    order.push_back(static_cast<CandidateId>(id));
  }
  return order;
}

inline Json ranking_to_json(const PreferenceOrder& order,
                            const std::vector<std::string>& candidates) {
  Json arr = Json::array();
  for (CandidateId c : order) arr.push_back(candidates[c]);
  return arr;
}

} // namespace detail

inline ElectionDocument parse_election(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("election document must be an object");
  detail::reject_unknown_keys(j, {"name", "candidates", "voters", "principled", "meta"},
                              "election");
  if (!j.contains("candidates")) throw std::invalid_argument("election: missing \"candidates\"");
  if (!j.contains("voters")) throw std::invalid_argument("election: missing \"voters\"");

  ElectionDocument doc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw std::invalid_argument("election: \"name\" must be a string");
    doc.name = j["name"].get<std::string>();
  }
  doc.candidates = detail::parse_name_list(j["candidates"], "\"candidates\"");

  const Json& voters = j["voters"];
  if (!voters.is_array() || voters.empty())
    throw std::invalid_argument("election: \"voters\" must be a non-empty array");
  for (size_t i = 0; i < voters.size(); ++i) {
    const std::string where = "voter " + std::to_string(i);
    const Json& v = voters[i];
    if (!v.is_object()) throw std::invalid_argument(where + " must be an object");
    detail::reject_unknown_keys(v, {"utilities", "ranking"}, where);
    VoterSpec spec;
    if (v.contains("utilities") == v.contains("ranking"))
      throw std::invalid_argument(where + " needs exactly one of \"utilities\" or \"ranking\"");
    if (v.contains("utilities")) {
      const Json& u = v["utilities"];
      if (!u.is_array() || u.size() != doc.candidates.size())
        throw std::invalid_argument(where + ": need one utility per candidate");
      std::vector<long long> vals;
      for (const auto& x : u) {
        if (!x.is_number_integer())
          throw std::invalid_argument(where + ": utilities must be integers");
        vals.push_back(x.get<long long>());
      }
      spec.utilities = std::move(vals);
    } else {
      spec.ranking = detail::parse_ranking(v["ranking"], doc.candidates, where + " ranking");
    }
    doc.voters.push_back(std::move(spec));
  }

  if (j.contains("principled")) {
    const Json& p = j["principled"];
    if (!p.is_array()) throw std::invalid_argument("election: \"principled\" must be an array");
    for (size_t i = 0; i < p.size(); ++i)
      doc.principled.push_back(
          detail::parse_ranking(p[i], doc.candidates, "principled voter " + std::to_string(i)));
  }
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) throw std::invalid_argument("election: \"meta\" must be an object");
    doc.meta = j["meta"];
  }
  return doc;
}

inline ElectionDocument parse_election_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  return parse_election(j);
}

inline Json to_json(const ElectionDocument& doc) {
  Json j = Json::object();
  if (!doc.name.empty()) j["name"] = doc.name;
  j["candidates"] = doc.candidates;
  Json voters = Json::array();
  for (const VoterSpec& spec : doc.voters) {
    Json v = Json::object();
    if (spec.utilities)
      v["utilities"] = *spec.utilities;
    else
      v["ranking"] = detail::ranking_to_json(*spec.ranking, doc.candidates);
    voters.push_back(std::move(v));
  }
  j["voters"] = std::move(voters);
  if (!doc.principled.empty()) {
    Json p = Json::array();
    for (const PreferenceOrder& r : doc.principled)
      p.push_back(detail::ranking_to_json(r, doc.candidates));
    j["principled"] = std::move(p);
  }
  if (doc.meta.is_object()) j["meta"] = doc.meta;
  return j;
}

inline Election to_election(const ElectionDocument& doc) {
  Election e;
  e.candidates = static_cast<int>(doc.candidates.size());
  for (size_t i = 0; i < doc.voters.size(); ++i) {
    const VoterSpec& spec = doc.voters[i];
    if (spec.utilities) {
      std::vector<Int> u;
      for (long long x : *spec.utilities) u.push_back(Int(x));
      e.utility.push_back(std::move(u));
    } else {
      e.utility.push_back(ranked_utilities(*spec.ranking));
    }
  }
  validate(e);
  return e;
}

inline PrincipledProfile principled_profile(const ElectionDocument& doc) {
  return doc.principled;
}

// On-disk form of a set intersection instance, with named elements.
struct MsiDocument {
  std::string name;
  std::vector<std::string> elements;
  MsiInstance instance;
};

inline MsiDocument parse_msi(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance document must be an object");
  detail::reject_unknown_keys(j, {"name", "elements", "sets", "k", "q"}, "instance");
  for (const char* key : {"elements", "sets", "k", "q"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("instance: missing \"") + key + "\"");

  MsiDocument doc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw std::invalid_argument("instance: \"name\" must be a string");
    doc.name = j["name"].get<std::string>();
  }
  doc.elements = detail::parse_name_list(j["elements"], "\"elements\"");
  doc.instance.elements = static_cast<int>(doc.elements.size());

  const Json& sets = j["sets"];
  if (!sets.is_array()) throw std::invalid_argument("instance: \"sets\" must be an array");
  for (size_t i = 0; i < sets.size(); ++i) {
    const std::string where = "set " + std::to_string(i);
    const Json& s = sets[i];
    if (!s.is_array()) throw std::invalid_argument(where + " must be an array of element names");
    std::vector<int> ids;
    for (const auto& v : s) {
      if (!v.is_string()) throw std::invalid_argument(where + " entries must be element names");
      const auto& name = v.get_ref<const std::string&>();
      size_t id = 0;
      while (id < doc.elements.size() && doc.elements[id] != name) ++id;
      if (id == doc.elements.size())
        throw std::invalid_argument(where + ": unknown element \"" + name + "\"");
      ids.push_back(static_cast<int>(id));
    }
    doc.instance.sets.push_back(std::move(ids));
  }

  for (const char* key : {"k", "q"}) {
    if (!j[key].is_number_integer())
      throw std::invalid_argument(std::string("instance: \"") + key + "\" must be an integer");
  }
  doc.instance.k = j["k"].get<int>();
  doc.instance.q = j["q"].get<int>();
  validate_msi(doc.instance);
  return doc;
}

inline MsiDocument parse_msi_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  return parse_msi(j);
}

inline Json to_json(const MsiDocument& doc) {
  Json j = Json::object();
  if (!doc.name.empty()) j["name"] = doc.name;
  j["elements"] = doc.elements;
  Json sets = Json::array();
  for (const auto& set : doc.instance.sets) {
    Json s = Json::array();
    for (int el : set) s.push_back(doc.elements[el]);
    sets.push_back(std::move(s));
  }
  j["sets"] = std::move(sets);
  j["k"] = doc.instance.k;
  j["q"] = doc.instance.q;
  return j;
}

// On-disk form of a bipartite graph plus the balanced subgraph size.
struct BcbsDocument {
  std::string name;
  std::vector<std::string> left;
  std::vector<std::string> right;
  BcbsInstance instance;
};

inline BcbsDocument parse_bcbs(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph document must be an object");
  detail::reject_unknown_keys(j, {"name", "left", "right", "edges", "k"}, "graph");
  for (const char* key : {"left", "right", "edges", "k"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("graph: missing \"") + key + "\"");

  BcbsDocument doc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw std::invalid_argument("graph: \"name\" must be a string");
    doc.name = j["name"].get<std::string>();
  }
  doc.left = detail::parse_name_list(j["left"], "\"left\"");
  doc.right = detail::parse_name_list(j["right"], "\"right\"");
  doc.instance.left = static_cast<int>(doc.left.size());
  doc.instance.right = static_cast<int>(doc.right.size());

  auto side_id = [](const std::vector<std::string>& names, const std::string& name,
                    const std::string& where) {
    size_t id = 0;
    while (id < names.size() && names[id] != name) ++id;
    if (id == names.size())
      throw std::invalid_argument(where + ": unknown vertex \"" + name + "\"");
    return static_cast<int>(id);
  };

  const Json& edges = j["edges"];
  if (!edges.is_array()) throw std::invalid_argument("graph: \"edges\" must be an array");
  for (size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edge " + std::to_string(i);
    const Json& ed = edges[i];
    if (!ed.is_array() || ed.size() != 2 || !ed[0].is_string() || !ed[1].is_string())
      throw std::invalid_argument(where + " must be a [left, right] name pair");
    doc.instance.edges.emplace_back(side_id(doc.left, ed[0].get<std::string>(), where),
                                    side_id(doc.right, ed[1].get<std::string>(), where));
  }

  if (!j["k"].is_number_integer())
    throw std::invalid_argument("graph: \"k\" must be an integer");
  doc.instance.k = j["k"].get<int>();
  validate_bcbs(doc.instance);
  return doc;
}

inline BcbsDocument parse_bcbs_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  return parse_bcbs(j);
}

inline Json to_json(const BcbsDocument& doc) {
  Json j = Json::object();
  if (!doc.name.empty()) j["name"] = doc.name;
  j["left"] = doc.left;
  j["right"] = doc.right;
  Json edges = Json::array();
  for (auto [u, v] : doc.instance.edges) {
    Json ed = Json::array();
    ed.push_back(doc.left[u]);
    ed.push_back(doc.right[v]);
    edges.push_back(std::move(ed));
  }
  j["edges"] = std::move(edges);
  j["k"] = doc.instance.k;
  return j;
}

inline MsiDocument msi_document(const BcbsDocument& doc) {
  MsiDocument out;
  out.name = doc.name;
  out.elements = doc.left;
  out.instance = bcbs_to_msi(doc.instance);
  return out;
}

inline std::string unique_name(std::string base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& s) {
    for (const auto& t : taken)
      if (t == s) return true;
    return false;
  };
  while (used(base)) base += "_";
  return base;
}

// Wraps a reduced election as a document.  Element candidates keep their
// names; the three appended candidates get fresh ones.
inline ElectionDocument election_document(const ReducedElection& red,
                                          const std::vector<std::string>& element_names,
                                          const std::string& name = "") {
  if (static_cast<int>(element_names.size()) != red.padded.elements)
    throw std::invalid_argument("need one name per element");
  ElectionDocument doc;
  doc.name = name;
  doc.candidates = element_names;
  doc.candidates.push_back(unique_name("guard", doc.candidates));
  doc.candidates.push_back(unique_name("rival", doc.candidates));
  doc.candidates.push_back(unique_name("target", doc.candidates));
  for (const auto& u : red.election.utility) {
    VoterSpec spec;
    std::vector<long long> vals;
    for (const Int& x : u) vals.push_back(x.convert_to<long long>());
    spec.utilities = std::move(vals);
    doc.voters.push_back(std::move(spec));
  }
  doc.meta = Json::object();
  doc.meta["target"] = doc.candidates[red.target];
  doc.meta["equilibrium_score"] = red.s;
  return doc;
}

inline ElectionDocument election_document(const Election& e,
                                          const PrincipledProfile& principled = {},
                                          const std::string& name = "") {
  ElectionDocument doc;
  doc.name = name;
  for (int c = 0; c < e.candidates; ++c) doc.candidates.push_back("c" + std::to_string(c + 1));
  for (const auto& u : e.utility) {
    VoterSpec spec;
    std::vector<long long> vals;
    for (const Int& x : u) vals.push_back(x.convert_to<long long>());
    spec.utilities = std::move(vals);
    doc.voters.push_back(std::move(spec));
  }
  doc.principled = principled;
  return doc;
}

} // namespace plureq
