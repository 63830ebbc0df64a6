// io.hpp — JSON documents for systems, lassos, witnesses and verdicts.
// All emitters produce deterministic key order (ordered_json).

#pragma once

#include <json.hpp>

#include "pmuller/fair.hpp"
#include "pmuller/universal.hpp"

namespace pmuller {

using Json = nlohmann::ordered_json;

inline Lts parse_lts(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed LTS document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("states") || !doc.contains("init") ||
      !doc.contains("transitions"))
    throw ValidationError("LTS document needs states, init and transitions");

  std::vector<std::string> ids;
  std::map<std::string, std::set<std::string>> labels;
  if (!doc["states"].is_array())
    throw ValidationError("\"states\" must be an array");
  for (const auto& st : doc["states"]) {
    if (!st.is_object() || !st.contains("id") || !st["id"].is_string())
      throw ValidationError("each state needs a string \"id\"");
    std::string id = st["id"].get<std::string>();
    std::set<std::string> labs;
    if (st.contains("labels")) {
      if (!st["labels"].is_array())
        throw ValidationError("state \"labels\" must be an array");
      for (const auto& a : st["labels"]) {
        if (!a.is_string())
          throw ValidationError("labels must be strings");
        labs.insert(a.get<std::string>());
      }
    }
    ids.push_back(id);
    labels[id] = std::move(labs);
  }
  if (!doc["init"].is_string())
    throw ValidationError("\"init\" must be a state id");
  std::vector<std::pair<std::string, std::string>> transitions;
  if (!doc["transitions"].is_array())
    throw ValidationError("\"transitions\" must be an array");
  for (const auto& t : doc["transitions"]) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_string())
      throw ValidationError("each transition must be a [from, to] pair of ids");
    transitions.emplace_back(t[0].get<std::string>(), t[1].get<std::string>());
  }
  return make_lts(std::move(ids), doc["init"].get<std::string>(), transitions,
                  labels);
}

inline Json emit_lts(const Lts& l) {
  Json doc;
  doc["states"] = Json::array();
  for (int i = 0; i < l.num_states(); ++i) {
    Json st;
    st["id"] = l.states[i];
    st["labels"] = Json::array();
    for (const auto& a : l.labels[i]) st["labels"].push_back(a);
    doc["states"].push_back(std::move(st));
  }
  doc["init"] = l.states[l.init];
  doc["transitions"] = Json::array();
  for (int s = 0; s < l.num_states(); ++s)
    for (int t : l.succ[s])
      doc["transitions"].push_back(Json::array({l.states[s], l.states[t]}));
  return doc;
}

namespace detail {

inline Json ids_of(const Lts& l, const std::vector<int>& states) {
  Json arr = Json::array();
  for (int s : states) arr.push_back(l.states[s]);
  return arr;
}

inline std::vector<int> indices_of(const Lts& l, const Json& arr,
                                   const char* what) {
  if (!arr.is_array())
    throw ValidationError(std::string(what) + " must be an array of state ids");
  std::vector<int> out;
  for (const auto& v : arr) {
    if (!v.is_string())
      throw ValidationError(std::string(what) + " must contain state ids");
    out.push_back(l.index_of(v.get<std::string>()));
  }
  return out;
}

}  // namespace detail

inline LassoRun parse_lasso(const Lts& l, const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed lasso document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("cycle"))
    throw ValidationError("lasso document needs a \"cycle\"");
  LassoRun run;
  if (doc.contains("prefix"))
    run.prefix = detail::indices_of(l, doc["prefix"], "\"prefix\"");
  run.cycle = detail::indices_of(l, doc["cycle"], "\"cycle\"");
  validate_lasso(l, run);
  return run;
}

inline Json emit_lasso(const Lts& l, const LassoRun& run) {
  Json doc;
  doc["prefix"] = detail::ids_of(l, run.prefix);
  doc["cycle"] = detail::ids_of(l, run.cycle);
  return doc;
}

inline Json emit_witness(const Lts& l, const AvoidingSequenceWitness& w) {
  Json doc;
  doc["filtration"] = render_formula(w.filtration);
  doc["order"] = w.order;
  doc["loops"] = Json::array();
  for (const auto& loop : w.loops) doc["loops"].push_back(detail::ids_of(l, loop));
  doc["connectors"] = Json::array();
  for (const auto& c : w.connectors)
    doc["connectors"].push_back(detail::ids_of(l, c));
  if (w.scc)
    doc["scope"] = *w.scc;
  else
    doc["scope"] = "whole";
  return doc;
}

inline std::string to_string(FragmentClass fc) {
  switch (fc) {
    case FragmentClass::PromptMuller: return "PromptMuller";
    case FragmentClass::PositivePromptMuller: return "PositivePromptMuller";
    case FragmentClass::InitializedMuller: return "InitializedMuller";
    case FragmentClass::EvalOnly: return "EvalOnly";
  }
  return "?";
}

inline Json emit_verdict(const Lts& l, const Verdict& v) {
  Json doc;
  doc["holds"] = v.holds;
  doc["mode"] = to_string(v.mode);
  doc["fragment"] = to_string(v.fragment);
  doc["bound_threshold"] = v.bound_threshold;
  if (v.witness) doc["witness"] = emit_witness(l, *v.witness);
  if (v.counterexample) {
    Json ce;
    ce["lasso"] = emit_lasso(l, v.counterexample->lasso);
    ce["k"] = v.counterexample->k;
    doc["counterexample"] = std::move(ce);
  }
  if (v.mode == CheckMode::Fair) {
    doc["bad_bsccs"] = Json::array();
    for (const auto& b : v.bad_bsccs) doc["bad_bsccs"].push_back(detail::ids_of(l, b));
  }
  return doc;
}

inline Json emit_info(const Lts& l) {
  auto d = sccs(l);
  Json doc;
  doc["states"] = l.num_states();
  doc["components"] = Json::array();
  for (int ci = 0; ci < d.num_components(); ++ci) {
    Json c;
    c["states"] = detail::ids_of(l, d.components[ci]);
    c["bottom"] = static_cast<bool>(d.bottom[ci]);
    c["reachable"] = static_cast<bool>(d.reachable[ci]);
    c["trivial"] = static_cast<bool>(d.trivial[ci]);
    doc["components"].push_back(std::move(c));
  }
  doc["bsccs"] = Json::array();
  for (int ci = 0; ci < d.num_components(); ++ci)
    if (d.bottom[ci]) doc["bsccs"].push_back(detail::ids_of(l, d.components[ci]));
  return doc;
}

}  // namespace pmuller
