#pragma once

// JSON (de)serialization for the CLI surfaces: tuples as arrays of word
// strings, block systems as arrays of arrays, verdict envelopes with a
// pinned field order so identical jobs produce byte-identical output.

#include <json.hpp>

#include "uniconj/bounds.hpp"
#include "uniconj/whitehead.hpp"
#include "uniconj/word.hpp"

namespace uniconj::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "uniconj 0.1.0";

inline json envelope(const std::string& command) {
  json j;
  j["tool"] = kVersion;
  j["command"] = command;
  return j;
}

inline std::vector<Word> words_from_json(const json& arr, int rank) {
  if (!arr.is_array()) throw std::invalid_argument("expected a word array");
  std::vector<Word> out;
  for (const auto& item : arr)
    out.push_back(Word::parse(item.get<std::string>(), rank));
  return out;
}

inline json words_to_json(const std::vector<Word>& words) {
  json arr = json::array();
  for (const Word& w : words) arr.push_back(w.str());
  return arr;
}

inline int infer_rank(const json& arrays) {
  int rank = 1;
  for (const auto& arr : arrays)
    for (const auto& item : arr) {
      Word w = Word::parse(item.get<std::string>(), 0);
      rank = std::max(rank, w.rank());
    }
  return rank;
}

inline whitehead::BlockSystem blocks_from_json(const json& j, int rank) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of blocks");
  std::vector<std::vector<Word>> blocks;
  for (const auto& blk : j) blocks.push_back(words_from_json(blk, rank));
  return whitehead::BlockSystem(std::move(blocks), rank);
}

inline json blocks_to_json(const whitehead::BlockSystem& b) {
  json arr = json::array();
  for (const auto& blk : b.blocks) arr.push_back(words_to_json(blk));
  return arr;
}

inline json trace_to_json(const bounds::Trace& t) {
  json j;
  j["name"] = t.name;
  if (!t.args.empty()) j["args"] = t.args;
  j["formula"] = t.formula;
  j["value"] = t.value;
  if (!t.children.empty()) {
    json kids = json::array();
    for (const auto& c : t.children) kids.push_back(trace_to_json(c));
    j["uses"] = kids;
  }
  return j;
}

}  // namespace uniconj::io
