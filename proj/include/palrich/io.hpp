#pragma once

#include <vector>

#include <json.hpp>

#include "palrich/morphism.hpp"

namespace palrich {

inline nlohmann::json to_json(const Morphism& m) {
  nlohmann::json j;
  j["source_size"] = m.source_alphabet_size;
  j["target_size"] = m.target_alphabet_size;
  auto imgs = nlohmann::json::array();
  for (const Word& w : m.images) imgs.push_back(w.letters);
  j["images"] = imgs;
  return j;
}

inline Morphism morphism_from_json(const nlohmann::json& j) {
  int target = j.at("target_size").get<int>();
  std::vector<Word> images;
  for (const auto& img : j.at("images"))
    images.push_back(Word{img.get<std::vector<Letter>>(), target});
  return Morphism(std::move(images), j.at("source_size").get<int>(), target);
}

}  // namespace palrich
