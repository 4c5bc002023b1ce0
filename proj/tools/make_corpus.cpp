// Writes the synthetic evaluation corpus used by the end-to-end tests.
// Fully deterministic: a fixed seed, no time or environment input, so the
// checked-in file regenerates byte-identically.
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

const std::vector<std::string> kKnownNouns = {
    "dog",    "cat",       "person", "woman",    "girl",     "chair",
    "sofa",   "couch",     "daybed", "laptop",   "pizza",    "soda",
    "food",   "beverage",  "animal", "furniture", "device",  "artifact",
    "organism", "living thing"};
const std::vector<std::string> kUnknownNouns = {"gizmo", "quux", "flibber"};
const std::vector<std::string> kRoles = {
    "on",      "next to", "under",   "eating", "eats",     "drinking",
    "riding",  "rides",   "walking", "jumping", "feeding", "holding"};

std::string pad4(std::size_t n) {
  std::string digits = std::to_string(n);
  return std::string(4 - digits.size(), '0') + digits;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_path =
      argc > 1 ? argv[1] : "fixtures/datasets/synthetic_1000.jsonl";
  const std::size_t count = argc > 2 ? std::stoul(argv[2]) : 1000;

  std::mt19937 rng(417290863u);
  auto pick = [&](const std::vector<std::string>& pool) {
    return pool[std::uniform_int_distribution<std::size_t>(
        0, pool.size() - 1)(rng)];
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  };

  auto object_list = [&](bool allow_empty) {
    std::vector<std::string> objects;
    std::size_t n =
        std::uniform_int_distribution<std::size_t>(allow_empty ? 0 : 1, 5)(rng);
    for (std::size_t i = 0; i < n; ++i)
      objects.push_back(chance(0.05) ? pick(kUnknownNouns) : pick(kKnownNouns));
    return objects;
  };
  auto triple_list = [&](const std::vector<std::string>& objects) {
    json triples = json::array();
    if (objects.empty()) return triples;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t i = 0; i < n; ++i)
      triples.push_back({pick(objects), pick(kRoles), pick(objects)});
    return triples;
  };
  auto sentence = [&] {
    std::string text = "the " + pick(kKnownNouns);
    const std::size_t clauses =
        std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t i = 0; i < clauses; ++i)
      text += " " + pick(kRoles) + " the " + pick(kKnownNouns);
    return text + ".";
  };

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  for (std::size_t i = 0; i < count; ++i) {
    json record;
    record["id"] = "syn-" + pad4(i);
    const auto caption = object_list(true);
    std::vector<std::string> image;
    // Reuse caption surfaces often enough that correct matches and cheap
    // replacements both show up.
    const std::size_t n_image =
        std::uniform_int_distribution<std::size_t>(caption.empty() ? 1 : 0,
                                                   5)(rng);
    for (std::size_t k = 0; k < n_image; ++k) {
      if (!caption.empty() && chance(0.4))
        image.push_back(pick(caption));
      else
        image.push_back(chance(0.05) ? pick(kUnknownNouns)
                                     : pick(kKnownNouns));
    }
    record["caption_objects"] = caption;
    record["image_objects"] = image;
    record["caption_triples"] = triple_list(caption);
    record["image_triples"] = triple_list(image);
    if (chance(0.5)) {
      record["caption_text"] = sentence();
      json references = json::array();
      const std::size_t n_refs =
          std::uniform_int_distribution<std::size_t>(1, 5)(rng);
      for (std::size_t k = 0; k < n_refs; ++k) references.push_back(sentence());
      record["reference_captions"] = references;
    }
    out << record.dump() << "\n";
  }
  std::cout << "wrote " << count << " records to " << out_path << "\n";
  return 0;
}
