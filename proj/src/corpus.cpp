#include "sigmatree/corpus.hpp"

#include <algorithm>

#include "sigmatree/error.hpp"

namespace sigmatree {

namespace {

// One-relator HNN extension over a 2-rose: vertex group <a>, stable letters
// s, t with a^s = a^2, a^t = a^3. Collapsing the normal closure of <a> gives
// the Cayley graph of the free group on x = image(s), y = image(t).
constexpr const char* kTwoRose = R"({
  "name": "two_rose",
  "upstairs": {
    "vertex_types": ["Vt"],
    "edge_classes": [
      {"id": "s+", "from": "Vt", "to": "Vt", "reverse": "s-", "mult": 1},
      {"id": "s-", "from": "Vt", "to": "Vt", "reverse": "s+", "mult": 2},
      {"id": "t+", "from": "Vt", "to": "Vt", "reverse": "t-", "mult": 1},
      {"id": "t-", "from": "Vt", "to": "Vt", "reverse": "t+", "mult": 3}
    ]
  },
  "downstairs": {
    "vertex_types": ["V"],
    "edge_classes": [
      {"id": "x+", "from": "V", "to": "V", "reverse": "x-", "mult": 1},
      {"id": "x-", "from": "V", "to": "V", "reverse": "x+", "mult": 1},
      {"id": "y+", "from": "V", "to": "V", "reverse": "y-", "mult": 1},
      {"id": "y-", "from": "V", "to": "V", "reverse": "y+", "mult": 1}
    ]
  },
  "q": {
    "vertex_map": {"Vt": "V"},
    "cells": [
      {"at": "Vt", "target": "x+", "coverage": 1, "sources": [{"class": "s+", "fiber": 1}]},
      {"at": "Vt", "target": "x-", "coverage": 1, "sources": [{"class": "s-", "fiber": 2}]},
      {"at": "Vt", "target": "y+", "coverage": 1, "sources": [{"class": "t+", "fiber": 1}]},
      {"at": "Vt", "target": "y-", "coverage": 1, "sources": [{"class": "t-", "fiber": 3}]}
    ]
  }
}
)";

// D_inf * D_inf -> K4 * K4, abelianizing each free factor. Edge stabilizers
// are trivial, so every upstairs vertex has countably many edges, and the
// infinite kernel of D_inf -> K4 collapses them onto four.
constexpr const char* kFreeProduct = R"({
  "name": "free_product",
  "upstairs": {
    "vertex_types": ["A1", "A2"],
    "edge_classes": [
      {"id": "a", "from": "A1", "to": "A2", "reverse": "b", "mult": "omega"},
      {"id": "b", "from": "A2", "to": "A1", "reverse": "a", "mult": "omega"}
    ]
  },
  "downstairs": {
    "vertex_types": ["Q1", "Q2"],
    "edge_classes": [
      {"id": "x", "from": "Q1", "to": "Q2", "reverse": "y", "mult": 4},
      {"id": "y", "from": "Q2", "to": "Q1", "reverse": "x", "mult": 4}
    ]
  },
  "q": {
    "vertex_map": {"A1": "Q1", "A2": "Q2"},
    "cells": [
      {"at": "A1", "target": "x", "coverage": 4, "sources": [{"class": "a", "fiber": "omega"}]},
      {"at": "A2", "target": "y", "coverage": 4, "sources": [{"class": "b", "fiber": "omega"}]}
    ]
  }
}
)";

// BS(2,4) -> BS(1,2), adding t a t^-1 = a^2. Edge group indices 2 and 4
// upstairs, 1 and 2 downstairs.
constexpr const char* kBs24ToBs12 = R"({
  "name": "bs24_to_bs12",
  "upstairs": {
    "vertex_types": ["Vt"],
    "edge_classes": [
      {"id": "s+", "from": "Vt", "to": "Vt", "reverse": "s-", "mult": 2},
      {"id": "s-", "from": "Vt", "to": "Vt", "reverse": "s+", "mult": 4}
    ]
  },
  "downstairs": {
    "vertex_types": ["V"],
    "edge_classes": [
      {"id": "u+", "from": "V", "to": "V", "reverse": "u-", "mult": 1},
      {"id": "u-", "from": "V", "to": "V", "reverse": "u+", "mult": 2}
    ]
  },
  "q": {
    "vertex_map": {"Vt": "V"},
    "cells": [
      {"at": "Vt", "target": "u+", "coverage": 1, "sources": [{"class": "s+", "fiber": 2}]},
      {"at": "Vt", "target": "u-", "coverage": 2, "sources": [{"class": "s-", "fiber": 2}]}
    ]
  }
}
)";

// Synthetic control: only the downward class u- is hit by collapsing pairs,
// leaving the upward end unfaced. No group realization is claimed.
constexpr const char* kAscendingSynthetic = R"({
  "name": "ascending_synthetic",
  "upstairs": {
    "vertex_types": ["Vt"],
    "edge_classes": [
      {"id": "s+", "from": "Vt", "to": "Vt", "reverse": "s-", "mult": 1},
      {"id": "s-", "from": "Vt", "to": "Vt", "reverse": "s+", "mult": 4}
    ]
  },
  "downstairs": {
    "vertex_types": ["V"],
    "edge_classes": [
      {"id": "u+", "from": "V", "to": "V", "reverse": "u-", "mult": 1},
      {"id": "u-", "from": "V", "to": "V", "reverse": "u+", "mult": 2}
    ]
  },
  "q": {
    "vertex_map": {"Vt": "V"},
    "cells": [
      {"at": "Vt", "target": "u+", "coverage": 1, "sources": [{"class": "s+", "fiber": 1}]},
      {"at": "Vt", "target": "u-", "coverage": 2, "sources": [{"class": "s-", "fiber": 2}]}
    ]
  }
}
)";

// Identity on the 2-regular line.
constexpr const char* kLineIdentity = R"({
  "name": "line_identity",
  "upstairs": {
    "vertex_types": ["Vt"],
    "edge_classes": [
      {"id": "a+", "from": "Vt", "to": "Vt", "reverse": "a-", "mult": 1},
      {"id": "a-", "from": "Vt", "to": "Vt", "reverse": "a+", "mult": 1}
    ]
  },
  "downstairs": {
    "vertex_types": ["V"],
    "edge_classes": [
      {"id": "x+", "from": "V", "to": "V", "reverse": "x-", "mult": 1},
      {"id": "x-", "from": "V", "to": "V", "reverse": "x+", "mult": 1}
    ]
  },
  "q": {
    "vertex_map": {"Vt": "V"},
    "cells": [
      {"at": "Vt", "target": "x+", "coverage": 1, "sources": [{"class": "a+", "fiber": 1}]},
      {"at": "Vt", "target": "x-", "coverage": 1, "sources": [{"class": "a-", "fiber": 1}]}
    ]
  }
}
)";

const std::vector<CorpusEntry>& entries() {
  using O = Origin;
  static const std::vector<CorpusEntry> all = {
      {"two_rose",
       "HNN extension <a,s,t | a^s = a^2, a^t = a^3> over a 2-rose mapped onto the Cayley graph of F(x,y)",
       kTwoRose,
       {{true, O::Stated},
        {false, O::Stated},
        {true, O::Stated},
        {"AllFaced", O::Computed},
        std::nullopt,
        {"Empty", O::Stated},
        {Multiplicity::finite(7), O::Stated},
        {4, O::Stated}}},
      {"free_product",
       "D_inf * D_inf acting on its Bass-Serre tree, collapsed onto the tree of K4 * K4",
       kFreeProduct,
       {{true, O::Stated},
        {false, O::Stated},
        {true, O::Stated},
        {"AllFaced", O::Computed},
        std::nullopt,
        {"Empty", O::Stated},
        {Multiplicity::omega(), O::Stated},
        {4, O::Stated}}},
      {"bs24_to_bs12",
       "BS(2,4) -> BS(1,2) induced map of Bass-Serre trees",
       kBs24ToBs12,
       {{true, O::Stated},
        {false, O::Stated},
        {true, O::Stated},
        {"AllFaced", O::Computed},
        std::nullopt,
        {"Empty", O::Computed},
        {Multiplicity::finite(6), O::Computed},
        {3, O::Computed}}},
      {"ascending_synthetic",
       "synthetic control with a single unfaced end along u+",
       kAscendingSynthetic,
       {{true, O::Computed},
        {false, O::Computed},
        {true, O::Computed},
        {"UniqueCandidate", O::Computed},
        Expectation<std::vector<std::string>>{{"u+"}, O::Computed},
        {"AtMostOne", O::Computed},
        {Multiplicity::finite(5), O::Computed},
        {3, O::Computed}}},
      {"line_identity",
       "identity map of the 2-regular line",
       kLineIdentity,
       {{true, O::Immediate},
        {true, O::Immediate},
        {false, O::Immediate},
        {"Inconclusive", O::Immediate},
        std::nullopt,
        {"Unknown", O::Immediate},
        {Multiplicity::finite(2), O::Immediate},
        {2, O::Immediate}}},
  };
  return all;
}

}  // namespace

std::vector<std::string> corpus_names() {
  std::vector<std::string> names;
  for (const auto& e : entries()) names.push_back(e.name);
  return names;
}

const CorpusEntry& load_example(std::string_view name) {
  const auto& all = entries();
  auto it = std::find_if(all.begin(), all.end(), [&](const CorpusEntry& e) { return e.name == name; });
  if (it != all.end()) return *it;
  std::string avail;
  for (const auto& e : all) avail += (avail.empty() ? "" : ", ") + e.name;
  throw Error(ErrorKind::InvalidInput, "unknown example '" + std::string(name) + "'; available: " + avail);
}

}  // namespace sigmatree
