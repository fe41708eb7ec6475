#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigmatree/multiplicity.hpp"
#include "sigmatree/ptp.hpp"

namespace sigmatree {

/// Where an expected value comes from.
enum class Origin {
  Stated,     // asserted in the original description of the example
  Computed,   // produced by this tool and re-checked by the ball oracle
  Immediate,  // follows directly from the definitions (identity map, arithmetic)
};

template <class T>
struct Expectation {
  T value;
  Origin origin;
};

struct CorpusExpectations {
  Expectation<bool> locally_surjective;
  Expectation<bool> locally_injective;
  Expectation<bool> main_theorem_applies;
  Expectation<std::string> classification;  // "AllFaced", "UniqueCandidate", "Inconclusive"
  std::optional<Expectation<std::vector<std::string>>> candidate_cycle;  // class ids
  Expectation<std::string> sigma1;          // "Empty", "AtMostOne", "Unknown"
  Expectation<Multiplicity> upstairs_degree;
  Expectation<std::int64_t> downstairs_degree;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  std::string document;  // PTP document text
  CorpusExpectations expected;

  Ptp ptp() const { return load_ptp(document); }
};

/// Names of the built-in entries, in a fixed order.
std::vector<std::string> corpus_names();

/// Throws Error(InvalidInput) listing the available names on a miss.
const CorpusEntry& load_example(std::string_view name);

}  // namespace sigmatree
