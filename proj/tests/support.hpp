#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sigmatree/ball.hpp"
#include "sigmatree/end_spec.hpp"
#include "sigmatree/ptp.hpp"

namespace sigmatree::testing {

using Rng = std::mt19937_64;

/// Random valid PTP: at most 4 vertex types on each side, multiplicities at
/// most 5, downstairs stars of size 2..4, locally surjective, with at least
/// one collapsing cell and no partially marked class. Returns the document.
std::string random_ptp_document(Rng& rng);

/// random_ptp_document, parsed.
Ptp random_ptp(Rng& rng);

/// Random eventually periodic end starting at `base`: prefix of length
/// 0..max_prefix, cycle of length 1..max_cycle. Returns nullopt if no valid
/// end was found after a number of attempts.
std::optional<EndSpec> random_end(const Ptp& ptp, TypeIndex base, Rng& rng, int max_prefix = 2, int max_cycle = 3);

/// Random end from a random downstairs type.
std::optional<EndSpec> random_end(const Ptp& ptp, Rng& rng, int max_prefix = 2, int max_cycle = 3);

/// Some upstairs type over `down`.
TypeIndex up_type_over(const Ptp& ptp, TypeIndex down);

/// Brute count of the lifts of `ray` starting at the up base, by walking the
/// ball directly.
std::int64_t count_lifts(const MappedBallPair& pair, const RayInstance& ray, std::size_t depth);

}  // namespace sigmatree::testing
