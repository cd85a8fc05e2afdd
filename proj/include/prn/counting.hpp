#pragma once

#include <cstdint>
#include <vector>

#include "prn/core.hpp"
#include "prn/rational.hpp"

namespace prn {

struct CountParams {
  std::uint32_t variable_count = 0;      // number of variables
  std::uint32_t values_per_variable = 0;  // values per variable, including the unobserved one
  std::uint32_t relation_count = 0;       // number of relation tags

  void validate() const;
};

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// (relation_count+1)^(event_count*(event_count-1)/2) + event_count: the raw
/// sample-space size over a flat event set. Counts every edge labeling of the
/// full vertex set, connected or not, plus the single-event outcomes.
BigInt count_sample_space(std::uint64_t event_count, std::uint64_t relation_count);

/// Number of connected labeled graphs on `vertex_count` vertices where each
/// vertex pair is either unlinked or carries one of `relation_count` tags.
BigInt count_connected(std::uint32_t vertex_count, std::uint32_t relation_count);

/// Maximum number of distinct nonempty outcomes over the given shape:
/// sum over k of C(nV,k) * C_k * (nE-1)^k.
BigInt count_max_outcomes(const CountParams& params);

/// Exhaustively generates every valid outcome over the universe's variables
/// and tags, K0 excluded. Deliberately shares nothing with the counting
/// formulas above so it can serve as their cross-check. Refuses workloads
/// beyond `cap` candidate labelings.
std::vector<Outcome> enumerate_outcomes(const Universe& universe, std::uint64_t cap = 1'000'000);

}  // namespace prn
