#include "prn/counting.hpp"

#include <algorithm>

namespace prn {

namespace {

BigInt int_pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt factor = base;
  while (exponent != 0) {
    if (exponent & 1) result *= factor;
    factor *= factor;
    exponent >>= 1;
  }
  return result;
}

std::uint64_t pair_count(std::uint64_t k) { return k * (k - 1) / 2; }

}  // namespace

void CountParams::validate() const {
  if (variable_count < 1) fail(errc::invariant_violation, "need at least one variable");
  if (values_per_variable < 2) {
    fail(errc::invariant_violation,
         "need at least two values per variable (one observable plus the unobserved)");
  }
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt count_sample_space(std::uint64_t event_count, std::uint64_t relation_count) {
  if (event_count < 1) fail(errc::invariant_violation, "need at least one event");
  return int_pow(BigInt(relation_count + 1), pair_count(event_count)) + event_count;
}

BigInt count_connected(std::uint32_t vertex_count, std::uint32_t relation_count) {
  if (vertex_count < 1) fail(errc::invariant_violation, "need at least one vertex");
  const BigInt labelings_base = relation_count + 1;
  std::vector<BigInt> connected(vertex_count + 1);
  for (std::uint32_t k = 1; k <= vertex_count; ++k) {
    BigInt sum = 0;
    for (std::uint32_t i = 1; i < k; ++i) {
      sum += BigInt(i) * binomial(k, i) * int_pow(labelings_base, pair_count(k - i)) *
             connected[i];
    }
    if (sum % k != 0) {
      fail(errc::non_integral_recursion,
           "connected-count recursion is not divisible by k=" + std::to_string(k));
    }
    connected[k] = int_pow(labelings_base, pair_count(k)) - sum / k;
  }
  return connected[vertex_count];
}

BigInt count_max_outcomes(const CountParams& params) {
  params.validate();
  const BigInt values = params.values_per_variable - 1;
  BigInt total = 0;
  for (std::uint32_t k = 1; k <= params.variable_count; ++k) {
    total += binomial(params.variable_count, k) * count_connected(k, params.relation_count) *
             int_pow(values, k);
  }
  return total;
}

namespace {

/// Workload bound: labelings examined across all variable subsets and value
/// selections.
BigInt enumeration_workload(const std::vector<std::size_t>& domain_sizes,
                            std::size_t tag_count) {
  const std::size_t n = domain_sizes.size();
  BigInt total = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    BigInt selections = 1;
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t(1) << i)) {
        selections *= domain_sizes[i];
        ++k;
      }
    }
    total += selections * int_pow(BigInt(tag_count + 1), pair_count(k));
  }
  return total;
}

bool labeling_connected(std::size_t k, const std::vector<std::size_t>& labels) {
  if (k <= 1) return true;
  // Union-find over the k chosen vertices.
  std::vector<std::size_t> parent(k);
  for (std::size_t i = 0; i < k; ++i) parent[i] = i;
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t pair_index = 0;
  std::size_t merged = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j, ++pair_index) {
      if (labels[pair_index] == 0) continue;
      std::size_t ri = find(i);
      std::size_t rj = find(j);
      if (ri != rj) {
        parent[ri] = rj;
        ++merged;
      }
    }
  }
  return merged == k - 1;
}

}  // namespace

std::vector<Outcome> enumerate_outcomes(const Universe& universe, std::uint64_t cap) {
  std::vector<const Variable*> variables;
  for (const auto& [name, variable] : universe.variables()) variables.push_back(&variable);
  std::vector<std::string> tags(universe.tags().begin(), universe.tags().end());

  const std::size_t n = variables.size();
  if (n == 0) return {};
  if (n >= 63) fail(errc::enumeration_cap_exceeded, "too many variables to enumerate");

  std::vector<std::size_t> domain_sizes;
  for (const auto* variable : variables) domain_sizes.push_back(variable->domain().size());
  if (enumeration_workload(domain_sizes, tags.size()) > cap) {
    fail(errc::enumeration_cap_exceeded,
         "enumeration workload exceeds the cap of " + std::to_string(cap));
  }

  std::vector<Outcome> outcomes;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t(1) << i)) chosen.push_back(i);
    }
    const std::size_t k = chosen.size();
    const std::size_t pairs = k * (k - 1) / 2;

    std::vector<std::size_t> value_pick(k, 0);
    while (true) {
      std::vector<ValueId> nodes;
      nodes.reserve(k);
      for (std::size_t i = 0; i < k; ++i) {
        const Variable& variable = *variables[chosen[i]];
        nodes.push_back(ValueId{variable.name(), variable.domain()[value_pick[i]]});
      }

      std::vector<std::size_t> labels(pairs, 0);
      while (true) {
        if (labeling_connected(k, labels)) {
          std::vector<Edge> edges;
          std::size_t pair_index = 0;
          for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j, ++pair_index) {
              if (labels[pair_index] != 0) {
                edges.push_back(Edge::between(nodes[i], nodes[j], tags[labels[pair_index] - 1]));
              }
            }
          }
          outcomes.push_back(Outcome::from_parts(nodes, std::move(edges)));
        }
        // Advance the edge-labeling odometer (base tag_count+1).
        std::size_t digit = 0;
        while (digit < pairs && labels[digit] == tags.size()) labels[digit++] = 0;
        if (digit == pairs) break;
        ++labels[digit];
      }

      std::size_t digit = 0;
      while (digit < k && value_pick[digit] + 1 == domain_sizes[chosen[digit]]) {
        value_pick[digit++] = 0;
      }
      if (digit == k) break;
      ++value_pick[digit];
    }
  }

  std::sort(outcomes.begin(), outcomes.end());
  outcomes.erase(std::unique(outcomes.begin(), outcomes.end()), outcomes.end());
  return outcomes;
}

}  // namespace prn
