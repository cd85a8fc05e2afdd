#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prn/core.hpp"
#include "prn/rational.hpp"

namespace prn {

/// Nonnegative weight attached to a stored outcome: an observation count or
/// an imported potential. Zero weights are representable here but are never
/// stored in a network.
class Weight {
 public:
  explicit Weight(Rational value) : value_(std::move(value)) {
    if (value_ < 0) fail(errc::negative_value, "weights must be nonnegative");
  }
  static Weight from_count(std::uint64_t count) { return Weight(Rational(count)); }

  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

struct WeightedOutcome {
  Outcome outcome;
  Rational weight;
};

/// Per-variable probability map. Entries follow domain order; the unobserved
/// value's probability is carried separately (it has no stored name inside
/// outcomes) and is absent in normalized distributions.
class Distribution {
 public:
  Distribution(std::string variable, std::vector<std::pair<std::string, Rational>> entries,
               std::optional<Rational> unobserved);

  const std::string& variable() const { return variable_; }
  const std::vector<std::pair<std::string, Rational>>& entries() const { return entries_; }
  const std::optional<Rational>& unobserved() const { return unobserved_; }
  Rational probability(const std::string& value) const;
  /// Sum over all entries including the unobserved one when present.
  Rational sum() const;

 private:
  std::string variable_;
  std::vector<std::pair<std::string, Rational>> entries_;
  std::optional<Rational> unobserved_;
};

/// Variable-level adjacency induced by outcome edges: two variables are
/// adjacent iff some outcome links their values. Edge labels collect the
/// multiset of tags over all such outcome edges.
struct FoldedGraph {
  std::vector<std::string> variables;  // sorted
  std::map<std::pair<std::string, std::string>, std::map<std::string, int>> edges;

  std::vector<std::string> neighbors(const std::string& variable) const;
  std::vector<std::vector<std::string>> components() const;
  bool same_component(const std::string& a, const std::string& b) const;
};

/// A probabilistic relation network: variables, relation tags and a weighted
/// multiset of outcomes. Immutable; all queries are pure and safe to run
/// concurrently.
class RelationNetwork {
 public:
  RelationNetwork() = default;

  /// `constructed` marks networks assembled by the joint algorithm rather
  /// than learned from observations; their distributions are a guess.
  static RelationNetwork from_parts(Universe universe, std::vector<WeightedOutcome> outcomes,
                                    bool constructed = false);

  const Universe& universe() const { return universe_; }
  const std::map<std::string, WeightedOutcome>& outcomes() const { return outcomes_; }
  /// N: the sum of all stored weights.
  const Rational& total_count() const { return total_; }
  std::size_t size() const { return outcomes_.size(); }
  bool constructed() const { return constructed_; }

  /// canonical key -> P(outcome). Empty map for an empty network.
  std::map<std::string, Rational> outcome_distribution() const;
  Rational outcome_probability(const Outcome& outcome) const;

  /// Probability of one observable value: the probability mass of the
  /// outcomes containing it.
  Rational value_probability(const ValueId& value) const;
  /// Probability mass of the outcomes containing the given edge.
  Rational edge_probability(const Edge& edge) const;

  /// Full distribution of a variable, unobserved residual included. For an
  /// empty network the whole mass sits on the unobserved value.
  Distribution variable_distribution(const std::string& variable) const;
  /// Distribution over observable values only, rescaled to sum to 1.
  Distribution normalized_distribution(const std::string& variable) const;

  /// P(left | tag right): mass of outcomes containing the edge
  /// {left, right} under `tag`, divided by P(right).
  Rational relation_conditional(const ValueId& left, const std::string& tag,
                                const ValueId& right) const;

  FoldedGraph folded_graph() const;

 private:
  Universe universe_;
  std::map<std::string, WeightedOutcome> outcomes_;  // canonical key -> entry
  Rational total_;
  bool constructed_ = false;
};

/// Accumulates weighted outcomes into a network. Two modes: discovery
/// (default) absorbs variables, values and tags from the outcomes as they
/// arrive; a declared universe switches on strict validation instead.
/// Single-writer; build() seals the result.
class NetworkBuilder {
 public:
  NetworkBuilder() : discovery_(true) {}
  explicit NetworkBuilder(Universe declared) : discovery_(false), universe_(std::move(declared)) {}

  NetworkBuilder& add_outcome(const Outcome& outcome, const Weight& weight);
  NetworkBuilder& add_outcome(const Outcome& outcome) {
    return add_outcome(outcome, Weight::from_count(1));
  }

  RelationNetwork build() const;

 private:
  bool discovery_;
  Universe universe_;  // strict mode only
  std::map<std::string, std::vector<std::string>> seen_values_;  // discovery: first-seen order
  std::set<std::string> seen_tags_;
  std::map<std::string, WeightedOutcome> accumulated_;
};

/// Online learning over an observation stream: each record increments its
/// outcome's count. Any permutation of the records yields the same network.
RelationNetwork learn_stream(const std::vector<Outcome>& records);
RelationNetwork learn_stream(const std::vector<Outcome>& records, Universe declared);

}  // namespace prn
