#include "prn/network.hpp"

#include <algorithm>

namespace prn {

Distribution::Distribution(std::string variable,
                           std::vector<std::pair<std::string, Rational>> entries,
                           std::optional<Rational> unobserved)
    : variable_(std::move(variable)), entries_(std::move(entries)),
      unobserved_(std::move(unobserved)) {}

Rational Distribution::probability(const std::string& value) const {
  for (const auto& [name, probability] : entries_) {
    if (name == value) return probability;
  }
  fail(errc::unknown_value, "distribution of " + variable_ + " has no entry " + value);
}

Rational Distribution::sum() const {
  Rational total = unobserved_.value_or(Rational(0));
  for (const auto& [name, probability] : entries_) total += probability;
  return total;
}

std::vector<std::string> FoldedGraph::neighbors(const std::string& variable) const {
  std::vector<std::string> result;
  for (const auto& [pair, tags] : edges) {
    if (pair.first == variable) result.push_back(pair.second);
    if (pair.second == variable) result.push_back(pair.first);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::vector<std::string>> FoldedGraph::components() const {
  std::vector<std::vector<std::string>> result;
  std::set<std::string> remaining(variables.begin(), variables.end());
  while (!remaining.empty()) {
    std::vector<std::string> component;
    std::vector<std::string> frontier{*remaining.begin()};
    remaining.erase(remaining.begin());
    while (!frontier.empty()) {
      std::string at = std::move(frontier.back());
      frontier.pop_back();
      component.push_back(at);
      for (const auto& next : neighbors(at)) {
        if (remaining.erase(next) != 0) frontier.push_back(next);
      }
    }
    std::sort(component.begin(), component.end());
    result.push_back(std::move(component));
  }
  std::sort(result.begin(), result.end());
  return result;
}

bool FoldedGraph::same_component(const std::string& a, const std::string& b) const {
  for (const auto& component : components()) {
    bool has_a = std::binary_search(component.begin(), component.end(), a);
    bool has_b = std::binary_search(component.begin(), component.end(), b);
    if (has_a || has_b) return has_a && has_b;
  }
  return false;
}

RelationNetwork RelationNetwork::from_parts(Universe universe,
                                            std::vector<WeightedOutcome> outcomes,
                                            bool constructed) {
  RelationNetwork net;
  net.universe_ = std::move(universe);
  net.constructed_ = constructed;
  net.total_ = 0;
  for (auto& entry : outcomes) {
    if (entry.weight <= 0) {
      fail(errc::invariant_violation,
           "outcome " + render_outcome(entry.outcome) + " has nonpositive weight");
    }
    net.total_ += entry.weight;
    auto [it, inserted] = net.outcomes_.emplace(entry.outcome.canonical_key(), entry);
    if (!inserted) it->second.weight += entry.weight;
  }
  return net;
}

std::map<std::string, Rational> RelationNetwork::outcome_distribution() const {
  std::map<std::string, Rational> result;
  if (total_ == 0) return result;
  for (const auto& [key, entry] : outcomes_) result.emplace(key, entry.weight / total_);
  return result;
}

Rational RelationNetwork::outcome_probability(const Outcome& outcome) const {
  if (total_ == 0) return 0;
  auto it = outcomes_.find(outcome.canonical_key());
  if (it == outcomes_.end()) return 0;
  return it->second.weight / total_;
}

Rational RelationNetwork::value_probability(const ValueId& value) const {
  const Variable& variable = universe_.variable(value.variable);
  if (value.value == variable.unobserved_name()) {
    fail(errc::unknown_value, "the unobserved value has no direct probability; "
                              "use variable_distribution");
  }
  if (!variable.has_value(value.value)) {
    fail(errc::unknown_value, "variable " + value.variable + " has no value " + value.value);
  }
  if (total_ == 0) return 0;
  Rational mass = 0;
  for (const auto& [key, entry] : outcomes_) {
    if (entry.outcome.contains(value)) mass += entry.weight;
  }
  return mass / total_;
}

Rational RelationNetwork::edge_probability(const Edge& edge) const {
  if (total_ == 0) return 0;
  Rational mass = 0;
  for (const auto& [key, entry] : outcomes_) {
    if (entry.outcome.contains(edge)) mass += entry.weight;
  }
  return mass / total_;
}

Distribution RelationNetwork::variable_distribution(const std::string& name) const {
  const Variable& variable = universe_.variable(name);
  std::vector<std::pair<std::string, Rational>> entries;
  entries.reserve(variable.domain().size());
  Rational observed = 0;
  for (const auto& value : variable.domain()) {
    Rational p = value_probability(ValueId{name, value});
    observed += p;
    entries.emplace_back(value, std::move(p));
  }
  return Distribution(name, std::move(entries), Rational(1) - observed);
}

Distribution RelationNetwork::normalized_distribution(const std::string& name) const {
  Distribution full = variable_distribution(name);
  Rational observed = full.sum() - *full.unobserved();
  if (observed == 0) {
    fail(errc::all_unobserved, "variable " + name + " was never observed");
  }
  std::vector<std::pair<std::string, Rational>> entries;
  for (const auto& [value, probability] : full.entries()) {
    entries.emplace_back(value, probability / observed);
  }
  return Distribution(name, std::move(entries), std::nullopt);
}

Rational RelationNetwork::relation_conditional(const ValueId& left, const std::string& tag,
                                               const ValueId& right) const {
  if (!universe_.has_tag(tag)) fail(errc::unknown_name, "no relation tag named " + tag);
  Rational right_mass = value_probability(right);
  if (right_mass == 0) {
    fail(errc::zero_condition_mass,
         "P(" + right.value + ") is zero; the conditional is undefined");
  }
  Rational joint = edge_probability(Edge::between(left, right, tag));
  return joint / right_mass;
}

FoldedGraph RelationNetwork::folded_graph() const {
  FoldedGraph graph;
  for (const auto& [name, variable] : universe_.variables()) graph.variables.push_back(name);
  for (const auto& [key, entry] : outcomes_) {
    for (const auto& edge : entry.outcome.edges()) {
      auto pair = std::minmax(edge.a.variable, edge.b.variable);
      ++graph.edges[{pair.first, pair.second}][edge.tag];
    }
  }
  return graph;
}

NetworkBuilder& NetworkBuilder::add_outcome(const Outcome& outcome, const Weight& weight) {
  if (weight.value() == 0) {
    fail(errc::zero_weight, "outcome " + render_outcome(outcome) + " added with zero weight");
  }
  if (discovery_) {
    for (const auto& node : outcome.nodes()) {
      auto& values = seen_values_[node.variable];
      if (std::find(values.begin(), values.end(), node.value) == values.end()) {
        values.push_back(node.value);
      }
    }
    for (const auto& edge : outcome.edges()) seen_tags_.insert(edge.tag);
  } else {
    for (const auto& node : outcome.nodes()) {
      if (!universe_.has_variable(node.variable) ||
          !universe_.variable(node.variable).has_value(node.value)) {
        fail(errc::unknown_variable_or_tag,
             "outcome names undeclared value " + node.variable + "=" + node.value);
      }
    }
    for (const auto& edge : outcome.edges()) {
      if (!universe_.has_tag(edge.tag)) {
        fail(errc::unknown_variable_or_tag, "outcome names undeclared tag " + edge.tag);
      }
    }
  }
  auto [it, inserted] =
      accumulated_.emplace(outcome.canonical_key(), WeightedOutcome{outcome, weight.value()});
  if (!inserted) it->second.weight += weight.value();
  return *this;
}

RelationNetwork NetworkBuilder::build() const {
  Universe universe = universe_;
  if (discovery_) {
    for (const auto& [name, values] : seen_values_) universe.declare_variable(name, values);
    for (const auto& tag : seen_tags_) universe.declare_tag(tag);
  }
  std::vector<WeightedOutcome> outcomes;
  outcomes.reserve(accumulated_.size());
  for (const auto& [key, entry] : accumulated_) outcomes.push_back(entry);
  return RelationNetwork::from_parts(std::move(universe), std::move(outcomes));
}

RelationNetwork learn_stream(const std::vector<Outcome>& records) {
  NetworkBuilder builder;
  for (const auto& record : records) builder.add_outcome(record);
  return builder.build();
}

RelationNetwork learn_stream(const std::vector<Outcome>& records, Universe declared) {
  NetworkBuilder builder(std::move(declared));
  std::size_t index = 0;
  for (const auto& record : records) {
    try {
      builder.add_outcome(record);
    } catch (const Error& error) {
      throw Error(error.code(), "record " + std::to_string(index) + ": " + error.what());
    }
    ++index;
  }
  return builder.build();
}

}  // namespace prn
