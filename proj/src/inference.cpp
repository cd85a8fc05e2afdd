#include "prn/inference.hpp"

#include <algorithm>

namespace prn {

namespace {

std::string scope_signature(const Outcome& outcome) {
  std::string sig;
  for (const auto& name : variables_of(outcome)) {
    sig += name;
    sig += ',';
  }
  return sig;
}

void validate_against_universe(const Universe& universe, const Outcome& outcome) {
  for (const auto& node : outcome.nodes()) {
    if (!universe.has_variable(node.variable) ||
        !universe.variable(node.variable).has_value(node.value)) {
      fail(errc::unknown_variable_or_tag,
           "evidence names undeclared value " + node.variable + "=" + node.value);
    }
  }
  for (const auto& edge : outcome.edges()) {
    if (!universe.has_tag(edge.tag)) {
      fail(errc::unknown_variable_or_tag, "evidence names undeclared tag " + edge.tag);
    }
  }
}

}  // namespace

ConditionResult condition(const RelationNetwork& net, const Evidence& evidence) {
  validate_against_universe(net.universe(), evidence);
  const std::vector<std::string> evidence_variables = variables_of(evidence);

  std::vector<WeightedOutcome> kept;
  for (const auto& [key, entry] : net.outcomes()) {
    bool shares_variable = false;
    for (const auto& name : evidence_variables) {
      if (entry.outcome.contains_variable(name)) {
        shares_variable = true;
        break;
      }
    }
    if (!shares_variable || is_subgraph(evidence, entry.outcome)) kept.push_back(entry);
  }

  ConditionResult result;
  result.emptied = net.size() > 0 && kept.empty();
  result.network =
      RelationNetwork::from_parts(net.universe(), std::move(kept), net.constructed());
  return result;
}

FactorizationReport check_factorized(const RelationNetwork& net) {
  FactorizationReport report;
  if (net.outcomes().count(Outcome::k0().canonical_key()) != 0) {
    report.factorized = false;
    report.violations.push_back("contains the empty outcome K0");
  }
  // An edge instance may recur between the rows of one factor, but not
  // across factors.
  std::map<Edge, std::string> edge_owner;
  std::set<Edge> reported;
  for (const auto& [key, entry] : net.outcomes()) {
    const std::string sig = scope_signature(entry.outcome);
    for (const auto& edge : entry.outcome.edges()) {
      auto [it, inserted] = edge_owner.emplace(edge, sig);
      if (!inserted && it->second != sig && reported.insert(edge).second) {
        report.factorized = false;
        report.violations.push_back("edge (" + edge.a.variable + "=" + edge.a.value + ")-[" +
                                    edge.tag + "]-(" + edge.b.variable + "=" + edge.b.value +
                                    ") appears in outcomes of different factors");
      }
    }
  }
  return report;
}

bool is_factorized(const RelationNetwork& net) { return check_factorized(net).factorized; }

std::vector<Factor> split_factors(const RelationNetwork& net) {
  FactorizationReport report = check_factorized(net);
  if (!report.factorized) {
    fail(errc::not_factorized, "network is not factorized: " + report.violations.front());
  }
  std::map<std::vector<std::string>, Factor> groups;
  for (const auto& [key, entry] : net.outcomes()) {
    std::vector<std::string> scope = variables_of(entry.outcome);
    auto [it, inserted] = groups.try_emplace(scope);
    if (inserted) it->second.scope = scope;
    it->second.members.push_back(entry);
  }
  std::vector<Factor> factors;
  factors.reserve(groups.size());
  for (auto& [scope, factor] : groups) factors.push_back(std::move(factor));
  return factors;
}

namespace {

/// Intermediate factor state during elimination. After a join absorbs
/// factors of different scopes, members may span heterogeneous variable
/// sets; the scope tracks their union.
struct LiveFactor {
  std::set<std::string> scope;
  std::map<std::string, WeightedOutcome> members;
};

LiveFactor to_live(Factor&& factor) {
  LiveFactor live;
  live.scope.insert(factor.scope.begin(), factor.scope.end());
  for (auto& member : factor.members) {
    live.members.emplace(member.outcome.canonical_key(), std::move(member));
  }
  return live;
}

void accumulate(std::map<std::string, WeightedOutcome>& into, WeightedOutcome entry) {
  auto [it, inserted] = into.emplace(entry.outcome.canonical_key(), std::move(entry));
  if (!inserted) it->second.weight += entry.weight;
}

/// Merges a combination of outcomes that all carry the pivot value. Returns
/// false when two members disagree on a shared variable.
bool merge_combination(const std::vector<const WeightedOutcome*>& chosen,
                       std::vector<ValueId>& nodes, std::vector<Edge>& edges,
                       Rational& weight) {
  std::map<std::string, const std::string*> assignment;
  std::set<ValueId> node_set;
  std::set<Edge> edge_set;
  weight = 1;
  for (const WeightedOutcome* member : chosen) {
    for (const auto& node : member->outcome.nodes()) {
      auto [it, inserted] = assignment.emplace(node.variable, &node.value);
      if (!inserted && *it->second != node.value) return false;
      node_set.insert(node);
    }
    edge_set.insert(member->outcome.edges().begin(), member->outcome.edges().end());
    weight *= member->weight;
  }
  nodes.assign(node_set.begin(), node_set.end());
  edges.assign(edge_set.begin(), edge_set.end());
  return true;
}

WeightedOutcome cross_product(const WeightedOutcome& left, const WeightedOutcome& right) {
  std::vector<ValueId> nodes = left.outcome.nodes();
  nodes.insert(nodes.end(), right.outcome.nodes().begin(), right.outcome.nodes().end());
  std::vector<Edge> edges = left.outcome.edges();
  edges.insert(edges.end(), right.outcome.edges().begin(), right.outcome.edges().end());
  return WeightedOutcome{
      Outcome::from_parts(std::move(nodes), std::move(edges), /*allow_disconnected=*/true),
      left.weight * right.weight};
}

}  // namespace

JointNetwork join_full(const RelationNetwork& net,
                       const std::vector<std::string>& elimination_order) {
  std::vector<Factor> initial = split_factors(net);

  std::vector<LiveFactor> live;
  std::set<std::string> involved;
  for (auto& factor : initial) {
    involved.insert(factor.scope.begin(), factor.scope.end());
    live.push_back(to_live(std::move(factor)));
  }

  std::vector<std::string> order;
  std::set<std::string> pending = involved;
  for (const auto& name : elimination_order) {
    if (!net.universe().has_variable(name)) {
      fail(errc::unknown_variable, "elimination order names unknown variable " + name);
    }
    if (pending.erase(name) != 0) order.push_back(name);
  }
  order.insert(order.end(), pending.begin(), pending.end());

  for (const auto& variable_name : order) {
    std::vector<LiveFactor> gathered;
    for (auto it = live.begin(); it != live.end();) {
      if (it->scope.count(variable_name) != 0) {
        gathered.push_back(std::move(*it));
        it = live.erase(it);
      } else {
        ++it;
      }
    }
    if (gathered.empty()) continue;

    LiveFactor joined;
    for (const auto& factor : gathered) {
      joined.scope.insert(factor.scope.begin(), factor.scope.end());
    }

    for (const auto& value_name : net.universe().variable(variable_name).domain()) {
      const ValueId pivot{variable_name, value_name};

      // A factor with no outcome for this value is skipped: it contributes
      // a neutral weight instead of vetoing the combination.
      std::vector<std::vector<const WeightedOutcome*>> selections;
      for (const auto& factor : gathered) {
        std::vector<const WeightedOutcome*> carrying;
        for (const auto& [key, member] : factor.members) {
          if (member.outcome.contains(pivot)) carrying.push_back(&member);
        }
        if (!carrying.empty()) selections.push_back(std::move(carrying));
      }
      if (selections.empty()) continue;

      std::vector<std::size_t> pick(selections.size(), 0);
      while (true) {
        std::vector<const WeightedOutcome*> chosen;
        chosen.reserve(selections.size());
        for (std::size_t i = 0; i < selections.size(); ++i) {
          chosen.push_back(selections[i][pick[i]]);
        }
        std::vector<ValueId> nodes;
        std::vector<Edge> edges;
        Rational weight;
        if (merge_combination(chosen, nodes, edges, weight)) {
          accumulate(joined.members,
                     WeightedOutcome{Outcome::from_parts(std::move(nodes), std::move(edges)),
                                     std::move(weight)});
        }
        std::size_t digit = 0;
        while (digit < pick.size() && pick[digit] + 1 == selections[digit].size()) {
          pick[digit++] = 0;
        }
        if (digit == pick.size()) break;
        ++pick[digit];
      }
    }
    live.push_back(std::move(joined));
  }

  // One factor remains per folded component; a full joint over everything
  // is their cross product.
  std::map<std::string, WeightedOutcome> result;
  bool first = true;
  for (const auto& factor : live) {
    if (first) {
      result = factor.members;
      first = false;
      continue;
    }
    std::map<std::string, WeightedOutcome> expanded;
    for (const auto& [lk, left] : result) {
      for (const auto& [rk, right] : factor.members) {
        accumulate(expanded, cross_product(left, right));
      }
    }
    result = std::move(expanded);
  }

  JointNetwork joint;
  std::set<std::string> spanned;
  std::vector<WeightedOutcome> outcomes;
  outcomes.reserve(result.size());
  for (auto& [key, entry] : result) {
    for (const auto& node : entry.outcome.nodes()) spanned.insert(node.variable);
    outcomes.push_back(std::move(entry));
  }
  joint.scope.assign(spanned.begin(), spanned.end());
  joint.network =
      RelationNetwork::from_parts(net.universe(), std::move(outcomes), /*constructed=*/true);
  return joint;
}

std::map<std::string, Distribution> joint_marginals(const JointNetwork& joint) {
  if (joint.network.size() == 0) {
    fail(errc::empty_joint, "the joint network has no outcomes");
  }
  std::map<std::string, Distribution> result;
  for (const auto& name : joint.scope) {
    result.emplace(name, joint.network.variable_distribution(name));
  }
  return result;
}

std::map<std::string, Distribution> infer(const RelationNetwork& net,
                                          const std::vector<ValueAssignment>& assignments,
                                          const std::set<std::string>& query) {
  FactorizationReport report = check_factorized(net);
  if (!report.factorized) {
    fail(errc::not_factorized, "inference requires a factorized network: " +
                                   report.violations.front());
  }
  for (const auto& name : query) {
    net.universe().variable(name);  // throws UnknownVariable
  }

  RelationNetwork current = net;
  for (const auto& assignment : assignments) {
    const Variable& variable = net.universe().variable(assignment.variable);
    if (!variable.has_value(assignment.value)) {
      fail(errc::unknown_value,
           "variable " + assignment.variable + " has no value " + assignment.value);
    }
    Evidence evidence = Outcome::from_parts(
        {ValueId{assignment.variable, assignment.value}}, {});
    ConditionResult reduced = condition(current, evidence);
    if (reduced.emptied) {
      fail(errc::contradictory_evidence, "evidence " + assignment.variable + "=" +
                                             assignment.value + " removed every outcome");
    }
    current = std::move(reduced.network);
  }

  JointNetwork joint = join_full(current);
  if (joint.network.size() == 0) {
    fail(errc::empty_joint, "the joint over the conditioned network is empty");
  }

  std::map<std::string, Distribution> result;
  if (query.empty()) {
    return joint_marginals(joint);
  }
  for (const auto& name : query) {
    result.emplace(name, joint.network.variable_distribution(name));
  }
  return result;
}

bool conditionally_independent(const RelationNetwork& net, const std::string& a,
                               const std::string& b, const std::set<std::string>& given) {
  FactorizationReport report = check_factorized(net);
  if (!report.factorized) {
    fail(errc::not_factorized,
         "independence test requires a factorized network: " + report.violations.front());
  }
  net.universe().variable(a);
  net.universe().variable(b);
  for (const auto& name : given) net.universe().variable(name);
  if (a == b || given.count(a) != 0 || given.count(b) != 0) {
    fail(errc::usage_error, "query variables must be distinct and not conditioned on");
  }

  std::vector<std::vector<std::string>> scopes;
  for (const auto& [key, entry] : net.outcomes()) scopes.push_back(variables_of(entry.outcome));

  auto covered_together = [&scopes](const std::string& x, const std::string& y,
                                    const std::string& z) {
    for (const auto& scope : scopes) {
      if (std::binary_search(scope.begin(), scope.end(), x) &&
          std::binary_search(scope.begin(), scope.end(), y) &&
          std::binary_search(scope.begin(), scope.end(), z)) {
        return true;
      }
    }
    return false;
  };

  const FoldedGraph graph = net.folded_graph();

  // Exhaustive simple-path search; every path must be blocked.
  std::vector<std::string> path{a};
  std::set<std::string> on_path{a};
  bool independent = true;

  auto path_blocked = [&](const std::vector<std::string>& p) {
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      if (given.count(p[i]) == 0) continue;
      if (!covered_together(p[i - 1], p[i], p[i + 1])) return true;
    }
    return false;
  };

  auto dfs = [&](auto&& self, const std::string& at) -> void {
    if (!independent) return;
    if (at == b) {
      if (!path_blocked(path)) independent = false;
      return;
    }
    for (const auto& next : graph.neighbors(at)) {
      if (on_path.count(next) != 0) continue;
      on_path.insert(next);
      path.push_back(next);
      self(self, next);
      path.pop_back();
      on_path.erase(next);
    }
  };
  dfs(dfs, a);
  return independent;
}

}  // namespace prn
