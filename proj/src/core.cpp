#include "prn/core.hpp"

#include <algorithm>
#include <queue>

namespace prn {

namespace {

void append_token(std::string& out, const std::string& token) {
  out += std::to_string(token.size());
  out += ':';
  out += token;
}

std::string build_key(const std::vector<ValueId>& nodes, const std::vector<Edge>& edges) {
  std::string key;
  key += 'n';
  key += std::to_string(nodes.size());
  for (const auto& node : nodes) {
    append_token(key, node.variable);
    append_token(key, node.value);
  }
  key += 'e';
  key += std::to_string(edges.size());
  for (const auto& edge : edges) {
    append_token(key, edge.a.variable);
    append_token(key, edge.a.value);
    append_token(key, edge.b.variable);
    append_token(key, edge.b.value);
    append_token(key, edge.tag);
  }
  return key;
}

std::string describe(const ValueId& node) { return node.variable + "=" + node.value; }

}  // namespace

Edge Edge::between(ValueId x, ValueId y, std::string tag) {
  if (x.variable == y.variable) {
    fail(errc::invalid_edge, "edge endpoints " + describe(x) + " and " + describe(y) +
                                 " belong to the same variable");
  }
  Edge edge;
  if (y < x) std::swap(x, y);
  edge.a = std::move(x);
  edge.b = std::move(y);
  edge.tag = std::move(tag);
  return edge;
}

Variable::Variable(std::string name, std::vector<std::string> domain)
    : name_(std::move(name)), domain_(std::move(domain)) {
  if (name_.empty()) fail(errc::invariant_violation, "variable name must be nonempty");
  if (domain_.empty()) {
    fail(errc::invariant_violation, "variable " + name_ + " has an empty domain");
  }
  for (const auto& value : domain_) {
    if (value.empty()) fail(errc::invariant_violation, "empty value name in " + name_);
    if (!lookup_.insert(value).second) {
      fail(errc::invariant_violation, "duplicate value " + value + " in domain of " + name_);
    }
  }
  unobserved_ = "u";
  while (lookup_.count(unobserved_) != 0) unobserved_ += '*';
}

std::size_t Variable::value_index(const std::string& value) const {
  auto it = std::find(domain_.begin(), domain_.end(), value);
  if (it == domain_.end()) {
    fail(errc::unknown_value, "variable " + name_ + " has no value " + value);
  }
  return static_cast<std::size_t>(it - domain_.begin());
}

void Universe::declare_variable(const std::string& name, std::vector<std::string> domain) {
  if (variables_.count(name) != 0) {
    fail(errc::invariant_violation, "variable " + name + " declared twice");
  }
  variables_.emplace(name, Variable(name, std::move(domain)));
}

void Universe::declare_tag(const std::string& name) {
  if (name.empty()) fail(errc::invariant_violation, "relation tag name must be nonempty");
  tags_.insert(name);
}

const Variable& Universe::variable(const std::string& name) const {
  auto it = variables_.find(name);
  if (it == variables_.end()) fail(errc::unknown_variable, "no variable named " + name);
  return it->second;
}

const Outcome& Outcome::k0() {
  static const Outcome empty;
  return empty;
}

Outcome Outcome::from_parts(std::vector<ValueId> nodes, std::vector<Edge> edges,
                            bool allow_disconnected) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].variable == nodes[i - 1].variable) {
      fail(errc::duplicate_variable, "values " + nodes[i - 1].value + " and " + nodes[i].value +
                                         " both belong to variable " + nodes[i].variable);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::map<ValueId, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
  std::vector<std::vector<std::size_t>> adjacency(nodes.size());
  for (const auto& edge : edges) {
    auto a = index.find(edge.a);
    auto b = index.find(edge.b);
    if (a == index.end() || b == index.end()) {
      fail(errc::invariant_violation, "edge endpoint is not among the outcome's nodes");
    }
    adjacency[a->second].push_back(b->second);
    adjacency[b->second].push_back(a->second);
  }

  if (!allow_disconnected && nodes.size() > 1) {
    std::vector<bool> seen(nodes.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      std::size_t at = frontier.front();
      frontier.pop();
      for (std::size_t next : adjacency[at]) {
        if (!seen[next]) {
          seen[next] = true;
          ++reached;
          frontier.push(next);
        }
      }
    }
    if (reached != nodes.size()) {
      fail(errc::disconnected, "outcome graph with " + std::to_string(nodes.size()) +
                                   " nodes is not connected");
    }
  }

  Outcome outcome;
  outcome.nodes_ = std::move(nodes);
  outcome.edges_ = std::move(edges);
  outcome.key_ = build_key(outcome.nodes_, outcome.edges_);
  return outcome;
}

bool Outcome::contains(const ValueId& node) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), node);
}

bool Outcome::contains(const Edge& edge) const {
  return std::binary_search(edges_.begin(), edges_.end(), edge);
}

bool Outcome::contains_variable(const std::string& variable) const {
  return value_of(variable) != nullptr;
}

const ValueId* Outcome::value_of(const std::string& variable) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), variable,
                             [](const ValueId& node, const std::string& name) {
                               return node.variable < name;
                             });
  if (it == nodes_.end() || it->variable != variable) return nullptr;
  return &*it;
}

Outcome make_outcome(const Universe& universe,
                     const std::vector<std::pair<std::string, std::string>>& nodes,
                     const std::vector<EdgeSpec>& edges) {
  std::vector<ValueId> resolved;
  resolved.reserve(nodes.size());
  for (const auto& [variable_name, value_name] : nodes) {
    if (!universe.has_variable(variable_name)) {
      fail(errc::unknown_name, "no variable named " + variable_name);
    }
    const Variable& variable = universe.variable(variable_name);
    if (value_name == variable.unobserved_name()) {
      fail(errc::unobserved_value_used,
           "the unobserved value of " + variable_name + " cannot appear in an outcome");
    }
    if (!variable.has_value(value_name)) {
      fail(errc::unknown_name, "variable " + variable_name + " has no value " + value_name);
    }
    resolved.push_back(ValueId{variable_name, value_name});
  }

  std::vector<Edge> resolved_edges;
  resolved_edges.reserve(edges.size());
  for (const auto& spec : edges) {
    if (spec.a >= nodes.size() || spec.b >= nodes.size()) {
      fail(errc::dangling_edge_index,
           "edge references node index " + std::to_string(std::max(spec.a, spec.b)) +
               " but the outcome has " + std::to_string(nodes.size()) + " nodes");
    }
    if (!universe.has_tag(spec.tag)) {
      fail(errc::unknown_name, "no relation tag named " + spec.tag);
    }
    resolved_edges.push_back(Edge::between(resolved[spec.a], resolved[spec.b], spec.tag));
  }
  return Outcome::from_parts(std::move(resolved), std::move(resolved_edges));
}

bool is_subgraph(const Outcome& candidate, const Outcome& host) {
  return std::includes(host.nodes().begin(), host.nodes().end(), candidate.nodes().begin(),
                       candidate.nodes().end()) &&
         std::includes(host.edges().begin(), host.edges().end(), candidate.edges().begin(),
                       candidate.edges().end());
}

std::vector<std::string> variables_of(const Outcome& outcome) {
  std::vector<std::string> names;
  names.reserve(outcome.nodes().size());
  for (const auto& node : outcome.nodes()) names.push_back(node.variable);
  return names;  // nodes are sorted by variable and unique per variable
}

std::string render_outcome(const Outcome& outcome) {
  if (outcome.empty()) return "K0";
  std::string out;
  std::set<ValueId> in_edges;
  for (const auto& edge : outcome.edges()) {
    if (!out.empty()) out += "; ";
    out += "(" + describe(edge.a) + ")-[" + edge.tag + "]-(" + describe(edge.b) + ")";
    in_edges.insert(edge.a);
    in_edges.insert(edge.b);
  }
  for (const auto& node : outcome.nodes()) {
    if (in_edges.count(node) != 0) continue;
    if (!out.empty()) out += "; ";
    out += "(" + describe(node) + ")";
  }
  return out;
}

}  // namespace prn
