#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prn/error.hpp"

namespace prn {

/// A value of a random variable. Value names are unique within their
/// variable's domain, and a value belongs to exactly one variable, so the
/// pair identifies a vertex globally.
struct ValueId {
  std::string variable;
  std::string value;

  auto operator<=>(const ValueId&) const = default;
};

/// A typed relation between values of two distinct variables. Endpoints are
/// unordered; direction semantics, when present, live in the tag name
/// (e.g. "2 after 1").
struct Edge {
  ValueId a;  // invariant: a <= b
  ValueId b;
  std::string tag;

  /// Normalizes endpoint order. Rejects endpoints from the same variable.
  static Edge between(ValueId x, ValueId y, std::string tag);

  auto operator<=>(const Edge&) const = default;
};

class Variable {
 public:
  Variable(std::string name, std::vector<std::string> domain);

  const std::string& name() const { return name_; }
  /// Observable values in declaration order. Does not include the
  /// unobserved value, which is synthetic.
  const std::vector<std::string>& domain() const { return domain_; }
  /// Display name of the unobserved value; guaranteed to not collide with
  /// any domain value.
  const std::string& unobserved_name() const { return unobserved_; }
  bool has_value(const std::string& value) const { return lookup_.count(value) != 0; }
  std::size_t value_index(const std::string& value) const;

 private:
  std::string name_;
  std::vector<std::string> domain_;
  std::set<std::string> lookup_;
  std::string unobserved_;
};

/// The declared variables and relation tags that outcome names resolve
/// against.
class Universe {
 public:
  Universe() = default;

  void declare_variable(const std::string& name, std::vector<std::string> domain);
  void declare_tag(const std::string& name);

  bool has_variable(const std::string& name) const { return variables_.count(name) != 0; }
  bool has_tag(const std::string& name) const { return tags_.count(name) != 0; }
  const Variable& variable(const std::string& name) const;

  const std::map<std::string, Variable>& variables() const { return variables_; }
  const std::set<std::string>& tags() const { return tags_; }

 private:
  std::map<std::string, Variable> variables_;
  std::set<std::string> tags_;
};

/// A structured outcome: a connected graph whose vertices are values of
/// distinct variables and whose edges are typed relations. The empty
/// outcome K0 is the sole disconnected member. Immutable; nodes and edges
/// are kept sorted, so equality is plain component equality.
class Outcome {
 public:
  Outcome() = default;  // K0

  static const Outcome& k0();

  /// Builds from already-resolved parts. Validates one-value-per-variable,
  /// edge endpoints, and connectivity. `allow_disconnected` is reserved for
  /// constructed joints of networks whose folded graph has several
  /// components; parsed input never sets it.
  static Outcome from_parts(std::vector<ValueId> nodes, std::vector<Edge> edges,
                            bool allow_disconnected = false);

  const std::vector<ValueId>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool empty() const { return nodes_.empty(); }
  bool contains(const ValueId& node) const;
  bool contains(const Edge& edge) const;
  bool contains_variable(const std::string& variable) const;
  /// Value carried for the given variable, or nullptr when absent.
  const ValueId* value_of(const std::string& variable) const;

  /// Deterministic byte-string identity: equal outcomes yield equal keys
  /// regardless of construction order.
  const std::string& canonical_key() const { return key_; }

  bool operator==(const Outcome& other) const { return key_ == other.key_; }
  bool operator<(const Outcome& other) const { return key_ < other.key_; }

 private:
  std::vector<ValueId> nodes_;  // sorted by (variable, value)
  std::vector<Edge> edges_;     // sorted, unique
  std::string key_;
};

struct EdgeSpec {
  std::size_t a = 0;
  std::size_t b = 0;
  std::string tag;
};

/// Resolves node and edge names against the universe and builds a valid
/// outcome. Node and edge insertion order does not affect identity.
Outcome make_outcome(const Universe& universe,
                     const std::vector<std::pair<std::string, std::string>>& nodes,
                     const std::vector<EdgeSpec>& edges = {});

/// True iff candidate's nodes and edges are both subsets of host's.
bool is_subgraph(const Outcome& candidate, const Outcome& host);

/// Sorted names of the variables with a value in the outcome.
std::vector<std::string> variables_of(const Outcome& outcome);

/// Human-readable one-line rendering, e.g. "(V1=h1)-[r1]-(V2=h2)".
std::string render_outcome(const Outcome& outcome);

}  // namespace prn
