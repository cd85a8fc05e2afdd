#include "prn/interop.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace prn {

namespace {

std::size_t table_cells(const std::vector<std::pair<std::string, std::size_t>>& scope) {
  std::size_t cells = 1;
  for (const auto& [name, cardinality] : scope) cells *= cardinality;
  return cells;
}

void check_scope(const Universe& universe,
                 const std::vector<std::pair<std::string, std::size_t>>& scope) {
  std::set<std::string> seen;
  for (const auto& [name, cardinality] : scope) {
    const Variable& variable = universe.variable(name);
    if (cardinality == 0 || cardinality != variable.domain().size()) {
      fail(errc::invariant_violation,
           "table cardinality for " + name + " does not match its declared domain");
    }
    if (!seen.insert(name).second) {
      fail(errc::invariant_violation, "variable " + name + " repeats in a table scope");
    }
  }
}

bool advance(std::vector<std::size_t>& indices,
             const std::vector<std::pair<std::string, std::size_t>>& scope) {
  // Row-major odometer: the last scope variable varies fastest.
  std::size_t position = indices.size();
  while (position > 0) {
    --position;
    if (++indices[position] < scope[position].second) return true;
    indices[position] = 0;
  }
  return false;
}

std::size_t flat_index(const std::vector<std::size_t>& indices,
                       const std::vector<std::pair<std::string, std::size_t>>& scope) {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    flat = flat * scope[i].second + indices[i];
  }
  return flat;
}

}  // namespace

void FactorTable::validate(const Universe& universe) const {
  if (scope.empty()) fail(errc::invariant_violation, "factor scope must be nonempty");
  check_scope(universe, scope);
  if (values.size() != table_cells(scope)) {
    fail(errc::invariant_violation,
         "factor table has " + std::to_string(values.size()) + " values, expected " +
             std::to_string(table_cells(scope)));
  }
  for (const auto& value : values) {
    if (value < 0) fail(errc::negative_value, "factor potentials must be nonnegative");
  }
}

void CptTable::validate(const Universe& universe) const {
  std::vector<std::pair<std::string, std::size_t>> all{child};
  all.insert(all.end(), parents.begin(), parents.end());
  check_scope(universe, all);

  const std::size_t assignments = table_cells(parents);
  if (values.size() != child.second) {
    fail(errc::invariant_violation, "CPT of " + child.first + " needs one row per child value");
  }
  for (const auto& row : values) {
    if (row.size() != assignments) {
      fail(errc::invariant_violation,
           "CPT of " + child.first + " needs one column per parent assignment");
    }
    for (const auto& value : row) {
      if (value < 0) fail(errc::negative_value, "CPT probabilities must be nonnegative");
    }
  }
  for (std::size_t column = 0; column < assignments; ++column) {
    Rational sum = 0;
    for (const auto& row : values) sum += row[column];
    if (sum != 1) {
      fail(errc::column_not_normalized, "CPT column " + std::to_string(column) + " of " +
                                            child.first + " sums to " + to_fraction_string(sum));
    }
  }
}

std::string family_tag(const CptTable& table) {
  std::string tag = table.child.first + "<-";
  for (std::size_t i = 0; i < table.parents.size(); ++i) {
    if (i != 0) tag += ',';
    tag += table.parents[i].first;
  }
  return tag;
}

std::vector<WeightedOutcome> import_markov_factor(const Universe& universe,
                                                  const FactorTable& table,
                                                  const std::string& tag) {
  table.validate(universe);
  if (table.scope.size() >= 2 && !universe.has_tag(tag)) {
    fail(errc::unknown_name, "no relation tag named " + tag);
  }

  std::vector<WeightedOutcome> outcomes;
  std::vector<std::size_t> indices(table.scope.size(), 0);
  do {
    const Rational& cell = table.values[flat_index(indices, table.scope)];
    if (cell == 0) continue;
    std::vector<ValueId> nodes;
    nodes.reserve(table.scope.size());
    for (std::size_t i = 0; i < table.scope.size(); ++i) {
      const Variable& variable = universe.variable(table.scope[i].first);
      nodes.push_back(ValueId{variable.name(), variable.domain()[indices[i]]});
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        edges.push_back(Edge::between(nodes[i], nodes[j], tag));
      }
    }
    outcomes.push_back(WeightedOutcome{Outcome::from_parts(std::move(nodes), std::move(edges)),
                                       cell});
  } while (advance(indices, table.scope));
  return outcomes;
}

std::vector<WeightedOutcome> import_bayes_cpt(const Universe& universe, const CptTable& table,
                                              const Rational& eta) {
  table.validate(universe);
  if (eta <= 0) fail(errc::invariant_violation, "eta must be positive");
  const std::string tag = family_tag(table);
  if (!table.parents.empty() && !universe.has_tag(tag)) {
    fail(errc::unknown_name, "no relation tag named " + tag);
  }
  const Variable& child = universe.variable(table.child.first);

  std::vector<WeightedOutcome> outcomes;
  std::vector<std::size_t> parent_indices(table.parents.size(), 0);
  std::size_t column = 0;
  do {
    std::vector<ValueId> parent_values;
    parent_values.reserve(table.parents.size());
    for (std::size_t i = 0; i < table.parents.size(); ++i) {
      const Variable& parent = universe.variable(table.parents[i].first);
      parent_values.push_back(ValueId{parent.name(), parent.domain()[parent_indices[i]]});
    }
    for (std::size_t child_index = 0; child_index < child.domain().size(); ++child_index) {
      const Rational& probability = table.values[child_index][column];
      if (probability == 0) continue;
      ValueId child_value{child.name(), child.domain()[child_index]};
      std::vector<ValueId> nodes{child_value};
      nodes.insert(nodes.end(), parent_values.begin(), parent_values.end());
      std::vector<Edge> edges;
      for (const auto& parent_value : parent_values) {
        edges.push_back(Edge::between(child_value, parent_value, tag));
      }
      outcomes.push_back(WeightedOutcome{
          Outcome::from_parts(std::move(nodes), std::move(edges)), probability * eta});
    }
    ++column;
  } while (advance(parent_indices, table.parents));
  return outcomes;
}

FactorTable cpt_to_factor_table(const CptTable& table) {
  FactorTable factor;
  factor.scope.push_back(table.child);
  factor.scope.insert(factor.scope.end(), table.parents.begin(), table.parents.end());
  const std::size_t assignments = table_cells(table.parents);
  factor.values.reserve(table.child.second * assignments);
  for (std::size_t child_index = 0; child_index < table.values.size(); ++child_index) {
    for (std::size_t column = 0; column < assignments; ++column) {
      factor.values.push_back(table.values[child_index][column]);
    }
  }
  return factor;
}

std::map<AssignmentKey, Rational> brute_force_joint(const Universe& universe,
                                                    const std::vector<FactorTable>& tables,
                                                    std::uint64_t cap) {
  std::vector<std::pair<std::string, std::size_t>> variables;
  {
    std::set<std::string> seen;
    for (const auto& table : tables) {
      table.validate(universe);
      for (const auto& [name, cardinality] : table.scope) {
        if (seen.insert(name).second) variables.emplace_back(name, cardinality);
      }
    }
    std::sort(variables.begin(), variables.end());
  }
  if (variables.empty()) return {};

  BigInt assignment_count = 1;
  for (const auto& [name, cardinality] : variables) assignment_count *= cardinality;
  if (assignment_count > cap) {
    fail(errc::cap_exceeded, "joint enumeration exceeds the cap of " + std::to_string(cap));
  }

  std::map<AssignmentKey, Rational> weights;
  Rational total = 0;
  std::vector<std::size_t> indices(variables.size(), 0);
  do {
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < variables.size(); ++i) position[variables[i].first] = indices[i];

    Rational weight = 1;
    for (const auto& table : tables) {
      std::vector<std::size_t> local(table.scope.size());
      for (std::size_t i = 0; i < table.scope.size(); ++i) {
        local[i] = position[table.scope[i].first];
      }
      weight *= table.values[flat_index(local, table.scope)];
      if (weight == 0) break;
    }
    if (weight == 0) continue;

    AssignmentKey key;
    for (std::size_t i = 0; i < variables.size(); ++i) {
      const Variable& variable = universe.variable(variables[i].first);
      key[variables[i].first] = variable.domain()[indices[i]];
    }
    weights.emplace(std::move(key), weight);
    total += weight;
  } while (advance(indices, variables));

  for (auto& [key, weight] : weights) weight /= total;
  return weights;
}

namespace {

std::vector<std::string> indexed_values(const std::string& name, std::size_t cardinality) {
  std::vector<std::string> values;
  values.reserve(cardinality);
  for (std::size_t i = 0; i < cardinality; ++i) {
    values.push_back(name + "(" + std::to_string(i) + ")");
  }
  return values;
}

Rational r(long num, long den) { return Rational(num, den); }

}  // namespace

Universe students_universe() {
  Universe universe;
  universe.declare_variable("D", indexed_values("D", 2));
  universe.declare_variable("I", indexed_values("I", 2));
  universe.declare_variable("G", indexed_values("G", 3));
  universe.declare_variable("S", indexed_values("S", 2));
  universe.declare_variable("L", indexed_values("L", 2));
  universe.declare_tag("G<-I,D");
  universe.declare_tag("S<-I");
  universe.declare_tag("L<-G");
  return universe;
}

std::vector<CptTable> students_cpts() {
  std::vector<CptTable> tables;
  tables.push_back(CptTable{{"D", 2}, {}, {{r(6, 10)}, {r(4, 10)}}});
  tables.push_back(CptTable{{"I", 2}, {}, {{r(7, 10)}, {r(3, 10)}}});
  tables.push_back(CptTable{{"G", 3},
                            {{"I", 2}, {"D", 2}},
                            {{r(3, 10), r(5, 100), r(9, 10), r(5, 10)},
                             {r(4, 10), r(25, 100), r(8, 100), r(3, 10)},
                             {r(3, 10), r(7, 10), r(2, 100), r(2, 10)}}});
  tables.push_back(CptTable{{"S", 2},
                            {{"I", 2}},
                            {{r(95, 100), r(2, 10)}, {r(5, 100), r(8, 10)}}});
  tables.push_back(CptTable{{"L", 2},
                            {{"G", 3}},
                            {{r(1, 10), r(4, 10), r(99, 100)},
                             {r(9, 10), r(6, 10), r(1, 100)}}});
  return tables;
}

RelationNetwork fixture_students() {
  Universe universe = students_universe();
  NetworkBuilder builder(universe);
  for (const auto& table : students_cpts()) {
    for (const auto& entry : import_bayes_cpt(universe, table)) {
      builder.add_outcome(entry.outcome, Weight(entry.weight));
    }
  }
  return builder.build();
}

Universe friends_universe() {
  Universe universe;
  for (const char* name : {"A", "B", "C", "D"}) {
    universe.declare_variable(name, indexed_values(name, 2));
  }
  universe.declare_tag("r");
  return universe;
}

std::vector<FactorTable> friends_factors() {
  auto factor = [](const std::string& x, const std::string& y,
                   std::array<long, 4> cells) {
    FactorTable table;
    table.scope = {{x, 2}, {y, 2}};
    for (long cell : cells) table.values.push_back(Rational(cell));
    return table;
  };
  return {factor("A", "B", {30, 5, 1, 10}), factor("B", "C", {100, 1, 1, 100}),
          factor("C", "D", {1, 100, 100, 1}), factor("D", "A", {100, 1, 1, 100})};
}

RelationNetwork fixture_friends() {
  Universe universe = friends_universe();
  NetworkBuilder builder(universe);
  for (const auto& table : friends_factors()) {
    for (const auto& entry : import_markov_factor(universe, table, "r")) {
      builder.add_outcome(entry.outcome, Weight(entry.weight));
    }
  }
  return builder.build();
}

}  // namespace prn
