#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prn/network.hpp"

namespace prn {

/// A discrete factor: nonnegative potentials over the value combinations of
/// an ordered scope, flattened row-major (first scope variable slowest).
struct FactorTable {
  std::vector<std::pair<std::string, std::size_t>> scope;  // (variable, cardinality)
  std::vector<Rational> values;

  void validate(const Universe& universe) const;
};

/// A conditional probability table: values[child_index][parent_assignment],
/// parent assignments enumerated row-major over the parent list. Every
/// column sums to 1.
struct CptTable {
  std::pair<std::string, std::size_t> child;
  std::vector<std::pair<std::string, std::size_t>> parents;
  std::vector<std::vector<Rational>> values;

  void validate(const Universe& universe) const;
};

/// Relation tag used by a CPT family: "child<-parent1,parent2".
std::string family_tag(const CptTable& table);

/// One outcome per nonzero cell, weighted by the cell's potential. Scopes of
/// three or more variables are embedded as cliques under the tag so the
/// outcome stays connected.
std::vector<WeightedOutcome> import_markov_factor(const Universe& universe,
                                                  const FactorTable& table,
                                                  const std::string& tag);

/// One outcome per (child value, parent assignment) with nonzero
/// probability: a star of family-tagged edges from the child value to each
/// parent value, weighted by probability * eta. Root tables yield
/// single-node outcomes.
std::vector<WeightedOutcome> import_bayes_cpt(const Universe& universe, const CptTable& table,
                                              const Rational& eta = Rational(1));

/// Equivalent factor-table form of a CPT, scope [child, parents...].
FactorTable cpt_to_factor_table(const CptTable& table);

using AssignmentKey = std::map<std::string, std::string>;

/// Independent joint oracle: enumerates every full assignment over the
/// tables' variables, multiplies the matching cells and normalizes. Shares
/// nothing with the factor-product join.
std::map<AssignmentKey, Rational> brute_force_joint(const Universe& universe,
                                                    const std::vector<FactorTable>& tables,
                                                    std::uint64_t cap = 1'000'000);

/// The five-variable student Bayesian network (D, I, G, S, L; G ternary)
/// embedded as a factorized relation network.
Universe students_universe();
std::vector<CptTable> students_cpts();
RelationNetwork fixture_students();

/// The four-variable pairwise Markov network over A, B, C, D.
Universe friends_universe();
std::vector<FactorTable> friends_factors();
RelationNetwork fixture_friends();

}  // namespace prn
