#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "prn/network.hpp"

namespace prn {

/// Serial form of one observation: a newline-delimited JSON object
/// {"nodes": [{"var","val"},...], "edges": [{"a","b","rel"},...], "count": n}.
/// `count` defaults to 1 and expands to repetition.
struct OutcomeRecord {
  std::vector<std::pair<std::string, std::string>> nodes;
  std::vector<EdgeSpec> edges;
  std::uint64_t count = 1;
};

/// Parses a newline-delimited stream of outcome records. Names are taken as
/// given (variables, values and tags are discovered by the learner);
/// structural validation still applies. Errors carry the 1-based line
/// number.
std::vector<Outcome> parse_outcome_stream(std::istream& input);

/// Same, but every name must resolve against the declared universe.
std::vector<Outcome> parse_outcome_stream(std::istream& input, const Universe& declared);

/// Lossless JSON document form of a network: variables with their domains,
/// relation tags, and weighted outcome records with exact fraction weights.
std::string serialize_network(const RelationNetwork& net);
RelationNetwork parse_network(std::istream& input);
RelationNetwork parse_network(const std::string& text);

enum class DotMode { outcomes, folded };

/// Graphviz rendering: `outcomes` emits one cluster per outcome labeled with
/// its weight, `folded` the variable-level graph. Output is byte-identical
/// across runs for the same network.
std::string export_dot(const RelationNetwork& net, DotMode mode);

/// Model files for the import command. Bayes documents list CPTs, Markov
/// documents list factor tables; fractional numbers are written as strings
/// ("0.25", "6/7") so nothing is ever rounded through a double.
RelationNetwork import_bayes_model(std::istream& input);
RelationNetwork import_markov_model(std::istream& input);

/// Parses one "VAR=value" CLI assignment.
std::pair<std::string, std::string> parse_assignment(const std::string& text);

}  // namespace prn
