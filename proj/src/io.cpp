#include "prn/io.hpp"

#include <json.hpp>

#include <istream>
#include <sstream>

#include "prn/interop.hpp"

namespace prn {

namespace {

using nlohmann::json;

[[noreturn]] void bad_document(const std::string& why) { fail(errc::parse_error, why); }

const json& member(const json& object, const char* name) {
  auto it = object.find(name);
  if (it == object.end()) bad_document(std::string("missing field \"") + name + "\"");
  return *it;
}

std::string string_member(const json& object, const char* name) {
  const json& field = member(object, name);
  if (!field.is_string()) bad_document(std::string("field \"") + name + "\" must be a string");
  return field.get<std::string>();
}

/// Exact numeric field: a JSON integer or a string like "0.25" or "6/7".
/// JSON floats are refused; they would round through a double.
Rational rational_member(const json& value, const std::string& where) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_unsigned()) return Rational(value.get<std::uint64_t>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_number_float()) {
    bad_document(where + ": write fractional numbers as strings, e.g. \"0.25\"");
  }
  bad_document(where + ": expected a number");
}

OutcomeRecord parse_record(const json& object) {
  if (!object.is_object()) bad_document("outcome record must be a JSON object");
  OutcomeRecord record;
  if (auto nodes = object.find("nodes"); nodes != object.end()) {
    if (!nodes->is_array()) bad_document("\"nodes\" must be an array");
    for (const json& node : *nodes) {
      if (!node.is_object()) bad_document("node entries must be objects");
      record.nodes.emplace_back(string_member(node, "var"), string_member(node, "val"));
    }
  }
  if (auto edges = object.find("edges"); edges != object.end()) {
    if (!edges->is_array()) bad_document("\"edges\" must be an array");
    for (const json& edge : *edges) {
      if (!edge.is_object()) bad_document("edge entries must be objects");
      EdgeSpec spec;
      const json& a = member(edge, "a");
      const json& b = member(edge, "b");
      if (!a.is_number_unsigned() || !b.is_number_unsigned()) {
        bad_document("edge endpoints must be node indices");
      }
      spec.a = a.get<std::size_t>();
      spec.b = b.get<std::size_t>();
      spec.tag = string_member(edge, "rel");
      record.edges.push_back(std::move(spec));
    }
  }
  if (auto count = object.find("count"); count != object.end()) {
    if (!count->is_number_unsigned() || count->get<std::uint64_t>() == 0) {
      bad_document("\"count\" must be a positive integer");
    }
    record.count = count->get<std::uint64_t>();
  }
  return record;
}

Outcome record_to_outcome(const OutcomeRecord& record, const Universe* declared,
                          bool allow_disconnected) {
  if (declared != nullptr && !allow_disconnected) {
    return make_outcome(*declared, record.nodes, record.edges);
  }
  std::vector<ValueId> nodes;
  nodes.reserve(record.nodes.size());
  for (const auto& [variable_name, value_name] : record.nodes) {
    if (declared != nullptr) {
      if (!declared->has_variable(variable_name)) {
        fail(errc::unknown_name, "no variable named " + variable_name);
      }
      const Variable& variable = declared->variable(variable_name);
      if (value_name == variable.unobserved_name()) {
        fail(errc::unobserved_value_used,
             "the unobserved value of " + variable_name + " cannot appear in an outcome");
      }
      if (!variable.has_value(value_name)) {
        fail(errc::unknown_name, "variable " + variable_name + " has no value " + value_name);
      }
    } else if (variable_name.empty() || value_name.empty()) {
      bad_document("variable and value names must be nonempty");
    }
    nodes.push_back(ValueId{variable_name, value_name});
  }
  std::vector<Edge> edges;
  edges.reserve(record.edges.size());
  for (const auto& spec : record.edges) {
    if (spec.a >= nodes.size() || spec.b >= nodes.size()) {
      fail(errc::dangling_edge_index,
           "edge references node index " + std::to_string(std::max(spec.a, spec.b)) +
               " but the record has " + std::to_string(nodes.size()) + " nodes");
    }
    if (declared != nullptr && !declared->has_tag(spec.tag)) {
      fail(errc::unknown_name, "no relation tag named " + spec.tag);
    }
    if (spec.tag.empty()) bad_document("relation tags must be nonempty");
    edges.push_back(Edge::between(nodes[spec.a], nodes[spec.b], spec.tag));
  }
  return Outcome::from_parts(std::move(nodes), std::move(edges), allow_disconnected);
}

std::vector<Outcome> parse_stream(std::istream& input, const Universe* declared) {
  std::vector<Outcome> outcomes;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json object = json::parse(line, nullptr, true);
      OutcomeRecord record = parse_record(object);
      Outcome outcome = record_to_outcome(record, declared, /*allow_disconnected=*/false);
      for (std::uint64_t i = 0; i < record.count; ++i) outcomes.push_back(outcome);
    } catch (const Error& error) {
      throw Error(error.code(), "line " + std::to_string(line_number) + ": " + error.what());
    } catch (const json::exception& error) {
      fail(errc::parse_error, "line " + std::to_string(line_number) + ": " + error.what());
    }
  }
  return outcomes;
}

json outcome_to_json(const Outcome& outcome, const std::string& weight) {
  json nodes = json::array();
  for (const auto& node : outcome.nodes()) {
    nodes.push_back(json{{"var", node.variable}, {"val", node.value}});
  }
  json edges = json::array();
  for (const auto& edge : outcome.edges()) {
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t i = 0; i < outcome.nodes().size(); ++i) {
      if (outcome.nodes()[i] == edge.a) a = i;
      if (outcome.nodes()[i] == edge.b) b = i;
    }
    edges.push_back(json{{"a", a}, {"b", b}, {"rel", edge.tag}});
  }
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"weight", weight}};
}

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::vector<Outcome> parse_outcome_stream(std::istream& input) {
  return parse_stream(input, nullptr);
}

std::vector<Outcome> parse_outcome_stream(std::istream& input, const Universe& declared) {
  return parse_stream(input, &declared);
}

std::string serialize_network(const RelationNetwork& net) {
  json variables = json::object();
  for (const auto& [name, variable] : net.universe().variables()) {
    variables[name] = json{{"values", variable.domain()}};
  }
  json relations = json::array();
  for (const auto& tag : net.universe().tags()) relations.push_back(tag);
  json outcomes = json::array();
  for (const auto& [key, entry] : net.outcomes()) {
    outcomes.push_back(outcome_to_json(entry.outcome, to_fraction_string(entry.weight)));
  }
  json document{{"variables", std::move(variables)},
                {"relations", std::move(relations)},
                {"provenance", net.constructed() ? "constructed" : "learned"},
                {"outcomes", std::move(outcomes)}};
  return document.dump(2) + "\n";
}

RelationNetwork parse_network(std::istream& input) {
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return parse_network(buffer.str());
}

RelationNetwork parse_network(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::exception& error) {
    fail(errc::parse_error, error.what());
  }
  if (!document.is_object()) bad_document("network document must be a JSON object");

  Universe universe;
  const json& variables = member(document, "variables");
  if (!variables.is_object()) bad_document("\"variables\" must be an object");
  for (const auto& [name, spec] : variables.items()) {
    const json& values = member(spec, "values");
    if (!values.is_array()) bad_document("variable values must be an array");
    std::vector<std::string> domain;
    for (const json& value : values) {
      if (!value.is_string()) bad_document("value names must be strings");
      domain.push_back(value.get<std::string>());
    }
    universe.declare_variable(name, std::move(domain));
  }
  if (auto relations = document.find("relations"); relations != document.end()) {
    if (!relations->is_array()) bad_document("\"relations\" must be an array");
    for (const json& tag : *relations) {
      if (!tag.is_string()) bad_document("relation tags must be strings");
      universe.declare_tag(tag.get<std::string>());
    }
  }
  bool constructed = false;
  if (auto provenance = document.find("provenance"); provenance != document.end()) {
    std::string value = provenance->get<std::string>();
    if (value != "learned" && value != "constructed") {
      bad_document("\"provenance\" must be \"learned\" or \"constructed\"");
    }
    constructed = value == "constructed";
  }

  std::vector<WeightedOutcome> outcomes;
  const json& records = member(document, "outcomes");
  if (!records.is_array()) bad_document("\"outcomes\" must be an array");
  for (const json& item : records) {
    OutcomeRecord record = parse_record(item);
    Outcome outcome = record_to_outcome(record, &universe, constructed);
    Rational weight = rational_member(member(item, "weight"), "outcome weight");
    if (weight <= 0) {
      fail(errc::invariant_violation,
           "outcome " + render_outcome(outcome) + " has nonpositive weight " +
               to_fraction_string(weight));
    }
    outcomes.push_back(WeightedOutcome{std::move(outcome), std::move(weight)});
  }
  return RelationNetwork::from_parts(std::move(universe), std::move(outcomes), constructed);
}

std::string export_dot(const RelationNetwork& net, DotMode mode) {
  std::ostringstream out;
  if (mode == DotMode::folded) {
    out << "graph prn_folded {\n";
    const FoldedGraph graph = net.folded_graph();
    for (const auto& variable : graph.variables) {
      out << "  " << quote(variable) << ";\n";
    }
    for (const auto& [pair, tags] : graph.edges) {
      std::string label;
      for (const auto& [tag, uses] : tags) {
        if (!label.empty()) label += ", ";
        label += tag;
        if (uses > 1) label += " x" + std::to_string(uses);
      }
      out << "  " << quote(pair.first) << " -- " << quote(pair.second) << " [label=" << quote(label)
          << "];\n";
    }
    out << "}\n";
    return out.str();
  }

  out << "graph prn_outcomes {\n";
  std::size_t index = 0;
  for (const auto& [key, entry] : net.outcomes()) {
    out << "  subgraph cluster_" << index << " {\n";
    out << "    label=" << quote("w=" + to_fraction_string(entry.weight)) << ";\n";
    const std::string prefix = "o" + std::to_string(index) + "_";
    if (entry.outcome.empty()) {
      out << "    " << quote(prefix + "K0") << " [label=\"K0\", shape=plaintext];\n";
    }
    for (const auto& node : entry.outcome.nodes()) {
      out << "    " << quote(prefix + node.variable)
          << " [label=" << quote(node.variable + "=" + node.value) << "];\n";
    }
    for (const auto& edge : entry.outcome.edges()) {
      out << "    " << quote(prefix + edge.a.variable) << " -- " << quote(prefix + edge.b.variable)
          << " [label=" << quote(edge.tag) << "];\n";
    }
    out << "  }\n";
    ++index;
  }
  out << "}\n";
  return out.str();
}

namespace {

Universe universe_from_model(const json& document) {
  Universe universe;
  const json& variables = member(document, "variables");
  if (!variables.is_object()) bad_document("\"variables\" must be an object");
  for (const auto& [name, values] : variables.items()) {
    if (!values.is_array()) bad_document("variable values must be an array");
    std::vector<std::string> domain;
    for (const json& value : values) {
      if (!value.is_string()) bad_document("value names must be strings");
      domain.push_back(value.get<std::string>());
    }
    universe.declare_variable(name, std::move(domain));
  }
  return universe;
}

json parse_document(std::istream& input) {
  try {
    return json::parse(input);
  } catch (const json::exception& error) {
    fail(errc::parse_error, error.what());
  }
}

}  // namespace

RelationNetwork import_bayes_model(std::istream& input) {
  json document = parse_document(input);
  Universe universe = universe_from_model(document);

  std::vector<CptTable> tables;
  const json& cpts = member(document, "cpts");
  if (!cpts.is_array()) bad_document("\"cpts\" must be an array");
  for (const json& item : cpts) {
    CptTable table;
    std::string child = string_member(item, "child");
    table.child = {child, universe.variable(child).domain().size()};
    if (auto parents = item.find("parents"); parents != item.end()) {
      for (const json& parent : *parents) {
        std::string name = parent.get<std::string>();
        table.parents.emplace_back(name, universe.variable(name).domain().size());
      }
    }
    const json& rows = member(item, "table");
    if (!rows.is_array()) bad_document("\"table\" must be an array of rows");
    for (const json& row : rows) {
      if (!row.is_array()) bad_document("CPT rows must be arrays");
      std::vector<Rational> parsed;
      for (const json& cell : row) parsed.push_back(rational_member(cell, "CPT entry"));
      table.values.push_back(std::move(parsed));
    }
    if (!table.parents.empty()) universe.declare_tag(family_tag(table));
    tables.push_back(std::move(table));
  }

  Rational eta = 1;
  if (auto it = document.find("eta"); it != document.end()) {
    eta = rational_member(*it, "eta");
  }

  NetworkBuilder builder(universe);
  for (const auto& table : tables) {
    for (const auto& entry : import_bayes_cpt(universe, table, eta)) {
      builder.add_outcome(entry.outcome, Weight(entry.weight));
    }
  }
  return builder.build();
}

RelationNetwork import_markov_model(std::istream& input) {
  json document = parse_document(input);
  Universe universe = universe_from_model(document);
  std::string tag = "r";
  if (auto it = document.find("relation"); it != document.end()) {
    tag = it->get<std::string>();
  }
  universe.declare_tag(tag);

  NetworkBuilder builder(universe);
  const json& factors = member(document, "factors");
  if (!factors.is_array()) bad_document("\"factors\" must be an array");
  for (const json& item : factors) {
    FactorTable table;
    const json& scope = member(item, "scope");
    if (!scope.is_array()) bad_document("factor \"scope\" must be an array");
    for (const json& name : scope) {
      std::string variable = name.get<std::string>();
      table.scope.emplace_back(variable, universe.variable(variable).domain().size());
    }
    const json& values = member(item, "values");
    if (!values.is_array()) bad_document("factor \"values\" must be an array");
    for (const json& cell : values) table.values.push_back(rational_member(cell, "factor cell"));
    for (const auto& entry : import_markov_factor(universe, table, tag)) {
      builder.add_outcome(entry.outcome, Weight(entry.weight));
    }
  }
  return builder.build();
}

std::pair<std::string, std::string> parse_assignment(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    fail(errc::usage_error, "assignments must look like VAR=value, got \"" + text + "\"");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

}  // namespace prn
