// Command-line front end: learn networks from observation streams, query
// them, embed Bayes/Markov models, and export Graphviz views.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "prn/counting.hpp"
#include "prn/inference.hpp"
#include "prn/interop.hpp"
#include "prn/io.hpp"

namespace {

using namespace prn;

RelationNetwork load_network(const std::string& path) {
  std::ifstream input(path);
  if (!input) fail(errc::usage_error, "cannot open " + path);
  return parse_network(input);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream output(path);
  if (!output) fail(errc::usage_error, "cannot write " + path);
  output << content;
}

std::string format_probability(const Rational& value, bool exact) {
  return exact ? to_fraction_string(value) : to_decimal_string(value);
}

void print_distribution(const Distribution& distribution, bool exact) {
  std::cout << distribution.variable() << ":";
  for (const auto& [value, probability] : distribution.entries()) {
    std::cout << " " << value << "=" << format_probability(probability, exact);
  }
  if (distribution.unobserved()) {
    std::cout << " u=" << format_probability(*distribution.unobserved(), exact);
  }
  std::cout << "\n";
}

struct Options {
  std::string net_path;
  std::string out_path;
  std::string stream_path;
  std::string evidence_path;
  std::string model_path;
  std::string format;
  std::string mode = "outcomes";
  std::string var;
  std::string var_a;
  std::string var_b;
  std::string given;
  std::string query;
  std::vector<std::string> assignments;
  std::uint32_t variables = 0;
  std::uint32_t values = 0;
  std::uint32_t relations = 0;
  bool normalized = false;
  bool exact = false;
  bool sample_space = false;
  bool oracle = false;
};

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> names;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

int run_learn(const Options& opt) {
  std::vector<Outcome> records;
  if (opt.stream_path == "-") {
    records = parse_outcome_stream(std::cin);
  } else {
    std::ifstream input(opt.stream_path);
    if (!input) fail(errc::usage_error, "cannot open " + opt.stream_path);
    records = parse_outcome_stream(input);
  }
  write_file(opt.out_path, serialize_network(learn_stream(records)));
  return 0;
}

int run_marginal(const Options& opt) {
  RelationNetwork net = load_network(opt.net_path);
  std::vector<std::string> names;
  if (opt.var.empty()) {
    for (const auto& [name, variable] : net.universe().variables()) names.push_back(name);
  } else {
    names.push_back(opt.var);
  }
  for (const auto& name : names) {
    print_distribution(opt.normalized ? net.normalized_distribution(name)
                                      : net.variable_distribution(name),
                       opt.exact);
  }
  return 0;
}

int run_condition(const Options& opt) {
  RelationNetwork net = load_network(opt.net_path);
  bool emptied = false;
  for (const auto& text : opt.assignments) {
    auto [variable, value] = parse_assignment(text);
    Evidence evidence = make_outcome(net.universe(), {{variable, value}});
    ConditionResult result = condition(net, evidence);
    emptied = emptied || result.emptied;
    net = std::move(result.network);
  }
  if (!opt.evidence_path.empty()) {
    std::ifstream input(opt.evidence_path);
    if (!input) fail(errc::usage_error, "cannot open " + opt.evidence_path);
    for (const auto& evidence : parse_outcome_stream(input, net.universe())) {
      ConditionResult result = condition(net, evidence);
      emptied = emptied || result.emptied;
      net = std::move(result.network);
    }
  }
  if (emptied) {
    std::cerr << "note: conditioning removed every outcome\n";
  }
  write_file(opt.out_path, serialize_network(net));
  return 0;
}

int run_join(const Options& opt) {
  JointNetwork joint = join_full(load_network(opt.net_path));
  write_file(opt.out_path, serialize_network(joint.network));
  return 0;
}

int run_infer(const Options& opt) {
  RelationNetwork net = load_network(opt.net_path);
  std::vector<ValueAssignment> assignments;
  for (const auto& text : opt.assignments) {
    auto [variable, value] = parse_assignment(text);
    assignments.push_back(ValueAssignment{variable, value});
  }
  std::set<std::string> query;
  for (const auto& name : split_names(opt.query)) query.insert(name);
  for (const auto& [name, distribution] : infer(net, assignments, query)) {
    print_distribution(distribution, opt.exact);
  }
  return 0;
}

int run_count(const Options& opt) {
  if (opt.sample_space) {
    std::uint64_t events =
        static_cast<std::uint64_t>(opt.variables) * (opt.values > 0 ? opt.values - 1 : 0);
    std::cout << count_sample_space(events, opt.relations).str() << "\n";
    return 0;
  }
  if (opt.oracle) {
    Universe universe;
    for (std::uint32_t v = 1; v <= opt.variables; ++v) {
      std::vector<std::string> domain;
      for (std::uint32_t e = 1; e < opt.values; ++e) {
        domain.push_back("e" + std::to_string(e));
      }
      universe.declare_variable("x" + std::to_string(v), std::move(domain));
    }
    for (std::uint32_t t = 1; t <= opt.relations; ++t) {
      universe.declare_tag("r" + std::to_string(t));
    }
    std::cout << enumerate_outcomes(universe).size() << "\n";
    return 0;
  }
  CountParams params{opt.variables, opt.values, opt.relations};
  std::cout << count_max_outcomes(params).str() << "\n";
  return 0;
}

int run_import(const Options& opt) {
  std::ifstream input(opt.model_path);
  if (!input) fail(errc::usage_error, "cannot open " + opt.model_path);
  RelationNetwork net =
      opt.format == "bayes" ? import_bayes_model(input) : import_markov_model(input);
  write_file(opt.out_path, serialize_network(net));
  return 0;
}

int run_indep(const Options& opt) {
  RelationNetwork net = load_network(opt.net_path);
  std::set<std::string> given;
  for (const auto& name : split_names(opt.given)) given.insert(name);
  bool independent = conditionally_independent(net, opt.var_a, opt.var_b, given);
  std::cout << (independent ? "independent" : "dependent") << "\n";
  return 0;
}

int run_export_dot(const Options& opt) {
  RelationNetwork net = load_network(opt.net_path);
  DotMode mode = opt.mode == "folded" ? DotMode::folded : DotMode::outcomes;
  write_file(opt.out_path, export_dot(net, mode));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic relation networks: learning, queries and inference"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* learn = app.add_subcommand("learn", "Learn a network from an outcome stream");
  learn->add_option("--stream", opt.stream_path, "Newline-delimited JSON records ('-' for stdin)")
      ->required();
  learn->add_option("--out", opt.out_path, "Output network document")->required();

  CLI::App* marginal = app.add_subcommand("marginal", "Print variable distributions");
  marginal->add_option("--net", opt.net_path, "Network document")->required();
  marginal->add_option("--var", opt.var, "Single variable (default: all)");
  marginal->add_flag("--normalized", opt.normalized, "Drop the unobserved value and rescale");
  marginal->add_flag("--exact", opt.exact, "Print fractions instead of decimals");

  CLI::App* cond = app.add_subcommand("condition", "Reduce a network by evidence");
  cond->add_option("--net", opt.net_path, "Network document")->required();
  cond->add_option("--assign", opt.assignments, "Evidence value VAR=value (repeatable)");
  cond->add_option("--evidence", opt.evidence_path, "Evidence outcome records (JSON lines)");
  cond->add_option("--out", opt.out_path, "Output network document")->required();

  CLI::App* join = app.add_subcommand("join", "Build the full joint network");
  join->add_option("--net", opt.net_path, "Network document")->required();
  join->add_option("--out", opt.out_path, "Output network document")->required();

  CLI::App* infer_cmd = app.add_subcommand("infer", "Condition, join and print marginals");
  infer_cmd->add_option("--net", opt.net_path, "Network document")->required();
  infer_cmd->add_option("--assign", opt.assignments, "Evidence value VAR=value (repeatable)");
  infer_cmd->add_option("--query", opt.query, "Comma-separated query variables (default: all)");
  infer_cmd->add_flag("--exact", opt.exact, "Print fractions instead of decimals");

  CLI::App* count = app.add_subcommand("count", "Count possible outcomes");
  count->add_option("--variables", opt.variables, "Number of variables")->required();
  count->add_option("--values", opt.values, "Values per variable, including the unobserved one")
      ->required();
  count->add_option("--relations", opt.relations, "Number of relation tags")->required();
  count->add_flag("--sample-space", opt.sample_space, "Raw sample-space size over all events");
  count->add_flag("--oracle", opt.oracle, "Count by exhaustive enumeration");
  count->get_option("--sample-space")->excludes(count->get_option("--oracle"));

  CLI::App* import_cmd = app.add_subcommand("import", "Embed a Bayes or Markov model");
  import_cmd->add_option("--format", opt.format, "Model kind")
      ->required()
      ->check(CLI::IsMember({"bayes", "markov"}));
  import_cmd->add_option("--model", opt.model_path, "Model JSON file")->required();
  import_cmd->add_option("--out", opt.out_path, "Output network document")->required();

  CLI::App* indep = app.add_subcommand("indep", "Conditional independence query");
  indep->add_option("--net", opt.net_path, "Network document")->required();
  indep->add_option("--a", opt.var_a, "First variable")->required();
  indep->add_option("--b", opt.var_b, "Second variable")->required();
  indep->add_option("--given", opt.given, "Comma-separated observed variables");

  CLI::App* dot = app.add_subcommand("export-dot", "Write a Graphviz view");
  dot->add_option("--net", opt.net_path, "Network document")->required();
  dot->add_option("--mode", opt.mode, "outcomes or folded")
      ->check(CLI::IsMember({"outcomes", "folded"}));
  dot->add_option("--out", opt.out_path, "Output DOT file")->required();

  try {
    app.parse(argc, argv);
    if (learn->parsed()) return run_learn(opt);
    if (marginal->parsed()) return run_marginal(opt);
    if (cond->parsed()) return run_condition(opt);
    if (join->parsed()) return run_join(opt);
    if (infer_cmd->parsed()) return run_infer(opt);
    if (count->parsed()) return run_count(opt);
    if (import_cmd->parsed()) return run_import(opt);
    if (indep->parsed()) return run_indep(opt);
    if (dot->parsed()) return run_export_dot(opt);
  } catch (const CLI::ParseError& error) {
    int code = app.exit(error);
    return code == 0 ? 0 : 1;
  } catch (const Error& error) {
    std::cerr << error.what() << "\n";
    return exit_code(error.code());
  }
  return 0;
}
