#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "prn/network.hpp"

namespace prn {

/// Evidence is itself an outcome: a single observed value, or a larger
/// observed structure carrying edges. K0 means "no evidence".
using Evidence = Outcome;

struct ConditionResult {
  RelationNetwork network;
  /// True when a nonempty network lost every outcome. Reported, not fatal;
  /// inference treats it as contradictory evidence.
  bool emptied = false;
};

/// Outcome reduction: keeps an outcome iff it shares no variable with the
/// evidence, or the evidence is a subgraph of it (values and edges both).
/// Weights are preserved; probabilities renormalize through the reduced
/// total.
ConditionResult condition(const RelationNetwork& net, const Evidence& evidence);

struct FactorizationReport {
  bool factorized = true;
  std::vector<std::string> violations;
};

/// A factorized network has no empty outcome, groups its outcomes into
/// factors by exact variable set, and no edge instance recurs across
/// outcomes of different factors. (Outcomes inside one factor may share an
/// edge: a conditional-table row set over three or more variables realizes
/// the table's single family relation as pairwise edges, which necessarily
/// repeat between rows that agree on both endpoints.)
FactorizationReport check_factorized(const RelationNetwork& net);
bool is_factorized(const RelationNetwork& net);

/// One group of outcomes sharing an exact variable set; holds a joint table
/// over its scope.
struct Factor {
  std::vector<std::string> scope;  // sorted
  std::vector<WeightedOutcome> members;
};

/// Partitions the network's outcomes into factors. Factors are pairwise
/// disjoint and together cover every outcome.
std::vector<Factor> split_factors(const RelationNetwork& net);

/// A network whose outcomes span all of its (observed) variables, carrying
/// a full joint distribution. Marked constructed: the joint produced by the
/// factor product is a guess, not an observation.
struct JointNetwork {
  RelationNetwork network;
  std::vector<std::string> scope;  // sorted union of outcome variable sets
};

/// Factor product by variable elimination. For each variable, the factors
/// containing it are replaced by their join: for every value, every
/// combination of value-carrying member outcomes that agrees on all shared
/// variables is emitted with merged nodes/edges and multiplied weights; a
/// gathered factor with no outcome for the value is skipped (neutral
/// weight). Disconnected networks are joined per folded component and the
/// component joints cross-producted. The default elimination order is
/// ascending variable name; the result does not depend on it for complete
/// factor tables.
JointNetwork join_full(const RelationNetwork& net,
                       const std::vector<std::string>& elimination_order = {});

/// Per-variable distributions read off the joint. Every distribution sums
/// to 1 exactly; the unobserved value has probability 0.
std::map<std::string, Distribution> joint_marginals(const JointNetwork& joint);

struct ValueAssignment {
  std::string variable;
  std::string value;
};

/// The end-to-end pipeline: condition once per assignment (each a
/// single-node evidence outcome, applied in order), join, then read the
/// marginals of the query variables. An empty query reads every variable of
/// the joint.
std::map<std::string, Distribution> infer(const RelationNetwork& net,
                                          const std::vector<ValueAssignment>& assignments,
                                          const std::set<std::string>& query = {});

/// Path-blocking test on the folded graph: a and b are conditionally
/// independent given Z iff every simple path between them passes through
/// some observed z whose path neighbors are not covered together with z by
/// any single outcome's variable set.
bool conditionally_independent(const RelationNetwork& net, const std::string& a,
                               const std::string& b, const std::set<std::string>& given);

}  // namespace prn
