#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdom/graph.hpp"
#include "tdom/parallel.hpp"

namespace tdom {

using Params = std::map<std::string, std::int64_t>;

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NodeOutput {
  bool bit = false;
  /// Labels from this node to a claimed dominator; starts at the node's own label.
  std::optional<std::vector<Label>> certificate;

  friend bool operator==(const NodeOutput&, const NodeOutput&) = default;
};

/// A deterministic per-node rule: the output is a function of the parameters and
/// the node's final view only.
struct NodeAlgorithm {
  std::string name;
  Params params;
  std::function<NodeOutput(const Params&, const View&)> decide;
  /// Rounds the rule actually needs under `params`; must not exceed params["T"].
  std::function<std::int64_t(const Params&)> rounds;

  [[nodiscard]] std::int64_t param(const std::string& key) const { return require_param(params, key); }

  [[nodiscard]] NodeAlgorithm with_param(const std::string& key, std::int64_t value) const {
    auto copy = *this;
    copy.params[key] = value;
    return copy;
  }

  static std::int64_t require_param(const Params& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw SimulationError("missing algorithm parameter '" + key + "'");
    return it->second;
  }
};

struct ExecutionResult {
  std::vector<NodeOutput> outputs;  // indexed by node id
  std::int64_t rounds_used = 0;
  std::int64_t budget = 0;

  [[nodiscard]] std::vector<bool> membership() const {
    std::vector<bool> m(outputs.size());
    for (std::size_t v = 0; v < outputs.size(); ++v) m[v] = outputs[v].bit;
    return m;
  }
  [[nodiscard]] std::vector<NodeId> member_set() const {
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < outputs.size(); ++v)
      if (outputs[v].bit) out.push_back(v);
    return out;
  }
  [[nodiscard]] std::size_t member_count() const { return member_set().size(); }

  friend bool operator==(const ExecutionResult&, const ExecutionResult&) = default;
};

struct ExecuteOptions {
  /// Re-run decide on the ball of the declared radius and demand the same output.
  bool cross_check = true;
  unsigned threads = 0;
};

/// Runs `alg` for T rounds at every node of `g`. Nodes know T and L, so both are
/// bound into the parameters handed to decide.
inline ExecutionResult execute(const NodeAlgorithm& alg, const LabeledGraph& g, std::int64_t T,
                               const ExecuteOptions& options = {}) {
  if (T < 0) throw SimulationError("round budget T must be non-negative");
  Params params = alg.params;
  params["T"] = T;
  params["L"] = static_cast<std::int64_t>(g.label_bound());
  const auto declared = alg.rounds(params);
  if (declared < 0 || declared > T)
    throw SimulationError(alg.name + " declares " + std::to_string(declared) + " rounds with budget T=" +
                          std::to_string(T));

  ExecutionResult result;
  result.outputs.resize(g.size());
  result.rounds_used = declared;
  result.budget = T;
  parallel_for(
      g.size(),
      [&](std::size_t v) {
        auto out = alg.decide(params, ball(g, v, static_cast<std::size_t>(T)));
        if (options.cross_check && declared < T) {
          auto shallow = alg.decide(params, ball(g, v, static_cast<std::size_t>(declared)));
          if (shallow != out)
            throw SimulationError(alg.name + " at label " + std::to_string(g.label(v)) + ": output on the radius-" +
                                  std::to_string(declared) + " ball differs from the radius-" + std::to_string(T) +
                                  " ball");
        }
        result.outputs[v] = std::move(out);
      },
      options.threads);
  return result;
}

/// Simulates `alg` with budget T' at local node `w` of `view`, as the host graph
/// would have run it. The T'-ball of w must lie inside the view.
inline NodeOutput execute_at(const NodeAlgorithm& alg, const View& view, std::size_t w, std::int64_t T_prime) {
  if (T_prime < 0) throw SimulationError("round budget must be non-negative");
  if (w >= view.size()) throw SimulationError("execute_at: node outside view");
  if (view.depth(w) + static_cast<std::size_t>(T_prime) > view.radius())
    throw SimulationError("execute_at: radius-" + std::to_string(T_prime) + " ball of label " +
                          std::to_string(view.label(w)) + " at depth " + std::to_string(view.depth(w)) +
                          " is not contained in a radius-" + std::to_string(view.radius()) + " view");
  Params params = alg.params;
  params["T"] = T_prime;
  return alg.decide(params, view.ball(w, static_cast<std::size_t>(T_prime)));
}

}  // namespace tdom
