#pragma once

// Qubit layouts for the measurement patterns: which qubits carry the input,
// which are measured, which carry the output, the nearest-neighbour edge set,
// and the pairwise distances that enter the power-law couplings.

#include "mbqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbqc {

inline constexpr int kMaxQubits = 12;

enum class DistanceMode { LabelChain, Graph, Euclidean };

inline std::string to_string(DistanceMode m) {
  switch (m) {
    case DistanceMode::LabelChain: return "label-chain";
    case DistanceMode::Graph: return "graph";
    case DistanceMode::Euclidean: return "euclidean";
  }
  throw std::logic_error("unknown DistanceMode");
}

inline DistanceMode distance_mode_from_string(const std::string& s) {
  if (s == "label-chain") return DistanceMode::LabelChain;
  if (s == "graph") return DistanceMode::Graph;
  if (s == "euclidean") return DistanceMode::Euclidean;
  throw std::invalid_argument("unknown distance mode: " + s);
}

struct Geometry {
  int n = 0;                          // qubits labelled 1..n; label 1 = MSB
  std::vector<int> inputs;            // V_I, ascending
  std::vector<int> body;              // V_M, ascending
  std::vector<int> outputs;           // V_O, ascending
  std::vector<std::pair<int, int>> nn_edges;
  RealMatrix distance;                // (n+1)x(n+1), 1-based, 0 on diagonal
  DistanceMode mode = DistanceMode::Graph;
  std::string preset;                 // name if built from a preset

  /// Measured set V_m = (V_I union V_M) \ V_O, ascending.
  std::vector<int> measured() const {
    std::vector<int> m;
    std::set<int> out(outputs.begin(), outputs.end());
    std::set<int> in_or_body(inputs.begin(), inputs.end());
    in_or_body.insert(body.begin(), body.end());
    for (int q : in_or_body)
      if (!out.count(q)) m.push_back(q);
    return m;
  }

  bool is_nn_edge(int a, int b) const {
    for (auto [u, v] : nn_edges)
      if ((u == a && v == b) || (u == b && v == a)) return true;
    return false;
  }

  std::vector<int> neighbours(int a) const {
    std::vector<int> nb;
    for (auto [u, v] : nn_edges) {
      if (u == a) nb.push_back(v);
      if (v == a) nb.push_back(u);
    }
    std::sort(nb.begin(), nb.end());
    return nb;
  }
};

namespace detail {

inline RealMatrix graph_distances(int n,
                                  const std::vector<std::pair<int, int>>& edges) {
  RealMatrix d = RealMatrix::Constant(n + 1, n + 1, -1.0);
  for (int s = 1; s <= n; ++s) {
    d(s, s) = 0.0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (auto [a, b] : edges) {
        int v = (a == u) ? b : (b == u ? a : 0);
        if (v && d(s, v) < 0.0) {
          d(s, v) = d(s, u) + 1.0;
          queue.push_back(v);
        }
      }
    }
  }
  return d;
}

inline RealMatrix euclidean_distances(
    const std::vector<std::pair<double, double>>& coords) {
  const int n = static_cast<int>(coords.size());
  RealMatrix d = RealMatrix::Zero(n + 1, n + 1);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      d(a, b) = std::hypot(coords[a - 1].first - coords[b - 1].first,
                           coords[a - 1].second - coords[b - 1].second);
  return d;
}

inline RealMatrix label_chain_distances(int n) {
  RealMatrix d = RealMatrix::Zero(n + 1, n + 1);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) d(a, b) = std::abs(a - b);
  return d;
}

}  // namespace detail

/// Validates role sets, labels and distances; throws on inconsistency.
inline void validate_geometry(const Geometry& g) {
  if (g.n < 2) throw std::invalid_argument("geometry: need at least 2 qubits");
  if (g.n > kMaxQubits)
    throw std::invalid_argument("geometry: more than " +
                                std::to_string(kMaxQubits) + " qubits");
  auto in_range = [&](const std::vector<int>& v) {
    for (int q : v)
      if (q < 1 || q > g.n) return false;
    return true;
  };
  if (!in_range(g.inputs) || !in_range(g.body) || !in_range(g.outputs))
    throw std::invalid_argument("geometry: qubit label out of range");
  if (g.inputs.empty() || g.outputs.empty())
    throw std::invalid_argument("geometry: inputs and outputs must be nonempty");

  std::set<int> body_set(g.body.begin(), g.body.end());
  std::set<int> out_set(g.outputs.begin(), g.outputs.end());
  for (int q : body_set)
    if (out_set.count(q))
      throw std::invalid_argument("geometry: body and output sets overlap");
  std::set<int> covered(g.inputs.begin(), g.inputs.end());
  covered.insert(body_set.begin(), body_set.end());
  covered.insert(out_set.begin(), out_set.end());
  if (static_cast<int>(covered.size()) != g.n)
    throw std::invalid_argument("geometry: every qubit needs a role");

  if (g.distance.rows() != g.n + 1 || g.distance.cols() != g.n + 1)
    throw std::invalid_argument("geometry: distance matrix has wrong shape");
  for (int a = 1; a <= g.n; ++a)
    for (int b = 1; b <= g.n; ++b) {
      if (a == b) continue;
      if (!(g.distance(a, b) > 0.0))
        throw std::invalid_argument("geometry: nonpositive pairwise distance");
      if (std::abs(g.distance(a, b) - g.distance(b, a)) > tol::algebra)
        throw std::invalid_argument("geometry: distance matrix not symmetric");
    }
  for (auto [a, b] : g.nn_edges)
    if (a < 1 || a > g.n || b < 1 || b > g.n || a == b)
      throw std::invalid_argument("geometry: bad nn edge");
}

/// Five-qubit open chain computing one single-qubit gate: input on 1, output
/// on 5, qubits 1..4 measured.  All three distance modes coincide here.
inline Geometry chain5_geometry(DistanceMode mode = DistanceMode::LabelChain) {
  Geometry g;
  g.n = 5;
  g.inputs = {1};
  g.body = {2, 3, 4};
  g.outputs = {5};
  g.nn_edges = {{1, 2}, {2, 3}, {3, 4}, {4, 5}};
  g.mode = mode;
  g.preset = "single-gate-chain-5";
  switch (mode) {
    case DistanceMode::LabelChain:
      g.distance = detail::label_chain_distances(g.n);
      break;
    case DistanceMode::Graph:
      g.distance = detail::graph_distances(g.n, g.nn_edges);
      break;
    case DistanceMode::Euclidean: {
      std::vector<std::pair<double, double>> coords;
      for (int k = 0; k < g.n; ++k) coords.emplace_back(k, 0.0);
      g.distance = detail::euclidean_distances(coords);
      break;
    }
  }
  validate_geometry(g);
  return g;
}

/// Default distance convention for the T-shaped CNOT layout.  Calibrated
/// against the reference threshold values (see table1/calibration): with
/// Euclidean distances the non-adjacent pairs (1,4) and (3,4) sit at sqrt(2),
/// which is what reproduces the reference CNOT thresholds; graph and
/// label-chain modes remain available for comparison.
inline constexpr DistanceMode kCnotDefaultDistanceMode = DistanceMode::Euclidean;

/// Four-qubit T-shaped layout computing a CNOT: target input on 1, control
/// on 4 (input and output), target output on 3, qubits 1 and 2 measured.
/// Coordinates: 1=(0,0), 2=(1,0), 3=(2,0), 4=(1,1).
inline Geometry cnot_geometry(DistanceMode mode = kCnotDefaultDistanceMode) {
  Geometry g;
  g.n = 4;
  g.inputs = {1, 4};
  g.body = {2};
  g.outputs = {3, 4};
  g.nn_edges = {{1, 2}, {2, 3}, {2, 4}};
  g.mode = mode;
  g.preset = "cnot-T-4";
  switch (mode) {
    case DistanceMode::LabelChain:
      g.distance = detail::label_chain_distances(g.n);
      break;
    case DistanceMode::Graph:
      g.distance = detail::graph_distances(g.n, g.nn_edges);
      break;
    case DistanceMode::Euclidean:
      g.distance = detail::euclidean_distances(
          {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}});
      break;
  }
  validate_geometry(g);
  return g;
}

/// Preset lookup used by the CLI and config files.
inline Geometry make_geometry(const std::string& preset) {
  if (preset == "single-gate-chain-5") return chain5_geometry();
  if (preset == "cnot-T-4") return cnot_geometry();
  throw std::invalid_argument("unknown geometry preset: " + preset);
}

inline Geometry make_geometry(const std::string& preset, DistanceMode mode) {
  if (preset == "single-gate-chain-5") return chain5_geometry(mode);
  if (preset == "cnot-T-4") return cnot_geometry(mode);
  throw std::invalid_argument("unknown geometry preset: " + preset);
}

}  // namespace mbqc
