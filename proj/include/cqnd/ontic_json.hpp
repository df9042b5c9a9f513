#pragma once

#include <json.hpp>

#include "cqnd/ontic.hpp"

namespace cqnd::ontic {

inline nlohmann::json to_json(const EpistemicState& state) {
  return nlohmann::json(state.weights());
}

inline EpistemicState epistemic_from_json(const nlohmann::json& j,
                                          const Tolerances& tol = {}) {
  auto w = j.get<std::vector<double>>();
  const OnticSpace space(w.size());
  return EpistemicState(space, std::move(w), tol);
}

/// Kernel serialized as a row-major nested array: rows of length from.size.
inline nlohmann::json to_json(const StochasticMap& map) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < map.to().size; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < map.from().size; ++c) row.push_back(map(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline StochasticMap stochastic_from_json(const nlohmann::json& j,
                                          const Tolerances& tol = {}) {
  const std::size_t rows = j.size();
  if (rows == 0) throw InvalidArgument("empty kernel");
  const std::size_t cols = j.at(0).size();
  std::vector<double> kernel;
  kernel.reserve(rows * cols);
  for (const auto& row : j) {
    if (row.size() != cols) throw InvalidArgument("ragged kernel rows");
    for (const auto& v : row) kernel.push_back(v.get<double>());
  }
  return StochasticMap(OnticSpace(cols), OnticSpace(rows), std::move(kernel), tol);
}

}  // namespace cqnd::ontic
