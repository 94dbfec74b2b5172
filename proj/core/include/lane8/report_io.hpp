#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lane8/solver.hpp"

namespace lane8 {

/// Solve report as JSON. Scalars render as decimal strings (36 digits in
/// EXTENDED mode) so the values survive the round trip bit-exactly.
template <class R>
nlohmann::json report_to_json(const SolveReport<R>& rep, const ProblemSpec<R>& p,
                              const std::string& example_id, int intervals) {
    nlohmann::json j;
    j["example"] = example_id.empty() ? nlohmann::json() : nlohmann::json(example_id);
    j["beta"] = p.beta.str();
    j["alpha"] = scalar_traits<R>::str(p.alpha);
    j["N"] = intervals;
    j["precision"] = name(scalar_traits<R>::mode);
    j["iterations"] = rep.iterations;
    j["termination"] = name(rep.termination);
    nlohmann::json nodes = nlohmann::json::array();
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        nodes.push_back(scalar_traits<R>::str(rep.nodes[i]));
        values.push_back(scalar_traits<R>::str(rep.u[static_cast<int>(i)]));
    }
    j["nodes"] = std::move(nodes);
    j["values"] = std::move(values);
    return j;
}

/// Reads back the nodes/values arrays written by report_to_json.
template <class R>
std::pair<std::vector<R>, std::vector<R>> nodes_values_from_json(const nlohmann::json& j) {
    std::vector<R> nodes, values;
    for (const auto& s : j.at("nodes")) nodes.push_back(scalar_traits<R>::parse(s.template get<std::string>()));
    for (const auto& s : j.at("values")) values.push_back(scalar_traits<R>::parse(s.template get<std::string>()));
    return {std::move(nodes), std::move(values)};
}

}  // namespace lane8
