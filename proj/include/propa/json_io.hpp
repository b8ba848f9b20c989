#pragma once

#include <json.hpp>

#include "propa/certificates.hpp"
#include "propa/graph.hpp"
#include "propa/invariants.hpp"
#include "propa/scale.hpp"
#include "propa/symmetry.hpp"

namespace propa {

using nlohmann::json;

// Rationals travel as exact "p/q" strings, never floats.
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

json scale_to_json(const Scale& sc);
Scale scale_from_json(const json& j, const Graph& g);

json measure_family_to_json(const MeasureFamily& mf);
MeasureFamily measure_family_from_json(const json& j, int vertex_count);

json flow_certificate_to_json(const Graph& g, const FlowCertificate& fc);
FlowCertificate flow_certificate_from_json(const json& j, const Graph& g);

json partition_family_to_json(const PartitionFamily& pf);
PartitionFamily partition_family_from_json(const json& j);

json epsilon_report_to_json(const Graph& g, const EpsilonReport& report);
json cheeger_report_to_json(const CheegerReport& report);

// Permutations as one-line arrays; orbit reports as index partitions.
json automorphism_set_to_json(const AutomorphismSet& group);
AutomorphismSet automorphism_set_from_json(const json& j);
json orbits_to_json(const Orbits& orbits);

} // namespace propa
