#include "sofic/reports.hpp"

namespace sofic::reports {

Json exact(const Rational &r) { return Json{{"exact", to_string(r)}, {"value", to_double(r)}}; }

Json to_json(const MembershipReport &r) {
  Json j;
  j["is_member"] = r.is_member;
  j["delta"] = exact(r.delta);
  j["degree"] = r.degree;
  j["multiplicativity_gap"] = exact(r.worst_multiplicativity_gap);
  j["trace_gap"] = exact(r.worst_trace_gap);
  j["pairs_checked"] = r.pairs_checked;
  j["overlapping_sums"] = r.overlapping_sums;
  j["witnesses"] = r.witness_labels;
  return j;
}

Json to_json(const BoundReport &r) {
  Json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["bound"] = r.bound;
  j["worst"] = r.worst;
  j["slack_ratio"] = r.slack_ratio;
  j["witness"] = r.witness;
  j["checked"] = r.checked;
  j["squared"] = r.squared;
  j["bound_exact"] = to_string(r.bound_exact);
  j["worst_exact"] = to_string(r.worst_exact);
  return j;
}

Json to_json(const PropertyReport &r) {
  Json j;
  j["pass"] = r.pass();
  j["delta0_sq"] = exact(r.delta0_sq);
  j["trace"] = {{"gap", exact(r.trace_gap)}, {"ok", r.trace_ok}};
  j["equivariance"] = {{"gap_sq", exact(r.equivariance_gap_sq)}, {"ok", r.equivariance_ok}};
  j["multiplicativity"] = {{"gap_sq", exact(r.multiplicativity_gap_sq)}, {"ok", r.multiplicativity_ok}};
  j["unit"] = {{"gap_sq", exact(r.unit_gap_sq)}, {"ok", r.unit_ok}};
  return j;
}

Json to_json(const HAReport &r) {
  Json j;
  j["is_member"] = r.is_member;
  j["tolerance_sq"] = exact(r.tolerance_sq);
  j["trace_gap"] = exact(r.trace_gap);
  j["equivariance_gap"] = exact(r.equivariance_gap);
  j["multiplicativity_gap"] = exact(r.multiplicativity_gap);
  j["unit_gap"] = exact(r.unit_gap);
  j["witnesses"] = {{"trace", r.trace_witness},
                    {"equivariance", r.equivariance_witness},
                    {"multiplicativity", r.multiplicativity_witness}};
  j["checks"] = r.checks;
  return j;
}

Json to_json(const ApproxSumSweep &r) {
  return Json{{"pass", r.pass}, {"worst_gap", exact(r.worst_gap)}, {"witness", r.witness}, {"pairs", r.pairs}};
}

Json to_json(const calc::Value &v) {
  Json j;
  j["schema"] = kSchema;
  j["value"] = to_string(v.value);
  j["value_num"] = to_string(BigInt(numerator(v.value)));
  j["value_den"] = to_string(BigInt(denominator(v.value)));
  j["value_double"] = to_double(v.value);
  j["amenable"] = v.amenable;
  Json a = Json::array();
  for (const auto &x : v.assumptions) {
    a.push_back({{"rule", x.rule}, {"hypothesis", x.hypothesis}, {"justification", x.justification}});
  }
  j["assumptions"] = std::move(a);
  return j;
}

Json to_json(const ScalingResult &r) {
  Json j;
  j["degree"] = r.degree;
  j["delta"] = exact(r.delta);
  j["source"] = r.source ? r.source->describe() : std::string();
  j["membership"] = to_json(r.report);
  j["blocks"] = r.blocks;
  return j;
}

Json error_json(const std::string &kind, const std::string &message) {
  return Json{{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace sofic::reports
