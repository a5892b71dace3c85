#ifndef SOFIC_REPORTS_HPP_
#define SOFIC_REPORTS_HPP_

#include <string>

#include <json.hpp>

#include "sofic/calculator.hpp"
#include "sofic/crossed.hpp"
#include "sofic/partitions.hpp"
#include "sofic/scaling.hpp"
#include "sofic/sofic.hpp"

// JSON forms of the reports. Rationals are written exactly as strings, with
// a double alongside for convenience.
namespace sofic::reports {

inline constexpr const char *kSchema = "sofic-report/1";

using Json = nlohmann::ordered_json;

Json exact(const Rational &r);
Json to_json(const MembershipReport &r);
Json to_json(const BoundReport &r);
Json to_json(const PropertyReport &r);
Json to_json(const HAReport &r);
Json to_json(const ApproxSumSweep &r);
Json to_json(const calc::Value &v);
Json to_json(const ScalingResult &r);
Json error_json(const std::string &kind, const std::string &message);

} // namespace sofic::reports

#endif // SOFIC_REPORTS_HPP_
