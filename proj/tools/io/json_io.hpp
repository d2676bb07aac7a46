#pragma once

#include "cvx/functions.hpp"
#include "cvx/inequalities.hpp"
#include "cvx/interval.hpp"
#include "cvx/sandwich.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvx::io {

using nlohmann::json;

/// Malformed input document or source string.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Kind kind_from_string(std::string_view name);

json to_json(const ExtInterval& v);
ExtInterval interval_from_json(const json& j);

json to_json(const SampledFunction& f);
json to_json(const IntervalFunction& f);
json to_json(const AffineMap& h);
json to_json(const AffineIntervalMap& h);
json to_json(const IntervalSeparator& h);

json to_json(const Violation& v);
json to_json(const SetViolation& v);
json to_json(const Constraint& c);
json to_json(const AffineOutcome& r);
json to_json(const EnvelopeOutcome& r);
json to_json(const IntervalOutcome& r);
json to_json(const IntervalEnvelopeOutcome& r);

json to_json(const Value& v);
json to_json(const Witness& w);
json to_json(const CheckReport& r);
json to_json(const ScanResult& s);
json to_json(const Prop3Scan& s);
json to_json(const InclusionCensus& c);
json to_json(const Prop7Report& r);
json to_json(const ConvexityCrossCheck& c);

/// {"type":"sampled",...} or {"type":"expr","formula":..,"domain":[a,b],"samples":n}.
SampledFunction sampled_from_json(const json& j);

/// {"type":"interval","kind":..,"xs":[..],"lower":[..],"upper":[..]}; lower
/// and upper may instead be formulas, with "domain" and "samples" in place
/// of "xs".
IntervalFunction interval_function_from_json(const json& j);

/// A function source: inline "expr:<formula>@[a,b]:n", inline JSON
/// (leading '{'), or a path to a JSON file.
SampledFunction load_sampled(const std::string& source);

/// As load_sampled, plus the inline form
/// "ivf:<kind>[:<lower>][;<upper>]@[a,b]:n" (formulas for the endpoints the
/// kind has, separated by ';' when both are present).
IntervalFunction load_interval_function(const std::string& source);

/// Shortest text that reads back to the same double.
std::string format_number(double v);

} // namespace cvx::io
