#include "json_io.hpp"

#include "cvx/error.hpp"
#include "cvx/expr.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cvx::io {

namespace {

double parse_number(std::string_view text, std::string_view what)
{
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw InputError("cannot read " + std::string(what) + " from '" + std::string(text) + "'");
    return v;
}

struct Sampling {
    double a;
    double b;
    std::size_t n;
};

// "@[a,b]:n"
Sampling parse_sampling(std::string_view spec)
{
    const auto fail = [&] {
        return InputError("expected '@[a,b]:n' sampling suffix, got '" + std::string(spec) + "'");
    };
    if (spec.size() < 2 || spec[0] != '@' || spec[1] != '[')
        throw fail();
    const auto comma = spec.find(',');
    const auto close = spec.find(']');
    if (comma == std::string_view::npos || close == std::string_view::npos || close < comma ||
        close + 1 >= spec.size() || spec[close + 1] != ':')
        throw fail();
    const double a = parse_number(spec.substr(2, comma - 2), "domain start");
    const double b = parse_number(spec.substr(comma + 1, close - comma - 1), "domain end");
    const double n = parse_number(spec.substr(close + 2), "sample count");
    if (!(n >= 2) || std::floor(n) != n)
        throw InputError("sample count must be an integer >= 2");
    return {a, b, static_cast<std::size_t>(n)};
}

std::vector<double> sample_values(const std::string& formula, std::span<const double> xs)
{
    const auto e = expr::parse(formula);
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs)
        ys.push_back(expr::eval_expr(e, x));
    return ys;
}

json read_json_source(const std::string& source)
{
    try {
        if (!source.empty() && source.front() == '{')
            return json::parse(source);
        std::ifstream in(source);
        if (!in)
            throw InputError("cannot open '" + source + "'");
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in '" + source + "': " + e.what());
    }
}

std::vector<double> number_array(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_array())
        throw InputError(std::string("missing numeric array '") + key + "'");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number())
            throw InputError(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

Sampling sampling_from_json(const json& j)
{
    if (!j.contains("domain") || !j.at("domain").is_array() || j.at("domain").size() != 2 ||
        !j.at("samples").is_number_integer())
        throw InputError("expression input needs \"domain\":[a,b] and integer \"samples\"");
    const auto n = j.at("samples").get<long long>();
    if (n < 2)
        throw InputError("sample count must be >= 2");
    return {j.at("domain")[0].get<double>(), j.at("domain")[1].get<double>(),
            static_cast<std::size_t>(n)};
}

std::string type_of(const json& j)
{
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw InputError("function document needs a string \"type\"");
    return j.at("type").get<std::string>();
}

} // namespace

std::string format_number(double v)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

Kind kind_from_string(std::string_view name)
{
    if (name == "bounded")
        return Kind::Bounded;
    if (name == "upper_half")
        return Kind::UpperHalf;
    if (name == "lower_half")
        return Kind::LowerHalf;
    if (name == "all_reals")
        return Kind::AllReals;
    throw InputError("unknown interval kind '" + std::string(name) + "'");
}

json to_json(const ExtInterval& v)
{
    json j{{"kind", std::string(to_string(v.kind()))}};
    if (v.has_lo())
        j["lo"] = v.lo();
    if (v.has_hi())
        j["hi"] = v.hi();
    return j;
}

ExtInterval interval_from_json(const json& j)
{
    try {
        switch (kind_from_string(j.at("kind").get<std::string>())) {
        case Kind::Bounded: return make_bounded(j.at("lo").get<double>(), j.at("hi").get<double>());
        case Kind::UpperHalf: return ExtInterval::upper_half(j.at("lo").get<double>());
        case Kind::LowerHalf: return ExtInterval::lower_half(j.at("hi").get<double>());
        case Kind::AllReals: break;
        }
        return ExtInterval::all_reals();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed interval: ") + e.what());
    }
}

json to_json(const SampledFunction& f)
{
    return {{"type", "sampled"},
            {"xs", std::vector<double>(f.xs().begin(), f.xs().end())},
            {"ys", std::vector<double>(f.ys().begin(), f.ys().end())}};
}

json to_json(const IntervalFunction& f)
{
    json j{{"type", "interval"},
           {"kind", std::string(to_string(f.kind()))},
           {"xs", std::vector<double>(f.xs().begin(), f.xs().end())}};
    if (f.lower())
        j["lower"] = std::vector<double>(f.lower()->ys().begin(), f.lower()->ys().end());
    if (f.upper())
        j["upper"] = std::vector<double>(f.upper()->ys().begin(), f.upper()->ys().end());
    return j;
}

json to_json(const AffineMap& h) { return {{"m", h.m}, {"c", h.c}}; }

json to_json(const AffineIntervalMap& h)
{
    json j{{"kind", std::string(to_string(h.kind))}};
    if (h.lower)
        j["lower"] = to_json(*h.lower);
    if (h.upper)
        j["upper"] = to_json(*h.upper);
    return j;
}

json to_json(const IntervalSeparator& h)
{
    json j{{"kind", std::string(to_string(h.kind))}};
    if (h.lower)
        j["lower"] = to_json(*h.lower);
    if (h.upper)
        j["upper"] = to_json(*h.upper);
    return j;
}

json to_json(const Violation& v)
{
    return {{"x", v.x},     {"y", v.y},     {"t", v.t},
            {"lhs", v.lhs}, {"rhs", v.rhs}, {"clause", std::string(to_string(v.clause))}};
}

json to_json(const SetViolation& v)
{
    auto j = to_json(v.endpoint);
    j["side"] = std::string(to_string(v.side));
    j["inclusion"] = std::string(to_string(v.inclusion));
    return j;
}

json to_json(const Constraint& c)
{
    return {{"index", c.index}, {"x", c.x}, {"value", c.value}, {"lower", c.lower}};
}

namespace {

json core_json(const std::vector<Constraint>& core)
{
    json arr = json::array();
    for (const auto& c : core)
        arr.push_back(to_json(c));
    return arr;
}

} // namespace

json to_json(const AffineOutcome& r)
{
    if (const auto* h = std::get_if<AffineMap>(&r))
        return {{"status", "separator"}, {"m", h->m}, {"c", h->c}};
    const auto& bad = std::get<Infeasible>(r);
    return {{"status", "infeasible"}, {"witness", to_json(bad.witness)}, {"core", core_json(bad.core)}};
}

json to_json(const EnvelopeOutcome& r)
{
    if (const auto* p = std::get_if<SeparatorPair>(&r))
        return {{"status", "separator"}, {"h1", to_json(p->convex)}, {"h2", to_json(p->concave)}};
    return {{"status", "infeasible"}, {"witness", to_json(std::get<Infeasible>(r).witness)}};
}

json to_json(const IntervalOutcome& r)
{
    if (const auto* h = std::get_if<AffineIntervalMap>(&r)) {
        auto j = to_json(*h);
        j["status"] = "separator";
        return j;
    }
    const auto& bad = std::get<SetInfeasible>(r);
    return {{"status", "infeasible"}, {"witness", to_json(bad.witness)}, {"core", core_json(bad.core)}};
}

json to_json(const IntervalEnvelopeOutcome& r)
{
    if (const auto* p = std::get_if<IntervalSeparatorPair>(&r))
        return {{"status", "separator"}, {"h1", to_json(p->convex)}, {"h2", to_json(p->concave)}};
    return {{"status", "infeasible"}, {"witness", to_json(std::get<SetInfeasible>(r).witness)}};
}

json to_json(const Value& v)
{
    if (const auto* d = std::get_if<double>(&v))
        return *d;
    return to_json(std::get<ExtInterval>(v));
}

json to_json(const Witness& w)
{
    json j = json::object();
    if (w.x)
        j["x"] = *w.x;
    if (w.y)
        j["y"] = *w.y;
    if (w.z)
        j["z"] = *w.z;
    if (w.t)
        j["t"] = *w.t;
    if (!w.indices.empty())
        j["indices"] = w.indices;
    return j;
}

json to_json(const CheckReport& r)
{
    json j{{"holds", r.holds},
           {"lhs", to_json(r.lhs)},
           {"rhs", to_json(r.rhs)},
           {"slack", r.slack},
           {"equality", r.equality},
           {"witness", r.witness ? to_json(*r.witness) : json(nullptr)}};
    if (r.slacks.size() > 1)
        j["slacks"] = r.slacks;
    if (r.middle)
        j["middle"] = to_json(*r.middle);
    return j;
}

json to_json(const ScanResult& s)
{
    return {{"ok", s.ok()},
            {"evaluated", s.evaluated},
            {"equalities", s.equalities},
            {"min_slack", s.min_slack},
            {"violation", s.violation ? to_json(*s.violation) : json(nullptr)}};
}

json to_json(const Prop3Scan& s)
{
    return {{"hypotheses",
             {{"difference_monotone", s.difference_monotone},
              {"psi_shape", s.psi_shape},
              {"hold", s.hypotheses_hold()}}},
            {"scan", to_json(s.scan)},
            {"equality_everywhere", s.equality_everywhere}};
}

json to_json(const InclusionCensus& c)
{
    return {{"evaluated", c.evaluated},
            {"equal", c.equal},
            {"lhs_contains_rhs", c.lhs_contains_rhs},
            {"lhs_within_rhs", c.lhs_within_rhs},
            {"incomparable", c.incomparable}};
}

json to_json(const Prop7Report& r)
{
    return {{"direct", to_json(r.direct)},
            {"decomposed", to_json(r.decomposed)},
            {"paths_agree", r.paths_agree}};
}

json to_json(const ConvexityCrossCheck& c)
{
    return {{"convex", c.convex},
            {"scan", to_json(c.scan)},
            {"agree", c.agree},
            {"internal_error", c.internal_error},
            {"scan_incomplete", c.scan_incomplete}};
}

SampledFunction sampled_from_json(const json& j)
{
    const auto type = type_of(j);
    try {
        if (type == "sampled")
            return make_sampled(number_array(j, "xs"), number_array(j, "ys"));
        if (type == "expr") {
            const auto s = sampling_from_json(j);
            return expr::sample(expr::parse(j.at("formula").get<std::string>()), s.a, s.b, s.n);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed function document: ") + e.what());
    }
    throw InputError("expected a real function (type 'sampled' or 'expr'), got '" + type + "'");
}

IntervalFunction interval_function_from_json(const json& j)
{
    const auto type = type_of(j);
    if (type != "interval")
        throw InputError("expected type 'interval', got '" + type + "'");
    try {
        const Kind kind = kind_from_string(j.at("kind").get<std::string>());
        const bool formulas = (j.contains("lower") && j.at("lower").is_string()) ||
                              (j.contains("upper") && j.at("upper").is_string());
        std::vector<double> xs;
        if (formulas || !j.contains("xs")) {
            const auto s = sampling_from_json(j);
            xs = expr::uniform_grid(s.a, s.b, s.n);
        } else {
            xs = number_array(j, "xs");
        }
        const auto side = [&](const char* key) -> std::optional<std::vector<double>> {
            if (!j.contains(key))
                return std::nullopt;
            if (j.at(key).is_string())
                return sample_values(j.at(key).get<std::string>(), xs);
            return number_array(j, key);
        };
        return make_interval_function(kind, xs, side("lower"), side("upper"));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed interval function: ") + e.what());
    }
}

SampledFunction load_sampled(const std::string& source)
{
    if (source.rfind("expr:", 0) == 0) {
        const auto at = source.rfind('@');
        if (at == std::string::npos)
            throw InputError("inline expression needs an '@[a,b]:n' suffix");
        const auto s = parse_sampling(std::string_view(source).substr(at));
        return expr::sample(expr::parse(source.substr(5, at - 5)), s.a, s.b, s.n);
    }
    return sampled_from_json(read_json_source(source));
}

IntervalFunction load_interval_function(const std::string& source)
{
    if (source.rfind("ivf:", 0) == 0) {
        const auto at = source.rfind('@');
        if (at == std::string::npos)
            throw InputError("inline interval function needs an '@[a,b]:n' suffix");
        const auto s = parse_sampling(std::string_view(source).substr(at));
        const std::string body = source.substr(4, at - 4);
        const auto colon = body.find(':');
        const Kind kind = kind_from_string(body.substr(0, colon));
        const std::string formulas = colon == std::string::npos ? "" : body.substr(colon + 1);
        const auto xs = expr::uniform_grid(s.a, s.b, s.n);

        std::optional<std::vector<double>> lower;
        std::optional<std::vector<double>> upper;
        if (kind == Kind::Bounded) {
            const auto semi = formulas.find(';');
            if (semi == std::string::npos)
                throw InputError("bounded inline interval needs '<lower>;<upper>'");
            lower = sample_values(formulas.substr(0, semi), xs);
            upper = sample_values(formulas.substr(semi + 1), xs);
        } else if (kind == Kind::UpperHalf) {
            lower = sample_values(formulas, xs);
        } else if (kind == Kind::LowerHalf) {
            upper = sample_values(formulas, xs);
        } else if (!formulas.empty()) {
            throw InputError("all_reals takes no endpoint formulas");
        }
        return make_interval_function(kind, xs, lower, upper);
    }
    return interval_function_from_json(read_json_source(source));
}

} // namespace cvx::io
