#include "cli.hpp"

#include "cvx/error.hpp"
#include "cvx/expr.hpp"
#include "cvx/inequalities.hpp"
#include "cvx/sandwich.hpp"
#include "json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace cvx::cli {

namespace {

using io::json;

struct RunConfig {
    std::string f, g, F, G, phi, psi;
    double x = 0, y = 0, z = 0, a = 0, b = 0, t = 0;
    std::vector<double> points, weights;
    double eps = default_eps;
    bool scan = false;
    bool set_valued = false;
    std::string kind;
    std::string property;
    std::string out_path;
    std::string format = "json";
};

class Usage : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Options registered on the active subcommand, by flag name.
class Flags {
public:
    Flags(CLI::App& app, RunConfig& cfg) : app_(app), cfg_(cfg) {}

    Flags& str(const char* name, std::string RunConfig::*field, const char* help)
    {
        opts_[name] = app_.add_option(name, cfg_.*field, help);
        return *this;
    }

    Flags& num(const char* name, double RunConfig::*field, const char* help)
    {
        opts_[name] = app_.add_option(name, cfg_.*field, help);
        return *this;
    }

    Flags& list(const char* name, std::vector<double> RunConfig::*field, const char* help)
    {
        opts_[name] = app_.add_option(name, cfg_.*field, help)->delimiter(',');
        return *this;
    }

    Flags& common()
    {
        app_.add_option("--eps", cfg_.eps, "absolute tolerance")->check(CLI::NonNegativeNumber);
        app_.add_option("--out", cfg_.out_path, "write the report to this file");
        app_.add_option("--format", cfg_.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        return *this;
    }

    bool given(const char* name) const
    {
        const auto it = opts_.find(name);
        return it != opts_.end() && it->second->count() > 0;
    }

    void require(std::initializer_list<const char*> names) const
    {
        for (const char* n : names)
            if (!given(n))
                throw Usage(std::string(n) + " is required");
    }

private:
    CLI::App& app_;
    RunConfig& cfg_;
    std::map<std::string, CLI::Option*> opts_;
};

struct Output {
    std::string text;
    int code = Holds;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Output json_output(const json& j, bool ok) { return {dump(j), ok ? Holds : Violated}; }

void require_json(const RunConfig& cfg, const char* command)
{
    if (cfg.format != "json")
        throw Usage(std::string(command) + " only produces JSON");
}

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& columns)
{
    std::ostringstream os;
    for (std::size_t c = 0; c < header.size(); ++c)
        os << (c ? "," : "") << header[c];
    os << '\n';
    for (std::size_t r = 0; r < columns.front().size(); ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << (c ? "," : "") << io::format_number(columns[c][r]);
        os << '\n';
    }
    return os.str();
}

std::vector<double> column(const SampledFunction& f, std::span<const double> grid)
{
    std::vector<double> out;
    out.reserve(grid.size());
    for (double x : grid)
        out.push_back(f(x));
    return out;
}

std::vector<double> merge_into(std::vector<double> grid, std::span<const double> xs)
{
    if (!grid.empty() && (grid.front() != xs.front() || grid.back() != xs.back()))
        throw Error(ErrorCode::DomainMismatch, "plotted functions must share one domain");
    std::vector<double> out;
    std::set_union(grid.begin(), grid.end(), xs.begin(), xs.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Lemma5Input lemma5_input(const RunConfig& cfg)
{
    return Lemma5Input{cfg.points, cfg.weights, cfg.a, cfg.b};
}

// -- subcommands -----------------------------------------------------------------

Output cmd_sandwich(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "sandwich");
    json report;
    bool feasible = false;
    if (cfg.set_valued) {
        flags.require({"--F", "--G"});
        const auto F = io::load_interval_function(cfg.F);
        const auto G = io::load_interval_function(cfg.G);
        const auto cond = check_condition_iii_setvalued(F, G, cfg.eps);
        const auto affine = find_affine_interval_separator(F, G, cfg.eps);
        const auto env = convex_concave_interval_separators(F, G, cfg.eps);
        report["condition_iii"] = cond ? json{{"status", "violation"}, {"witness", io::to_json(*cond)}}
                                       : json{{"status", "ok"}};
        report["affine"] = io::to_json(affine);
        report["envelopes"] = io::to_json(env);
        const auto* h = std::get_if<AffineIntervalMap>(&affine);
        report["verified"] = h != nullptr && verify_separator(F, G, *h, cfg.eps);
        feasible = !cond && h && std::holds_alternative<IntervalSeparatorPair>(env);
    } else {
        flags.require({"--f", "--g"});
        const auto f = io::load_sampled(cfg.f);
        const auto g = io::load_sampled(cfg.g);
        const auto cond = check_condition_iii(f, g, cfg.eps);
        const auto affine = find_affine_separator(f, g, cfg.eps);
        const auto env = convex_concave_separators(f, g, cfg.eps);
        report["condition_iii"] = cond ? json{{"status", "violation"}, {"witness", io::to_json(*cond)}}
                                       : json{{"status", "ok"}};
        report["affine"] = io::to_json(affine);
        report["envelopes"] = io::to_json(env);
        const auto* h = std::get_if<AffineMap>(&affine);
        report["verified"] = h != nullptr && verify_separator(f, g, *h, cfg.eps);
        feasible = !cond && h && std::holds_alternative<SeparatorPair>(env);
    }
    return json_output(report, feasible);
}

Output cmd_check(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "check");
    bool holds = false;
    if (flags.given("--F")) {
        if (cfg.property != "convex")
            throw Usage("set-valued input supports only 'check convex'");
        holds = is_convex_ivf(io::load_interval_function(cfg.F), cfg.eps);
    } else {
        flags.require({"--f"});
        const auto f = io::load_sampled(cfg.f);
        if (cfg.property == "convex")
            holds = is_convex(f, cfg.eps);
        else if (cfg.property == "concave")
            holds = is_concave(f, cfg.eps);
        else
            holds = is_increasing(f, cfg.eps);
    }
    return json_output({{"property", cfg.property}, {"holds", holds}}, holds);
}

Output cmd_envelope(const RunConfig& cfg, const Flags& flags)
{
    flags.require({"--f", "--kind"});
    if (cfg.kind != "lower-convex" && cfg.kind != "upper-concave")
        throw Usage("--kind must be 'lower-convex' or 'upper-concave'");
    const auto f = io::load_sampled(cfg.f);
    const auto env = cfg.kind == "lower-convex" ? lower_convex_envelope(f) : upper_concave_envelope(f);
    if (cfg.format == "csv")
        return {csv({"x", "f", "envelope"},
                    {{f.xs().begin(), f.xs().end()}, {f.ys().begin(), f.ys().end()},
                     {env.ys().begin(), env.ys().end()}}),
                Holds};
    return json_output(io::to_json(env), true);
}

Output cmd_popoviciu(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "popoviciu");
    flags.require({"--f"});
    const auto f = io::load_sampled(cfg.f);
    if (cfg.scan) {
        const auto s = popoviciu_scan(f, cfg.eps);
        return json_output({{"scan", io::to_json(s)}}, s.ok());
    }
    flags.require({"--x", "--y", "--z"});
    const auto r = popoviciu_check(f, cfg.x, cfg.y, cfg.z, cfg.eps);
    return json_output(io::to_json(r), r.holds);
}

Output cmd_popoviciu_setvalued(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "popoviciu-setvalued");
    flags.require({"--F"});
    const auto F = io::load_interval_function(cfg.F);
    if (cfg.scan) {
        const auto s = popoviciu_inclusion_scan(F, cfg.eps);
        return json_output({{"scan", io::to_json(s)}}, s.ok());
    }
    flags.require({"--x", "--y", "--z"});
    const auto r = popoviciu_inclusion_check(F, cfg.x, cfg.y, cfg.z, cfg.eps);
    return json_output(io::to_json(r), r.holds);
}

Direction direction_of(const RunConfig& cfg)
{
    if (cfg.kind.empty() || cfg.kind == "increasing")
        return Direction::IncreasingConvex;
    if (cfg.kind == "decreasing")
        return Direction::DecreasingConcave;
    throw Usage("--kind for prop3 must be 'increasing' or 'decreasing'");
}

Output cmd_prop3(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "prop3");
    if (cfg.set_valued) {
        // No established set-valued statement: report observations only.
        flags.require({"--F", "--G"});
        const auto census = prop3_setvalued_census(io::load_interval_function(cfg.F),
                                                   io::load_interval_function(cfg.G), cfg.eps);
        return json_output({{"experimental", true}, {"census", io::to_json(census)}}, true);
    }
    flags.require({"--phi", "--psi"});
    const auto phi = io::load_sampled(cfg.phi);
    const auto psi = io::load_sampled(cfg.psi);
    const auto direction = direction_of(cfg);
    if (cfg.scan) {
        const auto s = prop3_scan(phi, psi, direction, cfg.eps);
        return json_output(io::to_json(s), s.scan.ok());
    }
    flags.require({"--x", "--y", "--t"});
    const auto r = prop3_check(phi, psi, cfg.x, cfg.y, cfg.t, direction, cfg.eps);
    return json_output(io::to_json(r), r.holds);
}

Output cmd_lemma5(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "lemma5");
    flags.require({"--f", "--a", "--b", "--points", "--weights"});
    const auto f = io::load_sampled(cfg.f);
    const auto input = lemma5_input(cfg);
    const auto lambda = endpoint_weights(input, cfg.eps);
    const auto r = lemma5_check(f, input, cfg.eps);
    auto j = io::to_json(r);
    j["lambda1"] = lambda.lambda1;
    j["lambda2"] = lambda.lambda2;
    return json_output(j, r.holds);
}

Output cmd_prop6(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "prop6");
    flags.require({"--f", "--x", "--y", "--z", "--a", "--b"});
    const auto r = prop6_check(io::load_sampled(cfg.f), cfg.x, cfg.y, cfg.z, cfg.a, cfg.b, cfg.eps);
    return json_output(io::to_json(r), r.holds);
}

Output cmd_prop7(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "prop7");
    flags.require({"--F", "--a", "--b", "--points", "--weights"});
    const auto input = lemma5_input(cfg);
    const auto lambda = endpoint_weights(input, cfg.eps);
    const auto r = prop7_check(io::load_interval_function(cfg.F), input, cfg.eps);
    auto j = io::to_json(r);
    j["lambda1"] = lambda.lambda1;
    j["lambda2"] = lambda.lambda2;
    return json_output(j, r.direct.holds && r.paths_agree);
}

Output cmd_crosscheck(const RunConfig& cfg, const Flags& flags)
{
    require_json(cfg, "crosscheck");
    flags.require({"--f"});
    const auto c = convexity_cross_check(io::load_sampled(cfg.f), cfg.eps);
    return json_output(io::to_json(c), !c.internal_error);
}

Output cmd_plot(const RunConfig& cfg, const Flags& flags)
{
    if (flags.given("--format") && cfg.format != "csv")
        throw Usage("plot only produces CSV");

    std::vector<std::pair<std::string, SampledFunction>> real;
    for (const auto& [name, source] :
         {std::pair{"f", &cfg.f}, {"g", &cfg.g}, {"phi", &cfg.phi}, {"psi", &cfg.psi}})
        if (!source->empty())
            real.emplace_back(name, io::load_sampled(*source));
    std::vector<std::pair<std::string, IntervalFunction>> sets;
    for (const auto& [name, source] : {std::pair{"F", &cfg.F}, {"G", &cfg.G}})
        if (!source->empty())
            sets.emplace_back(name, io::load_interval_function(*source));
    if (real.empty() && sets.empty())
        throw Usage("plot needs at least one function");

    std::vector<double> grid;
    for (const auto& [_, f] : real)
        grid = merge_into(std::move(grid), f.xs());
    for (const auto& [_, F] : sets)
        grid = merge_into(std::move(grid), F.xs());

    std::vector<std::string> header{"x"};
    std::vector<std::vector<double>> cols{grid};
    for (const auto& [name, f] : real) {
        header.push_back(name);
        cols.push_back(column(f, grid));
    }
    for (const auto& [name, F] : sets) {
        if (F.lower()) {
            header.push_back(name + "_lo");
            cols.push_back(column(*F.lower(), grid));
        }
        if (F.upper()) {
            header.push_back(name + "_hi");
            cols.push_back(column(*F.upper(), grid));
        }
    }
    if (!cfg.f.empty() && !cfg.g.empty()) {
        const auto& f = real[0].second;
        const auto& g = real[1].second;
        header.insert(header.end(), {"lce_g", "uce_f"});
        cols.push_back(column(lower_convex_envelope(resample(g, grid)), grid));
        cols.push_back(column(upper_concave_envelope(resample(f, grid)), grid));
        const auto affine = find_affine_separator(f, g, cfg.eps);
        if (const auto* h = std::get_if<AffineMap>(&affine)) {
            header.push_back("h");
            std::vector<double> hs;
            for (double x : grid)
                hs.push_back((*h)(x));
            cols.push_back(std::move(hs));
        }
    }
    return {csv(header, cols), Holds};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Affine separators and convexity checks for piecewise-linear functions", "cvx"};
    app.require_subcommand(1);

    using Handler = std::function<Output(const RunConfig&, const Flags&)>;
    std::vector<std::tuple<CLI::App*, std::unique_ptr<Flags>, Handler>> commands;
    const auto command = [&](const char* name, const char* help, Handler handler) -> Flags& {
        auto* sub = app.add_subcommand(name, help);
        auto flags = std::make_unique<Flags>(*sub, cfg);
        flags->common();
        auto& ref = *flags;
        commands.emplace_back(sub, std::move(flags), std::move(handler));
        return ref;
    };

    using C = RunConfig;
    {
        auto& fl = command("sandwich", "cross condition, affine separator and envelope separators",
                           cmd_sandwich);
        fl.str("--f", &C::f, "lower function").str("--g", &C::g, "upper function");
        fl.str("--F", &C::F, "outer set-valued function").str("--G", &C::G, "inner set-valued function");
        std::get<0>(commands.back())->add_flag("--set-valued", cfg.set_valued, "use --F and --G");
    }
    {
        auto& fl = command("check", "convex | concave | increasing", cmd_check);
        std::get<0>(commands.back())
            ->add_option("property", cfg.property, "property to test")
            ->required()
            ->check(CLI::IsMember({"convex", "concave", "increasing"}));
        fl.str("--f", &C::f, "function").str("--F", &C::F, "set-valued function");
    }
    {
        auto& fl = command("envelope", "convex minorant or concave majorant", cmd_envelope);
        fl.str("--f", &C::f, "function").str("--kind", &C::kind, "lower-convex or upper-concave");
    }
    {
        auto& fl = command("popoviciu", "three-point convexity inequality", cmd_popoviciu);
        fl.str("--f", &C::f, "function").num("--x", &C::x, "").num("--y", &C::y, "").num("--z", &C::z, "");
        std::get<0>(commands.back())->add_flag("--scan", cfg.scan, "scan all breakpoint triples");
    }
    {
        auto& fl = command("popoviciu-setvalued", "three-point inclusion for set-valued functions",
                           cmd_popoviciu_setvalued);
        fl.str("--F", &C::F, "set-valued function").num("--x", &C::x, "").num("--y", &C::y, "").num("--z", &C::z, "");
        std::get<0>(commands.back())->add_flag("--scan", cfg.scan, "scan all breakpoint triples");
    }
    {
        auto& fl = command("prop3", "monotone difference inequality", cmd_prop3);
        fl.str("--phi", &C::phi, "").str("--psi", &C::psi, "");
        fl.num("--x", &C::x, "").num("--y", &C::y, "").num("--t", &C::t, "");
        fl.str("--kind", &C::kind, "increasing (default) or decreasing");
        fl.str("--F", &C::F, "Phi for --set-valued").str("--G", &C::G, "Psi for --set-valued");
        auto* sub = std::get<0>(commands.back());
        sub->add_flag("--scan", cfg.scan, "scan all grid pairs");
        sub->add_flag("--set-valued", cfg.set_valued, "experimental inclusion census");
    }
    {
        auto& fl = command("lemma5", "convex combination of points against the endpoints", cmd_lemma5);
        fl.str("--f", &C::f, "").num("--a", &C::a, "").num("--b", &C::b, "");
        fl.list("--points", &C::points, "comma separated").list("--weights", &C::weights, "comma separated");
    }
    {
        auto& fl = command("prop6", "double inequality under the barycenter constraint", cmd_prop6);
        fl.str("--f", &C::f, "").num("--x", &C::x, "").num("--y", &C::y, "").num("--z", &C::z, "");
        fl.num("--a", &C::a, "").num("--b", &C::b, "");
    }
    {
        auto& fl = command("prop7", "set-valued convex combination inclusion", cmd_prop7);
        fl.str("--F", &C::F, "").num("--a", &C::a, "").num("--b", &C::b, "");
        fl.list("--points", &C::points, "comma separated").list("--weights", &C::weights, "comma separated");
    }
    {
        auto& fl = command("crosscheck", "slope convexity test against the Popoviciu scan", cmd_crosscheck);
        fl.str("--f", &C::f, "");
    }
    {
        auto& fl = command("plot", "CSV of the given functions on their merged grid", cmd_plot);
        fl.str("--f", &C::f, "").str("--g", &C::g, "").str("--phi", &C::phi, "").str("--psi", &C::psi, "");
        fl.str("--F", &C::F, "").str("--G", &C::G, "");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Holds;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return UsageError;
    }

    for (auto& [sub, flags, handler] : commands) {
        if (!sub->parsed())
            continue;
        try {
            const auto result = handler(cfg, *flags);
            if (!cfg.out_path.empty()) {
                std::ofstream file(cfg.out_path, std::ios::binary);
                if (!file)
                    throw Usage("cannot write '" + cfg.out_path + "'");
                file << result.text;
            } else {
                out << result.text;
            }
            return result.code;
        } catch (const Usage& e) {
            err << "usage error: " << e.what() << "\n";
        } catch (const Error& e) {
            err << "input error: " << e.what() << "\n";
        } catch (const expr::SyntaxError& e) {
            err << "input error: " << e.what() << "\n";
        } catch (const expr::EvalError& e) {
            err << "input error: " << e.what() << "\n";
        } catch (const io::InputError& e) {
            err << "input error: " << e.what() << "\n";
        }
        return UsageError;
    }
    return UsageError;
}

} // namespace cvx::cli
