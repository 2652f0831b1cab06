#include "betacert/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "betacert/beta_expansion.hpp"
#include "betacert/bounds_verifier.hpp"
#include "betacert/certificate_json.hpp"
#include "betacert/certifier.hpp"
#include "betacert/errors.hpp"
#include "betacert/perron_gen.hpp"
#include "betacert/root_engine.hpp"

namespace betacert::cli {

namespace {

constexpr const char* kTrinomialAssumption = "x^n - x - 1 is irreducible over Q for every n (classical, not checked here)";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double value, int digits = 12)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

// --n and --poly, shared by roots, expand and certify.
struct PolySource {
    std::optional<unsigned> n;
    std::string poly;
    bool assume_irreducible = false;

    void add_to(CLI::App* cmd, bool with_assumption)
    {
        auto* n_opt = cmd->add_option("--n", n, "use x^n - x - 1");
        auto* p_opt = cmd->add_option("--poly", poly, "coefficients a0,a1,...,ad in ascending degree");
        n_opt->excludes(p_opt);
        if (with_assumption)
            cmd->add_flag("--assume-irreducible", assume_irreducible,
                          "acknowledge that the --poly polynomial is irreducible over Q");
    }

    IntPolynomial polynomial() const
    {
        if (n) {
            if (*n < 2)
                throw UsageError("--n must be at least 2");
            return IntPolynomial::selmer(*n);
        }
        if (poly.empty())
            throw UsageError("one of --n or --poly is required");
        try {
            return IntPolynomial::parse(poly);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }

    // The field, with irreducibility either known (--n) or acknowledged.
    NumberField field() const
    {
        IntPolynomial f = polynomial();
        if (!n && !assume_irreducible)
            throw UsageError("--poly needs --assume-irreducible: irreducibility over Q is not checked");
        try {
            return make_number_field(f, Irreducibility::asserted);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }

    std::vector<std::string> assumptions() const
    {
        if (n)
            return {kTrinomialAssumption};
        return CertifyOptions{}.assumptions;
    }
};

struct RootsCommand {
    PolySource source;
    Precision precision = 128;
    bool csv = false;

    void add_to(CLI::App& app, std::function<int(std::ostream&)>& action)
    {
        auto* cmd = app.add_subcommand("roots", "certified enclosures of all complex roots");
        source.add_to(cmd, false);
        cmd->add_option("--precision", precision, "working precision in bits")->check(CLI::Range(53, 1 << 20));
        cmd->add_flag("--csv", csv, "root, asymptotic approximation and deviation per branch (needs --n)");
        cmd->callback([this, &action] { action = [this](std::ostream& out) { return run(out); }; });
    }

    int run(std::ostream& out) const
    {
        if (csv) {
            if (!source.n)
                throw UsageError("--csv needs --n");
            return figure_one(*source.n, precision, out);
        }
        IntPolynomial f = source.polynomial();
        if (f.deg() < 1)
            throw UsageError("polynomial must have positive degree");
        std::vector<ComplexBall> roots;
        try {
            roots = all_roots(f, precision);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        Json list = Json::array();
        for (const auto& r : roots) {
            Json item = ball_json(r, 30);
            if (source.n)
                if (std::optional<int> m = branch_of(*source.n, r))
                    item["branch_m"] = *m;
            list.push_back(std::move(item));
        }
        Json doc;
        doc["schema"] = kSchemaVersion;
        doc["polynomial"] = polynomial_json(f);
        doc["precision_bits"] = static_cast<std::int64_t>(precision);
        doc["roots"] = std::move(list);
        out << dump(doc);
        return kExitOk;
    }

    static int figure_one(unsigned n, Precision precision, std::ostream& out)
    {
        std::vector<BranchDeviation> rows;
        try {
            rows = branch_deviations(n, precision);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        out << "n,m,root_re,root_im,approx_re,approx_im,deviation\n";
        for (const auto& row : rows) {
            std::complex<double> z = row.root.to_complex();
            out << n << ',' << row.m << ',' << fmt(z.real(), 17) << ',' << fmt(z.imag(), 17) << ','
                << fmt(row.approx.real(), 17) << ',' << fmt(row.approx.imag(), 17) << ',' << fmt(row.deviation) << '\n';
        }
        return kExitOk;
    }
};

struct ExpandCommand {
    PolySource source;
    std::optional<std::size_t> steps;
    bool json = false;
    bool raw = false;

    void add_to(CLI::App& app, std::function<int(std::ostream&)>& action)
    {
        auto* cmd = app.add_subcommand("expand", "quasi-greedy expansion of one");
        source.add_to(cmd, true);
        cmd->add_option("--steps", steps, "number of digits")->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
        auto* j = cmd->add_flag("--json", json, "JSON document (default)");
        auto* r = cmd->add_flag("--raw", raw, "bare digit string in groups of five");
        j->excludes(r);
        cmd->callback([this, &action] { action = [this](std::ostream& out) { return run(out); }; });
    }

    int run(std::ostream& out) const
    {
        NumberField field = source.field();
        ExpansionOrbit orbit = expansion_of_one(field, steps);
        std::size_t count = steps.value_or(orbit.size());
        std::vector<long> digits;
        digits.reserve(count);
        for (std::size_t i = 1; i <= count; ++i)
            digits.push_back(orbit.digit(i));
        if (raw) {
            out << group_digits(digits, 5) << '\n';
            return kExitOk;
        }
        Json doc;
        doc["schema"] = kSchemaVersion;
        doc["polynomial"] = polynomial_json(field.min_poly());
        doc["floor_beta"] = integer_json(field.floor_beta());
        doc["beta"] = ball_json(field.real_root());
        doc["steps"] = count;
        doc["digits"] = group_digits(digits, 5);
        if (orbit.m0)
            doc["m0"] = *orbit.m0;
        else
            doc["m0"] = nullptr;
        if (orbit.periodicity)
            doc["periodicity"] = Json{{"preperiod", orbit.periodicity->preperiod}, {"period", orbit.periodicity->period}};
        else
            doc["periodicity"] = nullptr;
        doc["precision_bits"] = static_cast<std::int64_t>(orbit.precision_used);
        doc["assumptions"] = source.assumptions();
        out << dump(doc);
        return kExitOk;
    }
};

struct CertifyCommand {
    PolySource source;
    std::optional<std::size_t> max_steps;
    std::string conjugate = "closest";
    std::optional<std::size_t> conjugate_index;
    std::optional<std::size_t> check_index;

    void add_to(CLI::App& app, std::function<int(std::ostream&)>& action)
    {
        auto* cmd = app.add_subcommand("certify", "non-Parry certificate from conjugate orbit divergence");
        source.add_to(cmd, true);
        cmd->add_option("--max-steps", max_steps, "orbit step budget");
        cmd->add_option("--conjugate", conjugate, "conjugate choice")->check(CLI::IsMember({"closest", "max"}));
        cmd->add_option("--conjugate-index", conjugate_index, "explicit root index (overrides --conjugate)");
        cmd->add_option("--check-index", check_index, "also decide the divergence inequality at this step");
        cmd->callback([this, &action] { action = [this](std::ostream& out) { return run(out); }; });
    }

    int run(std::ostream& out) const
    {
        NumberField field = source.field();
        CertifyOptions options;
        options.max_steps = max_steps;
        options.conjugate = conjugate == "max" ? ConjugateChoice::max_modulus : ConjugateChoice::closest;
        options.conjugate_index = conjugate_index;
        options.assumptions = source.assumptions();
        if (conjugate_index && *conjugate_index >= field.degree())
            throw UsageError("--conjugate-index out of range");
        CertifyResult result = certify_non_parry(field, options);
        Json doc = result_json(result);
        if (!std::holds_alternative<NonParryCertificate>(result))
            doc["polynomial"] = polynomial_json(field.min_poly());
        if (check_index) {
            std::size_t index = conjugate_index.value_or(
                std::holds_alternative<NonParryCertificate>(result)
                    ? std::get<NonParryCertificate>(result).conjugate_index
                    : choose_conjugate(field, options.conjugate));
            std::optional<bool> holds = inequality_holds_at(field, index, *check_index);
            Json check{{"k", *check_index}, {"conjugate_index", index}};
            if (holds)
                check["holds"] = *holds;
            else
                check["holds"] = nullptr;
            doc["check_index"] = std::move(check);
        }
        out << dump(doc);
        if (std::holds_alternative<NonParryCertificate>(result))
            return kExitOk;
        if (std::holds_alternative<ParryEvidence>(result))
            return kExitParry;
        return kExitInconclusive;
    }
};

struct VerifyLemmasCommand {
    std::string lemma = "all";
    std::string range;
    unsigned jobs = 1;
    bool timing = false;

    void add_to(CLI::App& app, std::function<int(std::ostream&)>& action, std::ostream& err)
    {
        auto* cmd = app.add_subcommand("verify-lemmas", "certified sweeps of the finite-range inequalities");
        cmd->add_option("--lemma", lemma, "est, nextone, ineq, abs or all")
            ->check(CLI::IsMember({"est", "nextone", "ineq", "abs", "all"}));
        cmd->add_option("--range", range, "lo:hi, inclusive")->required();
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1U, 256U));
        cmd->add_flag("--timing", timing, "fill the millis column (otherwise 0, keeping output reproducible)");
        cmd->callback([this, &action, &err] { action = [this, &err](std::ostream& out) { return run(out, err); }; });
    }

    static std::pair<unsigned, unsigned> parse_range(const std::string& text)
    {
        std::size_t colon = text.find(':');
        if (colon == std::string::npos)
            throw UsageError("--range must look like lo:hi");
        try {
            std::size_t used_lo = 0;
            std::size_t used_hi = 0;
            unsigned long lo = std::stoul(text.substr(0, colon), &used_lo);
            unsigned long hi = std::stoul(text.substr(colon + 1), &used_hi);
            if (used_lo != colon || used_hi != text.size() - colon - 1 || hi > 1000000 || lo > hi)
                throw UsageError("bad --range " + text);
            return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
        } catch (const std::logic_error&) {
            throw UsageError("bad --range " + text);
        }
    }

    int run(std::ostream& out, std::ostream& err) const
    {
        auto [lo, hi] = parse_range(range);
        SweepOptions options;
        options.jobs = jobs;
        std::vector<SweepReport> reports;
        if (lemma == "all") {
            reports = sweep_all(lo, hi, options);
            if (reports.empty())
                throw UsageError("no inequality is stated on " + range);
        } else {
            Lemma which = *parse_lemma(lemma);
            if (lo < lemma_lower_limit(which))
                throw UsageError(lemma + " is stated for n >= " + std::to_string(lemma_lower_limit(which)));
            reports.push_back(run_sweep(which, lo, hi, options));
        }
        out << "n,lemma,pass,margin,precision_bits,millis\n";
        bool ok = true;
        for (const auto& report : reports) {
            for (const auto& row : report.rows)
                out << row.n << ',' << lemma_name(row.lemma) << ',' << (row.pass ? "true" : "false") << ','
                    << fmt(row.margin, 8) << ',' << row.precision_bits << ',' << (timing ? fmt(row.millis, 4) : "0")
                    << '\n';
            ok = ok && report.failures.empty();
            err << "event=sweep lemma=" << lemma_name(report.lemma) << " range=" << report.n_lo << ':' << report.n_hi
                << " failures=" << report.failures.size() << " min_margin=" << fmt(report.min_margin, 6)
                << " wall_s=" << fmt(report.wall_seconds, 4) << '\n';
            for (unsigned n : report.failures)
                err << "event=failure lemma=" << lemma_name(report.lemma) << " n=" << n << '\n';
        }
        return ok ? kExitOk : kExitFailure;
    }
};

IntPolynomial parse_g(const std::string& text)
{
    if (text.empty())
        throw UsageError("--g is required");
    try {
        return IntPolynomial::parse(text);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

GeometricGrid grid_with_samples(unsigned samples)
{
    GeometricGrid grid = GeometricGrid::standard();
    grid.t_grid.clear();
    for (unsigned j = 1; j < samples; ++j)
        grid.t_grid.push_back(2 * M_PI * j / samples);
    return grid;
}

std::string_view defect_name(GDefect defect)
{
    switch (defect) {
    case GDefect::constant:
        return "constant";
    case GDefect::value_at_one_too_small:
        return "value_at_one_too_small";
    case GDefect::vanishes_at_zero:
        return "vanishes_at_zero";
    case GDefect::perfect_power:
        return "perfect_power";
    case GDefect::minus_four_fourth_power:
        return "minus_four_fourth_power";
    }
    return "unknown";
}

struct PerronCommand {
    std::string g;
    std::optional<unsigned> n;
    unsigned samples = 720;
    std::optional<std::size_t> max_steps;

    void add_to(CLI::App& app, std::function<int(std::ostream&)>& action)
    {
        auto* cmd = app.add_subcommand("perron", "hypotheses, geometric condition and certificate for x^n - G(x)");
        cmd->add_option("--g", g, "coefficients of G, ascending degree, signed")->required();
        cmd->add_option("--n", n, "also certify x^n - G(x)");
        cmd->add_option("--samples", samples, "angles sampled on each circle")->check(CLI::Range(16U, 1U << 20));
        cmd->add_option("--max-steps", max_steps, "orbit step budget");
        cmd->callback([this, &action] { action = [this](std::ostream& out) { return run(out); }; });
    }

    int run(std::ostream& out) const
    {
        IntPolynomial G = parse_g(g);
        Json doc;
        doc["schema"] = kSchemaVersion;
        doc["G"] = polynomial_json(G);
        GSpec spec;
        try {
            spec = validate_G(G);
        } catch (const InvalidG& e) {
            doc["result"] = "invalid";
            doc["defect"] = defect_name(e.defect());
            doc["reason"] = e.what();
            out << dump(doc);
            return kExitFailure;
        }
        doc["G1"] = integer_json(spec.G1);
        doc["relaxed"] = spec.relaxed;
        doc["m"] = spec.m;
        GeometricResult geo = geometric_condition(G, grid_with_samples(samples));
        Json geo_json{{"outcome", outcome_name(geo.outcome)}, {"method", geo.method}};
        geo_json["witness_t"] = geo.witness_t ? Json(*geo.witness_t) : Json(nullptr);
        geo_json["witness_r"] = geo.witness_r ? Json(*geo.witness_r) : Json(nullptr);
        doc["geometric"] = std::move(geo_json);

        int code = kExitOk;
        if (n) {
            if (*n <= G.deg())
                throw UsageError("--n must exceed deg G");
            GeneralizedOptions options;
            options.max_steps = max_steps;
            GeneralizedResult gen = generalized_certify(spec, *n, options);
            Json cert = result_json(gen.result);
            cert["seed_converged"] = gen.seed_converged;
            doc["polynomial"] = polynomial_json(perron_polynomial(G, *n));
            doc["certification"] = std::move(cert);
            if (std::holds_alternative<ParryEvidence>(gen.result))
                code = kExitParry;
            else if (std::holds_alternative<Inconclusive>(gen.result))
                code = kExitInconclusive;
        }
        if (geo.outcome == GeometricResult::Outcome::fail)
            code = kExitFailure;
        else if (geo.outcome == GeometricResult::Outcome::borderline && code == kExitOk)
            code = kExitInconclusive;
        out << dump(doc);
        return code;
    }
};

struct PlotDataCommand {
    unsigned figure = 1;
    unsigned n = 12;
    std::string g;
    unsigned samples = 1024;

    void add_to(CLI::App& app, std::function<int(std::ostream&)>& action)
    {
        auto* cmd = app.add_subcommand("plot-data", "CSV behind the root and curve plots");
        cmd->add_option("--figure", figure, "1: roots against asymptotics, 2: curve G(e^it)")
            ->check(CLI::IsMember({1U, 2U}));
        cmd->add_option("--n", n, "degree for figure 1");
        cmd->add_option("--g", g, "G for figure 2");
        cmd->add_option("--samples", samples, "curve points for figure 2")->check(CLI::Range(16U, 1U << 22));
        cmd->callback([this, &action] { action = [this](std::ostream& out) { return run(out); }; });
    }

    int run(std::ostream& out) const
    {
        if (figure == 1)
            return RootsCommand::figure_one(n, 128, out);
        IntPolynomial G = parse_g(g);
        out << "t,re,im,modulus,g1\n";
        for (const auto& p : curve_export(G, samples))
            out << fmt(p.t, 17) << ',' << fmt(p.re, 17) << ',' << fmt(p.im, 17) << ',' << fmt(p.modulus, 17) << ','
                << fmt(p.g1, 17) << '\n';
        return kExitOk;
    }
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Beta expansions of one, non-Parry certificates and root localisation", "betacert"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "betacert 1.0.0");
    std::string out_path;
    app.add_option("--out", out_path, "write the payload to this file instead of stdout");

    std::function<int(std::ostream&)> action;

    RootsCommand roots;
    ExpandCommand expand;
    CertifyCommand certify;
    VerifyLemmasCommand lemmas;
    PerronCommand perron;
    PlotDataCommand plot;
    roots.add_to(app, action);
    expand.add_to(app, action);
    certify.add_to(app, action);
    perron.add_to(app, action);
    plot.add_to(app, action);
    lemmas.add_to(app, action, err);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("betacert");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ostringstream payload;
    int code = kExitOk;
    auto start = std::chrono::steady_clock::now();
    try {
        code = action(payload);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PrecisionExhausted& e) {
        err << "event=inconclusive reason=\"" << e.what() << "\"\n";
        return kExitInconclusive;
    } catch (const NonConvergence& e) {
        err << "event=inconclusive reason=\"" << e.what() << "\"\n";
        return kExitInconclusive;
    } catch (const ContractionFailure& e) {
        err << "event=inconclusive reason=\"" << e.what() << "\"\n";
        return kExitInconclusive;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "event=error reason=\"" << e.what() << "\"\n";
        return kExitFailure;
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "event=done command=" << app.get_subcommands().front()->get_name() << " exit=" << code
        << " wall_s=" << fmt(elapsed, 4) << '\n';

    if (out_path.empty()) {
        out << payload.str();
    } else {
        std::ofstream file(out_path, std::ios::binary);
        file << payload.str();
        if (!file) {
            err << "error: cannot write " << out_path << '\n';
            return kExitFailure;
        }
    }
    return code;
}

} // namespace betacert::cli
