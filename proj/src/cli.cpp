#include "nilgeo/cli.hpp"

#include "nilgeo/error.hpp"
#include "nilgeo/model_io.hpp"
#include "nilgeo/weights.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>

namespace nilgeo::cli {

using nlohmann::ordered_json;

namespace {

enum class Format { Json, Table };

struct Options {
    std::string type;
    int rank = 0;
    int bound = 5;
    std::vector<std::string> lambdas;
    std::string model;
    std::uint64_t seed = 0;
    std::size_t budget = CertifyOptions{}.budget;
    unsigned max_m = CertifyOptions{}.max_m;
    std::string x, alpha, z;
    std::string format = "json";
};

ordered_json int_array(const IVec& v) {
    ordered_json out = ordered_json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

ordered_json double_array(const DVec& v) {
    ordered_json out = ordered_json::array();
    for (double x : v) out.push_back(x);
    return out;
}

ordered_json optional_ints(const std::optional<IVec>& v) { return v ? int_array(*v) : ordered_json(nullptr); }

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

IVec parse_ints(const std::string& text) {
    IVec out;
    for (const auto& part : split(text, ',')) {
        const Rational q = parse_rational(part);
        if (!is_integer(q)) throw Error(ErrorCode::InvalidInput, "--lambda expects integers, got '" + part + "'");
        out.push_back(to_int64(q));
    }
    return out;
}

QVec parse_qvec(const std::string& text) {
    QVec out;
    for (const auto& part : split(text, ',')) out.push_back(parse_rational(part));
    return out;
}

SimpleType resolve_type(const Options& o) {
    if (o.type.empty()) throw Error(ErrorCode::InvalidInput, "--type is required (e.g. --type A --rank 2 or --type A2)");
    if (o.type.size() > 1) {
        const SimpleType t = SimpleType::parse(o.type);
        if (o.rank != 0 && o.rank != t.rank) throw Error(ErrorCode::InvalidInput, "--rank disagrees with --type " + o.type);
        return t;
    }
    if (o.rank <= 0) throw Error(ErrorCode::InvalidInput, "--rank is required with a bare family letter");
    return SimpleType{parse_family(o.type.front()), o.rank};
}

WeightVec resolve_lambda(const RootSystem& rs, const std::string& text) {
    const IVec lam = parse_ints(text);
    if (lam.size() != static_cast<std::size_t>(rs.rank())) {
        throw Error(ErrorCode::InvalidInput, "--lambda needs " + std::to_string(rs.rank()) + " simple-root coordinates");
    }
    return WeightVec::from_ints(lam);
}

const std::string& single_lambda(const Options& o) {
    if (o.lambdas.size() != 1) throw Error(ErrorCode::InvalidInput, "--lambda a,b,... is required exactly once");
    return o.lambdas.front();
}

std::string ints_text(const IVec& v) {
    std::vector<std::string> parts;
    for (auto x : v) parts.push_back(std::to_string(x));
    return "(" + join(parts, ",") + ")";
}

std::string rationals_text(const QVec& v) {
    std::vector<std::string> parts;
    for (const auto& x : v) parts.push_back(x.get_str());
    return "(" + join(parts, ",") + ")";
}

std::string doubles_text(const DVec& v) {
    std::vector<std::string> parts;
    for (double x : v) {
        std::ostringstream s;
        s.precision(12);
        s << x;
        parts.push_back(s.str());
    }
    return "(" + join(parts, ",") + ")";
}

// A report carries the JSON payload and its table rendering.
struct Report {
    ordered_json json;
    std::vector<std::string> lines;
};

Report roots_report(const Options& o) {
    const RootSystem rs = RootSystem::build(resolve_type(o));
    ordered_json positive = ordered_json::array();
    Report r;
    r.lines.push_back("type " + rs.type().name() + "  roots " + std::to_string(rs.root_count()));
    for (const auto& a : rs.positive_roots()) {
        positive.push_back(int_array(a));
        r.lines.push_back("  +" + ints_text(a) + (rs.is_long(a) || rs.simply_laced() ? "  long" : "  short"));
    }
    r.lines.push_back("mu1 (highest short) " + ints_text(rs.mu1()));
    r.lines.push_back("mu2 (highest long)  " + ints_text(rs.mu2()));
    r.json["type"] = rs.type().name();
    r.json["rank"] = rs.rank();
    r.json["root_count"] = rs.root_count();
    r.json["positive_roots"] = positive;
    r.json["mu1"] = int_array(rs.mu1());
    r.json["mu2"] = int_array(rs.mu2());
    r.json["simply_laced"] = rs.simply_laced();
    return r;
}

Report classify_report(const Options& o) {
    const RootSystem rs = RootSystem::build(resolve_type(o));
    if (o.bound < 1) throw Error(ErrorCode::InvalidInput, "--bound must be at least 1");
    const auto candidates = enumerate_dominant_zero_weight(rs, o.bound);
    ordered_json rows = ordered_json::array();
    ordered_json disagreements = ordered_json::array();
    Report r;
    r.lines.push_back("type " + rs.type().name() + "  bound " + std::to_string(o.bound) + "  candidates " + std::to_string(candidates.size()));
    for (const auto& lam : candidates) {
        const auto v = in_L_prime(rs, lam);
        const auto row = tabulated_Lprime_row(rs.type(), lam.to_ints());
        if (v.in_Lprime != row.has_value()) {
            disagreements.push_back({{"lambda", int_array(lam.to_ints())}, {"oracle_in_Lprime", v.in_Lprime}, {"table_row", row ? ordered_json(*row) : ordered_json(nullptr)}});
        }
        if (!v.in_Lprime) continue;
        rows.push_back({{"lambda", int_array(lam.to_ints())},
                        {"reason", reason_name(v.reason)},
                        {"witness", optional_ints(v.witness)},
                        {"table_row", row ? ordered_json(*row) : ordered_json(nullptr)}});
        r.lines.push_back("  " + ints_text(lam.to_ints()) + "  " + reason_name(v.reason) + (v.witness ? "  witness " + ints_text(*v.witness) : "") +
                          "  table " + (row ? *row : std::string("-")));
    }
    r.lines.push_back("L' rows " + std::to_string(rows.size()) + "  disagreements with the table " + std::to_string(disagreements.size()));
    r.json["type"] = rs.type().name();
    r.json["bound"] = o.bound;
    r.json["candidates"] = candidates.size();
    r.json["Lprime"] = rows;
    r.json["disagreements"] = disagreements;
    return r;
}

Report multiplicity_report(const Options& o) {
    const RootSystem rs = RootSystem::build(resolve_type(o));
    const WeightVec lam = resolve_lambda(rs, single_lambda(o));
    const WeightDiagram diagram(rs, lam);
    const mpz_class dim = weyl_dimension(rs, lam);
    ordered_json dominant = ordered_json::array();
    Report r;
    r.lines.push_back("type " + rs.type().name() + "  lambda " + ints_text(lam.to_ints()) + "  dimension " + dim.get_str());
    std::int64_t total = 0;
    for (const auto& e : diagram.dominant()) {
        const std::size_t orbit = orbit_size(rs, e.labels);
        total += e.mult * static_cast<std::int64_t>(orbit);
        dominant.push_back({{"weight", rational_vector_json(e.weight.coords)}, {"labels", int_array(e.labels)}, {"multiplicity", e.mult}, {"orbit_size", orbit}});
        r.lines.push_back("  " + rationals_text(e.weight.coords) + "  labels " + ints_text(e.labels) + "  mult " + std::to_string(e.mult) + "  orbit " +
                          std::to_string(orbit));
    }
    r.lines.push_back("sum of multiplicities " + std::to_string(total));
    r.json["type"] = rs.type().name();
    r.json["lambda"] = int_array(lam.to_ints());
    r.json["labels"] = rational_vector_json(rs.to_fundamental(lam));
    r.json["dimension"] = dim.get_str();
    r.json["dominant_weights"] = dominant;
    r.json["total_multiplicity"] = total;
    return r;
}

Report admissible_report(const Options& o) {
    const RootSystem rs = RootSystem::build(resolve_type(o));
    if (o.lambdas.empty()) throw Error(ErrorCode::InvalidInput, "--lambda a,b,... is required at least once");
    IdealWeights ideal{rs.type(), {}};
    for (const auto& text : o.lambdas) ideal.highest_weights.push_back(resolve_lambda(rs, text));
    const auto report = is_admissible({ideal});
    ordered_json weights = ordered_json::array();
    Report r;
    r.lines.push_back("type " + rs.type().name() + "  admissible " + (report.admissible ? "yes" : "no"));
    for (const auto& v : report.ideals.front().verdicts) {
        weights.push_back({{"lambda", int_array(v.lam.to_ints())}, {"in_Lprime", v.in_Lprime}, {"reason", reason_name(v.reason)}, {"witness", optional_ints(v.witness)}});
        r.lines.push_back("  " + ints_text(v.lam.to_ints()) + "  " + reason_name(v.reason) + (v.witness ? "  witness " + ints_text(*v.witness) : ""));
    }
    r.json["type"] = rs.type().name();
    r.json["admissible"] = report.admissible;
    r.json["weights"] = weights;
    return r;
}

Report build_report(const Options& o) {
    const SimpleType t = resolve_type(o);
    const RootSystem rs = RootSystem::build(t);
    ModelFile m{t, resolve_lambda(rs, single_lambda(o)), {}, 1, std::nullopt};
    m.model = build_model(rs, m.lam);
    m.xi = default_init(m.model);
    Report r;
    if (o.model.empty()) {
        r.json = model_to_json(m);
        r.lines.push_back(r.json.dump(2));
        return r;
    }
    save_model(m, o.model);
    r.json["type"] = t.name();
    r.json["lambda"] = int_array(m.lam.to_ints());
    r.json["u_dim"] = m.model.u_dim();
    r.json["z_dim"] = m.model.z_dim();
    r.json["real_case"] = m.model.u.real_case == RealCase::Real ? "real" : "realified";
    r.json["default_xi"] = m.xi.has_value();
    r.json["model"] = o.model;
    r.lines.push_back("type " + t.name() + "  lambda " + ints_text(m.lam.to_ints()) + "  dim U " + std::to_string(m.model.u_dim()) + "  dim g0 " +
                      std::to_string(m.model.z_dim()) + "  written to " + o.model);
    return r;
}

struct GeodesicContext {
    ModelFile file;
    GeodesicInit xi;
};

GeodesicContext geodesic_context(const Options& o) {
    if (o.model.empty()) throw Error(ErrorCode::InvalidInput, "--model PATH is required");
    GeodesicContext c{load_model(o.model), {}};
    const MetricNilLie& n = c.file.model;
    c.xi = c.file.xi.value_or(GeodesicInit{QVec(n.u_dim()), 1, QVec(n.z_dim())});
    if (!o.x.empty()) c.xi.x = parse_qvec(o.x);
    if (!o.alpha.empty()) c.xi.alpha = parse_rational(o.alpha);
    if (!o.z.empty()) c.xi.z = parse_qvec(o.z);
    if (c.xi.x.size() != n.u_dim()) throw Error(ErrorCode::InvalidInput, "--x needs " + std::to_string(n.u_dim()) + " entries");
    if (c.xi.z.size() != n.z_dim()) throw Error(ErrorCode::InvalidInput, "--z needs " + std::to_string(n.z_dim()) + " entries");
    return c;
}

Report spectrum_report(const Options& o) {
    const auto c = geodesic_context(o);
    const auto s = j_spectrum(c.file.model, c.xi.z);
    ordered_json pairs = ordered_json::array();
    Report r;
    r.lines.push_back("Z " + rationals_text(c.xi.z) + "  kernel " + std::to_string(s.kernel_dim) + (s.exact ? "  exact" : "  numeric"));
    for (const auto& p : s.pairs) {
        pairs.push_back({{"a", p.a}, {"a_sq", p.a_sq ? ordered_json(to_string(*p.a_sq)) : ordered_json(nullptr)}, {"multiplicity", p.multiplicity}});
        r.lines.push_back("  +-i " + doubles_text({p.a}) + (p.a_sq ? "  a^2 " + p.a_sq->get_str() : "") + "  mult " + std::to_string(p.multiplicity));
    }
    r.json["z"] = rational_vector_json(c.xi.z);
    r.json["exact"] = s.exact;
    r.json["kernel_dim"] = s.kernel_dim;
    r.json["pairs"] = pairs;
    return r;
}

Report resonate_report(const Options& o) {
    const auto c = geodesic_context(o);
    const MetricNilLie& n = c.file.model;
    const auto omega = is_resonant(n, c.xi.z);
    const bool super_regular = is_super_regular(n, c.xi.z);
    ordered_json over_2pi = nullptr;
    if (omega && exact_spectrum(n, c.xi.z)) {
        const ResonantCenter rc(n, c.xi.z);
        over_2pi = to_string(rc.period(1).sq);
    }
    Report r;
    r.json["z"] = rational_vector_json(c.xi.z);
    r.json["resonant"] = omega.has_value();
    r.json["omega"] = omega ? ordered_json(*omega) : ordered_json(nullptr);
    r.json["omega_over_2pi_sq"] = over_2pi;
    r.json["super_regular"] = super_regular;
    r.lines.push_back("Z " + rationals_text(c.xi.z) + "  resonant " + (omega ? "yes  omega " + doubles_text({*omega}) : std::string("no")) +
                      "  super regular " + (super_regular ? "yes" : "no"));
    return r;
}

Report firsthit_report(const Options& o) {
    const auto c = geodesic_context(o);
    const MetricNilLie& n = c.file.model;
    const auto f = first_hit(n, c.xi);
    const QVec u(f.coeff.begin(), f.coeff.begin() + static_cast<std::ptrdiff_t>(n.u_dim()));
    const QVec z(f.coeff.begin() + static_cast<std::ptrdiff_t>(n.u_dim()), f.coeff.end());
    const auto over = f.omega.over_2pi();
    Report r;
    r.json["omega"] = f.omega.value();
    r.json["omega_over_2pi_sq"] = to_string(f.omega.sq);
    r.json["omega_over_2pi"] = over ? ordered_json(to_string(*over)) : ordered_json(nullptr);
    r.json["coeff"] = {{"u", rational_vector_json(u)}, {"z", rational_vector_json(z)}};
    r.json["value"] = double_array(f.value());
    r.lines.push_back("omega " + doubles_text({f.omega.value()}) + "  (omega/2pi)^2 " + f.omega.sq.get_str());
    r.lines.push_back("coeff U  " + rationals_text(u));
    r.lines.push_back("coeff g0 " + rationals_text(z));
    return r;
}

Report rank_report(const Options& o) {
    const auto c = geodesic_context(o);
    const ResonantCenter rc(c.file.model, c.xi.z);
    const auto rank = rank_at(rc, c.xi);
    const bool generic = in_NZ_star(rc, c.xi);
    Report r;
    r.json["rank"] = rank.rank;
    r.json["target_dim"] = rank.target_dim;
    r.json["maximal"] = rank.maximal;
    r.json["kernel_dim"] = rc.spectrum().kernel.size();
    r.json["in_NZ_star"] = generic;
    r.lines.push_back("rank " + std::to_string(rank.rank) + " of " + std::to_string(rank.target_dim) + (rank.maximal ? "  maximal" : "  deficient") +
                      "  in NZ* " + (generic ? "yes" : "no"));
    return r;
}

Report certify_report(const Options& o) {
    const auto c = geodesic_context(o);
    const MetricNilLie& n = c.file.model;
    const Lattice gamma(n, c.file.lattice_scale);
    CertifyOptions opts;
    opts.seed = o.seed;
    opts.budget = o.budget;
    opts.max_m = o.max_m;
    const auto cert = certify_closed(n, gamma, c.xi, opts);
    Report r;
    r.json["m"] = cert.m;
    r.json["omega"] = cert.omega.value();
    r.json["omega_over_2pi_sq"] = to_string(cert.omega.sq);
    r.json["alpha"] = to_string(cert.alpha);
    r.json["z"] = rational_vector_json(cert.z);
    r.json["x"] = double_array(cert.x);
    r.json["phi_log_coords"] = {{"u", rational_vector_json(cert.phi.u)}, {"z", rational_vector_json(cert.phi.z)}};
    r.json["lattice_scale"] = to_string(c.file.lattice_scale);
    r.json["residuals"] = {{"hit", cert.hit_residual}, {"translation", cert.translation_residual}};
    r.json["rotation_exact"] = cert.rotation_exact;
    r.json["evaluations"] = cert.evaluations;
    r.lines.push_back("certificate m " + std::to_string(cert.m) + "  omega " + doubles_text({cert.omega.value()}) + "  evaluations " +
                      std::to_string(cert.evaluations));
    r.lines.push_back("phi U  " + rationals_text(cert.phi.u));
    r.lines.push_back("phi g0 " + rationals_text(cert.phi.z));
    r.lines.push_back("residuals hit " + doubles_text({cert.hit_residual}) + "  translation " + doubles_text({cert.translation_residual}) +
                      "  rotation exact " + (cert.rotation_exact ? "yes" : "no"));
    return r;
}

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::BudgetExhausted:
        case ErrorCode::OrbitBudgetExceeded:
        case ErrorCode::DimensionCapExceeded: return exit_budget;
        default: return exit_invalid;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Lie-theoretic classification and closed geodesics on 2-step nilpotent groups", "nilgeo"};
    app.require_subcommand(1);
    Options o;
    std::function<Report(const Options&)> action;

    auto format_flag = [&](CLI::App* sub) { sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"})); };
    auto type_flags = [&](CLI::App* sub) {
        sub->add_option("--type", o.type, "Family letter or full type, e.g. A or G2")->required();
        sub->add_option("--rank", o.rank, "Rank when --type is a bare family letter");
    };
    auto lambda_flag = [&](CLI::App* sub, bool repeat) {
        auto* opt = sub->add_option("--lambda", o.lambdas, "Highest weight in simple-root coordinates, a,b,...")->required();
        if (!repeat) opt->expected(1);
    };
    auto on = [&](CLI::App* sub, Report (*fn)(const Options&)) { sub->callback([&action, fn] { action = fn; }); };

    auto* roots = app.add_subcommand("roots", "Positive roots and the highest short and long roots");
    type_flags(roots);
    format_flag(roots);
    on(roots, roots_report);

    auto* classify = app.add_subcommand("classify", "Dominant zero-weight highest weights in L' up to a coordinate bound");
    type_flags(classify);
    classify->add_option("--bound", o.bound, "Largest simple-root coordinate");
    format_flag(classify);
    on(classify, classify_report);

    auto* mult = app.add_subcommand("multiplicity", "Dominant weights and multiplicities of an irreducible module");
    type_flags(mult);
    lambda_flag(mult, false);
    format_flag(mult);
    on(mult, multiplicity_report);

    auto* admissible = app.add_subcommand("admissible", "Admissibility of a family of highest weights of one simple ideal");
    type_flags(admissible);
    lambda_flag(admissible, true);
    format_flag(admissible);
    on(admissible, admissible_report);

    auto* build = app.add_subcommand("build", "Build the nilpotent model N = U + g0 and write it as JSON");
    type_flags(build);
    lambda_flag(build, false);
    build->add_option("--model", o.model, "Output path; the model JSON goes to stdout when omitted");
    format_flag(build);
    on(build, build_report);

    auto* geodesic = app.add_subcommand("geodesic", "Geodesic computations on a model file");
    geodesic->require_subcommand(1);
    auto geo = [&](const char* name, const char* help, Report (*fn)(const Options&)) {
        auto* sub = geodesic->add_subcommand(name, help);
        sub->add_option("--model", o.model, "Model JSON written by build")->required();
        sub->add_option("--x", o.x, "U part of xi as p/q,p/q,...");
        sub->add_option("--alpha", o.alpha, "Scalar alpha as p/q");
        sub->add_option("--z", o.z, "Center vector Z as p/q,p/q,...");
        format_flag(sub);
        on(sub, fn);
        return sub;
    };
    geo("spectrum", "Eigenvalues of j(Z)", spectrum_report);
    geo("resonate", "Resonance period and super regularity of Z", resonate_report);
    geo("firsthit", "Exact first hit map F_Z(xi)", firsthit_report);
    geo("rank", "Rank of dF_Z at xi", rank_report);
    auto* certify = geo("certify", "Search for a closed geodesic certificate", certify_report);
    certify->add_option("--seed", o.seed, "Seed of the restart generator");
    certify->add_option("--budget", o.budget, "First hit evaluations allowed")->check(CLI::PositiveNumber);
    certify->add_option("--max-m", o.max_m, "Largest multiple of the period tried")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return exit_invalid;
    }

    try {
        const Report report = action(o);
        if (o.format == "table") {
            for (const auto& line : report.lines) out << line << '\n';
        } else {
            out << report.json.dump(2) << '\n';
        }
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }
}

}  // namespace nilgeo::cli
