// wdam: weighted Diophantine approximation toolkit, command-line front door.
//
// Exit codes: 0 success, 1 validation/user error, 2 internal invariant
// violation (a guarantee the computation relies on failed to re-verify).
#include <CLI11.hpp>

#include "wdam/bounds.hpp"
#include "wdam/config.hpp"
#include "wdam/dirichlet.hpp"
#include "wdam/limsup.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace wdam;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kProvenance =
    "all inequalities decided in exact rational arithmetic; irrational powers "
    "compared by raising both sides to the lcm of exponent denominators";

struct InternalInvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw ParseError("empty rational list: '" + text + "'");
    return out;
}

std::string join_fractions(const std::vector<Rat>& v, char sep = ':') {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += to_fraction_string(v[i]);
    }
    return out;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open output file: " + out_path);
    out << text;
}

json wrap_report(json echoed_config, json results) {
    return json{{"tool", std::string("wdam ") + kVersion},
                {"config", std::move(echoed_config)},
                {"results", std::move(results)},
                {"provenance", kProvenance}};
}

json weights_json(const WeightVector& w) {
    json taus = json::array();
    for (unsigned k = 1; k <= w.d + w.m; ++k) taus.push_back(to_fraction_string(w.tau(k)));
    return json{{"d", w.d}, {"m", w.m}, {"taus", taus}};
}

json selection_json(const ExponentSelection& s) {
    json out;
    switch (s.case_tag) {
        case CaseTag::Case1: out["case"] = "Case1"; break;
        case CaseTag::Case2:
            out["case"] = "Case2";
            out["K"] = s.K;
            break;
        case CaseTag::TrivialRegime: out["case"] = "TrivialRegime"; break;
    }
    if (!s.trivial()) {
        json a = json::array(), t = json::array();
        for (const Rat& v : s.a) a.push_back(rational_json(v));
        for (const Rat& v : s.t) t.push_back(rational_json(v));
        out["a"] = a;
        out["t"] = t;
        out["quotient"] = rational_json(s.quotient);
    }
    return out;
}

json bound_report_json(const WeightVector& w) {
    BoundReport r = full_report(w);
    json per = json::array();
    for (const Rat& v : r.per_index_values) per.push_back(rational_json(v));
    json out{{"per_index_values", per},
             {"theorem_min", rational_json(r.theorem_min)},
             {"effective_bound", rational_json(r.effective_bound)},
             {"mtp_min", rational_json(r.mtp_min)},
             {"trivial_regime", r.trivial_regime},
             {"blw_condition_holds", r.blw_condition_holds},
             {"improvement_flag", r.improvement_flag},
             {"selection", selection_json(r.selection)}};
    if (r.mtp_argmin_level) out["mtp_argmin_level"] = rational_json(*r.mtp_argmin_level);
    return out;
}

// Rational lower bound on (rhs - lhs) for a strict inequality lhs < rhs whose
// right side is a power product; certifies positivity whenever it is positive.
Rat slack_lower_bound(const PowerProduct& rhs, const Rat& lhs) {
    return rhs.lower_bound() - lhs;
}

std::vector<Rat> witness_exponents(const ProblemConfig& cfg, const std::string& a_flag) {
    if (!a_flag.empty()) return parse_rat_list(a_flag);
    ExponentSelection s = select_exponents(cfg.weights);
    if (s.trivial())
        throw ValidationError(
            "total weight sum <= 1: no exponents with min a_i > 1 exist; pass --a "
            "explicitly");
    return s.a;
}

std::string dirichlet_csv(const ManifoldSpec& spec, const WeightVector& w,
                          const std::vector<Rat>& x, const std::vector<Rat>& a,
                          const Int& Q, bool one_shot,
                          const std::vector<DirichletWitness>& wits) {
    std::ostringstream out;
    out << "q";
    unsigned n = spec.d + spec.m;
    for (unsigned i = 1; i <= n; ++i) out << ",p" << i;
    for (unsigned i = 1; i <= spec.d; ++i) out << ",lhs" << i << ",slack_lb" << i;
    for (unsigned j = 1; j <= spec.m; ++j)
        out << ",f_lhs" << j << ",f_slack_lb" << j;
    out << "\n";
    Rat m_over_d(spec.m, spec.d);
    m_over_d.canonicalize();
    for (const auto& wit : wits) {
        out << wit.q.get_str();
        for (const Int& p : wit.p) out << "," << p.get_str();
        std::vector<Rat> point;
        for (unsigned i = 0; i < spec.d; ++i) {
            Rat c(wit.p[i], wit.q);
            c.canonicalize();
            point.push_back(c);
        }
        for (unsigned i = 0; i < spec.d; ++i) {
            Rat lhs = abs(x[i] - point[i]);
            PowerProduct rhs = PowerProduct::of(Rat(4), m_over_d);
            if (one_shot) {
                rhs.mul(Rat(wit.q), Rat(-1));
                rhs.mul(Rat(Q), -(a[i] - 1));
            } else {
                rhs.mul(Rat(wit.q), -a[i]);
            }
            out << "," << to_fraction_string(lhs) << ","
                << to_fraction_string(slack_lower_bound(rhs, lhs));
        }
        std::vector<Rat> fx = eval_f(spec, point);
        for (unsigned j = 0; j < spec.m; ++j) {
            Rat lhs = abs(fx[j] - Rat(wit.p[spec.d + j], wit.q));
            lhs.canonicalize();
            PowerProduct rhs = PowerProduct::of(Rat(1, 2), Rat(1));
            rhs.mul(Rat(wit.q), -(w.tau(spec.d + j + 1) + 1));
            out << "," << to_fraction_string(lhs) << ","
                << to_fraction_string(slack_lower_bound(rhs, lhs));
        }
        out << "\n";
    }
    return out.str();
}

const ManifoldSpec& require_manifold(const ProblemConfig& cfg) {
    if (!cfg.manifold)
        throw ValidationError("this subcommand needs a config with domain and components");
    return *cfg.manifold;
}

RectangleFamily build_family(const ProblemConfig& cfg, const std::string& kind,
                             const WitnessSet& ws) {
    const ManifoldSpec& spec = require_manifold(cfg);
    if (kind == "dirichlet") {
        ExponentSelection s = select_exponents(cfg.weights);
        if (s.trivial())
            throw ValidationError("total weight sum <= 1: no Dirichlet exponents exist");
        return make_dirichlet_family(spec, s.a, ws);
    }
    CPrimeCertificate cert =
        choose_c_prime(derivative_bounds(spec), spec.d, cfg.weights.tau(spec.d));
    return make_target_family(spec, cfg.weights, cert.c_prime, ws);
}

int run(int argc, char** argv) {
    CLI::App app{"weighted Diophantine approximation on polynomial manifolds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("wdam ") + kVersion);

    std::string config_path, out_path, x_flag, a_flag, t_flag, taus_flag;
    std::string family_kind = "dirichlet", deltas_flag, template_flag;
    std::string from_flag, to_flag, step_flag, Q_flag = "1000", delta_flag = "1/100";
    unsigned d_flag = 0, m_flag = 0;

    auto add_config = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--config", config_path, "problem config (JSON)");
        if (required) opt->required();
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    auto* bound = app.add_subcommand("bound", "Hausdorff-dimension lower bound report");
    add_config(bound);
    add_out(bound);

    auto* exponents = app.add_subcommand("exponents", "mass-transference exponent choice");
    add_config(exponents, false);
    exponents->add_option("--taus", taus_flag, "weights as a comma list (with --d, --m)");
    exponents->add_option("--d", d_flag, "manifold dimension");
    exponents->add_option("--m", m_flag, "codimension");
    add_out(exponents);

    auto* mtp = app.add_subcommand("mtp", "dimension-number minimum for explicit (a, t)");
    mtp->add_option("--a", a_flag, "side exponents, comma list")->required();
    mtp->add_option("--t", t_flag, "shrink exponents, comma list")->required();
    add_out(mtp);

    auto* dirichlet = app.add_subcommand("dirichlet", "witness search and certificates");
    dirichlet->require_subcommand(1);
    auto* dfind = dirichlet->add_subcommand("find", "one-shot witness at horizon Q");
    auto* dq0 = dirichlet->add_subcommand("q0", "horizon certificate for a point");
    auto* dcert = dirichlet->add_subcommand("certify", "Minkowski-system certificates");
    for (CLI::App* cmd : {dfind, dq0, dcert}) {
        add_config(cmd);
        cmd->add_option("--x", x_flag, "rational point, comma list")->required();
        cmd->add_option("--a", a_flag, "override the selected exponents");
        add_out(cmd);
    }
    dfind->add_option("--Q", Q_flag, "Dirichlet horizon");
    dcert->add_option("--Q", Q_flag, "horizon used for the product certificate");

    auto* witnesses = app.add_subcommand("witnesses", "witness set scan up to q <= Q");
    add_config(witnesses);
    witnesses->add_option("--Q", Q_flag, "scan horizon");
    add_out(witnesses);

    auto* coverage = app.add_subcommand("coverage", "grid coverage of a rectangle family");
    add_config(coverage);
    coverage->add_option("--Q", Q_flag, "witness-set horizon");
    coverage->add_option("--delta", delta_flag, "grid step (must divide the box sides)");
    coverage->add_option("--family", family_kind, "dirichlet | target");
    add_out(coverage);

    auto* boxdim = app.add_subcommand("boxdim", "box-count ladder and heuristic slope");
    add_config(boxdim);
    boxdim->add_option("--Q", Q_flag, "witness-set horizon");
    boxdim->add_option("--deltas", deltas_flag, "comma list of grid steps")->required();
    boxdim->add_option("--family", family_kind, "dirichlet | target");
    add_out(boxdim);

    auto* sweep = app.add_subcommand("sweep", "1-parameter weight sweep table");
    sweep->add_option("--template", template_flag,
                      "weights with one slot 's', e.g. s,1/5,1/5")
        ->required();
    sweep->add_option("--d", d_flag, "manifold dimension")->required();
    sweep->add_option("--m", m_flag, "codimension")->required();
    sweep->add_option("--from", from_flag, "first value of s")->required();
    sweep->add_option("--to", to_flag, "last value of s (inclusive)")->required();
    sweep->add_option("--step", step_flag, "increment of s")->required();
    add_out(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // normalize CLI11's exit codes: 0 for --help/--version, 1 otherwise
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (bound->parsed()) {
        ProblemConfig cfg = load_problem_file(config_path);
        json report = wrap_report(weights_json(cfg.weights), bound_report_json(cfg.weights));
        write_text(out_path, report.dump(2) + "\n");
        return 0;
    }

    if (exponents->parsed()) {
        WeightVector w = [&] {
            if (!config_path.empty()) return load_problem_file(config_path).weights;
            if (taus_flag.empty() || d_flag == 0)
                throw ValidationError("pass --config or all of --taus/--d/--m");
            return validate_weights(parse_rat_list(taus_flag), d_flag, m_flag);
        }();
        json report = wrap_report(weights_json(w), selection_json(select_exponents(w)));
        write_text(out_path, report.dump(2) + "\n");
        return 0;
    }

    if (mtp->parsed()) {
        ExponentPair ep = ExponentPair::make(parse_rat_list(a_flag), parse_rat_list(t_flag));
        MtpBound b = mtp_lower_bound(ep);
        json levels = json::array();
        for (const Rat& A : candidate_levels(ep)) {
            levels.push_back(json{{"level", rational_json(A)},
                                  {"dimension_number", rational_json(dimension_number(ep, A))}});
        }
        json report = wrap_report(
            json{{"a", json::parse("[]")}, {"t", json::parse("[]")}},
            json{{"value", rational_json(b.value)},
                 {"argmin_level", rational_json(b.argmin_level)},
                 {"levels", levels}});
        report["config"]["a"] = a_flag;
        report["config"]["t"] = t_flag;
        write_text(out_path, report.dump(2) + "\n");
        return 0;
    }

    if (dirichlet->parsed()) {
        ProblemConfig cfg = load_problem_file(config_path);
        const ManifoldSpec& spec = require_manifold(cfg);
        std::vector<Rat> x = parse_rat_list(x_flag);
        std::vector<Rat> a = witness_exponents(cfg, a_flag);

        if (dq0->parsed()) {
            QSetCertificate cert = q0_bound(spec, x, a);
            json report = wrap_report(
                json{{"x", join_fractions(x, ',')}, {"a", join_fractions(a, ',')}},
                json{{"Q0", cert.Q0.get_str()},
                     {"r", rational_json(cert.r)},
                     {"threshold_sq", rational_json(cert.threshold_sq)}});
            write_text(out_path, report.dump(2) + "\n");
            return 0;
        }

        if (dfind->parsed()) {
            Int Q(parse_rational(Q_flag).get_num());
            auto wit = find_witness(spec, x, cfg.weights, a, Q);
            if (!wit) {
                QSetCertificate cert = q0_bound(spec, x, a);
                if (Q > cert.Q0)
                    throw InternalInvariantViolation(
                        "no witness at Q=" + Q.get_str() + " > Q0=" + cert.Q0.get_str() +
                        ": the existence guarantee failed to re-verify");
                write_text(out_path, "status\nnot_found_below_Q0\n");
                return 0;
            }
            if (!verify_witness(spec, x, cfg.weights, a, Q, *wit))
                throw InternalInvariantViolation("witness failed independent re-check");
            write_text(out_path, dirichlet_csv(spec, cfg.weights, x, a, Q, true, {*wit}));
            return 0;
        }

        // certify
        Int Q(parse_rational(Q_flag).get_num());
        SymbolicPower prod = minkowski_product(cfg.weights, a, Q);
        Int det = minkowski_matrix_det(spec, x);  // throws if |det| != 1
        QSetCertificate cert = q0_bound(spec, x, a);
        json prod_json{{"base", prod.base.get_str()},
                       {"exponent", to_fraction_string(prod.exponent)},
                       {"is_one", prod.is_one()}};
        if (auto v = prod.as_rational()) prod_json["value"] = rational_json(*v);
        json report = wrap_report(
            json{{"x", join_fractions(x, ',')},
                 {"a", join_fractions(a, ',')},
                 {"Q", Q.get_str()}},
            json{{"minkowski_product", prod_json},
                 {"matrix_det", det.get_str()},
                 {"Q0", cert.Q0.get_str()},
                 {"r", rational_json(cert.r)},
                 {"threshold_sq", rational_json(cert.threshold_sq)}});
        write_text(out_path, report.dump(2) + "\n");
        return 0;
    }

    if (witnesses->parsed()) {
        ProblemConfig cfg = load_problem_file(config_path);
        const ManifoldSpec& spec = require_manifold(cfg);
        Int Q(parse_rational(Q_flag).get_num());
        WitnessSet ws = build_witness_set(spec, cfg.weights, Q);
        std::ostringstream out;
        out << "q";
        for (unsigned i = 1; i <= spec.d; ++i) out << ",p" << i;
        for (unsigned j = 1; j <= spec.m; ++j) out << ",dist" << j << ",slack_lb" << j;
        out << "\n";
        for (const auto& e : ws.entries) {
            out << e.q.get_str();
            std::vector<Rat> point;
            for (unsigned i = 0; i < spec.d; ++i) {
                out << "," << e.p[i].get_str();
                Rat c(e.p[i], e.q);
                c.canonicalize();
                point.push_back(c);
            }
            std::vector<Rat> fx = eval_f(spec, point);
            for (unsigned j = 0; j < spec.m; ++j) {
                Rat dist = nearest_integer_distance(Rat(e.q) * fx[j]);
                PowerProduct bound = PowerProduct::of(Rat(1, 2), Rat(1));
                bound.mul(Rat(e.q), -cfg.weights.tau(spec.d + j + 1));
                out << "," << to_fraction_string(dist) << ","
                    << to_fraction_string(slack_lower_bound(bound, dist));
            }
            out << "\n";
        }
        write_text(out_path, out.str());
        return 0;
    }

    if (coverage->parsed()) {
        ProblemConfig cfg = load_problem_file(config_path);
        const ManifoldSpec& spec = require_manifold(cfg);
        Int Q(parse_rational(Q_flag).get_num());
        WitnessSet ws = build_witness_set(spec, cfg.weights, Q);
        RectangleFamily fam = build_family(cfg, family_kind, ws);
        Rat delta = parse_rational(delta_flag);
        CoverageReport rep = coverage_fraction(fam, delta, ws.horizon);
        std::ostringstream out;
        out << "delta,horizon,fraction_exact,fraction_approx\n";
        out << to_fraction_string(rep.delta) << "," << rep.horizon.get_str() << ","
            << to_fraction_string(rep.fraction) << "," << to_decimal_string(rep.fraction)
            << "\n";
        write_text(out_path, out.str());
        return 0;
    }

    if (boxdim->parsed()) {
        ProblemConfig cfg = load_problem_file(config_path);
        const ManifoldSpec& spec = require_manifold(cfg);
        Int Q(parse_rational(Q_flag).get_num());
        WitnessSet ws = build_witness_set(spec, cfg.weights, Q);
        RectangleFamily fam = build_family(cfg, family_kind, ws);
        std::vector<std::pair<Rat, std::uint64_t>> counts;
        std::ostringstream out;
        out << "delta,count\n";
        for (const Rat& delta : parse_rat_list(deltas_flag)) {
            std::uint64_t n = box_count(fam, delta);
            counts.emplace_back(delta, n);
            out << to_fraction_string(delta) << "," << n << "\n";
        }
        write_text(out_path, out.str());
        if (counts.size() >= 3) {
            DimensionEstimate est = dimension_estimate(counts);
            json summary{{"slope", est.slope},
                         {"residual_norm", est.residual_norm},
                         {"caveat", DimensionEstimate::kCaveat}};
            std::cerr << summary.dump() << "\n";
        }
        return 0;
    }

    if (sweep->parsed()) {
        std::vector<std::string> slots;
        {
            std::stringstream ss(template_flag);
            std::string item;
            while (std::getline(ss, item, ',')) slots.push_back(item);
        }
        size_t var = slots.size();
        for (size_t i = 0; i < slots.size(); ++i)
            if (slots[i] == "s") var = i;
        if (var == slots.size())
            throw ValidationError("template needs exactly one 's' slot");
        Rat from = parse_rational(from_flag), to = parse_rational(to_flag);
        Rat step = parse_rational(step_flag);
        if (step <= 0) throw ValidationError("--step must be positive");

        std::ostringstream out;
        out << "taus,theorem_min,effective_bound,blw_condition_holds,improvement_flag,"
               "status\n";
        for (Rat s = from; s <= to; s += step) {
            std::vector<Rat> taus;
            for (size_t i = 0; i < slots.size(); ++i)
                taus.push_back(i == var ? s : parse_rational(slots[i]));
            out << join_fractions(taus);
            try {
                WeightVector w = validate_weights(taus, d_flag, m_flag);
                BoundReport r = full_report(w);
                out << "," << to_fraction_string(r.theorem_min) << ","
                    << to_fraction_string(r.effective_bound) << ","
                    << (r.blw_condition_holds ? "true" : "false") << ","
                    << (r.improvement_flag ? "true" : "false") << ",ok\n";
            } catch (const ValidationError& err) {
                out << ",,,,,invalid: " << err.what() << "\n";
            }
        }
        write_text(out_path, out.str());
        return 0;
    }

    return 1;  // unreachable: require_subcommand enforces dispatch
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InternalInvariantViolation& e) {
        std::cerr << "{\"error\":\"internal_invariant_violation\",\"detail\":\""
                  << e.what() << "\"}\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "{\"error\":\"internal_invariant_violation\",\"detail\":\""
                  << e.what() << "\"}\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"validation\",\"detail\":\"" << e.what() << "\"}\n";
        return 1;
    }
}
