#include "sharpquad/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json_detail.hpp"

#include "sharpquad/holder.hpp"
#include "sharpquad/multivariate.hpp"
#include "sharpquad/serialization.hpp"

namespace sharpquad::cli {

namespace {

struct HelpRequested {
    std::string text;
};

double parse_extended_real(const std::string& s, const char* key) {
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity")
        return std::numeric_limits<double>::infinity();
    try {
        return std::stod(s);
    } catch (...) {
        throw std::invalid_argument(std::string(key) + ": expected a number or \"inf\", got '" +
                                    s + "'");
    }
}

const std::vector<std::string> kCommands = {"kernel", "bound", "holder",
                                            "cube",   "ball-bv", "verify"};

bool known_command(const std::string& c) {
    for (const auto& k : kCommands)
        if (k == c) return true;
    return false;
}

} // namespace

void RunConfig::validate() const {
    if (!known_command(command))
        throw std::invalid_argument("command: expected one of kernel|bound|holder|cube|ball-bv|"
                                    "verify, got '" + command + "'");
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) throw std::invalid_argument(msg);
    };
    if (format != "json" && format != "csv")
        throw std::invalid_argument("--format: expected json or csv, got '" + format + "'");

    bool needs_problem = command == "kernel" || command == "bound" || command == "holder";
    if (needs_problem) {
        require(!p_spec.empty(), "--p: required for " + command);
        require(n >= 1, "--n: must be >= 1");
        if (has_interval)
            require(interval_a < interval_b, "--interval: require a < b");
        bool fixed = node_policy == "fixed";
        bool opt = node_policy == "optimize";
        bool sweep = node_policy == "sweep";
        bool balance = node_policy == "balance";
        require(fixed || opt || sweep || balance,
                "node policy: exactly one of --x, --optimize, --sweep must be given");
        if (command == "kernel")
            require(fixed, "kernel: the node must be fixed with --x");
        if (command == "holder") {
            require(n % 2 == 1, "--n: must be odd for holder (no balanced node exists for "
                                "even n)");
            require(fixed || balance,
                    "holder: node policy must be balance (default) or a fixed --x; "
                    "--optimize/--sweep do not apply");
            require(!omega_spec.empty(), "--omega: required for holder");
        } else {
            require(!balance, "node policy: balance applies only to holder");
        }
        if (command == "bound") {
            require(!q.empty(), "--q: required for bound");
            double qv = parse_extended_real(q, "--q");
            require(qv >= 1.0, "--q: must lie in [1, inf]");
        }
        if (sweep) require(sweep_grid >= 2, "--sweep: grid must be >= 2");
        if (format == "csv")
            require(command == "bound" && sweep,
                    "--format csv: only bound sweeps emit CSV (kernel uses --csv <path>)");
    } else {
        require(node_policy.empty(), "node policy: not applicable to " + command);
    }
    if (command == "cube") {
        require(cube_d >= 2, "--d: dimension must be >= 2");
        require(!cube_q.empty(), "--q: required for cube");
        double qv = parse_extended_real(cube_q, "--q");
        require(qv > cube_d, "--q: must exceed the dimension d (the norm diverges otherwise)");
    }
    if (command == "ball-bv")
        require(ball_v >= 0.0 && std::isfinite(ball_v), "--v: must be a finite value >= 0");
    if (command == "verify") {
        require(suite == "representation" || suite == "moments" || suite == "extremal" ||
                    suite == "audit" || suite == "all",
                "--suite: expected representation|moments|extremal|audit|all, got '" + suite +
                    "'");
        require(trials >= 1, "--trials: must be >= 1");
    }
}

std::string RunConfig::to_json(int indent) const {
    detail::ordered_json j;
    j["command"] = command;
    j["p"] = p_spec;
    j["has_interval"] = has_interval;
    j["interval"] = {interval_a, interval_b};
    j["n"] = n;
    j["q"] = q;
    j["weights"] = weights_spec;
    j["node_policy"] = node_policy;
    j["x"] = node_x;
    j["sweep_grid"] = sweep_grid;
    j["omega"] = omega_spec;
    j["d"] = cube_d;
    j["cube_q"] = cube_q;
    j["v"] = ball_v;
    j["suite"] = suite;
    j["trials"] = trials;
    j["seed"] = seed;
    j["spec"] = verify_spec;
    j["format"] = format;
    j["output"] = output_path;
    j["csv"] = csv_path;
    return detail::dump17(j, indent);
}

RunConfig RunConfig::from_json(const std::string& text) {
    auto j = detail::ordered_json::parse(text);
    RunConfig c;
    c.command = j.value("command", "");
    c.p_spec = j.value("p", "");
    c.has_interval = j.value("has_interval", false);
    if (j.contains("interval")) {
        c.interval_a = j["interval"].at(0).get<double>();
        c.interval_b = j["interval"].at(1).get<double>();
    }
    c.n = j.value("n", 0);
    c.q = j.value("q", "");
    c.weights_spec = j.value("weights", "");
    c.node_policy = j.value("node_policy", "");
    c.node_x = j.value("x", 0.0);
    c.sweep_grid = j.value("sweep_grid", 0);
    c.omega_spec = j.value("omega", "");
    c.cube_d = j.value("d", 0);
    c.cube_q = j.value("cube_q", "");
    c.ball_v = j.value("v", 0.0);
    c.suite = j.value("suite", "");
    c.trials = j.value("trials", 1000);
    c.seed = j.value("seed", std::uint64_t(0));
    c.verify_spec = j.value("spec", "");
    c.format = j.value("format", "json");
    c.output_path = j.value("output", "");
    c.csv_path = j.value("csv", "");
    c.validate();
    return c;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    // Config-file mode bypasses flag parsing entirely.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw std::invalid_argument("--config: expected a file path");
            return RunConfig::from_json(read_text_file(args[i + 1]));
        }
    }

    CLI::App app{"sharp error constants for one-point weighted recovery formulas"};
    app.require_subcommand(0, 1);
    RunConfig c;

    int x_count = 0, opt_count = 0, sweep_count = 0;

    auto add_problem = [&](CLI::App* sub, bool with_weights) {
        sub->add_option("--p", c.p_spec,
                        "integrand weight p: const:c | poly:c0,c1,... | JSON | file");
        auto* iv = sub->add_option("--interval", "domain endpoints a b")->expected(2);
        iv->each([&, iv](const std::string&) {
            auto res = iv->results();
            if (res.size() == 2) {
                c.has_interval = true;
                c.interval_a = std::stod(res[0]);
                c.interval_b = std::stod(res[1]);
            }
        });
        sub->add_option("--n", c.n, "order of the recovery formula");
        if (with_weights)
            sub->add_option("--weights", c.weights_spec,
                            "weight system w_1..w_n: JSON array or file");
        sub->add_option("--output", c.output_path, "write the report here instead of stdout");
    };

    auto* kernel = app.add_subcommand("kernel", "build a kernel chain and emit it as JSON");
    add_problem(kernel, true);
    kernel->add_option("--x", c.node_x, "recovery node")->each([&](const std::string&) {
        ++x_count;
    });
    kernel->add_option("--csv", c.csv_path, "also write 512 (s, r(s)) samples as CSV");

    auto* bound = app.add_subcommand("bound", "sharp constant over a Sobolev/weighted class");
    add_problem(bound, true);
    bound->add_option("--q", c.q, "class exponent: number or inf");
    bound->add_option("--x", c.node_x, "fixed recovery node")->each([&](const std::string&) {
        ++x_count;
    });
    bound->add_flag_callback("--optimize", [&] { ++opt_count; },
                             "minimize the constant over the node");
    bound->add_option("--sweep", c.sweep_grid, "tabulate the constant on a node grid")
        ->each([&](const std::string&) { ++sweep_count; });
    bound->add_option("--format", c.format, "json (default) or csv (sweeps)");

    auto* holder = app.add_subcommand("holder", "sharp constant over a Holder class (odd n)");
    add_problem(holder, false);
    holder->add_option("--omega", c.omega_spec, "modulus: linear:K | power:K:alpha | table:file");
    holder->add_option("--x", c.node_x,
                       "proposed node; rejected unless it satisfies the balancing condition")
        ->each([&](const std::string&) { ++x_count; });

    auto* cube = app.add_subcommand("cube", "sharp constant for the cube gradient class");
    cube->add_option("--d", c.cube_d, "dimension (>= 2)");
    cube->add_option("--q", c.cube_q, "class exponent, q > d, or inf");
    cube->add_option("--output", c.output_path, "write the report here instead of stdout");

    auto* ball = app.add_subcommand("ball-bv", "bounded-variation ball constant v/2");
    ball->add_option("--v", c.ball_v, "variation bound");
    ball->add_option("--output", c.output_path, "write the report here instead of stdout");

    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", c.suite, "representation|moments|extremal|audit|all");
    verify->add_option("--trials", c.trials, "audit trials per class");
    verify->add_option("--seed", c.seed, "generator seed");
    verify->add_option("--spec", c.verify_spec, "audit a single problem (JSON or file)");
    verify->add_option("--output", c.output_path, "write the report here instead of stdout");
    c.suite = "all";

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        help << app.help();
        (void)e;
        throw HelpRequested{help.str()};
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    for (auto* sub : {kernel, bound, holder, cube, ball, verify})
        if (sub->parsed()) c.command = sub->get_name();
    if (c.command.empty())
        throw std::invalid_argument("expected a command: kernel|bound|holder|cube|ball-bv|verify "
                                    "(or --config <file>); see --help");

    int policies = x_count + opt_count + sweep_count;
    if (policies > 1)
        throw std::invalid_argument("node policy: exactly one of --x, --optimize, --sweep may "
                                    "be given (got " + std::to_string(policies) + ")");
    if (x_count == 1)
        c.node_policy = "fixed";
    else if (opt_count == 1)
        c.node_policy = "optimize";
    else if (sweep_count == 1)
        c.node_policy = "sweep";
    else if (c.command == "holder")
        c.node_policy = "balance";
    else if (c.command == "kernel" || c.command == "bound")
        throw std::invalid_argument("node policy: exactly one of --x, --optimize, --sweep must "
                                    "be given");

    c.validate();
    return c;
}

namespace {

using detail::ordered_json;

std::optional<Interval> config_interval(const RunConfig& c) {
    if (!c.has_interval) return std::nullopt;
    return Interval(c.interval_a, c.interval_b);
}

struct Problem {
    PiecewisePolynomial p;
    WeightSystem weights;
    bool weighted;
};

Problem load_problem(const RunConfig& c) {
    PiecewisePolynomial p = parse_p_spec(c.p_spec, config_interval(c));
    Interval dom = p.domain();
    if (!c.weights_spec.empty()) {
        WeightSystem ws = parse_weights_spec(c.weights_spec, dom);
        if (int(ws.size()) < c.n)
            throw std::invalid_argument("--weights: provides " + std::to_string(ws.size()) +
                                        " weights, --n needs " + std::to_string(c.n));
        return {p, std::move(ws), true};
    }
    return {p, WeightSystem::trivial(dom, c.n), false};
}

std::string csv_sweep(const std::vector<std::pair<double, double>>& table) {
    std::string out = "x,constant\n";
    for (const auto& [x, v] : table) out += format_double(x) + "," + format_double(v) + "\n";
    return out;
}

void emit(const RunConfig& c, const std::string& report, std::ostream& out) {
    if (c.output_path.empty()) {
        out << report;
        if (!report.empty() && report.back() != '\n') out << "\n";
    } else {
        std::ofstream f(c.output_path);
        if (!f) throw std::runtime_error("cannot write output file: " + c.output_path);
        f << report;
        if (!report.empty() && report.back() != '\n') f << "\n";
    }
}

int run_impl(const RunConfig& c, std::ostream& out) {
    if (c.command == "kernel") {
        Problem prob = load_problem(c);
        Interval dom = prob.p.domain();
        if (!dom.contains(c.node_x))
            throw std::invalid_argument("--x: node outside the domain");
        KernelChain chain = build_chain(prob.p, prob.weights, c.node_x, c.n);
        if (!c.csv_path.empty()) {
            std::ofstream f(c.csv_path);
            if (!f) throw std::runtime_error("cannot write CSV file: " + c.csv_path);
            f << "s,r\n";
            const PiecewisePolynomial& r = chain.top();
            for (int i = 0; i < 512; ++i) {
                double s = dom.a + dom.length() * double(i) / 511.0;
                f << format_double(s) << "," << format_double(r(s)) << "\n";
            }
        }
        emit(c, sharpquad::to_json(chain, 2), out);
        return 0;
    }
    if (c.command == "bound") {
        Problem prob = load_problem(c);
        double q = parse_extended_real(c.q, "--q");
        ClassSpec spec = prob.weighted ? ClassSpec::weighted(prob.weights, c.n, q)
                                       : ClassSpec::sobolev(c.n, q);
        if (c.node_policy == "fixed") {
            if (!prob.p.domain().contains(c.node_x))
                throw std::invalid_argument("--x: node outside the domain");
            BoundReport rep = class_bound(prob.p, spec, c.node_x);
            emit(c, sharpquad::to_json(rep, true, 2), out);
            return 0;
        }
        if (c.node_policy == "optimize") {
            auto [xs, value] = optimize_node(prob.p, spec);
            BoundReport rep = class_bound(prob.p, spec, xs);
            ordered_json j = detail::bound_to_ojson(rep, true);
            j["node_policy"] = "optimize";
            (void)value;
            emit(c, detail::dump17(j, 2), out);
            return 0;
        }
        auto table = sweep_node(prob.p, spec, c.sweep_grid);
        if (c.format == "csv") {
            emit(c, csv_sweep(table), out);
        } else {
            ordered_json rows = ordered_json::array();
            for (const auto& [x, v] : table) {
                ordered_json row;
                row["x"] = x;
                row["constant"] = v;
                rows.push_back(row);
            }
            ordered_json j;
            j["node_policy"] = "sweep";
            j["grid"] = c.sweep_grid;
            j["table"] = rows;
            emit(c, detail::dump17(j, 2), out);
        }
        return 0;
    }
    if (c.command == "holder") {
        PiecewisePolynomial p = parse_p_spec(c.p_spec, config_interval(c));
        ModulusSpec omega = parse_omega_spec(c.omega_spec);
        BoundReport rep = (c.node_policy == "fixed")
                              ? holder_bound_at(p, c.n, omega, c.node_x)
                              : holder_bound(p, c.n, omega);
        ordered_json j;
        j["x"] = rep.node;
        j["constant"] = rep.constant;
        j["sharp"] = rep.sharp;
        j["n"] = rep.n;
        j["omega"] = omega.describe();
        j["coefficients"] = rep.coefficients;
        j["sharpness_note"] = rep.sharpness_note;
        emit(c, detail::dump17(j, 2), out);
        return 0;
    }
    if (c.command == "cube") {
        CubeSpec spec(c.cube_d, parse_extended_real(c.cube_q, "--q"));
        ordered_json j;
        j["d"] = spec.d;
        j["q"] = detail::q_to_ojson(spec.q);
        j["constant"] = cube_constant(spec);
        emit(c, detail::dump17(j, 2), out);
        return 0;
    }
    if (c.command == "ball-bv") {
        ordered_json j;
        j["v"] = c.ball_v;
        j["constant"] = ball_bv_bound(c.ball_v);
        emit(c, detail::dump17(j, 2), out);
        return 0;
    }
    // verify
    std::optional<VerifyProblem> problem;
    if (!c.verify_spec.empty()) problem = parse_verify_spec(c.verify_spec);
    auto suites = run_verify(c.suite, c.trials, c.seed, problem);
    emit(c, sharpquad::to_json(suites, 2), out);
    for (const auto& s : suites)
        if (!s.pass) return 1;
    return 0;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        return run_impl(config, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        RunConfig config = parse_config(args);
        return run(config, out, err);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace sharpquad::cli
