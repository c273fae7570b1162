#include "sharpquad/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json_detail.hpp"

namespace sharpquad {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

namespace {

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        out.push_back('\n');
        out.append(std::size_t(indent) * d, ' ');
    };
    switch (j.type()) {
    case ordered_json::value_t::null:
        out += "null";
        break;
    case ordered_json::value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        break;
    case ordered_json::value_t::number_integer:
        out += std::to_string(j.get<long long>());
        break;
    case ordered_json::value_t::number_unsigned:
        out += std::to_string(j.get<unsigned long long>());
        break;
    case ordered_json::value_t::number_float: {
        double v = j.get<double>();
        if (!std::isfinite(v))
            throw std::logic_error("dump17: non-finite number in report");
        out += format_double(v);
        break;
    }
    case ordered_json::value_t::string:
        out += ordered_json(j.get<std::string>()).dump(); // escaping
        break;
    case ordered_json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            break;
        }
        out.push_back('[');
        bool first = true;
        for (const auto& el : j) {
            if (!first) out.push_back(',');
            first = false;
            newline(depth + 1);
            dump_rec(el, out, indent, depth + 1);
        }
        newline(depth);
        out.push_back(']');
        break;
    }
    case ordered_json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            break;
        }
        out.push_back('{');
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out.push_back(',');
            first = false;
            newline(depth + 1);
            out += ordered_json(it.key()).dump();
            out.push_back(':');
            if (indent >= 0) out.push_back(' ');
            dump_rec(it.value(), out, indent, depth + 1);
        }
        newline(depth);
        out.push_back('}');
        break;
    }
    default:
        throw std::logic_error("dump17: unsupported JSON value");
    }
}

} // namespace

std::string dump17(const ordered_json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    return out;
}

ordered_json pp_to_ojson(const PiecewisePolynomial& pp) {
    ordered_json j;
    j["breakpoints"] = pp.breakpoints();
    ordered_json pieces = ordered_json::array();
    for (std::size_t i = 0; i < pp.piece_count(); ++i) pieces.push_back(pp.piece_abs_coeffs(i));
    j["pieces"] = pieces;
    return j;
}

PiecewisePolynomial pp_from_ojson(const ordered_json& j) {
    if (!j.is_object() || !j.contains("breakpoints") || !j.contains("pieces"))
        throw std::invalid_argument(
            "piecewise polynomial JSON needs \"breakpoints\" and \"pieces\"");
    std::vector<double> breaks = j.at("breakpoints").get<std::vector<double>>();
    auto pieces = j.at("pieces");
    if (breaks.size() < 2)
        throw std::invalid_argument("piecewise polynomial JSON: need at least two breakpoints");
    if (!pieces.is_array() || pieces.size() + 1 != breaks.size())
        throw std::invalid_argument(
            "piecewise polynomial JSON: piece count must equal breakpoint count - 1");
    std::vector<std::vector<double>> abs(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i)
        abs[i] = pieces[i].get<std::vector<double>>();
    return PiecewisePolynomial::from_absolute(std::move(breaks), abs);
}

ordered_json chain_to_ojson(const KernelChain& chain) {
    ordered_json j;
    j["p"] = pp_to_ojson(chain.p);
    j["x"] = chain.x;
    ordered_json ws = ordered_json::array();
    for (const auto& w : chain.weights.weights()) ws.push_back(pp_to_ojson(w));
    j["weights"] = ws;
    ordered_json ch = ordered_json::array();
    for (const auto& r : chain.chain) ch.push_back(pp_to_ojson(r));
    j["chain"] = ch;
    return j;
}

KernelChain chain_from_ojson(const ordered_json& j) {
    PiecewisePolynomial p = pp_from_ojson(j.at("p"));
    double x = j.at("x").get<double>();
    std::vector<PiecewisePolynomial> ws;
    for (const auto& w : j.at("weights")) ws.push_back(pp_from_ojson(w));
    WeightSystem weights(p.domain(), std::move(ws));
    int n = int(j.at("chain").size()) - 1;
    KernelChain rebuilt = build_chain(p, weights, x, n);
    return rebuilt;
}

ordered_json q_to_ojson(double q) {
    if (std::isinf(q)) return "inf";
    return q;
}

double q_from_ojson(const ordered_json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity")
            return std::numeric_limits<double>::infinity();
        return std::stod(s);
    }
    return j.get<double>();
}

ordered_json bound_to_ojson(const BoundReport& rep, bool include_kernel) {
    ordered_json j;
    j["kind"] = rep.kind;
    j["n"] = rep.n;
    if (!std::isnan(rep.q)) {
        j["q"] = q_to_ojson(rep.q);
        j["qprime"] = q_to_ojson(rep.qprime);
    }
    j["node"] = rep.node;
    j["coefficients"] = rep.coefficients;
    j["constant"] = rep.constant;
    if (rep.coefficient_agreement) j["coefficient_agreement"] = *rep.coefficient_agreement;
    j["sharp"] = rep.sharp;
    if (!rep.sharpness_note.empty()) j["sharpness_note"] = rep.sharpness_note;
    if (rep.attainment) {
        ordered_json a;
        a["ratio"] = rep.attainment->ratio;
        a["construction"] = rep.attainment->construction;
        j["attainment"] = a;
    }
    if (include_kernel && rep.kernel) j["kernel"] = chain_to_ojson(*rep.kernel);
    return j;
}

ordered_json audit_to_ojson(const AuditReport& rep) {
    ordered_json j;
    j["trials"] = rep.trials;
    j["max_ratio"] = rep.max_ratio;
    j["violations"] = rep.violations;
    j["seed"] = rep.seed;
    return j;
}

ordered_json suites_to_ojson(const std::vector<SuiteReport>& suites) {
    ordered_json out;
    bool all_pass = true;
    ordered_json arr = ordered_json::array();
    for (const auto& s : suites) {
        ordered_json sj;
        sj["suite"] = s.suite;
        sj["seed"] = s.seed;
        sj["trials"] = s.trials;
        sj["pass"] = s.pass;
        ordered_json checks = ordered_json::array();
        for (const auto& c : s.checks) {
            ordered_json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            cj["value"] = c.value;
            cj["threshold"] = c.threshold;
            if (!c.note.empty()) cj["note"] = c.note;
            checks.push_back(cj);
        }
        sj["checks"] = checks;
        arr.push_back(sj);
        all_pass = all_pass && s.pass;
    }
    out["pass"] = all_pass;
    out["suites"] = arr;
    return out;
}

} // namespace detail

using detail::ordered_json;

std::string to_json(const PiecewisePolynomial& pp, int indent) {
    return detail::dump17(detail::pp_to_ojson(pp), indent);
}

PiecewisePolynomial pp_from_json(const std::string& text) {
    return detail::pp_from_ojson(ordered_json::parse(text));
}

std::string to_json(const KernelChain& chain, int indent) {
    return detail::dump17(detail::chain_to_ojson(chain), indent);
}

KernelChain chain_from_json(const std::string& text) {
    return detail::chain_from_ojson(ordered_json::parse(text));
}

std::string to_json(const BoundReport& rep, bool include_kernel, int indent) {
    return detail::dump17(detail::bound_to_ojson(rep, include_kernel), indent);
}

std::string to_json(const AuditReport& rep, int indent) {
    return detail::dump17(detail::audit_to_ojson(rep), indent);
}

std::string to_json(const std::vector<SuiteReport>& suites, int indent) {
    return detail::dump17(detail::suites_to_ojson(suites), indent);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::vector<double> split_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

bool looks_like_json(const std::string& s) {
    auto pos = s.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && (s[pos] == '{' || s[pos] == '[');
}

} // namespace

PiecewisePolynomial parse_p_spec(const std::string& spec, const std::optional<Interval>& dom) {
    if (spec.rfind("const:", 0) == 0) {
        if (!dom) throw std::invalid_argument("p spec 'const:' needs --interval");
        return PiecewisePolynomial::constant(*dom, std::stod(spec.substr(6)));
    }
    if (spec.rfind("poly:", 0) == 0) {
        if (!dom) throw std::invalid_argument("p spec 'poly:' needs --interval");
        auto c = split_doubles(spec.substr(5));
        if (c.empty()) throw std::invalid_argument("p spec 'poly:' needs coefficients");
        return PiecewisePolynomial::polynomial(*dom, c);
    }
    std::string text = looks_like_json(spec) ? spec : read_text_file(spec);
    PiecewisePolynomial pp = pp_from_json(text);
    if (dom && !(pp.domain() == *dom))
        throw std::invalid_argument("p domain [" + format_double(pp.domain().a) + ", " +
                                    format_double(pp.domain().b) +
                                    "] disagrees with --interval [" + format_double(dom->a) +
                                    ", " + format_double(dom->b) + "]");
    return pp;
}

WeightSystem parse_weights_spec(const std::string& spec, const Interval& dom) {
    std::string text = looks_like_json(spec) ? spec : read_text_file(spec);
    ordered_json j = ordered_json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("weights: expected a JSON array");
    std::vector<PiecewisePolynomial> ws;
    for (const auto& el : j) {
        if (el.is_array())
            ws.push_back(PiecewisePolynomial::polynomial(dom, el.get<std::vector<double>>()));
        else
            ws.push_back(detail::pp_from_ojson(el));
        if (!(ws.back().domain() == dom))
            throw std::invalid_argument("weights: entry domain disagrees with the interval");
    }
    return WeightSystem(dom, std::move(ws));
}

ModulusSpec parse_omega_spec(const std::string& spec) {
    if (spec.rfind("linear:", 0) == 0) return ModulusSpec::linear(std::stod(spec.substr(7)));
    if (spec.rfind("power:", 0) == 0) {
        std::string rest = spec.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("omega: expected power:K:alpha");
        return ModulusSpec::power(std::stod(rest.substr(0, colon)),
                                  std::stod(rest.substr(colon + 1)));
    }
    if (spec.rfind("table:", 0) == 0) {
        ordered_json j = ordered_json::parse(read_text_file(spec.substr(6)));
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : j.at("points"))
            pts.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        bool concave = j.value("concave", false);
        return ModulusSpec::tabulated(std::move(pts), concave);
    }
    throw std::invalid_argument("omega: expected linear:K, power:K:alpha, or table:<file>, got '" +
                                spec + "'");
}

VerifyProblem parse_verify_spec(const std::string& text) {
    ordered_json j = ordered_json::parse(looks_like_json(text) ? text : read_text_file(text));
    std::optional<Interval> dom;
    if (j.contains("interval")) {
        auto iv = j.at("interval");
        dom = Interval(iv.at(0).get<double>(), iv.at(1).get<double>());
    }
    std::string pspec = j.at("p").is_string() ? j.at("p").get<std::string>()
                                              : detail::dump17(j.at("p"));
    PiecewisePolynomial p = parse_p_spec(pspec, dom);
    Interval pd = p.domain();

    std::string kind = j.at("kind").get<std::string>();
    int n = j.at("n").get<int>();
    double x = j.value("x", 0.5 * (pd.a + pd.b));
    if (kind == "sobolev") {
        double q = detail::q_from_ojson(j.at("q"));
        return VerifyProblem{p, ClassSpec::sobolev(n, q), x};
    }
    if (kind == "weighted") {
        double q = detail::q_from_ojson(j.at("q"));
        WeightSystem ws = parse_weights_spec(detail::dump17(j.at("weights")), pd);
        return VerifyProblem{p, ClassSpec::weighted(std::move(ws), n, q), x};
    }
    if (kind == "holder") {
        if (!j.contains("omega") || !j.at("omega").is_string())
            throw std::invalid_argument(
                "verify spec: holder kind needs \"omega\" as a string (linear:K, power:K:alpha, "
                "table:<file>)");
        ModulusSpec om = parse_omega_spec(j.at("omega").get<std::string>());
        return VerifyProblem{p, ClassSpec::holder(n, std::move(om)), x};
    }
    throw std::invalid_argument("verify spec: kind must be sobolev, weighted, or holder");
}

} // namespace sharpquad
