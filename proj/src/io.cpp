#include "opdyn/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "opdyn/errors.hpp"

namespace opdyn {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& s) {
    if (s.empty() || s == "+") return 1.0;   // bare sign before 'i'
    if (s == "-") return -1.0;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("bad numeric literal '" + s + "'");
    return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw ConfigError("empty complex literal");
    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        // Find the split between real and imaginary parts: the last +/-
        // that is not an exponent sign and not the leading sign.
        for (std::size_t k = body.size(); k-- > 1;) {
            const char c = body[k];
            if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                return {parse_real(body.substr(0, k)),
                        parse_real(body.substr(k))};
            }
        }
        return {0.0, parse_real(body)};
    }
    try {
        return {parse_real(s), 0.0};
    } catch (const std::exception&) {
        throw ConfigError("bad complex literal '" + text + "'");
    }
}

std::string format_complex(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0.0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

Symbol parse_symbol(const std::string& literal) {
    const std::string s = trim(literal);
    if (s == "cos") return Symbol::cosine();
    if (s == "sin") return Symbol::sine();
    if (s == "zexp") return Symbol::z_exp();
    if (s == "exp") return Symbol::exp();
    if (s == "rose") return Symbol::rose();
    if (s.starts_with("exp-a:")) return Symbol::exp_minus(parse_complex(s.substr(6)));
    if (s.starts_with("poly:")) {
        std::string body = trim(s.substr(5));
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw ConfigError("poly literal needs [c0,c1,...]");
        body = body.substr(1, body.size() - 2);
        std::vector<Complex> coeffs;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const std::size_t comma = body.find(',', pos);
            const std::string item =
                body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!trim(item).empty()) coeffs.push_back(parse_complex(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return Symbol::polynomial(std::move(coeffs));
    }
    if (s.starts_with("scaled:")) {
        const std::size_t colon = s.rfind(':');
        if (colon == 6) throw ConfigError("scaled literal needs scaled:<symbol>:<a>");
        const Symbol base = parse_symbol(s.substr(7, colon - 7));
        return base.homothety_conjugate(parse_complex(s.substr(colon + 1)));
    }
    throw ConfigError("unknown symbol literal '" + literal + "'");
}

void write_arc_csv(std::ostream& os, const LevelArc& arc, const Symbol* phi) {
    os << "x,y,abs_phi,curvature\n";
    os.precision(17);
    for (std::size_t i = 0; i < arc.points.size(); ++i) {
        const Complex z = arc.points[i];
        const double a = phi != nullptr ? std::abs(phi->eval(z)) : arc.level;
        os << z.real() << "," << z.imag() << "," << a << "," << arc.curvatures[i] << "\n";
    }
}

std::string exppoly_to_json(const ExpPoly& f) {
    json records = json::array();
    for (const Term& t : f.terms())
        records.push_back({{"re_exp", t.exponent.real()},
                           {"im_exp", t.exponent.imag()},
                           {"re_coef", t.coefficient.real()},
                           {"im_coef", t.coefficient.imag()}});
    return records.dump(2);
}

ExpPoly exppoly_from_json(const std::string& text) {
    const json records = json::parse(text);
    std::vector<Term> terms;
    for (const json& rec : records)
        terms.push_back({{rec.at("re_exp").get<double>(), rec.at("im_exp").get<double>()},
                         {rec.at("re_coef").get<double>(), rec.at("im_coef").get<double>()}});
    return ExpPoly::from_terms(std::move(terms));
}

std::string report_to_json(const CriterionReport& report, const std::string& symbol_literal) {
    json j;
    j["symbol"] = symbol_literal;
    j["verdict"] = to_string(report.verdict);
    j["level"] = report.level;
    j["min_margin"] = report.min_margin;
    j["grid"] = {report.grid_theta, report.grid_t};
    j["margin_floor"] = report.margin_floor;
    j["edge_clearance"] = report.edge_clearance;
    if (report.violation_point)
        j["violation_point"] = {report.violation_point->real(), report.violation_point->imag()};
    if (!report.minkowski_ok.empty()) {
        json mk = json::array();
        for (bool ok : report.minkowski_ok) mk.push_back(ok);
        j["minkowski_ok"] = mk;
    }
    if (report.chosen_r) j["chosen_r"] = *report.chosen_r;
    if (report.chosen_eps) j["chosen_eps"] = *report.chosen_eps;
    if (!report.note.empty()) j["note"] = report.note;
    return j.dump(2);
}

namespace {

json complex_list(const std::vector<Complex>& v) {
    json out = json::array();
    for (Complex z : v) out.push_back(format_complex(z));
    return out;
}

std::vector<Complex> complex_list_from(const json& j) {
    std::vector<Complex> out;
    for (const json& item : j) out.push_back(parse_complex(item.get<std::string>()));
    return out;
}

}  // namespace

std::string problem_to_json(const WitnessProblem& p) {
    json j;
    j["symbol"] = p.phi.describe();
    j["m"] = p.m;
    j["r"] = p.r;
    j["rho"] = p.rho;
    j["lambda"] = complex_list(p.lambda);
    j["gamma"] = complex_list(p.gamma);
    j["a"] = complex_list(p.a);
    j["b"] = complex_list(p.b);
    return j.dump(2);
}

WitnessProblem problem_from_json(const std::string& text) {
    const json j = json::parse(text);
    WitnessProblem p;
    p.phi = parse_symbol(j.at("symbol").get<std::string>());
    p.m = j.at("m").get<int>();
    p.r = j.at("r").get<double>();
    p.rho = j.value("rho", 1.0);
    p.lambda = complex_list_from(j.at("lambda"));
    p.gamma = complex_list_from(j.at("gamma"));
    p.a = complex_list_from(j.at("a"));
    p.b = complex_list_from(j.at("b"));
    return p;
}

void write_witness_csv(std::ostream& os, const std::vector<WitnessStep>& trace) {
    if (trace.empty()) return;
    os << "q,r_norm_sampled,r_norm_crude";
    for (std::size_t j = 1; j <= trace.front().power_norms.size(); ++j)
        os << ",j" << j << "_sampled,j" << j << "_crude";
    os << ",residual_sampled,residual_crude\n";
    os.precision(17);
    for (const WitnessStep& step : trace) {
        os << step.q << "," << step.r_norm.sampled_sup << "," << step.r_norm.crude_bound;
        for (const DiskNorm& norm : step.power_norms)
            os << "," << norm.sampled_sup << "," << norm.crude_bound;
        os << "," << step.residual_norm.sampled_sup << "," << step.residual_norm.crude_bound
           << "\n";
    }
}

}  // namespace opdyn
