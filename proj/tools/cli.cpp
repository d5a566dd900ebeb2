#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <omp.h>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gl4st/bounds.hpp"
#include "gl4st/experiments.hpp"
#include "gl4st/hecke.hpp"
#include "gl4st/measure.hpp"
#include "gl4st/rep.hpp"

namespace gl4st::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

constexpr const char* kSyntheticNote =
    "Satake parameters are sampled from the Sato-Tate measure itself, so the weighted limit holds by "
    "construction; this run checks weights, characters, integrals and rates, not genuine GL(4) spectra.";

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- parsing -------------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

template <class T>
T parse_number(const std::string& token, const std::string& what)
{
    T value{};
    const char* first = token.data();
    const char* last = first + token.size();
    if (!token.empty() && token.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || token.empty()) {
        throw ValidationError(what + ": cannot parse '" + token + "'");
    }
    return value;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& what, std::size_t expected = 0)
{
    std::vector<T> out;
    for (const auto& token : split(text, ',')) out.push_back(parse_number<T>(token, what));
    if (expected != 0 && out.size() != expected) {
        throw ValidationError(what + ": expected " + std::to_string(expected) + " comma-separated values");
    }
    if (out.empty()) throw ValidationError(what + ": empty list");
    return out;
}

MonomialExponent parse_exponents(const std::string& text)
{
    const auto values = parse_list<unsigned>(text, "--exponents", 6);
    MonomialExponent m;
    std::copy(values.begin(), values.end(), m.e.begin());
    return m;
}

HeckeIndex parse_index(const std::string& text, const std::string& what)
{
    const auto v = parse_list<std::uint64_t>(text, what, 3);
    return HeckeIndex(v[0], v[1], v[2]);
}

// ---- output --------------------------------------------------------------

std::string format_double(double x)
{
    if (!std::isfinite(x)) throw std::range_error("non-finite value in output");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json complex_json(cplx z)
{
    return json{{"re", z.real()}, {"im", z.imag()}};
}

std::string exponents_string(const MonomialExponent& m)
{
    std::string s;
    for (std::size_t i = 0; i < 6; ++i) s += (i ? "," : "") + std::to_string(m.e[i]);
    return s;
}

json exponents_json(const MonomialExponent& m)
{
    return json(std::vector<unsigned>(m.e.begin(), m.e.end()));
}

json rational_json(const Rational& q)
{
    if (q.denominator() == 1) return json(q.numerator());
    return json(format_rational(q));
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Document {
    json params = json::object();
    json results = json::object();
    Table table;
    int exit_code = kExitOk;
};

void check_finite(const json& j)
{
    if (j.is_number_float() && !std::isfinite(j.get<double>())) throw std::range_error("non-finite value in output");
    if (j.is_structured()) {
        for (const auto& item : j) check_finite(item);
    }
}

std::string csv_escape(const std::string& cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv(std::ostream& os, const Table& t)
{
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

// ---- subcommands ----------------------------------------------------------

struct Options {
    std::string format = "json";
    std::string output;
    int threads = 0;

    // char
    std::string weight;
    int elementary = 0;
    std::string angles;
    // tensor, st-integral, st-sample, simulate
    std::string exponents_one;
    std::vector<std::string> exponents_many;
    bool quadrature = false;
    // hecke-check
    std::string primes = "2,3,5,7";
    unsigned max_exponent = 5;
    std::size_t points = 100;
    std::uint64_t seed = 0;
    std::uint64_t max_index = 0;
    std::size_t mixed_samples = 200;
    bool three_divisor = false;
    bool uncorrected_cl = false;
    double tolerance = 1e-9;
    // st-sample, simulate
    std::uint64_t samples = 1000000;
    double gate_sigma = 0.0;
    // simulate, h-profile, budget
    double T = 10.0;
    std::string R = "14";
    std::uint64_t family_size = 100000;
    double box_scale = 1.0;
    std::string l_model = "constant";
    std::string t_list = "10,20,40,80,160";
    std::string direction = "3,1,-1.5,-2.5";
    double gate_relative = 0.0;
    // budget
    std::string r = "4";
    std::string L = "1,1,1";
    std::string M = "1,1,1";
    std::string epsilon = "1/100";
    double budget_T = 1.0;
    int r_max = 16;
};

std::vector<MonomialExponent> monomial_list(const std::vector<std::string>& items)
{
    if (items.empty()) throw ValidationError("--exponents: at least one monomial is required");
    std::vector<MonomialExponent> out;
    for (const auto& s : items) out.push_back(parse_exponents(s));
    return out;
}

Document cmd_char(const Options& o)
{
    if (o.weight.empty() == (o.elementary == 0)) throw ValidationError("give exactly one of --weight and --elementary");
    const auto t = parse_list<double>(o.angles, "--angles", 3);
    const TorusPoint x = TorusPoint::from_angles(t[0], t[1], t[2]);
    Document d;
    d.params["angles"] = t;
    cplx value;
    std::string label;
    std::uint64_t dim = 0;
    if (o.elementary != 0) {
        if (o.elementary < 1 || o.elementary > 3) throw ValidationError("--elementary must be 1, 2 or 3");
        d.params["elementary"] = o.elementary;
        value = elementary_character(o.elementary, x);
        const DominantWeight w = omega(o.elementary == 1, o.elementary == 2, o.elementary == 3);
        label = w.to_string();
        dim = dimension(w);
    } else {
        const auto parts = parse_list<int>(o.weight, "--weight");
        if (parts.size() != 3 && parts.size() != 4) throw ValidationError("--weight: expected 3 or 4 parts");
        std::array<int, 4> p{0, 0, 0, 0};
        std::copy(parts.begin(), parts.end(), p.begin());
        const DominantWeight w(p);
        d.params["weight"] = parts;
        value = schur_character(w, x);
        label = w.to_string();
        dim = dimension(w);
    }
    d.results["weight"] = label;
    d.results["dimension"] = dim;
    d.results["value"] = complex_json(value);
    d.table.header = {"weight", "dimension", "re", "im"};
    d.table.rows.push_back({label, std::to_string(dim), format_double(value.real()), format_double(value.imag())});
    return d;
}

Document cmd_tensor(const Options& o)
{
    const MonomialExponent m = parse_exponents(o.exponents_one);
    const TensorDecomposition dec = monomial_multiplicities(m);
    Document d;
    d.params["exponents"] = exponents_json(m);
    json rows = json::array();
    d.table.header = {"weight", "multiplicity", "dimension"};
    for (const auto& [w, mult] : dec.multiplicities()) {
        rows.push_back({{"weight", w.to_string()}, {"multiplicity", mult}, {"dimension", dimension(w)}});
        d.table.rows.push_back({w.to_string(), std::to_string(mult), std::to_string(dimension(w))});
    }
    std::uint64_t expected = 1;
    for (int k = 1; k <= 3; ++k) {
        const std::uint64_t base = k == 2 ? 6 : 4;
        for (unsigned i = 0; i < m.power(k) + m.conj_power(k); ++i) expected *= base;
    }
    d.results["components"] = rows;
    d.results["total_dimension"] = dec.total_dimension();
    d.results["expected_dimension"] = expected;
    d.results["trivial_multiplicity"] = dec.multiplicity(DominantWeight());
    if (dec.total_dimension() != expected) d.exit_code = kExitGateFailed;
    return d;
}

Document cmd_hecke_check(const Options& o)
{
    OracleConfig cfg;
    cfg.primes = parse_list<std::uint64_t>(o.primes, "--primes");
    for (const auto p : cfg.primes) {
        if (factorize(p).size() != 1 || factorize(p).front().second != 1) {
            throw ValidationError("--primes: " + std::to_string(p) + " is not prime");
        }
    }
    cfg.max_exponent = o.max_exponent;
    cfg.points = o.points;
    cfg.seed = o.seed;
    cfg.max_index = o.max_index;
    cfg.mixed_samples = o.max_index > 0 ? o.mixed_samples : 0;
    cfg.hecke_form = o.three_divisor ? HeckeForm::three_divisor : HeckeForm::four_divisor;
    cfg.cl_form = o.uncorrected_cl ? ClForm::uncorrected : ClForm::corrected;
    if (cfg.points < 1) throw ValidationError("--points must be >= 1");

    const OracleReport report = run_oracle_suite(cfg);
    Document d;
    d.params = {{"primes", cfg.primes},
                {"max_exponent", cfg.max_exponent},
                {"points", cfg.points},
                {"seed", cfg.seed},
                {"max_index", cfg.max_index},
                {"samples", cfg.mixed_samples},
                {"hecke_form", o.three_divisor ? "three_divisor" : "four_divisor"},
                {"cl_form", o.uncorrected_cl ? "uncorrected" : "corrected"},
                {"tolerance", o.tolerance}};
    json rel = json::array();
    d.table.header = {"relation", "checks", "max_residual", "worst_case"};
    for (const auto& r : report.relations) {
        rel.push_back(
            {{"relation", r.relation}, {"checks", r.checks}, {"max_residual", r.max_residual}, {"worst_case", r.worst_case}});
        d.table.rows.push_back({r.relation, std::to_string(r.checks), format_double(r.max_residual), r.worst_case});
    }
    const bool passed = report.passed(o.tolerance);
    d.results["relations"] = rel;
    d.results["max_residual"] = report.max_residual();
    d.results["passed"] = passed;
    if (!passed) d.exit_code = kExitGateFailed;
    return d;
}

Document cmd_st_integral(const Options& o)
{
    const MonomialExponent m = parse_exponents(o.exponents_one);
    Document d;
    d.params["exponents"] = exponents_json(m);
    const std::uint64_t value = st_integral(m);
    d.results["value"] = value;
    d.table.header = {"exponents", "value"};
    d.table.rows.push_back({exponents_string(m), std::to_string(value)});
    if (o.quadrature) {
        const cplx q = st_integral_quadrature(m);
        d.params["quadrature"] = true;
        d.results["quadrature"] = complex_json(q);
        d.results["grid"] = TorusGrid::exact_for(m.total_degree()).N;
        d.table.header.insert(d.table.header.end(), {"quadrature_re", "quadrature_im"});
        d.table.rows.back().push_back(format_double(q.real()));
        d.table.rows.back().push_back(format_double(q.imag()));
    }
    return d;
}

Document cmd_st_sample(const Options& o)
{
    const auto monomials = monomial_list(o.exponents_many);
    if (o.samples < 2) throw ValidationError("--samples must be >= 2");
    const auto moments = haar_moments(monomials, o.samples, o.seed);
    Document d;
    json ex = json::array();
    for (const auto& m : monomials) ex.push_back(exponents_json(m));
    d.params = {{"exponents", ex}, {"samples", o.samples}, {"seed", o.seed}, {"gate_sigma", o.gate_sigma}};
    json rows = json::array();
    d.table.header = {"exponents", "mean_re", "mean_im", "se_re", "se_im", "target", "z"};
    bool gate_ok = true;
    for (std::size_t k = 0; k < monomials.size(); ++k) {
        const auto& e = moments[k];
        const double target = static_cast<double>(st_integral(monomials[k]));
        const double z = e.z_score(target);
        if (o.gate_sigma > 0.0 && !(z <= o.gate_sigma)) gate_ok = false;
        rows.push_back({{"exponents", exponents_json(monomials[k])},
                        {"mean", complex_json(e.mean)},
                        {"se_re", e.se_real},
                        {"se_im", e.se_imag},
                        {"target", target},
                        {"z", z}});
        d.table.rows.push_back({exponents_string(monomials[k]), format_double(e.mean.real()),
                                format_double(e.mean.imag()), format_double(e.se_real), format_double(e.se_imag),
                                format_double(target), format_double(z)});
    }
    d.results["moments"] = rows;
    if (!gate_ok) d.exit_code = kExitGateFailed;
    return d;
}

Document cmd_simulate(const Options& o)
{
    const auto monomials = monomial_list(o.exponents_many);
    FamilyConfig cfg;
    cfg.T = o.T;
    cfg.R = boost::rational_cast<double>(parse_rational(o.R));
    cfg.size = o.family_size;
    cfg.box_scale = o.box_scale;
    cfg.seed = o.seed;
    if (o.l_model == "constant") {
        cfg.l_model = LModel::constant;
    } else if (o.l_model == "lognormal") {
        cfg.l_model = LModel::lognormal;
    } else {
        throw ValidationError("--l-model must be 'constant' or 'lognormal'");
    }
    cfg.validate();
    const auto reports = simulate_family(cfg, monomials);

    Document d;
    json ex = json::array();
    for (const auto& m : monomials) ex.push_back(exponents_json(m));
    d.params = {{"T", cfg.T},          {"R", cfg.R},           {"N", cfg.size},
                {"box_scale", cfg.box_scale}, {"l_model", o.l_model}, {"seed", cfg.seed},
                {"exponents", ex},     {"gate_sigma", o.gate_sigma}};
    json rows = json::array();
    d.table.header = {"exponents", "ratio_re", "ratio_im", "target", "se_re", "se_im", "z", "effective_size"};
    bool gate_ok = true;
    for (const auto& r : reports) {
        const double z = r.z_score();
        if (o.gate_sigma > 0.0 && !(z <= o.gate_sigma)) gate_ok = false;
        rows.push_back({{"exponents", exponents_json(r.monomial)},
                        {"ratio", complex_json(r.ratio)},
                        {"target", r.target},
                        {"deviation", complex_json(r.deviation)},
                        {"se_re", r.se_real},
                        {"se_im", r.se_imag},
                        {"z", z}});
        d.table.rows.push_back({exponents_string(r.monomial), format_double(r.ratio.real()),
                                format_double(r.ratio.imag()), format_double(r.target), format_double(r.se_real),
                                format_double(r.se_imag), format_double(z), format_double(r.effective_size)});
    }
    d.results["note"] = kSyntheticNote;
    d.results["effective_size"] = reports.front().effective_size;
    d.results["redrawn"] = reports.front().redrawn;
    d.results["max_log_weight"] = {{"log", reports.front().max_log_weight}};
    d.results["reports"] = rows;
    if (!gate_ok) d.exit_code = kExitGateFailed;
    return d;
}

Document cmd_h_profile(const Options& o)
{
    const auto Ts = parse_list<double>(o.t_list, "--T-list");
    const auto x = parse_list<double>(o.direction, "--direction", 4);
    const double R = boost::rational_cast<double>(parse_rational(o.R));
    const LanglandsParameter x0 = LanglandsParameter::imaginary({x[0], x[1], x[2], x[3]});
    const HProfile p = h_profile(Ts, x0, R);
    Document d;
    d.params = {{"T", Ts}, {"direction", x}, {"R", R}, {"gate_relative", o.gate_relative}};
    json rows = json::array();
    d.table.header = {"T", "log_h"};
    for (std::size_t i = 0; i < p.T.size(); ++i) {
        rows.push_back({{"T", p.T[i]}, {"h", {{"log", p.log_h[i]}}}});
        d.table.rows.push_back({format_double(p.T[i]), format_double(p.log_h[i])});
    }
    const double rel = std::abs(p.slope - p.target) / p.target;
    d.results["rows"] = rows;
    d.results["slope"] = p.slope;
    d.results["target"] = p.target;
    d.results["relative_error"] = rel;
    d.results["degenerate"] = p.degenerate;
    if (o.gate_relative > 0.0 && !(rel <= o.gate_relative)) d.exit_code = kExitGateFailed;
    return d;
}

json term_json(const BoundTerm& t, const Rational& R)
{
    json coef = json::array();
    for (const auto& c : t.coefficient) coef.push_back(c.to_string());
    return {{"source", t.source},
            {"coefficient_exponents", coef},
            {"t_exponent", t.t_exponent.render(R)},
            {"t_exponent_symbolic", t.t_exponent.to_string()},
            {"term", t.to_string()}};
}

Document cmd_budget(const Options& o)
{
    ErrorBudget b;
    b.L = parse_index(o.L, "--L");
    b.M = parse_index(o.M, "--M");
    b.T = o.budget_T;
    b.R = parse_rational(o.R);
    b.epsilon = parse_rational(o.epsilon);
    const bool automatic = o.r == "auto";
    b.r = automatic ? 1 : parse_number<int>(o.r, "--r");
    b.validate();
    const BudgetReport rep = automatic ? total_budget_optimized(b, o.r_max) : total_budget(b);

    Document d;
    d.params = {{"R", format_rational(b.R)},
                {"r", o.r},
                {"L", std::vector<std::uint64_t>{b.L.m1, b.L.m2, b.L.m3}},
                {"M", std::vector<std::uint64_t>{b.M.m1, b.M.m2, b.M.m3}},
                {"epsilon", format_rational(b.epsilon)},
                {"T", b.T}};
    json main = json::array();
    for (const auto& e : rep.main_exponents) main.push_back(rational_json(e.at(b.R, 0)));
    json terms = json::array();
    json t_exps = json::array();
    d.table.header = {"source", "l1m1", "l2m2", "l3m3", "t_exponent", "t_exponent_symbolic"};
    for (const auto& t : rep.error_terms) {
        terms.push_back(term_json(t, b.R));
        t_exps.push_back(rational_json(t.t_exponent.constant + t.t_exponent.r_coeff * b.R));
        d.table.rows.push_back({t.source, t.coefficient[0].to_string(), t.coefficient[1].to_string(),
                                t.coefficient[2].to_string(), t.t_exponent.render(b.R), t.t_exponent.to_string()});
    }
    const auto shape = clm_constant_shape(b.L, b.M);
    d.results["r"] = rep.r;
    d.results["main_term_t_exponents"] = main;
    d.results["error_t_exponents"] = t_exps;
    d.results["error_terms"] = terms;
    d.results["dominant_error_t_exponent"] = rep.dominant_error_t_exponent.render(b.R);
    d.results["clm_constant_exponents"] = std::vector<int>(shape.begin(), shape.end());
    return d;
}

void configure_threads(int requested)
{
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv(kThreadsEnv); env && *env) {
            n = parse_number<int>(env, kThreadsEnv);
            if (n <= 0) throw ValidationError(std::string(kThreadsEnv) + " must be positive");
        }
    }
    if (n > 0) omp_set_num_threads(n);
}

void emit(const std::string& command, const Options& o, Document& d, std::ostream& out)
{
    std::ostringstream body;
    if (o.format == "csv") {
        write_csv(body, d.table);
    } else {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = command;
        doc["params"] = d.params;
        doc["results"] = d.results;
        check_finite(doc);
        body << doc.dump(2) << '\n';
    }
    if (o.output.empty()) {
        out << body.str();
        out.flush();
        return;
    }
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file '" + o.output + "'");
    file << body.str();
    if (!file) throw ValidationError("failed writing '" + o.output + "'");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"GL(4) Sato-Tate numerics: characters, Hecke relations, Haar integrals, synthetic families, "
                 "error budgets",
                 "gl4st"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output,-o", o.output, "Write to this file instead of standard output");
    app.add_option("--threads", o.threads,
                   std::string("OpenMP threads (default: $") + kThreadsEnv + " or the OpenMP default)");

    std::function<Document()> action;
    std::string command;
    auto bind = [&](CLI::App* sub, std::function<Document()> fn) {
        sub->callback([&, sub, fn] {
            command = sub->get_name();
            action = fn;
        });
    };

    auto* c_char = app.add_subcommand("char", "Evaluate a Schur or elementary character at a torus point");
    c_char->add_option("--weight", o.weight, "Highest weight l1>=l2>=l3[>=l4], comma separated");
    c_char->add_option("--elementary", o.elementary, "Fundamental representation k = 1, 2, 3");
    c_char->add_option("--angles", o.angles, "t1,t2,t3; eigenvalues e^{it1}, e^{it2}, e^{it3}, e^{-i(t1+t2+t3)}")
        ->required();
    bind(c_char, [&] { return cmd_char(o); });

    auto* c_tensor = app.add_subcommand("tensor", "Irreducible multiplicities of a monomial representation");
    c_tensor->add_option("--exponents", o.exponents_one, "i1,i1',i2,i2',i3,i3'")->required();
    bind(c_tensor, [&] { return cmd_tensor(o); });

    auto* c_hecke = app.add_subcommand("hecke-check", "Validate Hecke relations against Casselman-Shalika characters");
    c_hecke->add_option("--primes", o.primes, "Primes for single-prime indices");
    c_hecke->add_option("--max-exponent", o.max_exponent, "Largest prime-power exponent");
    c_hecke->add_option("--points", o.points, "Random Satake points");
    c_hecke->add_option("--seed", o.seed, "Seed");
    c_hecke->add_option("--max-index", o.max_index, "Also test random indices with entries <= this bound");
    c_hecke->add_option("--samples", o.mixed_samples, "Number of random indices when --max-index is set");
    c_hecke->add_flag("--three-divisor", o.three_divisor, "Use the three-divisor variant of the Hecke relation");
    c_hecke->add_flag("--uncorrected-cl", o.uncorrected_cl, "Use the uncorrected Chandee-Li decomposition");
    c_hecke->add_option("--tolerance", o.tolerance, "Gate on the max relative residual");
    bind(c_hecke, [&] { return cmd_hecke_check(o); });

    auto* c_int = app.add_subcommand("st-integral", "Exact Sato-Tate integral of a monomial");
    c_int->add_option("--exponents", o.exponents_one, "i1,i1',i2,i2',i3,i3'")->required();
    c_int->add_flag("--quadrature", o.quadrature, "Also report the Weyl-integration quadrature value");
    bind(c_int, [&] { return cmd_st_integral(o); });

    auto* c_sample = app.add_subcommand("st-sample", "Monte Carlo Sato-Tate moments from Haar samples");
    c_sample->add_option("--exponents", o.exponents_many, "Monomial exponents; repeat for several")->required();
    c_sample->add_option("--samples", o.samples, "Number of Haar samples");
    c_sample->add_option("--seed", o.seed, "Seed");
    c_sample->add_option("--gate-sigma", o.gate_sigma, "Exit 2 if any |z| exceeds this (0 disables)");
    bind(c_sample, [&] { return cmd_st_sample(o); });

    auto* c_sim = app.add_subcommand("simulate", "Weighted synthetic-family Sato-Tate average");
    c_sim->add_option("--exponents", o.exponents_many, "Monomial exponents; repeat for several")->required();
    c_sim->add_option("--T", o.T, "Spectral scale T");
    c_sim->add_option("--R", o.R, "Test-function parameter R (>= 14)");
    c_sim->add_option("--N", o.family_size, "Family size");
    c_sim->add_option("--box-scale", o.box_scale, "Spectral box half-width in units of T");
    c_sim->add_option("--l-model", o.l_model, "constant or lognormal");
    c_sim->add_option("--seed", o.seed, "Seed");
    c_sim->add_option("--gate-sigma", o.gate_sigma, "Exit 2 if any |z| exceeds this (0 disables)");
    bind(c_sim, [&] { return cmd_simulate(o); });

    auto* c_prof = app.add_subcommand("h-profile", "log h_{T,R}(iT x0) over T and its fitted slope");
    c_prof->add_option("--T-list", o.t_list, "T values, comma separated");
    c_prof->add_option("--direction", o.direction, "x0 (sums to 0)");
    c_prof->add_option("--R", o.R, "Test-function parameter R (>= 14)");
    c_prof->add_option("--gate-relative", o.gate_relative, "Exit 2 if |slope/8R - 1| exceeds this (0 disables)");
    bind(c_prof, [&] { return cmd_h_profile(o); });

    auto* c_budget = app.add_subcommand("budget", "Exponent budget of the Kuznetsov error terms");
    c_budget->add_option("--R", o.R, "R (integer, fraction or decimal)");
    c_budget->add_option("--r", o.r, "Kloosterman parameter r, or 'auto'");
    c_budget->add_option("--L", o.L, "l1,l2,l3");
    c_budget->add_option("--M", o.M, "m1,m2,m3");
    c_budget->add_option("--epsilon", o.epsilon, "epsilon (fraction or decimal)");
    c_budget->add_option("--T", o.budget_T, "T used when optimizing r");
    c_budget->add_option("--r-max", o.r_max, "Largest r tried by 'auto'");
    bind(c_budget, [&] { return cmd_budget(o); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "gl4st: " << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        configure_threads(o.threads);
        Document d = action();
        emit(command, o, d, out);
        return d.exit_code;
    } catch (const std::exception& e) {
        err << "gl4st " << command << ": " << e.what() << '\n';
        return kExitInvalid;
    }
}

} // namespace gl4st::cli
