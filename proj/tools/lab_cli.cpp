#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "lab/bargmann.hpp"
#include "lab/completeness.hpp"
#include "lab/fock_products.hpp"
#include "lab/gaussian.hpp"
#include "lab/lambda_sets.hpp"
#include "lab/numerics.hpp"

using json = nlohmann::json;
using namespace lab;

namespace {

const char* kVersion = "1.0.0";
const double kPi = std::acos(-1.0);

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// Accepts decimals plus exact multiples of pi: "pi/4", "3pi/8", "0.5*pi".
double parse_angle(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::regex form(R"(^([+-]?[0-9]*\.?[0-9]*)\*?pi(?:/([0-9]+\.?[0-9]*))?$)");
    std::smatch m;
    if (std::regex_match(s, m, form)) {
        const std::string coef = m[1].str();
        const double c = coef.empty() || coef == "+" ? 1.0 : coef == "-" ? -1.0 : std::stod(coef);
        const double d = m[2].str().empty() ? 1.0 : std::stod(m[2].str());
        return c * kPi / d;
    }
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("cannot parse angle: " + raw);
    return v;
}

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_angle(tok));
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) {
        size_t pos = 0;
        out.push_back(std::stoi(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument("cannot parse integer: " + tok);
    }
    return out;
}

std::pair<double, double> parse_window(const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() != 2)
        throw std::invalid_argument("window must be given as r_min:r_max, got: " + s);
    return {std::stod(parts[0]), std::stod(parts[1])};
}

/// Loads --config JSON and appends every field not already set by an explicit
/// flag; explicit flags therefore win. Unknown fields surface as unknown
/// options when CLI11 parses the merged vector.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a path");
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json cfg = json::parse(in);
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& item : value) {
                if (!joined.empty()) joined += ',';
                joined += item.is_string() ? item.get<std::string>()
                                           : fmt(item.get<double>());
            }
            args.push_back(flag);
            args.push_back(joined);
        } else if (value.is_string()) {
            args.push_back(flag);
            args.push_back(value.get<std::string>());
        } else {
            args.push_back(flag);
            args.push_back(fmt(value.get<double>()));
        }
    }
    return args;
}

struct Output {
    std::ofstream file;
    std::ostream* os = nullptr;
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") {
            os = &std::cout;
        } else {
            file.open(path, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

void write_header(std::ostream& os, const json& cfg) {
    os << "# lab_cli " << kVersion << "\n# config " << cfg.dump() << "\n";
}

sets::DiscreteSet make_set(double delta, const std::string& pattern, int n) {
    return sets::generate_sqrt_set(delta, sets::pattern_from_string(pattern), n);
}

// ---------------------------------------------------------------- subcommands

void run_density(double delta, const std::string& pattern, int n, int grid,
                 const std::string& out) {
    json cfg{{"command", "density"}, {"delta", delta}, {"pattern", pattern},
             {"n", n}, {"grid", grid}};
    auto set = make_set(delta, pattern, n);
    const double r_lo = std::max(set.min_modulus() * 2.0, set.max_modulus() * 0.2);
    const double r_hi = set.max_modulus() * 0.95;
    std::vector<double> radii;
    for (int i = 0; i < grid; ++i)
        radii.push_back(r_lo + (r_hi - r_lo) * i / (grid - 1.0));
    auto rep = sets::density_estimate(set, radii);
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "kind,delta_nominal,delta_hat,delta_plus,delta_minus,fit_residual,n\n"
               << set.generator().kind << ',' << fmt(delta) << ',' << fmt(rep.delta_hat) << ','
               << fmt(rep.delta_plus) << ',' << fmt(rep.delta_minus) << ','
               << fmt(rep.fit_residual) << ',' << n << "\n";
}

void run_sums(double delta, const std::string& pattern, int n, const std::string& eps_list,
              const std::string& out) {
    json cfg{{"command", "sums"}, {"delta", delta}, {"pattern", pattern},
             {"n", n}, {"eps", eps_list}};
    auto set = make_set(delta, pattern, n);
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "eps,partial_sum,tail_bound,classification\n";
    for (double eps : parse_numbers(eps_list)) {
        auto rep = sets::s_epsilon(set, eps);
        o.stream() << fmt(eps) << ',' << fmt(rep.partial_sum) << ','
                   << (rep.tail_bound ? fmt(*rep.tail_bound) : "nan") << ','
                   << (rep.classification == sets::SeriesClass::diverging ? "diverging"
                                                                          : "converging")
                   << "\n";
    }
}

void run_gram(double delta, const std::string& pattern, int n, double target_shift,
              double cutoff, const std::string& out) {
    json cfg{{"command", "gram"}, {"delta", delta}, {"pattern", pattern}, {"n", n},
             {"target-shift", target_shift}, {"cutoff", cutoff}};
    auto set = make_set(delta, pattern, n);
    auto sys = completeness::build_gram(set.points(), gauss::translate(target_shift), cutoff);
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "n_nodes,condition_estimate,retained_rank,cutoff\n"
               << sys.nodes.size() << ',' << fmt(sys.condition_estimate) << ','
               << sys.retained_rank << ',' << fmt(cutoff) << "\n";
}

void run_project(double delta, const std::string& pattern, int n, double target_shift,
                 double cutoff, const std::string& out) {
    json cfg{{"command", "project"}, {"delta", delta}, {"pattern", pattern}, {"n", n},
             {"target-shift", target_shift}, {"cutoff", cutoff}};
    auto set = make_set(delta, pattern, n);
    auto target = gauss::translate(target_shift);
    auto sys = completeness::build_gram(set.points(), target, cutoff);
    auto res = completeness::project(sys, gauss::inner_product(target, target));
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "n_nodes,residual_sq,clip,retained_rank,cutoff\n"
               << sys.nodes.size() << ',' << fmt(res.residual_sq) << ',' << fmt(res.clip)
               << ',' << res.solve.retained << ',' << fmt(cutoff) << "\n";
}

void run_curve(double delta, const std::string& pattern, int n, double target_shift,
               const std::string& schedule, double cutoff, const std::string& out) {
    json cfg{{"command", "curve"}, {"delta", delta}, {"pattern", pattern}, {"n", n},
             {"target-shift", target_shift}, {"schedule", schedule}, {"cutoff", cutoff}};
    auto set = make_set(delta, pattern, n);
    auto curve = completeness::residual_curve(set, gauss::translate(target_shift),
                                              parse_ints(schedule), cutoff);
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "n,residual_sq,retained_rank\n";
    for (size_t i = 0; i < curve.truncations.size(); ++i)
        o.stream() << curve.truncations[i] << ',' << fmt(curve.residuals_sq[i]) << ','
                   << curve.retained_ranks[i] << "\n";
}

void run_phase(const std::string& deltas, int nmax, double target_shift,
               const std::string& schedule, double cutoff, const std::string& out,
               const std::string& json_out) {
    json cfg{{"command", "phase"}, {"deltas", deltas}, {"nmax", nmax},
             {"target-shift", target_shift}, {"schedule", schedule}, {"cutoff", cutoff}};
    auto table = completeness::phase_transition_experiment(
        parse_numbers(deltas), gauss::translate(target_shift), nmax, parse_ints(schedule),
        cutoff);
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "delta,n_max,residual_sq,retained_rank,cutoff,clip\n";
    for (const auto& row : table.rows)
        o.stream() << fmt(row.delta) << ',' << row.n_max << ',' << fmt(row.residual_sq) << ','
                   << row.retained_rank << ',' << fmt(row.cutoff) << ',' << fmt(row.clip)
                   << "\n";
    if (!json_out.empty()) {
        json doc{{"version", kVersion}, {"config", cfg}};
        for (const auto& row : table.rows) {
            json r{{"delta", row.delta}, {"n_max", row.n_max},
                   {"residual_sq", row.residual_sq}, {"retained_rank", row.retained_rank},
                   {"cutoff", row.cutoff}, {"clip", row.clip},
                   {"curve", {{"truncations", row.curve.truncations},
                              {"residuals_sq", row.curve.residuals_sq},
                              {"retained_ranks", row.curve.retained_ranks}}}};
            doc["rows"].push_back(std::move(r));
        }
        std::ofstream jf(json_out, std::ios::binary);
        if (!jf) throw std::invalid_argument("cannot open output file: " + json_out);
        jf << doc.dump(2) << "\n";
    }
}

void run_indicator(double delta, const std::string& thetas, const std::string& window,
                   int samples, const std::string& out) {
    json cfg{{"command", "indicator"}, {"delta", delta}, {"theta", thetas},
             {"window", window}, {"samples", samples}};
    auto [r_min, r_max] = parse_window(window);
    auto product = products::quartic_for_window(delta, r_max);
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "theta,r_min,r_max,h_hat,h_target,residual,excluded_count\n";
    for (double theta : parse_numbers(thetas)) {
        products::IndicatorWindow w{r_min, r_max};
        w.samples = samples;
        auto est = products::indicator_estimate(product, theta, w);
        o.stream() << fmt(theta) << ',' << fmt(r_min) << ',' << fmt(r_max) << ','
                   << fmt(est.h_hat) << ',' << fmt(products::indicator_target(delta, theta))
                   << ',' << fmt(est.residual) << ',' << est.excluded_radii.size() << "\n";
    }
}

void run_probe(double delta, const std::string& schedule, const std::string& out) {
    json cfg{{"command", "probe"}, {"delta", delta}, {"schedule", schedule}};
    auto sched = parse_numbers(schedule);
    if (sched.empty()) throw std::invalid_argument("probe: schedule must be non-empty");
    auto product = products::genus2_for_radius(delta, sched.back());
    auto probe = products::fock_membership_probe(product, sched);
    const char* verdict =
        probe.verdict == products::FockVerdict::consistent_converging   ? "converging"
        : probe.verdict == products::FockVerdict::consistent_diverging ? "diverging"
                                                                        : "inconclusive";
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "delta,verdict,growth_exponent,matches_dichotomy\n"
               << fmt(delta) << ',' << verdict << ',' << fmt(probe.trend.growth_exponent)
               << ',' << (probe.matches_dichotomy ? 1 : 0) << "\n";
}

void run_bargmann_check(const std::string& mus, const std::string& out) {
    json cfg{{"command", "bargmann-check"}, {"mu", mus}};
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "mu,real_line_dev,closed_form_dev\n";
    for (double mu : parse_numbers(mus)) {
        std::vector<double> grid;
        for (int i = 0; i <= 12; ++i) grid.push_back(-3.0 + 0.5 * i);
        const double line_dev = bargmann::real_line_identity_check(mu, grid);
        auto h = bargmann::bargmann_gaussian_translate(mu);
        auto f = gauss::translate(mu);
        double closed_dev = 0.0;
        for (bargmann::Complex z : {bargmann::Complex(0.0, 0.0), bargmann::Complex(1.0, 0.0),
                                    bargmann::Complex(0.0, 1.0),
                                    bargmann::Complex(0.5, -0.3)}) {
            auto numeric = bargmann::bargmann_numeric([&](double t) { return f(t); }, 1.0, z);
            closed_dev = std::max(closed_dev, std::abs(numeric - h.value(z)) /
                                                  std::max(1.0, std::abs(h.value(z))));
        }
        o.stream() << fmt(mu) << ',' << fmt(line_dev) << ',' << fmt(closed_dev) << "\n";
    }
}

void run_conv_check(double a, const std::string& out) {
    json cfg{{"command", "conv-check"}, {"a", a}};
    auto rep = gauss::convolution_identity_check(a);
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "a,b,paper_constant,oracle_constant,closed_form_constant,"
                  "shape_deviation,deviation_from_paper\n"
               << fmt(rep.a) << ',' << fmt(rep.b) << ',' << fmt(rep.paper_constant) << ','
               << fmt(rep.oracle_constant) << ',' << fmt(rep.closed_form_constant) << ','
               << fmt(rep.shape_deviation) << ',' << fmt(rep.deviation_from_paper) << "\n";
}

void run_envelope(double xi_max, int points, int lower_degree, int upper_degree,
                  const std::string& out) {
    json cfg{{"command", "envelope"}, {"xi-max", xi_max}, {"points", points},
             {"lower-degree", lower_degree}, {"upper-degree", upper_degree}};
    // Samples of |phi_hat| = e^{-pi xi^2} (self-dual Gaussian).
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < points; ++i) {
        const double xi = 0.1 + (xi_max - 0.1) * i / (points - 1.0);
        samples.emplace_back(xi, std::exp(-kPi * xi * xi));
    }
    auto fit = gauss::envelope_fit(samples, lower_degree, upper_degree);
    Output o(out);
    write_header(o.stream(), cfg);
    o.stream() << "lower_amplitude,lower_rate,lower_degree,upper_amplitude,upper_rate,"
                  "upper_degree,threshold_lower,threshold_upper\n"
               << fmt(fit.lower_amplitude) << ',' << fmt(fit.lower_rate) << ','
               << fit.lower_degree << ',' << fmt(fit.upper_amplitude) << ','
               << fmt(fit.upper_rate) << ',' << fit.upper_degree << ','
               << fmt(fit.threshold_lower) << ',' << fmt(fit.threshold_upper) << "\n";
}

struct SelftestCheck {
    std::string name;
    double max_dev = 0.0;
};

int run_selftest(double tol, bool as_json, unsigned seed, const std::string& out) {
    json cfg{{"command", "selftest"}, {"tol", tol}, {"json", as_json}, {"seed", seed}};
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<SelftestCheck> checks;

    {
        SelftestCheck c{"gram-entry-vs-quadrature"};
        for (int i = 0; i < 10; ++i) {
            const double l = uni(rng), m = uni(rng);
            const double closed = gauss::inner_product(gauss::translate(l), gauss::translate(m));
            numerics::DecayEnvelope env{1.0, kPi, 0.5 * (l + m), 5.0};
            auto f = gauss::translate(l);
            auto g = gauss::translate(m);
            // Distant translates have tiny inner products; scale the absolute
            // tolerance so the tail cutoff stays below the target's magnitude.
            numerics::QuadratureSpec spec;
            spec.abs_tol = std::max(1e-15, closed * 1e-13);
            const double quad = numerics::integrate_real_line(
                [&](double t) { return f(t) * g(t); }, env, spec);
            c.max_dev = std::max(c.max_dev, std::abs(closed - quad) / closed);
        }
        checks.push_back(c);
    }
    {
        SelftestCheck c{"bargmann-closed-form"};
        for (double mu : {0.0, 0.7, -1.1}) {
            auto h = bargmann::bargmann_gaussian_translate(mu);
            auto f = gauss::translate(mu);
            for (bargmann::Complex z : {bargmann::Complex(0.0, 0.0),
                                        bargmann::Complex(1.0, 0.5),
                                        bargmann::Complex(-0.3, 1.0)}) {
                auto numeric =
                    bargmann::bargmann_numeric([&](double t) { return f(t); }, 1.0, z);
                c.max_dev = std::max(c.max_dev, std::abs(numeric - h.value(z)) /
                                                    std::abs(h.value(z)));
            }
        }
        checks.push_back(c);
    }
    {
        SelftestCheck c{"convolution-identity"};
        for (double a : {1.5, 2.0, 3.0}) {
            auto rep = gauss::convolution_identity_check(a);
            c.max_dev = std::max(c.max_dev, rep.shape_deviation);
            c.max_dev = std::max(c.max_dev, std::abs(rep.oracle_constant -
                                                     rep.closed_form_constant) /
                                                rep.closed_form_constant);
        }
        checks.push_back(c);
    }
    {
        SelftestCheck c{"fourier-self-duality"};
        auto f = gauss::phi();
        auto fhat = gauss::fourier_transform(f);
        for (double xi : {0.0, 0.5, 1.0, 1.5}) {
            numerics::DecayEnvelope env{1.0, kPi, 0.0, 4.0};
            const double quad = numerics::integrate_real_line(
                [&](double t) { return f(t) * std::cos(2.0 * kPi * t * xi); }, env,
                numerics::QuadratureSpec{});
            c.max_dev = std::max(c.max_dev, std::abs(quad - fhat(xi)) / fhat(xi));
        }
        checks.push_back(c);
    }

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.max_dev <= tol;
    Output o(out);
    if (as_json) {
        json doc{{"version", kVersion}, {"config", cfg}, {"all_pass", all_pass}};
        for (const auto& c : checks)
            doc["checks"].push_back(
                {{"name", c.name}, {"max_dev", c.max_dev}, {"pass", c.max_dev <= tol}});
        o.stream() << doc.dump(2) << "\n";
    } else {
        write_header(o.stream(), cfg);
        o.stream() << "check,max_dev,tol,pass\n";
        for (const auto& c : checks)
            o.stream() << c.name << ',' << fmt(c.max_dev) << ',' << fmt(tol) << ','
                       << (c.max_dev <= tol ? "pass" : "FAIL") << "\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for Gaussian-translate spanning experiments"};
    app.require_subcommand(1);
    int exit_code = 0;

    double delta = 0.5, target_shift = 0.5, cutoff = 1e-12, a = 2.0;
    double xi_max = 4.0, tol = 1e-10;
    int n = 10000, grid = 16, nmax = 60, samples = 40, points = 40;
    int lower_degree = 0, upper_degree = 0;
    unsigned seed = 12345;
    bool as_json = false;
    std::string pattern = "symmetric", out, json_out;
    std::string eps_list = "0,0.5,1", deltas = "0.2,0.4,0.6,0.8,1.0";
    std::string schedule = "10,20,40,60", probe_schedule = "4,8,12";
    std::string thetas = "pi/4", window = "20:40", mus = "-1,0,1";

    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out, "output path or -"); };
    auto add_set = [&](CLI::App* cmd) {
        cmd->add_option("--delta", delta, "density per side");
        cmd->add_option("--pattern", pattern, "positive|negative|symmetric");
        cmd->add_option("--n", n, "points per generated side");
    };

    auto* c_density = app.add_subcommand("density", "density estimate of a generated set");
    add_set(c_density);
    c_density->add_option("--grid", grid, "radius grid size");
    add_out(c_density);
    c_density->callback([&] { run_density(delta, pattern, n, grid, out); });

    auto* c_sums = app.add_subcommand("sums", "partial sums of S(eps)");
    add_set(c_sums);
    c_sums->add_option("--eps", eps_list, "comma-separated epsilons");
    add_out(c_sums);
    c_sums->callback([&] { run_sums(delta, pattern, n, eps_list, out); });

    auto* c_gram = app.add_subcommand("gram", "Gram system diagnostics");
    add_set(c_gram);
    c_gram->add_option("--target-shift", target_shift, "target center");
    c_gram->add_option("--cutoff", cutoff, "relative spectral cutoff");
    add_out(c_gram);
    c_gram->callback([&] { run_gram(delta, pattern, n, target_shift, cutoff, out); });

    auto* c_project = app.add_subcommand("project", "projection residual of a target");
    add_set(c_project);
    c_project->add_option("--target-shift", target_shift, "target center");
    c_project->add_option("--cutoff", cutoff, "relative spectral cutoff");
    add_out(c_project);
    c_project->callback([&] { run_project(delta, pattern, n, target_shift, cutoff, out); });

    auto* c_curve = app.add_subcommand("curve", "residual curve over a truncation schedule");
    add_set(c_curve);
    c_curve->add_option("--target-shift", target_shift, "target center");
    c_curve->add_option("--schedule", schedule, "comma-separated truncations");
    c_curve->add_option("--cutoff", cutoff, "relative spectral cutoff");
    add_out(c_curve);
    c_curve->callback(
        [&] { run_curve(delta, pattern, n, target_shift, schedule, cutoff, out); });

    auto* c_phase = app.add_subcommand("phase", "phase-transition experiment across 1/2");
    c_phase->add_option("--deltas", deltas, "comma-separated density grid");
    c_phase->add_option("--nmax", nmax, "terminal truncation");
    c_phase->add_option("--target-shift", target_shift, "target center");
    c_phase->add_option("--schedule", schedule, "comma-separated truncations");
    c_phase->add_option("--cutoff", cutoff, "relative spectral cutoff");
    c_phase->add_option("--json-out", json_out, "full per-curve JSON path");
    add_out(c_phase);
    c_phase->callback(
        [&] { run_phase(deltas, nmax, target_shift, schedule, cutoff, out, json_out); });

    auto* c_ind = app.add_subcommand("indicator", "indicator estimates of the quartic product");
    c_ind->add_option("--delta", delta, "density per side");
    c_ind->add_option("--theta", thetas, "comma-separated angles (pi literals allowed)");
    c_ind->add_option("--window", window, "radius window r_min:r_max");
    c_ind->add_option("--samples", samples, "radii per window");
    add_out(c_ind);
    c_ind->callback([&] { run_indicator(delta, thetas, window, samples, out); });

    auto* c_probe = app.add_subcommand("probe", "Fock membership probe of the genus-2 product");
    c_probe->add_option("--delta", delta, "density per side");
    c_probe->add_option("--schedule", probe_schedule, "comma-separated radii");
    add_out(c_probe);
    c_probe->callback([&] { run_probe(delta, probe_schedule, out); });

    auto* c_barg = app.add_subcommand("bargmann-check", "closed form and real-line identity");
    c_barg->add_option("--mu", mus, "comma-separated translate centers");
    add_out(c_barg);
    c_barg->callback([&] { run_bargmann_check(mus, out); });

    auto* c_conv = app.add_subcommand("conv-check", "Gaussian convolution identity report");
    c_conv->add_option("--a", a, "width parameter, a > 1");
    add_out(c_conv);
    c_conv->callback([&] { run_conv_check(a, out); });

    auto* c_env = app.add_subcommand("envelope", "two-sided Gaussian envelope fit");
    c_env->add_option("--xi-max", xi_max, "largest frequency sample");
    c_env->add_option("--points", points, "sample count");
    c_env->add_option("--lower-degree", lower_degree, "polynomial degree of the lower bound");
    c_env->add_option("--upper-degree", upper_degree, "polynomial degree of the upper bound");
    add_out(c_env);
    c_env->callback(
        [&] { run_envelope(xi_max, points, lower_degree, upper_degree, out); });

    auto* c_self = app.add_subcommand("selftest", "closed-form vs quadrature cross-checks");
    c_self->add_option("--tol", tol, "relative tolerance");
    c_self->add_flag("--json", as_json, "machine-readable output");
    c_self->add_option("--seed", seed, "seed for randomized points");
    add_out(c_self);
    c_self->callback([&] { exit_code = run_selftest(tol, as_json, seed, out); });

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const numerics::QuadratureError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
