// emlsig: signatures, sawtooth signatures and Euler-Maclaurin checks from the command line.
//
// Exit codes: 0 success, 1 a verified identity exceeded its tolerance, 2 usage or input error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emlsig/bernoulli.hpp"
#include "emlsig/discrete.hpp"
#include "emlsig/eml.hpp"
#include "emlsig/io.hpp"
#include "emlsig/signature.hpp"

using namespace emlsig;

namespace {

constexpr int kPass = 0;
constexpr int kDefect = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Direction parse_direction(const std::string& s) {
    if (s == "forward")
        return Direction::forward;
    if (s == "backward")
        return Direction::backward;
    throw UsageError("direction must be forward or backward, got '" + s + "'");
}

// --tolerance beats EMLSIG_TOLERANCE, which beats the per-command default.
double resolve_tolerance(const std::optional<double>& flag, double fallback) {
    if (flag)
        return *flag;
    if (const char* env = std::getenv("EMLSIG_TOLERANCE")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("EMLSIG_TOLERANCE is not a number: ") + env);
        }
    }
    return fallback;
}

void emit(const Json& j, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(output);
    if (!out)
        throw ParseError("cannot write " + output);
    out << j.dump(2) << '\n';
}

TruncatedTensor random_datum(Rng& rng, std::size_t dim, std::size_t depth) {
    TruncatedTensor b(dim, depth);
    b.scalar() = 1.0;
    for (std::size_t k = 1; k <= depth; ++k)
        for (auto& c : b.level(k))
            c = rng.uniform(-1.0, 1.0);
    return b;
}

PolynomialMap random_polynomial(Rng& rng, std::size_t dim, std::size_t out_dim,
                                std::size_t max_degree) {
    PolynomialMap f(dim, out_dim);
    for (std::size_t r = 0; r < out_dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            for (int term = 0; term < 3; ++term) {
                std::vector<unsigned> exps(dim, 0);
                const auto deg = rng.integer(0, static_cast<long long>(max_degree));
                for (long long q = 0; q < deg; ++q)
                    ++exps[static_cast<std::size_t>(rng.integer(0, static_cast<long long>(dim) - 1))];
                f.add_monomial(r, c, exps, rng.uniform(-1.0, 1.0));
            }
    return f;
}

// ---------------------------------------------------------------- sig / flipsig

struct SigOptions {
    std::string input;
    std::size_t depth = 3;
    std::vector<double> interval;
    std::string output;
};

int run_sig(const SigOptions& o, bool flip) {
    const auto path = read_path_csv_file(o.input);
    double s = path.start();
    double t = path.end();
    if (!o.interval.empty()) {
        s = o.interval[0];
        t = o.interval[1];
    }
    const auto sig = flip ? flip_signature(path, s, t, o.depth) : signature(path, s, t, o.depth);
    emit(tensor_to_json(sig), o.output);
    return kPass;
}

// ---------------------------------------------------------------- sawtooth

struct SawtoothOptions {
    std::string input;
    std::string direction = "forward";
    std::string datum = "unit";
    std::size_t depth = 3;
    std::vector<double> at;
    std::string output;
};

int run_sawtooth(const SawtoothOptions& o) {
    const auto path = read_path_csv_file(o.input);
    const Direction dir = parse_direction(o.direction);
    TruncatedTensor b;
    if (o.datum == "unit")
        b = TruncatedTensor::unit(path.dim(), o.depth);
    else if (o.datum == "optimal")
        b = optimal_tensor(PathEnsemble::singleton(path), dir, o.depth);
    else
        b = tensor_from_json(read_json_file(o.datum));
    const auto z = sawtooth(path, b, dir, o.depth);
    Json samples = Json::array();
    for (double t : o.at)
        samples.push_back({{"t", t}, {"value", tensor_to_json(z.at(t))}});
    emit(Json{{"direction", to_string(dir)}, {"initial", tensor_to_json(z.initial())},
              {"samples", std::move(samples)}},
         o.output);
    return kPass;
}

// ---------------------------------------------------------------- eml

struct EmlOptions {
    std::string input;
    std::string poly;
    std::size_t order = 2;
    std::string direction = "backward";
    std::string ensemble;
    std::string datum;
    std::optional<std::uint64_t> seed;
    std::size_t paths = 0;
    std::optional<std::size_t> classical;
    std::string function;
    std::vector<double> coeffs;
    std::optional<double> tolerance;
    std::string output;
};

int run_eml(const EmlOptions& o) {
    const Direction dir = parse_direction(o.direction);
    const double tol = resolve_tolerance(o.tolerance, 1e-9);
    EmlReport rep;
    Json extra;

    if (o.classical) {
        const std::size_t n = *o.classical;
        if (!o.function.empty()) {
            if (o.function != "exp")
                throw UsageError("--function supports only 'exp'");
            const std::vector<RealFunction> derivs(o.order + 1,
                                                   [](double s) { return std::exp(s); });
            rep = classical_eml(derivs, n, o.order, dir);
        } else {
            if (o.coeffs.empty())
                throw UsageError("--classical needs --function exp or --coeffs c0,c1,...");
            const auto path = line_path(1.0, n);
            const auto f = PolynomialMap::univariate(o.coeffs);
            rep = generalized_eml(f, sample_integers(path), path, dir, o.order,
                                  PathEnsemble::singleton(path));
            extra["classical_remainder"] = classical_remainder(o.coeffs, n, o.order);
        }
    } else {
        if (o.input.empty() || o.poly.empty())
            throw UsageError("eml needs --input and --poly (or --classical N)");
        const auto path = read_path_csv_file(o.input);
        const auto x = sample_integers(path);
        const auto f = poly_map_from_json(read_json_file(o.poly));
        if (!o.datum.empty()) {
            rep = preliminary_eml(f, x, path, tensor_from_json(read_json_file(o.datum)), dir,
                                  o.order);
        } else {
            PathEnsemble ens = PathEnsemble::singleton(path);
            if (!o.ensemble.empty())
                ens = ensemble_from_json(read_json_file(o.ensemble));
            else if (o.seed)
                ens = seeded_ensemble(path, *o.seed, o.paths);
            rep = generalized_eml(f, x, path, dir, o.order, ens);
        }
    }
    Json j = report_to_json(rep);
    j["tolerance"] = tol;
    j["pass"] = rep.residual < tol;
    for (auto& [k, v] : extra.items())
        j[k] = v;
    emit(j, o.output);
    return rep.residual < tol ? kPass : kDefect;
}

// ---------------------------------------------------------------- bernoulli

struct BernoulliOptions {
    std::size_t count = 8;
    std::optional<double> lambda;
    std::string moments;
    std::size_t horizon = 1;
    std::string direction = "forward";
    std::string output;
};

int run_bernoulli(const BernoulliOptions& o) {
    const Direction dir = parse_direction(o.direction);
    std::vector<double> moments;
    if (o.lambda) {
        if (!(*o.lambda > 0.0))
            throw UsageError("--lambda must be positive");
        for (std::size_t k = 1; k <= o.count + 1; ++k)
            moments.push_back(std::pow(*o.lambda, static_cast<double>(k)));
    } else if (!o.moments.empty()) {
        try {
            moments = read_json_file(o.moments).get<std::vector<double>>();
        } catch (const Json::exception& e) {
            throw ParseError(o.moments + ": expected an array of moments: " + e.what());
        }
    } else {
        throw UsageError("bernoulli needs --lambda or --moments");
    }
    const auto b = optimal_tensor_lambda(moments, dir, o.count, o.horizon);
    const auto table = bernoulli_numbers(
        dir == Direction::forward ? BernoulliSign::minus : BernoulliSign::plus, o.count);
    Json levels = Json::array();
    for (std::size_t l = 0; l <= o.count; ++l)
        levels.push_back({{"level", l},
                          {"value", b.level(l)[0]},
                          {"bernoulli", table.values[l]},
                          {"bernoulli_over_factorial", table.values[l] / factorial(l)}});
    emit(Json{{"direction", to_string(dir)}, {"horizon", o.horizon}, {"levels", std::move(levels)}},
         o.output);
    return kPass;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    std::string suite;
    std::uint64_t seed = 1;
    std::size_t trials = 20;
    std::string input;
    std::optional<double> tolerance;
    std::string output;
};

struct Check {
    Json parameters;
    double defect = 0.0;
};

std::vector<Check> verify_chen(Rng& rng, std::size_t trials) {
    std::vector<Check> out;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto d = static_cast<std::size_t>(rng.integer(1, 3));
        const auto n = static_cast<std::size_t>(rng.integer(2, 5));
        const auto p = static_cast<std::size_t>(rng.integer(1, 5));
        const auto path = random_path(rng, d, n);
        const double u = rng.uniform(0.0, static_cast<double>(n));
        const double t = static_cast<double>(n);
        const auto whole = signature(path, 0.0, t, p);
        const auto split = tensor_mul(signature(path, 0.0, u, p), signature(path, u, t, p));
        const auto flip_split =
            tensor_mul(flip_signature(path, u, t, p), flip_signature(path, 0.0, u, p));
        const double defect = std::max(max_abs_diff(whole, split),
                                       max_abs_diff(flip_signature(path, 0.0, t, p), flip_split));
        out.push_back({{{"dim", d}, {"horizon", n}, {"depth", p}, {"split", u}}, defect});
    }
    return out;
}

std::vector<Check> verify_hoffman(Rng& rng, std::size_t trials) {
    std::vector<Check> out;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto d = static_cast<std::size_t>(rng.integer(1, 3));
        const auto n = static_cast<std::size_t>(rng.integer(1, 6));
        const auto x = random_integer_series(rng, d, n, -3, 3);
        out.push_back({{{"dim", d}, {"horizon", n}, {"word_length", 4}},
                       hoffman_identity_check(x, n, 4)});
    }
    return out;
}

template <class F>
std::vector<Check> verify_interpolation(Rng& rng, std::size_t trials, F&& check) {
    std::vector<Check> out;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto d = static_cast<std::size_t>(rng.integer(1, 2));
        const auto n = static_cast<std::size_t>(rng.integer(1, 5));
        const auto path = random_path(rng, d, n);
        out.push_back({{{"dim", d}, {"horizon", n}, {"depth", 4}},
                       check(sample_integers(path), path, 4)});
    }
    return out;
}

std::vector<Check> verify_eml(Rng& rng, std::size_t trials, const std::string& input) {
    std::optional<PiecewiseLinearPath> fixed;
    if (!input.empty())
        fixed = read_path_csv_file(input);
    std::vector<Check> out;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::size_t d = fixed ? fixed->dim() : static_cast<std::size_t>(rng.integer(1, 2));
        const std::size_t n = fixed ? fixed->horizon() : static_cast<std::size_t>(rng.integer(1, 4));
        const auto path = fixed ? *fixed : random_path(rng, d, n);
        const auto m = static_cast<std::size_t>(rng.integer(2, 5));
        const auto f = random_polynomial(rng, d, 1, 4);
        const auto b = random_datum(rng, d, 5);
        const Direction dir = rng.integer(0, 1) ? Direction::forward : Direction::backward;
        const auto rep = preliminary_eml(f, sample_integers(path), path, b, dir, m);
        out.push_back({{{"dim", d}, {"horizon", n}, {"order", m}, {"direction", to_string(dir)}},
                       rep.residual});
    }
    return out;
}

std::vector<Check> verify_optimality(Rng& rng, std::size_t trials, std::uint64_t seed) {
    const auto d = static_cast<std::size_t>(rng.integer(1, 2));
    const auto n = static_cast<std::size_t>(rng.integer(2, 4));
    const PathEnsemble ens(
        {{random_path(rng, d, n), 0.5}, {random_path(rng, d, n), 0.5}});
    std::vector<Check> out;
    for (Direction dir : {Direction::forward, Direction::backward}) {
        const auto rep = optimality_check(ens, dir, 3, trials, seed);
        // A negative margin means a perturbation beat the recursion value.
        out.push_back({{{"dim", d}, {"horizon", n}, {"depth", 3}, {"direction", to_string(dir)},
                        {"worst_margin", rep.worst_margin}},
                       rep.minimal ? 0.0 : -rep.worst_margin});
    }
    return out;
}

int run_verify(const VerifyOptions& o) {
    Rng rng(o.seed);
    std::vector<Check> checks;
    double fallback = 1e-10;
    if (o.suite == "chen") {
        checks = verify_chen(rng, o.trials);
    } else if (o.suite == "hoffman") {
        checks = verify_hoffman(rng, o.trials);
        fallback = 1e-9;
    } else if (o.suite == "sawtooth-recursion") {
        checks = verify_interpolation(rng, o.trials, sawtooth_recursion_check);
    } else if (o.suite == "discrete-expansion") {
        checks = verify_interpolation(rng, o.trials, discrete_signature_expansion_check);
    } else if (o.suite == "eml") {
        checks = verify_eml(rng, o.trials, o.input);
    } else if (o.suite == "optimality") {
        checks = verify_optimality(rng, o.trials, o.seed);
        fallback = 1e-12;
    } else {
        throw UsageError("unknown suite '" + o.suite + "'");
    }
    const double tol = resolve_tolerance(o.tolerance, fallback);

    double worst = 0.0;
    Json failures = Json::array();
    for (std::size_t i = 0; i < checks.size(); ++i) {
        worst = std::max(worst, checks[i].defect);
        if (!(checks[i].defect < tol))
            failures.push_back({{"trial", i}, {"parameters", checks[i].parameters},
                                {"defect", checks[i].defect}});
    }
    const bool pass = failures.empty();
    emit(Json{{"identity", o.suite},
              {"parameters", {{"seed", o.seed}, {"trials", o.trials}, {"tolerance", tol}}},
              {"max_defect", worst},
              {"pass", pass},
              {"failures", std::move(failures)}},
         o.output);
    return pass ? kPass : kDefect;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path signatures, sawtooth signatures and Euler-Maclaurin verification"};
    app.require_subcommand(1);

    SigOptions sig_opts;
    SigOptions flip_opts;
    for (auto [name, opts, what] :
         {std::tuple{"sig", &sig_opts, "Signature of a piecewise-linear path"},
          std::tuple{"flipsig", &flip_opts, "Flip signature of a piecewise-linear path"}}) {
        auto* cmd = app.add_subcommand(name, what);
        cmd->add_option("input", opts->input, "CSV path file (t,x1,...,xd)")->required();
        cmd->add_option("-p,--depth", opts->depth, "Truncation depth")->capture_default_str();
        cmd->add_option("--interval", opts->interval, "Time interval s t")->expected(2);
        cmd->add_option("-o,--output", opts->output, "Output file (default stdout)");
    }

    SawtoothOptions saw;
    auto* saw_cmd = app.add_subcommand("sawtooth", "Sample a sawtooth signature");
    saw_cmd->add_option("input", saw.input, "CSV path file with integer knots")->required();
    saw_cmd->add_option("--direction", saw.direction, "forward or backward")->capture_default_str();
    saw_cmd->add_option("--b", saw.datum, "Initial datum: unit, optimal or a tensor JSON file")
        ->capture_default_str();
    saw_cmd->add_option("-p,--depth", saw.depth, "Truncation depth")->capture_default_str();
    saw_cmd->add_option("--at", saw.at, "Evaluation times")->required();
    saw_cmd->add_option("-o,--output", saw.output, "Output file (default stdout)");

    EmlOptions eml;
    auto* eml_cmd = app.add_subcommand("eml", "Euler-Maclaurin formula for a Riemann-Stieltjes sum");
    eml_cmd->add_option("--input", eml.input, "CSV path file with integer knots");
    eml_cmd->add_option("--poly", eml.poly, "Polynomial map JSON file");
    eml_cmd->add_option("-m,--order", eml.order, "Order m")->capture_default_str();
    eml_cmd->add_option("--direction", eml.direction, "forward or backward")->capture_default_str();
    auto* ens_opt = eml_cmd->add_option("--ensemble", eml.ensemble, "Ensemble JSON file");
    auto* seed_opt = eml_cmd->add_option("--seed", eml.seed, "Seed for a random ensemble");
    eml_cmd->add_option("--paths", eml.paths, "Random paths added to the ensemble")
        ->needs(seed_opt);
    ens_opt->excludes(seed_opt);
    eml_cmd->add_option("--b", eml.datum, "Use this tensor JSON file as initial datum instead")
        ->excludes(ens_opt)
        ->excludes(seed_opt);
    eml_cmd->add_option("--classical", eml.classical, "Classical case X_t = t on [0, N]");
    eml_cmd->add_option("--function", eml.function, "Callable integrand for --classical (exp)");
    eml_cmd->add_option("--coeffs", eml.coeffs, "Polynomial coefficients c0,c1,... for --classical")
        ->delimiter(',');
    eml_cmd->add_option("--tolerance", eml.tolerance, "Residual tolerance");
    eml_cmd->add_option("-o,--output", eml.output, "Output file (default stdout)");

    BernoulliOptions bern;
    auto* bern_cmd = app.add_subcommand("bernoulli", "Optimal tensors of X_t = alpha t");
    bern_cmd->add_option("--count", bern.count, "Highest level")->capture_default_str();
    auto* lambda_opt = bern_cmd->add_option("--lambda", bern.lambda, "Deterministic slope");
    bern_cmd->add_option("--moments", bern.moments, "JSON array E[alpha^1], E[alpha^2], ...")
        ->excludes(lambda_opt);
    bern_cmd->add_option("--horizon", bern.horizon, "Horizon N")->capture_default_str();
    bern_cmd->add_option("--direction", bern.direction, "forward or backward")
        ->capture_default_str();
    bern_cmd->add_option("-o,--output", bern.output, "Output file (default stdout)");

    VerifyOptions ver;
    auto* ver_cmd = app.add_subcommand("verify", "Randomised identity checks");
    ver_cmd
        ->add_option("--suite", ver.suite,
                     "chen, hoffman, sawtooth-recursion, discrete-expansion, eml or optimality")
        ->required();
    ver_cmd->add_option("--seed", ver.seed, "Seed")->capture_default_str();
    ver_cmd->add_option("--trials", ver.trials, "Number of trials")->capture_default_str();
    ver_cmd->add_option("--input", ver.input, "Fixed CSV path for the eml suite");
    ver_cmd->add_option("--tolerance", ver.tolerance, "Defect tolerance");
    ver_cmd->add_option("-o,--output", ver.output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (app.got_subcommand("sig"))
            return run_sig(sig_opts, false);
        if (app.got_subcommand("flipsig"))
            return run_sig(flip_opts, true);
        if (app.got_subcommand("sawtooth"))
            return run_sawtooth(saw);
        if (app.got_subcommand("eml"))
            return run_eml(eml);
        if (app.got_subcommand("bernoulli"))
            return run_bernoulli(bern);
        return run_verify(ver);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
