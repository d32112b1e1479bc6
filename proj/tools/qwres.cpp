// qwres command-line interface.
//
// Exit codes: 0 success, 1 domain error (bad input, inadmissible coin,
// malformed JSON), 2 verification failure.

#include "qwres/acceptance.hpp"
#include "qwres/errors.hpp"
#include "qwres/expansion.hpp"
#include "qwres/gallery.hpp"
#include "qwres/io.hpp"
#include "qwres/observables.hpp"
#include "qwres/parallel.hpp"
#include "qwres/resonance.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace qwres;

namespace {

constexpr double kDynamicRangeWarn = 1e12;

// Thrown when a check requested on the command line fails.
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntervalZ parse_interval(const std::string& s) {
    int a = 0, b = 0;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> a >> comma >> b) || comma != ',' || !is.eof() || a > b)
        throw DomainError("interval '" + s + "': expected a,b with a <= b");
    return IntervalZ::of(a, b);
}

cplx parse_complex(const std::string& s) {
    double re = 0, im = 0;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> re)) throw DomainError("complex '" + s + "': expected re or re,im");
    if (is >> comma) {
        if (comma != ',' || !(is >> im)) throw DomainError("complex '" + s + "': expected re,im");
    }
    return {re, im};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("list '" + s + "': '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw DomainError("list '" + s + "' is empty");
    return out;
}

json resonance_json(const Resonance& r) {
    return json{{"re", r.lambda.real()}, {"im", r.lambda.imag()}, {"mult", r.mult}, {"residual", r.residual}};
}

json summary_json(const SpectrumSummary& s) {
    json j{{"Lambda0", s.Lambda0}, {"m0", s.m0}, {"sum_mult", s.sum_mult}, {"budget", s.budget}};
    if (s.zero_dim) j["zero_dim"] = *s.zero_dim;
    return j;
}

void emit(const json& j, const std::string& out) {
    const std::string text = j.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_text_atomic(out, text);
}

void warn_dynamic_range(double dr) {
    if (dr > kDynamicRangeWarn)
        std::cerr << "warning: sigma coefficient dynamic range " << dr << " exceeds " << kDynamicRangeWarn
                  << "; roots may be inaccurate\n";
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// x,n,amp rows over the final window for n = 0..n_max.
std::string heatmap_csv(const CoinSequence& coins, const WalkState& psi, int n_max) {
    std::vector<WalkState> frames{psi};
    for (int n = 1; n <= n_max; ++n) frames.push_back(apply_U(coins, frames.back()));
    const IntervalZ w = frames.back().window().hull(psi.window());
    std::ostringstream os;
    os << "x,n,amp\n";
    for (int n = 0; n <= n_max; ++n)
        for (int x = w.lo; x <= w.hi; ++x)
            os << x << "," << n << "," << fmt_double(frames[static_cast<size_t>(n)].at(x).norm()) << "\n";
    return os.str();
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string walk, state, out, plot;
    int n = 0;
};

int run_simulate(const SimulateArgs& a) {
    if (a.n < 0) throw DomainError("simulate: -n must be non-negative");
    const CoinSequence coins = read_walk(a.walk);
    const WalkState psi = read_state(a.state);
    const WalkState s = evolve(coins, psi, a.n);
    json j{{"n", a.n}, {"norm", s.norm()}, {"initial_norm", psi.norm()}, {"state", state_to_json(s)}};
    emit(j, a.out);
    if (!a.plot.empty()) write_text_atomic(a.plot, heatmap_csv(coins, psi, a.n));
    return 0;
}

// --- sigma ------------------------------------------------------------------

int run_sigma(const std::string& walk, const std::string& out) {
    const CoinSequence coins = read_walk(walk);
    if (coins.is_free()) throw DomainError("sigma: the free walk has no transfer product");
    const SigmaPoly s = sigma(coins);
    json coeffs = json::array();
    for (cplx c : s.coeffs) coeffs.push_back(to_json(c));
    json j{{"k", s.k}, {"coeffs", coeffs}, {"delta", to_json(s.delta)}, {"dynamic_range", s.dynamic_range()}};
    warn_dynamic_range(s.dynamic_range());
    emit(j, out);
    return 0;
}

// --- resonances -------------------------------------------------------------

struct ResonancesArgs {
    std::string walk, out, method = "sigma";
    double tol = 1e-9;
    bool incoming = false;
};

int run_resonances(const ResonancesArgs& a) {
    const CoinSequence coins = read_walk(a.walk);
    const Method m = a.method == "cutoff" ? Method::cutoff : a.method == "both" ? Method::both : Method::sigma;
    const ResonanceReport rep = find_resonances(coins, m);
    warn_dynamic_range(rep.dynamic_range);
    json list = json::array();
    for (const auto& r : rep.resonances) {
        list.push_back(resonance_json(r));
        if (r.residual > a.tol)
            std::cerr << "warning: resonance " << r.lambda << " has relative residual " << r.residual << " > "
                      << a.tol << "\n";
    }
    json j{{"resonances", list}, {"summary", summary_json(rep.summary)}};
    if (rep.cross_distance) j["cross_distance"] = *rep.cross_distance;
    if (a.incoming) {
        json inc = json::array();
        for (const auto& r : incoming_resonances(coins)) inc.push_back(resonance_json(r));
        j["incoming"] = inc;
    }
    emit(j, a.out);
    if (rep.cross_distance && !(*rep.cross_distance <= 1e-6))
        throw VerificationFailure("sigma roots and cut-off eigenvalues disagree");
    return 0;
}

// --- states -----------------------------------------------------------------

struct StatesArgs {
    std::string walk, out, lambda, window, plot, state_out;
};

int run_states(const StatesArgs& a) {
    const CoinSequence coins = read_walk(a.walk);
    if (coins.is_free()) throw DomainError("states: the free walk has no resonances");
    const IntervalZ win = a.window.empty() ? coins.hull().neighborhood(10) : parse_interval(a.window);
    std::vector<Resonance> targets;
    const auto found = find_resonances(coins).resonances;
    if (a.lambda.empty()) {
        targets = found;
    } else {
        const cplx z = parse_complex(a.lambda);
        Resonance r{z, 1, ResonanceKind::outgoing, 0.0};
        for (const auto& f : found)
            if (std::abs(f.lambda - z) <= 1e-6 * std::max(1.0, std::abs(z))) r = f;
        targets.push_back(r);
    }
    json list = json::array();
    std::ostringstream plot;
    plot << "lambda_index,k,x,abs_L,abs_R,amp\n";
    for (size_t i = 0; i < targets.size(); ++i) {
        const Resonance& r = targets[i];
        const ResonantChain ch = r.mult > 1 ? jordan_chain(coins, r) : resonant_state(coins, r.lambda);
        json members = json::array();
        for (int k = 1; k <= ch.length(); ++k) {
            const WalkState s = ch.state(k, win);
            members.push_back(state_to_json(s));
            for (int x = win.lo; x <= win.hi; ++x) {
                const Vec2 v = s.at(x);
                plot << i << "," << k << "," << x << "," << fmt_double(std::abs(v(0))) << ","
                     << fmt_double(std::abs(v(1))) << "," << fmt_double(v.norm()) << "\n";
            }
        }
        list.push_back(json{{"lambda", to_json(ch.lambda())},
                            {"mult", ch.length()},
                            {"c_minus", to_json(ch.c_minus())},
                            {"c_plus", to_json(ch.c_plus())},
                            {"residual", ch.residual(coins)},
                            {"window", json::array({win.lo, win.hi})},
                            {"members", members}});
    }
    emit(json{{"states", list}}, a.out);
    if (!a.plot.empty()) write_text_atomic(a.plot, plot.str());
    if (!a.state_out.empty()) {
        if (targets.size() != 1) throw DomainError("states: --state-out needs a single --lambda");
        const ResonantChain ch = resonant_state(coins, targets[0].lambda);
        write_text_atomic(a.state_out, state_to_json(ch.state(1, win)).dump(2) + "\n");
    }
    return 0;
}

// --- expand -----------------------------------------------------------------

struct ExpandArgs {
    std::string walk, state, out, J;
    int predict = -1;
    bool verify = false;
};

int run_expand(const ExpandArgs& a) {
    const CoinSequence coins = read_walk(a.walk);
    const WalkState psi = read_state(a.state);
    const IntervalZ J = parse_interval(a.J);
    const ExpansionResult e = expand(coins, psi, J);
    json terms = json::array();
    for (const auto& t : e.terms) {
        json coeffs = json::array();
        for (cplx c : t.coeffs) coeffs.push_back(to_json(c));
        terms.push_back(json{{"lambda", to_json(t.res.lambda)}, {"mult", t.res.mult}, {"coeffs", coeffs}, {"active", t.active}});
    }
    json j{{"J", json::array({J.lo, J.hi})},
           {"terms", terms},
           {"zero_dim", e.zero_dim},
           {"zero_part_norm", e.phi0.norm()},
           {"residual", e.residual},
           {"condition", e.condition},
           {"Lambda_psi", e.Lambda_psi},
           {"Lambda_prime", e.Lambda_prime},
           {"warnings", e.warnings}};
    for (const auto& w : e.warnings) std::cerr << "warning: " << w << "\n";
    if (a.predict >= 0) {
        const WalkState p = predict_evolution(e, a.predict);
        j["prediction"] = json{{"n", a.predict}, {"state", state_to_json(p)}};
    }
    bool failed = false;
    if (a.verify) {
        const int n_hi = a.predict > 2 * J.size() ? a.predict : 200;
        double err_chain = 0.0, err_printed = 0.0;
        WalkState cur = psi;
        for (int n = 1; n <= n_hi; ++n) {
            cur = apply_U(coins, cur);
            if (n <= 2 * J.size()) continue;
            const IntervalZ reg = prediction_region(J, n);
            err_chain = std::max(err_chain, max_distance(predict_evolution(e, n, Indexing::chain), cur, reg));
            err_printed = std::max(err_printed, max_distance(predict_evolution(e, n, Indexing::printed), cur, reg));
        }
        const double scale = psi.norm();
        j["verify"] = json{{"n_max", n_hi},
                           {"max_error", err_chain / scale},
                           {"max_error_printed_indexing", err_printed / scale},
                           {"tolerance", 1e-8}};
        failed = !(err_chain <= 1e-8 * scale) || !(e.residual <= 1e-8);
    }
    emit(j, a.out);
    if (failed) throw VerificationFailure("expansion does not reproduce the evolution");
    return 0;
}

// --- observe ----------------------------------------------------------------

struct ObserveArgs {
    std::string walk, state, out, J, csv, plot, format = "json";
    int n_max = 500;
    bool survival = false, tau = false, weak = false;
    int mu = -1;
};

int run_observe(const ObserveArgs& a) {
    const CoinSequence coins = read_walk(a.walk);
    const WalkState psi = read_state(a.state);
    const IntervalZ J = parse_interval(a.J);
    if (a.n_max < 1) throw DomainError("observe: --n-max must be positive");
    const SurvivalSeries surv = survival(coins, psi, J, a.n_max);
    const auto wl = weak_limit_series(coins, psi, a.n_max);

    std::ostringstream csv;
    csv << "n,survival,c_plus,c_minus,flat_norm\n";
    for (int n = 0; n <= a.n_max; ++n) {
        const auto& w = wl[static_cast<size_t>(n)];
        csv << n << "," << fmt_double(surv.s[static_cast<size_t>(n)]) << "," << fmt_double(w.c_plus) << ","
            << fmt_double(w.c_minus) << "," << fmt_double(w.flat) << "\n";
    }
    if (!a.csv.empty()) write_text_atomic(a.csv, csv.str());
    if (!a.plot.empty()) write_text_atomic(a.plot, heatmap_csv(coins, psi, a.n_max));

    const bool any = a.survival || a.tau || a.weak || a.mu >= 0;
    json j{{"J", json::array({J.lo, J.hi})}, {"n_max", a.n_max}};
    if (a.survival || !any) {
        const DecayReport& r = surv.report;
        j["survival"] = json{{"fit_slope", r.fit.slope},
                             {"fit_intercept", r.fit.intercept},
                             {"fit_residual", r.fit.residual},
                             {"fit_range", json::array({r.fit.n_lo, r.fit.n_hi})},
                             {"fit_degree", r.fit.degree},
                             {"predicted_slope", r.Lambda_psi > 0.0 ? std::log(r.Lambda_psi) : -INFINITY},
                             {"Lambda0", r.Lambda0},
                             {"m0", r.m0},
                             {"Lambda_psi", r.Lambda_psi},
                             {"p_psi", r.p_psi},
                             {"M", r.M},
                             {"M_prime", r.M_prime},
                             {"M_prime_bound", r.M_prime_bound},
                             {"envelope_ok", r.envelope_ok},
                             {"partial", r.partial}};
        if (r.partial) std::cerr << "warning: survival underflowed; fit range shortened\n";
    }
    if (a.tau) {
        const SurvivalReport t = mean_survival_time(coins, psi, J, a.n_max);
        j["tau"] = json{{"tau", t.tau},
                        {"tail_bound", t.tail_bound},
                        {"bound_Lambda0", t.bound_Lambda0},
                        {"bound_Lambda_psi", t.bound_Lambda_psi},
                        {"bound", t.bound()}};
    }
    if (a.weak) {
        const auto& w = wl.back();
        j["weak_limit"] = json{{"n", w.n}, {"c_plus", w.c_plus}, {"c_minus", w.c_minus}, {"flat", w.flat}};
    }
    if (a.mu >= 0) {
        const Distribution d = distribution(coins, psi, a.mu);
        const ExpansionResult e = expand(coins, psi, J);
        json pts = json::array();
        for (int x = d.window.lo; x <= d.window.hi; ++x) {
            const PointwisePrediction p = pointwise_asymptotics(e, x, a.mu);
            pts.push_back(json{{"x", x}, {"mu", d.at(x)}, {"predicted", p.mu}, {"bound", p.bound}, {"valid", p.valid}});
        }
        j["mu"] = json{{"n", a.mu}, {"total", d.total}, {"points", pts}};
    }
    if (a.format == "csv") {
        std::cout << csv.str();
        if (!a.out.empty()) emit(j, a.out);
    } else {
        emit(j, a.out);
    }
    return 0;
}

// --- gallery ----------------------------------------------------------------

json resonances_json(const std::vector<Resonance>& res) {
    json list = json::array();
    for (const auto& r : res) list.push_back(resonance_json(r));
    return list;
}

struct GalleryArgs {
    int k = 10;
    double r = 1.0 / std::numbers::sqrt2;
    double rm1 = 0.75, r0 = 12.0 / 13.0, r1 = 1.0 / 3.0;
    std::uint64_t seed = 1;
    int max_sites = 8, stride = 1;
    bool real = false;
    std::string out, walk_out;
};

void gallery_finish(const json& j, const CoinSequence& coins, const GalleryArgs& a) {
    emit(j, a.out);
    if (!a.walk_out.empty()) write_text_atomic(a.walk_out, walk_to_json(coins).dump(2) + "\n");
}

int run_double_barrier(const GalleryArgs& a) {
    const DoubleBarrier d = double_barrier(a.k, a.r);
    json closed = json::array();
    for (cplx z : d.resonances) closed.push_back(to_json(z));
    json j{{"model", "double-barrier"},
           {"k", a.k},
           {"r", a.r},
           {"walk", walk_to_json(d.coins)},
           {"alpha", to_json(d.alpha)},
           {"closed_form", closed},
           {"resonances", resonances_json(find_resonances(d.coins).resonances)}};
    gallery_finish(j, d.coins, a);
    return 0;
}

int run_triple_barrier(const GalleryArgs& a) {
    const TripleBarrier t = triple_barrier(a.rm1, a.r0, a.r1);
    json q = json::array();
    for (cplx c : t.quartic) q.push_back(to_json(c));
    json j{{"model", "triple-barrier"},
           {"r", json::array({a.rm1, a.r0, a.r1})},
           {"walk", walk_to_json(t.coins)},
           {"quartic", q},
           {"multiplicity_two", t.multiplicity_two},
           {"resonances", resonances_json(find_resonances(t.coins).resonances)}};
    gallery_finish(j, t.coins, a);
    return 0;
}

int run_random(const GalleryArgs& a) {
    std::mt19937_64 rng(a.seed);
    RandomWalkOptions opt;
    opt.max_sites = a.max_sites;
    opt.stride = a.stride;
    opt.real = a.real;
    const CoinSequence w = random_walk(rng, opt);
    json j{{"model", "random"}, {"seed", a.seed}, {"walk", walk_to_json(w)},
           {"resonances", resonances_json(find_resonances(w).resonances)}};
    gallery_finish(j, w, a);
    return 0;
}

// --- perturb ----------------------------------------------------------------

struct PerturbArgs {
    std::string walk, out, eps = "1e-3,1e-4,1e-5", track = "multiple";
    int grid = 16;
};

int run_perturb(const PerturbArgs& a) {
    const CoinSequence coins = read_walk(a.walk);
    if (coins.is_free()) throw DomainError("perturb: the free walk has nothing to perturb");
    if (a.grid < 1) throw DomainError("perturb: --theta-grid must be positive");
    const std::vector<double> eps = parse_list(a.eps);
    for (double e : eps)
        if (!(e > 0.0 && e <= 1e-2)) throw DomainError("perturb: eps must lie in (0, 1e-2]");
    const auto res = find_resonances(coins).resonances;
    std::vector<Resonance> targets;
    if (a.track == "multiple" || a.track == "lambda0") {
        for (const auto& r : res)
            if (r.mult > 1) targets.push_back(r);
        if (targets.empty()) targets = res;
    } else if (a.track == "all") {
        targets = res;
    } else {
        const cplx z = parse_complex(a.track);
        for (const auto& r : res)
            if (std::abs(r.lambda - z) <= 1e-6 * std::max(1.0, std::abs(z))) targets.push_back(r);
        if (targets.empty()) throw DomainError("perturb: --track " + a.track + " is not a resonance");
    }
    const SigmaPoly s = sigma(coins);
    json out = json::array();
    for (const auto& r : targets) {
        const double scale = poly_eval_abs(s.coeffs, std::abs(r.lambda));
        std::vector<json> rows(static_cast<size_t>(a.grid));
        parallel_for(a.grid, [&](int i) {
            const double theta = 2.0 * std::numbers::pi * i / a.grid;
            std::vector<SplitTrack> tracks;
            for (double e : eps) tracks.push_back(track_split(coins, r, theta, e));
            json per = json::array();
            for (const auto& t : tracks) {
                json near = json::array();
                for (const auto& n : t.near) near.push_back(resonance_json(n));
                per.push_back(json{{"eps", t.eps},
                                   {"displacement", t.displacement},
                                   {"predicted", t.predicted},
                                   {"all_simple", t.all_simple},
                                   {"roots", near}});
            }
            const cplx g = tracks.front().gamma;
            rows[static_cast<size_t>(i)] = json{{"theta", theta},
                                                {"gamma", to_json(g)},
                                                {"generic", std::abs(g) > 1e-8 * scale},
                                                {"slope", tracks.size() > 1 ? loglog_slope(tracks) : NAN},
                                                {"tracks", per}};
        });
        out.push_back(json{{"lambda0", to_json(r.lambda)},
                           {"mult", r.mult},
                           {"c", to_json(track_split(coins, r, 0.0, eps.front()).c)},
                           {"sweep", rows}});
    }
    emit(json{{"perturbations", out}}, a.out);
    return 0;
}

// --- verify -----------------------------------------------------------------

int run_verify(const std::string& suite, const std::vector<int>& only, const std::string& out) {
    if (suite != "paper") throw DomainError("verify: unknown suite '" + suite + "' (available: paper)");
    std::vector<CriterionResult> results;
    if (only.empty())
        results = run_acceptance();
    else
        for (int id : only) results.push_back(run_criterion(id));
    bool all = true;
    json list = json::array();
    for (const auto& r : results) {
        std::cout << format_result(r) << "\n";
        all = all && r.pass;
        list.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    if (!out.empty()) write_text_atomic(out, json{{"criteria", list}}.dump(2) + "\n");
    return all ? 0 : 2;
}

// "--r -1=0.75" names the left barrier of the triple barrier.
std::vector<std::string> normalize_args(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    for (size_t i = 1; i + 1 < args.size(); ++i) {
        if (args[i] == "--r" && args[i + 1].rfind("-1=", 0) == 0) {
            args[i] = "--rm1";
            args[i + 1] = args[i + 1].substr(3);
        }
    }
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonances of finitely perturbed quantum walks on Z"};
    app.require_subcommand(1);
    std::function<int()> action;

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Evolve a state: U^n psi");
    c_sim->add_option("walk", sim.walk, "Walk JSON")->required();
    c_sim->add_option("state", sim.state, "State JSON")->required();
    c_sim->add_option("-n", sim.n, "Number of steps")->required();
    c_sim->add_option("--out", sim.out, "Write JSON here instead of stdout");
    c_sim->add_option("--emit-plotdata", sim.plot, "Heatmap CSV with columns x,n,amp (amp = ||U^n psi(x)||)");
    c_sim->callback([&] { action = [&] { return run_simulate(sim); }; });

    std::string sig_walk, sig_out;
    auto* c_sig = app.add_subcommand("sigma", "Coefficients of sigma (ascending powers) and Delta");
    c_sig->add_option("walk", sig_walk, "Walk JSON")->required();
    c_sig->add_option("--out", sig_out, "Write JSON here instead of stdout");
    c_sig->callback([&] { action = [&] { return run_sigma(sig_walk, sig_out); }; });

    ResonancesArgs ra;
    auto* c_res = app.add_subcommand("resonances", "Non-zero resonances with multiplicities");
    c_res->add_option("walk", ra.walk, "Walk JSON")->required();
    c_res->add_option("--method", ra.method, "sigma | cutoff | both")
        ->check(CLI::IsMember({"sigma", "cutoff", "both"}));
    c_res->add_option("--tol", ra.tol, "Warn when a relative residual exceeds this");
    c_res->add_flag("--incoming", ra.incoming, "Also list incoming resonances");
    c_res->add_option("--out", ra.out, "Write JSON here instead of stdout");
    c_res->callback([&] { action = [&] { return run_resonances(ra); }; });

    StatesArgs sa;
    auto* c_st = app.add_subcommand("states", "Resonant states and Jordan chains");
    c_st->add_option("walk", sa.walk, "Walk JSON")->required();
    c_st->add_option("--lambda", sa.lambda, "re,im of one resonance (default: all)");
    c_st->add_option("--window", sa.window, "a,b sites to tabulate (default: chs widened by 10)");
    c_st->add_option("--emit-plotdata", sa.plot, "CSV with columns lambda_index,k,x,abs_L,abs_R,amp");
    c_st->add_option("--state-out", sa.state_out, "Write 1_window phi_lambda as state JSON");
    c_st->add_option("--out", sa.out, "Write JSON here instead of stdout");
    c_st->callback([&] { action = [&] { return run_states(sa); }; });

    ExpandArgs ea;
    auto* c_ex = app.add_subcommand("expand", "Resonance expansion of a state on J");
    c_ex->add_option("walk", ea.walk, "Walk JSON")->required();
    c_ex->add_option("state", ea.state, "State JSON")->required();
    c_ex->add_option("--J", ea.J, "a,b containing supp psi and chs")->required();
    c_ex->add_option("--predict", ea.predict, "Predicted U^n psi for this n > 2|J|");
    c_ex->add_flag("--verify", ea.verify, "Compare predictions with direct evolution (exit 2 on mismatch)");
    c_ex->add_option("--out", ea.out, "Write JSON here instead of stdout");
    c_ex->callback([&] { action = [&] { return run_expand(ea); }; });

    ObserveArgs oa;
    auto* c_ob = app.add_subcommand(
        "observe", "Survival, mean survival time, weak limit and pointwise asymptotics.\n"
                   "CSV columns: n,survival,c_plus,c_minus,flat_norm with survival = ||1_J U^n psi||^2/||psi||^2\n"
                   "and c_plus, c_minus, flat_norm the masses right of, left of and inside the flat region.");
    c_ob->add_option("walk", oa.walk, "Walk JSON")->required();
    c_ob->add_option("state", oa.state, "State JSON")->required();
    c_ob->add_option("--J", oa.J, "a,b containing supp psi and chs")->required();
    c_ob->add_option("--n-max", oa.n_max, "Last time step");
    c_ob->add_flag("--survival", oa.survival, "Decay fit and constants");
    c_ob->add_flag("--tau", oa.tau, "Mean survival time and bounds");
    c_ob->add_flag("--weak-limit", oa.weak, "Weak-limit masses at n-max");
    c_ob->add_option("--mu", oa.mu, "Distribution at step n with pointwise predictions");
    c_ob->add_option("--csv", oa.csv, "Write the CSV time series here");
    c_ob->add_option("--format", oa.format, "json (summary on stdout) | csv (time series on stdout)")
        ->check(CLI::IsMember({"json", "csv"}));
    c_ob->add_option("--emit-plotdata", oa.plot, "Heatmap CSV with columns x,n,amp");
    c_ob->add_option("--out", oa.out, "Write the JSON summary here");
    c_ob->callback([&] { action = [&] { return run_observe(oa); }; });

    GalleryArgs ga;
    auto* c_gal = app.add_subcommand("gallery", "Named models with closed-form ground truth");
    c_gal->require_subcommand(1);
    auto* g_db = c_gal->add_subcommand("double-barrier", "Rotation coins of strength r at 0 and k");
    g_db->add_option("--k", ga.k, "Barrier distance");
    g_db->add_option("--r", ga.r, "Barrier strength in (0, 1)");
    auto* g_tb = c_gal->add_subcommand("triple-barrier", "Rotation coins at -1, 0, 1");
    g_tb->add_option("--rm1", ga.rm1, "Strength at -1 (also accepted as --r -1=value)");
    g_tb->add_option("--r0", ga.r0, "Strength at 0");
    g_tb->add_option("--r1", ga.r1, "Strength at 1");
    auto* g_rn = c_gal->add_subcommand("random", "Seeded random admissible walk");
    g_rn->add_option("--seed", ga.seed, "Generator seed");
    g_rn->add_option("--max-sites", ga.max_sites, "Largest number of grid sites; |chs| = (n-1) stride + 1");
    g_rn->add_option("--stride", ga.stride, "Non-diagonal coins only on stride Z");
    g_rn->add_flag("--real", ga.real, "Real orthogonal coins");
    for (auto* g : {g_db, g_tb, g_rn}) {
        g->add_option("--out", ga.out, "Write JSON here instead of stdout");
        g->add_option("--walk-out", ga.walk_out, "Also write the walk JSON here");
    }
    g_db->callback([&] { action = [&] { return run_double_barrier(ga); }; });
    g_tb->callback([&] { action = [&] { return run_triple_barrier(ga); }; });
    g_rn->callback([&] { action = [&] { return run_random(ga); }; });

    PerturbArgs pa;
    auto* c_pe = app.add_subcommand("perturb", "Split resonances with B(theta, eps) at the rightmost site");
    c_pe->add_option("walk", pa.walk, "Walk JSON")->required();
    c_pe->add_option("--theta-grid", pa.grid, "Number of equispaced angles");
    c_pe->add_option("--eps", pa.eps, "Comma-separated eps values in (0, 1e-2]");
    c_pe->add_option("--track", pa.track, "multiple (default; same as lambda0) | all | re,im");
    c_pe->add_option("--out", pa.out, "Write JSON here instead of stdout");
    c_pe->callback([&] { action = [&] { return run_perturb(pa); }; });

    std::string suite = "paper", verify_out;
    std::vector<int> only;
    auto* c_ve = app.add_subcommand("verify", "Run the acceptance suite (exit 2 on any failure)");
    c_ve->add_option("--suite", suite, "Suite name");
    c_ve->add_option("--criterion", only, "Run only these criteria (1-11)");
    c_ve->add_option("--out", verify_out, "Also write results as JSON");
    c_ve->callback([&] { action = [&] { return run_verify(suite, only, verify_out); }; });

    std::vector<std::string> args = normalize_args(argc, argv);
    std::vector<char*> cargs;
    for (auto& s : args) cargs.push_back(s.data());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        return action ? action() : 1;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        std::cerr << "error: " << e.what() << " at " << e.where() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
