#include "qwres/acceptance.hpp"
#include "qwres/errors.hpp"
#include "qwres/expansion.hpp"
#include "qwres/gallery.hpp"
#include "qwres/io.hpp"
#include "qwres/observables.hpp"
#include "qwres/resonance.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qwres;

namespace {

IntervalZ interval(std::pair<int, int> p) { return IntervalZ::of(p.first, p.second); }

py::dict resonance_dict(const Resonance& r) {
    py::dict d;
    d["lambda"] = r.lambda;
    d["mult"] = r.mult;
    d["residual"] = r.residual;
    d["kind"] = r.kind == ResonanceKind::outgoing ? "outgoing" : "incoming";
    return d;
}

py::list resonance_list(const std::vector<Resonance>& res) {
    py::list out;
    for (const auto& r : res) out.append(resonance_dict(r));
    return out;
}

Method method_of(const std::string& m) {
    if (m == "sigma") return Method::sigma;
    if (m == "cutoff") return Method::cutoff;
    if (m == "both") return Method::both;
    throw DomainError("method must be sigma, cutoff or both");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Resonances of finitely perturbed quantum walks on Z";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<Coin>(m, "Coin")
        .def(py::init<const Mat2&>(), py::arg("matrix"))
        .def_static("rotation", &Coin::rotation, py::arg("r"))
        .def_static("diagonal", &Coin::diagonal, py::arg("a"), py::arg("b"))
        .def_static("identity", &Coin::identity)
        .def_property_readonly("matrix", &Coin::matrix)
        .def("__repr__", [](const Coin& c) {
            std::ostringstream os;
            os << "Coin(" << c.matrix().format(Eigen::IOFormat(6, 0, ", ", "; ", "", "", "[", "]")) << ")";
            return os.str();
        });

    py::class_<CoinSequence>(m, "CoinSequence")
        .def(py::init([](const std::map<int, Coin>& coins) { return CoinSequence(coins); }), py::arg("coins"))
        .def(py::init<>())
        .def("coin", &CoinSequence::matrix_at, py::arg("x"))
        .def("support", &CoinSequence::support)
        .def_property_readonly("hull", [](const CoinSequence& c) {
            const IntervalZ h = c.hull();
            return h.is_empty() ? py::object(py::none()) : py::object(py::make_tuple(h.lo, h.hi));
        })
        .def("is_free", &CoinSequence::is_free)
        .def("to_json", [](const CoinSequence& c) { return walk_to_json(c).dump(); })
        .def_static("from_json", [](const std::string& s) { return walk_from_json(json::parse(s)); });

    py::class_<WalkState>(m, "WalkState")
        .def(py::init([](const std::map<int, std::pair<cplx, cplx>>& amps) {
                 if (amps.empty()) throw DomainError("WalkState: no amplitudes");
                 WalkState s(IntervalZ::of(amps.begin()->first, amps.begin()->first));
                 for (const auto& [x, v] : amps) s.add(x, Vec2(v.first, v.second));
                 return s;
             }),
             py::arg("amplitudes"))
        .def_property_readonly("window", [](const WalkState& s) { return std::make_pair(s.window().lo, s.window().hi); })
        .def("at", [](const WalkState& s, int x) { return std::make_pair(s.left(x), s.right(x)); }, py::arg("x"))
        .def("norm", &WalkState::norm)
        .def("norm_on", [](const WalkState& s, std::pair<int, int> J) { return std::sqrt(s.norm2_on(interval(J))); })
        .def("to_dict", [](const WalkState& s) {
            std::map<int, std::pair<cplx, cplx>> out;
            for (int x = s.window().lo; x <= s.window().hi; ++x) out[x] = {s.left(x), s.right(x)};
            return out;
        })
        .def("to_json", [](const WalkState& s) { return state_to_json(s).dump(); })
        .def_static("from_json", [](const std::string& s) { return state_from_json(json::parse(s)); });

    m.def("apply_U", &apply_U, py::arg("coins"), py::arg("psi"));
    m.def("evolve", &evolve, py::arg("coins"), py::arg("psi"), py::arg("n"));

    m.def("sigma", [](const CoinSequence& c) {
        const SigmaPoly s = sigma(c);
        py::dict d;
        d["coeffs"] = s.coeffs;
        d["k"] = s.k;
        d["delta"] = s.delta;
        d["dynamic_range"] = s.dynamic_range();
        return d;
    }, py::arg("coins"));
    m.def("transfer_at", [](const Coin& c, cplx lam) { return transfer_at(c, lam); }, py::arg("coin"), py::arg("lam"));
    m.def("scattering_matrix", [](const CoinSequence& c, cplx lam) { return scattering_matrix(c, lam).reduced; },
          py::arg("coins"), py::arg("lam"));

    m.def("find_resonances", [](const CoinSequence& c, const std::string& method) {
        const ResonanceReport rep = find_resonances(c, method_of(method));
        py::dict d;
        d["resonances"] = resonance_list(rep.resonances);
        d["Lambda0"] = rep.summary.Lambda0;
        d["m0"] = rep.summary.m0;
        d["sum_mult"] = rep.summary.sum_mult;
        d["budget"] = rep.summary.budget;
        d["zero_dim"] = rep.summary.zero_dim ? py::object(py::int_(*rep.summary.zero_dim)) : py::object(py::none());
        d["cross_distance"] = rep.cross_distance ? py::object(py::float_(*rep.cross_distance)) : py::object(py::none());
        return d;
    }, py::arg("coins"), py::arg("method") = "sigma");
    m.def("incoming_resonances", [](const CoinSequence& c) { return resonance_list(incoming_resonances(c)); },
          py::arg("coins"));
    m.def("cutoff_matrix", [](const CoinSequence& c, std::pair<int, int> J) { return cutoff_matrix(c, interval(J)).E; },
          py::arg("coins"), py::arg("J"));

    m.def("resonant_chain", [](const CoinSequence& c, cplx lam, int length, std::pair<int, int> window) {
        const ResonantChain ch = length > 1 ? jordan_chain(c, Resonance{lam, length, ResonanceKind::outgoing, 0.0})
                                            : resonant_state(c, lam);
        std::vector<WalkState> members;
        for (int k = 1; k <= ch.length(); ++k) members.push_back(ch.state(k, interval(window)));
        py::dict d;
        d["members"] = members;
        d["residual"] = ch.residual(c);
        d["c_minus"] = ch.c_minus();
        d["c_plus"] = ch.c_plus();
        return d;
    }, py::arg("coins"), py::arg("lam"), py::arg("length") = 1, py::arg("window"));

    m.def("expand", [](const CoinSequence& c, const WalkState& psi, std::pair<int, int> J) {
        const ExpansionResult e = expand(c, psi, interval(J));
        py::list terms;
        for (const auto& t : e.terms) {
            py::dict d = resonance_dict(t.res);
            d["coeffs"] = t.coeffs;
            d["active"] = t.active;
            terms.append(d);
        }
        py::dict d;
        d["terms"] = terms;
        d["zero_dim"] = e.zero_dim;
        d["residual"] = e.residual;
        d["condition"] = e.condition;
        d["Lambda_psi"] = e.Lambda_psi;
        d["Lambda_prime"] = e.Lambda_prime;
        d["phi0"] = e.phi0;
        return d;
    }, py::arg("coins"), py::arg("psi"), py::arg("J"));
    m.def("predict_evolution", [](const CoinSequence& c, const WalkState& psi, std::pair<int, int> J, int n) {
        return predict_evolution(expand(c, psi, interval(J)), n);
    }, py::arg("coins"), py::arg("psi"), py::arg("J"), py::arg("n"));

    m.def("survival", [](const CoinSequence& c, const WalkState& psi, std::pair<int, int> J, int n_max) {
        const SurvivalSeries s = survival(c, psi, interval(J), n_max);
        py::dict d;
        d["s"] = s.s;
        d["slope"] = s.report.fit.slope;
        d["Lambda0"] = s.report.Lambda0;
        d["Lambda_psi"] = s.report.Lambda_psi;
        d["M_prime"] = s.report.M_prime;
        d["M_prime_bound"] = s.report.M_prime_bound;
        d["envelope_ok"] = s.report.envelope_ok;
        return d;
    }, py::arg("coins"), py::arg("psi"), py::arg("J"), py::arg("n_max"));
    m.def("mean_survival_time", [](const CoinSequence& c, const WalkState& psi, std::pair<int, int> J, int n_max) {
        const SurvivalReport r = mean_survival_time(c, psi, interval(J), n_max);
        py::dict d;
        d["tau"] = r.tau;
        d["tail_bound"] = r.tail_bound;
        d["bound"] = r.bound();
        return d;
    }, py::arg("coins"), py::arg("psi"), py::arg("J"), py::arg("n_max"));
    m.def("upsilon", &upsilon, py::arg("k"), py::arg("r"));

    m.def("double_barrier", [](int k, double r) {
        const DoubleBarrier d = double_barrier(k, r);
        py::dict out;
        out["coins"] = d.coins;
        out["alpha"] = d.alpha;
        out["resonances"] = d.resonances;
        return out;
    }, py::arg("k"), py::arg("r"));
    m.def("triple_barrier", [](double a, double b, double c) {
        const TripleBarrier t = triple_barrier(a, b, c);
        py::dict out;
        out["coins"] = t.coins;
        out["quartic"] = std::vector<cplx>(t.quartic.begin(), t.quartic.end());
        out["multiplicity_two"] = t.multiplicity_two;
        return out;
    }, py::arg("r_m1"), py::arg("r_0"), py::arg("r_1"));
    m.def("perturb", &perturb, py::arg("coins"), py::arg("theta"), py::arg("eps"));
    m.def("group_product", [](const Mat2& a, const Mat2& b) { return group_product(a, b); }, py::arg("a"), py::arg("b"));
    m.def("random_walk", [](std::uint64_t seed, int max_sites, bool real, int stride) {
        std::mt19937_64 rng(seed);
        RandomWalkOptions o;
        o.max_sites = max_sites;
        o.real = real;
        o.stride = stride;
        return random_walk(rng, o);
    }, py::arg("seed"), py::arg("max_sites") = 8, py::arg("real") = false, py::arg("stride") = 1);

    m.def("run_acceptance", [] {
        py::list out;
        for (const auto& r : run_acceptance()) {
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    });
}
