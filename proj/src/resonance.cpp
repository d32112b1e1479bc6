#include "qwres/resonance.hpp"

#include "qwres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwres {

namespace {

using Jet = std::vector<cplx>;

Jet jet_mul(const Jet& a, const Jet& b) {
    Jet c(a.size(), cplx{});
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Jet jet_scale(const Jet& a, cplx s) {
    Jet c = a;
    for (auto& v : c) v *= s;
    return c;
}

Jet jet_add(const Jet& a, const Jet& b) {
    Jet c = a;
    for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

void sort_resonances(std::vector<Resonance>& res) {
    std::sort(res.begin(), res.end(), [](const Resonance& a, const Resonance& b) {
        const double aa = std::arg(a.lambda), ab = std::arg(b.lambda);
        if (aa != ab) return aa < ab;
        return std::abs(a.lambda) < std::abs(b.lambda);
    });
}

double sigma_residual(const SigmaPoly& s, cplx lambda) {
    return std::abs(s(lambda)) / poly_eval_abs(s.coeffs, std::abs(lambda));
}

} // namespace

std::vector<cplx> power_jet(cplx lambda0, int n, int m) {
    Jet j(static_cast<size_t>(m), cplx{});
    if (m == 0) return j;
    // C(n, i) lambda0^{n-i}, generalized binomial for negative n
    cplx term = std::pow(lambda0, n);
    for (int i = 0; i < m; ++i) {
        j[static_cast<size_t>(i)] = term;
        term *= static_cast<double>(n - i) / static_cast<double>(i + 1) / lambda0;
    }
    return j;
}

int SpectrumSummary::p_at(double modulus, double tol) const {
    for (const auto& [r, m] : p)
        if (std::abs(r - modulus) <= tol * std::max(1.0, modulus)) return m;
    return 0;
}

SpectrumSummary summarize(const std::vector<Resonance>& res, int chs_size) {
    SpectrumSummary s;
    s.budget = chs_size > 0 ? 2 * (chs_size - 1) : 0;
    std::vector<std::pair<double, int>> mods;
    for (const auto& r : res) {
        s.sum_mult += r.mult;
        mods.emplace_back(std::abs(r.lambda), r.mult);
    }
    std::sort(mods.begin(), mods.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [r, m] : mods) {
        if (!s.p.empty() && std::abs(s.p.back().first - r) <= 1e-9 * std::max(1.0, r))
            s.p.back().second = std::max(s.p.back().second, m);
        else
            s.p.emplace_back(r, m);
    }
    if (!s.p.empty()) {
        s.Lambda0 = s.p.front().first;
        s.m0 = s.p.front().second;
    }
    return s;
}

Eigen::VectorXcd CutoffMatrix::vectorize(const WalkState& psi) const {
    Eigen::VectorXcd v(2 * J.size());
    for (int x = J.lo; x <= J.hi; ++x) {
        const Vec2 a = psi.at(x);
        v(index(x, 0)) = a(0);
        v(index(x, 1)) = a(1);
    }
    return v;
}

WalkState CutoffMatrix::state(const Eigen::VectorXcd& v) const {
    WalkState s(J);
    for (int x = J.lo; x <= J.hi; ++x) s.set(x, Vec2(v(index(x, 0)), v(index(x, 1))));
    return s;
}

CutoffMatrix cutoff_matrix(const CoinSequence& coins, const IntervalZ& J) {
    if (J.is_empty()) throw DomainError("cutoff matrix: J must be non-empty");
    if (!J.contains(coins.hull())) throw DomainError("cutoff matrix: J must contain chs(C - I_2)");
    CutoffMatrix cm{J, Eigen::MatrixXcd::Zero(2 * J.size(), 2 * J.size())};
    for (int x = J.lo; x <= J.hi; ++x) {
        if (J.contains(x + 1)) {
            const Mat2& c = coins.matrix_at(x + 1);
            cm.E(cm.index(x, 0), cm.index(x + 1, 0)) = c(0, 0);
            cm.E(cm.index(x, 0), cm.index(x + 1, 1)) = c(0, 1);
        }
        if (J.contains(x - 1)) {
            const Mat2& c = coins.matrix_at(x - 1);
            cm.E(cm.index(x, 1), cm.index(x - 1, 0)) = c(1, 0);
            cm.E(cm.index(x, 1), cm.index(x - 1, 1)) = c(1, 1);
        }
    }
    return cm;
}

Eigen::MatrixXcd generalized_kernel(const Eigen::MatrixXcd& E, double rel_tol) {
    const Eigen::Index n = E.rows();
    Eigen::MatrixXcd Q(n, 0);
    if (n == 0) return Q;
    Eigen::JacobiSVD<Eigen::MatrixXcd> s0(E);
    const double norm = s0.singularValues()(0);
    if (norm == 0.0) return Eigen::MatrixXcd::Identity(n, n);
    const double thresh = rel_tol * norm;
    for (Eigen::Index it = 0; it <= n; ++it) {
        const Eigen::MatrixXcd M = E - Q * (Q.adjoint() * E);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        Eigen::Index count = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) <= thresh) ++count;
        if (count <= Q.cols()) break;
        Q = svd.matrixV().rightCols(count);
    }
    return Q;
}

std::vector<RootCluster> eigen_oracle(const Eigen::MatrixXcd& E, int* zero_dim, double cluster_tol) {
    const Eigen::Index n = E.rows();
    if (E.cols() != n) throw DomainError("eigen_oracle: matrix must be square");
    if (n > 256) throw DomainError("eigen_oracle: matrix larger than 256");
    const Eigen::MatrixXcd K = generalized_kernel(E);
    const Eigen::Index d = K.cols();
    if (zero_dim) *zero_dim = static_cast<int>(d);
    if (d == n) return {};

    Eigen::MatrixXcd W;
    if (d == 0) {
        W = Eigen::MatrixXcd::Identity(n, n);
    } else {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(K);
        const Eigen::MatrixXcd full = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
        W = full.rightCols(n - d);
    }
    const Eigen::MatrixXcd D = W.adjoint() * E * W;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(D, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigen_oracle: eigenvalue iteration failed");
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());

    std::vector<RootCluster> out;
    for (const auto& g : group_close(ev, cluster_tol)) {
        cplx c = 0.0;
        for (const auto& z : g) c += z;
        out.push_back({c / static_cast<double>(g.size()), static_cast<int>(g.size()), 0.0});
    }
    return out;
}

ResonanceReport find_resonances(const CoinSequence& coins, Method method) {
    ResonanceReport rep;
    if (coins.is_free()) return rep;
    const int k = coins.hull().size();
    const SigmaPoly s = sigma(coins);
    rep.dynamic_range = s.dynamic_range();

    std::vector<RootCluster> via_sigma, via_cut;
    if (method != Method::cutoff) via_sigma = nonzero_roots(s.coeffs);
    int zd = 0;
    if (method != Method::sigma) {
        via_cut = eigen_oracle(cutoff_matrix(coins, coins.hull()).E, &zd);
    }

    const auto& chosen = method == Method::cutoff ? via_cut : via_sigma;
    for (const auto& c : chosen)
        rep.resonances.push_back({c.center, c.mult, ResonanceKind::outgoing, sigma_residual(s, c.center)});
    sort_resonances(rep.resonances);
    rep.summary = summarize(rep.resonances, k);
    if (method != Method::sigma) rep.summary.zero_dim = zd;
    if (method == Method::both) rep.cross_distance = multiset_distance(via_sigma, via_cut);
    return rep;
}

std::vector<Resonance> incoming_resonances(const CoinSequence& coins) {
    if (coins.is_free()) return {};
    const auto poly = incoming_poly(coins);
    std::vector<Resonance> out;
    for (const auto& c : nonzero_roots(poly))
        out.push_back({c.center, c.mult, ResonanceKind::incoming, c.residual});
    sort_resonances(out);
    return out;
}

// ---------------------------------------------------------------------------

ResonantChain::ResonantChain(const CoinSequence& coins, cplx lambda, int length)
    : lambda_(lambda), m_(length) {
    if (lambda == cplx{}) throw DomainError("resonant state: lambda must be non-zero");
    if (length < 1) throw DomainError("resonant state: chain length must be positive");
    const auto sites = transfer_sites(coins);
    if (sites.empty()) throw DomainError("free walk: no transfer product");
    xm_ = coins.hull().lo;
    xp_ = coins.hull().hi;

    const size_t m = static_cast<size_t>(m_);
    Jet lam(m, cplx{});
    lam[0] = lambda;
    if (m > 1) lam[1] = 1.0;
    const Jet inv = power_jet(lambda, -1, m_);

    Jet a(m, cplx{}), b(m, cplx{});
    a[0] = 1.0;
    q_.reserve(sites.size() + 1);
    auto push = [&](const Jet& u, const Jet& v) {
        std::vector<Vec2> col(m);
        for (size_t j = 0; j < m; ++j) col[j] = Vec2(u[j], v[j]);
        q_.push_back(std::move(col));
    };
    push(a, b);
    for (const auto& s : sites) {
        const cplx ph = std::polar(1.0, s.theta);
        const Jet na = jet_add(jet_mul(jet_scale(lam, ph * s.p), a), jet_scale(b, ph * std::conj(s.q)));
        const Jet nb = jet_add(jet_scale(a, ph * s.q), jet_mul(jet_scale(inv, ph * std::conj(s.p)), b));
        a = na;
        b = nb;
        push(a, b);
    }
    // outgoing on the right: phi^L(x^+) = t11 is dropped
    t21_ = b;
    for (auto& v : q_.back()) v(0) = 0.0;
}

Vec2 ResonantChain::q_coeff(int z, int j) const {
    const size_t ju = static_cast<size_t>(j);
    if (z < xm_) return Vec2(power_jet(lambda_, z - xm_, m_)[ju], 0.0);
    if (z <= xp_ + 1) return q_[static_cast<size_t>(z - xm_)][ju];
    return Vec2(0.0, jet_mul(t21_, power_jet(lambda_, -(z - xp_ - 1), m_))[ju]);
}

Vec2 ResonantChain::at(int k, int x) const {
    if (k < 0 || k > m_) throw DomainError("resonant chain: member index out of range");
    if (k == 0) return Vec2::Zero();
    return Vec2(q_coeff(x + 1, k - 1)(0), q_coeff(x, k - 1)(1));
}

WalkState ResonantChain::state(int k, const IntervalZ& window) const {
    WalkState s(window);
    for (int x = window.lo; x <= window.hi; ++x) s.set(x, at(k, x));
    return s;
}

cplx ResonantChain::c_minus() const { return std::pow(lambda_, 1 - xm_); }

cplx ResonantChain::c_plus() const { return t21_[0] * std::pow(lambda_, xp_ + 1); }

double ResonantChain::residual(const CoinSequence& coins) const {
    const IntervalZ w = chs().neighborhood(2);
    double worst = 0.0, scale = 0.0;
    WalkState prev(w);
    for (int k = 1; k <= m_; ++k) {
        const WalkState cur = state(k, w);
        scale = std::max(scale, cur.max_abs());
        const WalkState u = apply_U(coins, cur);
        for (int x = w.lo + 1; x <= w.hi - 1; ++x)
            worst = std::max(worst, (u.at(x) - lambda_ * cur.at(x) - prev.at(x)).norm());
        prev = cur;
    }
    return scale > 0.0 ? worst / scale : worst;
}

ResonantChain resonant_state(const CoinSequence& coins, cplx lambda, double tol) {
    if (coins.is_free()) throw DomainError("free walk: no resonances");
    if (lambda == cplx{}) throw DomainError("resonant state: lambda must be non-zero");
    const SigmaPoly s = sigma(coins);
    const double r = sigma_residual(s, lambda);
    if (r > tol) {
        std::ostringstream os;
        os << "not a resonance: relative |sigma(lambda)| = " << r;
        throw DomainError(os.str());
    }
    return ResonantChain(coins, lambda, 1);
}

ResonantChain jordan_chain(const CoinSequence& coins, const Resonance& res, double tol) {
    resonant_state(coins, res.lambda);
    ResonantChain chain(coins, res.lambda, res.mult);
    const double r = chain.residual(coins);
    if (r > tol) {
        std::ostringstream os;
        os << "jordan chain: residual " << r << " exceeds " << tol;
        throw NumericalError(os.str());
    }
    return chain;
}

} // namespace qwres
