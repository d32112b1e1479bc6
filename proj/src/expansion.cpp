#include "qwres/expansion.hpp"

#include "qwres/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qwres {

namespace {

double binom(int n, int l) {
    double r = 1.0;
    for (int i = 1; i <= l; ++i) r = r * (n - l + i) / i;
    return r;
}

} // namespace

WalkState ZeroSpace::member(int i) const {
    WalkState s(J);
    for (int x = J.lo; x <= J.hi; ++x) {
        const Eigen::Index b = 2 * (x - J.lo);
        s.set(x, Vec2(basis(b, i), basis(b + 1, i)));
    }
    return s;
}

ZeroSpace zero_space(const CoinSequence& coins, const IntervalZ& J) {
    const CutoffMatrix cm = cutoff_matrix(coins, J);
    return {J, generalized_kernel(cm.E)};
}

WalkState ExpansionResult::block(size_t term) const {
    const ExpansionTerm& t = terms.at(term);
    WalkState s(J);
    for (int k = 1; k <= t.chain.length(); ++k) s += t.coeffs[static_cast<size_t>(k - 1)] * t.chain.state(k, J);
    return s;
}

WalkState ExpansionResult::reconstruct() const {
    WalkState s = phi0;
    for (size_t i = 0; i < terms.size(); ++i) s += block(i);
    return s;
}

ExpansionResult expand(const CoinSequence& coins, const WalkState& psi, const IntervalZ& J) {
    if (J.is_empty() || !J.contains(psi.support()) || !J.contains(coins.hull()))
        throw DomainError("expand: J must contain supp psi and chs(C - I_2)");

    ExpansionResult out;
    out.J = J;
    out.psi_norm = psi.norm();
    const CutoffMatrix cm = cutoff_matrix(coins, J);
    const Eigen::MatrixXcd Z = generalized_kernel(cm.E);
    out.zero_dim = static_cast<int>(Z.cols());

    std::vector<Resonance> res;
    if (!coins.is_free()) res = find_resonances(coins).resonances;

    const Eigen::Index n = cm.E.rows();
    int cols = static_cast<int>(Z.cols());
    for (const auto& r : res) cols += r.mult;
    Eigen::MatrixXcd A(n, cols);
    Eigen::Index c = 0;
    for (const auto& r : res) {
        ExpansionTerm t{r, ResonantChain(coins, r.lambda, r.mult), {}, {}, false};
        for (int k = 1; k <= r.mult; ++k) {
            A.col(c++) = cm.vectorize(t.chain.state(k, J));
            t.restricted.push_back(A.col(c - 1).norm());
        }
        out.terms.push_back(std::move(t));
    }
    A.rightCols(Z.cols()) = Z;
    if (cols != n) {
        std::ostringstream os;
        os << "expansion basis has " << cols << " vectors for dimension " << n;
        out.warnings.push_back(os.str());
    }

    Eigen::VectorXd scale(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        scale(j) = A.col(j).norm();
        if (scale(j) == 0.0) scale(j) = 1.0;
    }
    const Eigen::MatrixXcd As = A * scale.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(As);
    const auto& sv = svd.singularValues();
    out.condition = sv.size() ? sv(0) / sv(sv.size() - 1) : 1.0;
    if (!(out.condition <= 1e12)) {
        std::ostringstream os;
        os << "ill-conditioned expansion basis (condition " << out.condition << ")";
        out.warnings.push_back(os.str());
    }

    const Eigen::VectorXcd v = cm.vectorize(psi);
    const Eigen::VectorXcd y = As.colPivHouseholderQr().solve(v);
    const Eigen::VectorXcd coef = scale.cwiseInverse().asDiagonal() * y;

    c = 0;
    const double thresh = 1e-9 * out.psi_norm;
    for (auto& t : out.terms) {
        for (int k = 0; k < t.res.mult; ++k) {
            t.coeffs.push_back(coef(c++));
            if (std::abs(t.coeffs.back()) * t.restricted[static_cast<size_t>(k)] > thresh) t.active = true;
        }
        if (t.active) out.Lambda_psi = std::max(out.Lambda_psi, std::abs(t.res.lambda));
    }
    for (const auto& t : out.terms) {
        const double r = std::abs(t.res.lambda);
        if (t.active && r < out.Lambda_psi * (1.0 - 1e-9)) out.Lambda_prime = std::max(out.Lambda_prime, r);
    }
    out.phi0 = cm.state(Z * coef.tail(Z.cols()));
    const double denom = out.psi_norm > 0.0 ? out.psi_norm : 1.0;
    out.residual = (A * coef - v).norm() / denom;
    return out;
}

IntervalZ prediction_region(const IntervalZ& J, int n) {
    const int r = n - 1 - 2 * J.size();
    if (r < 0) return IntervalZ::empty();
    return J.neighborhood(r);
}

WalkState predict_evolution(const ExpansionResult& e, int n, Indexing idx) {
    if (n <= 2 * e.J.size()) {
        std::ostringstream os;
        os << "predict_evolution: need n > 2|J|_Z = " << 2 * e.J.size();
        throw DomainError(os.str());
    }
    const IntervalZ reg = prediction_region(e.J, n);
    WalkState out(reg);
    for (const auto& t : e.terms) {
        const cplx lam = t.res.lambda;
        for (int x = reg.lo; x <= reg.hi; ++x) {
            Vec2 acc = Vec2::Zero();
            for (int k = 1; k <= t.res.mult; ++k) {
                const cplx ck = t.coeffs[static_cast<size_t>(k - 1)];
                if (ck == cplx{}) continue;
                for (int l = 0; l <= k - 1; ++l) {
                    const int member = idx == Indexing::chain ? k - l : k - 1;
                    acc += ck * binom(n, l) * std::pow(lam, n - l) * t.chain.at(member, x);
                }
            }
            out.add(x, acc);
        }
    }
    return out;
}

WalkState resolvent_apply(const CutoffMatrix& cm, cplx lambda, const WalkState& f) {
    if (!cm.J.contains(f.support())) throw DomainError("resolvent_apply: f must be supported in J");
    const Eigen::Index n = cm.E.rows();
    const Eigen::MatrixXcd M = cm.E - lambda * Eigen::MatrixXcd::Identity(n, n);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) throw PoleError("resolvent pole: lambda is an eigenvalue of E_J", lambda);
    return cm.state(lu.solve(cm.vectorize(f)));
}

WalkState resolvent_apply(const CoinSequence& coins, const IntervalZ& J, cplx lambda, const WalkState& f) {
    return resolvent_apply(cutoff_matrix(coins, J), lambda, f);
}

double contour_radius(cplx lambda0, const std::vector<Resonance>& poles) {
    double d = std::abs(lambda0);
    for (const auto& p : poles) {
        const double e = std::abs(p.lambda - lambda0);
        if (e > 1e-12 * std::max(1.0, std::abs(lambda0))) d = std::min(d, e);
    }
    return 0.5 * d;
}

WalkState contour_projector(const CutoffMatrix& cm, cplx lambda0, double rho, const WalkState& f, int nodes) {
    if (nodes < 4) throw DomainError("contour_projector: need at least 4 nodes");
    WalkState acc(cm.J);
    for (int j = 0; j < nodes; ++j) {
        const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
        acc += w * resolvent_apply(cm, lambda0 + rho * w, f);
    }
    acc *= -rho / nodes;
    return acc;
}

} // namespace qwres
