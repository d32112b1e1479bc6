#include "qwres/polyroots.hpp"

#include "qwres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qwres {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kWideClusterTol = 1e-4;

// Newton ratio p(z)/p'(z); evaluates the reversed polynomial for |z| > 1
// to stay clear of overflow.
cplx newton_ratio(const std::vector<cplx>& a, cplx z) {
    const int n = static_cast<int>(a.size()) - 1;
    if (std::abs(z) <= 1.0) {
        cplx p = a[static_cast<size_t>(n)], dp = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            dp = dp * z + p;
            p = p * z + a[static_cast<size_t>(i)];
        }
        return p / dp;
    }
    const cplx y = 1.0 / z;
    cplx q = a[0], dq = 0.0;
    for (int i = 1; i <= n; ++i) {
        dq = dq * y + q;
        q = q * y + a[static_cast<size_t>(i)];
    }
    // p(z) = z^n q(y), p'(z) = z^{n-1} (n q(y) - y q'(y))
    return z / (static_cast<double>(n) - y * dq / q);
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

cplx poly_eval(const std::vector<cplx>& a, cplx z) {
    cplx acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double poly_eval_abs(const std::vector<cplx>& a, double r) {
    double acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

std::vector<cplx> taylor_coefficients(const std::vector<cplx>& a, cplx z) {
    // repeated synthetic division
    std::vector<cplx> b = a;
    const size_t n = b.size();
    std::vector<cplx> t(n);
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = n - 1; i > j; --i) b[i - 1] += z * b[i];
        t[j] = b[j];
    }
    return t;
}

std::vector<cplx> aberth_roots(const std::vector<cplx>& a, const AberthOptions& opt) {
    const int n = static_cast<int>(a.size()) - 1;
    if (n < 1) return {};
    if (a.front() == cplx{} || a.back() == cplx{})
        throw DomainError("aberth_roots: leading and constant coefficients must be non-zero");
    if (n == 1) return {-a[0] / a[1]};

    const double radius = std::pow(std::abs(a[0] / a[static_cast<size_t>(n)]), 1.0 / n);
    std::vector<cplx> z(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) z[static_cast<size_t>(j)] = std::polar(radius, 2.0 * std::numbers::pi * j / n + 0.4);

    std::vector<char> done(static_cast<size_t>(n), 0);
    const double backward = 8.0 * n * kEps;
    for (int it = 0; it < opt.max_iter; ++it) {
        bool all = true;
        for (size_t i = 0; i < z.size(); ++i) {
            if (done[i]) continue;
            const cplx w = newton_ratio(a, z[i]);
            cplx s = 0.0;
            for (size_t j = 0; j < z.size(); ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            const cplx corr = w / (1.0 - w * s);
            z[i] -= corr;
            const double az = std::abs(z[i]);
            if (std::abs(corr) < opt.step_tol * az + 1e-300 ||
                std::abs(poly_eval(a, z[i])) <= backward * poly_eval_abs(a, az))
                done[i] = 1;
            else
                all = false;
        }
        if (all) return z;
    }
    std::ostringstream os;
    os << "aberth_roots: no convergence after " << opt.max_iter << " iterations; residuals";
    for (size_t i = 0; i < z.size(); ++i)
        if (!done[i]) os << ' ' << std::abs(poly_eval(a, z[i])) / poly_eval_abs(a, std::abs(z[i]));
    throw NumericalError(os.str());
}

std::vector<std::vector<cplx>> group_close(const std::vector<cplx>& z, double tol) {
    const size_t n = z.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const double scale = std::max({1.0, std::abs(z[i]), std::abs(z[j])});
            if (std::abs(z[i] - z[j]) < tol * scale) parent[find(i)] = find(j);
        }
    std::vector<std::vector<cplx>> groups;
    std::vector<size_t> slot(n, n);
    for (size_t i = 0; i < n; ++i) {
        const size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = groups.size();
            groups.emplace_back();
        }
        groups[slot[r]].push_back(z[i]);
    }
    return groups;
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& a, const std::vector<cplx>& roots,
                                       double cluster_tol, double deriv_tol) {
    auto residual = [&](cplx z) { return std::abs(poly_eval(a, z)) / poly_eval_abs(a, std::abs(z)); };

    auto mean = [](const std::vector<cplx>& g) {
        cplx c = 0.0;
        for (const auto& z : g) c += z;
        return c / static_cast<double>(g.size());
    };
    // |t_j| <= deriv_tol * s_j for j < m at the cluster mean
    auto confirmed = [&](const std::vector<cplx>& g) {
        const int m = static_cast<int>(g.size());
        if (m == 1) return true;
        const cplx c = mean(g);
        const auto t = taylor_coefficients(a, c);
        const double r = std::abs(c);
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (size_t i = static_cast<size_t>(j); i < a.size(); ++i)
                s += std::abs(a[i]) * binom(static_cast<int>(i), j) * std::pow(r, static_cast<double>(i) - j);
            if (std::abs(t[static_cast<size_t>(j)]) > deriv_tol * s) return false;
        }
        return true;
    };

    std::vector<RootCluster> out;
    auto emit = [&](const std::vector<cplx>& g) {
        const int m = static_cast<int>(g.size());
        if (!confirmed(g)) {
            for (const auto& z : g) out.push_back({z, 1, residual(z)});
            return;
        }
        cplx c = mean(g);
        if (m > 1) {
            // p^{(m-1)} has a simple root at the cluster center
            for (int it = 0; it < 8; ++it) {
                const auto t = taylor_coefficients(a, c);
                const cplx step = t[static_cast<size_t>(m - 1)] / (static_cast<double>(m) * t[static_cast<size_t>(m)]);
                c -= step;
                if (std::abs(step) <= 4.0 * kEps * std::abs(c)) break;
            }
        }
        out.push_back({c, m, residual(c)});
    };

    // An m-fold root scatters like eps^{1/m}. Groups of three or more are
    // first tried at a wider radius, where the derivative test still rejects
    // distinct roots further apart than about deriv_tol.
    for (const auto& wide : group_close(roots, std::max(cluster_tol, kWideClusterTol))) {
        if (wide.size() >= 3 && confirmed(wide)) {
            emit(wide);
            continue;
        }
        for (const auto& g : group_close(wide, cluster_tol)) emit(g);
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& x, const RootCluster& y) {
        if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
        return x.center.imag() < y.center.imag();
    });
    return out;
}

std::vector<RootCluster> nonzero_roots(const std::vector<cplx>& a, int* zero_mult) {
    size_t lo = 0, hi = a.size();
    while (lo < hi && a[lo] == cplx{}) ++lo;
    while (hi > lo && a[hi - 1] == cplx{}) --hi;
    if (zero_mult) *zero_mult = static_cast<int>(lo);
    if (hi - lo < 2) return {};
    const std::vector<cplx> b(a.begin() + static_cast<long>(lo), a.begin() + static_cast<long>(hi));
    return cluster_roots(b, aberth_roots(b));
}

std::vector<cplx> faddeev_leverrier(const Eigen::MatrixXcd& A) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n) throw DomainError("faddeev_leverrier: matrix must be square");
    // det(zI - A) = sum_k c_k z^k, c_n = 1
    std::vector<cplx> c(static_cast<size_t>(n + 1));
    c[static_cast<size_t>(n)] = 1.0;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        M = A * M + c[static_cast<size_t>(n - k + 1)] * I;
        c[static_cast<size_t>(n - k)] = -(A * M).trace() / static_cast<double>(k);
    }
    return c;
}

double multiset_distance(const std::vector<RootCluster>& a, const std::vector<RootCluster>& b) {
    std::vector<cplx> x, y;
    for (const auto& r : a) x.insert(x.end(), static_cast<size_t>(r.mult), r.center);
    for (const auto& r : b) y.insert(y.end(), static_cast<size_t>(r.mult), r.center);
    if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
    std::vector<char> ux(x.size(), 0), uy(y.size(), 0);
    double worst = 0.0;
    for (size_t step = 0; step < x.size(); ++step) {
        double best = std::numeric_limits<double>::infinity();
        size_t bi = 0, bj = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            if (ux[i]) continue;
            for (size_t j = 0; j < y.size(); ++j) {
                if (uy[j]) continue;
                const double d = std::abs(x[i] - y[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        ux[bi] = uy[bj] = 1;
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace qwres
