#pragma once
//
// Coins, finitely supported states and the one-step evolution U = SC on Z.
//
// Conventions:
//   (C psi)(x) = C(x) psi(x)
//   (S psi)(x) = (psi^L(x+1), psi^R(x-1))
// so that (U psi)^L(x) = [C(x+1) psi(x+1)]_L and (U psi)^R(x) = [C(x-1) psi(x-1)]_R.
//

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace qwres {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kAdmissibleTol = 1e-12;

// Closed integer interval [lo, hi], possibly empty.
struct IntervalZ {
    int lo = 0;
    int hi = -1;

    static IntervalZ empty() { return {}; }
    static IntervalZ of(int lo, int hi) { return {lo, hi}; }

    bool is_empty() const { return lo > hi; }
    // |J|_Z
    int size() const { return is_empty() ? 0 : hi - lo + 1; }
    bool contains(int x) const { return !is_empty() && lo <= x && x <= hi; }
    bool contains(const IntervalZ& other) const {
        return other.is_empty() || (!is_empty() && lo <= other.lo && other.hi <= hi);
    }
    // N_r(J) = [lo - r, hi + r]
    IntervalZ neighborhood(int r) const {
        if (is_empty()) return *this;
        return {lo - r, hi + r};
    }
    IntervalZ hull(const IntervalZ& other) const {
        if (is_empty()) return other;
        if (other.is_empty()) return *this;
        return {std::min(lo, other.lo), std::max(hi, other.hi)};
    }
    IntervalZ intersect(const IntervalZ& other) const {
        if (is_empty() || other.is_empty()) return empty();
        IntervalZ r{std::max(lo, other.lo), std::min(hi, other.hi)};
        return r.is_empty() ? empty() : r;
    }
    bool operator==(const IntervalZ& o) const {
        return (is_empty() && o.is_empty()) || (lo == o.lo && hi == o.hi);
    }
};

// A 2x2 unitary coin with non-vanishing diagonal.
class Coin {
  public:
    Coin() : m_(Mat2::Identity()) {}
    // Throws DomainError unless the matrix is unitary and admissible.
    explicit Coin(const Mat2& m);

    static Coin identity() { return Coin(); }
    // [[sqrt(1-r^2), r], [-r, sqrt(1-r^2)]], |r| < 1
    static Coin rotation(double r);
    static Coin diagonal(cplx a, cplx b);

    const Mat2& matrix() const { return m_; }
    cplx c11() const { return m_(0, 0); }
    cplx c12() const { return m_(0, 1); }
    cplx c21() const { return m_(1, 0); }
    cplx c22() const { return m_(1, 1); }
    cplx det() const { return m_.determinant(); }

    bool is_identity() const { return m_ == Mat2::Identity(); }
    bool is_diagonal() const { return m_(0, 1) == cplx{} && m_(1, 0) == cplx{}; }
    bool is_real() const;

    bool operator==(const Coin& o) const { return m_ == o.m_; }

  private:
    Mat2 m_;
};

// Finite-rank perturbation of the free walk: sites not stored carry I_2.
class CoinSequence {
  public:
    CoinSequence() = default;
    // Identity coins are dropped; later duplicates of a site overwrite earlier ones.
    explicit CoinSequence(const std::map<int, Coin>& coins);

    const Coin& at(int x) const;
    const Mat2& matrix_at(int x) const { return at(x).matrix(); }

    // supp(C - I_2)
    std::vector<int> support() const;
    // chs(C - I_2) = [min supp, max supp]; empty for the free walk.
    IntervalZ hull() const { return hull_; }
    bool is_free() const { return coins_.empty(); }
    const std::map<int, Coin>& coins() const { return coins_; }

    CoinSequence with_coin(int x, const Coin& c) const;
    bool all_real() const;
    bool symmetric_diagonal(double tol = 1e-14) const;  // c11(x) == c22(x) for all x

  private:
    std::map<int, Coin> coins_;
    IntervalZ hull_;
    std::vector<Coin> dense_;  // coins over hull_, identity in the gaps
};

// Finitely supported state stored densely over an explicit window.
class WalkState {
  public:
    WalkState() : window_(IntervalZ::of(0, 0)), amps_(1, Vec2::Zero()) {}
    explicit WalkState(IntervalZ window);

    static WalkState delta(int x, const Vec2& v);

    IntervalZ window() const { return window_; }
    Vec2 at(int x) const;
    cplx left(int x) const { return at(x)(0); }
    cplx right(int x) const { return at(x)(1); }

    // Grows the window when x lies outside it.
    void set(int x, const Vec2& v);
    void add(int x, const Vec2& v);

    double norm2() const;
    double norm() const { return std::sqrt(norm2()); }
    double norm2_on(const IntervalZ& j) const;
    double max_abs() const;

    // 1_J psi, stored over window J.
    WalkState restrict(const IntervalZ& j) const;
    // Same values over a (weakly) larger window.
    WalkState widened(const IntervalZ& w) const;
    // Sites carrying a non-zero amplitude.
    IntervalZ support() const;

    WalkState& operator+=(const WalkState& o);
    WalkState& operator-=(const WalkState& o);
    WalkState& operator*=(cplx s);

    const std::vector<Vec2>& amplitudes() const { return amps_; }

  private:
    IntervalZ window_;
    std::vector<Vec2> amps_;
};

WalkState operator+(WalkState a, const WalkState& b);
WalkState operator-(WalkState a, const WalkState& b);
WalkState operator*(cplx s, WalkState a);

// max_x ||a(x) - b(x)|| over the union of windows (or over `on` if given).
double max_distance(const WalkState& a, const WalkState& b,
                    std::optional<IntervalZ> on = std::nullopt);

// U psi; the window grows by one site on each side.
WalkState apply_U(const CoinSequence& coins, const WalkState& psi);
// U^n psi
WalkState evolve(const CoinSequence& coins, const WalkState& psi, int n);

// supp-flat psi = [inf supp psi^R, sup supp psi^L]; an empty component support
// leaves that side unconstrained, which is reported as the window edge.
IntervalZ incoming_support(const WalkState& psi);

// Q psi(x) = (psi^L(x-1), psi^R(x))
Vec2 q_transform(const WalkState& psi, int x);

} // namespace qwres
