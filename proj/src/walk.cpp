#include "qwres/walk.hpp"

#include "qwres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwres {

Coin::Coin(const Mat2& m) : m_(m) {
    if (!m.allFinite()) throw DomainError("coin has non-finite entries");
    const double defect = (m.adjoint() * m - Mat2::Identity()).cwiseAbs().maxCoeff();
    if (defect > kUnitaryTol) {
        std::ostringstream os;
        os << "coin is not unitary (|C*C - I| = " << defect << ")";
        throw DomainError(os.str());
    }
    if (std::abs(m(0, 0)) <= kAdmissibleTol || std::abs(m(1, 1)) <= kAdmissibleTol)
        throw DomainError("inadmissible coin: diagonal entries must not vanish (Assumption)");
}

Coin Coin::rotation(double r) {
    if (!(std::abs(r) < 1.0)) throw DomainError("rotation coin needs |r| < 1");
    const double s = std::sqrt(1.0 - r * r);
    Mat2 m;
    m << s, r, -r, s;
    return Coin(m);
}

Coin Coin::diagonal(cplx a, cplx b) {
    Mat2 m;
    m << a, 0.0, 0.0, b;
    return Coin(m);
}

bool Coin::is_real() const {
    return m_.imag().cwiseAbs().maxCoeff() == 0.0;
}

CoinSequence::CoinSequence(const std::map<int, Coin>& coins) {
    for (const auto& [x, c] : coins)
        if (!c.is_identity()) coins_.emplace(x, c);
    if (coins_.empty()) return;
    hull_ = IntervalZ::of(coins_.begin()->first, coins_.rbegin()->first);
    dense_.assign(static_cast<size_t>(hull_.size()), Coin::identity());
    for (const auto& [x, c] : coins_) dense_[static_cast<size_t>(x - hull_.lo)] = c;
}

const Coin& CoinSequence::at(int x) const {
    static const Coin id = Coin::identity();
    if (!hull_.contains(x)) return id;
    return dense_[static_cast<size_t>(x - hull_.lo)];
}

std::vector<int> CoinSequence::support() const {
    std::vector<int> s;
    s.reserve(coins_.size());
    for (const auto& kv : coins_) s.push_back(kv.first);
    return s;
}

CoinSequence CoinSequence::with_coin(int x, const Coin& c) const {
    auto m = coins_;
    m.erase(x);
    m.emplace(x, c);
    return CoinSequence(m);
}

bool CoinSequence::all_real() const {
    return std::all_of(coins_.begin(), coins_.end(), [](const auto& kv) { return kv.second.is_real(); });
}

bool CoinSequence::symmetric_diagonal(double tol) const {
    return std::all_of(coins_.begin(), coins_.end(), [tol](const auto& kv) {
        return std::abs(kv.second.c11() - kv.second.c22()) <= tol;
    });
}

// ---------------------------------------------------------------------------

WalkState::WalkState(IntervalZ window) : window_(window) {
    if (window.is_empty()) window_ = IntervalZ::of(0, 0);
    amps_.assign(static_cast<size_t>(window_.size()), Vec2::Zero());
}

WalkState WalkState::delta(int x, const Vec2& v) {
    WalkState s(IntervalZ::of(x, x));
    s.set(x, v);
    return s;
}

Vec2 WalkState::at(int x) const {
    if (!window_.contains(x)) return Vec2::Zero();
    return amps_[static_cast<size_t>(x - window_.lo)];
}

void WalkState::set(int x, const Vec2& v) {
    if (!window_.contains(x)) *this = widened(window_.hull(IntervalZ::of(x, x)));
    amps_[static_cast<size_t>(x - window_.lo)] = v;
}

void WalkState::add(int x, const Vec2& v) { set(x, at(x) + v); }

double WalkState::norm2() const {
    double s = 0.0;
    for (const auto& v : amps_) s += v.squaredNorm();
    return s;
}

double WalkState::norm2_on(const IntervalZ& j) const {
    const IntervalZ w = window_.intersect(j);
    double s = 0.0;
    for (int x = w.lo; x <= w.hi; ++x) s += at(x).squaredNorm();
    return s;
}

double WalkState::max_abs() const {
    double m = 0.0;
    for (const auto& v : amps_) m = std::max(m, v.norm());
    return m;
}

WalkState WalkState::restrict(const IntervalZ& j) const {
    WalkState r(j);
    const IntervalZ w = window_.intersect(j);
    for (int x = w.lo; x <= w.hi; ++x) r.amps_[static_cast<size_t>(x - r.window_.lo)] = at(x);
    return r;
}

WalkState WalkState::widened(const IntervalZ& w) const {
    WalkState r(window_.hull(w));
    for (int x = window_.lo; x <= window_.hi; ++x)
        r.amps_[static_cast<size_t>(x - r.window_.lo)] = amps_[static_cast<size_t>(x - window_.lo)];
    return r;
}

IntervalZ WalkState::support() const {
    int lo = window_.hi + 1, hi = window_.lo - 1;
    for (int x = window_.lo; x <= window_.hi; ++x) {
        if (at(x) != Vec2::Zero()) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    return lo > hi ? IntervalZ::empty() : IntervalZ::of(lo, hi);
}

WalkState& WalkState::operator+=(const WalkState& o) {
    if (!window_.contains(o.window_)) *this = widened(o.window_);
    for (int x = o.window_.lo; x <= o.window_.hi; ++x)
        amps_[static_cast<size_t>(x - window_.lo)] += o.amps_[static_cast<size_t>(x - o.window_.lo)];
    return *this;
}

WalkState& WalkState::operator-=(const WalkState& o) {
    if (!window_.contains(o.window_)) *this = widened(o.window_);
    for (int x = o.window_.lo; x <= o.window_.hi; ++x)
        amps_[static_cast<size_t>(x - window_.lo)] -= o.amps_[static_cast<size_t>(x - o.window_.lo)];
    return *this;
}

WalkState& WalkState::operator*=(cplx s) {
    for (auto& v : amps_) v *= s;
    return *this;
}

WalkState operator+(WalkState a, const WalkState& b) { return a += b; }
WalkState operator-(WalkState a, const WalkState& b) { return a -= b; }
WalkState operator*(cplx s, WalkState a) { return a *= s; }

double max_distance(const WalkState& a, const WalkState& b, std::optional<IntervalZ> on) {
    const IntervalZ w = on ? *on : a.window().hull(b.window());
    double m = 0.0;
    for (int x = w.lo; x <= w.hi; ++x) m = std::max(m, (a.at(x) - b.at(x)).norm());
    return m;
}

// ---------------------------------------------------------------------------

WalkState apply_U(const CoinSequence& coins, const WalkState& psi) {
    const IntervalZ w = psi.window();
    WalkState out(w.neighborhood(1));
    for (int x = w.lo - 1; x <= w.hi + 1; ++x) {
        Vec2 v = Vec2::Zero();
        if (w.contains(x + 1)) v(0) = (coins.matrix_at(x + 1) * psi.at(x + 1))(0);
        if (w.contains(x - 1)) v(1) = (coins.matrix_at(x - 1) * psi.at(x - 1))(1);
        out.set(x, v);
    }
    return out;
}

WalkState evolve(const CoinSequence& coins, const WalkState& psi, int n) {
    if (n < 0) throw DomainError("evolve: n must be non-negative");
    WalkState s = psi;
    for (int i = 0; i < n; ++i) s = apply_U(coins, s);
    return s;
}

IntervalZ incoming_support(const WalkState& psi) {
    const IntervalZ w = psi.window();
    int inf_r = w.lo, sup_l = w.hi;
    bool seen_r = false, seen_l = false;
    for (int x = w.lo; x <= w.hi; ++x) {
        if (!seen_r && psi.right(x) != cplx{}) {
            inf_r = x;
            seen_r = true;
        }
    }
    for (int x = w.hi; x >= w.lo; --x) {
        if (!seen_l && psi.left(x) != cplx{}) {
            sup_l = x;
            seen_l = true;
        }
    }
    if (inf_r > sup_l) return IntervalZ::empty();
    return IntervalZ::of(inf_r, sup_l);
}

Vec2 q_transform(const WalkState& psi, int x) { return Vec2(psi.left(x - 1), psi.right(x)); }

} // namespace qwres
