#pragma once

#include "qwres/walk.hpp"

#include <vector>

namespace qwres {

// Polynomials are ascending coefficient vectors a_0 + a_1 z + ... + a_n z^n.

cplx poly_eval(const std::vector<cplx>& a, cplx z);
// sum_i |a_i| r^i, the magnitude scale of p at |z| = r
double poly_eval_abs(const std::vector<cplx>& a, double r);
// Taylor coefficients t_j = p^{(j)}(z)/j!, j = 0..n
std::vector<cplx> taylor_coefficients(const std::vector<cplx>& a, cplx z);

struct AberthOptions {
    int max_iter = 200;
    double step_tol = 1e-13;
};

// All n roots of a degree-n polynomial with a_0 != 0 and a_n != 0.
// Throws NumericalError if some root has not converged after max_iter sweeps.
std::vector<cplx> aberth_roots(const std::vector<cplx>& a, const AberthOptions& opt = {});

// Connected components of the relation |z_i - z_j| < tol * max(1, |z_i|, |z_j|),
// in order of first appearance.
std::vector<std::vector<cplx>> group_close(const std::vector<cplx>& z, double tol);

struct RootCluster {
    cplx center;
    int mult = 1;
    double residual = 0.0;  // |p(center)| / sum_i |a_i| |center|^i
};

// Groups roots closer than cluster_tol * max(1, |z|) (1e-4 for groups of
// three or more) and confirms each
// cluster size m by |t_j| <= deriv_tol * s_j for j < m, where s_j is the
// magnitude scale of t_j. Clusters failing the test are split; confirmed
// multiple roots are polished by Newton steps on p^{(m-1)}.
std::vector<RootCluster> cluster_roots(const std::vector<cplx>& a, const std::vector<cplx>& roots,
                                       double cluster_tol = 1e-6, double deriv_tol = 1e-6);

// Non-zero roots of p with multiplicities. Exact zero coefficients at either
// end are stripped first; returns the number of stripped low-order zeros in
// *zero_mult when given.
std::vector<RootCluster> nonzero_roots(const std::vector<cplx>& a, int* zero_mult = nullptr);

// Characteristic polynomial det(z I - A), ascending coefficients, by the
// Faddeev-LeVerrier recursion. Only well conditioned for small n.
std::vector<cplx> faddeev_leverrier(const Eigen::MatrixXcd& A);

// Distance between two root multisets (expanded by multiplicity) under a
// greedy closest-pair matching; infinity if the sizes differ.
double multiset_distance(const std::vector<RootCluster>& a, const std::vector<RootCluster>& b);

} // namespace qwres
