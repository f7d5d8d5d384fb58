#pragma once

#include <vector>

namespace rmt {

// Airy kernel S(s1,s2) in the Christoffel-Darboux form, with the diagonal
// limit Ai'(s)^2 - s Ai(s)^2 when |s1-s2| < 1e-6.
double airy_kernel(double s1, double s2);

// Christoffel-Darboux kernel of the orthonormal Laguerre system,
// S_p(x,y) = sum_{j<p} phi_j(x) phi_j(y), evaluated by a three-term
// recurrence with mantissa/exponent rescaling (the weight x^{a/2} e^{-x/2}
// underflows double precision near the soft edge for p in the hundreds).
double laguerre_kernel(int p, int alpha, double x, double y);

struct KernelConvergence {
    double finite_p = 0.0;  // sigma * S_p at the rescaled arguments
    double airy = 0.0;
    double difference = 0.0;
};

// Compares the edge-rescaled Laguerre kernel (n = p + alpha) with its Airy
// limit at (s1, s2).
KernelConvergence rescaled_kernel_convergence(int p, int alpha, double s1, double s2);

// Nystrom discretization of the Airy kernel on (s_min, s_min + L).
struct KernelDiscretization {
    double s_min = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> matrix;  // m x m, row-major, sqrt(w_i) K sqrt(w_j)
    int m = 0;
};

KernelDiscretization discretize_airy_kernel(double s, int m_nodes, double length = 16.0);

// eigenvalues of the discretized kernel (symmetric Jacobi iteration)
std::vector<double> kernel_spectrum(const KernelDiscretization& k);

// P(no rescaled eigenvalue above s) = det(I - K on (s, inf)); equals F2(s)
// in the limit. Throws if node-doubling moves the value by more than 1e-8.
double fredholm_gap(double s, int m_nodes = 80);

// P(#(s, inf) = j) for j = 0..k_max, from det(I + (z-1) K chi) sampled at
// k_max + 2 real z values and interpolated.
std::vector<double> count_distribution(double s, int k_max, int m_nodes = 80);

// P(k-th largest rescaled eigenvalue <= s), complex (beta = 2) case.
double topk_cdf_complex(int k, double s, int m_nodes = 80);

// Tabulated version for bulk evaluation (one Fredholm solve per node, then
// linear interpolation; each solve costs an eigendecomposition). Queries
// outside [s_min, s_max] clamp to the end values.
class TopkCdfTable {
  public:
    TopkCdfTable(int k, double s_min, double s_max, double step = 0.02,
                 int m_nodes = 60);
    double operator()(double s) const;

  private:
    double s_min_ = 0.0, step_ = 0.0;
    std::vector<double> values_;
};

// limiting real-case (beta = 1) 2x2 matrix kernel entries
struct RealEdgeKernelValue {
    double k11 = 0.0, k12 = 0.0, k21 = 0.0, k22 = 0.0;
};

RealEdgeKernelValue real_edge_kernel(double s1, double s2);

// one-point edge correlation, sqrt(det K(s,s))
double real_edge_density(double s);

}  // namespace rmt
