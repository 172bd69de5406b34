#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace aae {

// Gaussian kernel kappa(j, k) = scale * exp(-(j-k)^2 / (2 sigma_sq)).
// The demo configuration is scale 1, 2 sigma_sq = 0.25.
struct KernelConfig {
    double sigma_sq = 0.125;
    double scale = 1.0;
};

inline double kernel(double j, double k, const KernelConfig& cfg) {
    const double diff = j - k;
    return cfg.scale * std::exp(-diff * diff / (2.0 * cfg.sigma_sq));
}

Eigen::MatrixXd kernel_matrix(Eigen::Index n, const KernelConfig& cfg);

// Exact squared MMD between two distributions given the kernel Gram matrix:
// (q - p)^T K (q - p), the zero-variance oracle for the sampled estimator.
template <class DerivedQ, class DerivedP>
double mmd_exact(const Eigen::MatrixBase<DerivedQ>& q, const Eigen::MatrixBase<DerivedP>& p,
                 const Eigen::MatrixXd& K) {
    if (q.size() != p.size() || q.size() != K.rows())
        throw std::invalid_argument("mmd_exact: dimension mismatch");
    const Eigen::VectorXd diff = q - p;
    return diff.dot(K * diff);
}

double mmd_exact(const Eigen::Ref<const Eigen::VectorXd>& q,
                 const Eigen::Ref<const Eigen::VectorXd>& p, const KernelConfig& cfg);

// Paired-sample kernel expectation: mean over l of kappa(a_l, b_l). The two
// sequences must come from independent streams.
double expect_kernel(const std::vector<Eigen::Index>& a, const std::vector<Eigen::Index>& b,
                     const Eigen::MatrixXd& K);

// Sampled squared MMD. Each of the qq and pp terms needs two independent
// streams from one distribution; the halves of each sequence serve as those
// streams (a single-sample sequence pairs with itself). The cross term pairs
// the full sequences elementwise.
double mmd_sampled(const std::vector<Eigen::Index>& samples_q,
                   const std::vector<Eigen::Index>& samples_p, const KernelConfig& cfg,
                   Eigen::Index dim);

}  // namespace aae
