#include "aae/mmd.hpp"

#include <cmath>

namespace aae {

Eigen::MatrixXd kernel_matrix(Eigen::Index n, const KernelConfig& cfg) {
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k <= j; ++k) {
            K(j, k) = kernel(double(j), double(k), cfg);
            K(k, j) = K(j, k);
        }
    return K;
}

double mmd_exact(const Eigen::Ref<const Eigen::VectorXd>& q,
                 const Eigen::Ref<const Eigen::VectorXd>& p, const KernelConfig& cfg) {
    if (q.size() != p.size()) throw std::invalid_argument("mmd_exact: dimension mismatch");
    return mmd_exact(q, p, kernel_matrix(q.size(), cfg));
}

double expect_kernel(const std::vector<Eigen::Index>& a, const std::vector<Eigen::Index>& b,
                     const Eigen::MatrixXd& K) {
    if (a.empty() || b.empty()) throw std::invalid_argument("expect_kernel: empty sample sequence");
    const std::size_t n = std::min(a.size(), b.size());
    double acc = 0.0;
    for (std::size_t l = 0; l < n; ++l) acc += K(a[l], b[l]);
    return acc / double(n);
}

namespace {

double self_term(const std::vector<Eigen::Index>& samples, const Eigen::MatrixXd& K) {
    const std::size_t half = samples.size() / 2;
    if (half == 0) return K(samples[0], samples[0]);
    double acc = 0.0;
    for (std::size_t l = 0; l < half; ++l) acc += K(samples[l], samples[half + l]);
    return acc / double(half);
}

}  // namespace

double mmd_sampled(const std::vector<Eigen::Index>& samples_q,
                   const std::vector<Eigen::Index>& samples_p, const KernelConfig& cfg,
                   Eigen::Index dim) {
    if (samples_q.empty() || samples_p.empty())
        throw std::invalid_argument("mmd_sampled: empty sample sequence");
    const Eigen::MatrixXd K = kernel_matrix(dim, cfg);
    return self_term(samples_q, K) - 2.0 * expect_kernel(samples_q, samples_p, K) +
           self_term(samples_p, K);
}

}  // namespace aae
