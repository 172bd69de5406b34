#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace aae {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// First/second-moment accumulators; one instance per optimized vector.
template <class Scalar>
struct AdamStateT {
    Eigen::Vector<Scalar, Eigen::Dynamic> m;
    Eigen::Vector<Scalar, Eigen::Dynamic> v;
    long step = 0;

    explicit AdamStateT(Eigen::Index dim)
        : m(Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(dim)),
          v(Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(dim)) {}
};

using AdamState = AdamStateT<double>;

// One bias-corrected Adam update, in place.
template <class Scalar, class DerivedP, class DerivedG>
void adam_step(Eigen::MatrixBase<DerivedP>& params, const Eigen::MatrixBase<DerivedG>& grad,
               AdamStateT<Scalar>& state, Scalar lr, const AdamConfig& cfg = {}) {
    ++state.step;
    const Scalar b1 = Scalar(cfg.beta1);
    const Scalar b2 = Scalar(cfg.beta2);
    state.m = b1 * state.m + (Scalar(1) - b1) * grad;
    state.v = b2 * state.v + (Scalar(1) - b2) * grad.array().square().matrix();
    const Scalar m_corr = Scalar(1) - std::pow(b1, Scalar(state.step));
    const Scalar v_corr = Scalar(1) - std::pow(b2, Scalar(state.step));
    params.derived().array() -= lr * (state.m.array() / m_corr) /
                                ((state.v.array() / v_corr).sqrt() + Scalar(cfg.epsilon));
}

}  // namespace aae
