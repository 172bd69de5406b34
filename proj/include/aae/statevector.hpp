#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace aae {

template <class Real>
using ComplexVec = Eigen::Vector<std::complex<Real>, Eigen::Dynamic>;

inline constexpr int kMaxQubits = 24;

// Dense statevector over n qubits. Qubit 1 is the most significant bit of the
// amplitude index: |j1 j2 ... jn> sits at index sum_k 2^(n-k) jk.
template <class Real>
struct StateVectorT {
    int n_qubits = 0;
    ComplexVec<Real> amps;

    Eigen::Index dim() const { return amps.size(); }
};

using StateVector = StateVectorT<double>;

enum class Axis { x, y, z };

template <class Real>
StateVectorT<Real> init_zero_state_t(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("init_zero_state: need at least one qubit");
    if (n_qubits > kMaxQubits) throw std::invalid_argument("init_zero_state: qubit count exceeds maximum");
    StateVectorT<Real> st;
    st.n_qubits = n_qubits;
    st.amps = ComplexVec<Real>::Zero(Eigen::Index(1) << n_qubits);
    st.amps[0] = Real(1);
    return st;
}

inline StateVector init_zero_state(int n_qubits) { return init_zero_state_t<double>(n_qubits); }

namespace detail {

template <class Real>
void check_qubit(const StateVectorT<Real>& st, int qubit) {
    if (qubit < 1 || qubit > st.n_qubits) throw std::invalid_argument("qubit index out of range");
}

// Applies a 2x2 unitary to one qubit, iterating index pairs that differ only
// in that qubit's bit. stride is the distance between the |0> and |1> slots.
template <class Real>
void apply_single_qubit(StateVectorT<Real>& st, int qubit, std::complex<Real> u00,
                        std::complex<Real> u01, std::complex<Real> u10, std::complex<Real> u11) {
    check_qubit(st, qubit);
    const Eigen::Index stride = Eigen::Index(1) << (st.n_qubits - qubit);
    const Eigen::Index dim = st.dim();
    auto* a = st.amps.data();
    for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
        for (Eigen::Index lo = base; lo < base + stride; ++lo) {
            const Eigen::Index hi = lo + stride;
            const std::complex<Real> a0 = a[lo];
            const std::complex<Real> a1 = a[hi];
            a[lo] = u00 * a0 + u01 * a1;
            a[hi] = u10 * a0 + u11 * a1;
        }
    }
}

}  // namespace detail

// exp(-i angle/2 sigma_axis)
template <class Real>
void apply_rotation(StateVectorT<Real>& st, Axis axis, int qubit, Real angle) {
    const Real c = std::cos(angle / 2);
    const Real s = std::sin(angle / 2);
    const std::complex<Real> i(0, 1);
    switch (axis) {
        case Axis::x:
            detail::apply_single_qubit<Real>(st, qubit, c, -i * s, -i * s, c);
            break;
        case Axis::y:
            detail::apply_single_qubit<Real>(st, qubit, c, -s, s, c);
            break;
        case Axis::z:
            detail::apply_single_qubit<Real>(st, qubit, std::polar(Real(1), -angle / 2), Real(0),
                                             Real(0), std::polar(Real(1), angle / 2));
            break;
    }
}

template <class Real>
void apply_hadamard(StateVectorT<Real>& st, int qubit) {
    const Real h = Real(1) / std::sqrt(Real(2));
    detail::apply_single_qubit<Real>(st, qubit, h, h, h, -h);
}

template <class Real>
void apply_cnot(StateVectorT<Real>& st, int control, int target) {
    detail::check_qubit(st, control);
    detail::check_qubit(st, target);
    if (control == target) throw std::invalid_argument("cnot: control equals target");
    const Eigen::Index cbit = Eigen::Index(1) << (st.n_qubits - control);
    const Eigen::Index tbit = Eigen::Index(1) << (st.n_qubits - target);
    auto* a = st.amps.data();
    const Eigen::Index dim = st.dim();
    for (Eigen::Index j = 0; j < dim; ++j) {
        if ((j & cbit) && (j & tbit)) std::swap(a[j], a[j ^ tbit]);
    }
}

template <class Real>
void hadamard_all(StateVectorT<Real>& st) {
    for (int q = 1; q <= st.n_qubits; ++q) apply_hadamard(st, q);
}

template <class Real>
Eigen::Vector<Real, Eigen::Dynamic> measure_distribution(const StateVectorT<Real>& st) {
    return st.amps.array().abs2().matrix();
}

// <sigma_z ... sigma_z> over the given qubits: probability-weighted parity.
template <class Real>
Real expectation_z_product(const StateVectorT<Real>& st, const std::vector<int>& qubits) {
    if (qubits.empty()) throw std::invalid_argument("expectation_z_product: empty qubit set");
    Eigen::Index mask = 0;
    for (int q : qubits) {
        detail::check_qubit(st, q);
        mask |= Eigen::Index(1) << (st.n_qubits - q);
    }
    Real acc = 0;
    const Eigen::Index dim = st.dim();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Real p = std::norm(st.amps[j]);
        acc += (std::popcount(static_cast<std::uint64_t>(j & mask)) & 1) ? -p : p;
    }
    return acc;
}

}  // namespace aae
