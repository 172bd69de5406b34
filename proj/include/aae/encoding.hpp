#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace aae {

enum class SignCase { Case1, Case2 };

// Training target derived from a unit vector d of length N = 2^n. Case 1
// (uniform sign) trains on d directly; Case 2 (mixed signs) trains on the
// sign-extended d_bar of length 2N whose least significant index bit is the
// sign ancilla. p and p_hadamard are the squared amplitudes of the training
// vector in the computational and Hadamard bases.
struct TargetEncoding {
    Eigen::VectorXd d;
    SignCase sign_case = SignCase::Case1;
    Eigen::VectorXd d_bar;  // empty unless Case2
    Eigen::VectorXd p;
    Eigen::VectorXd p_hadamard;

    const Eigen::VectorXd& training_vector() const {
        return sign_case == SignCase::Case2 ? d_bar : d;
    }
    int n_qubits() const {
        int n = 0;
        for (Eigen::Index len = training_vector().size(); len > 1; len >>= 1) ++n;
        return n;
    }
};

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Orthonormal Walsh-Hadamard transform (matrix H^(x)n with the 2^(-n/2)
// factor), in-place butterfly. An involution: fwht(fwht(v)) == v.
template <class Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> fwht(const Eigen::MatrixBase<Derived>& v) {
    using Scalar = typename Derived::Scalar;
    Eigen::Vector<Scalar, Eigen::Dynamic> out = v;
    const Eigen::Index n = out.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fwht: length must be a power of two");
    for (Eigen::Index h = 1; h < n; h <<= 1) {
        for (Eigen::Index base = 0; base < n; base += 2 * h) {
            for (Eigen::Index j = base; j < base + h; ++j) {
                const Scalar a = out[j];
                const Scalar b = out[j + h];
                out[j] = a + b;
                out[j + h] = a - b;
            }
        }
    }
    out *= Scalar(1) / std::sqrt(Scalar(n));
    return out;
}

template <class Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> normalize(
    const Eigen::MatrixBase<Derived>& raw) {
    using Scalar = typename Derived::Scalar;
    if (raw.size() == 0) throw std::invalid_argument("normalize: empty vector");
    if (!is_power_of_two(raw.size()))
        throw std::invalid_argument("normalize: length must be a power of two (zero-pad first)");
    const Scalar norm = raw.norm();
    if (norm == Scalar(0)) throw std::invalid_argument("normalize: zero vector");
    return raw / norm;
}

// Pads with trailing zeros to the next power of two.
Eigen::VectorXd pad_to_power_of_two(const Eigen::Ref<const Eigen::VectorXd>& v);

SignCase classify_case(const Eigen::Ref<const Eigen::VectorXd>& d);

// Sign extension: d_bar[2j] = d_j for d_j >= 0, d_bar[2j+1] = -d_j for
// d_j < 0; zero entries occupy the even slot.
Eigen::VectorXd extend_case2(const Eigen::Ref<const Eigen::VectorXd>& d);

TargetEncoding make_target(const Eigen::Ref<const Eigen::VectorXd>& unit_d);

}  // namespace aae
