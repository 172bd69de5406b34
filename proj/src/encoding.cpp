#include "aae/encoding.hpp"

namespace aae {

namespace {
constexpr double kSignTol = 1e-12;
}

Eigen::VectorXd pad_to_power_of_two(const Eigen::Ref<const Eigen::VectorXd>& v) {
    if (v.size() == 0) throw std::invalid_argument("pad_to_power_of_two: empty vector");
    Eigen::Index padded = 1;
    while (padded < v.size()) padded <<= 1;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(padded);
    out.head(v.size()) = v;
    return out;
}

SignCase classify_case(const Eigen::Ref<const Eigen::VectorXd>& d) {
    bool has_pos = false;
    bool has_neg = false;
    for (Eigen::Index j = 0; j < d.size(); ++j) {
        if (d[j] > kSignTol) has_pos = true;
        if (d[j] < -kSignTol) has_neg = true;
    }
    return (has_pos && has_neg) ? SignCase::Case2 : SignCase::Case1;
}

Eigen::VectorXd extend_case2(const Eigen::Ref<const Eigen::VectorXd>& d) {
    if (classify_case(d) != SignCase::Case2)
        throw std::invalid_argument("extend_case2: input has uniform sign, no ancilla needed");
    Eigen::VectorXd d_bar = Eigen::VectorXd::Zero(2 * d.size());
    for (Eigen::Index j = 0; j < d.size(); ++j) {
        if (d[j] >= 0.0)
            d_bar[2 * j] = d[j];
        else
            d_bar[2 * j + 1] = -d[j];
    }
    return d_bar;
}

TargetEncoding make_target(const Eigen::Ref<const Eigen::VectorXd>& unit_d) {
    if (!is_power_of_two(unit_d.size()))
        throw std::invalid_argument("make_target: length must be a power of two");
    if (std::abs(unit_d.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("make_target: input must be unit norm");
    TargetEncoding enc;
    enc.d = unit_d;
    enc.sign_case = classify_case(unit_d);
    if (enc.sign_case == SignCase::Case2) enc.d_bar = extend_case2(unit_d);
    const Eigen::VectorXd& v = enc.training_vector();
    enc.p = v.array().square();
    enc.p_hadamard = fwht(v).array().square();
    return enc;
}

}  // namespace aae
