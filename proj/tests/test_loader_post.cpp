#include <doctest.h>

#include <aae/encoding.hpp>
#include <aae/loader_post.hpp>
#include <aae/rng.hpp>

#include <Eigen/Dense>
#include <cmath>

using namespace aae;

namespace {

StateVector state_from_real(const Eigen::VectorXd& amps) {
  StateVector st;
  st.n_qubits = 0;
  for (Eigen::Index len = amps.size(); len > 1; len >>= 1) ++st.n_qubits;
  st.amps = amps.cast<std::complex<double>>();
  return st;
}

Eigen::VectorXd random_case2_unit(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd d(n);
  for (Eigen::Index j = 0; j < n; ++j) d[j] = uniform01(rng) - 0.5;
  d /= d.norm();
  return d;
}

}  // namespace

TEST_CASE("post-selection recovers the signed data") {
  Eigen::VectorXd d(2);
  d << 0.6, -0.8;
  TargetEncoding enc = make_target(d);
  StateVector psi = state_from_real(enc.d_bar);  // (0.6, 0, 0, 0.8)

  PostSelectResult res = post_select(psi);
  CHECK(res.success_probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.data_state.n_qubits == 1);
  CHECK(std::abs(res.data_state.amps[0].real() - 0.6) < 1e-12);
  CHECK(std::abs(res.data_state.amps[1].real() + 0.8) < 1e-12);
  CHECK(std::abs(res.data_state.amps.norm() - 1.0) < 1e-10);

  d << -0.6, 0.8;
  enc = make_target(d);
  res = post_select(state_from_real(enc.d_bar));
  CHECK(res.success_probability == doctest::Approx(0.5).epsilon(1e-12));
  Eigen::VectorXd got = res.data_state.amps.real();
  got = align_global_sign(got, d);
  CHECK((got - d).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("post-selection of |00> gives |0> at half probability") {
  StateVector st = init_zero_state(2);
  PostSelectResult res = post_select(st);
  CHECK(res.success_probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(res.data_state.amps[0] - 1.0) < 1e-12);
  CHECK(std::abs(res.data_state.amps[1]) < 1e-12);
}

TEST_CASE("post-selection rejects a dead branch") {
  // |0>(x)|+> turns into |0>|0> under the final Hadamard: nothing to select
  Eigen::VectorXd amps(4);
  amps << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0, 0.0;
  StateVector st = state_from_real(amps);
  CHECK_THROWS_AS(post_select(st), std::runtime_error);

  StateVector tiny = init_zero_state(1);
  CHECK_THROWS_AS(post_select(tiny), std::invalid_argument);
}

TEST_CASE("post-selection on random exact extensions") {
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd d = random_case2_unit(8, derive_seed(61, rep, 0, 0));
    if (classify_case(d) != SignCase::Case2) continue;
    TargetEncoding enc = make_target(d);
    PostSelectResult res = post_select(state_from_real(enc.d_bar));
    CHECK(res.success_probability == doctest::Approx(0.5).epsilon(1e-12));
    Eigen::VectorXd got = align_global_sign(res.data_state.amps.real(), d);
    CHECK((got - d).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("overlap diagnostic") {
  Eigen::VectorXd d(2);
  d << 0.6, -0.8;
  TargetEncoding enc = make_target(d);
  StateVector psi = state_from_real(enc.d_bar);
  CHECK(overlap(psi, d) == doctest::Approx(1.0).epsilon(1e-12));

  // branch proportional to (0.8, 0.6), orthogonal to d
  Eigen::VectorXd perp(4);
  perp << 0.8, 0.0, 0.0, -0.6;
  CHECK(overlap(state_from_real(perp), d) == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::VectorXd wrong(4);
  wrong << 1, 0, 0, 0;
  CHECK_THROWS_AS(overlap(psi, wrong), std::invalid_argument);
}

TEST_CASE("amplification lifts an exact loader branch to certainty") {
  Eigen::VectorXd d(2);
  d << 0.6, -0.8;
  TargetEncoding enc = make_target(d);
  StateVector amplified = amplitude_amplify(state_from_real(enc.d_bar));
  REQUIRE(amplified.n_qubits == 3);

  double p11 = 0.0;
  for (Eigen::Index j = 3; j < amplified.dim(); j += 4) p11 += std::norm(amplified.amps[j]);
  CHECK(std::abs(p11 - 1.0) < 1e-9);
  CHECK(std::abs(amplified.amps.norm() - 1.0) < 1e-10);

  Eigen::VectorXd data(2);
  data << amplified.amps[3].real(), amplified.amps[7].real();
  data = align_global_sign(data, d);
  CHECK((data - d).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("pre-amplification branch amplitude sits at one half") {
  Eigen::VectorXd d(2);
  d << 0.6, -0.8;
  TargetEncoding enc = make_target(d);

  // build A's output by hand: (I (x) H) psi_bar tensored with |+>
  StateVector rotated = state_from_real(enc.d_bar);
  apply_hadamard(rotated, rotated.n_qubits);
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd a(2 * rotated.dim());
  for (Eigen::Index j = 0; j < rotated.dim(); ++j) {
    a[2 * j] = h * rotated.amps[j];
    a[2 * j + 1] = h * rotated.amps[j];
  }
  std::complex<double> good = d[0] * a[3] + d[1] * a[7];
  CHECK(std::abs(good.real() - 0.5) < 1e-12);
  CHECK(std::abs(good.imag()) < 1e-15);
}

TEST_CASE("amplification of an approximate loader keeps the branch heavy") {
  Eigen::VectorXd d(2);
  d << 0.6, -0.8;
  TargetEncoding enc = make_target(d);

  // rotate the selected branch by delta: overlap becomes cos(delta) = 0.95
  Eigen::VectorXd perp(4);
  perp << 0.8, 0.0, 0.0, -0.6;
  const double delta = 0.3177;
  Eigen::VectorXd mixed = std::cos(delta) * enc.d_bar + std::sin(delta) * perp;
  StateVector candidate = state_from_real(mixed);
  double o = overlap(candidate, d);
  CHECK(o == doctest::Approx(0.95).epsilon(1e-3));

  StateVector amplified = amplitude_amplify(candidate);
  double p11 = 0.0;
  for (Eigen::Index j = 3; j < amplified.dim(); j += 4) p11 += std::norm(amplified.amps[j]);
  CHECK(p11 >= 0.9);
  CHECK(p11 <= 1.0 + 1e-12);

  // a generic perturbation keeps the probability inside the same window
  Eigen::VectorXd bump(4);
  bump << 0.5, 1.0, -0.75, 0.25;
  Eigen::VectorXd noisy = enc.d_bar + 0.3 * bump;
  noisy /= noisy.norm();
  StateVector noisy_state = state_from_real(noisy);
  CHECK(overlap(noisy_state, d) > 0.9);
  amplified = amplitude_amplify(noisy_state);
  p11 = 0.0;
  for (Eigen::Index j = 3; j < amplified.dim(); j += 4) p11 += std::norm(amplified.amps[j]);
  CHECK(p11 >= 0.9);
  CHECK(p11 <= 1.0 + 1e-12);
}

TEST_CASE("gate and state forms of the amplification round agree") {
  AnsatzSpec spec = AnsatzSpec::all_y(3, 4);
  for (int rep = 0; rep < 4; ++rep) {
    ParamVector params = random_params(spec, derive_seed(88, rep, 0, 0));
    StateVector via_gates = amplitude_amplify(spec, params);
    StateVector via_state = amplitude_amplify(run_ansatz(spec, params));
    REQUIRE(via_gates.dim() == via_state.dim());
    CHECK((via_gates.amps - via_state.amps).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(via_gates.amps.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("the grover round is unitary") {
  // Q = A S0 Adag Schi applied to a random state round-trips through Qdag
  AnsatzSpec spec = AnsatzSpec::all_y(2, 3);
  ParamVector params = random_params(spec, 314);
  const int n_total = spec.n_qubits + 1;

  auto apply_a = [&](StateVector& st) {
    apply_ansatz(st, spec, params);
    apply_hadamard(st, spec.n_qubits);
    apply_hadamard(st, n_total);
  };
  auto apply_a_dagger = [&](StateVector& st) {
    apply_hadamard(st, n_total);
    apply_hadamard(st, spec.n_qubits);
    apply_ansatz_inverse(st, spec, params);
  };
  auto s_chi = [](StateVector& st) {
    for (Eigen::Index j = 3; j < st.dim(); j += 4) st.amps[j] = -st.amps[j];
  };
  auto s_0 = [](StateVector& st) { st.amps[0] = -st.amps[0]; };

  Rng rng(1618);
  StateVector st = init_zero_state(n_total);
  for (Eigen::Index j = 0; j < st.dim(); ++j)
    st.amps[j] = std::complex<double>(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
  st.amps /= st.amps.norm();
  const Eigen::VectorXcd original = st.amps;

  // Q
  s_chi(st);
  apply_a_dagger(st);
  s_0(st);
  apply_a(st);
  CHECK(std::abs(st.amps.norm() - 1.0) < 1e-10);
  // Q dagger
  apply_a_dagger(st);
  s_0(st);
  apply_a(st);
  s_chi(st);
  CHECK((st.amps - original).cwiseAbs().maxCoeff() < 1e-10);
}
