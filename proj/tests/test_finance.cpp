#include <doctest.h>

#include <aae/finance.hpp>
#include <aae/report.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

using namespace aae;

namespace {

const char* kFixture = AAE_DATA_DIR "/dow4_2008.csv";
const char* kFixture8 = AAE_DATA_DIR "/dow8_2008.csv";

// frozen classical entropies, one per sliding window
struct TermOracle {
  const char* term;
  double entropy;
};
constexpr TermOracle kOracles[] = {
    {"Aug 08", 0.9075461882280975}, {"Sep 08", 0.6350748506506262},
    {"Oct 08", 0.6573243161126819}, {"Nov 08", 0.7048101765936585},
    {"Dec 08", 0.6214341777262127}, {"Jan 09", 0.7481802463943736},
    {"Feb 09", 0.7025389612825563}, {"Mar 09", 0.8950275306547868},
};

}  // namespace

TEST_CASE("price table parsing") {
  StockSeries series = load_prices_file(kFixture);
  REQUIRE(series.symbols.size() == 4);
  REQUIRE(series.dates.size() == 12);
  CHECK(series.symbols[0] == "XOM");
  CHECK(series.symbols[3] == "MSFT");
  CHECK(series.dates.front() == "Apr 08");
  CHECK(series.dates.back() == "Mar 09");
  CHECK(series.prices(0, 0) == doctest::Approx(84.80));
  CHECK(series.prices(3, 11) == doctest::Approx(15.96));

  StockSeries wide = load_prices_file(kFixture8);
  CHECK(wide.symbols.size() == 8);
  CHECK(wide.prices.cols() == 12);
}

TEST_CASE("price table rejects malformed input") {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return load_prices(in);
  };
  CHECK_THROWS_AS(parse("Symbol,Jan\nA,1.0\n"), std::invalid_argument);          // one column
  CHECK_THROWS_AS(parse("Symbol,Jan,Feb\n"), std::invalid_argument);             // no rows
  CHECK_THROWS_AS(parse("Symbol,Jan,Feb\nA,1.0\n"), std::invalid_argument);      // ragged
  CHECK_THROWS_AS(parse("Symbol,Jan,Feb\nA,1.0,abc\n"), std::invalid_argument);  // not a number
  CHECK_THROWS_AS(parse("Symbol,Jan,Feb\nA,1.0,0.0\n"), std::invalid_argument);  // non-positive
  CHECK_THROWS_AS(parse("Symbol,Jan,Feb\nA,1,2\nA,3,4\n"), std::invalid_argument);  // duplicate

  std::istringstream ok("Symbol,Jan,Feb\n\nA, 1.5 ,2.5\n");
  StockSeries s = load_prices(ok);
  CHECK(s.prices(0, 0) == doctest::Approx(1.5));  // blank lines and padding tolerated
}

TEST_CASE("log returns") {
  StockSeries series = load_prices_file(kFixture);
  Eigen::MatrixXd r = log_returns(series);
  REQUIRE(r.rows() == 4);
  REQUIRE(r.cols() == 11);
  CHECK(r(0, 0) == doctest::Approx(0.060624621816434576).epsilon(1e-15));
  CHECK(r(0, 0) == doctest::Approx(std::log(90.10 / 84.80)).epsilon(1e-15));

  StockSeries flat;
  flat.symbols = {"A"};
  flat.dates = {"Jan", "Feb"};
  flat.prices.resize(1, 2);
  flat.prices << 7.0, 7.0;
  CHECK(log_returns(flat)(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("window coefficients are normalized") {
  StockSeries series = load_prices_file(kFixture);
  Eigen::MatrixXd r = log_returns(series);

  for (int w = 0; w < 8; ++w) {
    MarketWindow market = window_coefficients(r.middleCols(w, 4), kOracles[w].term);
    CHECK(market.a.rows() == 4);
    CHECK(market.a.cols() == 4);
    CHECK(std::abs(market.a.squaredNorm() - 1.0) < 1e-10);
    CHECK(std::abs(market.C.trace() - 1.0) < 1e-10);
    CHECK((market.C - market.C.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(market.C);
    CHECK(solver.eigenvalues().minCoeff() > -1e-10);
    // rows are centered, so every window is mixed-sign
    CHECK(market.a.minCoeff() < 0.0);
    CHECK(market.a.maxCoeff() > 0.0);
  }

  Eigen::MatrixXd constant_row(2, 4);
  constant_row << 0.01, 0.01, 0.01, 0.01, 0.02, -0.01, 0.03, 0.0;
  CHECK_THROWS_AS(window_coefficients(constant_row), std::invalid_argument);

  Eigen::MatrixXd single(1, 3);
  single << 0.02, -0.01, 0.04;
  MarketWindow lone = window_coefficients(single);
  CHECK(lone.C.rows() == 1);
  CHECK(lone.C(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact_svd_entropy(lone.C) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("classical entropy oracle") {
  Eigen::MatrixXd pure = Eigen::MatrixXd::Zero(4, 4);
  pure(0, 0) = 1.0;
  CHECK(exact_svd_entropy(pure) == doctest::Approx(0.0));

  Eigen::MatrixXd mixed = Eigen::MatrixXd::Identity(4, 4) / 4.0;
  CHECK(exact_svd_entropy(mixed) == doctest::Approx(std::log(4.0)).epsilon(1e-14));

  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, -0.5, 0.0;
  CHECK_THROWS_AS(exact_svd_entropy(asym), std::invalid_argument);

  Eigen::MatrixXd negative = -Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(exact_svd_entropy(negative), std::invalid_argument);
}

TEST_CASE("per-term entropies match the frozen oracle") {
  StockSeries series = load_prices_file(kFixture);
  Eigen::MatrixXd r = log_returns(series);

  double crisis_min = 1e9;
  std::vector<double> got;
  for (int w = 0; w < 8; ++w) {
    MarketWindow market = window_coefficients(r.middleCols(w, 4), kOracles[w].term);
    double s = exact_svd_entropy(market.C);
    CHECK(s == doctest::Approx(kOracles[w].entropy).epsilon(1e-10));
    got.push_back(s);
    if (w >= 2 && w <= 6) crisis_min = std::min(crisis_min, s);
  }
  // the crisis dip: autumn windows fall well below the summer level and the
  // final window recovers above the minimum
  CHECK(got[0] > 0.8);
  CHECK(crisis_min < got[0] - 0.1);
  CHECK(got[7] > crisis_min + 0.1);
}

TEST_CASE("data vector layout") {
  StockSeries series = load_prices_file(kFixture);
  Eigen::MatrixXd r = log_returns(series);
  MarketWindow market = window_coefficients(r.middleCols(0, 4), "Aug 08");

  TargetEncoding enc = build_data_vector(market.a);
  CHECK(enc.sign_case == SignCase::Case2);
  CHECK(enc.d.size() == 16);
  CHECK(enc.d_bar.size() == 32);
  CHECK(enc.n_qubits() == 5);

  for (Eigen::Index j = 0; j < 4; ++j)
    for (Eigen::Index t = 0; t < 4; ++t) {
      const double a = market.a(j, t);
      CHECK(enc.d[4 * j + t] == a);
      if (a >= 0.0) {
        CHECK(enc.d_bar[8 * j + 2 * t] == a);
        CHECK(enc.d_bar[8 * j + 2 * t + 1] == 0.0);
      } else {
        CHECK(enc.d_bar[8 * j + 2 * t] == 0.0);
        CHECK(enc.d_bar[8 * j + 2 * t + 1] == -a);
      }
    }

  // padding: 3 stocks x 3 return columns lands in a 4 x 4 = 16 slot vector
  Eigen::MatrixXd small = market.a.topLeftCorner(3, 3);
  small /= small.norm();
  TargetEncoding padded = build_data_vector(small);
  CHECK(padded.d.size() == 16);
  CHECK(padded.d[4 * 0 + 3] == 0.0);
  CHECK(padded.d[4 * 3 + 0] == 0.0);
  CHECK(padded.d[4 * 1 + 1] == small(1, 1));

  Eigen::MatrixXd unnormalized = market.a * 2.0;
  CHECK_THROWS_AS(build_data_vector(unnormalized), std::invalid_argument);

  // an all-positive coefficient matrix skips the sign extension
  Eigen::MatrixXd positive(2, 2);
  positive << 0.5, 0.5, 0.5, 0.5;
  TargetEncoding pos_enc = build_data_vector(positive);
  CHECK(pos_enc.sign_case == SignCase::Case1);
  CHECK(pos_enc.n_qubits() == 2);
}

TEST_CASE("the exact data state reduces to the correlation matrix") {
  StockSeries series = load_prices_file(kFixture);
  Eigen::MatrixXd r = log_returns(series);
  MarketWindow market = window_coefficients(r.middleCols(0, 4), "Aug 08");
  TargetEncoding enc = build_data_vector(market.a);

  // partial trace over the time register of |Data><Data|
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(4, 4);
  for (Eigen::Index j = 0; j < 4; ++j)
    for (Eigen::Index k = 0; k < 4; ++k)
      for (Eigen::Index t = 0; t < 4; ++t) rho(j, k) += enc.d[4 * j + t] * enc.d[4 * k + t];
  CHECK((rho - market.C).cwiseAbs().maxCoeff() < 1e-10);

  // so the quantum and classical entropies agree on the exact state
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(market.C);
  Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
  double s = 0.0;
  for (Eigen::Index j = 0; j < lambda.size(); ++j)
    if (lambda[j] > 1e-12) s -= lambda[j] * std::log(lambda[j]);
  CHECK(s == doctest::Approx(exact_svd_entropy(market.C)).epsilon(1e-12));
}

TEST_CASE("reduced pipeline produces a complete, deterministic report") {
  StockSeries series = load_prices_file(kFixture);
  PipelineConfig cfg;
  cfg.train.iterations = 3;
  cfg.train.n_trials = 1;
  cfg.train.seed = 7;
  cfg.n_layers = 2;
  cfg.qsvd_iterations = 5;
  cfg.qsvd_attempts = 2;
  cfg.baseline = false;
  cfg.concurrent_terms = true;

  EntropyReport report = run_entropy_pipeline(series, cfg);
  REQUIRE(report.terms.size() == 8);
  for (int w = 0; w < 8; ++w) {
    CHECK(report.terms[size_t(w)].term == kOracles[w].term);
    if (report.terms[size_t(w)].error.empty())
      CHECK(report.terms[size_t(w)].exact_entropy ==
            doctest::Approx(kOracles[w].entropy).epsilon(1e-10));
  }

  EntropyReport again = run_entropy_pipeline(series, cfg);
  CHECK(report_json(report, cfg).dump(2) == report_json(again, cfg).dump(2));
  CHECK(report_csv(report) == report_csv(again));

  PipelineConfig seq = cfg;
  seq.concurrent_terms = false;
  EntropyReport serial = run_entropy_pipeline(series, seq);
  CHECK(report_csv(serial) == report_csv(report));

  CHECK_THROWS_AS([&] {
    PipelineConfig bad = cfg;
    bad.window_length = 1;
    run_entropy_pipeline(series, bad);
  }(), std::invalid_argument);
}
