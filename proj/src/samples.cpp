#include "proflik/samples.hpp"

#include <cmath>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"

namespace proflik {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidInput, std::string(what) + " must be finite");
}

}  // namespace

ScalarSample::ScalarSample(std::vector<double> obs) : y(std::move(obs)) {
    if (y.empty()) fail(ErrorCode::InvalidInput, "sample must contain at least one observation");
    for (double v : y) require_finite(v, "observation");
}

double ScalarSample::mean() const {
    CompensatedSum s;
    for (double v : y) s.add(v);
    return s.value() / static_cast<double>(y.size());
}

double ScalarSample::sample_variance() const {
    if (n() < 2) fail(ErrorCode::TooFewObservations, "sample variance needs n >= 2");
    const double m = mean();
    CompensatedSum s;
    for (double v : y) s.add((v - m) * (v - m));
    return s.value() / static_cast<double>(n() - 1);
}

VectorSample::VectorSample(Eigen::MatrixXd observations) : rows(std::move(observations)) {
    if (rows.rows() < 1 || rows.cols() < 1)
        fail(ErrorCode::InvalidInput, "vector sample needs n >= 1 and d >= 1");
    if (!rows.allFinite()) fail(ErrorCode::InvalidInput, "observations must be finite");
}

ScalarSample VectorSample::flatten() const {
    if (d() != 1) fail(ErrorCode::InvalidInput, "flatten requires d == 1");
    std::vector<double> obs(rows.data(), rows.data() + rows.rows());
    return ScalarSample(std::move(obs));
}

RegressionSample::RegressionSample(Eigen::MatrixXd design, Eigen::VectorXd response)
    : X(std::move(design)), y(std::move(response)) {
    if (X.rows() != y.size())
        fail(ErrorCode::InvalidInput, "design row count must match response length");
    if (X.cols() < 1) fail(ErrorCode::InvalidInput, "design needs q >= 1");
    if (X.rows() < 1) fail(ErrorCode::InvalidInput, "design needs n >= 1");
    if (!X.allFinite() || !y.allFinite()) fail(ErrorCode::InvalidInput, "data must be finite");
}

double sum_sq_dev(const ScalarSample& sample, double mu) {
    if (!std::isfinite(mu)) fail(ErrorCode::InvalidInput, "mu must be finite");
    CompensatedSum s;
    for (double v : sample.y) s.add((v - mu) * (v - mu));
    return s.value();
}

Eigen::MatrixXd scatter_matrix(const VectorSample& sample, const Eigen::VectorXd& mu) {
    const int d = sample.d();
    if (mu.size() != d) fail(ErrorCode::InvalidInput, "mu dimension must equal d");
    if (!mu.allFinite()) fail(ErrorCode::InvalidInput, "mu must be finite");
    // One compensated accumulator per lower-triangle entry.
    std::vector<CompensatedSum> acc(static_cast<std::size_t>(d) * (d + 1) / 2);
    for (int i = 0; i < sample.n(); ++i) {
        const Eigen::VectorXd r = sample.rows.row(i).transpose() - mu;
        std::size_t k = 0;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b <= a; ++b) acc[k++].add(r[a] * r[b]);
    }
    Eigen::MatrixXd A(d, d);
    std::size_t k = 0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b <= a; ++b) {
            A(a, b) = acc[k].value();
            A(b, a) = A(a, b);
            ++k;
        }
    return A;
}

double rss(const RegressionSample& sample, const Eigen::VectorXd& beta) {
    if (beta.size() != sample.q()) fail(ErrorCode::InvalidInput, "beta dimension must equal q");
    if (!beta.allFinite()) fail(ErrorCode::InvalidInput, "beta must be finite");
    const Eigen::VectorXd resid = sample.y - sample.X * beta;
    CompensatedSum s;
    for (int i = 0; i < resid.size(); ++i) s.add(resid[i] * resid[i]);
    return s.value();
}

}  // namespace proflik
