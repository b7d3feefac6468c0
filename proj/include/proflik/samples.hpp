#pragma once

#include <Eigen/Dense>
#include <vector>

namespace proflik {

// Observed univariate data y_1..y_n. Construction checks finiteness; the
// n >= 2 requirements of proper likelihoods are enforced per operation.
struct ScalarSample {
    std::vector<double> y;

    explicit ScalarSample(std::vector<double> obs);

    int n() const { return static_cast<int>(y.size()); }
    double mean() const;
    double sample_variance() const;  // (n-1) denominator
};

// n observations of a d-vector, stored as rows.
struct VectorSample {
    Eigen::MatrixXd rows;

    explicit VectorSample(Eigen::MatrixXd observations);

    int n() const { return static_cast<int>(rows.rows()); }
    int d() const { return static_cast<int>(rows.cols()); }
    Eigen::VectorXd mean() const { return rows.colwise().mean(); }
    ScalarSample flatten() const;  // valid when d == 1
};

// Design matrix X (rows x_i^T) and responses y. Column rank is checked by the
// operations that solve normal equations, not here.
struct RegressionSample {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;

    RegressionSample(Eigen::MatrixXd design, Eigen::VectorXd response);

    int n() const { return static_cast<int>(X.rows()); }
    int q() const { return static_cast<int>(X.cols()); }
};

// S(mu) = sum (y_i - mu)^2, compensated.
double sum_sq_dev(const ScalarSample& sample, double mu);

// A(mu) = sum (y_i - mu)(y_i - mu)^T, symmetric PSD.
Eigen::MatrixXd scatter_matrix(const VectorSample& sample, const Eigen::VectorXd& mu);

// RSS(beta) = sum (y_i - x_i^T beta)^2, compensated.
double rss(const RegressionSample& sample, const Eigen::VectorXd& beta);

}  // namespace proflik
