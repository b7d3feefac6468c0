#include "proflik/nuisance_model.hpp"

#include <cmath>

#include "proflik/errors.hpp"

namespace proflik {

std::vector<double> pack_symmetric(const Eigen::MatrixXd& m) {
    const int d = static_cast<int>(m.rows());
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(d) * (d + 1) / 2);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) v.push_back(m(i, j));
    return v;
}

Eigen::MatrixXd unpack_symmetric(const std::vector<double>& v, int d) {
    if (v.size() != static_cast<std::size_t>(d) * (d + 1) / 2)
        fail(ErrorCode::InvalidInput, "packed length does not match dimension");
    Eigen::MatrixXd m(d, d);
    std::size_t k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            m(i, j) = v[k];
            m(j, i) = v[k];
            ++k;
        }
    return m;
}

std::vector<double> to_unconstrained(const NuisanceModel& model, const std::vector<double>& x) {
    switch (model.domain) {
        case NuisanceDomain::Unconstrained:
            return x;
        case NuisanceDomain::Positive: {
            std::vector<double> t(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (!(x[i] > 0.0))
                    fail(ErrorCode::InvalidInput, "positive-domain coordinate must be > 0");
                t[i] = std::log(x[i]);
            }
            return t;
        }
        case NuisanceDomain::PositiveDefiniteMatrix: {
            const int d = model.matrix_dim;
            const Eigen::MatrixXd sigma = unpack_symmetric(x, d);
            Eigen::LLT<Eigen::MatrixXd> llt(sigma);
            if (llt.info() != Eigen::Success)
                fail(ErrorCode::NotPositiveDefinite, "matrix nuisance must be positive definite");
            const Eigen::MatrixXd l = llt.matrixL();
            std::vector<double> t;
            t.reserve(x.size());
            for (int i = 0; i < d; ++i)
                for (int j = 0; j <= i; ++j) t.push_back(i == j ? std::log(l(i, i)) : l(i, j));
            return t;
        }
    }
    fail(ErrorCode::InvalidInput, "unknown nuisance domain");
}

std::vector<double> from_unconstrained(const NuisanceModel& model, const std::vector<double>& t) {
    switch (model.domain) {
        case NuisanceDomain::Unconstrained:
            return t;
        case NuisanceDomain::Positive: {
            std::vector<double> x(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) x[i] = std::exp(t[i]);
            return x;
        }
        case NuisanceDomain::PositiveDefiniteMatrix: {
            const int d = model.matrix_dim;
            Eigen::MatrixXd l = Eigen::MatrixXd::Zero(d, d);
            std::size_t k = 0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j <= i; ++j) {
                    l(i, j) = (i == j) ? std::exp(t[k]) : t[k];
                    ++k;
                }
            return pack_symmetric(l * l.transpose());
        }
    }
    fail(ErrorCode::InvalidInput, "unknown nuisance domain");
}

}  // namespace proflik
