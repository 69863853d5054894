// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "qndsim/experiments.h"

namespace qndsim {

namespace {

constexpr size_t kMinRounds = 5;
constexpr double kMinAmplitude = 1e-6;

// Residuals r_i = 0.5 + A exp(-g n_i) - y_i over parameters (A, g).
struct ExpDecayFunctor : Eigen::DenseFunctor<double> {
    Eigen::VectorXd n;
    Eigen::VectorXd y;

    ExpDecayFunctor(Eigen::VectorXd n_, Eigen::VectorXd y_)
        : Eigen::DenseFunctor<double>(2, int(n_.size())), n(std::move(n_)), y(std::move(y_)) {
    }

    int operator()(const InputType &p, ValueType &r) const {
        r = (0.5 + p(0) * (-p(1) * n.array()).exp()).matrix() - y;
        return 0;
    }

    int df(const InputType &p, JacobianType &j) const {
        Eigen::ArrayXd e = (-p(1) * n.array()).exp();
        j.col(0) = e.matrix();
        j.col(1) = (-p(0) * n.array() * e).matrix();
        return 0;
    }
};

void check_length(const RoundSeries &series) {
    if (series.rows.size() < kMinRounds) {
        throw std::invalid_argument("decay fit needs at least 5 rounds, got " + std::to_string(series.rows.size()));
    }
}

}  // namespace

DecayFit fit_open_loop(const RoundSeries &series) {
    check_length(series);
    const int m = int(series.rows.size());
    Eigen::VectorXd n(m), y(m);
    for (int i = 0; i < m; i++) {
        n(i) = series.rows[i].round;
        y(i) = series.rows[i].p_target();
    }

    // Starting point from a log-linear regression on the points above the asymptote.
    Eigen::VectorXd p(2);
    p << y.mean() - 0.5, 0.0;
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int k = 0;
        for (int i = 0; i < m; i++) {
            double d = y(i) - 0.5;
            if (d > 1e-9) {
                double l = std::log(d);
                sx += n(i);
                sy += l;
                sxx += n(i) * n(i);
                sxy += n(i) * l;
                k++;
            }
        }
        double den = k * sxx - sx * sx;
        if (k >= 2 && std::abs(den) > 1e-12) {
            double slope = (k * sxy - sx * sy) / den;
            p << std::exp((sy - slope * sx) / k), -slope;
        }
    }

    ExpDecayFunctor f(n, y);
    Eigen::LevenbergMarquardt<ExpDecayFunctor> lm(f);
    lm.setXtol(1e-14);
    lm.setFtol(1e-14);
    lm.setMaxfev(2000);
    auto status = lm.minimize(p);

    DecayFit out;
    out.amplitude = p(0);
    out.rate = p(1);
    out.converged = status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation &&
                    status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters && std::isfinite(p(1));
    out.message = out.converged ? "ok" : "Levenberg-Marquardt did not converge (status " + std::to_string(int(status)) + ")";

    Eigen::VectorXd r(m);
    f(p, r);
    Eigen::MatrixXd j(m, 2);
    f.df(p, j);
    Eigen::Matrix2d jtj = j.transpose() * j;
    double s2 = r.squaredNorm() / std::max(1, m - 2);
    Eigen::FullPivLU<Eigen::Matrix2d> lu(jtj);
    out.rate_stderr = lu.isInvertible() ? std::sqrt(std::max(0.0, s2 * lu.inverse()(1, 1))) : 0.0;
    return out;
}

DecayFit fit_closed_loop(const RoundSeries &series) {
    check_length(series);
    // Rounds 2..N: the first point is set by the input state rather than the steady state.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int k = int(series.rows.size()) - 1;
    for (size_t i = 1; i < series.rows.size(); i++) {
        double x = series.rows[i].round;
        double y = series.rows[i].p_target();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double den = k * sxx - sx * sx;
    double slope = (k * sxy - sx * sy) / den;
    double intercept = (sy - slope * sx) / k;

    double sse = 0;
    for (size_t i = 1; i < series.rows.size(); i++) {
        double e = series.rows[i].p_target() - (intercept + slope * series.rows[i].round);
        sse += e * e;
    }
    double slope_stderr = k > 2 ? std::sqrt(sse / (k - 2) * k / den) : 0.0;

    DecayFit out;
    out.slope = slope;
    out.amplitude = intercept + slope * series.rows[1].round - 0.5;
    if (out.amplitude < kMinAmplitude) {
        throw std::domain_error("closed-loop fit amplitude " + std::to_string(out.amplitude) + " is below 1e-6");
    }
    out.rate = std::abs(slope) / out.amplitude;
    out.rate_stderr = slope_stderr / out.amplitude;
    out.converged = true;
    out.message = "ok";
    return out;
}

}  // namespace qndsim
