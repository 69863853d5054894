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

#include "qndsim/experiments.h"

namespace qndsim {

namespace {

double ratio(int num, int den) {
    return den > 0 ? double(num) / den : 0.0;
}

}  // namespace

double binomial_stderr(double p, int n) {
    if (n <= 0) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
}

double RoundSeries::Row::p_one() const {
    return ratio(ones, shots);
}
double RoundSeries::Row::p_zero() const {
    return ratio(shots - ones, shots);
}
double RoundSeries::Row::p_target() const {
    return ratio(on_target, shots);
}
double RoundSeries::Row::stderr_target() const {
    return binomial_stderr(p_target(), shots);
}

std::vector<double> RoundSeries::target_probabilities() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) {
        out.push_back(r.p_target());
    }
    return out;
}

double fidelity_nd(Distribution2 p_in, Distribution2 p_m) {
    if (p_in.plus < 0 || p_in.minus < 0 || p_m.plus < 0 || p_m.minus < 0) {
        throw std::invalid_argument("fidelity_nd: negative probability");
    }
    // (sqrt(x) + sqrt(y))^2 expanded, so products that are exact stay exact.
    double x = p_in.plus * p_m.plus;
    double y = p_in.minus * p_m.minus;
    return x + y + 2.0 * std::sqrt(x * y);
}

double fidelity_qsp(Distribution2 p_m, Distribution2 p_out) {
    for (double v : {p_m.plus, p_m.minus, p_out.plus, p_out.minus}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("fidelity_qsp: probability outside [0, 1]");
        }
    }
    return p_m.plus * p_out.plus + p_m.minus * p_out.minus;
}

std::array<int, 3> bell_correlation_signs(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
            return {1, 1, -1};
        case BellLabel::PhiMinus:
            return {1, -1, 1};
        case BellLabel::PsiPlus:
            return {-1, 1, 1};
        case BellLabel::PsiMinus:
            return {-1, -1, -1};
    }
    throw std::invalid_argument("unknown Bell label");
}

double bell_fidelity_from_correlations(double zz, double xx, double yy, BellLabel label) {
    for (double v : {zz, xx, yy}) {
        if (!(std::abs(v) <= 1.0)) {
            throw std::invalid_argument("correlation magnitude above 1");
        }
    }
    auto s = bell_correlation_signs(label);
    return (1.0 + s[0] * zz + s[1] * xx + s[2] * yy) / 4.0;
}

Distribution2 CharacterizationRow::p_in() const {
    return {ratio(in_plus, in_plus + in_minus), ratio(in_minus, in_plus + in_minus)};
}

Distribution2 CharacterizationRow::p_m() const {
    return {ratio(m_one, m_one + m_zero), ratio(m_zero, m_one + m_zero)};
}

Distribution2 CharacterizationRow::p_out() const {
    return {ratio(plus_one, plus_one + minus_one), ratio(minus_zero, minus_zero + plus_zero)};
}

double CharacterizationRow::f_nd() const {
    return fidelity_nd(p_in(), p_m());
}

double CharacterizationRow::f_qsp() const {
    return fidelity_qsp(p_m(), p_out());
}

double CharacterizationTable::mean_f_nd() const {
    double s = 0.0;
    for (const auto &r : rows) {
        s += r.f_nd();
    }
    return rows.empty() ? 0.0 : s / rows.size();
}

double CharacterizationTable::mean_f_qsp() const {
    double s = 0.0;
    for (const auto &r : rows) {
        s += r.f_qsp();
    }
    return rows.empty() ? 0.0 : s / rows.size();
}

}  // namespace qndsim
