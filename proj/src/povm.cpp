// Copyright 2026 The AMBQC Authors
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

#include "ambqc/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ambqc/errors.hpp"

namespace ambqc {

std::string PovmValidation::summary() const {
    if (violations.empty()) {
        return "valid";
    }
    std::ostringstream out;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) {
            out << "; ";
        }
        out << violations[i].message;
    }
    return out.str();
}

PovmValidation validate(const Povm &povm) {
    PovmValidation report;
    if (povm.arity() < 2) {
        report.violations.push_back(
            {PovmViolationKind::TooFewOutcomes, -1, static_cast<double>(povm.arity()), "POVM needs at least 2 outcomes"});
    }
    LocalOperator sum = LocalOperator::Zero();
    for (int mu = 0; mu < povm.arity(); ++mu) {
        const LocalOperator &element = povm.elements[mu];
        if (!element.allFinite()) {
            report.violations.push_back({PovmViolationKind::NotFinite, mu, 0.0,
                                         "element " + std::to_string(mu) + " has non-finite entries"});
            continue;
        }
        double asym = (element - element.adjoint()).cwiseAbs().maxCoeff();
        if (asym > kPovmTolerance) {
            std::ostringstream msg;
            msg << "element " << mu << " not Hermitian (|L - L^dag|max = " << asym << ")";
            report.violations.push_back({PovmViolationKind::NotHermitian, mu, asym, msg.str()});
        }
        Eigen::SelfAdjointEigenSolver<LocalOperator> solver(element, Eigen::EigenvaluesOnly);
        double min_eig = solver.eigenvalues().minCoeff();
        if (min_eig < -kPovmTolerance) {
            std::ostringstream msg;
            msg << "element " << mu << " not positive (min eigenvalue " << min_eig << ")";
            report.violations.push_back({PovmViolationKind::NotPositive, mu, -min_eig, msg.str()});
        }
        sum += element;
    }
    report.completeness_deficit = LocalOperator::Identity() - sum;
    double deficit = report.completeness_deficit.cwiseAbs().maxCoeff();
    if (!(deficit <= kPovmTolerance)) {
        std::ostringstream msg;
        msg << "elements do not sum to identity (deficit max entry " << deficit << ", deficit matrix ["
            << report.completeness_deficit(0, 0) << ", " << report.completeness_deficit(0, 1) << "; "
            << report.completeness_deficit(1, 0) << ", " << report.completeness_deficit(1, 1) << "])";
        report.violations.push_back({PovmViolationKind::Incomplete, -1, deficit, msg.str()});
    }
    return report;
}

void require_valid(const Povm &povm) {
    PovmValidation report = validate(povm);
    if (!report.valid()) {
        throw ValidationError(ValidationCode::InvariantViolation,
                              "invalid POVM '" + povm.label + "': " + report.summary());
    }
}

static LocalOperator projector(const Eigen::Vector2cd &v) {
    return v * v.adjoint();
}

Povm z_basis() {
    LocalOperator p0 = LocalOperator::Zero();
    LocalOperator p1 = LocalOperator::Zero();
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    return {"z", {p0, p1}};
}

Povm x_basis() {
    Povm povm = basis_povm(std::numbers::pi / 2, 0.0);
    // Exact entries: cos(pi/4)^2 is 0.5000000000000001 in floating point.
    povm.elements[0] << 0.5, 0.5, 0.5, 0.5;
    povm.elements[1] << 0.5, -0.5, -0.5, 0.5;
    povm.label = "x";
    return povm;
}

Povm basis_povm(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw ValidationError(ValidationCode::Precondition, "basis angles must be finite");
    }
    Eigen::Vector2cd up(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
    LocalOperator p0 = projector(up);
    // The second element is the exact complement, so the pair sums to 1.
    LocalOperator p1 = LocalOperator::Identity() - p0;
    std::ostringstream label;
    label << "basis(" << theta << "," << phi << ")";
    return {label.str(), {p0, p1}};
}

Povm trine_povm() {
    Povm povm{"trine", {}};
    for (int j = 0; j < 3; ++j) {
        double angle = 2.0 * std::numbers::pi * j / 3.0;
        Eigen::Vector2cd v(std::cos(angle / 2), std::sin(angle / 2));
        povm.elements.push_back((2.0 / 3.0) * projector(v));
    }
    return povm;
}

Povm builtin_povm(std::string_view name, std::span<const double> params) {
    auto expect_params = [&](size_t n) {
        if (params.size() != n) {
            throw ValidationError(ValidationCode::Precondition, "POVM '" + std::string(name) + "' takes " +
                                                                    std::to_string(n) + " parameters, got " +
                                                                    std::to_string(params.size()));
        }
    };
    Povm povm;
    if (name == "z") {
        expect_params(0);
        povm = z_basis();
    } else if (name == "x") {
        expect_params(0);
        povm = x_basis();
    } else if (name == "basis") {
        expect_params(2);
        povm = basis_povm(params[0], params[1]);
    } else if (name == "trine") {
        expect_params(0);
        povm = trine_povm();
    } else {
        throw ValidationError(ValidationCode::Precondition, "unknown POVM family '" + std::string(name) + "'");
    }
    require_valid(povm);
    return povm;
}

std::vector<double> mixed_outcome_distribution(const Povm &povm) {
    std::vector<double> dist(povm.elements.size());
    for (size_t mu = 0; mu < dist.size(); ++mu) {
        dist[mu] = 0.5 * povm.elements[mu].trace().real();
    }
    return dist;
}

std::vector<RankOneTerm> rank_one_terms(const LocalOperator &element, double cutoff) {
    Eigen::SelfAdjointEigenSolver<LocalOperator> solver(element);
    std::vector<RankOneTerm> terms;
    for (int i = 1; i >= 0; --i) {
        double w = solver.eigenvalues()(i);
        if (w > cutoff) {
            terms.push_back({w, solver.eigenvectors().col(i)});
        }
    }
    return terms;
}

LocalOperator kraus_operator(const LocalOperator &element) {
    Eigen::SelfAdjointEigenSolver<LocalOperator> solver(element);
    Eigen::Vector2d roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

int max_arity(const PovmTable &table) {
    int result = 0;
    for (const Povm &p : table) {
        result = std::max(result, p.arity());
    }
    return result;
}

int bits_for_values(std::uint64_t count) {
    int bits = 1;
    while (bits < 63 && (std::uint64_t{1} << bits) < count) {
        ++bits;
    }
    return bits;
}

}  // namespace ambqc
