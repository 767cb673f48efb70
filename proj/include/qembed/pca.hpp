// Copyright 2026 The qembed Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dataset.hpp"
#include "errors.hpp"

namespace qembed {

struct PcaModel {
    std::vector<double> mean;
    /// k rows of length feature_dim, orthonormal, by decreasing variance.
    std::vector<std::vector<double>> components;
    std::vector<double> explained_variance;
    double total_variance = 0.0;

    std::size_t k() const noexcept { return components.size(); }

    std::vector<double> explained_variance_ratio() const {
        std::vector<double> out;
        for (double v : explained_variance) out.push_back(total_variance > 0.0 ? v / total_variance : 0.0);
        return out;
    }
};

/**
 * Fits the top-k principal directions of `train` from the eigendecomposition
 * of its sample covariance. Each component is sign-fixed so that its
 * largest-magnitude coordinate is positive.
 */
inline PcaModel pca_fit(const LabeledDataset &train, std::size_t k) {
    const std::size_t d = train.feature_dim;
    if (k < 1 || k > d) {
        throw ConfigError("PCA target dimension " + std::to_string(k) + " not in [1, " +
                          std::to_string(d) + "]");
    }
    if (train.empty()) throw InputError("PCA fit on an empty dataset");
    train.validate();

    const auto m = static_cast<Eigen::Index>(train.size());
    Eigen::MatrixXd x(m, static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < m; ++i) {
        x.row(i) = Eigen::Map<const Eigen::RowVectorXd>(train.samples[i].features.data(),
                                                         static_cast<Eigen::Index>(d));
    }
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    const double denom = m > 1 ? static_cast<double>(m - 1) : 1.0;
    const Eigen::MatrixXd cov = (x.transpose() * x) / denom;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) throw InputError("PCA eigendecomposition failed");

    PcaModel model;
    model.mean.assign(mean.data(), mean.data() + d);
    model.total_variance = cov.trace();
    const auto &values = eig.eigenvalues();   // ascending
    const auto &vectors = eig.eigenvectors(); // columns
    for (std::size_t c = 0; c < k; ++c) {
        const Eigen::Index col = static_cast<Eigen::Index>(d - 1 - c);
        Eigen::VectorXd v = vectors.col(col);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) v = -v;
        model.components.emplace_back(v.data(), v.data() + d);
        model.explained_variance.push_back(std::max(0.0, values(col)));
    }
    return model;
}

inline std::vector<double> pca_project(const PcaModel &model, const std::vector<double> &x) {
    if (x.size() != model.mean.size()) throw InputError("PCA input has the wrong dimension");
    std::vector<double> out(model.k(), 0.0);
    for (std::size_t c = 0; c < model.k(); ++c) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += (x[j] - model.mean[j]) * model.components[c][j];
        out[c] = acc;
    }
    return out;
}

inline LabeledDataset pca_transform(const PcaModel &model, const LabeledDataset &data) {
    LabeledDataset out{data.name, model.k(), {}};
    out.samples.reserve(data.size());
    for (const auto &s : data.samples) out.samples.push_back({pca_project(model, s.features), s.label});
    return out;
}

} // namespace qembed
