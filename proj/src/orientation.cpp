#include "oma/orientation.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace oma {

void AnchorSet::add(std::span<const double> a, std::span<const double> b) {
    if (dimension == 0) dimension = a.size();
    if (a.size() != dimension || b.size() != dimension)
        throw std::invalid_argument("anchor dimension mismatch");
    source.insert(source.end(), a.begin(), a.end());
    target.insert(target.end(), b.begin(), b.end());
}

namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMat to_matrix(const std::vector<double>& data, std::size_t n,
                 std::size_t d) {
    return Eigen::Map<const RowMat>(data.data(), static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(d));
}

}  // namespace

RotationModel compute_rotation(const AnchorSet& anchors) {
    const std::size_t n = anchors.size();
    const std::size_t d = anchors.dimension;
    if (n == 0 || d == 0) throw std::invalid_argument("empty anchor set");
    for (double v : anchors.source)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite anchor");
    for (double v : anchors.target)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite anchor");

    RowMat a = to_matrix(anchors.source, n, d);
    RowMat b = to_matrix(anchors.target, n, d);
    Eigen::RowVectorXd a_mean = a.colwise().mean();
    Eigen::RowVectorXd b_mean = b.colwise().mean();
    a.rowwise() -= a_mean;
    b.rowwise() -= b_mean;

    // H = sum b_i a_i^T = B^T A with rows as vectors
    Eigen::MatrixXd h = b.transpose() * a;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("SVD did not converge");
    Eigen::MatrixXd r = svd.matrixU() * svd.matrixV().transpose();

    RotationModel model;
    model.dimension = d;
    model.source_mean.assign(a_mean.data(), a_mean.data() + d);
    model.target_mean.assign(b_mean.data(), b_mean.data() + d);
    model.rotation.resize(d * d);
    Eigen::Map<RowMat>(model.rotation.data(), d, d) = r;
    model.determinant = r.determinant();

    const auto& s = svd.singularValues();
    double tol = 1e-12 * std::max(1.0, s(0));
    model.rank_deficient =
        n <= d || s(static_cast<Eigen::Index>(d) - 1) <= tol;
    return model;
}

EmbeddingSpace apply_rotation(const RotationModel& model,
                              const EmbeddingSpace& space, Side side) {
    const std::size_t d = model.dimension;
    if (space.dimension() != d)
        throw std::invalid_argument("space/model dimension mismatch");

    Eigen::Map<const RowMat> r(model.rotation.data(), d, d);
    Eigen::Map<const Eigen::RowVectorXd> mean(
        side == Side::Source ? model.source_mean.data()
                             : model.target_mean.data(),
        d);

    EmbeddingSpace out(d);
    Eigen::RowVectorXd row(d);
    for (const std::string& token : space.tokens()) {
        auto vec = space.vector(token);
        row = Eigen::Map<const Eigen::RowVectorXd>(vec.data(), d) - mean;
        if (side == Side::Target) row = row * r;
        out.add(token, {row.data(), d});
    }
    return out;
}

void save_rotation(const RotationModel& model, std::ostream& out) {
    const std::size_t d = model.dimension;
    out.precision(17);
    out << d << '\n';
    for (std::size_t j = 0; j < d; ++j)
        out << (j ? " " : "") << model.source_mean[j];
    out << '\n';
    for (std::size_t j = 0; j < d; ++j)
        out << (j ? " " : "") << model.target_mean[j];
    out << '\n';
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            out << (j ? " " : "") << model.rotation[i * d + j];
        out << '\n';
    }
}

RotationModel load_rotation(std::istream& in) {
    RotationModel model;
    if (!(in >> model.dimension) || model.dimension == 0)
        throw std::runtime_error("bad rotation model header");
    const std::size_t d = model.dimension;
    model.source_mean.resize(d);
    model.target_mean.resize(d);
    model.rotation.resize(d * d);
    for (double& v : model.source_mean)
        if (!(in >> v)) throw std::runtime_error("truncated rotation model");
    for (double& v : model.target_mean)
        if (!(in >> v)) throw std::runtime_error("truncated rotation model");
    for (double& v : model.rotation)
        if (!(in >> v)) throw std::runtime_error("truncated rotation model");
    Eigen::Map<const RowMat> r(model.rotation.data(), d, d);
    model.determinant = r.determinant();
    return model;
}

}  // namespace oma
