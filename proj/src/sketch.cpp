#include "tubal/sketch.hpp"

#include <stdexcept>

namespace tubal {

namespace {

void require_plan_rank(const SketchPlan& plan, Index rows, Index cols, const char* where) {
    if (plan.rank < 1) throw std::invalid_argument(std::string(where) + ": rank must be >= 1");
    if (plan.oversample < 0)
        throw std::invalid_argument(std::string(where) + ": oversampling must be >= 0");
    if (plan.width() > std::min(rows, cols))
        throw std::invalid_argument(std::string(where) + ": rank + oversampling exceeds min(I1, I2)");
    if (plan.passes.has_value() == plan.power_iters.has_value())
        throw std::invalid_argument(std::string(where) +
                                    ": exactly one of passes or power iterations must be set");
}

int require_power(const SketchPlan& plan, const char* where) {
    if (!plan.power_iters)
        throw std::invalid_argument(std::string(where) + ": plan must carry a power-iteration count");
    if (*plan.power_iters < 0)
        throw std::invalid_argument(std::string(where) + ": power iterations must be >= 0");
    return *plan.power_iters;
}

int require_passes(const SketchPlan& plan, const char* where) {
    if (!plan.passes)
        throw std::invalid_argument(std::string(where) + ": plan must carry a pass budget");
    if (*plan.passes < 1)
        throw std::invalid_argument(std::string(where) + ": pass budget must be >= 1");
    return *plan.passes;
}

// Economy QR with real >= 0 diagonal; shares the complex kernel with the
// tensor path so the depth-1 reduction is exact.
struct RealQr {
    Eigen::MatrixXd q;
    Eigen::MatrixXd r;
};
RealQr real_qr(const Eigen::MatrixXd& a) {
    auto qr = complex_qr(a.cast<Complex>());
    return {qr.q.real(), qr.r.real()};
}

MatrixFactors real_svd_full(const Eigen::MatrixXd& a) {
    auto svd = complex_svd_truncated(a.cast<Complex>(), std::min(a.rows(), a.cols()));
    return {svd.u.real(), std::move(svd.s), svd.v.real()};
}

}  // namespace

Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
    NormalStream stream(seed);
    Eigen::MatrixXd out(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) out(i, j) = stream.next();
    return out;
}

Tensor3 gaussian_random_tensor(Index rows, Index cols, Index depth, std::uint64_t seed,
                               RandomMode mode) {
    Tensor3 out(rows, cols, depth);
    NormalStream stream(seed);
    const Index filled = mode == RandomMode::FirstSliceGaussian ? 1 : depth;
    for (Index k = 0; k < filled; ++k) {
        auto slice = out.slice(k);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i) slice(i, j) = stream.next();
    }
    return out;
}

MatrixFactors truncate(const MatrixFactors& f, Index rank) {
    if (rank < 1 || rank > f.s.size()) throw std::invalid_argument("truncate: rank out of range");
    return {f.u.leftCols(rank), f.s.head(rank), f.v.leftCols(rank)};
}

MatrixFactors rand_svd_subspace(const Eigen::MatrixXd& x, const SketchPlan& plan) {
    require_plan_rank(plan, x.rows(), x.cols(), "rand_svd_subspace");
    const int q = require_power(plan, "rand_svd_subspace");
    const Index w = plan.width();

    const Eigen::MatrixXd omega = gaussian_matrix(x.cols(), w, plan.seed);
    Eigen::MatrixXd left = real_qr(x * omega).q;
    for (int i = 0; i < q; ++i) {
        const Eigen::MatrixXd right = real_qr(x.transpose() * left).q;
        left = real_qr(x * right).q;
    }
    auto final_qr = real_qr(x.transpose() * left);
    const MatrixFactors small = real_svd_full(final_qr.r);
    // final_qr.r = vhat * s * uhat^T, so x ~= left * r^T * q^T
    MatrixFactors out;
    out.v = final_qr.q * small.u;
    out.s = small.s;
    out.u = left * small.v;
    return out;
}

MatrixFactors rand_svd_passes(const Eigen::MatrixXd& x, const SketchPlan& plan) {
    require_plan_rank(plan, x.rows(), x.cols(), "rand_svd_passes");
    const int v = require_passes(plan, "rand_svd_passes");
    const Index w = plan.width();

    Eigen::MatrixXd right = gaussian_matrix(x.cols(), w, plan.seed);
    Eigen::MatrixXd left;
    Eigen::MatrixXd r_right, r_left;
    for (int i = 1; i <= v; ++i) {
        if (i % 2 == 1) {
            auto qr = real_qr(x * right);
            left = std::move(qr.q);
            r_left = std::move(qr.r);
        } else {
            auto qr = real_qr(x.transpose() * left);
            right = std::move(qr.q);
            r_right = std::move(qr.r);
        }
    }
    MatrixFactors out;
    if (v % 2 == 0) {
        const MatrixFactors small = real_svd_full(r_right);
        out.v = right * small.u;
        out.s = small.s;
        out.u = left * small.v;
    } else {
        const MatrixFactors small = real_svd_full(r_left);
        out.u = left * small.u;
        out.s = small.s;
        out.v = right * small.v;
    }
    return out;
}

TsvdFactors rand_tsvd_subspace(const PassCountedSource& x, const SketchPlan& plan) {
    require_plan_rank(plan, x.rows(), x.cols(), "rand_tsvd_subspace");
    const int q = require_power(plan, "rand_tsvd_subspace");
    const Index w = plan.width();

    const Tensor3 omega =
        gaussian_random_tensor(x.cols(), w, x.depth(), plan.seed, plan.random_mode);
    Tensor3 left = orth(x.apply(omega));
    for (int i = 0; i < q; ++i) {
        const Tensor3 right = orth(x.apply_adjoint(left));
        left = orth(x.apply(right));
    }
    TqrFactors final_qr = t_qr(x.apply_adjoint(left));
    const TsvdFactors small = truncated_tsvd(final_qr.r, w);
    TsvdFactors out;
    out.v = tprod(final_qr.q, small.u);
    out.s = small.s;
    out.u = tprod(left, small.v);
    return out;
}

TsvdFactors rand_tsvd_passes(const PassCountedSource& x, const SketchPlan& plan) {
    require_plan_rank(plan, x.rows(), x.cols(), "rand_tsvd_passes");
    const int v = require_passes(plan, "rand_tsvd_passes");
    const Index w = plan.width();

    Tensor3 right = gaussian_random_tensor(x.cols(), w, x.depth(), plan.seed, plan.random_mode);
    Tensor3 left;
    Tensor3 r_right, r_left;
    for (int i = 1; i <= v; ++i) {
        if (i % 2 == 1) {
            TqrFactors qr = t_qr(x.apply(right));
            left = std::move(qr.q);
            r_left = std::move(qr.r);
        } else {
            TqrFactors qr = t_qr(x.apply_adjoint(left));
            right = std::move(qr.q);
            r_right = std::move(qr.r);
        }
    }
    TsvdFactors out;
    if (v % 2 == 0) {
        const TsvdFactors small = truncated_tsvd(r_right, w);
        out.v = tprod(right, small.u);
        out.s = small.s;
        out.u = tprod(left, small.v);
    } else {
        const TsvdFactors small = truncated_tsvd(r_left, w);
        out.u = tprod(left, small.u);
        out.s = small.s;
        out.v = tprod(right, small.v);
    }
    return out;
}

}  // namespace tubal
