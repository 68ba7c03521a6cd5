#include "tubal/completion.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace tubal {

namespace {

Eigen::MatrixXd flatten_slices(const Tensor3& x) {
    Eigen::MatrixXd out(x.rows(), x.cols() * x.depth());
    for (Index k = 0; k < x.depth(); ++k) out.middleCols(k * x.cols(), x.cols()) = x.slice(k);
    return out;
}

Tensor3 unflatten_slices(const Eigen::MatrixXd& m, Index rows, Index cols, Index depth) {
    Tensor3 out(rows, cols, depth);
    for (Index k = 0; k < depth; ++k) out.slice(k) = m.middleCols(k * cols, cols);
    return out;
}

void validate_config(const CompletionConfig& cfg) {
    if (cfg.rank_schedule.empty())
        throw std::invalid_argument("complete: rank schedule must not be empty");
    Index prev = 0;
    for (Index r : cfg.rank_schedule) {
        if (r < 1) throw std::invalid_argument("complete: ranks must be >= 1");
        if (r < prev) throw std::invalid_argument("complete: rank schedule must be non-decreasing");
        prev = r;
    }
    if (cfg.tol <= 0.0) throw std::invalid_argument("complete: tolerance must be positive");
    if (cfg.max_iters_per_stage < 1)
        throw std::invalid_argument("complete: iteration cap must be >= 1");
    if (cfg.passes < 1) throw std::invalid_argument("complete: pass budget must be >= 1");
    if (cfg.oversample < 0) throw std::invalid_argument("complete: oversampling must be >= 0");
}

}  // namespace

Tensor3 step_lowrank(const Tensor3& c, Index rank, const SketchPlan& plan, LowRankOperator op) {
    if (rank < 1 || rank > std::min(c.rows(), c.cols()))
        throw std::invalid_argument("step_lowrank: rank out of range");
    switch (op) {
        case LowRankOperator::ExactTsvd:
            return truncated_tsvd(c, rank).compose();
        case LowRankOperator::PassEfficient: {
            SketchPlan p = plan;
            p.rank = rank;
            p.power_iters.reset();
            if (!p.passes) p.passes = 2;
            const TsvdFactors f = rand_tsvd_passes(PassCountedSource(c), p);
            return truncate(f, rank).compose();
        }
        case LowRankOperator::ClassicalSubspace: {
            SketchPlan p = plan;
            p.rank = rank;
            const int v = p.passes.value_or(2);
            p.passes.reset();
            if (!p.power_iters) p.power_iters = std::max(0, (v - 2) / 2);
            const TsvdFactors f = rand_tsvd_subspace(PassCountedSource(c), p);
            return truncate(f, rank).compose();
        }
        case LowRankOperator::MatrixPasses: {
            SketchPlan p = plan;
            p.rank = rank;
            p.power_iters.reset();
            if (!p.passes) p.passes = 2;
            const Eigen::MatrixXd flat = flatten_slices(c);
            if (p.width() > std::min(flat.rows(), flat.cols()))
                throw std::invalid_argument("step_lowrank: rank bounds on the flattening");
            const MatrixFactors f = truncate(rand_svd_passes(flat, p), rank);
            return unflatten_slices(f.compose(), c.rows(), c.cols(), c.depth());
        }
    }
    throw std::logic_error("step_lowrank: unknown operator");
}

Tensor3 step_mask(const Tensor3& m_obs, const MaskTensor& omega, const Tensor3& x) {
    m_obs.require_same_dims(x, "step_mask");
    if (!omega.same_dims(x)) throw std::invalid_argument("step_mask: mask dimensions mismatch");
    Tensor3 out(x.rows(), x.cols(), x.depth());
    for (Index n = 0; n < x.size(); ++n)
        out.vec()[n] = omega.get_linear(n) ? m_obs.vec()[n] : x.vec()[n];
    return out;
}

std::pair<Tensor3, CompletionReport> complete(const Tensor3& m_obs, const MaskTensor& omega,
                                              const CompletionConfig& cfg, const Tensor3* truth) {
    validate_config(cfg);
    if (!omega.same_dims(m_obs)) throw std::invalid_argument("complete: mask dimensions mismatch");
    if (omega.count_true() == 0)
        throw std::invalid_argument("complete: observation set is empty");

    const auto start = std::chrono::steady_clock::now();
    // the observed term of the mask step is fixed; compute it once
    const Tensor3 observed = mask_project(m_obs, omega);

    CompletionReport report;
    Tensor3 c = observed;
    int total = 0;
    for (std::size_t stage = 0; stage < cfg.rank_schedule.size(); ++stage) {
        const Index rank = cfg.rank_schedule[stage];
        for (int iter = 1; iter <= cfg.max_iters_per_stage; ++iter) {
            Tensor3 smoothed;
            const Tensor3* input = &c;
            if (cfg.smoothing) {
                smoothed = cfg.smoothing(c);
                input = &smoothed;
            }
            SketchPlan plan = SketchPlan::with_passes(rank, cfg.oversample, cfg.passes,
                                                      mix_seed(cfg.seed, total));
            const Tensor3 x = step_lowrank(*input, rank, plan, cfg.op);

            IterationRecord rec;
            rec.stage = static_cast<int>(stage);
            rec.rank = rank;
            rec.iteration = iter;
            rec.observed_fit = fro_norm(mask_project(x, omega) - observed);

            const Tensor3 next = step_mask(observed, omega, x);
            const double denom = std::max(fro_norm(c), 1e-300);
            rec.rel_change = fro_norm(next - c) / denom;
            c = next;
            report.iterations.push_back(rec);
            ++total;
            report.final_observed_fit = rec.observed_fit;
            if (rec.rel_change <= cfg.tol) break;
        }
    }
    report.total_iterations = total;
    if (truth) {
        report.rel_error = relative_error(*truth, c);
        report.psnr_paper = psnr(*truth, c);
        report.psnr_standard = psnr_standard(*truth, c);
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(c), std::move(report)};
}

std::string CompletionReport::csv_header() {
    return "stage,rank,iteration,rel_change,observed_fit";
}

std::string CompletionReport::csv_rows() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    for (const auto& r : iterations)
        os << r.stage << ',' << r.rank << ',' << r.iteration << ',' << r.rel_change << ','
           << r.observed_fit << '\n';
    return os.str();
}

std::vector<Psnr> psnr_trace(const Tensor3& reconstruction, const Tensor3& truth) {
    truth.require_same_dims(reconstruction, "psnr_trace");
    std::vector<Psnr> out;
    out.reserve(static_cast<std::size_t>(truth.depth()));
    for (Index k = 0; k < truth.depth(); ++k) {
        Tensor3 t(truth.rows(), truth.cols(), 1);
        Tensor3 r(truth.rows(), truth.cols(), 1);
        t.slice(0) = truth.slice(k);
        r.slice(0) = reconstruction.slice(k);
        out.push_back(psnr(t, r));
    }
    return out;
}

}  // namespace tubal
