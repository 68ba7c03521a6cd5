#include <doctest.h>

#include "oracles.hpp"
#include "tubal/completion.hpp"
#include "tubal/io.hpp"

using namespace tubal;

namespace {

MaskTensor full_mask(Index rows, Index cols, Index depth) {
    MaskTensor m(rows, cols, depth);
    for (Index n = 0; n < m.size(); ++n) m.set_linear(n, true);
    return m;
}

}  // namespace

TEST_CASE("step_mask") {
    const Tensor3 m = oracles::random_tensor(5, 4, 3, 11);
    const Tensor3 x = oracles::random_tensor(5, 4, 3, 12);

    CHECK(fro_norm(step_mask(m, full_mask(5, 4, 3), x) - m) == 0.0);
    CHECK(fro_norm(step_mask(m, MaskTensor(5, 4, 3), x) - x) == 0.0);

    const MaskTensor half = random_mask(5, 4, 3, 0.5, 13);
    const Tensor3 mixed = step_mask(m, half, x);
    CHECK(fro_norm(mask_project(mixed, half) - mask_project(m, half)) == 0.0);
    for (Index n = 0; n < mixed.size(); ++n)
        CHECK(mixed.vec()[n] == (half.get_linear(n) ? m.vec()[n] : x.vec()[n]));

    CHECK_THROWS_AS(step_mask(m, half, oracles::random_tensor(5, 4, 2, 1)),
                    std::invalid_argument);
}

TEST_CASE("step_lowrank") {
    const Tensor3 low = synth_lowrank(16, 14, 3, 4, Spectrum::exact(), 21);
    const SketchPlan plan = SketchPlan::with_passes(4, 5, 2, 22);

    // exact operator leaves an already-low-rank tensor in place
    CHECK(relative_error(low, step_lowrank(low, 4, plan, LowRankOperator::ExactTsvd)) <= 1e-10);

    // pass-efficient operator with v = 2 on exact-rank input
    CHECK(relative_error(low, step_lowrank(low, 4, plan, LowRankOperator::PassEfficient)) <= 1e-9);

    // output tubal rank is at most the requested rank
    const Tensor3 fullish = oracles::random_tensor(12, 12, 3, 23);
    for (auto op : {LowRankOperator::PassEfficient, LowRankOperator::ClassicalSubspace,
                    LowRankOperator::ExactTsvd}) {
        const Tensor3 y = step_lowrank(fullish, 3, plan, op);
        const SpectralTensor yh = fft_tubes(y);
        for (Index k = 0; k < yh.stored_count(); ++k) {
            Eigen::JacobiSVD<MatrixXcd> svd(yh.stored(k));
            CHECK(svd.singularValues()(3) <= 1e-9 * svd.singularValues()(0));
        }
    }
    CHECK_THROWS_AS(step_lowrank(fullish, 0, plan, LowRankOperator::ExactTsvd),
                    std::invalid_argument);
}

TEST_CASE("complete on fully observed data") {
    const Tensor3 m = oracles::random_tensor(10, 9, 3, 31);
    CompletionConfig cfg;
    cfg.rank_schedule = {3};
    cfg.op = LowRankOperator::ExactTsvd;
    cfg.tol = 1e-8;
    cfg.max_iters_per_stage = 50;

    const auto [rec, report] = complete(m, full_mask(10, 9, 3), cfg, &m);
    // converges immediately: the masked iterate is the data itself
    CHECK(report.total_iterations == 1);
    CHECK(fro_norm(rec - m) == 0.0);
    // the recorded fit equals the rank-3 tubal SVD error of m
    const double tsvd_fit = fro_norm(truncated_tsvd(m, 3).compose() - m);
    CHECK(report.final_observed_fit == doctest::Approx(tsvd_fit).epsilon(1e-10));
}

TEST_CASE("complete recovers an exact-rank tensor from half its entries") {
    const Index r = 4;
    const Tensor3 truth = synth_lowrank(24, 24, 3, r, Spectrum::exact(), 41);
    const MaskTensor omega = random_mask(24, 24, 3, 0.5, 42);
    const Tensor3 observed = mask_project(truth, omega);

    CompletionConfig cfg;
    cfg.rank_schedule = {r};
    cfg.passes = 3;
    cfg.oversample = 5;
    cfg.seed = 43;
    cfg.tol = 1e-8;
    cfg.max_iters_per_stage = 200;

    const auto [rec, report] = complete(observed, omega, cfg, &truth);
    CHECK(report.rel_error.has_value());
    CHECK(*report.rel_error <= 1e-3);
    CHECK(report.total_iterations <= 200);
    // observed entries survive bitwise
    CHECK(fro_norm(mask_project(rec, omega) - observed) == 0.0);
    // per-iteration records are present (the cap bounds the run; the fresh
    // sketch noise keeps rel_change above a deep tolerance)
    CHECK(report.iterations.size() == static_cast<std::size_t>(report.total_iterations));
}

TEST_CASE("complete input validation") {
    const Tensor3 m = oracles::random_tensor(6, 6, 2, 51);
    CompletionConfig cfg;
    cfg.rank_schedule = {2};
    CHECK_THROWS_AS(complete(m, MaskTensor(6, 6, 2), cfg), std::invalid_argument);

    CompletionConfig bad = cfg;
    bad.rank_schedule = {3, 2};
    CHECK_THROWS_AS(complete(m, full_mask(6, 6, 2), bad), std::invalid_argument);
    bad.rank_schedule.clear();
    CHECK_THROWS_AS(complete(m, full_mask(6, 6, 2), bad), std::invalid_argument);
    bad = cfg;
    bad.tol = 0.0;
    CHECK_THROWS_AS(complete(m, full_mask(6, 6, 2), bad), std::invalid_argument);
}

TEST_CASE("exact and sketched operators land near the same fixed point") {
    Eigen::VectorXd sv(5);
    sv << 1.0, 1.0, 1.0, 0.02, 0.02;
    double sum_exact = 0.0, sum_sketch = 0.0;
    for (unsigned seed = 0; seed < 10; ++seed) {
        const Tensor3 truth = synth_from_spectrum(32, 32, 3, sv, 200 + seed);
        const MaskTensor omega = random_mask(32, 32, 3, 0.3, 300 + seed);
        const Tensor3 observed = mask_project(truth, omega);

        CompletionConfig cfg;
        cfg.rank_schedule = {3, 5};
        cfg.oversample = 8;
        cfg.seed = 400 + seed;
        cfg.max_iters_per_stage = 120;
        cfg.tol = 1e-5;

        cfg.op = LowRankOperator::ExactTsvd;
        sum_exact += *complete(observed, omega, cfg, &truth).second.rel_error;
        cfg.op = LowRankOperator::PassEfficient;
        cfg.passes = 3;
        sum_sketch += *complete(observed, omega, cfg, &truth).second.rel_error;
    }
    const double mean_exact = sum_exact / 10.0;
    const double mean_sketch = sum_sketch / 10.0;
    CHECK(std::abs(mean_exact - mean_sketch) / mean_exact <= 0.10);
}

TEST_CASE("smoothing hook is applied before the operator") {
    const Tensor3 m = oracles::random_tensor(8, 8, 2, 61);
    CompletionConfig cfg;
    cfg.rank_schedule = {2};
    cfg.op = LowRankOperator::ExactTsvd;
    cfg.max_iters_per_stage = 1;
    int calls = 0;
    cfg.smoothing = [&calls](const Tensor3& t) {
        ++calls;
        return t;
    };
    complete(m, full_mask(8, 8, 2), cfg);
    CHECK(calls == 1);
}

TEST_CASE("matrix flattening operator") {
    const Tensor3 c = oracles::random_tensor(10, 8, 3, 71);
    const SketchPlan plan = SketchPlan::with_passes(3, 4, 2, 72);
    const Tensor3 y = step_lowrank(c, 3, plan, LowRankOperator::MatrixPasses);
    CHECK(y.rows() == 10);
    CHECK(y.cols() == 8);
    CHECK(y.depth() == 3);
    // the flattening has matrix rank <= 3
    Eigen::MatrixXd flat(10, 24);
    for (Index k = 0; k < 3; ++k) flat.middleCols(k * 8, 8) = y.slice(k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(flat);
    CHECK(svd.singularValues()(3) <= 1e-9 * svd.singularValues()(0));
}

TEST_CASE("psnr_trace") {
    // constant video: identical per-frame values
    Tensor3 truth(6, 6, 4);
    for (Index k = 0; k < 4; ++k) truth.slice(k).setConstant(0.5);
    Tensor3 rec = truth;
    for (Index k = 0; k < 4; ++k) rec.slice(k).array() += 0.01;
    const auto trace = psnr_trace(rec, truth);
    CHECK(trace.size() == 4);
    for (const auto& p : trace) CHECK(p.decibels == doctest::Approx(trace[0].decibels));

    // single-frame tensor gives a length-1 series
    const Tensor3 one = oracles::random_tensor(5, 5, 1, 81);
    CHECK(psnr_trace(one, one).size() == 1);
    CHECK(psnr_trace(one, one)[0].exact);

    // values match the whole-tensor psnr computed slice by slice
    const Tensor3 a = oracles::random_tensor(7, 6, 3, 82);
    const Tensor3 b = oracles::random_tensor(7, 6, 3, 83);
    const auto tr = psnr_trace(b, a);
    for (Index k = 0; k < 3; ++k) {
        Tensor3 ta(7, 6, 1), tb(7, 6, 1);
        ta.slice(0) = a.slice(k);
        tb.slice(0) = b.slice(k);
        CHECK(tr[static_cast<std::size_t>(k)].decibels ==
              doctest::Approx(psnr(ta, tb).decibels).epsilon(1e-12));
    }
}
