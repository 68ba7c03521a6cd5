#include "tubal/bounds.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tubal {

namespace {

double tail_energy_of(const Eigen::VectorXd& sv, Index rank) {
    double tail = 0.0;
    for (Index j = rank; j < sv.size(); ++j) tail += sv[j] * sv[j];
    return tail;
}

double gap_of(const Eigen::VectorXd& sv, Index rank) {
    if (rank < 1 || rank >= sv.size()) return 0.0;
    const double denom = sv[rank - 1];
    if (denom == 0.0) return 0.0;
    return sv[rank] / denom;
}

void require_bound_args(Index rank, Index oversample, const char* where) {
    if (rank < 1) throw std::invalid_argument(std::string(where) + ": rank must be >= 1");
    if (oversample < 2)
        throw std::invalid_argument(std::string(where) +
                                    ": the bound requires oversampling P >= 2");
}

double prefactor(double tau, Index rank, Index oversample, int exponent) {
    return 1.0 + static_cast<double>(rank) / static_cast<double>(oversample - 1) *
                     std::pow(tau, exponent);
}

}  // namespace

double SpectralProfile::tail_energy(Index slice, Index rank) const {
    return tail_energy_of(slices.at(static_cast<std::size_t>(slice)), rank);
}

double SpectralProfile::gap(Index slice, Index rank) const {
    return gap_of(slices.at(static_cast<std::size_t>(slice)), rank);
}

SpectralProfile spectral_profile(const Tensor3& x) {
    const SpectralTensor xh = fft_tubes(x);
    SpectralProfile profile;
    profile.rows = x.rows();
    profile.cols = x.cols();
    profile.depth = x.depth();
    profile.slices.resize(static_cast<std::size_t>(x.depth()));
    for (Index h = 0; h < xh.stored_count(); ++h) {
        Eigen::JacobiSVD<MatrixXcd> svd(xh.stored(h));
        profile.slices[static_cast<std::size_t>(h)] = svd.singularValues();
    }
    // conjugate slices share their mirror's singular values
    for (Index k = xh.stored_count(); k < x.depth(); ++k)
        profile.slices[static_cast<std::size_t>(k)] =
            profile.slices[static_cast<std::size_t>(x.depth() - k)];
    return profile;
}

double bound_matrix_even(const Eigen::VectorXd& sv, Index rank, Index oversample,
                         int power_iters) {
    require_bound_args(rank, oversample, "bound_matrix_even");
    if (power_iters < 0) throw std::invalid_argument("bound_matrix_even: q must be >= 0");
    return prefactor(gap_of(sv, rank), rank, oversample, 4 * power_iters) *
           tail_energy_of(sv, rank);
}

double bound_matrix_odd(const Eigen::VectorXd& sv, Index rank, Index oversample, int passes) {
    require_bound_args(rank, oversample, "bound_matrix_odd");
    if (passes < 1 || passes % 2 == 0)
        throw std::invalid_argument(
            "bound_matrix_odd: v must be odd (use the even-pass bound with q = (v-2)/2)");
    return prefactor(gap_of(sv, rank), rank, oversample, 2 * (2 * passes - 1)) *
           tail_energy_of(sv, rank);
}

double bound_tensor_even(const SpectralProfile& profile, Index rank, Index oversample,
                         int power_iters) {
    require_bound_args(rank, oversample, "bound_tensor_even");
    if (power_iters < 0) throw std::invalid_argument("bound_tensor_even: q must be >= 0");
    double sum = 0.0;
    for (const auto& sv : profile.slices)
        sum += prefactor(gap_of(sv, rank), rank, oversample, 4 * power_iters) *
               tail_energy_of(sv, rank);
    return std::sqrt(sum / static_cast<double>(profile.depth));
}

double bound_tensor_odd(const SpectralProfile& profile, Index rank, Index oversample,
                        int passes) {
    require_bound_args(rank, oversample, "bound_tensor_odd");
    if (passes < 1 || passes % 2 == 0)
        throw std::invalid_argument("bound_tensor_odd: v must be odd");
    double sum = 0.0;
    for (const auto& sv : profile.slices)
        sum += prefactor(gap_of(sv, rank), rank, oversample, 2 * (2 * passes - 1)) *
               tail_energy_of(sv, rank);
    return std::sqrt(sum / static_cast<double>(profile.depth));
}

double bound_deterministic_sketch(const Eigen::VectorXd& sv, Index rank, Index oversample,
                                  int v, const Eigen::MatrixXd& omega1,
                                  const Eigen::MatrixXd& omega2) {
    if (rank < 1 || rank >= sv.size())
        throw std::invalid_argument("bound_deterministic_sketch: rank out of range");
    if (omega1.rows() != rank || omega1.cols() != rank + oversample)
        throw std::invalid_argument("bound_deterministic_sketch: omega1 must be R x (R+P)");
    if (omega2.rows() != sv.size() - rank || omega2.cols() != rank + oversample)
        throw std::invalid_argument("bound_deterministic_sketch: omega2 must be (n-R) x (R+P)");
    Eigen::JacobiSVD<Eigen::MatrixXd> check(omega1);
    const double smallest = check.singularValues()(check.singularValues().size() - 1);
    if (smallest <= 1e-12 * check.singularValues()(0))
        throw std::invalid_argument("bound_deterministic_sketch: omega1 is rank deficient");

    const Eigen::VectorXd sigma2 = sv.tail(sv.size() - rank);
    const double tail = sigma2.squaredNorm();
    if (tail == 0.0) return 0.0;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(omega1);
    const Eigen::MatrixXd pinv = cod.pseudoInverse();
    const double cross = (sigma2.asDiagonal() * omega2 * pinv).squaredNorm();
    const double tau = gap_of(sv, rank);
    return tail + std::pow(tau, 2 * (2 * v - 1)) * cross;
}

std::string BoundReport::csv_header() {
    return "theorem,rank,oversample,q_or_v,trials,bound,mc_mean,mc_stddev,slack,satisfied";
}

std::string BoundReport::csv_row() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << theorem << ',' << rank << ',' << oversample << ',' << q_or_v << ',' << trials << ','
       << bound << ',' << mc_mean << ',' << mc_stddev << ',' << slack << ','
       << (satisfied ? "true" : "false");
    return os.str();
}

std::string BoundReport::to_json() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << "{\"theorem\":" << theorem << ",\"rank\":" << rank << ",\"oversample\":" << oversample
       << ",\"q_or_v\":" << q_or_v << ",\"trials\":" << trials << ",\"bound\":" << bound
       << ",\"mc_mean\":" << mc_mean << ",\"mc_stddev\":" << mc_stddev << ",\"slack\":" << slack
       << ",\"satisfied\":" << (satisfied ? "true" : "false") << "}";
    return os.str();
}

BoundReport monte_carlo_validate(const Tensor3& x, const SketchPlan& plan, int theorem,
                                 int trials) {
    if (trials < 30) throw std::invalid_argument("monte_carlo_validate: trials must be >= 30");
    if (theorem < 1 || theorem > 4)
        throw std::invalid_argument("monte_carlo_validate: theorem must be 1..4");
    const bool even_family = theorem == 1 || theorem == 3;
    const bool matrix_family = theorem == 1 || theorem == 2;
    if (even_family && !plan.power_iters)
        throw std::invalid_argument("monte_carlo_validate: this theorem needs power iterations");
    if (!even_family && (!plan.passes || *plan.passes % 2 == 0))
        throw std::invalid_argument("monte_carlo_validate: this theorem needs an odd pass budget");
    if (matrix_family && x.depth() != 1)
        throw std::invalid_argument("monte_carlo_validate: matrix theorems need depth-1 input");

    BoundReport report;
    report.theorem = theorem;
    report.rank = plan.rank;
    report.oversample = plan.oversample;
    report.q_or_v = even_family ? *plan.power_iters : *plan.passes;
    report.trials = trials;

    const SpectralProfile profile = spectral_profile(x);
    switch (theorem) {
        case 1:
            report.bound =
                std::sqrt(bound_matrix_even(profile.slices[0], plan.rank, plan.oversample,
                                            *plan.power_iters));
            break;
        case 2:
            report.bound = std::sqrt(
                bound_matrix_odd(profile.slices[0], plan.rank, plan.oversample, *plan.passes));
            break;
        case 3:
            report.bound = bound_tensor_even(profile, plan.rank, plan.oversample,
                                             *plan.power_iters);
            break;
        default:
            report.bound = bound_tensor_odd(profile, plan.rank, plan.oversample, *plan.passes);
            break;
    }

    // With full-width factors the composed approximation equals the projection
    // the theorems bound (Q Q^T X for the subspace family, X Q Q^T for the odd
    // pass family), so the realized error is measured off the algorithm output.
    Eigen::VectorXd errors(trials);
    for (int t = 0; t < trials; ++t) {
        SketchPlan trial_plan = plan;
        trial_plan.seed = mix_seed(plan.seed, static_cast<std::uint64_t>(t));
        if (matrix_family) {
            const Eigen::MatrixXd m = x.slice(0);
            const MatrixFactors f = even_family ? rand_svd_subspace(m, trial_plan)
                                                : rand_svd_passes(m, trial_plan);
            errors[t] = (m - f.compose()).norm();
        } else {
            const PassCountedSource source(x);
            const TsvdFactors f = even_family ? rand_tsvd_subspace(source, trial_plan)
                                              : rand_tsvd_passes(source, trial_plan);
            errors[t] = fro_norm(x - f.compose());
        }
    }
    report.mc_mean = errors.mean();
    report.mc_stddev =
        trials > 1 ? std::sqrt((errors.array() - report.mc_mean).square().sum() / (trials - 1))
                   : 0.0;
    report.slack = 3.0 * report.mc_stddev / std::sqrt(static_cast<double>(trials));
    // rounding floor so an exactly-zero bound is not failed by machine noise
    const double floor = 1e-12 * fro_norm(x);
    report.satisfied = report.mc_mean <= report.bound + report.slack + floor;
    return report;
}

}  // namespace tubal
