// Command-line surface for the tubal-product toolkit: synthetic data,
// deterministic and randomized tubal SVDs with pass accounting, bound
// verification, pass/error sweeps, masked completion, and image converters.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tubal/bounds.hpp"
#include "tubal/completion.hpp"
#include "tubal/io.hpp"
#include "tubal/sketch.hpp"

using json = nlohmann::json;
using namespace tubal;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

RandomMode parse_mode(const std::string& name) {
    if (name == "first-slice") return RandomMode::FirstSliceGaussian;
    if (name == "dense") return RandomMode::DenseGaussian;
    throw std::runtime_error("unknown random mode '" + name + "' (want first-slice|dense)");
}

LowRankOperator parse_operator(const std::string& name) {
    if (name == "pass-efficient") return LowRankOperator::PassEfficient;
    if (name == "classical") return LowRankOperator::ClassicalSubspace;
    if (name == "exact") return LowRankOperator::ExactTsvd;
    if (name == "matrix") return LowRankOperator::MatrixPasses;
    throw std::runtime_error("unknown operator '" + name +
                             "' (want pass-efficient|classical|exact|matrix)");
}

json psnr_json(const Psnr& p) {
    if (p.exact) return json{{"exact", true}};
    return json{{"exact", false}, {"decibels", p.decibels}};
}

json factors_metrics(const Tensor3& x, const TsvdFactors& f) {
    return json{{"relative_error", tsvd_error(x, f)},
                {"factor_rank", f.rank()},
                {"dims", {x.rows(), x.cols(), x.depth()}}};
}

void save_factors(const TsvdFactors& f, const std::string& prefix) {
    save_tensor(f.u, prefix + "_U.tns3");
    save_tensor(f.s, prefix + "_S.tns3");
    save_tensor(f.v, prefix + "_V.tns3");
}

// ---- subcommand runners ------------------------------------------------

struct TsvdArgs {
    std::string mode;  // exact | subspace | passes
    std::string input;
    std::string prefix = "tsvd";
    Index rank = 0;
    Index oversample = 0;
    std::optional<int> passes;
    std::optional<int> power;
    std::uint64_t seed = 0;
    std::string random_mode = "first-slice";
};

int run_tsvd(const TsvdArgs& a) {
    const Tensor3 x = load_tensor(a.input);
    json spec{{"command", "tsvd"},       {"mode", a.mode},
              {"in", a.input},           {"out_prefix", a.prefix},
              {"rank", a.rank},          {"oversample", a.oversample},
              {"seed", a.seed},          {"random_mode", a.random_mode}};
    if (a.passes) spec["passes"] = *a.passes;
    if (a.power) spec["power"] = *a.power;

    const auto t0 = std::chrono::steady_clock::now();
    json report;
    if (a.mode == "exact") {
        if (a.passes || a.power)
            throw std::runtime_error("tsvd exact takes neither --passes nor --power");
        const TsvdFactors f = truncated_tsvd(x, a.rank);
        report = factors_metrics(x, f);
        save_factors(f, a.prefix);
    } else {
        if (a.passes && a.power)
            throw std::runtime_error("inconsistent plan: both --passes and --power given");
        SketchPlan plan;
        plan.rank = a.rank;
        plan.oversample = a.oversample;
        plan.seed = a.seed;
        plan.random_mode = parse_mode(a.random_mode);
        PassCountedSource source(x);
        TsvdFactors f;
        if (a.mode == "subspace") {
            if (!a.power) throw std::runtime_error("tsvd subspace requires --power");
            plan.power_iters = *a.power;
            f = rand_tsvd_subspace(source, plan);
        } else {
            if (!a.passes) throw std::runtime_error("tsvd passes requires --passes");
            plan.passes = *a.passes;
            f = rand_tsvd_passes(source, plan);
        }
        report = factors_metrics(x, f);
        const PassCounts counts = passes_used(source);
        report["passes_used"] = {{"forward", counts.forward},
                                 {"adjoint", counts.adjoint},
                                 {"total", counts.total()}};
        save_factors(f, a.prefix);
    }
    report["seconds"] = seconds_since(t0);
    report["spec"] = spec;
    write_text(a.prefix + ".json", report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

struct SynthArgs {
    Index rows = 0, cols = 0, depth = 0, rank = 0;
    std::string spectrum = "exact";
    double param = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_synth(const SynthArgs& a) {
    Spectrum spec;
    if (a.spectrum == "exact") spec = Spectrum::exact();
    else if (a.spectrum == "poly") spec = Spectrum::poly(a.param);
    else if (a.spectrum == "exp") spec = Spectrum::exp(a.param);
    else throw std::runtime_error("unknown spectrum '" + a.spectrum + "' (want exact|poly|exp)");

    const Tensor3 x = synth_lowrank(a.rows, a.cols, a.depth, a.rank, spec, a.seed);
    save_tensor(x, a.out);
    json report{{"spec",
                 json{{"command", "synth"}, {"dims", {a.rows, a.cols, a.depth}},
                      {"rank", a.rank}, {"spectrum", a.spectrum}, {"param", a.param},
                      {"seed", a.seed}, {"out", a.out}}},
                {"fro_norm", fro_norm(x)}};
    std::cout << report.dump(2) << "\n";
    return 0;
}

struct BoundArgs {
    std::string input;
    std::string prefix = "bounds";
    int theorem = 0;
    int trials = 100;
    Index rank = 0;
    Index oversample = 2;
    std::optional<int> passes;
    std::optional<int> power;
    std::uint64_t seed = 0;
};

int run_bounds(const BoundArgs& a) {
    if (a.passes && a.power)
        throw std::runtime_error("inconsistent plan: both --passes and --power given");
    const Tensor3 x = load_tensor(a.input);
    SketchPlan plan;
    plan.rank = a.rank;
    plan.oversample = a.oversample;
    plan.seed = a.seed;
    if (a.passes) plan.passes = *a.passes;
    if (a.power) plan.power_iters = *a.power;

    const BoundReport report = monte_carlo_validate(x, plan, a.theorem, a.trials);
    json spec{{"command", "verify-bounds"}, {"in", a.input},  {"theorem", a.theorem},
              {"trials", a.trials},         {"rank", a.rank}, {"oversample", a.oversample},
              {"seed", a.seed},             {"out_prefix", a.prefix}};
    if (a.passes) spec["passes"] = *a.passes;
    if (a.power) spec["power"] = *a.power;
    json out = json::parse(report.to_json());
    out["spec"] = spec;
    write_text(a.prefix + ".json", out.dump(2) + "\n");
    write_text(a.prefix + ".csv", BoundReport::csv_header() + "\n" + report.csv_row() + "\n");
    std::cout << out.dump(2) << "\n";
    if (!report.satisfied) {
        std::cerr << "error: bound not satisfied (mean " << report.mc_mean << " > bound "
                  << report.bound << " + slack " << report.slack << ")\n";
        return 1;
    }
    return 0;
}

struct BenchArgs {
    std::string input;
    std::string prefix = "bench";
    Index rank = 0;
    Index oversample = 2;
    int max_passes = 8;
    int trials = 1;
    std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
    if (a.max_passes < 1) throw std::runtime_error("--max-passes must be >= 1");
    if (a.trials < 1) throw std::runtime_error("--trials must be >= 1");
    const Tensor3 x = load_tensor(a.input);

    std::ostringstream csv;
    csv.imbue(std::locale::classic());
    csv.precision(17);
    csv << "algorithm,passes,power_iters,rank,oversample,trials,mean_relative_error,mean_seconds\n";
    auto sweep_point = [&](const char* name, int passes, int power, auto&& run_once) {
        double err = 0.0, secs = 0.0;
        for (int t = 0; t < a.trials; ++t) {
            const std::uint64_t seed = mix_seed(a.seed, static_cast<std::uint64_t>(t));
            const auto t0 = std::chrono::steady_clock::now();
            const TsvdFactors f = run_once(seed);
            secs += seconds_since(t0);
            err += tsvd_error(x, f);
        }
        csv << name << ',' << passes << ',' << power << ',' << a.rank << ',' << a.oversample
            << ',' << a.trials << ',' << err / a.trials << ',' << secs / a.trials << '\n';
    };

    for (int v = 1; v <= a.max_passes; ++v) {
        sweep_point("passes", v, -1, [&](std::uint64_t seed) {
            PassCountedSource source(x);
            return rand_tsvd_passes(source, SketchPlan::with_passes(a.rank, a.oversample, v, seed));
        });
    }
    for (int q = 0; 2 * q + 2 <= a.max_passes; ++q) {
        sweep_point("subspace", 2 * q + 2, q, [&](std::uint64_t seed) {
            PassCountedSource source(x);
            return rand_tsvd_subspace(source,
                                      SketchPlan::with_power(a.rank, a.oversample, q, seed));
        });
    }
    write_text(a.prefix + "_sweep.csv", csv.str());

    json spec{{"command", "bench-passes"}, {"in", a.input},
              {"rank", a.rank},            {"oversample", a.oversample},
              {"max_passes", a.max_passes}, {"trials", a.trials},
              {"seed", a.seed},            {"out_prefix", a.prefix}};
    json report{{"spec", spec}, {"csv", a.prefix + "_sweep.csv"}};
    write_text(a.prefix + ".json", report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

struct CompleteArgs {
    std::string obs, mask, truth;
    std::string prefix = "complete";
    std::string ranks = "5,10";
    std::string op = "pass-efficient";
    int passes = 2;
    Index oversample = 10;
    int iters = 500;
    double tol = 1e-6;
    std::uint64_t seed = 0;
};

int run_complete(const CompleteArgs& a) {
    const Tensor3 obs = load_tensor(a.obs);
    const MaskTensor omega = load_mask(a.mask);

    CompletionConfig cfg;
    cfg.oversample = a.oversample;
    cfg.passes = a.passes;
    cfg.seed = a.seed;
    cfg.max_iters_per_stage = a.iters;
    cfg.tol = a.tol;
    cfg.op = parse_operator(a.op);
    std::stringstream ranks(a.ranks);
    for (std::string item; std::getline(ranks, item, ',');)
        cfg.rank_schedule.push_back(std::stol(item));

    std::optional<Tensor3> truth;
    if (!a.truth.empty()) truth = load_tensor(a.truth);

    const auto [recon, report] = complete(obs, omega, cfg, truth ? &*truth : nullptr);
    save_tensor(recon, a.prefix + "_recon.tns3");
    write_text(a.prefix + "_iters.csv",
               CompletionReport::csv_header() + "\n" + report.csv_rows());

    json spec{{"command", "complete"}, {"obs", a.obs},         {"mask", a.mask},
              {"ranks", a.ranks},      {"passes", a.passes},   {"oversample", a.oversample},
              {"iters", a.iters},      {"tol", a.tol},         {"seed", a.seed},
              {"operator", a.op},      {"out_prefix", a.prefix}};
    if (!a.truth.empty()) spec["truth"] = a.truth;
    json out{{"spec", spec},
             {"total_iterations", report.total_iterations},
             {"seconds", report.seconds},
             {"final_observed_fit", report.final_observed_fit}};
    if (report.rel_error) out["relative_error"] = *report.rel_error;
    if (report.psnr_paper) out["psnr_paper"] = psnr_json(*report.psnr_paper);
    if (report.psnr_standard) out["psnr_standard"] = psnr_json(*report.psnr_standard);
    if (truth) {
        json per_frame = json::array();
        for (const auto& p : psnr_trace(recon, *truth)) per_frame.push_back(psnr_json(p));
        out["psnr_per_frame"] = per_frame;
    }
    write_text(a.prefix + ".json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tubal-product tensor toolkit"};
    app.require_subcommand(1);

    TsvdArgs tsvd_args;
    auto* tsvd = app.add_subcommand("tsvd", "truncated tubal SVD (exact, subspace, or passes)");
    tsvd->add_option("mode", tsvd_args.mode, "exact | subspace | passes")
        ->required()
        ->check(CLI::IsMember({"exact", "subspace", "passes"}));
    tsvd->add_option("--in", tsvd_args.input, "input tensor (TNS3)")->required();
    tsvd->add_option("--out-prefix", tsvd_args.prefix, "output prefix");
    tsvd->add_option("--rank", tsvd_args.rank, "target tubal rank")->required();
    tsvd->add_option("--oversample", tsvd_args.oversample, "oversampling P");
    tsvd->add_option("--passes", [&tsvd_args](const std::vector<std::string>& v) {
        tsvd_args.passes = std::stoi(v[0]);
        return true;
    }, "pass budget v");
    tsvd->add_option("--power", [&tsvd_args](const std::vector<std::string>& v) {
        tsvd_args.power = std::stoi(v[0]);
        return true;
    }, "power iterations q");
    tsvd->add_option("--seed", tsvd_args.seed, "random seed");
    tsvd->add_option("--random-mode", tsvd_args.random_mode, "first-slice | dense");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "synthesize a low-tubal-rank tensor");
    synth->add_option("--rows", synth_args.rows)->required();
    synth->add_option("--cols", synth_args.cols)->required();
    synth->add_option("--depth", synth_args.depth)->required();
    synth->add_option("--rank", synth_args.rank)->required();
    synth->add_option("--spectrum", synth_args.spectrum, "exact | poly | exp");
    synth->add_option("--param", synth_args.param, "decay parameter (alpha or beta)");
    synth->add_option("--seed", synth_args.seed);
    synth->add_option("--out", synth_args.out, "output tensor path")->required();

    BoundArgs bound_args;
    auto* bounds = app.add_subcommand("verify-bounds", "Monte Carlo check of an error bound");
    bounds->add_option("--in", bound_args.input, "input tensor (TNS3)")->required();
    bounds->add_option("--theorem", bound_args.theorem, "1..4")->required();
    bounds->add_option("--trials", bound_args.trials, "Monte Carlo trials");
    bounds->add_option("--rank", bound_args.rank)->required();
    bounds->add_option("--oversample", bound_args.oversample);
    bounds->add_option("--passes", [&bound_args](const std::vector<std::string>& v) {
        bound_args.passes = std::stoi(v[0]);
        return true;
    }, "pass budget v (theorems 2 and 4)");
    bounds->add_option("--power", [&bound_args](const std::vector<std::string>& v) {
        bound_args.power = std::stoi(v[0]);
        return true;
    }, "power iterations q (theorems 1 and 3)");
    bounds->add_option("--seed", bound_args.seed);
    bounds->add_option("--out-prefix", bound_args.prefix);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench-passes", "error/time vs pass budget sweep");
    bench->add_option("--in", bench_args.input, "input tensor (TNS3)")->required();
    bench->add_option("--rank", bench_args.rank)->required();
    bench->add_option("--oversample", bench_args.oversample);
    bench->add_option("--max-passes", bench_args.max_passes);
    bench->add_option("--trials", bench_args.trials);
    bench->add_option("--seed", bench_args.seed);
    bench->add_option("--out-prefix", bench_args.prefix);

    CompleteArgs complete_args;
    auto* compl_ = app.add_subcommand("complete", "masked tensor completion");
    compl_->add_option("--obs", complete_args.obs, "observed tensor (TNS3)")->required();
    compl_->add_option("--mask", complete_args.mask, "observation mask (TNS3 of 0/1)")->required();
    compl_->add_option("--ranks", complete_args.ranks, "comma-separated rank schedule");
    compl_->add_option("--passes", complete_args.passes, "pass budget of the sketch");
    compl_->add_option("--oversample", complete_args.oversample);
    compl_->add_option("--iters", complete_args.iters, "iteration cap per stage");
    compl_->add_option("--tol", complete_args.tol, "relative-change stop tolerance");
    compl_->add_option("--seed", complete_args.seed);
    compl_->add_option("--operator", complete_args.op,
                       "pass-efficient | classical | exact | matrix");
    compl_->add_option("--truth", complete_args.truth, "ground-truth tensor for metrics");
    compl_->add_option("--out-prefix", complete_args.prefix);

    std::string conv_in, conv_out;
    auto* img2tns = app.add_subcommand("img2tns", "PGM/PPM image or PGM directory to TNS3");
    img2tns->add_option("--in", conv_in)->required();
    img2tns->add_option("--out", conv_out)->required();

    auto* tns2img = app.add_subcommand("tns2img", "TNS3 to PGM (depth 1) or PPM (depth 3)");
    std::string t2i_in, t2i_out;
    tns2img->add_option("--in", t2i_in)->required();
    tns2img->add_option("--out", t2i_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (tsvd->parsed()) return run_tsvd(tsvd_args);
        if (synth->parsed()) return run_synth(synth_args);
        if (bounds->parsed()) return run_bounds(bound_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (compl_->parsed()) return run_complete(complete_args);
        if (img2tns->parsed()) {
            const Tensor3 x = std::filesystem::is_directory(conv_in) ? load_image_stack(conv_in)
                                                                     : load_image(conv_in);
            save_tensor(x, conv_out);
            return 0;
        }
        if (tns2img->parsed()) {
            save_image(load_tensor(t2i_in), t2i_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
