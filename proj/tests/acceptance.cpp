// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any fail. Criterion 9 drives the CLI
// binary, whose path must be supplied as argv[1].
#include "oggn/oggn.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace oggn;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};

// ---- criterion 1: reverse-mode gradients vs central differences ----------
void criterion_1() {
    const auto t0 = clock_type::now();
    Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t depth = 1 + rng.below(3);  // 1..3 weight layers
        std::vector<std::size_t> sizes{1 + rng.below(8)};
        std::vector<Activation> acts;
        const Activation pool[] = {Activation::Relu, Activation::Tanh, Activation::Identity};
        for (std::size_t l = 0; l < depth; ++l) {
            sizes.push_back(1 + rng.below(64));
            acts.push_back(pool[rng.below(3)]);
        }
        acts.back() = Activation::Identity;
        const Network net = init_network(sizes, acts, 9000 + trial);

        Matrix x(1 + rng.below(5), sizes.front()), t(x.rows(), sizes.back());
        for (std::size_t i = 0; i < x.rows(); ++i) {
            for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = rng.uniform(-2, 2);
            for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) = rng.uniform(-2, 2);
        }
        worst = std::max(worst, grad_check(net, x, t, 1e-4));
    }
    const double dt = seconds_since(t0);
    report(1, worst < 1e-4 && dt < 10.0,
           fmt("max rel err %.3g (< 1e-4), %.1fs (< 10s)", worst, dt));
}

// ---- criterion 2: analytic evaluators ------------------------------------
void criterion_2() {
    const auto t0 = clock_type::now();
    const PolyFunction f = poly4();
    const double at_ones = poly_eval(f, std::vector<double>{1, 1, 1, 1});
    const bool ones_exact = at_ones == 21.8336;
    const double at_hundred = poly_eval(f, std::vector<double>{100, 100, 100, 100});
    const bool hundred_ok = std::fabs(at_hundred - 787.34) <= 0.01;

    Rng rng(555);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(4);
        for (double& v : x) v = rng.uniform(0.5, 450.0);
        const auto g = poly_grad(f, x);
        for (std::size_t j = 0; j < 4; ++j) {
            const double eps = 1e-5 * std::max(1.0, x[j]);
            std::vector<double> hi = x, lo = x;
            hi[j] += eps;
            lo[j] -= eps;
            const double fd = (poly_eval(f, hi) - poly_eval(f, lo)) / (2 * eps);
            worst = std::max(worst,
                             std::fabs(g[j] - fd) /
                                 std::max({std::fabs(g[j]), std::fabs(fd), 1e-8}));
        }
    }
    const double dt = seconds_since(t0);
    report(2, ones_exact && hundred_ok && worst < 1e-6 && dt < 1.0,
           fmt("f(1,1,1,1)=%.6g exact=%d, f(100..)=%.6f, grad rel err %.3g, %.2fs", at_ones,
               ones_exact ? 1 : 0, at_hundred, worst, dt));
}

// ---- criterion 3: oracle quality (model reused by 4, 5, 6, 10) -----------
OracleModel criterion_3() {
    const auto t0 = clock_type::now();
    SynthConfig synth;
    synth.count = 10000;
    synth.low = 0.0;
    synth.high = 500.0;
    synth.seed = 11;
    const Dataset train = synth_dataset(poly4(), synth);
    synth.count = 1000;
    synth.seed = 12;
    const Dataset test = synth_dataset(poly4(), synth);

    OracleTrainConfig cfg;
    cfg.hidden = {64, 64};
    cfg.epochs = 800;
    cfg.batch = 128;
    cfg.seed = 1;
    const OracleModel model = train_oracle(train, cfg);
    const OracleMetrics metrics = evaluate_oracle(model, test);
    const double dt = seconds_since(t0);
    report(3, metrics.mean_rel_err < 0.05 && dt < 120.0,
           fmt("test mean rel err %.4f%% (< 5%%), %.1fs (< 2min)", 100 * metrics.mean_rel_err, dt));
    return model;
}

// Shared runner: one inversion task per seed against the criterion-3 oracle.
GenerationTask base_task(const OracleModel& model, double target) {
    GenerationTask task{.oracle = Oracle::neural(model)};
    task.desired_target = target;
    task.modes.assign(4, FeatureMode::free());
    return task;
}

// ---- criterion 4: unconstrained inversion to 1900 -------------------------
void criterion_4(const OracleModel& model) {
    std::vector<double> medians;
    double worst_dt = 0.0;
    for (const auto seed : kSeeds) {
        const auto t0 = clock_type::now();
        GenerationTask task = base_task(model, 1900.0);
        task.train_cfg.max_epochs = 2000;
        task.train_cfg.seed = seed;
        const VerifyReport vr = verify_result(oggn_train(task), poly4());
        medians.push_back(vr.median_true_value);
        worst_dt = std::max(worst_dt, seconds_since(t0));
    }
    const double med = median(medians);
    const double off = std::fabs(med - 1900.0) / 1900.0;
    report(4, off <= 0.02 && worst_dt < 60.0,
           fmt("median true %.2f (%.2f%% from 1900), worst seed %.1fs (< 1min)", med, 100 * off,
               worst_dt));
}

// ---- criterion 5: inversion with x4 pinned to 10 ---------------------------
void criterion_5(const OracleModel& model) {
    std::vector<double> medians;
    double worst_dt = 0.0;
    bool pinned_exact = true;
    for (const auto seed : kSeeds) {
        const auto t0 = clock_type::now();
        GenerationTask task = base_task(model, 2000.0);
        task.modes[3] = FeatureMode::fixed(10.0);
        task.train_cfg.max_epochs = 1000;
        task.train_cfg.seed = seed;
        const GenerationResult result = oggn_train(task);
        for (std::size_t i = 0; i < result.features.rows(); ++i)
            pinned_exact = pinned_exact && result.features(i, 3) == 10.0;
        medians.push_back(verify_result(result, poly4()).median_true_value);
        worst_dt = std::max(worst_dt, seconds_since(t0));
    }
    const double med = median(medians);
    const double off = std::fabs(med - 2000.0) / 2000.0;
    report(5, off <= 0.02 && pinned_exact && worst_dt < 60.0,
           fmt("median true %.2f (%.2f%% from 2000), x4 exact=%d, worst seed %.1fs", med, 100 * off,
               pinned_exact ? 1 : 0, worst_dt));
}

// ---- criterion 6: box-constrained inversion toward the box maximum --------
void criterion_6(const OracleModel& model) {
    const ConstraintSpec box = make_constraint(1.0, 100.0, 20.0, 10.0);
    std::vector<double> medians;
    double worst_dt = 0.0;
    bool all_in_box = true;
    for (const auto seed : kSeeds) {
        const auto t0 = clock_type::now();
        GenerationTask task = base_task(model, 788.0);
        task.modes = {FeatureMode::constrained(box), FeatureMode::constrained(box),
                      FeatureMode::constrained(box), FeatureMode::fixed(100.0)};
        task.stop_rule = StopRule::RangeExit;
        task.train_cfg.max_epochs = 200;
        task.train_cfg.seed = seed;
        const GenerationResult result = oggn_train(task);

        const std::vector<std::optional<ConstraintSpec>> specs{box, box, box, std::nullopt};
        for (const bool ok : in_range(specs, result.features, 0.01)) all_in_box = all_in_box && ok;
        medians.push_back(verify_result(result, poly4()).median_true_value);
        worst_dt = std::max(worst_dt, seconds_since(t0));
    }
    const double med = median(medians);
    report(6, med >= 0.95 * 787.34 && all_in_box && worst_dt < 30.0,
           fmt("median true %.2f (>= %.2f), in-box=%d, worst seed %.1fs (< 30s)", med,
               0.95 * 787.34, all_in_box ? 1 : 0, worst_dt));
}

// ---- criterion 7: system solving ------------------------------------------
void criterion_7() {
    const PolySystem sys = demo_system();
    std::vector<double> best_norms;
    double worst_dt = 0.0, worst_recheck = 0.0;
    for (const auto seed : kSeeds) {
        const auto t0 = clock_type::now();
        SolveConfig cfg;
        cfg.train_cfg.seed = seed;
        const GenerationResult result = solve_system(sys, cfg);

        double best = 1e300;
        for (std::size_t i = 0; i < result.features.rows(); ++i) {
            // Independent recomputation straight from the reported features.
            double sum_sq = 0.0;
            for (const PolyFunction& eq : sys.equations) {
                const auto row = result.features.row(i);
                const double r = poly_eval(eq, row);
                sum_sq += r * r;
            }
            const double recomputed = std::sqrt(sum_sq);
            const double reported = (*result.true_targets)(i, 0);
            worst_recheck = std::max(worst_recheck, std::fabs(recomputed - reported));
            best = std::min(best, recomputed);
        }
        best_norms.push_back(best);
        worst_dt = std::max(worst_dt, seconds_since(t0));
    }
    const double med = median(best_norms);
    report(7, med <= 0.1 && worst_recheck <= 1e-9 && worst_dt < 60.0,
           fmt("median best norm %.4g (<= 0.1), recheck gap %.2g (<= 1e-9), worst seed %.1fs", med,
               worst_recheck, worst_dt));
}

// ---- criterion 8: constraint-function unit behaviour -----------------------
void criterion_8() {
    const auto t0 = clock_type::now();
    const ConstraintSpec box = make_constraint(1.0, 100.0, 20.0, 10.0);
    bool ok = apply_constraint(box, 200.0) == 10.0 && apply_constraint(box, 0.5) == 5.0 &&
              apply_constraint(box, 50.0) == 50.0;
    // Branch ranges: above-branch lands in (upper/c1, upper], below-branch in
    // [lower, lower*c2], interior is the identity.
    Rng rng(8);
    for (int i = 0; i < 200 && ok; ++i) {
        const double above = 100.0 + rng.uniform01() * 1900.0;
        const double ya = apply_constraint(box, above);
        ok = ok && ya > 5.0 && ya <= 100.0;
        const double below = rng.uniform01();  // (0, lower] after the clamp below
        const double yb = apply_constraint(box, std::max(below, 1e-12));
        ok = ok && yb > 0.0 && yb <= 10.0;
        const double inside = 1.0 + rng.uniform01() * 98.999;
        ok = ok && apply_constraint(box, inside) == inside;
    }
    const double dt = seconds_since(t0);
    report(8, ok && dt < 1.0, fmt("exact trio + 200 random branch checks, %.2fs", dt));
}

// ---- criterion 9: byte-for-byte reproducibility through the CLI -----------
void criterion_9(const std::string& cli, const fs::path& dir) {
    if (cli.empty()) {
        report(9, false, "CLI binary path not supplied (argv[1])");
        return;
    }
    auto run = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    auto same_bytes = [](const fs::path& a, const fs::path& b) {
        std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        return fa.good() == fb.good() && sa.str() == sb.str() && !sa.str().empty();
    };

    // Re-run each command verbatim, stashing the first output in between.
    auto rerun_identical = [&](const std::string& args, const fs::path& out) {
        const fs::path stash = out.string() + ".first";
        if (!run(args + " --out " + out.string())) return false;
        std::error_code ec;
        fs::copy_file(out, stash, fs::copy_options::overwrite_existing, ec);
        if (ec) return false;
        return run(args + " --out " + out.string()) && same_bytes(out, stash);
    };

    const fs::path data = dir / "det.csv", model = dir / "det_model.json",
                   result = dir / "det_result.json", roots = dir / "det_roots.json";
    const bool identical =
        rerun_identical("gen-data --function poly4 --n 300 --range 0:500 --seed 5", data) &&
        rerun_identical("train-oracle --data " + data.string() + " --epochs 25 --seed 2", model) &&
        rerun_identical("invert --oracle " + model.string() + " --target 1500 --epochs 150 --seed 3",
                        result) &&
        rerun_identical("solve-system --system demo3 --epochs 500 --seed 4", roots);
    report(9, identical,
           identical ? "gen-data/train-oracle/invert/solve-system byte-identical on re-run"
                     : "a re-run failed or produced different bytes");
}

// ---- criterion 10: many rows at once ---------------------------------------
void criterion_10(const OracleModel& model) {
    const auto t0 = clock_type::now();
    GenerationTask task = base_task(model, 1900.0);
    task.rows = 32;
    task.train_cfg.max_epochs = 2000;
    task.train_cfg.seed = 1;
    const VerifyReport vr = verify_result(oggn_train(task), poly4());
    std::size_t within = 0;
    for (const VerifyRow& row : vr.rows)
        if (std::fabs(row.true_value - 1900.0) / 1900.0 <= 0.03) ++within;
    const double frac = double(within) / double(vr.rows.size());
    report(10, frac >= 0.9, fmt("%zu/%zu rows within 3%% of 1900 (%.1fs)", within, vr.rows.size(),
                                seconds_since(t0)));
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const fs::path dir = fs::temp_directory_path() / "oggn_acceptance";
    fs::create_directories(dir);

    criterion_1();
    criterion_2();
    const OracleModel model = criterion_3();
    criterion_4(model);
    criterion_5(model);
    criterion_6(model);
    criterion_7();
    criterion_8();
    criterion_9(cli, dir);
    criterion_10(model);

    std::error_code ec;
    fs::remove_all(dir, ec);

    if (g_failures) {
        std::printf("%d criterion(s) failing\n", g_failures);
        return 1;
    }
    std::printf("all criteria passing\n");
    return 0;
}
