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
// Acceptance runner. Prints one PASS/FAIL line per criterion.
//
//   acceptance                  run every criterion
//   acceptance --criterion 6    run one (ids: 1 2a 2b 3 4 5 6 7 8 9)
//   acceptance --seed 7         replace the published seed, for seed surveys
//
// Exit status is 0 only if every selected criterion passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qembed/qembed.hpp"
#include "support/dense_oracle.hpp"

using namespace qembed;
using std::numbers::pi;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    std::string id;
    std::string title;
    std::function<Outcome()> run;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::filesystem::path kDataDir = QEMBED_DATA_DIR;

// Published seed for the seeded runs; --seed overrides it.
std::uint64_t kSeed = 8;

std::vector<double> eq9_vector() {
    return {std::sqrt(0.01), std::sqrt(0.02), std::sqrt(0.4), std::sqrt(0.04),
            std::sqrt(0.03), std::sqrt(0.2),  std::sqrt(0.13), std::sqrt(0.17)};
}

double padded_error(const StateVector &s, const std::vector<double> &x) {
    double m = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        m = std::max(m, std::abs(s[i] - Complex(i < x.size() ? x[i] : 0.0)));
    }
    return m;
}

double state_diff(const StateVector &a, const StateVector &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Outcome angle_reproduction() {
    const std::vector<double> want{1.63, 2.63, 1.70, 1.91, 0.61, 2.40, 1.70};
    const auto x = eq9_vector();
    const auto t0 = Clock::now();
    const AmplitudeAngles a = amplitude_angles(x);
    const double ms = seconds_since(t0) * 1e3;
    double worst = 0.0;
    for (std::size_t i = 0; i < want.size() && i < a.angles.size(); ++i) {
        worst = std::max(worst, std::abs(a.angles[i] - want[i]));
    }
    std::string got;
    for (double v : a.angles) got += fmt("%.4f ", v);
    return {a.angles.size() == want.size() && worst <= 0.005 && ms < 1.0,
            fmt("angles [%s] max dev %.4f (tol 0.005), %.4f ms (limit 1 ms)", got.c_str(), worst, ms)};
}

Outcome amplitude_reconstruction() {
    std::mt19937_64 rng(kSeed);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const auto x = oracle::random_unit_nonnegative(n, rng);
        worst = std::max(worst, padded_error(simulate(encode_amplitude(x)), x));
    }
    return {worst < 1e-10, fmt("200 vectors, N in 2..8, max error %.3e (tol 1e-10)", worst)};
}

Outcome six_feature_trailing_zeros() {
    std::mt19937_64 rng(kSeed);
    const auto x = oracle::random_unit_nonnegative(6, rng);
    const Circuit c = encode_amplitude(x);
    std::size_t trailing = 0;
    for (auto it = c.gates.rbegin(); it != c.gates.rend() && it->angle == 0.0; ++it) ++trailing;
    std::size_t zeros = 0;
    std::string angles;
    for (const auto &g : c.gates) {
        zeros += g.angle == 0.0;
        angles += fmt("%.4f ", g.angle);
    }
    const double err = padded_error(simulate(c), x);
    return {c.gates.size() == 7 && trailing == 3 && err < 1e-10,
            fmt("angles [%s] trailing zero-angle gates %zu (want 3), zero angles total %zu, "
                "reconstruction error %.1e",
                angles.c_str(), trailing, zeros, err)};
}

Outcome doubling_identity() {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> d(0.0, pi / 2);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        std::vector<double> x(4), twice(4);
        for (std::size_t j = 0; j < 4; ++j) {
            x[j] = d(rng);
            twice[j] = 2 * x[j];
        }
        worst = std::max(worst, state_diff(simulate(encode_simple_angle(twice, Axis::Y)),
                                           simulate(encode_pi4_angle(x))));
    }
    return {worst < 1e-12, fmt("100 draws in [0, pi/2]^4, max diff %.3e (tol 1e-12)", worst)};
}

Outcome gradient_fidelity() {
    const EncodingKind kinds[] = {EncodingKind::SimpleAngle, EncodingKind::Pi4Angle,
                                  EncodingKind::EntangledAngle, EncodingKind::Amplitude, EncodingKind::IQP};
    const std::size_t ns[] = {4, 6, 8};
    const std::size_t ms[] = {2, 4};
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> angle(0.0, pi / 2);
    constexpr double h = 1e-5;
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const ModelConfig cfg{{kinds[rng() % 5]}, ns[rng() % 3], ms[rng() % 2]};
        const ModelParams p = init_params(cfg, rng);
        std::vector<double> x;
        if (cfg.encoding.kind == EncodingKind::Amplitude) {
            x = oracle::random_unit_nonnegative(cfg.num_features, rng);
        } else {
            for (std::size_t j = 0; j < cfg.num_features; ++j) x.push_back(angle(rng));
        }
        const int y = static_cast<int>(rng() & 1U);
        const auto ps = grad_params(x, y, cfg, p);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            ModelParams plus = p, minus = p;
            plus.theta[i] += h;
            minus.theta[i] -= h;
            const double fd = (sample_loss(x, y, cfg, plus) - sample_loss(x, y, cfg, minus)) / (2 * h);
            worst = std::max(worst, std::abs(ps[i] - fd));
        }
    }
    return {worst < 1e-5, fmt("20 grid draws, max |PS - FD| %.3e (tol 1e-5)", worst)};
}

Outcome simulator_invariants() {
    std::mt19937_64 rng(kSeed);
    double drift = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
        Circuit c{n, {}};
        for (int g = 0; g < 50; ++g) c.add(oracle::random_gate(n, rng));
        drift = std::max(drift, std::abs(simulate(c).norm_squared() - 1.0));
    }

    std::uniform_real_distribution<double> d(0.0, pi / 2);
    double shuffle = 0.0;
    for (int t = 0; t < 50; ++t) {
        std::vector<double> x(2 + static_cast<std::size_t>(t % 5));
        for (double &v : x) v = d(rng);
        Circuit c = encode_iqp(x, 2);
        const StateVector ref = simulate(c);
        auto it = c.gates.begin();
        while (it != c.gates.end()) {
            auto lo = std::find_if(it, c.gates.end(), [](const GateOp &g) { return g.kind != GateKind::H; });
            auto hi = std::find_if(lo, c.gates.end(), [](const GateOp &g) { return g.kind == GateKind::H; });
            std::shuffle(lo, hi, rng);
            it = hi;
        }
        shuffle = std::max(shuffle, state_diff(simulate(c), ref));
    }

    double model = 0.0;
    for (auto kind : {EncodingKind::SimpleAngle, EncodingKind::Pi4Angle, EncodingKind::EntangledAngle,
                      EncodingKind::Amplitude, EncodingKind::IQP}) {
        for (std::size_t nf = 2; nf <= 3; ++nf) {
            const ModelConfig cfg{{kind}, nf, 1};
            const std::size_t n = cfg.num_qubits();
            const ModelParams p = init_params(cfg, rng);
            std::vector<double> x;
            if (kind == EncodingKind::Amplitude) x = oracle::random_unit_nonnegative(nf, rng);
            else for (std::size_t j = 0; j < nf; ++j) x.push_back(d(rng));
            // Dense chain: encoding unitary, RY tensor, then the CNOT ring, each as a full matrix.
            oracle::CMatrix u = oracle::circuit_unitary(encode(x, cfg.encoding));
            std::vector<oracle::CMatrix> rys;
            for (double t : p.theta) rys.push_back(oracle::mat2(std::cos(t / 2), -std::sin(t / 2),
                                                                std::sin(t / 2), std::cos(t / 2)));
            u = oracle::tensor(rys) * u;
            if (n > 1) {
                u = oracle::full_matrix(GateOp::cnot(n - 1, 0), n) * u;
                for (std::size_t j = 0; j + 1 < n; ++j) u = oracle::full_matrix(GateOp::cnot(j, j + 1), n) * u;
            }
            const double want = oracle::expectation_z(u * oracle::zero_vector(n), n - 1, n);
            model = std::max(model, std::abs(forward(x, cfg, p) - want));
        }
    }
    return {drift < 1e-12 && shuffle < 1e-12 && model < 1e-10,
            fmt("norm drift %.1e (tol 1e-12), IQP shuffle %.1e (tol 1e-12), model vs dense %.1e (tol 1e-10)",
                drift, shuffle, model)};
}

Outcome wdbc_desk_scale() {
    GridSpec spec;
    spec.datasets = {wdbc_reference(kDataDir / "wdbc.csv")};
    spec.encodings = {{EncodingKind::SimpleAngle, Axis::X}};
    spec.features = {4};
    spec.layers = {4};
    spec.seed = kSeed;
    const PreparedSplit split = load_split(spec.datasets[0], spec);
    const auto t0 = Clock::now();
    const auto records = run_grid(spec);
    const double secs = seconds_since(t0);
    const RunRecord &r = records.at(0);
    if (!r.ok()) return {false, "cell failed: " + *r.error};
    return {split.train.size() == 455 && split.test.size() == 114 && r.test_accuracy >= 0.85 &&
                r.f1 >= 0.80 && secs < 120.0,
            fmt("split %zu/%zu (want 455/114), test %.4f (>= 0.85), F1 %.4f (>= 0.80), %.1f s (< 120 s)",
                split.train.size(), split.test.size(), r.test_accuracy, r.f1, secs)};
}

Outcome mnist01_desk_scale() {
    const auto dir = kDataDir / "mnist_subset";
    DatasetRef ref;
    ref.kind = DatasetKind::Mnist;
    ref.mnist_images = dir / "train-images-idx3-ubyte";
    ref.mnist_labels = dir / "train-labels-idx1-ubyte";
    ref.mnist_test_images = dir / "t10k-images-idx3-ubyte";
    ref.mnist_test_labels = dir / "t10k-labels-idx1-ubyte";
    ref.class_a = 0;
    ref.class_b = 1;
    GridSpec spec;
    spec.datasets = {ref};
    spec.encodings = {{EncodingKind::Amplitude}};
    spec.features = {4};
    spec.layers = {4};
    spec.train_cap = 1000;
    spec.test_cap = 500;
    spec.seed = kSeed;
    const PreparedSplit split = load_split(ref, spec);
    const auto t0 = Clock::now();
    const auto records = run_grid(spec);
    const double secs = seconds_since(t0);
    const RunRecord &r = records.at(0);
    if (!r.ok()) return {false, "cell failed: " + *r.error};
    return {split.train.size() == 1000 && split.test.size() == 500 && r.test_accuracy >= 0.95 && secs < 600.0,
            fmt("train/test %zu/%zu, test %.4f (>= 0.95), F1 %.4f, %.1f s (< 600 s)", split.train.size(),
                split.test.size(), r.test_accuracy, r.f1, secs)};
}

Outcome metric_oracle() {
    std::mt19937_64 rng(kSeed);
    std::size_t mismatches = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng() % 100;
        std::vector<int> pred(n), lab(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = static_cast<int>(rng() & 1U);
            lab[i] = static_cast<int>(rng() & 1U);
        }
        long long tp = 0, fp = 0, fn = 0, tn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pred[i] == 1) (lab[i] == 1 ? tp : fp)++;
            else (lab[i] == 1 ? fn : tn)++;
        }
        const double acc = static_cast<double>(tp + tn) / static_cast<double>(n);
        double f1 = 0.0;
        if (tp > 0) {
            const double p = static_cast<double>(tp) / static_cast<double>(tp + fp);
            const double r = static_cast<double>(tp) / static_cast<double>(tp + fn);
            f1 = 2 * p * r / (p + r);
        }
        mismatches += accuracy(pred, lab) != acc || f1_score(pred, lab) != f1;
    }
    return {mismatches == 0, fmt("1000 random vectors, %zu exact mismatches", mismatches)};
}

Outcome grid_shape() {
    const std::string header = "dataset,encoding,axis,N,M,ep1,ep2,ep3,ep4,ep5,test,f1,seed,wall_time_s";
    auto check = [&](const std::vector<RunRecord> &records, std::size_t want, std::string &note) {
        std::ostringstream out;
        write_csv(out, records);
        std::istringstream in(out.str());
        std::string line;
        std::getline(in, line);
        bool ok = line == header && records.size() == want;
        std::size_t rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            ok = ok && std::count(line.begin(), line.end(), ',') == 13;
        }
        std::size_t failed = 0;
        for (const auto &r : records) failed += !r.ok();
        note += fmt("%zu records/%zu rows (want %zu), %zu failed; ", records.size(), rows, want, failed);
        return ok && rows == want && failed == 0;
    };

    GridSpec spec;
    spec.datasets = {wdbc_reference(kDataDir / "wdbc.csv")};
    spec.encodings = {{EncodingKind::SimpleAngle}, {EncodingKind::Pi4Angle}, {EncodingKind::EntangledAngle},
                      {EncodingKind::Amplitude}, {EncodingKind::IQP}};
    spec.seed = kSeed;
    const auto t0 = Clock::now();
    std::string note = "full grid: ";
    const bool full = check(run_grid(spec), 30, note);

    spec.encodings = {{EncodingKind::SimpleAngle, Axis::X}, {EncodingKind::SimpleAngle, Axis::Y}};
    note += "appendix RX/RY: ";
    auto appendix = run_grid(spec);
    bool axes = true;
    for (std::size_t i = 0; i < appendix.size(); ++i) {
        axes = axes && appendix[i].encoding == "simple" && appendix[i].axis == (i % 2 ? "y" : "x");
    }
    const bool app = check(appendix, 12, note) && axes;
    note += fmt("%.1f s", seconds_since(t0));
    return {full && app, note};
}

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> all{
        {"1", "amplitude angles reproduce the worked example", angle_reproduction},
        {"2a", "amplitude state preparation reconstructs the input", amplitude_reconstruction},
        {"2b", "six-feature loader ends in three zero-angle gates", six_feature_trailing_zeros},
        {"3", "RY(2x) angle map equals the pi/4 map", doubling_identity},
        {"4", "parameter shift agrees with finite differences", gradient_fidelity},
        {"5", "simulator invariants", simulator_invariants},
        {"6", "WDBC desk-scale run", wdbc_desk_scale},
        {"7", "MNIST 0/1 desk-scale run", mnist01_desk_scale},
        {"8", "metrics match a brute-force confusion oracle", metric_oracle},
        {"9", "grid shape and CSV schema", grid_shape},
    };
    return all;
}

} // namespace

int main(int argc, char **argv) {
    std::vector<std::string> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected.push_back(argv[++i]);
        } else if (arg == "--seed" && i + 1 < argc) {
            kSeed = std::stoull(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion ID]... [--seed N]\n", argv[0]);
            return 2;
        }
    }
    int failures = 0;
    std::size_t ran = 0;
    for (const auto &c : criteria()) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        ++ran;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s | %s\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion matched\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
