// Command-line surface for the adaptive sampling optimizers: runs the
// applications on CSV / sparse-triplet / synthetic data, optionally checks
// them against the brute-force oracles, and emits machine-readable reports.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bandopt/bandopt.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace bandopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    double delta = 0.01;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::string sigma_mode = "per-arm";
    double sigma = 1.0;
    bool theory_delta = false;
    bool oracle = false;
    std::string report_path;
    int threads = 1;
    std::int64_t warmup = 0;  // 0 = auto
    std::uint64_t data_seed = 1;
    std::string input;
    std::string sparse_input;
    std::string synthetic;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--delta", o.delta, "CI failure probability (default 0.01)");
    cmd->add_option("--epsilon", o.epsilon, "approximation slack, 0 = exact");
    cmd->add_option("--seed", o.seed, "bandit seed");
    cmd->add_option("--sigma-mode", o.sigma_mode, "per-arm | global | fixed")
        ->check(CLI::IsMember({"per-arm", "global", "fixed"}));
    cmd->add_option("--sigma", o.sigma, "sigma value for --sigma-mode fixed");
    cmd->add_flag("--theory-delta", o.theory_delta, "use delta = 2/(n^3 d)");
    cmd->add_flag("--oracle", o.oracle, "also run the brute-force reference and score accuracy");
    cmd->add_option("--report", o.report_path, "write a JSON run report here");
    cmd->add_option("--threads", o.threads, "parallel per-point bandits");
    cmd->add_option("--warmup", o.warmup, "warm-up pulls per arm (0 = ceil(log2 n))");
    cmd->add_option("--data-seed", o.data_seed, "seed for synthetic data generation");
}

BanditConfig to_config(const CommonOpts& o, std::int64_t n, std::int64_t d) {
    BanditConfig cfg;
    cfg.delta = o.theory_delta ? theory_delta(n, d) : o.delta;
    cfg.epsilon = o.epsilon;
    cfg.seed = o.seed;
    if (o.warmup > 0) cfg.warmup_pulls = o.warmup;
    if (o.sigma_mode == "global")
        cfg.sigma_mode = SigmaMode::global;
    else if (o.sigma_mode == "fixed")
        cfg.sigma_mode = SigmaMode::fixed;
    cfg.sigma_fixed = o.sigma;
    return cfg;
}

ordered_json config_json(const CommonOpts& o, const BanditConfig& cfg) {
    ordered_json j;
    j["delta"] = cfg.delta;
    j["epsilon"] = cfg.epsilon;
    j["seed"] = cfg.seed;
    j["sigma_mode"] = o.sigma_mode;
    if (o.sigma_mode == "fixed") j["sigma"] = o.sigma;
    j["theory_delta"] = o.theory_delta;
    j["warmup"] = o.warmup;
    j["threads"] = o.threads;
    return j;
}

ordered_json ledger_json(const EvalLedger& lg) {
    ordered_json j;
    j["coord_touches"] = lg.coord_touches;
    j["effective_total"] = lg.effective_total;
    j["pairs"] = lg.pairs;
    j["exact_evals"] = lg.exact_evals;
    j["gain"] = lg.gain();
    return j;
}

void require_readable(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--input", "cannot read " + path);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void finish_report(ordered_json& report, const Timer& timer, const std::string& path) {
    report["wall_time_ms"] = timer.ms();
    if (path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report to " + path);
    out << report.dump(2) << "\n";
}

// ---- data resolution ------------------------------------------------------

DenseMatrix resolve_dense(const CommonOpts& o, std::int64_t n, std::int64_t d,
                          std::int64_t centers, double spread, double stddev,
                          ordered_json& data_meta) {
    if (!o.input.empty()) {
        require_readable(o.input);
        data_meta["source"] = o.input;
        DenseMatrix m = load_dense(o.input);
        data_meta["n"] = m.rows();
        data_meta["d"] = m.cols();
        return m;
    }
    if (o.synthetic != "blobs")
        throw CLI::ValidationError("--synthetic", "expected 'blobs' or an --input file");
    auto fx = synth::gen_blobs(n, d, centers, spread, stddev, o.data_seed);
    data_meta["source"] = "synthetic:blobs";
    data_meta["n"] = n;
    data_meta["d"] = d;
    data_meta["centers"] = centers;
    data_meta["data_seed"] = o.data_seed;
    return std::move(fx.data);
}

std::vector<SparseVector> resolve_sparse(const CommonOpts& o, std::int64_t n, std::int64_t d,
                                         std::int64_t centers, double density,
                                         ordered_json& data_meta) {
    if (!o.sparse_input.empty()) {
        require_readable(o.sparse_input);
        data_meta["source"] = o.sparse_input;
        auto vecs = load_sparse(o.sparse_input);
        data_meta["n"] = vecs.size();
        data_meta["d"] = vecs.empty() ? 0 : vecs.front().dim();
        return vecs;
    }
    if (o.synthetic != "sparse-blobs")
        throw CLI::ValidationError("--synthetic", "expected 'sparse-blobs' or --sparse-input");
    auto fx = synth::gen_sparse_blobs(n, d, centers, density, o.data_seed);
    data_meta["source"] = "synthetic:sparse-blobs";
    data_meta["n"] = n;
    data_meta["d"] = d;
    data_meta["density"] = density;
    data_meta["data_seed"] = o.data_seed;
    return std::move(fx.data);
}

// ---- subcommand runners ---------------------------------------------------

int run_knn(const CommonOpts& o, std::int64_t k, const std::string& mode, std::int64_t n,
            std::int64_t d, std::int64_t centers, double spread, double stddev, double density) {
    Timer timer;
    ordered_json report;
    report["schema_version"] = 1;
    report["application"] = "knn";
    ordered_json data_meta;

    EvalLedger ledger;
    std::vector<std::vector<std::int64_t>> neighbors;
    std::optional<double> accuracy;

    if (mode == "sparse") {
        const auto data = resolve_sparse(o, n, d, centers, density, data_meta);
        const auto nn = static_cast<std::int64_t>(data.size());
        const BanditConfig cfg = to_config(o, nn, d);
        report["config"] = config_json(o, cfg);
        report["config"]["k"] = k;
        report["config"]["mode"] = mode;
        KnnResult res = knn_graph(std::span<const SparseVector>(data), k, cfg, o.threads);
        neighbors = std::move(res.neighbors);
        ledger = res.ledger;
        if (o.oracle) accuracy = oracle::knn_accuracy(oracle::brute_knn_sparse(data, k), neighbors);
    } else {
        const DenseMatrix data = resolve_dense(o, n, d, centers, spread, stddev, data_meta);
        const BanditConfig cfg = to_config(o, data.rows(), data.cols());
        report["config"] = config_json(o, cfg);
        report["config"]["k"] = k;
        report["config"]["mode"] = mode;
        KnnResult res = knn_graph(data, k, cfg, o.threads);
        neighbors = std::move(res.neighbors);
        ledger = res.ledger;
        if (o.oracle) accuracy = oracle::knn_accuracy(oracle::brute_knn(data, k), neighbors);
    }
    report["data"] = data_meta;
    report["result"]["neighbors"] = neighbors;
    report["ledger"] = ledger_json(ledger);
    if (accuracy) report["oracle"]["accuracy"] = *accuracy;
    finish_report(report, timer, o.report_path);
    return kExitOk;
}

int run_kmeans(const CommonOpts& o, std::int64_t k, int iters, std::int64_t n, std::int64_t d,
               std::int64_t centers, double spread, double stddev) {
    Timer timer;
    ordered_json report;
    report["schema_version"] = 1;
    report["application"] = "kmeans";
    ordered_json data_meta;
    const DenseMatrix data = resolve_dense(o, n, d, centers, spread, stddev, data_meta);
    const BanditConfig cfg = to_config(o, data.rows(), data.cols());
    report["config"] = config_json(o, cfg);
    report["config"]["k"] = k;
    report["config"]["iters"] = iters;
    report["data"] = data_meta;

    const Assignment res = lloyd(data, k, iters, cfg, o.threads);
    report["result"]["labels"] = res.labels;
    report["result"]["inertia"] = res.inertia;
    report["result"]["iters"] = res.iters;
    report["ledger"] = ledger_json(res.ledger);
    if (o.oracle) {
        // score one adaptive assignment of the final centroids vs brute force
        const auto brute = oracle::brute_assign(data, res.centroids);
        report["oracle"]["assignment_accuracy"] =
            oracle::kmeans_accuracy(brute.labels, res.labels);
        report["oracle"]["inertia"] = brute.inertia;
    }
    finish_report(report, timer, o.report_path);
    return kExitOk;
}

int run_medoid(const CommonOpts& o, const std::string& metric_name, const std::string& pull_log,
               std::int64_t n, std::int64_t d, std::int64_t centers, double spread,
               double stddev) {
    Timer timer;
    ordered_json report;
    report["schema_version"] = 1;
    report["application"] = "medoid";
    ordered_json data_meta;
    const DenseMatrix data = resolve_dense(o, n, d, centers, spread, stddev, data_meta);
    const BanditConfig cfg = to_config(o, data.rows(), data.cols());
    report["config"] = config_json(o, cfg);
    report["config"]["metric"] = metric_name;
    report["data"] = data_meta;

    const Metric metric = metric_name == "l1"     ? Metric::l1
                          : metric_name == "l2sq" ? Metric::l2sq
                                                  : Metric::l2;
    MedoidResult res;
    if (!pull_log.empty()) {
        std::ofstream log_out(pull_log);
        if (!log_out) throw std::runtime_error("cannot write pull log to " + pull_log);
        const auto sink = [&](const PullRecord& r) {
            ordered_json line;
            line["step"] = r.step;
            line["arm"] = r.arm;
            line["sample"] = r.sample;
            line["lcb"] = r.lcb;
            line["ucb"] = r.ucb;
            line["kind"] = r.kind == PullRecord::Kind::pull    ? "pull"
                           : r.kind == PullRecord::Kind::emit ? "emit"
                                                               : "exact";
            log_out << line.dump() << "\n";
        };
        res = medoid(data, cfg, metric, MedoidOptions{}, sink);
    } else {
        res = medoid(data, cfg, metric);
    }
    report["result"]["medoid"] = res.id;
    report["ledger"] = ledger_json(res.ledger);
    if (o.oracle) {
        const auto m = metric == Metric::l1 ? oracle::MedoidMetric::l1 : oracle::MedoidMetric::l2sq;
        const std::int64_t brute = oracle::brute_medoid(data, m);
        report["oracle"]["medoid"] = brute;
        report["oracle"]["match"] = brute == res.id;
    }
    finish_report(report, timer, o.report_path);
    return kExitOk;
}

void write_linkage_csv(const Dendrogram& tree, const std::string& path);

int run_hier(const CommonOpts& o, bool pooled_init, const std::string& linkage_csv,
             std::int64_t n, std::int64_t d, std::int64_t centers, double spread,
             double stddev) {
    Timer timer;
    ordered_json report;
    report["schema_version"] = 1;
    report["application"] = "hier";
    ordered_json data_meta;
    const DenseMatrix data = resolve_dense(o, n, d, centers, spread, stddev, data_meta);
    const BanditConfig cfg = to_config(o, data.rows(), data.cols());
    report["config"] = config_json(o, cfg);
    report["config"]["pooled_init"] = pooled_init;
    report["data"] = data_meta;

    const HierResult res = cluster(data, cfg, HierOptions{pooled_init});
    ordered_json merges = ordered_json::array();
    for (const Merge& m : res.tree.merges) {
        ordered_json jm;
        jm["a"] = m.a;
        jm["b"] = m.b;
        jm["new_id"] = m.new_id;
        jm["value"] = m.value;
        jm["exact"] = m.exact;
        merges.push_back(jm);
    }
    report["result"]["n_leaves"] = res.tree.n_leaves;
    report["result"]["merges"] = merges;
    report["ledger"] = ledger_json(res.ledger);
    if (o.oracle) {
        const Dendrogram exact = oracle::brute_hier(data);
        report["oracle"]["tree_accuracy"] = oracle::tree_accuracy(exact, res.tree, 32, 1);
    }
    if (!linkage_csv.empty()) write_linkage_csv(res.tree, linkage_csv);
    finish_report(report, timer, o.report_path);
    return kExitOk;
}

// flat 4-column linkage CSV (a, b, value, size), one row per merge
void write_linkage_csv(const Dendrogram& tree, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write linkage to " + path);
    out.precision(17);
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(2 * tree.n_leaves - 1), 1);
    for (const Merge& m : tree.merges) {
        const std::int64_t size = sizes[static_cast<std::size_t>(m.a)] +
                                  sizes[static_cast<std::size_t>(m.b)];
        sizes[static_cast<std::size_t>(m.new_id)] = size;
        out << m.a << ',' << m.b << ',' << m.value << ',' << size << '\n';
    }
}

int run_mmi(const CommonOpts& o, std::int64_t target_col, std::int64_t n, std::int64_t d,
            double noise) {
    Timer timer;
    ordered_json report;
    report["schema_version"] = 1;
    report["application"] = "mmi";
    ordered_json data_meta;

    DenseMatrix x;
    std::vector<double> target;
    if (!o.input.empty()) {
        require_readable(o.input);
        const DenseMatrix full = load_dense(o.input);
        if (target_col < 0 || target_col >= full.cols())
            throw CLI::ValidationError("--target-col", "column out of range");
        x = DenseMatrix(full.rows(), full.cols() - 1);
        target.resize(static_cast<std::size_t>(full.rows()));
        for (std::int64_t i = 0; i < full.rows(); ++i) {
            std::int64_t w = 0;
            for (std::int64_t j = 0; j < full.cols(); ++j) {
                if (j == target_col) {
                    target[static_cast<std::size_t>(i)] = full(i, j);
                } else {
                    x(i, w++) = full(i, j);
                }
            }
        }
        data_meta["source"] = o.input;
        data_meta["target_col"] = target_col;
    } else {
        if (o.synthetic != "mmi-planted")
            throw CLI::ValidationError("--synthetic", "expected 'mmi-planted' or an --input file");
        auto fx = synth::gen_mmi_planted(n, d, 0, noise, o.data_seed);
        x = std::move(fx.x);
        target = std::move(fx.target);
        data_meta["source"] = "synthetic:mmi-planted";
        data_meta["planted"] = 0;
        data_meta["noise"] = noise;
        data_meta["data_seed"] = o.data_seed;
    }
    data_meta["n"] = x.rows();
    data_meta["d"] = x.cols();
    const BanditConfig cfg = to_config(o, x.rows(), x.cols());
    report["config"] = config_json(o, cfg);
    report["data"] = data_meta;

    const MmiResult res = select_feature(x, target, cfg);
    report["result"]["feature"] = res.feature;
    ordered_json per_feature = ordered_json::array();
    for (std::int64_t j = 0; j < x.cols(); ++j) {
        ordered_json f;
        f["feature"] = j;
        const double mi = res.final_mi[static_cast<std::size_t>(j)];
        if (std::isnan(mi))
            f["mi"] = nullptr;
        else
            f["mi"] = mi;
        f["rows"] = res.rows_used[static_cast<std::size_t>(j)];
        per_feature.push_back(f);
    }
    report["result"]["per_feature"] = per_feature;
    report["ledger"] = ledger_json(res.ledger);
    if (o.oracle) {
        const auto brute = oracle::brute_mmi(x, target);
        report["oracle"]["feature"] = brute.feature;
        report["oracle"]["match"] = brute.feature == res.feature;
    }
    finish_report(report, timer, o.report_path);
    return kExitOk;
}

int run_gaincurve(const CommonOpts& o, const std::string& app, std::vector<std::int64_t> dims,
                  std::vector<std::int64_t> sizes, std::int64_t n_fixed, std::int64_t d_fixed,
                  std::int64_t k, int repeats, const std::string& out_csv) {
    Timer timer;
    ordered_json report;
    report["schema_version"] = 1;
    report["application"] = "gaincurve";
    report["config"] = config_json(o, to_config(o, std::max<std::int64_t>(n_fixed, 2),
                                                std::max<std::int64_t>(d_fixed, 2)));
    report["config"]["app"] = app;
    report["config"]["repeats"] = repeats;

    ordered_json rows = ordered_json::array();
    std::ofstream csv;
    if (!out_csv.empty()) {
        csv.open(out_csv);
        if (!csv) throw std::runtime_error("cannot write gain curve to " + out_csv);
        csv << "x,gain,effective,brute\n";
        csv.precision(17);
    }

    const auto record = [&](std::int64_t x, double gain, double eff, double brute) {
        ordered_json r;
        r["x"] = x;
        r["gain"] = gain;
        r["effective"] = eff;
        r["brute"] = brute;
        rows.push_back(r);
        if (csv.is_open()) csv << x << ',' << gain << ',' << eff << ',' << brute << '\n';
    };

    if (app == "knn") {
        if (dims.empty()) throw CLI::ValidationError("--dims", "required for --app knn");
        for (const std::int64_t dim : dims) {
            double gain_sum = 0.0, eff_sum = 0.0, brute_sum = 0.0;
            for (int r = 0; r < repeats; ++r) {
                auto fx = synth::gen_blobs(n_fixed, dim, 10, 1.0, 1.0,
                                           Rng::mix(o.data_seed, static_cast<std::uint64_t>(r)));
                BanditConfig cfg = to_config(o, n_fixed, dim);
                cfg.seed = Rng::mix(o.seed, static_cast<std::uint64_t>(r));
                const KnnResult res = knn_graph(fx.data, k, cfg, o.threads);
                gain_sum += res.ledger.gain();
                eff_sum += res.ledger.effective_total;
                brute_sum += static_cast<double>(res.ledger.pairs);
            }
            record(dim, gain_sum / repeats, eff_sum / repeats, brute_sum / repeats);
        }
    } else if (app == "mmi") {
        if (sizes.empty()) throw CLI::ValidationError("--sizes", "required for --app mmi");
        for (const std::int64_t size : sizes) {
            double gain_sum = 0.0, eff_sum = 0.0, brute_sum = 0.0;
            for (int r = 0; r < repeats; ++r) {
                auto fx = synth::gen_mmi_planted(size, d_fixed, 0, 0.5,
                                                 Rng::mix(o.data_seed, static_cast<std::uint64_t>(r)));
                BanditConfig cfg = to_config(o, size, d_fixed);
                cfg.seed = Rng::mix(o.seed, static_cast<std::uint64_t>(r));
                const MmiResult res = select_feature(fx.x, fx.target, cfg);
                gain_sum += res.ledger.gain();
                eff_sum += res.ledger.effective_total;
                brute_sum += static_cast<double>(res.ledger.pairs);
            }
            record(size, gain_sum / repeats, eff_sum / repeats, brute_sum / repeats);
        }
    } else {
        throw CLI::ValidationError("--app", "expected knn or mmi");
    }
    report["result"]["rows"] = rows;
    finish_report(report, timer, o.report_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive sampling optimizers: knn, kmeans, medoid, hierarchical, mmi"};
    app.require_subcommand(1);

    CommonOpts o;
    std::int64_t n = 100, d = 64, centers = 5, k = 5, target_col = 0;
    std::int64_t n_fixed = 300, d_fixed = 50;
    double spread = 1.0, stddev = 1.0, density = 0.07, noise = 0.5;
    int iters = 10, repeats = 1;
    std::string mode = "dense", metric = "l1", pull_log, gc_app = "knn", out_csv;
    bool pooled_init = false;
    std::vector<std::int64_t> dims, sizes;

    const auto add_data_flags = [&](CLI::App* cmd, bool sparse_ok) {
        cmd->add_option("--input", o.input, "dense CSV input");
        if (sparse_ok) cmd->add_option("--sparse-input", o.sparse_input, "sparse triplet input");
        cmd->add_option("--synthetic", o.synthetic, "synthetic fixture kind");
        cmd->add_option("--n", n, "synthetic: number of points");
        cmd->add_option("--d", d, "synthetic: dimensions");
        cmd->add_option("--centers", centers, "synthetic: blob count");
        cmd->add_option("--spread", spread, "synthetic: center spread");
        cmd->add_option("--std", stddev, "synthetic: per-point noise");
        if (sparse_ok) cmd->add_option("--density", density, "synthetic: nonzero fraction");
    };

    CLI::App* knn_cmd = app.add_subcommand("knn", "k-nearest-neighbor graph");
    add_common(knn_cmd, o);
    add_data_flags(knn_cmd, true);
    knn_cmd->add_option("--k", k, "neighbors per point");
    knn_cmd->add_option("--mode", mode, "dense | sparse")
        ->check(CLI::IsMember({"dense", "sparse"}));

    CLI::App* kmeans_cmd = app.add_subcommand("kmeans", "Lloyd iterations");
    add_common(kmeans_cmd, o);
    add_data_flags(kmeans_cmd, false);
    kmeans_cmd->add_option("--k", k, "clusters");
    kmeans_cmd->add_option("--iters", iters, "max Lloyd iterations");

    CLI::App* medoid_cmd = app.add_subcommand("medoid", "medoid of the point set");
    add_common(medoid_cmd, o);
    add_data_flags(medoid_cmd, false);
    medoid_cmd->add_option("--metric", metric, "l1 | l2sq | l2")
        ->check(CLI::IsMember({"l1", "l2sq", "l2"}));
    medoid_cmd->add_option("--pull-log", pull_log, "newline-delimited JSON pull log");

    CLI::App* hier_cmd = app.add_subcommand("hier", "average-linkage hierarchical clustering");
    add_common(hier_cmd, o);
    add_data_flags(hier_cmd, false);
    hier_cmd->add_flag("--pooled-init", pooled_init, "seed new arms from the merged pair");
    std::string linkage_csv;
    hier_cmd->add_option("--linkage-csv", linkage_csv, "write a 4-column linkage CSV");

    CLI::App* mmi_cmd = app.add_subcommand("mmi", "maximum mutual information feature");
    add_common(mmi_cmd, o);
    mmi_cmd->add_option("--input", o.input, "dense CSV input (features + target column)");
    mmi_cmd->add_option("--synthetic", o.synthetic, "synthetic fixture kind (mmi-planted)");
    mmi_cmd->add_option("--n", n, "synthetic: rows");
    mmi_cmd->add_option("--d", d, "synthetic: features");
    mmi_cmd->add_option("--noise", noise, "synthetic: target noise");
    mmi_cmd->add_option("--target-col", target_col, "target column index for --input");

    CLI::App* gc_cmd = app.add_subcommand("gaincurve", "gain vs dimension / sample size sweep");
    add_common(gc_cmd, o);
    gc_cmd->add_option("--app", gc_app, "knn | mmi")->check(CLI::IsMember({"knn", "mmi"}));
    gc_cmd->add_option("--dims", dims, "knn: dimension grid")->delimiter(',');
    gc_cmd->add_option("--sizes", sizes, "mmi: sample-size grid")->delimiter(',');
    gc_cmd->add_option("--n", n_fixed, "knn: fixed number of points");
    gc_cmd->add_option("--d", d_fixed, "mmi: fixed feature count");
    gc_cmd->add_option("--k", k, "knn: neighbors per point");
    gc_cmd->add_option("--repeats", repeats, "seeds averaged per grid point");
    gc_cmd->add_option("--out", out_csv, "gain curve CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(knn_cmd))
            return run_knn(o, k, mode, n, d, centers, spread, stddev, density);
        if (app.got_subcommand(kmeans_cmd))
            return run_kmeans(o, k, iters, n, d, centers, spread, stddev);
        if (app.got_subcommand(medoid_cmd))
            return run_medoid(o, metric, pull_log, n, d, centers, spread, stddev);
        if (app.got_subcommand(hier_cmd))
            return run_hier(o, pooled_init, linkage_csv, n, d, centers, spread, stddev);
        if (app.got_subcommand(mmi_cmd)) return run_mmi(o, target_col, n, d, noise);
        if (app.got_subcommand(gc_cmd))
            return run_gaincurve(o, gc_app, dims, sizes, n_fixed, d_fixed, k, repeats, out_csv);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
