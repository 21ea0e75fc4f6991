// rfkit command-line tool: dataset generation, training, prediction,
// cross-validation, kernel-approximation reports and a benchmark harness.
// Everything numeric goes through the rfkit C API.

#include <rfkit.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

// ---------------------------------------------------------------------------
// plumbing

[[noreturn]] void fatal(int rc) {
    std::cerr << "error: " << rf_last_error() << "\n";
    // API status -> exit code: usage 2, data 3, numeric/internal 4
    switch (rc) {
        case RF_ERR_INVALID_ARGUMENT: std::exit(2);
        case RF_ERR_DATA: std::exit(3);
        default: std::exit(4);
    }
}

[[noreturn]] void usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(2);
}

void check(int rc) {
    if (rc != RF_OK) fatal(rc);
}

template <typename T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    explicit Handle(T* q) : p(q) {}
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& o) noexcept : p(o.p) { o.p = nullptr; }
    Handle& operator=(Handle&& o) noexcept {
        if (this != &o) {
            reset();
            p = o.p;
            o.p = nullptr;
        }
        return *this;
    }
    ~Handle() { reset(); }
    void reset() {
        if (p) Free(p);
        p = nullptr;
    }
    T** out() {
        reset();
        return &p;
    }
    T* get() const { return p; }
    explicit operator bool() const { return p != nullptr; }
};

using MatrixHandle = Handle<rf_matrix, rf_matrix_free>;
using DatasetHandle = Handle<rf_dataset, rf_dataset_free>;
using KernelHandle = Handle<rf_kernel, rf_kernel_free>;
using MapHandle = Handle<rf_feature_map, rf_feature_map_free>;
using ModelHandle = Handle<rf_model, rf_model_free>;
using ReportHandle = Handle<rf_cv_report, rf_cv_report_free>;

struct Mat {
    std::int64_t rows = 0, cols = 0;
    std::vector<double> v;
    double at(std::int64_t i, std::int64_t j) const {
        return v[static_cast<std::size_t>(i * cols + j)];
    }
};

Mat fetch(const rf_matrix* m) {
    Mat out;
    out.rows = rf_matrix_rows(m);
    out.cols = rf_matrix_cols(m);
    out.v.resize(static_cast<std::size_t>(out.rows * out.cols));
    if (out.rows * out.cols > 0) check(rf_matrix_get(m, out.v.data()));
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_time(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", seconds);
    return buf;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            usage_error(std::string(what) + ": bad number '" + tok + "'");
        }
    }
    if (out.empty()) usage_error(std::string(what) + ": empty list");
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what,
                                         std::int64_t min_value = 1) {
    std::vector<std::int64_t> out;
    for (double v : parse_double_list(text, what)) {
        if (v < static_cast<double>(min_value) || v != std::floor(v)) {
            usage_error(std::string(what) + ": expected integers >= " +
                        std::to_string(min_value));
        }
        out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// One warmup run, then `reps` timed runs; returns the median.
template <typename Fn>
double time_median(int reps, Fn&& fn) {
    fn();
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_seconds();
        fn();
        times.push_back(now_seconds() - t0);
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

struct OutputFile {
    std::ofstream file;
    std::ostream& stream;
    explicit OutputFile(const std::string& path)
        : file(), stream(open(path) ? file : std::cout) {}

private:
    bool open(const std::string& path) {
        if (path.empty()) return false;
        file.open(path);
        if (!file) usage_error("cannot write '" + path + "'");
        return true;
    }
};

// Reports embed the full run configuration so a reader can reproduce them.
struct ConfigEcho {
    std::vector<std::pair<std::string, std::string>> kv;
    void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void add(const std::string& k, double v) { add(k, fmt(v)); }
    void add(const std::string& k, std::int64_t v) { add(k, std::to_string(v)); }
    void write(std::ostream& os, const std::string& command) const {
        os << "# rfkit " << command << "\n";
        os << "# config:";
        for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
        os << "\n";
    }
};

// ---------------------------------------------------------------------------
// shared options

struct DataOptions {
    std::string path;
    std::string targets = "last";
    std::string task = "regression";
    bool header = false;
    bool remap01 = false;
};

void add_data_options(CLI::App* cmd, DataOptions& d, bool require_path = true) {
    auto* opt = cmd->add_option("--data", d.path, "input CSV file");
    if (require_path) opt->required();
    cmd->add_option("--targets", d.targets,
                    "target columns: 'last', 'last:K', or 0-based indices");
    cmd->add_option("--task", d.task, "regression | classification")
        ->check(CLI::IsMember({"regression", "classification"}));
    cmd->add_flag("--header", d.header, "skip a header row");
    cmd->add_flag("--remap01", d.remap01, "remap 0/1 class labels to -1/+1");
}

int task_of(const DataOptions& d) {
    return d.task == "classification" ? RF_TASK_CLASSIFICATION : RF_TASK_REGRESSION;
}

DatasetHandle load_dataset(const DataOptions& d) {
    DatasetHandle ds;
    check(rf_dataset_load_csv(d.path.c_str(), d.targets.c_str(), task_of(d),
                              d.header ? 1 : 0, d.remap01 ? 1 : 0, ds.out()));
    return ds;
}

struct MethodOptions {
    std::string method = "lr";
    std::string kernel = "rbf";
    std::string family = "fourier";
    double sigma = 1.0;
    double a = 0.0;  // 0: derive from the standardized input range
    double poly_a = 1.0;
    double poly_b = 0.0;
    int degree = 2;
    std::int64_t features = 256;
    double lambda = 1e-6;
    std::uint64_t seed = 0;
    bool no_scale = false;
};

void add_method_options(CLI::App* cmd, MethodOptions& m) {
    cmd->add_option("--method", m.method, "lr | krr | rks")
        ->check(CLI::IsMember({"lr", "krr", "rks"}));
    cmd->add_option("--kernel", m.kernel,
                    "krr kernel: linear | polynomial | rbf | laplacian | stump-l1")
        ->check(CLI::IsMember({"linear", "polynomial", "rbf", "laplacian", "stump-l1"}));
    cmd->add_option("--family", m.family,
                    "rks family: fourier | squarewave | walsh | stump | binning")
        ->check(CLI::IsMember({"fourier", "squarewave", "walsh", "stump", "binning"}));
    cmd->add_option("--sigma", m.sigma, "kernel bandwidth");
    cmd->add_option("--a", m.a, "stump normalization (default: standardized box width)");
    cmd->add_option("--poly-a", m.poly_a, "polynomial kernel scale");
    cmd->add_option("--poly-b", m.poly_b, "polynomial kernel offset");
    cmd->add_option("--degree", m.degree, "polynomial kernel degree");
    cmd->add_option("--features,-D", m.features, "number of random features D");
    cmd->add_option("--lambda", m.lambda, "ridge regularization");
    cmd->add_option("--seed", m.seed, "random seed");
    cmd->add_flag("--no-scale", m.no_scale, "center inputs without variance scaling");
}

rf_fit_options fit_options_of(const MethodOptions& m) {
    rf_fit_options o;
    rf_fit_options_init(&o);
    o.lambda = m.lambda;
    o.scale_inputs = m.no_scale ? 0 : 1;
    return o;
}

void standardized_box(const rf_dataset* ds, const MethodOptions& m,
                      std::vector<double>& lo, std::vector<double>& hi) {
    const auto d = rf_dataset_input_dim(ds);
    lo.resize(static_cast<std::size_t>(d));
    hi.resize(static_cast<std::size_t>(d));
    check(rf_dataset_standardized_input_range(ds, 1, m.no_scale ? 0 : 1, lo.data(),
                                              hi.data()));
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (!(lo[j] < hi[j])) {
            lo[j] -= 0.5;
            hi[j] += 0.5;
        }
    }
}

double box_width_sum(const std::vector<double>& lo, const std::vector<double>& hi) {
    double s = 0.0;
    for (std::size_t j = 0; j < lo.size(); ++j) s += hi[j] - lo[j];
    return s;
}

KernelHandle make_kernel(const rf_dataset* ds, const MethodOptions& m) {
    KernelHandle k;
    if (m.kernel == "linear") {
        check(rf_kernel_linear(k.out()));
    } else if (m.kernel == "polynomial") {
        check(rf_kernel_polynomial(m.poly_a, m.poly_b, m.degree, k.out()));
    } else if (m.kernel == "rbf") {
        check(rf_kernel_rbf(m.sigma, k.out()));
    } else if (m.kernel == "laplacian") {
        check(rf_kernel_laplacian(m.sigma, k.out()));
    } else if (m.kernel == "stump-l1") {
        std::vector<double> lo, hi;
        standardized_box(ds, m, lo, hi);
        const double a = m.a > 0.0 ? m.a : box_width_sum(lo, hi);
        check(rf_kernel_stump_l1(a, lo.data(), hi.data(),
                                 static_cast<std::int64_t>(lo.size()), k.out()));
    } else {
        usage_error("unknown kernel '" + m.kernel + "'");
    }
    return k;
}

MapHandle make_map(const rf_dataset* ds, const MethodOptions& m, std::uint64_t seed,
                   std::uint64_t stream) {
    MapHandle f;
    const auto dim = rf_dataset_input_dim(ds);
    if (m.family == "stump" || m.family == "binning") {
        std::vector<double> lo, hi;
        standardized_box(ds, m, lo, hi);
        double param = m.sigma;
        if (m.family == "stump") param = m.a > 0.0 ? m.a : box_width_sum(lo, hi);
        check(rf_feature_map_sample(m.family.c_str(), param, lo.data(), hi.data(),
                                    static_cast<std::int64_t>(lo.size()), m.features,
                                    seed, stream, dim, f.out()));
    } else {
        check(rf_feature_map_sample(m.family.c_str(), m.sigma, nullptr, nullptr, 0,
                                    m.features, seed, stream, dim, f.out()));
    }
    return f;
}

ModelHandle fit_model(const rf_dataset* ds, const MethodOptions& m) {
    const rf_fit_options opts = fit_options_of(m);
    ModelHandle model;
    if (m.method == "lr") {
        check(rf_fit_lr(ds, &opts, model.out()));
    } else if (m.method == "krr") {
        KernelHandle k = make_kernel(ds, m);
        check(rf_fit_krr(ds, k.get(), &opts, model.out()));
    } else {
        MapHandle f = make_map(ds, m, m.seed, 0);
        check(rf_fit_rks(ds, f.get(), &opts, model.out()));
    }
    return model;
}

double rmse_of(const Mat& pred, const Mat& truth) {
    double s = 0.0;
    for (std::size_t i = 0; i < pred.v.size(); ++i) {
        const double d = pred.v[i] - truth.v[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(pred.v.size()));
}

double accuracy_of(const Mat& labels, const Mat& truth) {
    std::int64_t correct = 0;
    for (std::size_t i = 0; i < labels.v.size(); ++i) {
        if (labels.v[i] == truth.v[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(labels.v.size());
}

double score_model(const rf_model* model, const rf_matrix* x, const rf_matrix* y) {
    MatrixHandle pred;
    if (rf_model_task(model) == RF_TASK_CLASSIFICATION) {
        check(rf_model_predict_class(model, x, pred.out()));
        return accuracy_of(fetch(pred.get()), fetch(y));
    }
    check(rf_model_predict(model, x, pred.out()));
    return rmse_of(fetch(pred.get()), fetch(y));
}

// ---------------------------------------------------------------------------
// gen-data

struct GenDataArgs {
    std::string kind = "sumsines";
    std::int64_t n = 1000;
    std::int64_t dim = 2;
    double noise = 0.1;
    std::uint64_t seed = 0;
    std::string out;
    bool header = false;
};

void run_gen_data(const GenDataArgs& a) {
    DatasetHandle ds;
    check(rf_dataset_generate(a.kind.c_str(), a.n, a.dim, a.noise, a.seed, ds.out()));
    check(rf_dataset_save_csv(ds.get(), a.out.c_str(), a.header ? 1 : 0));
    std::cout << "wrote " << rf_dataset_rows(ds.get()) << " samples ("
              << rf_dataset_input_dim(ds.get()) << " inputs, "
              << rf_dataset_target_dim(ds.get()) << " targets) to " << a.out << "\n";
}

// ---------------------------------------------------------------------------
// fit / predict

struct FitArgs {
    DataOptions data;
    MethodOptions method;
    std::string out;
};

void run_fit(const FitArgs& a) {
    DatasetHandle ds = load_dataset(a.data);
    ModelHandle model = fit_model(ds.get(), a.method);
    check(rf_model_save(model.get(), a.out.c_str()));
    std::cout << "fit " << a.method.method << " on " << rf_dataset_rows(ds.get())
              << " samples; model " << rf_model_bytes(model.get()) << " bytes -> "
              << a.out << "\n";
}

struct PredictArgs {
    std::string model;
    std::string data;
    std::string targets;  // optional: drop these columns before predicting
    bool header = false;
    bool scores = false;
    std::string out;
};

void run_predict(const PredictArgs& a) {
    ModelHandle model;
    check(rf_model_load(a.model.c_str(), model.out()));

    MatrixHandle x;
    if (a.targets.empty()) {
        check(rf_matrix_load_csv(a.data.c_str(), a.header ? 1 : 0, x.out()));
    } else {
        DatasetHandle ds;
        check(rf_dataset_load_csv(a.data.c_str(), a.targets.c_str(), RF_TASK_REGRESSION,
                                  a.header ? 1 : 0, 0, ds.out()));
        check(rf_dataset_inputs(ds.get(), x.out()));
    }

    MatrixHandle pred;
    if (rf_model_task(model.get()) == RF_TASK_CLASSIFICATION && !a.scores) {
        check(rf_model_predict_class(model.get(), x.get(), pred.out()));
    } else {
        check(rf_model_predict(model.get(), x.get(), pred.out()));
    }
    check(rf_matrix_save_csv(pred.get(), a.out.c_str()));
    std::cout << "wrote " << rf_matrix_rows(pred.get()) << " predictions to " << a.out
              << "\n";
}

// ---------------------------------------------------------------------------
// cv

struct CvArgs {
    DataOptions data;
    MethodOptions method;
    std::string lambdas = "1e-06,1e-05,0.0001,0.001,0.01,0.1,1,10";
    std::string params;         // default: around the median pairwise distance
    std::string features_list;  // rks only, default "128,256,512"
    std::int64_t folds = 5;
    std::string metric;  // default by task
    std::string out;
    std::string out_model;
    std::string format = "csv";
};

// sigma grid heuristic: log-spaced around the median pairwise distance of the
// standardized inputs (subsampled for large n)
std::vector<double> sigma_heuristic(const rf_dataset* ds, bool scale_inputs) {
    MatrixHandle xs;
    check(rf_dataset_standardized_inputs(ds, 1, scale_inputs ? 1 : 0, xs.out()));
    const Mat m = fetch(xs.get());
    const std::int64_t n = std::min<std::int64_t>(m.rows, 256);
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::int64_t c = 0; c < m.cols; ++c) {
                const double d = m.at(i, c) - m.at(j, c);
                s += d * d;
            }
            dists.push_back(std::sqrt(s));
        }
    }
    if (dists.empty()) return {1.0};
    std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
    const double med = std::max(dists[dists.size() / 2], 1e-8);
    return {med / 4.0, med / 2.0, med, 2.0 * med, 4.0 * med};
}

void run_cv(const CvArgs& a) {
    DatasetHandle ds = load_dataset(a.data);
    const bool classification = rf_dataset_task(ds.get()) == RF_TASK_CLASSIFICATION;
    const std::string metric =
        a.metric.empty() ? (classification ? "accuracy" : "rmse") : a.metric;

    auto lambdas = parse_double_list(a.lambdas, "--lambdas");
    std::sort(lambdas.begin(), lambdas.end());
    std::vector<double> params;
    const char* family = nullptr;
    std::string family_name;
    if (a.method.method == "krr") {
        family_name = a.method.kernel;
        if (family_name != "linear") {
            params = a.params.empty() ? sigma_heuristic(ds.get(), !a.method.no_scale)
                                      : parse_double_list(a.params, "--params");
        }
        family = family_name.c_str();
    } else if (a.method.method == "rks") {
        family_name = a.method.family;
        family = family_name.c_str();
        params = a.params.empty() ? sigma_heuristic(ds.get(), !a.method.no_scale)
                                  : parse_double_list(a.params, "--params");
        if (family_name == "stump" && a.params.empty()) {
            // stump parameter is the kernel normalization a, not a bandwidth
            std::vector<double> lo, hi;
            standardized_box(ds.get(), a.method, lo, hi);
            params = {box_width_sum(lo, hi)};
        }
    }
    std::vector<std::int64_t> counts;
    if (a.method.method == "rks") {
        counts = parse_int_list(a.features_list.empty() ? "128,256,512" : a.features_list,
                                "--features-list");
    }

    ReportHandle report;
    check(rf_cross_validate(ds.get(), a.method.method.c_str(), family, lambdas.data(),
                            static_cast<std::int64_t>(lambdas.size()),
                            params.empty() ? nullptr : params.data(),
                            static_cast<std::int64_t>(params.size()),
                            counts.empty() ? nullptr : counts.data(),
                            static_cast<std::int64_t>(counts.size()), a.folds,
                            metric.c_str(), a.method.seed, 0, 1,
                            a.method.no_scale ? 0 : 1, report.out()));

    ConfigEcho cfg;
    cfg.add("data", a.data.path);
    cfg.add("method", a.method.method);
    if (family) cfg.add("family", family_name);
    cfg.add("lambdas", a.lambdas);
    std::string params_echo;
    for (double p : params) params_echo += (params_echo.empty() ? "" : ",") + fmt(p);
    cfg.add("params", params_echo);
    if (!counts.empty()) {
        std::string ce;
        for (auto c : counts) ce += (ce.empty() ? "" : ",") + std::to_string(c);
        cfg.add("features", ce);
    }
    cfg.add("folds", a.folds);
    cfg.add("metric", metric);
    cfg.add("seed", static_cast<std::int64_t>(a.method.seed));

    const std::int64_t n_rows = rf_cv_report_size(report.get());
    const std::int64_t selected = rf_cv_report_selected(report.get());

    OutputFile out(a.out);
    cfg.write(out.stream, "cv");
    if (a.format == "text") {
        double sl, sp, sm;
        std::int64_t sd;
        check(rf_cv_report_row(report.get(), selected, &sl, &sp, &sd, &sm, nullptr,
                               nullptr, nullptr));
        out.stream << "configurations: " << n_rows << "\n";
        out.stream << "selected: index=" << selected << " lambda=" << fmt(sl)
                   << " param=" << fmt(sp) << " features=" << sd << " " << metric << "="
                   << fmt(sm) << "\n";
        for (std::int64_t i = 0; i < n_rows; ++i) {
            double l, p, ms, ss, mf;
            std::int64_t d, deg;
            check(rf_cv_report_row(report.get(), i, &l, &p, &d, &ms, &ss, &mf, &deg));
            out.stream << (i == selected ? " * " : "   ") << "lambda=" << fmt(l)
                       << " param=" << fmt(p) << " features=" << d << " " << metric
                       << "=" << fmt(ms) << " +/- " << fmt(ss) << "\n";
        }
    } else {
        out.stream << "index,lambda,param,n_features,mean_score,std_score,"
                      "mean_fit_seconds,degenerate_folds,selected\n";
        for (std::int64_t i = 0; i < n_rows; ++i) {
            double l, p, ms, ss, mf;
            std::int64_t d, deg;
            check(rf_cv_report_row(report.get(), i, &l, &p, &d, &ms, &ss, &mf, &deg));
            out.stream << i << ',' << fmt(l) << ',' << fmt(p) << ',' << d << ','
                       << fmt(ms) << ',' << fmt(ss) << ',' << fmt_time(mf) << ',' << deg
                       << ',' << (i == selected ? 1 : 0) << "\n";
        }
    }

    if (!a.out_model.empty()) {
        double l, p;
        std::int64_t d;
        check(rf_cv_report_row(report.get(), selected, &l, &p, &d, nullptr, nullptr,
                               nullptr, nullptr));
        MethodOptions m = a.method;
        m.lambda = l;
        if (a.method.method == "krr") {
            m.sigma = p;
        } else if (a.method.method == "rks") {
            m.features = d;
            if (m.family == "stump") m.a = p;
            else m.sigma = p;
        }
        ModelHandle model = fit_model(ds.get(), m);
        check(rf_model_save(model.get(), a.out_model.c_str()));
        std::cerr << "refit selected configuration -> " << a.out_model << "\n";
    }
}

// ---------------------------------------------------------------------------
// approx-report

struct ApproxArgs {
    std::string family = "fourier";
    double sigma = 1.0;
    double a = 0.0;
    std::string d_list = "1,5,100,1000";
    std::int64_t n = 100;
    std::int64_t dim = 2;
    std::string seeds = "0";
    std::string data;
    bool header = false;
    std::string out;
    std::string format = "csv";
};

void run_approx_report(const ApproxArgs& a) {
    const auto d_list = parse_int_list(a.d_list, "--d-list");
    const auto seeds = parse_int_list(a.seeds, "--seeds", 0);

    // sample points: standard Gaussian draws, or rows of --data
    MatrixHandle x;
    if (a.data.empty()) {
        DatasetHandle tmp;
        check(rf_dataset_generate("linearnoise", a.n, a.dim, 0.0, 12345, tmp.out()));
        check(rf_dataset_inputs(tmp.get(), x.out()));
    } else {
        check(rf_matrix_load_csv(a.data.c_str(), a.header ? 1 : 0, x.out()));
    }
    const Mat pts = fetch(x.get());

    // box and stump normalization from the point ranges
    std::vector<double> lo(static_cast<std::size_t>(pts.cols)),
        hi(static_cast<std::size_t>(pts.cols));
    for (std::int64_t j = 0; j < pts.cols; ++j) {
        double mn = pts.at(0, j), mx = pts.at(0, j);
        for (std::int64_t i = 1; i < pts.rows; ++i) {
            mn = std::min(mn, pts.at(i, j));
            mx = std::max(mx, pts.at(i, j));
        }
        if (!(mn < mx)) {
            mn -= 0.5;
            mx += 0.5;
        }
        lo[static_cast<std::size_t>(j)] = mn;
        hi[static_cast<std::size_t>(j)] = mx;
    }
    const bool needs_box = a.family == "stump" || a.family == "binning";
    const double param = a.family == "stump"
                             ? (a.a > 0.0 ? a.a : box_width_sum(lo, hi))
                             : a.sigma;

    // the exact oracle; families without a target kernel are rejected
    KernelHandle target;
    {
        MapHandle probe;
        check(rf_feature_map_sample(a.family.c_str(), param,
                                    needs_box ? lo.data() : nullptr,
                                    needs_box ? hi.data() : nullptr,
                                    needs_box ? pts.cols : 0, 1, 0, 0, pts.cols,
                                    probe.out()));
        check(rf_feature_map_target_kernel(probe.get(), target.out()));
        if (!target) {
            usage_error("family '" + a.family +
                        "' claims no exact kernel (squarewave and walsh are "
                        "sign-quantized variants); use fourier, stump or binning");
        }
    }

    MatrixHandle exact;
    const double t_exact0 = now_seconds();
    check(rf_kernel_gram(target.get(), x.get(), x.get(), exact.out()));
    const double t_exact = now_seconds() - t_exact0;
    const Mat eg = fetch(exact.get());

    ConfigEcho cfg;
    cfg.add("family", a.family);
    cfg.add("param", param);
    cfg.add("d_list", a.d_list);
    cfg.add("n", static_cast<std::int64_t>(pts.rows));
    cfg.add("dim", static_cast<std::int64_t>(pts.cols));
    cfg.add("seeds", a.seeds);
    if (!a.data.empty()) cfg.add("data", a.data);

    struct Row {
        std::string family;
        std::int64_t n_features;
        std::int64_t seed;
        double mae;
        double max_err;
        double seconds;
    };
    std::vector<Row> rows;

    // control row: the exact Gram against itself
    {
        Row control{"exact", 0, seeds.front(), 0.0, 0.0, t_exact};
        for (std::size_t i = 0; i < eg.v.size(); ++i) {
            const double err = std::abs(eg.v[i] - eg.v[i]);
            control.mae += err;
            control.max_err = std::max(control.max_err, err);
        }
        control.mae /= static_cast<double>(eg.v.size());
        rows.push_back(control);
    }

    for (const auto seed : seeds) {
        for (const auto D : d_list) {
            MapHandle map;
            check(rf_feature_map_sample(a.family.c_str(), param,
                                        needs_box ? lo.data() : nullptr,
                                        needs_box ? hi.data() : nullptr,
                                        needs_box ? pts.cols : 0, D,
                                        static_cast<std::uint64_t>(seed), 0, pts.cols,
                                        map.out()));
            MatrixHandle approx;
            const double t0 = now_seconds();
            check(rf_feature_map_approx_gram(map.get(), x.get(), x.get(), approx.out()));
            Row row{a.family, D, seed, 0.0, 0.0, now_seconds() - t0};
            const Mat ag = fetch(approx.get());
            for (std::size_t i = 0; i < ag.v.size(); ++i) {
                const double err = std::abs(ag.v[i] - eg.v[i]);
                row.mae += err;
                row.max_err = std::max(row.max_err, err);
            }
            row.mae /= static_cast<double>(ag.v.size());
            rows.push_back(row);
        }
    }

    OutputFile out(a.out);
    cfg.write(out.stream, "approx-report");
    if (a.format == "text") {
        for (const auto& r : rows) {
            out.stream << r.family << " D=" << r.n_features << " seed=" << r.seed
                       << ": mae=" << fmt(r.mae) << " max_err=" << fmt(r.max_err)
                       << " seconds=" << fmt_time(r.seconds) << "\n";
        }
    } else {
        out.stream << "family,D,seed,mae,max_err,seconds\n";
        for (const auto& r : rows) {
            out.stream << r.family << ',' << r.n_features << ',' << r.seed << ','
                       << fmt(r.mae) << ',' << fmt(r.max_err) << ','
                       << fmt_time(r.seconds) << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchArgs {
    std::string methods = "lr,krr,rks-fourier";
    std::string n_list = "500,1000,2000,4000";
    std::string features_list = "500";
    std::int64_t n_test = 2000;
    std::string gen = "sumsines";
    std::int64_t dim = 4;
    double noise = 0.1;
    std::string data;
    DataOptions data_opts;
    double sigma = 1.0;
    double a = 0.0;
    double lambda = 1e-3;
    std::string seeds = "0";
    int reps = 3;
    std::int64_t krr_max_n = 8000;
    std::string out;
};

void run_benchmark(const BenchArgs& a) {
    const auto methods = split_names(a.methods);
    const auto n_list = parse_int_list(a.n_list, "--n-list");
    const auto d_list = parse_int_list(a.features_list, "--features-list");
    const auto seeds = parse_int_list(a.seeds, "--seeds", 0);
    if (methods.empty()) usage_error("--methods: empty list");
    if (a.reps < 3) usage_error("--reps must be >= 3");

    const std::int64_t n_max = *std::max_element(n_list.begin(), n_list.end());

    // refuse infeasible configurations up front rather than truncating
    for (const auto& method : methods) {
        if (method == "krr" && n_max > a.krr_max_n) {
            usage_error("krr with n=" + std::to_string(n_max) + " exceeds --krr-max-n=" +
                        std::to_string(a.krr_max_n) +
                        " (the n x n Gram would not fit the desk-scale budget)");
        }
    }

    ConfigEcho cfg;
    cfg.add("methods", a.methods);
    cfg.add("n_list", a.n_list);
    cfg.add("features_list", a.features_list);
    cfg.add("n_test", a.n_test);
    if (a.data.empty()) {
        cfg.add("gen", a.gen);
        cfg.add("dim", a.dim);
        cfg.add("noise", a.noise);
    } else {
        cfg.add("data", a.data);
    }
    cfg.add("sigma", a.sigma);
    cfg.add("lambda", a.lambda);
    cfg.add("seeds", a.seeds);
    cfg.add("reps", static_cast<std::int64_t>(a.reps));
    cfg.add("krr_max_n", a.krr_max_n);

    OutputFile out(a.out);
    cfg.write(out.stream, "benchmark");
    out.stream << "method,n_train,n_features,fit_seconds,predict_seconds_per_1k,"
                  "model_bytes,score,seed\n";

    for (const auto seed : seeds) {
        // one pool per seed; nested train slices plus a disjoint test tail
        DatasetHandle pool;
        if (a.data.empty()) {
            check(rf_dataset_generate(a.gen.c_str(), n_max + a.n_test, a.dim, a.noise,
                                      static_cast<std::uint64_t>(seed), pool.out()));
        } else {
            DatasetHandle file = load_dataset(a.data_opts);
            if (rf_dataset_rows(file.get()) < n_max + a.n_test) {
                usage_error("--data has " + std::to_string(rf_dataset_rows(file.get())) +
                            " rows; need n_max + n_test = " +
                            std::to_string(n_max + a.n_test));
            }
            pool = std::move(file);
        }
        DatasetHandle test;
        check(rf_dataset_slice(pool.get(), n_max, a.n_test, test.out()));
        MatrixHandle test_x, test_y;
        check(rf_dataset_inputs(test.get(), test_x.out()));
        check(rf_dataset_targets(test.get(), test_y.out()));

        for (const auto& method : methods) {
            const bool is_rks = method.rfind("rks", 0) == 0;
            std::string family = "fourier";
            if (is_rks) {
                const auto dash = method.find('-');
                if (dash != std::string::npos) family = method.substr(dash + 1);
            }
            const std::vector<std::int64_t> feature_counts =
                is_rks ? d_list : std::vector<std::int64_t>{0};

            for (const auto n : n_list) {
                DatasetHandle train;
                check(rf_dataset_slice(pool.get(), 0, n, train.out()));

                for (const auto D : feature_counts) {
                    MethodOptions m;
                    m.method = is_rks ? "rks" : method;
                    m.family = family;
                    m.sigma = a.sigma;
                    m.a = a.a;
                    m.lambda = a.lambda;
                    m.features = D;
                    m.seed = static_cast<std::uint64_t>(seed);

                    ModelHandle model;
                    const double fit_seconds = time_median(a.reps, [&] {
                        model = fit_model(train.get(), m);
                    });
                    const double predict_seconds = time_median(a.reps, [&] {
                        MatrixHandle pred;
                        check(rf_model_predict(model.get(), test_x.get(), pred.out()));
                    });
                    const double score = score_model(model.get(), test_x.get(),
                                                     test_y.get());
                    out.stream << method << ',' << n << ',' << D << ','
                               << fmt_time(fit_seconds) << ','
                               << fmt_time(predict_seconds /
                                           static_cast<double>(a.n_test) * 1000.0)
                               << ',' << rf_model_bytes(model.get()) << ','
                               << fmt(score) << ',' << seed << "\n";
                }
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"rfkit: random-feature kernel machines"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rf_version());
    // one INI file for all subcommands, keyed by [section]; command-line flags
    // take precedence over file values
    app.set_config("--config", "", "read options from an INI file (flags override)");
    app.fallthrough();

    GenDataArgs gen;
    auto* cmd_gen = app.add_subcommand("gen-data", "write a synthetic dataset as CSV");
    cmd_gen->add_option("--kind", gen.kind, "sincnd | sumsines | xorblobs | linearnoise")
        ->check(CLI::IsMember({"sincnd", "sumsines", "xorblobs", "linearnoise"}));
    cmd_gen->add_option("--n", gen.n, "number of samples")->required();
    cmd_gen->add_option("--dim", gen.dim, "input dimension");
    cmd_gen->add_option("--noise", gen.noise, "noise standard deviation");
    cmd_gen->add_option("--seed", gen.seed, "random seed");
    cmd_gen->add_option("--out", gen.out, "output CSV path")->required();
    cmd_gen->add_flag("--header", gen.header, "write a header row");

    FitArgs fit;
    auto* cmd_fit = app.add_subcommand("fit", "train a model and save a snapshot");
    add_data_options(cmd_fit, fit.data);
    add_method_options(cmd_fit, fit.method);
    cmd_fit->add_option("--out", fit.out, "model snapshot path")->required();

    PredictArgs pred;
    auto* cmd_pred = app.add_subcommand("predict", "predict with a saved model");
    cmd_pred->add_option("--model", pred.model, "model snapshot path")->required();
    cmd_pred->add_option("--data", pred.data, "input CSV file")->required();
    cmd_pred->add_option("--targets", pred.targets,
                         "target columns present in the file to drop");
    cmd_pred->add_flag("--header", pred.header, "skip a header row");
    cmd_pred->add_flag("--scores", pred.scores,
                       "emit raw margins instead of class labels");
    cmd_pred->add_option("--out", pred.out, "predictions CSV path")->required();

    CvArgs cv;
    auto* cmd_cv = app.add_subcommand("cv", "k-fold cross-validation grid search");
    add_data_options(cmd_cv, cv.data);
    add_method_options(cmd_cv, cv.method);
    cmd_cv->add_option("--lambdas", cv.lambdas, "comma-separated ridge grid");
    cmd_cv->add_option("--params", cv.params,
                       "comma-separated sigma (or stump a) grid; default: around the "
                       "median pairwise distance");
    cmd_cv->add_option("--features-list", cv.features_list,
                       "comma-separated D grid (rks)");
    cmd_cv->add_option("--folds", cv.folds, "number of folds");
    cmd_cv->add_option("--metric", cv.metric, "rmse | accuracy (default by task)")
        ->check(CLI::IsMember({"", "rmse", "accuracy"}));
    cmd_cv->add_option("--out", cv.out, "report path (default stdout)");
    cmd_cv->add_option("--out-model", cv.out_model,
                       "refit the selected configuration on all data");
    cmd_cv->add_option("--format", cv.format, "csv | text")
        ->check(CLI::IsMember({"csv", "text"}));

    ApproxArgs approx;
    auto* cmd_approx = app.add_subcommand(
        "approx-report", "Gram deviation of a random map against its exact kernel");
    cmd_approx->add_option("--family", approx.family, "fourier | stump | binning")
        ->check(CLI::IsMember({"fourier", "squarewave", "walsh", "stump", "binning"}));
    cmd_approx->add_option("--sigma", approx.sigma, "kernel bandwidth");
    cmd_approx->add_option("--a", approx.a, "stump normalization");
    cmd_approx->add_option("--d-list", approx.d_list, "feature counts to evaluate");
    cmd_approx->add_option("--n", approx.n, "number of sample points");
    cmd_approx->add_option("--dim", approx.dim, "sample dimension");
    cmd_approx->add_option("--seeds", approx.seeds, "comma-separated seeds");
    cmd_approx->add_option("--data", approx.data, "use rows of this CSV instead");
    cmd_approx->add_flag("--header", approx.header, "skip a header row");
    cmd_approx->add_option("--out", approx.out, "report path (default stdout)");
    cmd_approx->add_option("--format", approx.format, "csv | text")
        ->check(CLI::IsMember({"csv", "text"}));

    BenchArgs bench;
    auto* cmd_bench =
        app.add_subcommand("benchmark", "accuracy/cost sweeps over methods, n and D");
    cmd_bench->add_option("--methods", bench.methods,
                          "comma-separated: lr, krr, rks-<family>");
    cmd_bench->add_option("--n-list", bench.n_list, "training sizes");
    cmd_bench->add_option("--features-list", bench.features_list, "D values (rks)");
    cmd_bench->add_option("--n-test", bench.n_test, "test set size");
    cmd_bench->add_option("--gen", bench.gen, "synthetic generator");
    cmd_bench->add_option("--dim", bench.dim, "synthetic input dimension");
    cmd_bench->add_option("--noise", bench.noise, "synthetic noise");
    cmd_bench->add_option("--data", bench.data, "use this CSV instead of a generator");
    cmd_bench->add_option("--targets", bench.data_opts.targets, "target columns");
    cmd_bench->add_option("--task", bench.data_opts.task, "regression | classification");
    cmd_bench->add_flag("--header", bench.data_opts.header, "skip a header row");
    cmd_bench->add_option("--sigma", bench.sigma, "kernel bandwidth");
    cmd_bench->add_option("--a", bench.a, "stump normalization");
    cmd_bench->add_option("--lambda", bench.lambda, "ridge regularization");
    cmd_bench->add_option("--seeds", bench.seeds, "comma-separated seeds");
    cmd_bench->add_option("--reps", bench.reps, "timed repetitions (median), >= 3");
    cmd_bench->add_option("--krr-max-n", bench.krr_max_n,
                          "refuse exact KRR beyond this n");
    cmd_bench->add_option("--out", bench.out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    bench.data_opts.path = bench.data;
    if (cmd_gen->parsed()) run_gen_data(gen);
    if (cmd_fit->parsed()) run_fit(fit);
    if (cmd_pred->parsed()) run_predict(pred);
    if (cmd_cv->parsed()) run_cv(cv);
    if (cmd_approx->parsed()) run_approx_report(approx);
    if (cmd_bench->parsed()) run_benchmark(bench);
    return 0;
}
