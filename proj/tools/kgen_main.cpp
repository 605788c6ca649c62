#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgen/errors.hpp"
#include "kgen/estimation.hpp"
#include "kgen/gof.hpp"
#include "kgen/inequality.hpp"
#include "kgen/io_ingest.hpp"

using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct IoFlags {
    std::string input;
    std::string income_col = "income";
    std::string weight_col;
    std::string size_col;
    bool no_equivalize = false;
};

struct ModelFlags {
    std::string params_file;
    double alpha = 0.0;
    double kappa = -1.0;
    bool alpha_set = false;
    bool kappa_set = false;
};

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

kgen::WeightedSample load_sample(const IoFlags& io) {
    if (io.input.empty()) throw kgen::InputError("--input is required for this command");
    kgen::CsvSchema schema;
    schema.income_col = io.income_col;
    schema.weight_col = io.weight_col;
    schema.size_col = io.size_col;
    const auto records = kgen::load_csv(io.input, schema);
    kgen::PreprocessOptions opts;
    opts.equivalize = !io.no_equivalize;
    return kgen::preprocess(records, opts);
}

kgen::KappaParams resolve_params(const ModelFlags& mf) {
    if (!mf.params_file.empty()) {
        std::ifstream f(mf.params_file);
        if (!f) throw kgen::InputError("cannot open params file '" + mf.params_file + "'");
        ordered_json j;
        try {
            f >> j;
            return {j.at("alpha").get<double>(), j.at("beta").get<double>(),
                    j.at("kappa").get<double>()};
        } catch (const ordered_json::exception& e) {
            throw kgen::InputError("params file '" + mf.params_file + "': " + e.what());
        }
    }
    if (!mf.alpha_set || !mf.kappa_set)
        throw kgen::InputError("provide either --params-file or both --alpha and --kappa");
    return {mf.alpha, kgen::beta_from(mf.alpha, mf.kappa), mf.kappa};
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw kgen::InputError("cannot open output file '" + path + "'");
    f << content;
}

ordered_json io_manifest(const IoFlags& io) {
    return ordered_json{{"input", io.input},
                        {"income_col", io.income_col},
                        {"weight_col", io.weight_col},
                        {"size_col", io.size_col},
                        {"equivalize", !io.no_equivalize}};
}

void write_sidecar_manifest(const std::string& output, const ordered_json& manifest) {
    if (output.empty()) return;  // stdout output carries no sidecar
    std::ofstream f(output + ".manifest.json");
    if (!f) throw kgen::InputError("cannot open manifest file '" + output + ".manifest.json'");
    f << manifest.dump(2) << '\n';
}

std::string format_tsv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    os.precision(15);
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "\t" : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
        os << '\n';
    }
    return os.str();
}

int run_fit(const IoFlags& io, std::uint64_t seed, std::size_t reps, double level,
            const std::string& output) {
    const kgen::WeightedSample sample = load_sample(io);
    const kgen::FitConfig cfg;
    const kgen::FitResult fr = kgen::fit(sample, cfg);
    const kgen::GofReport rep = kgen::evaluate_gof(fr.params, sample, reps, level, seed);

    ordered_json out;
    out["alpha"] = fr.params.alpha;
    out["beta"] = fr.params.beta;
    out["kappa"] = fr.params.kappa;
    out["log_likelihood"] = fr.log_likelihood;
    out["n_kept"] = sample.n_kept;
    out["raw_mean"] = sample.raw_mean;
    out["raw_mean_se"] = sample.raw_mean_se;
    out["ks_d_plus"] = rep.ks_d_plus;
    out["ks_p_value"] = rep.p_value;
    out["gini_theoretical"] = rep.gini_theoretical;
    out["gini_empirical"] = rep.gini_empirical;
    out["gini_ci_low"] = rep.gini_ci.first;
    out["gini_ci_high"] = rep.gini_ci.second;
    try {
        out["cv_theoretical"] = kgen::coeff_variation(fr.params);
    } catch (const kgen::UndefinedMeasure&) {
        out["cv_theoretical"] = nullptr;
    }

    ordered_json manifest;
    manifest["tool"] = "kgen";
    manifest["version"] = kVersion;
    manifest["command"] = "fit";
    manifest["io"] = io_manifest(io);
    manifest["fit_config"] = ordered_json{{"alpha_bounds", {cfg.alpha_bounds.first, cfg.alpha_bounds.second}},
                                          {"kappa_bounds", {cfg.kappa_bounds.first, cfg.kappa_bounds.second}},
                                          {"starts", cfg.starts},
                                          {"tol_loglik", cfg.tol_loglik},
                                          {"tol_param", cfg.tol_param},
                                          {"max_iter", cfg.max_iter}};
    manifest["seed"] = seed;
    manifest["bootstrap_reps"] = reps;
    manifest["ci_level"] = level;
    manifest["n_raw"] = sample.n_raw;
    manifest["n_dropped"] = sample.n_raw - sample.n_kept;
    manifest["converged"] = fr.converged;
    manifest["iterations"] = fr.iterations;
    manifest["constraint_residual"] = fr.constraint_residual;
    manifest["timestamp"] = timestamp_utc();
    out["manifest"] = manifest;

    write_text(output, out.dump(2) + "\n");
    return 0;
}

int run_sample(double alpha, double kappa, std::size_t n, std::uint64_t seed,
               const std::string& output) {
    const double beta = kgen::beta_from(alpha, kappa);
    const kgen::KappaParams p(alpha, beta, kappa);
    const std::vector<double> xs = kgen::sample(p, n, seed);

    std::ostringstream os;
    os.precision(17);
    os << "income\n";
    for (double x : xs) os << x << '\n';
    write_text(output, os.str());

    ordered_json manifest;
    manifest["tool"] = "kgen";
    manifest["version"] = kVersion;
    manifest["command"] = "sample";
    manifest["alpha"] = alpha;
    manifest["kappa"] = kappa;
    manifest["beta"] = beta;
    manifest["n"] = n;
    manifest["seed"] = seed;
    manifest["timestamp"] = timestamp_utc();
    write_sidecar_manifest(output, manifest);
    return 0;
}

int run_plotdata(const IoFlags& io, const ModelFlags& mf, const std::string& kind,
                 const std::string& output) {
    const kgen::KappaParams p = resolve_params(mf);
    const kgen::WeightedSample sample = load_sample(io);
    const std::size_t n = sample.incomes.size();

    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    if (kind == "ccdf") {
        header = {"x", "empirical_ccdf", "model_ccdf"};
        double w_total = 0.0;
        for (double w : sample.weights) w_total += w;
        double cw = 0.0;
        rows.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            cw += sample.weights[i];
            const double x = sample.incomes[i];
            rows.push_back({x, 1.0 - cw / w_total, kgen::ccdf(p, x)});
        }
    } else if (kind == "pdf-hist") {
        header = {"bin_left", "bin_right", "empirical_density", "model_density"};
        constexpr std::size_t kBins = 50;
        const double xmin = sample.incomes.front();
        const double xmax = sample.incomes.back();
        if (!(xmax > xmin)) throw kgen::InputError("pdf-hist: sample has no spread");
        const double lmin = std::log(xmin);
        const double step = (std::log(xmax) - lmin) / kBins;
        double w_total = 0.0;
        for (double w : sample.weights) w_total += w;
        std::vector<double> binw(kBins, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto b = static_cast<std::size_t>((std::log(sample.incomes[i]) - lmin) / step);
            if (b >= kBins) b = kBins - 1;
            binw[b] += sample.weights[i];
        }
        rows.reserve(kBins);
        for (std::size_t b = 0; b < kBins; ++b) {
            const double left = std::exp(lmin + step * static_cast<double>(b));
            const double right = std::exp(lmin + step * static_cast<double>(b + 1));
            const double emp = binw[b] / w_total / (right - left);
            const double model = kgen::pdf(p, std::sqrt(left * right));
            rows.push_back({left, right, emp, model});
        }
    } else if (kind == "lorenz") {
        header = {"u", "L_empirical", "L_model"};
        const kgen::LorenzPoints lz = kgen::empirical_lorenz(sample);
        rows.reserve(lz.points.size());
        for (const auto& [u, l] : lz.points) rows.push_back({u, l, kgen::lorenz(p, u)});
    } else if (kind == "qq") {
        header = {"sample_quantile", "model_quantile"};
        const auto pts = kgen::qq_points(p, sample);
        rows.reserve(pts.size());
        for (const auto& [xe, xm] : pts) rows.push_back({xe, xm});
    } else {
        throw kgen::InputError("unknown plot kind '" + kind + "'");
    }

    write_text(output, format_tsv(header, rows));

    ordered_json manifest;
    manifest["tool"] = "kgen";
    manifest["version"] = kVersion;
    manifest["command"] = "plotdata";
    manifest["kind"] = kind;
    manifest["io"] = io_manifest(io);
    manifest["params"] = ordered_json{{"alpha", p.alpha}, {"beta", p.beta}, {"kappa", p.kappa}};
    manifest["timestamp"] = timestamp_utc();
    write_sidecar_manifest(output, manifest);
    return 0;
}

int run_gof(const IoFlags& io, const ModelFlags& mf, std::uint64_t seed, std::size_t reps,
            double level, const std::string& output) {
    const kgen::KappaParams p = resolve_params(mf);
    const kgen::WeightedSample sample = load_sample(io);
    const kgen::GofReport rep = kgen::evaluate_gof(p, sample, reps, level, seed);

    ordered_json out;
    out["alpha"] = p.alpha;
    out["beta"] = p.beta;
    out["kappa"] = p.kappa;
    out["n_kept"] = sample.n_kept;
    out["ks_d_plus"] = rep.ks_d_plus;
    out["t_star"] = rep.t_star;
    out["ks_p_value"] = rep.p_value;
    out["gini_theoretical"] = rep.gini_theoretical;
    out["gini_empirical"] = rep.gini_empirical;
    out["gini_ci_low"] = rep.gini_ci.first;
    out["gini_ci_high"] = rep.gini_ci.second;
    out["bootstrap_replications"] = rep.bootstrap_replications;

    ordered_json manifest;
    manifest["tool"] = "kgen";
    manifest["version"] = kVersion;
    manifest["command"] = "gof";
    manifest["io"] = io_manifest(io);
    manifest["params"] = ordered_json{{"alpha", p.alpha}, {"beta", p.beta}, {"kappa", p.kappa}};
    manifest["seed"] = seed;
    manifest["bootstrap_reps"] = reps;
    manifest["ci_level"] = level;
    manifest["timestamp"] = timestamp_utc();
    out["manifest"] = manifest;

    write_text(output, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kappa-deformed income distribution toolkit"};
    app.set_version_flag("--version", std::string("kgen ") + kVersion);
    app.require_subcommand(1);

    IoFlags io;
    ModelFlags mf;
    std::string output;
    std::string kind;
    std::uint64_t seed = 0;
    std::size_t reps = 1000;
    double level = 0.95;
    double s_alpha = 0.0;
    double s_kappa = 0.0;
    std::size_t s_n = 0;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--input", io.input, "input CSV file");
        cmd->add_option("--income-col", io.income_col, "income column name");
        cmd->add_option("--weight-col", io.weight_col, "sampling weight column name");
        cmd->add_option("--size-col", io.size_col, "household size column name");
        cmd->add_flag("--no-equivalize", io.no_equivalize, "skip sqrt(household size) equivalization");
    };
    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--params-file", mf.params_file, "JSON file with alpha/beta/kappa (fit output)");
        cmd->add_option("--alpha", mf.alpha, "shape parameter")->each([&](const std::string&) { mf.alpha_set = true; });
        cmd->add_option("--kappa", mf.kappa, "deformation parameter")->each([&](const std::string&) { mf.kappa_set = true; });
    };

    CLI::App* c_fit = app.add_subcommand("fit", "fit the distribution to a CSV sample");
    add_io(c_fit);
    c_fit->add_option("--seed", seed, "bootstrap seed");
    c_fit->add_option("--bootstrap-reps", reps, "bootstrap replications");
    c_fit->add_option("--ci-level", level, "confidence level for the Gini interval");
    c_fit->add_option("--output", output, "output JSON path (default stdout)");

    CLI::App* c_sample = app.add_subcommand("sample", "draw a synthetic unit-mean sample");
    c_sample->add_option("--alpha", s_alpha, "shape parameter")->required();
    c_sample->add_option("--kappa", s_kappa, "deformation parameter")->required();
    c_sample->add_option("--n", s_n, "number of draws")->required();
    c_sample->add_option("--seed", seed, "RNG seed");
    c_sample->add_option("--output", output, "output CSV path (default stdout)");

    CLI::App* c_plot = app.add_subcommand("plotdata", "tabulate model-vs-data curves as TSV");
    add_io(c_plot);
    add_model(c_plot);
    c_plot->add_option("--kind", kind, "one of: ccdf, pdf-hist, lorenz, qq")->required();
    c_plot->add_option("--output", output, "output TSV path (default stdout)");

    CLI::App* c_gof = app.add_subcommand("gof", "goodness-of-fit report for fixed parameters");
    add_io(c_gof);
    add_model(c_gof);
    c_gof->add_option("--seed", seed, "bootstrap seed");
    c_gof->add_option("--bootstrap-reps", reps, "bootstrap replications");
    c_gof->add_option("--ci-level", level, "confidence level for the Gini interval");
    c_gof->add_option("--output", output, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_fit->parsed()) return run_fit(io, seed, reps, level, output);
        if (c_sample->parsed()) {
            if (s_n == 0) throw kgen::InputError("sample: --n must be >= 1");
            return run_sample(s_alpha, s_kappa, s_n, seed, output);
        }
        if (c_plot->parsed()) return run_plotdata(io, mf, kind, output);
        if (c_gof->parsed()) return run_gof(io, mf, seed, reps, level, output);
        return 2;
    } catch (const kgen::FitError& e) {
        std::cerr << "fit failed: " << e.what() << '\n';
        for (const auto& d : e.starts())
            std::cerr << "  start (alpha=" << d.alpha0 << ", kappa=" << d.kappa0 << ") -> alpha=" << d.alpha
                      << " kappa=" << d.kappa << " loglik=" << d.log_likelihood
                      << (d.converged ? "" : " (not converged)") << '\n';
        return 3;
    } catch (const kgen::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
}
