// kpze: command-line front end.

#include "kpze/airy_spectrum.hpp"
#include "kpze/bounds.hpp"
#include "kpze/ensembles.hpp"
#include "kpze/error.hpp"
#include "kpze/fredholm.hpp"
#include "kpze/painleve.hpp"
#include "kpze/parallel.hpp"
#include "kpze/pointstats.hpp"
#include "kpze/sample_io.hpp"
#include "kpze/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;
using kpze::io::format_double;

enum ExitCode { kOk = 0, kCheckFailure = 1, kUsage = 2, kNumeric = 3, kIo = 4 };

constexpr double kGammaCap = 1.0 - 1e-10;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON configuration files: top-level keys are global options, nested objects
// hold subcommand options, e.g. {"seed": 7, "painleve": {"gamma": 0.5}}.
class ConfigJson : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            input >> j;
        } catch (const json::exception& e) {
            throw CLI::ConversionError(std::string("invalid JSON config: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("JSON config must be an object");
        std::vector<CLI::ConfigItem> out;
        flatten(j, "", {}, out);
        return out;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number()) return v.dump();
        throw CLI::ConversionError("unsupported JSON value " + v.dump());
    }

    static void flatten(const json& j, const std::string& name, std::vector<std::string> parents,
                        std::vector<CLI::ConfigItem>& out) {
        if (j.is_object()) {
            if (!name.empty()) parents.push_back(name);
            for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), it.key(), parents, out);
            return;
        }
        CLI::ConfigItem item;
        item.name = name;
        item.parents = parents;
        if (j.is_array()) {
            for (const auto& v : j) item.inputs.push_back(scalar(v));
        } else {
            item.inputs.push_back(scalar(j));
        }
        out.push_back(std::move(item));
    }
};

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path, std::ios::binary);
        if (!file) throw IoError("cannot open output file " + path);
        stream = &file;
    }
    std::ostream& operator*() { return *stream; }
    void finish() {
        stream->flush();
        if (!*stream) throw IoError("write failed");
    }
};

std::string join_csv(std::initializer_list<std::string> cells) {
    std::string line;
    bool first = true;
    for (const auto& c : cells) {
        if (!first) line += ',';
        line += c;
        first = false;
    }
    return line;
}

json number(double x) { return std::isfinite(x) ? json(x) : json(); }

// ---- options ---------------------------------------------------------------

struct Global {
    std::uint64_t seed = 0;
    std::string output;
    unsigned threads = 0;
};

struct SpectrumOpts {
    std::int64_t k_max = 20;
};

struct PainleveOpts {
    std::optional<double> gamma;
    std::optional<double> v;
    double s = 0.0;
    std::optional<double> delta;
    std::optional<double> xmin;
    double tol = 1e-8;
    std::string format = "json";
};

struct FredholmOpts {
    double s = 0.0;
    double gamma = 1.0;
    int order = 80;
    bool report = false;
};

struct SampleOpts {
    std::string sampler = "tridiag";
    std::int64_t n = 2000;
    std::int64_t k = 40;
    std::int64_t replicates = 1000;
    std::string out;
    std::string format = "binary";
    double L = 20.0;
    double h = 0.02;
    std::string centering = "half_shift";
};

struct StatsOpts {
    std::string in;
    std::string stat = "cgf";
    std::vector<double> s_grid{0.0};
    std::vector<double> v_grid{1.0};
    double T = 10.0;
    double c = 0.25;
    std::string side = "lower";
    std::int64_t block_k = 1;
    double gamma = 0.5;
    std::optional<std::uint64_t> thin_seed;
};

struct BoundsOpts {
    std::string kind = "tail";
    std::vector<double> s_grid{1.0, 2.0, 5.0, 10.0, 20.0};
    std::vector<double> T_grid{1.0, 8.0, 27.0, 1000.0};
    double eps = 0.1;
    double delta = 0.1;
    double c = 0.25;
    std::string constants_file;
    bool calibrated = false;
};

struct VerifyOpts {
    std::string suite = "fast";
    std::int64_t replicates = 0;
};

// ---- commands --------------------------------------------------------------

int run_spectrum(const Global& g, const SpectrumOpts& o) {
    const auto exact = kpze::spectrum::airy_eigs(o.k_max, kpze::spectrum::SpectrumMethod::airy_zero);
    const auto approx = kpze::spectrum::airy_eigs(o.k_max, kpze::spectrum::SpectrumMethod::mt59_approx);
    Output out(g.output);
    *out << "k,lambda_exact,lambda_mt59,abs_diff\n";
    for (std::int64_t k = 1; k <= o.k_max; ++k) {
        const double a = exact[k];
        const double b = approx[k];
        *out << join_csv({std::to_string(k), format_double(a), format_double(b), format_double(std::fabs(a - b))})
             << '\n';
    }
    out.finish();
    return kOk;
}

int run_painleve(const Global& g, const PainleveOpts& o) {
    if (o.gamma.has_value() == o.v.has_value()) throw kpze::InvalidArgument("painleve: give exactly one of --gamma, --v");
    double gamma, v;
    if (o.v) {
        if (!(*o.v >= 0.0) || !std::isfinite(*o.v)) throw kpze::InvalidArgument("painleve: --v must be >= 0");
        v = *o.v;
        gamma = -std::expm1(-v);
    } else {
        gamma = *o.gamma;
        if (!(gamma >= 0.0 && gamma <= 1.0)) throw kpze::InvalidArgument("painleve: --gamma must lie in [0, 1]");
        v = -std::log1p(-std::min(gamma, kGammaCap));
    }
    if (gamma > kGammaCap) {
        std::cerr << "kpze: gamma capped at 1 - 1e-10\n";
        gamma = kGammaCap;
        v = std::min(v, -std::log1p(-kGammaCap));
    }
    const double xmin = o.xmin.value_or(std::min(o.s - 1.0, -10.0));
    if (!(o.tol > 0.0)) throw kpze::InvalidArgument("painleve: --tol must be positive");
    if (!(o.s >= xmin)) throw kpze::InvalidArgument("painleve: --s must be >= --xmin");

    const auto sol = kpze::painleve::solve_uas(gamma, xmin, o.tol);
    Output out(g.output);
    if (o.format == "csv") {
        *out << "x,u,u_prime,region\n";
        for (std::size_t i = 0; i < sol.grid().size(); ++i) {
            const double x = sol.grid()[i];
            *out << join_csv({format_double(x), format_double(sol.u()[i]), format_double(sol.u_prime()[i]),
                              std::string(kpze::painleve::to_string(kpze::painleve::classify_region(x, gamma)))})
                 << '\n';
        }
    } else {
        json j;
        j["gamma"] = gamma;
        j["v"] = v;
        j["s"] = o.s;
        j["x_min"] = sol.x_min();
        j["tol"] = o.tol;
        j["residual"] = sol.residual();
        j["mu"] = sol.mu(o.s);
        j["F2"] = kpze::painleve::f2_analytic(o.s, v, o.tol);
        if (-std::expm1(-2.0 * v) < 1.0) {
            j["F1"] = kpze::painleve::f1_analytic(o.s, v, o.tol);
        } else {
            j["F1"] = nullptr;
        }
        if (o.delta) {
            const double sp = std::fabs(o.s);
            const auto r = kpze::painleve::explore_stokes(sp, *o.delta, kpze::painleve::kDefaultZeta0, o.tol);
            j["stokes"] = {{"s", r.s},
                           {"delta", r.delta},
                           {"window", {r.window.lo, r.window.hi}},
                           {"max_abs_u", r.max_abs_u},
                           {"reference", r.reference},
                           {"mu_total", r.mu_total},
                           {"mu_window", r.mu_window},
                           {"mu_non_stokes", r.mu_non_stokes},
                           {"conditional", true}};
        }
        *out << j.dump(2) << '\n';
    }
    out.finish();
    return kOk;
}

int run_fredholm(const Global& g, const FredholmOpts& o) {
    const double gamma = o.gamma;
    const auto r = kpze::fredholm::fredholm_det_airy_report(o.s, gamma, o.order);
    json j;
    j["s"] = r.s;
    j["gamma"] = r.gamma;
    j["order"] = r.order;
    j["value"] = r.value;
    if (o.report) {
        j["value_doubled"] = r.value_doubled;
        j["certificate"] = r.certificate;
        j["certificate_target"] = kpze::fredholm::kCertificateTarget;
        j["converged"] = r.certificate <= kpze::fredholm::kCertificateTarget;
    } else {
        j["certificate"] = r.certificate;
    }
    Output out(g.output);
    *out << j.dump(2) << '\n';
    out.finish();
    return kOk;
}

int run_sample(const Global& g, const SampleOpts& o) {
    kpze::ensembles::EnsembleSample sample;
    if (o.sampler == "tridiag") {
        const auto centering =
            o.centering == "plain" ? kpze::ensembles::Centering::plain : kpze::ensembles::Centering::half_shift;
        sample = kpze::ensembles::sample_tridiag_edge(o.n, o.k, o.replicates, g.seed, g.threads, centering);
    } else {
        kpze::ensembles::SaoParams p;
        p.L = o.L;
        p.h = o.h;
        sample = kpze::ensembles::sample_sao_eigs(p, o.k, o.replicates, g.seed, g.threads);
    }
    const std::string path = o.out.empty() ? g.output : o.out;
    if (o.format == "csv") {
        Output out(path);
        kpze::io::write_sample_csv(*out, sample);
        out.finish();
    } else {
        if (path.empty() || path == "-") throw kpze::InvalidArgument("sample: binary output needs --out");
        try {
            kpze::io::save_sample(path, sample, false);
        } catch (const kpze::InvalidArgument&) {
            throw;
        } catch (const std::exception& e) {
            throw IoError(e.what());
        }
    }
    return kOk;
}

json estimate_json(const kpze::pointstats::McEstimate& e) {
    json j;
    j["estimate"] = number(e.value);
    j["std_error"] = number(e.std_error);
    j["replicates"] = e.replicates;
    j["low_power"] = e.low_power;
    if (e.hits >= 0) j["hits"] = e.hits;
    return j;
}

int run_stats(const Global& g, const StatsOpts& o) {
    namespace ps = kpze::pointstats;
    kpze::ensembles::EnsembleSample sample;
    try {
        sample = kpze::io::load_sample(o.in);
    } catch (const kpze::InvalidArgument&) {
        throw;
    } catch (const std::exception& e) {
        throw IoError(e.what());
    }
    Output out(g.output);
    if (o.stat == "cgf" && (o.s_grid.size() > 1 || o.v_grid.size() > 1)) {
        *out << "s,v,estimate,std_error,replicates\n";
        for (double s : o.s_grid) {
            for (double v : o.v_grid) {
                const auto e = ps::empirical_cgf(sample, s, v);
                *out << join_csv({format_double(s), format_double(v), format_double(e.value),
                                  format_double(e.std_error), std::to_string(e.replicates)})
                     << '\n';
            }
        }
        out.finish();
        return kOk;
    }
    const double s = o.s_grid.front();
    const double v = o.v_grid.front();
    json j;
    j["stat"] = o.stat;
    if (o.stat == "cgf") {
        j["s"] = s;
        j["v"] = v;
        j.update(estimate_json(ps::empirical_cgf(sample, s, v)));
    } else if (o.stat == "thinned") {
        j["s"] = s;
        j["gamma"] = o.gamma;
        j.update(estimate_json(ps::thinned_max_cdf(sample, s, o.gamma, o.thin_seed.value_or(sample.seed))));
    } else if (o.stat == "laplace") {
        j["s"] = s;
        j["T"] = o.T;
        j.update(estimate_json(ps::laplace_functional(sample, s, o.T)));
    } else if (o.stat == "tail") {
        j["s"] = s;
        j.update(estimate_json(ps::tail_prob_max(sample, s)));
    } else if (o.stat == "mean-count") {
        const auto interval = ps::Interval::block(o.block_k, s);
        j["s"] = s;
        j["block_k"] = o.block_k;
        j["quadrature"] = ps::mean_count(interval);
        std::vector<double> counts;
        for (const auto& c : sample.configs) counts.push_back(static_cast<double>(ps::count_in(c, interval)));
        j.update(estimate_json(ps::summarize(counts)));
    } else if (o.stat == "deviation") {
        const auto interval = ps::Interval::block(o.block_k, s);
        const auto side = o.side == "upper" ? ps::Side::upper : ps::Side::lower;
        j["s"] = s;
        j["block_k"] = o.block_k;
        j["c"] = o.c;
        j["side"] = o.side;
        j.update(estimate_json(ps::deviation_prob(sample, interval, o.c, side)));
    }
    *out << j.dump(2) << '\n';
    out.finish();
    return kOk;
}

kpze::bounds::BoundConstants load_constants(const BoundsOpts& o) {
    auto c = o.calibrated ? kpze::bounds::BoundConstants::calibrated() : kpze::bounds::BoundConstants::defaults();
    if (o.constants_file.empty()) return c;
    std::ifstream in(o.constants_file);
    if (!in) throw IoError("cannot open constants file " + o.constants_file);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw kpze::InvalidArgument(std::string("constants file: ") + e.what());
    }
    static const char* known[] = {"C", "K1", "K2", "eta", "kappa", "S0", "block_rate"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known)) {
            throw kpze::InvalidArgument("constants file: unknown field '" + it.key() + "'");
        }
    }
    c.C = j.value("C", c.C);
    c.K1 = j.value("K1", c.K1);
    c.K2 = j.value("K2", c.K2);
    c.eta = j.value("eta", c.eta);
    c.kappa = j.value("kappa", c.kappa);
    c.S0 = j.value("S0", c.S0);
    c.block_rate = j.value("block_rate", c.block_rate);
    c.validate();
    return c;
}

int run_bounds(const Global& g, const BoundsOpts& o) {
    const auto constants = load_constants(o);
    Output out(g.output);
    if (o.kind == "tail") {
        *out << "s,T,lower,upper,dominant,regime\n";
        for (double T : o.T_grid) {
            for (double s : o.s_grid) {
                const auto r = kpze::bounds::kpz_tail_bounds(s, T, o.eps, o.delta, constants);
                *out << join_csv({format_double(s), format_double(T), format_double(r.lower()),
                                  format_double(r.upper()), r.dominant_upper, kpze::bounds::to_string(r.regime)})
                     << '\n';
            }
        }
    } else if (o.kind == "f1") {
        *out << "s,f1_bound,conditional\n";
        for (double s : o.s_grid) {
            *out << join_csv({format_double(s), format_double(kpze::bounds::f1_bound_curve(s, o.delta)), "true"})
                 << '\n';
        }
    } else {
        *out << "s,weak,strong,block,crossing,strong_conditional\n";
        for (double s : o.s_grid) {
            const auto d = kpze::bounds::deviation_bound_curves(s, o.c, o.delta, constants.eta, constants);
            *out << join_csv({format_double(s), format_double(d.weak), format_double(d.strong),
                              format_double(d.block), format_double(d.crossing), "true"})
                 << '\n';
        }
    }
    out.finish();
    return kOk;
}

int run_verify_cmd(const Global& g, const VerifyOpts& o) {
    kpze::verify::VerifyOptions opts;
    opts.suite = kpze::verify::parse_suite(o.suite);
    opts.seed = g.seed;
    opts.replicates = o.replicates;
    opts.threads = g.threads;
    const auto report = kpze::verify::run_verify(opts);
    Output out(g.output);
    *out << report.to_json();
    out.finish();
    return report.passed() ? kOk : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kpze: GOE edge, Painleve II and Fredholm numerics"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<ConfigJson>());
    app.set_config("--config", "", "JSON configuration file; command-line flags override it");

    Global g;
    auto* seed_opt = app.add_option("--seed", g.seed, "Random seed (fallback: KPZE_SEED)");
    app.add_option("-o,--output", g.output, "Output path (default: stdout)");
    app.add_option("--threads", g.threads, "Worker threads (default: all cores)");

    SpectrumOpts so;
    auto* spectrum = app.add_subcommand("spectrum", "Airy operator eigenvalues vs. the MT59 approximation (CSV)");
    spectrum->add_option("--k-max", so.k_max, "Number of eigenvalues")->check(CLI::Range(std::int64_t{1}, kpze::spectrum::kMaxEigenvalues));

    PainleveOpts po;
    auto* painleve = app.add_subcommand("painleve", "Ablowitz-Segur solution and F1/F2 (JSON summary or CSV trajectory)");
    painleve->add_option("--gamma", po.gamma, "Thinning parameter gamma in [0, 1]");
    painleve->add_option("--v", po.v, "v = -log(1 - gamma)");
    painleve->add_option("--s", po.s, "Evaluation point for mu, F1, F2");
    painleve->add_option("--delta", po.delta, "Explore the Stokes window at gamma-bar(|s|, delta)");
    painleve->add_option("--xmin", po.xmin, "Left end of the integration range");
    painleve->add_option("--tol", po.tol, "ODE tolerance");
    painleve->add_option("--format", po.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    FredholmOpts fo;
    auto* fredholm = app.add_subcommand("fredholm", "det(I - gamma K_Ai) on L^2(s, inf) (JSON)");
    fredholm->add_option("--s", fo.s, "Left end s");
    fredholm->add_option("--gamma", fo.gamma, "gamma in [0, 1]");
    fredholm->add_option("--order", fo.order, "Quadrature order (>= 10)");
    fredholm->add_flag("--convergence-report", fo.report, "Include the order-doubling certificate details");

    SampleOpts sa;
    auto* sample = app.add_subcommand("sample", "Sample GOE edge configurations");
    sample->add_option("--sampler", sa.sampler, "tridiag or sao")->check(CLI::IsMember({"tridiag", "sao"}));
    sample->add_option("--n", sa.n, "Matrix size (tridiag)");
    sample->add_option("--k", sa.k, "Points kept per configuration");
    sample->add_option("--replicates", sa.replicates, "Number of configurations");
    sample->add_option("--out", sa.out, "Output file");
    sample->add_option("--format", sa.format, "binary or csv")->check(CLI::IsMember({"binary", "csv"}));
    sample->add_option("--L", sa.L, "SAO domain length");
    sample->add_option("--grid-h", sa.h, "SAO grid step h");
    sample->add_option("--centering", sa.centering, "Tridiagonal edge centring")
        ->check(CLI::IsMember({"plain", "half_shift"}));

    StatsOpts st;
    auto* stats = app.add_subcommand("stats", "Statistics of a binary sample file");
    stats->add_option("--in", st.in, "Binary sample file")->required();
    stats->add_option("--stat", st.stat, "cgf, thinned, laplace, tail, mean-count or deviation")
        ->check(CLI::IsMember({"cgf", "thinned", "laplace", "tail", "mean-count", "deviation"}));
    stats->add_option("--s,--s-grid", st.s_grid, "Threshold s (ray start -s for counts), or a comma list")->delimiter(',');
    stats->add_option("--v,--v-grid", st.v_grid, "v, or a comma list (cgf sweep)")->delimiter(',');
    stats->add_option("--gamma", st.gamma, "Thinning probability");
    stats->add_option("--thin-seed", st.thin_seed, "Thinning seed (default: the sample seed)");
    stats->add_option("--T", st.T, "Time parameter of the Laplace functional");
    stats->add_option("--c", st.c, "Deviation size constant");
    stats->add_option("--side", st.side, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
    stats->add_option("--block-k", st.block_k, "Block index k (1 = ray)");

    BoundsOpts bo;
    auto* bounds = app.add_subcommand("bounds", "Tail and deviation bound tables (CSV)");
    bounds->add_option("--kind", bo.kind, "tail, f1 or deviation")->check(CLI::IsMember({"tail", "f1", "deviation"}));
    bounds->add_option("--s-grid", bo.s_grid, "Comma-separated s values")->delimiter(',');
    bounds->add_option("--T-grid", bo.T_grid, "Comma-separated T values")->delimiter(',');
    bounds->add_option("--eps", bo.eps, "epsilon in (0, 1/3)");
    bounds->add_option("--delta", bo.delta, "delta");
    bounds->add_option("--c", bo.c, "Deviation constant c");
    bounds->add_option("--constants-file", bo.constants_file, "JSON file with BoundConstants fields");
    bounds->add_flag("--calibrated", bo.calibrated, "Start from the calibrated constants instead of the defaults");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "Run the verification suite (JSON report)");
    verify->add_option("--suite", vo.suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--replicates", vo.replicates, "Override the Monte Carlo replicate count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (seed_opt->count() == 0) {
        if (const char* env = std::getenv("KPZE_SEED")) {
            try {
                std::size_t used = 0;
                g.seed = std::stoull(env, &used);
                if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                std::cerr << "kpze: KPZE_SEED must be an unsigned integer\n";
                return kUsage;
            }
        }
    }
    if (g.threads != 0) kpze::parallel::set_default_threads(g.threads);

    try {
        if (*spectrum) return run_spectrum(g, so);
        if (*painleve) return run_painleve(g, po);
        if (*fredholm) return run_fredholm(g, fo);
        if (*sample) return run_sample(g, sa);
        if (*stats) return run_stats(g, st);
        if (*bounds) return run_bounds(g, bo);
        if (*verify) return run_verify_cmd(g, vo);
    } catch (const kpze::InvalidArgument& e) {
        std::cerr << "kpze: invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "kpze: I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "kpze: numeric error: " << e.what() << '\n';
        return kNumeric;
    }
    return kUsage;
}
