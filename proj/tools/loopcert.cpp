#include "loopcert/acceptance.hpp"
#include "loopcert/convergence.hpp"
#include "loopcert/decay.hpp"
#include "loopcert/inequalities.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace loopcert;
using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1.0.0";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    std::uint64_t seed = 0;
    int prec = 256;
    std::string out = "-";
    int threads = 0;

    json to_json() const { return {{"seed", seed}, {"prec", prec}, {"out", out}, {"threads", threads}}; }
};

std::string env_name(const std::string& flag) {
    if (flag == "C") return "LOOPCERT_BIG_C";
    std::string s = "LOOPCERT_";
    for (char c : flag) s += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

template <class T>
CLI::Option* opt(CLI::App* app, const std::string& flag, T& target, const std::string& help) {
    return app->add_option("--" + flag, target, help)->envname(env_name(flag))->capture_default_str();
}

Rational rational_arg(const std::string& name, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError("--" + name + ": not a rational number: '" + text + "'");
    }
}

RootType type_arg(const std::string& text) {
    try {
        RootType t = RootType::parse(text);
        build_root_system(t);
        return t;
    } catch (const std::exception& e) {
        throw UsageError(std::string("--type: ") + e.what());
    }
}

template <class T>
std::pair<T, T> range_arg(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--range expects a,b");
    try {
        T a, b;
        std::istringstream(text.substr(0, comma)) >> a;
        std::istringstream(text.substr(comma + 1)) >> b;
        if (!(a <= b)) throw UsageError("--range expects a <= b");
        return {a, b};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("--range expects a,b");
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open output file '" + path + "'");
    f << text;
}

json envelope(const std::string& schema, const std::string& command, const json& config) {
    return {{"schema", schema}, {"schema_version", kSchemaVersion}, {"command", command}, {"config", config}};
}

int emit(const Globals& g, json report, json failures = json::array()) {
    report["failures"] = failures;
    write_text(g.out, report.dump(2) + "\n");
    return failures.empty() ? 0 : 1;
}

json merge(json base, const json& payload) {
    for (auto it = payload.begin(); it != payload.end(); ++it) base[it.key()] = it.value();
    return base;
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for affine root systems, Weyl group inequalities and decay certificates.", "loopcert"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with default option values; sections name subcommands")->envname("LOOPCERT_CONFIG");
    Globals g;
    opt(&app, "seed", g.seed, "random seed");
    opt(&app, "prec", g.prec, "MPFR precision in bits")->check(CLI::Range(32, 1 << 16));
    opt(&app, "out", g.out, "output path ('-' for stdout; a directory for reproduce-all)");
    opt(&app, "threads", g.threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);

    std::string type_text = "A1";
    int max_len = 8;

    // roots
    auto* roots = app.add_subcommand("roots", "finite root system data as JSON");
    roots->fallthrough();
    opt(roots, "type", type_text, "root system type, e.g. A2, G2, E8")->required();

    // weyl
    auto* weyl = app.add_subcommand("weyl", "affine Weyl group enumeration");
    weyl->require_subcommand(1);
    weyl->fallthrough();
    auto* enumerate = weyl->add_subcommand("enumerate", "JSON lines, one element per line after a header line");
    enumerate->fallthrough();
    bool kostant_only = false;
    opt(enumerate, "type", type_text, "root system type")->required();
    opt(enumerate, "max-len", max_len, "maximal length")->check(CLI::NonNegativeNumber);
    enumerate->add_flag("--kostant", kostant_only, "only minimal-length coset representatives");
    auto* census = weyl->add_subcommand("census", "per-length counts");
    census->fallthrough();
    std::string format = "csv";
    opt(census, "type", type_text, "root system type")->required();
    opt(census, "max-len", max_len, "maximal length")->check(CLI::NonNegativeNumber);
    opt(census, "format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // verify
    auto* verify = app.add_subcommand("verify", "exhaustive or sampled inequality checks");
    verify->fallthrough();
    std::string lemma;
    AuditConfig audit;
    std::string r_text = "1", t_text = "1/2", lambda_text = "2";
    verify->add_option("lemma", lemma, "lemma22, lemma23, lemma351, thm32 or cor34")
        ->required()
        ->check(CLI::IsMember({"lemma22", "lemma23", "lemma351", "thm32", "cor34"}));
    opt(verify, "type", type_text, "root system type")->required();
    opt(verify, "max-len", max_len, "maximal length")->check(CLI::NonNegativeNumber);
    opt(verify, "samples", audit.h1_samples, "H1 samples per element");
    opt(verify, "siegel-samples", audit.siegel_samples, "Siegel samples per element");
    opt(verify, "r", r_text, "Siegel set parameter r");
    opt(verify, "t", t_text, "Siegel set parameter t");
    opt(verify, "lambda-bound", lambda_text, "bound on |<Lambda, H_g>|");

    // certify
    auto* cert = app.add_subcommand("certify", "bound-term certificate for the loop Eisenstein series");
    cert->fallthrough();
    std::map<std::string, std::string> cp{{"r", "1"}, {"re-nu", "0"}, {"c1", "1"}, {"c2", "1"}, {"c3", "1"}, {"big-d", "1"}};
    std::string nu0_text, d_text, constants_from, csv_path;
    opt(cert, "type", type_text, "root system type")->required();
    for (auto& [k, v] : cp) opt(cert, k, v, "rational parameter " + k);
    opt(cert, "nu0", nu0_text, "rational nu0 > 2h (default 2h + 1)");
    opt(cert, "d", d_text, "rational d > nu0 - re_nu (default smallest with d c2 integral)");
    opt(cert, "max-len", max_len, "maximal length")->check(CLI::NonNegativeNumber);
    opt(cert, "constants-from", constants_from, "thm32/cor34 report supplying C2, C3 and D");
    opt(cert, "csv", csv_path, "write length,word,log_term rows here");

    // decay
    auto* decay = app.add_subcommand("decay", "one-variable bump function analysis");
    decay->require_subcommand(1);
    decay->fallthrough();
    auto* l1 = decay->add_subcommand("l1", "ln ||sigma^(N)||_1");
    l1->fallthrough();
    int n_order = -1;
    std::string range_text;
    opt(l1, "n", n_order, "derivative order N");
    opt(l1, "range", range_text, "orders a,b");
    std::string decay_format = "json";
    opt(l1, "format", decay_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* fourier = decay->add_subcommand("fourier", "Fourier transform samples and decay fit");
    fourier->fallthrough();
    std::string fourier_range = "50,400";
    int fourier_samples = 40;
    opt(fourier, "range", fourier_range, "frequencies a,b");
    opt(fourier, "samples", fourier_samples, "sample count, uniform in sqrt(r)")->check(CLI::Range(5, 100000));
    opt(fourier, "format", decay_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* convert = decay->add_subcommand("convert", "moment bound to pointwise bound");
    convert->fallthrough();
    std::string c_text = "1", big_c_text = "1", y_text, ln_y_text;
    opt(convert, "c", c_text, "constant c > 0");
    opt(convert, "C", big_c_text, "constant C > 0");
    opt(convert, "y", y_text, "rational y > 1");
    opt(convert, "ln-y", ln_y_text, "ln y, for y beyond rational range");

    // reproduce-all
    auto* repro = app.add_subcommand("reproduce-all", "run acceptance criteria 1-8");
    repro->fallthrough();
    std::string profile = "small";
    opt(repro, "profile", profile, "small or full")->check(CLI::IsMember({"small", "full"}));

    if (argc <= 1) {
        std::cerr << app.help();
        return 2;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        json config = g.to_json();
        if (*roots) {
            const RootType t = type_arg(type_text);
            config["type"] = t.name();
            return emit(g, merge(envelope("roots", "roots", config), to_json(*build_root_system(t))));
        }
        if (*weyl) {
            const RootType t = type_arg(type_text);
            config["type"] = t.name();
            config["max_len"] = max_len;
            AffineWeylGroup group(build_root_system(t));
            if (*enumerate) {
                config["kostant"] = kostant_only;
                const auto e = group.enumerate(max_len);
                std::vector<char> keep(e.elements.size(), 1);
                if (kostant_only) parallel_for(e.elements.size(), g.threads, [&](std::size_t i) { keep[i] = group.is_kostant(e.elements[i]); });
                std::ostringstream os;
                json header = envelope("weyl_enumerate_header", "weyl enumerate", config);
                header["count"] = std::count(keep.begin(), keep.end(), 1);
                os << header.dump() << '\n';
                for (std::size_t i = 0; i < e.elements.size(); ++i)
                    if (keep[i]) os << to_json(e.elements[i], e.elements[i].length).dump() << '\n';
                write_text(g.out, os.str());
                return 0;
            }
            config["format"] = format;
            const auto c = growth_census(t, max_len, g.threads);
            if (format == "json") return emit(g, merge(envelope("census", "weyl census", config), to_json(c)));
            std::ostringstream os;
            os << "# " << json(config).dump() << '\n' << "length,all,kostant\n";
            for (std::size_t n = 0; n < c.all.size(); ++n) os << n << ',' << c.all[n] << ',' << c.kostant[n] << '\n';
            write_text(g.out, os.str());
            return 0;
        }
        if (*verify) {
            audit.type = type_arg(type_text);
            audit.max_len = max_len;
            audit.seed = g.seed;
            audit.threads = g.threads;
            audit.r = rational_arg("r", r_text);
            audit.t = rational_arg("t", t_text);
            audit.lambda_bound = rational_arg("lambda-bound", lambda_text);
            if (audit.r <= 0 || audit.t <= 0 || audit.lambda_bound < 0) throw UsageError("r and t must be positive, lambda-bound non-negative");
            if (max_len < 0) throw UsageError("--max-len must be non-negative");
            config = merge(config, audit_config_json(audit));
            config["lemma"] = lemma;
            VerifyReport rep;
            if (lemma == "lemma22") rep = verify_lemma22(audit);
            if (lemma == "lemma23") rep = verify_lemma23(audit);
            if (lemma == "lemma351") rep = verify_lemma351(audit);
            if (lemma == "thm32" || lemma == "cor34") {
                if (audit.h1_samples == 0 || audit.siegel_samples == 0) throw UsageError("--samples and --siegel-samples must be positive");
                const auto a = run_theorem_audit(audit);
                rep = lemma == "thm32" ? verify_theorem(a) : verify_corollary(a);
            }
            rep.body.erase("config");
            json failures = json::array();
            if (!rep.passed()) failures.push_back(std::to_string(rep.body["violations"].size()) + " violations");
            return emit(g, merge(envelope("verify", "verify " + lemma, config), rep.body), failures);
        }
        if (*cert) {
            CertificateParams p;
            p.type = type_arg(type_text);
            p.r = rational_arg("r", cp["r"]);
            p.re_nu = rational_arg("re-nu", cp["re-nu"]);
            p.c1 = rational_arg("c1", cp["c1"]);
            p.c2 = rational_arg("c2", cp["c2"]);
            p.c3 = rational_arg("c3", cp["c3"]);
            p.big_d = rational_arg("big-d", cp["big-d"]);
            if (!nu0_text.empty()) p.nu0 = rational_arg("nu0", nu0_text);
            if (!d_text.empty()) p.cap_d = rational_arg("d", d_text);
            if (!constants_from.empty()) {
                try {
                    apply_report_constants(p, read_json_file(constants_from));
                } catch (const json::exception& e) {
                    throw UsageError("--constants-from: " + std::string(e.what()));
                }
            }
            if (max_len < 0) throw UsageError("--max-len must be non-negative");
            try {
                p.resolve();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            config["params"] = p.to_json();
            config["max_len"] = max_len;
            config["constants_from"] = constants_from;
            config["csv"] = csv_path;
            const auto c = certify(p, max_len, g.threads, g.prec);
            if (!csv_path.empty()) write_text(csv_path, certificate_csv(c));
            json failures = json::array();
            if (!c.decaying) failures.push_back("verdict NON-DECAYING");
            return emit(g, merge(envelope("certify", "certify", config), to_json(c)), failures);
        }
        if (*l1) {
            int a = n_order, b = n_order;
            if (!range_text.empty()) std::tie(a, b) = range_arg<int>(range_text);
            if (a < 0) throw UsageError("decay l1 needs --n N >= 0 or --range a,b");
            config["range"] = {a, b};
            config["format"] = decay_format;
            json rows = json::array();
            std::ostringstream csv;
            csv << "# " << config.dump() << '\n' << "n,log_l1,log_ratio,abs_error\n";
            for (int n = a; n <= b; ++n) {
                const auto v = l1_norm(n, g.prec);
                PrecisionScope prec(g.prec);
                const Real log_ratio = n == 0 ? v.log_value : Real(v.log_value - 2 * n * log(Real(2 * n)));
                const int digits = static_cast<int>(bits_to_digits10(g.prec / 2));
                rows.push_back({{"n", n}, {"log_l1", to_string(v.log_value, digits)}, {"l1", to_string(v.value(), digits)},
                                {"log_ratio", to_string(log_ratio, digits)}, {"abs_error", to_double(v.abs_error)}});
                csv << n << ',' << to_string(v.log_value, digits) << ',' << to_string(log_ratio, digits) << ',' << to_double(v.abs_error) << '\n';
            }
            if (decay_format == "csv") {
                write_text(g.out, csv.str());
                return 0;
            }
            return emit(g, merge(envelope("decay_l1", "decay l1", config), {{"rows", rows}}));
        }
        if (*fourier) {
            const auto [a, b] = range_arg<double>(fourier_range);
            if (!(a > 0 && a < b)) throw UsageError("--range needs 0 < a < b");
            config["range"] = {a, b};
            config["samples"] = fourier_samples;
            config["format"] = decay_format;
            const auto fit = fourier_decay_fit(a, b, fourier_samples, g.prec);
            json rows = json::array();
            std::ostringstream csv;
            csv << "# " << config.dump() << '\n' << "r,value,neg_log_abs,envelope_peak\n";
            std::set<std::size_t> peaks(fit.peaks.begin(), fit.peaks.end());
            for (std::size_t i = 0; i < fit.samples.size(); ++i) {
                const auto& s = fit.samples[i];
                PrecisionScope prec(g.prec);
                rows.push_back({{"r", s.r}, {"value", to_string(s.value, 20)}, {"neg_log_abs", s.neg_log_abs}, {"envelope_peak", peaks.count(i) > 0}});
                csv << s.r << ',' << to_string(s.value, 20) << ',' << s.neg_log_abs << ',' << (peaks.count(i) ? 1 : 0) << '\n';
            }
            if (decay_format == "csv") {
                write_text(g.out, csv.str());
                return 0;
            }
            json f = {{"exponent_coeff", fit.exponent_coeff}, {"power", 0.75}, {"constant", fit.constant},
                      {"exponent_coeff_all_points", fit.exponent_coeff_all}, {"free_exponent_coeff", fit.free_exponent_coeff},
                      {"free_power", fit.free_power}, {"envelope_points", fit.peaks.size()},
                      {"target", std::sqrt(2 * M_PI)}};
            return emit(g, merge(envelope("decay_fourier", "decay fourier", config), {{"samples", rows}, {"fit", f}}));
        }
        if (*convert) {
            const MomentBound m{rational_arg("c", c_text), rational_arg("C", big_c_text)};
            if (m.c <= 0 || m.big_c <= 0) throw UsageError("--c and --C must be positive");
            if (y_text.empty() == ln_y_text.empty()) throw UsageError("decay convert needs exactly one of --y and --ln-y");
            PrecisionScope prec(g.prec);
            Real ln_y;
            if (!y_text.empty()) {
                const Rational y = rational_arg("y", y_text);
                if (y <= 1) throw UsageError("--y must exceed 1");
                ln_y = log(to_real(y));
                config["y"] = to_json(y);
            } else {
                ln_y = to_real(rational_arg("ln-y", ln_y_text));
                if (ln_y <= 0) throw UsageError("--ln-y must be positive");
                config["ln_y"] = ln_y_text;
            }
            config["c"] = to_json(m.c);
            config["C"] = to_json(m.big_c);
            const auto b = moment_to_pointwise(m, ln_y);
            const auto fit = moment_exponent_fit(m);
            const Real scaled = b.log_bound / exp(ln_y / to_real(m.big_c));
            json payload = {{"best_n", b.best_n},
                            {"log_bound", to_string(b.log_bound, 20)},
                            {"bound", to_string(exp(b.log_bound), 20)},
                            {"log_bound_over_y_pow", to_string(scaled, 20)},
                            {"exponent_fit", {{"d", fit.d}, {"intercept", fit.intercept}, {"ln_y_range", {2, 20}}}}};
            return emit(g, merge(envelope("decay_convert", "decay convert", config), payload));
        }
        if (*repro) {
            AcceptanceOptions o;
            o.profile = profile;
            o.seed = g.seed;
            o.threads = g.threads;
            o.precision_bits = g.prec;
            config["profile"] = profile;
            const auto results = run_acceptance(o, std::cerr);
            json summary = merge(envelope("reproduce_all", "reproduce-all", config), acceptance_summary(o, results));
            summary.erase("config");
            summary["config"] = config;
            if (g.out != "-") {
                const std::filesystem::path dir(g.out);
                std::filesystem::create_directories(dir / "reports");
                for (const auto& r : results)
                    for (const auto& [name, body] : r.reports) {
                        const bool is_cert = name.rfind("certify_", 0) == 0;
                        json failures = json::array();
                        if (is_cert && body["verdict"] != "DECAYING") failures.push_back("verdict NON-DECAYING");
                        if (!is_cert && !body["violations"].empty()) failures.push_back(std::to_string(body["violations"].size()) + " violations");
                        json rep = merge(envelope(is_cert ? "certify" : "verify", "reproduce-all", config), body);
                        rep["config"] = config;
                        rep["failures"] = failures;
                        write_text((dir / "reports" / (name + ".json")).string(), rep.dump(2) + "\n");
                    }
                write_text((dir / "summary.json").string(), summary.dump(2) + "\n");
                return summary["failures"].empty() ? 0 : 1;
            }
            const json failures = summary["failures"];
            summary.erase("failures");
            return emit(g, summary, failures);
        }
        std::cerr << app.help();
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 3;
    }
}
