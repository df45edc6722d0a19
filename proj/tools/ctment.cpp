// Command-line driver: single entropy evaluations, parameter sweeps, spectrum
// dumps, and scaling fits, with table/CSV/JSON output.
//
// Exit codes: 0 success, 2 usage error, 3 numeric/truncation failure, 4 I/O.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ctment/scaling.hpp"

namespace {

using namespace ctment;

constexpr double kPi = 3.141592653589793238462643383279502884;

// CSV/input parsing failure; maps to the I/O exit code.
class CsvError : public std::runtime_error {
public:
    explicit CsvError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// method selection

struct MethodChoice {
    bool is_auto = true;
    Method method = Method::poisson;
};

MethodChoice parse_method(const std::string& name) {
    if (name == "auto")
        return {true, Method::poisson};
    for (Method m : {Method::direct, Method::poisson, Method::spectrum, Method::asymptotic})
        if (name == method_name(m))
            return {false, m};
    throw CLI::ValidationError("--method", "unknown method '" + name + "'");
}

// auto policy: poisson inside its fast regime, direct otherwise.
Method resolve_method(const MethodChoice& choice, double eps) {
    if (!choice.is_auto)
        return choice.method;
    return eps < 0.5 ? Method::poisson : Method::direct;
}

int method_rank(Method m) {
    return static_cast<int>(m);
}

// ---------------------------------------------------------------------------
// sweep rows

struct SweepRow {
    double eps = 0.0;
    int kappa = 1;
    int i = 0;
    Method method = Method::direct;
    EntropyResult res;
    double ln_xi_exact = 0.0;
    double ln_xi_asym = 0.0;
};

const char* kSweepHeader = "eps,kappa,i,method,S,est_error,terms,ln_xi_exact,ln_xi_asym";

std::string row_csv(const SweepRow& r) {
    std::ostringstream os;
    os << fmt17(r.eps) << ',' << r.kappa << ',' << r.i << ',' << method_name(r.method) << ','
       << fmt17(r.res.value) << ',' << fmt17(r.res.est_error) << ',' << r.res.terms_used << ','
       << fmt17(r.ln_xi_exact) << ',' << fmt17(r.ln_xi_asym);
    return os.str();
}

std::string row_json(const SweepRow& r) {
    std::ostringstream os;
    os << "{\"eps\": " << fmt17(r.eps) << ", \"kappa\": " << r.kappa << ", \"i\": " << r.i
       << ", \"method\": \"" << method_name(r.method) << "\", \"S\": " << fmt17(r.res.value)
       << ", \"est_error\": " << fmt17(r.res.est_error) << ", \"terms\": " << r.res.terms_used
       << ", \"ln_xi_exact\": " << fmt17(r.ln_xi_exact)
       << ", \"ln_xi_asym\": " << fmt17(r.ln_xi_asym) << "}";
    return os.str();
}

void emit_rows(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& format) {
    if (format == "csv") {
        out << kSweepHeader << '\n';
        for (const SweepRow& r : rows)
            out << row_csv(r) << '\n';
    } else if (format == "json") {
        out << "[\n";
        for (size_t k = 0; k < rows.size(); ++k)
            out << "  " << row_json(rows[k]) << (k + 1 < rows.size() ? ",\n" : "\n");
        out << "]\n";
    } else {
        out << "eps           kappa  i  method      S                       est_error    terms"
               "     ln_xi_exact             ln_xi_asym\n";
        for (const SweepRow& r : rows) {
            char line[256];
            std::snprintf(line, sizeof(line), "%-13.6g %-6d %-2d %-11s %-23.16g %-12.3g %-9ld %-23.16g %-.16g",
                          r.eps, r.kappa, r.i, method_name(r.method), r.res.value,
                          r.res.est_error, r.res.terms_used, r.ln_xi_exact, r.ln_xi_asym);
            out << line << '\n';
        }
    }
}

// Writes to the path when given, else stdout.
void emit_output(const std::optional<std::string>& path,
                 const std::function<void(std::ostream&)>& writer) {
    if (!path) {
        writer(std::cout);
        return;
    }
    std::ofstream file(*path);
    if (!file)
        throw CsvError("cannot open output file '" + *path + "'");
    writer(file);
    if (!file.good())
        throw CsvError("write failure on '" + *path + "'");
}

// ---------------------------------------------------------------------------
// sweep evaluation

struct SweepTask {
    double eps;
    int i;
    Method method;
};

std::vector<double> geometric_grid(double start, double stop, int count) {
    if (!(start > 0.0) || !(stop > 0.0))
        throw CLI::ValidationError("--eps-start/--eps-stop", "eps bounds must be > 0");
    if (count < 1)
        throw CLI::ValidationError("--count", "need at least 1 point");
    double hi = std::max(start, stop);
    double lo = std::min(start, stop);
    std::vector<double> grid;
    if (count == 1) {
        grid.push_back(hi);
        return grid;
    }
    double ratio = std::pow(lo / hi, 1.0 / (count - 1));
    double eps = hi;
    for (int k = 0; k < count; ++k) {
        grid.push_back(eps);
        eps *= ratio;
    }
    return grid; // decreasing eps
}

std::vector<SweepRow> run_sweep(int kappa, std::vector<int> i_list, const std::vector<double>& grid,
                                const std::vector<MethodChoice>& methods, const Truncation& trunc,
                                int jobs) {
    if (i_list.empty())
        for (int i = 0; i <= kappa; ++i)
            i_list.push_back(i);
    std::sort(i_list.begin(), i_list.end());
    i_list.erase(std::unique(i_list.begin(), i_list.end()), i_list.end());
    for (int i : i_list)
        if (i < 0 || i > kappa)
            throw CLI::ValidationError("--i", "boundary label outside {0..kappa}");

    // Deterministic task order: eps descending, then i, then method.
    std::vector<SweepTask> tasks;
    for (double eps : grid)
        for (int i : i_list) {
            std::vector<Method> resolved;
            for (const MethodChoice& mc : methods)
                resolved.push_back(resolve_method(mc, eps));
            std::sort(resolved.begin(), resolved.end(),
                      [](Method a, Method b) { return method_rank(a) < method_rank(b); });
            resolved.erase(std::unique(resolved.begin(), resolved.end()), resolved.end());
            for (Method m : resolved)
                tasks.push_back({eps, i, m});
        }

    std::vector<SweepRow> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= tasks.size())
                break;
            const SweepTask& t = tasks[k];
            try {
                SweepRow row;
                row.eps = t.eps;
                row.kappa = kappa;
                row.i = t.i;
                row.method = t.method;
                row.res = entropy(ModelPoint(kappa, t.i, Nome::from_epsilon(t.eps)), t.method, trunc);
                row.ln_xi_exact = log_correlation_length(t.eps, CorrelationMode::exact);
                row.ln_xi_asym = log_correlation_length(t.eps, CorrelationMode::asymptotic);
                rows[k] = row;
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    for (const std::exception_ptr& e : errors)
        if (e)
            std::rethrow_exception(e);
    return rows;
}

// ---------------------------------------------------------------------------
// fit input

struct FitSample {
    double eps;
    double s;
    double ln_xi_exact;
};

using FitGroups = std::map<std::tuple<int, int, std::string>, std::vector<FitSample>>;

FitGroups groups_from_rows(const std::vector<SweepRow>& rows) {
    FitGroups groups;
    for (const SweepRow& r : rows)
        groups[{r.kappa, r.i, method_name(r.method)}].push_back(
            {r.eps, r.res.value, r.ln_xi_exact});
    return groups;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, long row, const char* col) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw CsvError("parse error at row " + std::to_string(row) + ": bad " + col + " value '" +
                       s + "'");
    return v;
}

long parse_int(const std::string& s, long row, const char* col) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw CsvError("parse error at row " + std::to_string(row) + ": bad " + col + " value '" +
                       s + "'");
    return v;
}

FitGroups groups_from_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw CsvError("cannot open input file '" + path + "'");
    std::string line;
    if (!std::getline(file, line))
        throw CsvError("empty input file '" + path + "'");

    std::vector<std::string> header = split_csv_line(line);
    auto column = [&](const char* name) {
        for (size_t k = 0; k < header.size(); ++k)
            if (header[k] == name)
                return k;
        throw CsvError("missing column '" + std::string(name) + "' in '" + path + "'");
    };
    size_t c_eps = column("eps"), c_kappa = column("kappa"), c_i = column("i"),
           c_method = column("method"), c_s = column("S"), c_lnxi = column("ln_xi_exact");

    FitGroups groups;
    long row = 1;
    while (std::getline(file, line)) {
        ++row;
        if (line.empty())
            continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw CsvError("parse error at row " + std::to_string(row) + ": expected " +
                           std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()));
        FitSample sample{parse_double(fields[c_eps], row, "eps"),
                         parse_double(fields[c_s], row, "S"),
                         parse_double(fields[c_lnxi], row, "ln_xi_exact")};
        int kappa = static_cast<int>(parse_int(fields[c_kappa], row, "kappa"));
        int i = static_cast<int>(parse_int(fields[c_i], row, "i"));
        groups[{kappa, i, fields[c_method]}].push_back(sample);
    }
    return groups;
}

// ---------------------------------------------------------------------------
// fit reporting

struct FitReport {
    int kappa;
    int i;
    std::string method;
    ScalingFit fit;
    double c_target;
    std::optional<double> ln_g_extracted;
    double ln_g_exact;
    std::optional<double> residual_const; // C_kappa from exact ln xi
};

// ln g and C_kappa by two-point Richardson over the two smallest eps in the group.
void attach_extractions(FitReport& rep, const std::vector<FitSample>& self,
                        const std::vector<FitSample>* reference) {
    auto sorted = self;
    std::sort(sorted.begin(), sorted.end(),
              [](const FitSample& a, const FitSample& b) { return a.eps < b.eps; });
    if (sorted.size() < 2 || sorted[1].eps - sorted[0].eps <= 1e-12 * sorted[1].eps)
        return;
    auto richardson = [](double e1, double v1, double e2, double v2) {
        return (e2 * v1 - e1 * v2) / (e2 - e1);
    };

    if (reference) {
        auto s0_at = [&](double eps) -> std::optional<double> {
            for (const FitSample& s : *reference)
                if (s.eps == eps)
                    return s.s;
            return std::nullopt;
        };
        auto d1 = s0_at(sorted[0].eps), d2 = s0_at(sorted[1].eps);
        if (d1 && d2)
            rep.ln_g_extracted = richardson(sorted[0].eps, sorted[0].s - *d1, sorted[1].eps,
                                            sorted[1].s - *d2);
    }

    double c = central_charge(rep.kappa);
    auto resid = [&](const FitSample& s) { return s.s - (c / 6.0) * s.ln_xi_exact - rep.ln_g_exact; };
    rep.residual_const =
        richardson(sorted[0].eps, resid(sorted[0]), sorted[1].eps, resid(sorted[1]));
}

void emit_fit_reports(std::ostream& out, const std::vector<FitReport>& reports,
                      const std::string& format) {
    if (format == "json") {
        out << "{\n  \"modulus_convention\": \"" << modulus_convention() << "\",\n  \"fits\": [\n";
        for (size_t k = 0; k < reports.size(); ++k) {
            const FitReport& r = reports[k];
            out << "    {\"kappa\": " << r.kappa << ", \"i\": " << r.i << ", \"method\": \""
                << r.method << "\", \"slope\": " << fmt17(r.fit.slope)
                << ", \"intercept\": " << fmt17(r.fit.intercept)
                << ", \"c_estimate\": " << fmt17(r.fit.c_estimate)
                << ", \"c_target\": " << fmt17(r.c_target)
                << ", \"residual_max\": " << fmt17(r.fit.residual_max)
                << ", \"ln_g_exact\": " << fmt17(r.ln_g_exact);
            if (r.ln_g_extracted)
                out << ", \"ln_g_extracted\": " << fmt17(*r.ln_g_extracted);
            if (r.residual_const)
                out << ", \"residual_constant\": " << fmt17(*r.residual_const);
            out << "}" << (k + 1 < reports.size() ? ",\n" : "\n");
        }
        out << "  ]\n}\n";
    } else {
        out << "modulus convention: " << modulus_convention() << "\n\n";
        for (const FitReport& r : reports) {
            out << "kappa=" << r.kappa << " i=" << r.i << " method=" << r.method << "\n";
            out << "  slope           = " << fmt17(r.fit.slope) << "\n";
            out << "  intercept       = " << fmt17(r.fit.intercept) << "\n";
            out << "  c_estimate      = " << fmt17(r.fit.c_estimate) << "  (target "
                << fmt17(r.c_target) << ")\n";
            out << "  residual_max    = " << fmt17(r.fit.residual_max) << "\n";
            if (r.ln_g_extracted)
                out << "  ln_g extracted  = " << fmt17(*r.ln_g_extracted) << "  (exact "
                    << fmt17(r.ln_g_exact) << ")\n";
            if (r.residual_const)
                out << "  C_kappa (exact ln xi) = " << fmt17(*r.residual_const) << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// commands

struct CommonOpts {
    double abs_tol = 1e-13;
    long max_terms = 10000000;
    int max_kappa = 64;

    Truncation trunc() const { return Truncation{abs_tol, max_terms}; }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--tol", opts.abs_tol, "absolute tolerance on values")
        ->envname("CTMENT_ABS_TOL")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-terms", opts.max_terms, "series term cap")->check(CLI::PositiveNumber);
    cmd->add_option("--max-kappa", opts.max_kappa, "raise the kappa sanity cap")
        ->check(CLI::PositiveNumber);
}

int run(int argc, char** argv) {
    CLI::App app{"corner-transfer-matrix entanglement entropy of the spin-kappa/2 vertex model"};
    app.require_subcommand(1);

    // entropy
    auto* c_ent = app.add_subcommand("entropy", "evaluate S at one model point");
    CommonOpts ent_opts;
    int ent_kappa = 1, ent_i = 0;
    double ent_eps = 0.5;
    std::string ent_method = "auto", ent_format = "table";
    std::optional<std::string> ent_output;
    int ent_order = -1;
    c_ent->add_option("--kappa", ent_kappa, "twice the spin")->required()->check(CLI::PositiveNumber);
    c_ent->add_option("--i", ent_i, "boundary label in {0..kappa}")->required();
    c_ent->add_option("--eps", ent_eps, "coupling eps > 0, x = exp(-eps)")->required();
    c_ent->add_option("--method", ent_method, "auto|direct|poisson|spectrum|asymptotic");
    c_ent->add_option("--format", ent_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    c_ent->add_option("--output", ent_output, "write to file instead of stdout");
    c_ent->add_option("--spectrum-order", ent_order, "explicit order for the spectrum route");
    add_common(c_ent, ent_opts);

    // sweep
    auto* c_sweep = app.add_subcommand("sweep", "entropy over a geometric eps grid");
    CommonOpts sweep_opts;
    int sweep_kappa = 1, sweep_count = 8, sweep_jobs = 1;
    std::vector<int> sweep_i;
    double sweep_start = 0.2, sweep_stop = 0.02;
    std::vector<std::string> sweep_methods{"auto"};
    std::string sweep_format = "csv";
    std::optional<std::string> sweep_output;
    c_sweep->add_option("--kappa", sweep_kappa)->required()->check(CLI::PositiveNumber);
    c_sweep->add_option("--i", sweep_i, "boundary labels (default: all of {0..kappa})")
        ->delimiter(',');
    c_sweep->add_option("--eps-start", sweep_start)->required();
    c_sweep->add_option("--eps-stop", sweep_stop)->required();
    c_sweep->add_option("--count", sweep_count, "grid points")->check(CLI::PositiveNumber);
    c_sweep->add_option("--methods", sweep_methods, "comma list of methods or auto")
        ->delimiter(',');
    c_sweep->add_option("--jobs", sweep_jobs, "parallel evaluation bound")
        ->check(CLI::PositiveNumber);
    c_sweep->add_option("--format", sweep_format, "csv|json|table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    c_sweep->add_option("--output", sweep_output, "write to file instead of stdout");
    add_common(c_sweep, sweep_opts);

    // fit
    auto* c_fit = app.add_subcommand("fit", "least-squares scaling fit of S vs 1/eps");
    CommonOpts fit_opts;
    std::optional<std::string> fit_input;
    int fit_kappa = 1, fit_count = 8, fit_jobs = 1;
    std::vector<int> fit_i;
    double fit_start = 0.2, fit_stop = 0.02;
    std::string fit_method = "auto", fit_format = "table";
    std::optional<std::string> fit_output;
    c_fit->add_option("--input", fit_input, "sweep CSV to fit (otherwise sweep inline)");
    c_fit->add_option("--kappa", fit_kappa)->check(CLI::PositiveNumber);
    c_fit->add_option("--i", fit_i)->delimiter(',');
    c_fit->add_option("--eps-start", fit_start);
    c_fit->add_option("--eps-stop", fit_stop);
    c_fit->add_option("--count", fit_count)->check(CLI::PositiveNumber);
    c_fit->add_option("--method", fit_method);
    c_fit->add_option("--jobs", fit_jobs)->check(CLI::PositiveNumber);
    c_fit->add_option("--format", fit_format, "table|json")
        ->check(CLI::IsMember({"table", "json"}));
    c_fit->add_option("--output", fit_output, "write to file instead of stdout");
    add_common(c_fit, fit_opts);

    // spectrum
    auto* c_spec = app.add_subcommand("spectrum", "CTM eigenvalue degeneracies d_n");
    CommonOpts spec_opts;
    int spec_kappa = 1, spec_i = 0, spec_order = 20;
    std::optional<double> spec_eps;
    std::string spec_format = "table";
    std::optional<std::string> spec_output;
    c_spec->add_option("--kappa", spec_kappa)->required()->check(CLI::PositiveNumber);
    c_spec->add_option("--i", spec_i)->required();
    c_spec->add_option("--order", spec_order, "table order N")->required();
    c_spec->add_option("--eps", spec_eps, "also print probabilities p_n at this eps");
    c_spec->add_option("--format", spec_format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    c_spec->add_option("--output", spec_output, "write to file instead of stdout");
    add_common(c_spec, spec_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        std::exit(app.exit(e)); // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (c_ent->parsed()) {
        set_kappa_cap(ent_opts.max_kappa);
        if (ent_i < 0 || ent_i > ent_kappa)
            throw CLI::ValidationError("--i", "boundary label outside {0..kappa}");
        MethodChoice choice = parse_method(ent_method);
        Method method = resolve_method(choice, ent_eps);
        ModelPoint point(ent_kappa, ent_i, Nome::from_epsilon(ent_eps));
        EntropyResult res = (method == Method::spectrum && ent_order >= 0)
                                ? entropy_from_spectrum(point, ent_order, ent_opts.trunc())
                                : entropy(point, method, ent_opts.trunc());
        SweepRow row{ent_eps, ent_kappa, ent_i, method, res,
                     log_correlation_length(ent_eps, CorrelationMode::exact),
                     log_correlation_length(ent_eps, CorrelationMode::asymptotic)};
        emit_output(ent_output, [&](std::ostream& out) {
            if (ent_format == "table") {
                out << "S          = " << fmt17(res.value) << "\n"
                    << "method     = " << method_name(method) << "\n"
                    << "est_error  = " << fmt17(res.est_error) << "\n"
                    << "terms_used = " << res.terms_used << "\n"
                    << "ln_xi      = " << fmt17(row.ln_xi_exact) << " (exact), "
                    << fmt17(row.ln_xi_asym) << " (asymptotic)\n";
            } else {
                emit_rows(out, {row}, ent_format);
            }
        });
        return 0;
    }

    if (c_sweep->parsed()) {
        set_kappa_cap(sweep_opts.max_kappa);
        std::vector<MethodChoice> methods;
        for (const std::string& name : sweep_methods)
            methods.push_back(parse_method(name));
        std::vector<SweepRow> rows =
            run_sweep(sweep_kappa, sweep_i, geometric_grid(sweep_start, sweep_stop, sweep_count),
                      methods, sweep_opts.trunc(), sweep_jobs);
        emit_output(sweep_output, [&](std::ostream& out) { emit_rows(out, rows, sweep_format); });
        return 0;
    }

    if (c_fit->parsed()) {
        set_kappa_cap(fit_opts.max_kappa);
        FitGroups groups;
        if (fit_input) {
            groups = groups_from_csv(*fit_input);
        } else {
            std::vector<MethodChoice> methods{parse_method(fit_method)};
            groups = groups_from_rows(run_sweep(fit_kappa, fit_i,
                                                geometric_grid(fit_start, fit_stop, fit_count),
                                                methods, fit_opts.trunc(), fit_jobs));
        }
        std::vector<FitReport> reports;
        for (const auto& [key, samples] : groups) {
            auto [kappa, i, method] = key;
            std::vector<std::pair<double, double>> points;
            for (const FitSample& s : samples)
                points.emplace_back(s.eps, s.s);
            FitReport rep{kappa, i, method, fit_scaling(std::move(points)), central_charge(kappa),
                          std::nullopt, boundary_g(kappa, i).ln_g, std::nullopt};
            auto ref = groups.find({kappa, 0, method});
            attach_extractions(rep, samples, ref != groups.end() ? &ref->second : nullptr);
            reports.push_back(std::move(rep));
        }
        emit_output(fit_output,
                    [&](std::ostream& out) { emit_fit_reports(out, reports, fit_format); });
        return 0;
    }

    if (c_spec->parsed()) {
        set_kappa_cap(spec_opts.max_kappa);
        if (spec_i < 0 || spec_i > spec_kappa)
            throw CLI::ValidationError("--i", "boundary label outside {0..kappa}");
        SpectrumTable table = ctm_spectrum(spec_kappa, spec_i, spec_order);
        std::vector<double> probs;
        if (spec_eps) {
            ModelPoint point(spec_kappa, spec_i, Nome::from_epsilon(*spec_eps));
            double log_z = log_partition_theta(point, spec_opts.trunc());
            for (int n = 0; n <= table.order(); ++n)
                probs.push_back(std::exp(std::log(coeff_to_double(table.degeneracy(n))) -
                                         2.0 * n * *spec_eps - log_z));
        }
        emit_output(spec_output, [&](std::ostream& out) {
            if (spec_format == "json") {
                out << "[\n";
                for (int n = 0; n <= table.order(); ++n) {
                    out << "  {\"n\": " << n << ", \"d_n\": " << coeff_to_string(table.degeneracy(n));
                    if (spec_eps)
                        out << ", \"p_n\": " << fmt17(probs[static_cast<size_t>(n)]);
                    out << "}" << (n < table.order() ? ",\n" : "\n");
                }
                out << "]\n";
            } else if (spec_format == "csv") {
                out << (spec_eps ? "n,d_n,p_n" : "n,d_n") << '\n';
                for (int n = 0; n <= table.order(); ++n) {
                    out << n << ',' << coeff_to_string(table.degeneracy(n));
                    if (spec_eps)
                        out << ',' << fmt17(probs[static_cast<size_t>(n)]);
                    out << '\n';
                }
            } else {
                for (int n = 0; n <= table.order(); ++n) {
                    out << n << "  " << coeff_to_string(table.degeneracy(n));
                    if (spec_eps)
                        out << "  " << fmt17(probs[static_cast<size_t>(n)]);
                    out << '\n';
                }
            }
        });
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
