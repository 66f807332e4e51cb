#include "gaussdens/cli.hpp"

#include "gaussdens/check_suite.hpp"
#include "gaussdens/csv.hpp"
#include "gaussdens/errors.hpp"
#include "gaussdens/estimator.hpp"
#include "gaussdens/oracle.hpp"
#include "gaussdens/parser.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace gaussdens::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view text, const char* what) {
    const std::string t = trim(text);
    T v{};
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw ValidationError(std::string("invalid ") + what + ": '" + t + "'");
    return v;
}

double parse_real(std::string_view text, const char* what) {
    const auto r = parse_rational(trim(text));
    if (!r) throw ValidationError(std::string("invalid ") + what + ": '" + trim(text) + "'");
    return to_double(*r);
}

bool parse_bool(std::string_view text) {
    const std::string t = trim(text);
    if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
    if (t == "0" || t == "false" || t == "no" || t == "off") return false;
    throw ValidationError("invalid boolean: '" + t + "'");
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Format effective_format(const Command& cmd) {
    if (cmd.format) return *cmd.format;
    if (ends_with(cmd.out, ".csv")) return Format::csv;
    if (ends_with(cmd.out, ".json")) return Format::json;
    return Format::table;
}

EstimatorConfig estimator_config(const Command& cmd) {
    EstimatorConfig cfg;
    if (cmd.schedule) cfg.s_schedule = *cmd.schedule;
    if (cmd.eps) cfg.per_point_eps = *cmd.eps;
    if (cmd.budget) cfg.term_budget = *cmd.budget;
    if (cmd.degree) cfg.fit_degree = *cmd.degree;
    cfg.workers = cmd.workers;
    cfg.validate();
    return cfg;
}

/// Left-aligned columns separated by two spaces.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    std::string out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        out += line + '\n';
    }
    return out;
}

std::string short_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

// ---- serialization ----------------------------------------------------

json density_json(const DensityValue& d) {
    json j;
    j["kind"] = d.kind_name();
    j["value"] = d.value_string();
    if (d.rational) {
        j["numerator"] = to_string(boost::multiprecision::numerator(*d.rational));
        j["denominator"] = to_string(boost::multiprecision::denominator(*d.rational));
    }
    if (!d.symbolic.empty()) j["symbolic"] = d.symbolic;
    j["trace"] = d.trace;
    return j;
}

std::vector<std::string> density_fields(const DensityValue& d) {
    std::string num, den;
    if (d.rational) {
        num = to_string(boost::multiprecision::numerator(*d.rational));
        den = to_string(boost::multiprecision::denominator(*d.rational));
    }
    return {d.kind_name(), d.value_string(), num, den, join(d.trace, ";")};
}

std::vector<std::string> series_fields(const SeriesEval& p) {
    return {format_double(p.s), format_double(p.value), format_double(p.tail_bound), std::to_string(p.terms_used),
            to_string(p.method)};
}

json series_json(const SeriesEval& p) {
    return json{{"s", p.s},
                {"value", p.value},
                {"tail_bound", p.tail_bound},
                {"terms_used", p.terms_used},
                {"method", to_string(p.method)}};
}

const char* kSeriesHeader = "s,value,tail_bound,terms_used,method";

std::string estimate_points_csv(const EstimateReport& r) {
    std::string out = std::string(kSeriesHeader) + ",eps\n";
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        auto f = series_fields(r.points[i]);
        f.push_back(format_double(r.point_eps[i]));
        out += csv_join(f) + '\n';
    }
    return out;
}

std::string estimate_summary_csv(const std::string& expr, const EstimateReport& r) {
    std::vector<std::string> coeffs;
    for (const double c : r.coefficients) coeffs.push_back(format_double(c));
    std::vector<std::string> failed;
    for (const double s : r.budget_exceeded) failed.push_back(format_double(s));
    std::string out =
        "expression,extrapolated,raw_extrapolated,clamped,fit_residual,drift,tolerance,converged,"
        "budget_exceeded,coefficients,exact_kind,exact_value\n";
    out += csv_join({expr, format_double(r.extrapolated), format_double(r.raw_extrapolated),
                     r.clamped ? "true" : "false", format_double(r.fit_residual), format_double(r.drift),
                     format_double(r.tolerance()), r.converged ? "true" : "false", join(failed, ";"),
                     join(coeffs, ";"), r.exact_reference ? r.exact_reference->kind_name() : "unknown",
                     r.exact_reference ? r.exact_reference->value_string() : ""});
    return out + '\n';
}

json estimate_json(const std::string& expr, const EstimateReport& r) {
    json pts = json::array();
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        json p = series_json(r.points[i]);
        p["eps"] = r.point_eps[i];
        pts.push_back(p);
    }
    json j{{"expression", expr},
           {"points", pts},
           {"budget_exceeded", r.budget_exceeded},
           {"coefficients", r.coefficients},
           {"extrapolated", r.extrapolated},
           {"raw_extrapolated", r.raw_extrapolated},
           {"clamped", r.clamped},
           {"fit_residual", r.fit_residual},
           {"drift", r.drift},
           {"tolerance", r.tolerance()},
           {"converged", r.converged}};
    j["exact"] = r.exact_reference ? density_json(*r.exact_reference) : json(nullptr);
    return j;
}

std::string estimate_table(const std::string& expr, const EstimateReport& r) {
    std::vector<std::vector<std::string>> rows{{"s", "value", "tail_bound", "terms_used", "method", "eps"}};
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        const auto& p = r.points[i];
        rows.push_back({short_double(p.s), short_double(p.value), short_double(p.tail_bound),
                        std::to_string(p.terms_used), to_string(p.method), short_double(r.point_eps[i])});
    }
    std::string out = render_table(rows) + '\n';
    std::vector<std::vector<std::string>> summary{
        {"expression", expr},
        {"extrapolated", short_double(r.extrapolated) + (r.clamped ? " (clamped from " + short_double(r.raw_extrapolated) + ")" : "")},
        {"fit_residual", short_double(r.fit_residual)},
        {"drift", short_double(r.drift)},
        {"tolerance", short_double(r.tolerance())},
        {"converged", r.converged ? "yes" : "no"},
    };
    if (!r.budget_exceeded.empty()) {
        std::vector<std::string> failed;
        for (const double s : r.budget_exceeded) failed.push_back(short_double(s));
        summary.push_back({"budget_exceeded", join(failed, ", ")});
    }
    if (r.exact_reference) summary.push_back({"exact", r.exact_reference->str()});
    return out + render_table(summary);
}

// ---- output plumbing ----------------------------------------------------

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

void emit(const Command& cmd, std::ostream& out, const std::string& text) {
    if (cmd.out.empty())
        out << text;
    else
        write_file(cmd.out, text);
}

// ---- subcommands ----------------------------------------------------------

int run_exact(const Command& cmd, std::ostream& out) {
    const GaussSet e = parse_expression(cmd.expression);
    const DensityValue d = exact_density(e);
    switch (effective_format(cmd)) {
        case Format::csv: {
            std::vector<std::string> f{e.str()};
            for (auto& x : density_fields(d)) f.push_back(std::move(x));
            emit(cmd, out, "expression,kind,value,numerator,denominator,trace\n" + csv_join(f) + '\n');
            break;
        }
        case Format::json: {
            json j = density_json(d);
            j["expression"] = e.str();
            emit(cmd, out, j.dump(2) + '\n');
            break;
        }
        case Format::table:
            emit(cmd, out,
                 render_table({{"expression", e.str()},
                               {"kind", d.kind_name()},
                               {"density", d.str()},
                               {"value", d.known() ? d.value_string() : "-"},
                               {"trace", d.trace.empty() ? "-" : join(d.trace, ", ")}}));
            break;
    }
    return 0;
}

int run_estimate(const Command& cmd, std::ostream& out) {
    const GaussSet e = parse_expression(cmd.expression);
    const EstimatorConfig cfg = estimator_config(cmd);
    const EstimateReport r = estimate_density(e, cfg);
    const std::string expr = e.str();
    switch (effective_format(cmd)) {
        case Format::csv:
            if (cmd.out.empty()) {
                out << estimate_points_csv(r) << '\n' << estimate_summary_csv(expr, r);
            } else {
                write_file(cmd.out, estimate_points_csv(r));
                write_file(summary_path(cmd.out), estimate_summary_csv(expr, r));
            }
            break;
        case Format::json: emit(cmd, out, estimate_json(expr, r).dump(2) + '\n'); break;
        case Format::table: emit(cmd, out, estimate_table(expr, r)); break;
    }
    return cmd.strict && !r.converged ? 3 : 0;
}

int run_compare(const Command& cmd, std::ostream& out) {
    const GaussSet e = parse_expression(cmd.expression);
    const EstimatorConfig cfg = estimator_config(cmd);
    const DensityValue d = exact_density(e);
    const EstimateReport r = estimate_density(e, cfg);
    const std::string expr = e.str();
    const double tol = r.tolerance();
    const bool known = d.known();
    const double disc = known ? std::fabs(r.extrapolated - d.value) : std::nan("");
    const bool within = known && disc <= tol;
    switch (effective_format(cmd)) {
        case Format::csv:
            emit(cmd, out,
                 "expression,exact_kind,exact_value,extrapolated,fit_residual,tolerance,discrepancy,within,converged\n" +
                     csv_join({expr, d.kind_name(), d.value_string(), format_double(r.extrapolated),
                               format_double(r.fit_residual), format_double(tol), known ? format_double(disc) : "",
                               within ? "true" : "false", r.converged ? "true" : "false"}) +
                     '\n');
            break;
        case Format::json: {
            json j{{"expression", expr},
                   {"exact", density_json(d)},
                   {"estimate", estimate_json(expr, r)},
                   {"tolerance", tol},
                   {"within", within}};
            j["discrepancy"] = known ? json(disc) : json(nullptr);
            emit(cmd, out, j.dump(2) + '\n');
            break;
        }
        case Format::table:
            emit(cmd, out,
                 render_table({{"expression", expr},
                               {"exact", d.str()},
                               {"estimate", short_double(r.extrapolated)},
                               {"fit_residual", short_double(r.fit_residual)},
                               {"tolerance", short_double(tol)},
                               {"discrepancy", known ? short_double(disc) : "-"},
                               {"within", within ? "yes" : "no"},
                               {"converged", r.converged ? "yes" : "no"}}));
            break;
    }
    return cmd.strict && !r.converged ? 3 : 0;
}

int run_sweep(const Command& cmd, std::ostream& out, std::ostream& err) {
    const GaussSet e = parse_expression(cmd.expression);
    const std::vector<double> schedule = cmd.schedule ? *cmd.schedule : dense_schedule();
    const double eps0 = cmd.eps.value_or(1e-6);
    if (!(eps0 > 0.0)) throw ValidationError("eps must be > 0");
    EvalOptions opt;
    opt.workers = cmd.workers;
    if (cmd.budget) opt.term_budget = *cmd.budget;

    std::vector<SeriesEval> rows;
    for (const double s : schedule) {
        if (!(s >= kMinSeriesS)) throw ValidationError("sweep values must be >= 1 + 2^-10");
        bool done = false;
        for (double eps = eps0; eps <= 1e-2 * (1.0 + 1e-12) || eps == eps0; eps *= 10.0) {
            try {
                rows.push_back(density_at(e, s, eps, opt));
                done = true;
                break;
            } catch (const BudgetExceeded&) {
            }
        }
        if (!done) err << "warning: s = " << format_double(s) << " skipped, term budget exceeded\n";
    }

    switch (effective_format(cmd)) {
        case Format::csv: {
            std::string text = std::string(kSeriesHeader) + '\n';
            for (const auto& p : rows) text += csv_join(series_fields(p)) + '\n';
            emit(cmd, out, text);
            break;
        }
        case Format::json: {
            json j = json::array();
            for (const auto& p : rows) j.push_back(series_json(p));
            emit(cmd, out, j.dump(2) + '\n');
            break;
        }
        case Format::table: {
            std::vector<std::vector<std::string>> t{{"s", "value", "tail_bound", "terms_used", "method"}};
            for (const auto& p : rows)
                t.push_back({short_double(p.s), short_double(p.value), short_double(p.tail_bound),
                             std::to_string(p.terms_used), to_string(p.method)});
            emit(cmd, out, render_table(t));
            break;
        }
    }
    return 0;
}

int run_oracle(const Command& cmd, std::ostream& out) {
    const GaussSet e = parse_expression(cmd.expression);
    const std::vector<double> svals = cmd.schedule ? *cmd.schedule : std::vector<double>{1.25, 1.5, 2.0, 3.0};
    const std::int64_t N = cmd.side.value_or(200);
    const DensityValue d = exact_density(e);

    struct Row {
        std::string check, s, N, value, reference, difference, pass;
    };
    std::vector<Row> rows;
    bool all_ok = true;
    for (const double s : svals) {
        const double brute = brute_partial_sum(e, s, N);
        const double fast = partial_double_sum(e, s, N, cmd.workers);
        const double rel = brute == 0.0 ? std::fabs(fast) : std::fabs(fast - brute) / std::fabs(brute);
        const bool ok = rel <= 1e-12;
        all_ok = all_ok && ok;
        rows.push_back({"partial-sum", format_double(s), std::to_string(N), format_double(fast), format_double(brute),
                        format_double(rel), ok ? "true" : "false"});
    }
    const CountReport c = counting_density(e, N);
    // Box counting only tracks the density on some families, so this row is informational.
    rows.push_back({"counting", "", std::to_string(N), format_double(c.ratio), d.known() ? d.value_string() : "",
                    d.known() ? format_double(std::fabs(c.ratio - d.value)) : "", ""});

    switch (effective_format(cmd)) {
        case Format::csv: {
            std::string text = "check,s,N,value,reference,difference,pass\n";
            for (const auto& r : rows)
                text += csv_join({r.check, r.s, r.N, r.value, r.reference, r.difference, r.pass}) + '\n';
            emit(cmd, out, text);
            break;
        }
        case Format::json: {
            json j = json::array();
            for (const auto& r : rows)
                j.push_back({{"check", r.check}, {"s", r.s}, {"N", r.N}, {"value", r.value},
                             {"reference", r.reference}, {"difference", r.difference}, {"pass", r.pass}});
            emit(cmd, out, j.dump(2) + '\n');
            break;
        }
        case Format::table: {
            std::vector<std::vector<std::string>> t{{"check", "s", "N", "value", "reference", "difference", "pass"}};
            for (const auto& r : rows) t.push_back({r.check, r.s, r.N, r.value, r.reference, r.difference, r.pass});
            emit(cmd, out, render_table(t));
            break;
        }
    }
    return all_ok ? 0 : 1;
}

int run_check(const Command& cmd, std::ostream& out) {
    CheckOptions opt;
    opt.estimator = estimator_config(cmd);
    opt.workers = cmd.workers;
    opt.exact_only = cmd.exact_only;
    const std::vector<CheckRow> rows = run_check_suite(opt);
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.pass ? 0 : 1;

    switch (effective_format(cmd)) {
        case Format::csv: emit(cmd, out, check_rows_csv(rows)); break;
        case Format::json: {
            json j = json::array();
            for (const auto& r : rows)
                j.push_back({{"check", r.check}, {"subject", r.subject}, {"expected", r.expected},
                             {"observed", r.observed}, {"tolerance", r.tolerance}, {"pass", r.pass}});
            emit(cmd, out, j.dump(2) + '\n');
            break;
        }
        case Format::table: {
            std::vector<std::vector<std::string>> t{{"check", "subject", "expected", "observed", "tolerance", "pass"}};
            for (const auto& r : rows)
                t.push_back({r.check, r.subject, r.expected, r.observed, r.tolerance, r.pass ? "yes" : "NO"});
            emit(cmd, out,
                 render_table(t) + '\n' + std::to_string(rows.size() - failed) + " of " +
                     std::to_string(rows.size()) + " checks passed\n");
            break;
        }
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace

std::vector<double> parse_schedule(std::string_view text) {
    const std::string t = trim(text);
    const auto dots = t.find("..");
    if (dots != std::string::npos) {
        const std::string a = trim(std::string_view(t).substr(0, dots));
        const std::string b = trim(std::string_view(t).substr(dots + 2));
        const int k0 = parse_number<int>(a.size() > 1 && a[0] == 'k' ? a.substr(1) : a, "schedule start");
        const int k1 = parse_number<int>(b.size() > 1 && b[0] == 'k' ? b.substr(1) : b, "schedule end");
        if (k0 < 0 || k1 < k0 || k1 > 60) throw ValidationError("schedule range must satisfy 0 <= k0 <= k1 <= 60");
        return geometric_schedule(k0, k1);
    }
    std::vector<double> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item, "schedule value"));
    if (out.empty()) throw ValidationError("empty schedule");
    return out;
}

Format parse_format(std::string_view text) {
    const std::string t = trim(text);
    if (t == "table") return Format::table;
    if (t == "csv") return Format::csv;
    if (t == "json") return Format::json;
    throw ValidationError("unknown format '" + t + "' (expected table, csv or json)");
}

void apply_setting(Command& cmd, std::string_view key_in, std::string_view value) {
    const std::string key = trim(key_in);
    if (key == "schedule")
        cmd.schedule = parse_schedule(value);
    else if (key == "eps")
        cmd.eps = parse_real(value, "eps");
    else if (key == "budget")
        cmd.budget = parse_number<std::uint64_t>(value, "budget");
    else if (key == "degree")
        cmd.degree = parse_number<int>(value, "degree");
    else if (key == "format")
        cmd.format = parse_format(value);
    else if (key == "out")
        cmd.out = trim(value);
    else if (key == "strict")
        cmd.strict = parse_bool(value);
    else if (key == "workers")
        cmd.workers = parse_number<unsigned>(value, "workers");
    else if (key == "side")
        cmd.side = parse_number<std::int64_t>(value, "side");
    else if (key == "exact-only")
        cmd.exact_only = parse_bool(value);
    else
        throw ValidationError("unknown config key '" + key + "'");
}

void apply_config_file(Command& cmd, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read config file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key=value");
        apply_setting(cmd, t.substr(0, eq), std::string_view(t).substr(eq + 1));
    }
}

std::string summary_path(const std::string& out) {
    if (ends_with(out, ".csv")) return out.substr(0, out.size() - 4) + ".summary.csv";
    return out + ".summary.csv";
}

std::vector<double> dense_schedule() {
    std::vector<double> out;
    for (int j = 0; j <= 24; ++j) out.push_back(1.0 + 0.5 * std::exp2(-j / 4.0));
    return out;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        const std::string& c = cmd.subcommand;
        if (c != "check" && cmd.expression.empty()) throw ValidationError(c + ": missing expression");
        if (c == "exact") return run_exact(cmd, out);
        if (c == "estimate") return run_estimate(cmd, out);
        if (c == "compare") return run_compare(cmd, out);
        if (c == "sweep") return run_sweep(cmd, out, err);
        if (c == "oracle") return run_oracle(cmd, out);
        if (c == "check") return run_check(cmd, out);
        throw ValidationError("unknown subcommand '" + c + "'");
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace gaussdens::cli
