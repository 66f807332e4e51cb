#include "gaussdens/check_suite.hpp"

#include "gaussdens/corpus.hpp"
#include "gaussdens/csv.hpp"
#include "gaussdens/oracle.hpp"
#include "gaussdens/parser.hpp"

#include <cmath>
#include <map>

namespace gaussdens {

namespace {

constexpr std::int64_t kGridSide = 64;

bool same_members(const GaussSet& a, const GaussSet& b) {
    for (std::int64_t m = 1; m <= kGridSide; ++m)
        for (std::int64_t n = 1; n <= kGridSide; ++n)
            if (a.contains(m, n) != b.contains(m, n)) return false;
    return true;
}

std::string rational_or(const DensityValue& d) { return d.known() ? d.str() : "unknown"; }

bool rational_equal(const DensityValue& d, const Rational& r) { return d.rational && *d.rational == r; }

struct Entry {
    const CorpusEntry* meta;
    GaussSet expr;
    DensityValue exact;
};

class Suite {
public:
    explicit Suite(const CheckOptions& o) : opt_(o) {
        opt_.estimator.workers = o.workers;
        for (const auto& c : golden_corpus()) {
            GaussSet e = parse_expression(c.expr);
            DensityValue d = exact_density(e);
            entries_.push_back({&c, std::move(e), std::move(d)});
        }
    }

    std::vector<CheckRow> run() {
        for (const auto& en : entries_) exact_rows(en);
        pair_rows();
        for (const auto& en : entries_) oracle_row(en);
        if (!opt_.exact_only) {
            for (const auto& en : entries_) estimate_row(en);
            for (const auto& en : entries_) invariance_rows(en);
            axis_independence_row();
        }
        return std::move(rows_);
    }

private:
    void add(std::string check, std::string subject, std::string expected, std::string observed, std::string tol,
             bool pass) {
        rows_.push_back({std::move(check), std::move(subject), std::move(expected), std::move(observed),
                         std::move(tol), pass});
    }

    void exact_rows(const Entry& en) {
        const std::string& name = en.meta->name;
        const Rational want = parse_rational(en.meta->exact).value();
        add("exact", name, en.meta->exact, rational_or(en.exact), "", rational_equal(en.exact, want));

        const GaussSet again = parse_expression(en.expr.str());
        const bool rt = same_members(en.expr, again);
        add("round-trip", name, "equal", rt ? "equal" : "differs", "", rt);

        const bool nm = same_members(en.expr, normalize(en.expr));
        add("normalize", name, "equal", nm ? "equal" : "differs", "", nm);

        const DensityValue tail = exact_density(GaussSet::intersect(en.expr, GaussSet::upper(5, 5)));
        add("heavy-tail-exact", name, rational_or(en.exact), rational_or(tail), "",
            en.exact.rational && rational_equal(tail, *en.exact.rational));

        const DensityValue co = exact_density(GaussSet::complement(en.expr));
        const bool cok = en.exact.rational && co.rational && *en.exact.rational + *co.rational == Rational(1);
        add("complement-exact", name, "1", co.rational && en.exact.rational ? to_string(*en.exact.rational + *co.rational) : "unknown",
            "", cok);
    }

    // Identities over pairs of product-like members, compared as rationals.
    void pair_rows() {
        std::vector<const Entry*> pl;
        for (const auto& en : entries_)
            if (en.meta->family == Family::product_like) pl.push_back(&en);
        for (std::size_t i = 0; i < pl.size(); ++i) {
            for (std::size_t j = i + 1; j < pl.size(); ++j) {
                const Entry& a = *pl[i];
                const Entry& b = *pl[j];
                const std::string subject = a.meta->name + "|" + b.meta->name;
                const DensityValue u = exact_density(GaussSet::unite(a.expr, b.expr));
                const DensityValue x = exact_density(GaussSet::intersect(a.expr, b.expr));
                const DensityValue dba = exact_density(GaussSet::difference(b.expr, a.expr));
                const bool all = a.exact.rational && b.exact.rational && u.rational && x.rational && dba.rational;
                if (!all) {
                    add("inclusion-exclusion", subject, "known", "unknown", "", false);
                    continue;
                }
                const Rational lhs = *u.rational + *x.rational;
                const Rational rhs = *a.exact.rational + *b.exact.rational;
                add("inclusion-exclusion", subject, to_string(rhs), to_string(lhs), "", lhs == rhs);
                const Rational diff = *b.exact.rational - *x.rational;
                add("difference", subject, to_string(diff), to_string(*dba.rational), "", diff == *dba.rational);
                const bool mono = *x.rational <= *a.exact.rational && *a.exact.rational <= *u.rational &&
                                  *x.rational <= *b.exact.rational && *b.exact.rational <= *u.rational;
                add("monotonicity", subject, "ordered", mono ? "ordered" : "violated", "", mono);
            }
        }
    }

    void oracle_row(const Entry& en) {
        const double s = 1.5;
        const std::int64_t N = 200;
        const double brute = brute_partial_sum(en.expr, s, N);
        const double fast = partial_double_sum(en.expr, s, N, opt_.workers);
        const double rel = brute == 0.0 ? std::fabs(fast) : std::fabs(fast - brute) / std::fabs(brute);
        add("oracle", en.meta->name, format_double(brute), format_double(fast), "1e-12", rel <= 1e-12);
    }

    const EstimateReport& estimate(const GaussSet& e) {
        const std::string key = e.str();
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, estimate_density(e, opt_.estimator)).first;
        return it->second;
    }

    void estimate_row(const Entry& en) {
        const EstimateReport& r = estimate(en.expr);
        const double tol = r.tolerance();
        const bool ok = en.exact.known() && std::fabs(r.extrapolated - en.exact.value) <= tol;
        add("estimate", en.meta->name, rational_or(en.exact), format_double(r.extrapolated), format_double(tol), ok);
    }

    void compare(const std::string& check, const std::string& subject, double expected, double observed, double tol) {
        add(check, subject, format_double(expected), format_double(observed), format_double(tol),
            std::fabs(expected - observed) <= tol);
    }

    void invariance_rows(const Entry& en) {
        const Family f = en.meta->family;
        const bool lattice_like = en.meta->name.rfind("lattice", 0) == 0 || en.meta->name.rfind("lcm", 0) == 0;
        if (!(lattice_like || f == Family::delimited)) return;
        const EstimateReport& base = estimate(en.expr);
        const std::string& name = en.meta->name;

        static const std::pair<std::int64_t, std::int64_t> offsets[] = {{1, 0}, {0, 1}, {3, 5}};
        for (const auto& [m0, n0] : offsets) {
            const EstimateReport& t = estimate(GaussSet::translate(en.expr, m0, n0));
            compare("translation", name + "+(" + std::to_string(m0) + "," + std::to_string(n0) + ")",
                    base.extrapolated, t.extrapolated, base.tolerance() + t.tolerance());
        }
        static const std::pair<std::int64_t, std::int64_t> factors[] = {{2, 1}, {2, 3}};
        for (const auto& [a, b] : factors) {
            const double ab = static_cast<double>(a * b);
            const EstimateReport& d = estimate(GaussSet::dilate(a, b, en.expr));
            compare("dilation", name + "*(" + std::to_string(a) + "," + std::to_string(b) + ")",
                    base.extrapolated / ab, d.extrapolated, base.tolerance() / ab + d.tolerance());
        }
        const EstimateReport& h = estimate(GaussSet::intersect(en.expr, GaussSet::upper(5, 5)));
        compare("heavy-tail", name, base.extrapolated, h.extrapolated, base.tolerance() + h.tolerance());
    }

    void axis_independence_row() {
        const GaussSet e = parse_expression("translate(prod(mult(2),mult(3)),4,4)");
        const EstimateReport& r = estimate(e);
        compare("axis-independence", "translated-product", 1.0 / 6.0, r.extrapolated, r.tolerance());
    }

    CheckOptions opt_;
    std::vector<Entry> entries_;
    std::vector<CheckRow> rows_;
    std::map<std::string, EstimateReport> cache_;
};

}  // namespace

std::vector<CheckRow> run_check_suite(const CheckOptions& options) { return Suite(options).run(); }

std::string check_rows_csv(const std::vector<CheckRow>& rows) {
    std::string out = "check,subject,expected,observed,tolerance,pass\n";
    for (const auto& r : rows) {
        out += csv_join({r.check, r.subject, r.expected, r.observed, r.tolerance, r.pass ? "true" : "false"});
        out += '\n';
    }
    return out;
}

}  // namespace gaussdens
