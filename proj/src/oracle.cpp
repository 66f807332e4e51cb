#include "gaussdens/oracle.hpp"

#include "gaussdens/errors.hpp"

#include <cmath>
#include <string>

namespace gaussdens {

double brute_partial_sum(const GaussSet& e, double s, std::int64_t N) {
    if (!(s > 1.0)) throw DomainError("brute_partial_sum needs s > 1");
    if (N > kMaxBruteSide) throw ScaleError("brute_partial_sum is limited to N <= 10^4, got " + std::to_string(N));
    double total = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        double row = 0.0;
        for (std::int64_t m = 1; m <= N; ++m)
            if (e.contains(m, n)) row += std::pow(static_cast<double>(m) * static_cast<double>(n), -s);
        total += row;
    }
    return total;
}

CountReport counting_density(const GaussSet& e, std::int64_t N) {
    if (N < 1) throw DomainError("counting_density needs N >= 1");
    if (N > kMaxCountSide) throw ScaleError("counting_density is limited to N <= 10^5, got " + std::to_string(N));
    CountReport rep;
    rep.N = N;
    for (std::int64_t n = 1; n <= N; ++n)
        for (std::int64_t m = 1; m <= N; ++m) rep.count += e.contains(m, n) ? 1 : 0;
    rep.ratio = static_cast<double>(rep.count) / (static_cast<double>(N) * static_cast<double>(N));
    return rep;
}

}  // namespace gaussdens
