#include "hexmix/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hexmix/rng.hpp"

namespace hexmix {

ChiSquare chi_square_gof(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs,
                         double min_expected) {
    if (counts.size() != probs.size() || counts.size() < 2)
        throw std::invalid_argument("chi-square needs matching count and probability vectors");
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    ChiSquare r;
    r.min_expected = 1e300;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double e = probs[i] * static_cast<double>(n);
        r.min_expected = std::min(r.min_expected, e);
        if (e < min_expected) throw std::invalid_argument("expected cell count below the minimum");
        const double diff = static_cast<double>(counts[i]) - e;
        r.statistic += diff * diff / e;
    }
    r.dof = static_cast<int>(counts.size()) - 1;
    r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
    return r;
}

ChiSquare uniformity_test(const std::vector<HeightField>& samples, const DomainPtr& d) {
    const auto states = enumerate_all(d, 100000);
    std::map<std::vector<int>, std::size_t> idx;
    for (std::size_t i = 0; i < states.size(); ++i) idx[states[i].values()] = i;
    std::vector<std::uint64_t> counts(states.size(), 0);
    for (const auto& f : samples) {
        if (!(f.domain() == *d)) throw std::invalid_argument("sample lives on a different domain");
        auto it = idx.find(f.values());
        if (it == idx.end()) throw std::invalid_argument("sample is not an admissible tiling");
        ++counts[it->second];
    }
    return chi_square_gof(counts, std::vector<double>(states.size(), 1.0 / states.size()));
}

MeanCI mean_ci(const std::vector<double>& xs, double level) {
    if (xs.size() < 2) throw std::invalid_argument("confidence interval needs two or more values");
    MeanCI m;
    m.n = xs.size();
    for (double x : xs) m.mean += x;
    m.mean /= m.n;
    double ss = 0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / (m.n - 1));
    const boost::math::students_t dist(static_cast<double>(m.n - 1));
    const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
    const double half = t * m.sd / std::sqrt(static_cast<double>(m.n));
    m.ci = {m.mean - half, m.mean + half};
    return m;
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of an empty sample");
    const std::size_t n = xs.size();
    std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
    const double hi = xs[n / 2];
    if (n % 2) return hi;
    const double lo = *std::max_element(xs.begin(), xs.begin() + n / 2);
    return 0.5 * (lo + hi);
}

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double level) {
    if (n == 0 || k > n) throw std::invalid_argument("invalid binomial counts");
    const double z = boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
    const double p = static_cast<double>(k) / n, nn = static_cast<double>(n);
    const double den = 1.0 + z * z / nn;
    const double centre = (p + z * z / (2.0 * nn)) / den;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / den;
    return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

Bootstrap bootstrap(const std::function<double(const IndexDraw&)>& stat, int resamples, std::uint64_t seed,
                    double level) {
    if (resamples < 10) throw std::invalid_argument("too few bootstrap resamples");
    Bootstrap b;
    b.replicates.reserve(resamples);
    for (int r = 0; r < resamples; ++r) {
        std::uint64_t counter = 0;
        const std::uint64_t key = derive_seed(seed, static_cast<std::uint64_t>(r));
        IndexDraw draw = [&](std::size_t n) -> std::size_t {
            auto next = [&] { return static_cast<std::uint32_t>(splitmix64(key + 0x9E3779B97F4A7C15ull * ++counter)); };
            return bounded32(next(), static_cast<std::uint32_t>(n), next);
        };
        b.replicates.push_back(stat(draw));
    }
    std::vector<double> s = b.replicates;
    std::sort(s.begin(), s.end());
    const double alpha = (1.0 - level) / 2.0;
    auto at = [&](double f) {
        const double pos = f * (s.size() - 1);
        const std::size_t i = static_cast<std::size_t>(std::floor(pos));
        const double w = pos - i;
        return i + 1 < s.size() ? s[i] * (1 - w) + s[i + 1] * w : s[i];
    };
    b.ci = {at(alpha), at(1.0 - alpha)};
    return b;
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit needs two or more pairs");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit abscissae are all equal");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

}  // namespace hexmix
