#include "camedit/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace camedit::stats {

namespace {

constexpr double kEpsilon = 1e-16;
constexpr int kMaxIterations = 10'000;
constexpr double kTiny = 1e-300;

void require_nonempty(const ContingencyTable& t) {
    if (t.total() == 0) throw std::invalid_argument("contingency table is empty");
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEpsilon) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEpsilon) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("incomplete gamma: a must be positive");
    if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("incomplete gamma: x must be non-negative");
}

}  // namespace

std::uint64_t ContingencyTable::min_cell() const { return std::min({a, b, c, d}); }

std::string_view to_string(TestMethod method) {
    return method == TestMethod::chi_square ? "chi-square" : "fisher";
}

FisherMode parse_fisher_mode(std::string_view text) {
    if (text == "point") return FisherMode::point;
    if (text == "two-sided") return FisherMode::two_sided;
    throw std::invalid_argument("unknown fisher mode '" + std::string(text) + "' (expected point|two-sided)");
}

std::string_view to_string(FisherMode mode) { return mode == FisherMode::point ? "point" : "two-sided"; }

ContingencyTable build_table(std::span<const PixelCoord> points, int k) {
    if (k < 0) throw std::invalid_argument("displacement limit k must be >= 0");
    if (points.size() < 2) throw std::invalid_argument("build_table needs at least 2 points");
    ContingencyTable t;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const bool near_x = std::abs(points[i].x - points[j].x) <= k;
            const bool near_y = std::abs(points[i].y - points[j].y) <= k;
            // |dx| and |dy| are symmetric, so (P,Q) and (Q,P) land in the same cell.
            std::uint64_t& cell = near_x ? (near_y ? t.a : t.b) : (near_y ? t.c : t.d);
            cell += 2;
        }
    }
    return t;
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("log_binomial: k > n");
    const auto nd = static_cast<double>(n);
    const auto kd = static_cast<double>(k);
    return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

double regularized_gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return clamp_probability(gamma_p_series(a, x));
    return clamp_probability(1.0 - gamma_q_fraction(a, x));
}

double regularized_gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return clamp_probability(1.0 - gamma_p_series(a, x));
    return clamp_probability(gamma_q_fraction(a, x));
}

double chi_square_sf(double x, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("chi_square_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(df / 2.0, x / 2.0);
}

double chi_square_statistic(const ContingencyTable& t) {
    require_nonempty(t);
    if (t.row1() == 0 || t.row2() == 0 || t.col1() == 0 || t.col2() == 0) {
        throw DegenerateTable("chi-square needs nonzero margins");
    }
    const auto n = static_cast<double>(t.total());
    const std::array<double, 4> observed{static_cast<double>(t.a), static_cast<double>(t.b),
                                         static_cast<double>(t.c), static_cast<double>(t.d)};
    const std::array<double, 4> expected{
        static_cast<double>(t.row1()) * static_cast<double>(t.col1()) / n,
        static_cast<double>(t.row1()) * static_cast<double>(t.col2()) / n,
        static_cast<double>(t.row2()) * static_cast<double>(t.col1()) / n,
        static_cast<double>(t.row2()) * static_cast<double>(t.col2()) / n,
    };
    double chi2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double diff = observed[i] - expected[i];
        chi2 += diff * diff / expected[i];
    }
    return chi2;
}

TestResult chi_square_p(const ContingencyTable& t, double alpha) {
    const double chi2 = chi_square_statistic(t);
    const double p = chi_square_sf(chi2, 1.0);
    return {p, chi2, TestMethod::chi_square, p < alpha};
}

double fisher_point_probability(const ContingencyTable& t) {
    require_nonempty(t);
    const double log_p = log_binomial(t.row1(), t.a) + log_binomial(t.row2(), t.c) - log_binomial(t.total(), t.col1());
    return clamp_probability(std::exp(log_p));
}

TestResult fisher_point_p(const ContingencyTable& t, double alpha) {
    const double p = fisher_point_probability(t);
    return {p, p, TestMethod::fisher, p < alpha};
}

TestResult fisher_two_sided(const ContingencyTable& t, double alpha) {
    const double observed = fisher_point_probability(t);
    const std::uint64_t r1 = t.row1();
    const std::uint64_t r2 = t.row2();
    const std::uint64_t c1 = t.col1();
    const std::uint64_t lo = c1 > r2 ? c1 - r2 : 0;
    const std::uint64_t hi = std::min(r1, c1);
    const double cutoff = observed * (1.0 + 1e-7);
    double p = 0.0;
    for (std::uint64_t a = lo; a <= hi; ++a) {
        const ContingencyTable alt{a, r1 - a, c1 - a, r2 - (c1 - a)};
        const double q = fisher_point_probability(alt);
        if (q <= cutoff) p += q;
    }
    p = clamp_probability(p);
    return {p, observed, TestMethod::fisher, p < alpha};
}

TestResult independence_test(const ContingencyTable& t, double alpha, FisherMode mode) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (t.min_cell() < 5) return mode == FisherMode::point ? fisher_point_p(t, alpha) : fisher_two_sided(t, alpha);
    return chi_square_p(t, alpha);
}

}  // namespace camedit::stats
