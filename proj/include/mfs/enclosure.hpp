#pragma once
// Outward-rounded interval arithmetic. Every operation inflates the result by
// a few ulps so that the returned interval always contains the exact value.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mfs {

inline double step_down(double x, int ulps = 1) {
    if (!std::isfinite(x)) return x;
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}

inline double step_up(double x, int ulps = 1) {
    if (!std::isfinite(x)) return x;
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}

// Closed interval [lo, hi]; may be degenerate (lo == hi).
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;

    static Enclosure point(double x) { return {x, x}; }
    static Enclosure of(double lo, double hi) {
        if (!(lo <= hi)) throw std::invalid_argument("Enclosure: lo > hi");
        return {lo, hi};
    }
    // Builds [lo, hi] from an unordered pair.
    static Enclosure hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

    double width() const { return hi - lo; }
    double mid() const {
        if (std::isinf(lo) || std::isinf(hi)) return lo == -hi ? 0.0 : (std::isinf(lo) ? hi : lo);
        return 0.5 * (lo + hi);
    }
    bool degenerate() const { return lo == hi; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Enclosure& o) const { return lo <= o.hi && o.lo <= hi; }
};

inline Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }

inline Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return {step_down(a.lo + b.lo), step_up(a.hi + b.hi)};
}

inline Enclosure operator-(const Enclosure& a, const Enclosure& b) { return a + (-b); }

inline Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double lo = p[0], hi = p[0];
    for (int i = 1; i < 4; ++i) {
        lo = std::min(lo, p[i]);
        hi = std::max(hi, p[i]);
    }
    return {step_down(lo), step_up(hi)};
}

// Scalar * interval; endpoints ordered by the sign of the scalar.
inline Enclosure scale(double t, const Enclosure& a) {
    if (t >= 0.0) return {step_down(t * a.lo), step_up(t * a.hi)};
    return {step_down(t * a.hi), step_up(t * a.lo)};
}

inline Enclosure operator+(const Enclosure& a, double x) { return a + Enclosure::point(x); }
inline Enclosure operator-(const Enclosure& a, double x) { return a - Enclosure::point(x); }

// libm exp/log are not correctly rounded; cover their error with a relative
// inflation for exp and an absolute one for log.
inline double exp_down(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    double y = std::exp(x) * (1.0 - 1e-12);
    return y < 0.0 ? 0.0 : step_down(y);
}

inline double exp_up(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    return step_up(std::exp(x) * (1.0 + 1e-12));
}

inline double log_down(double x) {
    double y = std::log(x);
    return step_down(y - (std::abs(y) * 1e-15 + 1e-15));
}

inline double log_up(double x) {
    double y = std::log(x);
    return step_up(y + (std::abs(y) * 1e-15 + 1e-15));
}

inline Enclosure exp_enc(const Enclosure& a) { return {exp_down(a.lo), exp_up(a.hi)}; }

// Requires a.hi > 0. If a.lo <= 0 the lower endpoint is -inf.
inline Enclosure log_enc(const Enclosure& a) {
    if (!(a.hi > 0.0)) throw std::domain_error("log_enc: non-positive interval");
    double lo = a.lo > 0.0 ? log_down(a.lo) : -std::numeric_limits<double>::infinity();
    return {lo, log_up(a.hi)};
}

inline Enclosure log_point(double x) { return log_enc(Enclosure::point(x)); }

inline Enclosure sqrt_enc(const Enclosure& a) {
    if (a.lo < 0.0) throw std::domain_error("sqrt_enc: negative interval");
    return {step_down(std::sqrt(a.lo)), step_up(std::sqrt(a.hi))};
}

// x^y for x > 0 via exp(y log x).
inline Enclosure pow_enc(const Enclosure& x, double y) {
    return exp_enc(scale(y, log_enc(x)));
}

inline Enclosure pow_enc_int(const Enclosure& x, int n) {
    Enclosure r = Enclosure::point(1.0);
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

inline Enclosure intersect(const Enclosure& a, const Enclosure& b) {
    double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) throw std::runtime_error("intersect: disjoint enclosures");
    return {lo, hi};
}

// Directed log-sum-exp accumulator for sums of exp(log-terms) that can span
// hundreds of orders of magnitude. dir = -1 rounds every step down (valid
// lower bound), dir = +1 rounds up.
class DirectedLogSum {
public:
    explicit DirectedLogSum(int dir) : dir_(dir) {}

    void add_log(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (empty_) {
            shift_ = log_term;
            acc_ = 1.0;
            empty_ = false;
            return;
        }
        if (log_term > shift_ + 40.0) {
            // rescale so the new dominant term keeps precision
            double new_shift = log_term;
            acc_ = round_(acc_ * exp_dir_(shift_ - new_shift));
            shift_ = new_shift;
            acc_ = round_(acc_ + 1.0);
            return;
        }
        acc_ = round_(acc_ + exp_dir_(log_term - shift_));
    }

    bool empty() const { return empty_; }

    // log of the accumulated sum
    double log_result() const {
        if (empty_) return -std::numeric_limits<double>::infinity();
        return round_(shift_ + (dir_ < 0 ? log_down(acc_) : log_up(acc_)));
    }

    // the accumulated sum relative to exp(shift)
    double shift() const { return shift_; }
    double mantissa() const { return acc_; }

private:
    double round_(double x, int ulps = 1) const { return dir_ < 0 ? step_down(x, ulps) : step_up(x, ulps); }
    // exponent arguments carry absolute error ~ulp(|shift|); widen relatively
    double exp_dir_(double x) const { return dir_ < 0 ? exp_down(x) * (1.0 - 1e-12) : exp_up(x) * (1.0 + 1e-12); }

    int dir_;
    double shift_ = 0.0;
    double acc_ = 0.0;
    bool empty_ = true;
};

}  // namespace mfs
