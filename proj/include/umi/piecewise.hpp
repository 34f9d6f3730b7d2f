#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "umi/rational.hpp"

namespace umi {

/// Continuous piecewise-linear function on the whole line, in valuation
/// coordinates. Breakpoints strictly increasing; slopes[i] applies left of
/// bps[i], slopes.back() right of the last breakpoint.
class PiecewiseLinear {
  public:
    static PiecewiseLinear line(const Rational& slope, const Rational& q0, const Rational& v0) {
        PiecewiseLinear f;
        f.slopes_ = {slope};
        f.ref_q_ = q0;
        f.ref_v_ = v0;
        return f;
    }

    /// Lower envelope min_i (intercept_i + slope_i * q) of finitely many lines.
    static PiecewiseLinear lower_envelope(std::vector<std::pair<Rational, Rational>> lines) {
        if (lines.empty()) throw Error("envelope of no lines");
        // keep the lowest intercept per slope, slopes descending
        std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        lines.erase(std::unique(lines.begin(), lines.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; }),
                    lines.end());
        // hull[i] active on [start[i], start[i+1]); start[0] = -infinity
        std::vector<std::pair<Rational, Rational>> hull;
        std::vector<Rational> start;  // crossing where hull[i] takes over, size = hull.size()-1
        for (const auto& L : lines) {
            for (;;) {
                if (hull.empty()) {
                    hull.push_back(L);
                    break;
                }
                const auto& B = hull.back();
                // L has strictly smaller slope: L <= B for q >= x
                Rational x = (B.second - L.second) / (L.first - B.first);
                if (!start.empty() && x <= start.back()) {
                    hull.pop_back();
                    start.pop_back();
                    continue;
                }
                hull.push_back(L);
                start.push_back(x);
                break;
            }
        }
        PiecewiseLinear f;
        for (const auto& L : hull) f.slopes_.push_back(L.first);
        f.bps_ = std::move(start);
        f.ref_q_ = f.bps_.empty() ? Rational(0) : f.bps_.front();
        f.ref_v_ = hull.front().second + hull.front().first * f.ref_q_;
        return f;
    }

    Rational eval(const Rational& q) const {
        // integrate the slope over [ref_q, q], piece by piece
        Rational a = std::min(ref_q_, q), b = std::max(ref_q_, q);
        Rational acc(0);
        for (std::size_t i = 0; i <= bps_.size(); ++i) {
            Rational s = (i == 0) ? a : std::max(a, bps_[i - 1]);
            Rational e = (i == bps_.size()) ? b : std::min(b, bps_[i]);
            if (e > s) acc += slopes_[i] * (e - s);
        }
        return q >= ref_q_ ? Rational(ref_v_ + acc) : Rational(ref_v_ - acc);
    }

    /// Slope of the piece immediately to the right of q.
    const Rational& slope_right(const Rational& q) const {
        std::size_t i = piece_index(q);
        // at a breakpoint, piece_index returns the piece to the right already
        return slopes_[i];
    }
    /// Slope of the piece immediately to the left of q.
    const Rational& slope_left(const Rational& q) const {
        std::size_t i = 0;
        while (i < bps_.size() && bps_[i] < q) ++i;
        return slopes_[i];
    }

    const std::vector<Rational>& breakpoints() const { return bps_; }

    PiecewiseLinear operator+(const PiecewiseLinear& o) const { return combine(o, 1); }
    PiecewiseLinear operator-(const PiecewiseLinear& o) const { return combine(o, -1); }
    PiecewiseLinear scaled(long k) const {
        PiecewiseLinear f = *this;
        for (auto& s : f.slopes_) s *= k;
        f.ref_v_ *= k;
        if (k < 0) { /* slopes flipped; breakpoints unchanged */
        }
        return f;
    }

    struct Solutions {
        std::vector<Rational> points;                         // isolated solutions
        std::vector<std::pair<Rational, Rational>> intervals;  // maximal closed intervals
    };

    /// All q in [lo, hi] with eval(q) == target.
    Solutions solve_equal(const Rational& target, const Rational& lo, const Rational& hi) const {
        Solutions out;
        std::vector<Rational> cuts = {lo};
        for (const auto& b : bps_)
            if (b > lo && b < hi) cuts.push_back(b);
        cuts.push_back(hi);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const Rational &a = cuts[i], &b = cuts[i + 1];
            Rational va = eval(a), vb = eval(b);
            if (va == target && vb == target) {
                out.intervals.emplace_back(a, b);
            } else if ((va <= target && target <= vb) || (vb <= target && target <= va)) {
                // single crossing on the linear piece
                Rational s = slope_right(a);
                if (s != 0) {
                    Rational q = a + (target - va) / s;
                    if (q >= a && q <= b) out.points.push_back(q);
                }
            }
        }
        // merge adjacent intervals, drop points inside intervals, dedupe
        std::sort(out.points.begin(), out.points.end());
        out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
        std::vector<std::pair<Rational, Rational>> merged;
        for (auto& iv : out.intervals) {
            if (!merged.empty() && merged.back().second == iv.first)
                merged.back().second = iv.second;
            else
                merged.push_back(iv);
        }
        out.intervals = std::move(merged);
        std::vector<Rational> pts;
        for (const auto& q : out.points) {
            bool inside = false;
            for (const auto& iv : out.intervals)
                inside = inside || (q >= iv.first && q <= iv.second);
            if (!inside) pts.push_back(q);
        }
        out.points = std::move(pts);
        return out;
    }

    /// Minimum over [lo, hi]; returns (value, smallest argmin).
    std::pair<Rational, Rational> min_over(const Rational& lo, const Rational& hi) const {
        std::vector<Rational> cand = {lo, hi};
        for (const auto& b : bps_)
            if (b > lo && b < hi) cand.push_back(b);
        std::sort(cand.begin(), cand.end());
        Rational best_v = eval(lo), best_q = lo;
        for (const auto& q : cand) {
            Rational v = eval(q);
            if (v < best_v) {
                best_v = v;
                best_q = q;
            }
        }
        return {best_v, best_q};
    }

  private:
    // index of the piece containing q, treating breakpoints as start of the right piece
    std::size_t piece_index(const Rational& q) const {
        std::size_t i = 0;
        while (i < bps_.size() && bps_[i] <= q) ++i;
        return i;
    }

    PiecewiseLinear combine(const PiecewiseLinear& o, int sign) const {
        PiecewiseLinear f;
        std::vector<Rational> bps;
        std::merge(bps_.begin(), bps_.end(), o.bps_.begin(), o.bps_.end(),
                   std::back_inserter(bps));
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
        f.bps_ = bps;
        f.slopes_.clear();
        // slope on each of the bps.size()+1 pieces
        for (std::size_t i = 0; i <= bps.size(); ++i) {
            Rational probe = bps.empty()       ? Rational(0)
                             : i == 0          ? Rational(bps.front() - 1)
                             : i == bps.size() ? Rational(bps.back() + 1)
                                               : Rational((bps[i - 1] + bps[i]) / 2);
            f.slopes_.push_back(slope_right(probe) + sign * o.slope_right(probe));
        }
        f.ref_q_ = bps.empty() ? Rational(0) : bps.front();
        f.ref_v_ = eval(f.ref_q_) + sign * o.eval(f.ref_q_);
        return f;
    }

    std::vector<Rational> bps_;
    std::vector<Rational> slopes_;  // bps_.size() + 1 entries
    Rational ref_q_{0}, ref_v_{0};
};

}  // namespace umi
